#pragma once

#include <complex>
#include <optional>

#include "g2forms/field.hpp"

namespace g2forms {

struct NotDefiniteError : FormError {
  double lambda;
  explicit NotDefiniteError(double l)
      : FormError("3-form is not definite (lambda >= 0)"), lambda(l) {}
};
struct DegenerateError : FormError {
  double lambda;
  explicit DegenerateError(double l)
      : FormError("3-form is degenerate (lambda ~ 0)"), lambda(l) {}
};
struct NotType22Error : FormError {
  double fraction;
  explicit NotType22Error(double f)
      : FormError("4-form is not of type (2,2)"), fraction(f) {}
};
struct NotClosedError : FormError {
  using FormError::FormError;
};
struct Lemma1ViolationError : FormError {
  using FormError::FormError;
};

// Definite 3-form on a 6-space with its derived package.
struct SL3CData {
  KForm rho;        // n=6, k=3
  double lambda;    // quartic invariant, < 0 certifies definiteness
  Mat I;            // induced almost-complex structure, I^2 = -Id
  KForm rho_tilde;  // companion: rho + i rho_tilde is of type (3,0)
  KForm vol;        // 1/4 rho ^ rho_tilde
  int orientation;
};

// (2,2)-form seen as a Hermitian form on (1,0)-forms, in a coframe normalised
// by alpha_1 ^ alpha_2 ^ alpha_3 = rho + i rho_tilde.
struct Herm22 {
  Eigen::Matrix3cd matrix;
  Eigen::Vector3d eigenvalues;  // ascending
  double det22;                 // invariant determinant (product of the
                                // normal-form eigenvalues)
};

enum class Sign22 {
  kPositive,
  kSemipositive,
  kNegative,
  kSeminegative,
  kIndefinite,
  kZero
};

const char* to_string(Sign22 s);

// Standard models on R^6 = C^3 with coordinates (x1,y1,x2,y2,x3,y3).
KForm rho0();        // Re(dz1 dz2 dz3)
KForm rho0_tilde();  // Im(dz1 dz2 dz3)
KForm omega0();      // dx1 dy1 + dx2 dy2 + dx3 dy3

SL3CData analyze_definite(const KForm& rho, int orientation = 1);

struct RankReport {
  int min_rank;
  int max_rank;
  int samples;
};
RankReport rank_test(const KForm& rho, int samples, unsigned seed);

// Projection onto the (p,q) component of the complexification determined by I.
CKForm bitype_project(const KForm& a, const Mat& I, int p, int q);

// First variation of the volume form: 1/2 drho ^ rho_tilde.
KForm delta_vol(const SL3CData& data, const KForm& drho);

// First variation of rho_tilde:
// -i (drho)_{3,0} - i (drho)_{2,1} + i (drho)_{1,2} + i (drho)_{0,3}.
KForm delta_rho_tilde(const SL3CData& data, const KForm& drho);

struct TamingResult {
  double margin;  // smallest eigenvalue of the symmetrised form w(., I.)
  bool tamed;
};
TamingResult taming_check(const KForm& omega, const Mat& I);
inline TamingResult taming_check(const KForm& omega, const SL3CData& d) {
  return taming_check(omega, d.I);
}

// Invariant determinant of a 4-form: identify with an element of Lambda^2 T
// via the volume form, cube, pair with 1/6 vol.
double det22_invariant(const KForm& sigma, const KForm& vol);

Herm22 herm_of_22(const KForm& sigma, const SL3CData& data,
                  double type_tol = 1e-8);

Sign22 classify_22(const KForm& sigma, const SL3CData& data,
                   double zero_tol = 1e-10);
Sign22 classify_herm(const Herm22& h, double zero_tol = 1e-10);

struct MeanConvexityReport {
  Sign22 overall;      // meet of the per-point classes
  double m;            // min over grid of det22(d rho_tilde)^{1/3}
  double min_det22;
  double max_nontype22_fraction;
  int points;
};

// Classify d(rho_tilde) over the grid of a closed definite field.
MeanConvexityReport mean_convexity(const FormField& rho_field,
                                   double closed_tol = 1e-5,
                                   double zero_tol = 1e-10);

// Helpers shared with other modules -----------------------------------------

// Antisymmetric matrix W with W(a,b) = omega(e_a, e_b).
Mat form_to_matrix2(const KForm& omega);
KForm matrix2_to_form(const Mat& W);

// A complex (1,0)-coframe (alpha_1, alpha_2, alpha_3) for I normalised so
// that alpha_1 ^ alpha_2 ^ alpha_3 = rho + i rho_tilde.
std::array<CKForm, 3> holomorphic_coframe(const SL3CData& data);

CKForm conj(const CKForm& a);

}  // namespace g2forms
