#pragma once

#include "g2forms/g2.hpp"

namespace g2forms {

struct NotStrictlyMeanConvexError : FormError {
  using FormError::FormError;
};

// 6-dim hypersurface in a 7-space with positive 3-form field.  All geometric
// quantities are exposed as closures over the source chart of the embedding;
// the co-orientation fixes the normal through sign(det[J | nu]).
struct HypersurfaceData {
  SmoothMap embedding;  // 6-chart -> 7-chart
  FormField ambient;    // degree-3 positive field
  int co_orientation = 1;
  double fd_step = 1e-3;

  std::function<G2Data(const Vec&)> ambient_at;  // ambient coordinates
  std::function<Vec(const Vec&)> normal;         // chart point -> unit normal
  FormField rho;        // induced definite 3-form field on the chart
  FormField omega;      // induced taming 2-form field (pullback of i_nu phi)
  FormField rho_tilde;  // companion field
  std::function<SL3CData(const Vec&)> rho_at;
  std::function<Mat(const Vec&)> metric_at;  // induced metric, chart basis
  std::function<Mat(const Vec&)> second_at;  // symmetrised B, chart basis
  std::function<double(const Vec&)> mu_at;   // mean curvature
  std::function<KForm(const Vec&)> beta11_at;
};

HypersurfaceData induce(const FormField& ambient, const SmoothMap& embedding,
                        int co_orientation = 1, bool validate = true,
                        double density_tol = 1e-8);

Mat second_fundamental(const HypersurfaceData& h, const Vec& p);

struct Prop1Report {
  double id1_residual;  // max ||beta11 ^ omega - 1/2 d rho_tilde||
  double id2_residual;  // max |mu |vol| - 1/2 omega ^ d rho_tilde| density
  int points;
};
// fd_step <= 0 keeps the hypersurface default.
Prop1Report verify_prop1(const HypersurfaceData& h, double fd_step = -1.0);

struct Eq9Report {
  double min_slack;  // min over grid of mu - 3/2 det22(d rho_tilde)^{1/3}
  double mu_min, mu_max;
  double det_min, det_max;
  int points;
};
Eq9Report verify_eq9(const HypersurfaceData& h);

// Max norm of d omega - 1/2 mu rho + Re(beta_{1,2}).
double verify_eq10(const HypersurfaceData& h);

// Unnormalised (1,2)-form built from the complex-quadratic part of B through
// the contraction and metric identifications; the frozen calibration constant
// applied by verify_eq10 lives in the implementation.
CKForm beta12_raw(const HypersurfaceData& h, const Vec& p);

struct Eq15Report {
  double lhs;  // ambient volume (supplied)
  double rhs;  // 4/(7m) * Vol(N)
  double slack;
  double m;
  double vol_n;
};
Eq15Report bound_eq15(const HypersurfaceData& h, double ambient_volume);

// Integral over the chart of sqrt(det J^T g J); tolerates rank-deficient
// points (density clamped at 0), so full spheres with polar chart
// degeneracies integrate correctly.
double riemannian_volume(const FormField& ambient, const SmoothMap& embedding);

}  // namespace g2forms
