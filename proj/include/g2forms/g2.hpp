#pragma once

#include "g2forms/sl3c.hpp"

namespace g2forms {

struct NotPositiveError : FormError {
  double min_eig;
  explicit NotPositiveError(double m)
      : FormError("3-form is not positive (b has a nonpositive eigenvalue)"),
        min_eig(m) {}
};

// Positive 3-form on a 7-space with its induced metric package.
struct G2Data {
  KForm phi;       // n=7, k=3
  Mat b;           // unnormalised bilinear form
  Mat metric;      // g = (det b)^{-1/9} b
  KForm vol;       // metric volume form
  KForm star_phi;  // n=7, k=4
  int orientation;
};

struct SplitResult {
  KForm omega;  // n=6, k=2, taming form of the transverse slice
  KForm rho;    // n=6, k=3, definite
  SL3CData rho_data;
  TamingResult taming;
  double wedge_defect;          // ||omega ^ rho||
  double normalization_defect;  // ||1/6 omega^3 - vol_rho||
};

struct TorsionResidual {
  double d_phi;
  double d_star_phi;
};

// Model form omega0 ^ dt + rho0 on (x1,y1,x2,y2,x3,y3,t).
KForm phi0();

// Reindex a form on R^m into R^n (m <= n), keeping index tuples.
KForm embed(const KForm& a, int n);

// omega ^ dt + rho with (omega, rho) on the 6-space spanned by the first
// seven-space coordinates and dt the last coordinate.
KForm assemble(const KForm& omega, const KForm& rho);

G2Data analyze_positive(const KForm& phi, int orientation = 1);

// Transverse splitting along nu against the 6-dim complement spanned by the
// columns of V (7x6).
SplitResult split(const KForm& phi, const Vec& nu, const Mat& V,
                  int orientation = 1);

// Max norms of d(phi) and d(*phi) over the grid of the chart.
TorsionResidual torsion_residual(const FormField& phi_field);

}  // namespace g2forms
