#include "g2forms/g2.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

namespace g2forms {

KForm embed(const KForm& a, int n) {
  if (n < a.n()) throw FormError("embed: target dimension too small");
  KForm out(n, a.k());
  int idx[kMaxDim];
  for (int r = 0; r < a.size(); ++r) {
    subset_unrank(a.n(), a.k(), r, idx);
    out[subset_rank(n, a.k(), idx)] = a[r];
  }
  return out;
}

KForm assemble(const KForm& omega, const KForm& rho) {
  if (omega.n() != 6 || omega.k() != 2 || rho.n() != 6 || rho.k() != 3)
    throw FormError("assemble: expected a 2-form and a 3-form on R^6");
  return wedge(embed(omega, 7), KForm::basis(7, {6})) + embed(rho, 7);
}

KForm phi0() { return assemble(omega0(), rho0()); }

G2Data analyze_positive(const KForm& phi, int orientation) {
  if (phi.n() != 7 || phi.k() != 3)
    throw FormError("analyze_positive: expected a 3-form on R^7");
  Mat b(7, 7);
  std::array<KForm, 7> iphi;
  for (int i = 0; i < 7; ++i) {
    Vec e = Vec::Zero(7);
    e[i] = 1.0;
    iphi[i] = contract(e, phi);
  }
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = orientation * wedge(wedge(iphi[i], iphi[j]), phi)[0] / 6.0;
      b(i, j) = v;
      b(j, i) = v;
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(b);
  double mn = es.eigenvalues().minCoeff();
  double mx = es.eigenvalues().cwiseAbs().maxCoeff();
  if (std::abs(mn) < 1e-10 * std::max(mx, 1e-300)) throw DegenerateError(mn);
  if (mn < 0) throw NotPositiveError(mn);
  G2Data d;
  d.phi = phi;
  d.b = b;
  d.orientation = orientation;
  d.metric = std::pow(b.determinant(), -1.0 / 9.0) * b;
  double sd = std::sqrt(d.metric.determinant());
  d.vol = KForm(7, 7);
  d.vol[0] = orientation * sd;
  d.star_phi = hodge_star(phi, d.metric, orientation);
  double norm_sq = inner(phi, phi, d.metric);
  if (std::abs(norm_sq - 7.0) > 1e-8)
    throw FormError("analyze_positive: |phi|^2 normalisation check failed");
  return d;
}

SplitResult split(const KForm& phi, const Vec& nu, const Mat& V,
                  int orientation) {
  if (phi.n() != 7 || phi.k() != 3)
    throw FormError("split: expected a 3-form on R^7");
  if (V.rows() != 7 || V.cols() != 6 || nu.size() != 7)
    throw FormError("split: frame shape mismatch");
  Mat F(7, 7);
  F.leftCols(6) = V;
  F.col(6) = nu;
  if (std::abs(F.determinant()) < 1e-12)
    throw FormError("split: degenerate frame (nu in span of V)");
  KForm psi = pullback_linear(phi, F);
  // psi = omega ^ e^6 + rho in the adapted coordinates.
  Vec e6 = Vec::Zero(7);
  e6[6] = 1.0;
  KForm omega7 = contract(e6, psi);
  SplitResult r;
  r.omega = KForm(6, 2);
  r.rho = KForm(6, 3);
  int idx[3];
  for (int i = 0; i < r.omega.size(); ++i) {
    subset_unrank(6, 2, i, idx);
    r.omega[i] = omega7[subset_rank(7, 2, idx)];
  }
  for (int i = 0; i < r.rho.size(); ++i) {
    subset_unrank(6, 3, i, idx);
    r.rho[i] = psi[subset_rank(7, 3, idx)];
  }
  r.rho_data = analyze_definite(r.rho, orientation);
  r.taming = taming_check(r.omega, r.rho_data.I);
  r.wedge_defect = wedge(r.omega, r.rho).max_norm();
  KForm w3 = wedge(wedge(r.omega, r.omega), r.omega);
  r.normalization_defect = ((1.0 / 6.0) * w3 - r.rho_data.vol).max_norm();
  return r;
}

TorsionResidual torsion_residual(const FormField& phi_field) {
  if (phi_field.degree != 3 || phi_field.chart.dim != 7)
    throw FormError("torsion_residual: expected a 3-form field on a 7-chart");
  const Chart& c = phi_field.chart;
  FormField star;
  star.chart = c;
  star.degree = 4;
  star.fd_step = phi_field.fd_step;
  star.constant = phi_field.constant;
  FormField src = phi_field;
  star.eval = [src](const Vec& p) {
    try {
      return analyze_positive(src.eval(p), src.chart.orientation).star_phi;
    } catch (const FormError& e) {
      std::ostringstream os;
      os << e.what() << " at (";
      for (int i = 0; i < p.size(); ++i)
        os << (i ? ", " : "") << p[i];
      os << ")";
      throw FormError(os.str());
    }
  };
  FormField dphi = exterior_derivative(phi_field);
  FormField dstar = exterior_derivative(star);
  TorsionResidual r{0.0, 0.0};
  c.for_each_node([&](const Vec& p) {
    star.eval(p);  // positivity probe with location reporting
    r.d_phi = std::max(r.d_phi, dphi.eval(p).max_norm());
    r.d_star_phi = std::max(r.d_star_phi, dstar.eval(p).max_norm());
  });
  return r;
}

}  // namespace g2forms
