#include "g2forms/sl3c.hpp"

#include <Eigen/Eigenvalues>
#include <random>

namespace g2forms {

const char* to_string(Sign22 s) {
  switch (s) {
    case Sign22::kPositive: return "positive";
    case Sign22::kSemipositive: return "semipositive";
    case Sign22::kNegative: return "negative";
    case Sign22::kSeminegative: return "seminegative";
    case Sign22::kIndefinite: return "indefinite";
    case Sign22::kZero: return "zero";
  }
  return "?";
}

// Coordinates (x1,y1,x2,y2,x3,y3); z_j = x_j + i y_j.
KForm rho0() {
  KForm r = KForm::basis(6, {0, 2, 4});
  r += KForm::basis(6, {0, 3, 5}, -1.0);
  r += KForm::basis(6, {1, 2, 5}, -1.0);
  r += KForm::basis(6, {1, 3, 4}, -1.0);
  return r;
}

KForm rho0_tilde() {
  KForm r = KForm::basis(6, {1, 2, 4});
  r += KForm::basis(6, {0, 3, 4});
  r += KForm::basis(6, {0, 2, 5});
  r += KForm::basis(6, {1, 3, 5}, -1.0);
  return r;
}

KForm omega0() {
  KForm w = KForm::basis(6, {0, 1});
  w += KForm::basis(6, {2, 3});
  w += KForm::basis(6, {4, 5});
  return w;
}

namespace {

// Vector u with i_u(e*) = beta for a 5-form beta, where e* is the reference
// top form orientation * e^{0..5}.
Vec five_form_to_vector(const KForm& beta, int orientation) {
  Vec u(6);
  int comp[5];
  for (int j = 0; j < 6; ++j) {
    int m = 0;
    for (int v = 0; v < 6; ++v)
      if (v != j) comp[m++] = v;
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    u[j] = sign * orientation * beta[subset_rank(6, 5, comp)];
  }
  return u;
}

}  // namespace

SL3CData analyze_definite(const KForm& rho, int orientation) {
  if (rho.n() != 6 || rho.k() != 3)
    throw FormError("analyze_definite: expected a 3-form on R^6");
  Mat K(6, 6);
  for (int i = 0; i < 6; ++i) {
    Vec e = Vec::Zero(6);
    e[i] = 1.0;
    KForm beta = wedge(contract(e, rho), rho);
    K.col(i) = five_form_to_vector(beta, orientation);
  }
  double lambda = (K * K).trace() / 6.0;
  double scale = rho.euclid_norm_sq();
  scale = scale * scale;  // lambda is quartic in rho
  if (std::abs(lambda) < 1e-12 * std::max(scale, 1e-300))
    throw DegenerateError(lambda);
  if (lambda > 0) throw NotDefiniteError(lambda);
  SL3CData d;
  d.rho = rho;
  d.lambda = lambda;
  d.orientation = orientation;
  d.I = -K / std::sqrt(-lambda);
  d.rho_tilde = pullback_linear(rho, d.I);
  d.vol = 0.25 * wedge(rho, d.rho_tilde);
  return d;
}

RankReport rank_test(const KForm& rho, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  RankReport rep{6, 0, samples};
  for (int s = 0; s < samples; ++s) {
    Vec v(6);
    for (int i = 0; i < 6; ++i) v[i] = gauss(rng);
    v.normalize();
    Mat W = form_to_matrix2(contract(v, rho));
    Eigen::JacobiSVD<Mat> svd(W);
    double smax = svd.singularValues()[0];
    int rank = 0;
    for (int i = 0; i < 6; ++i)
      if (svd.singularValues()[i] > 1e-9 * smax) ++rank;
    rep.min_rank = std::min(rep.min_rank, rank);
    rep.max_rank = std::max(rep.max_rank, rank);
  }
  return rep;
}

CKForm bitype_project(const KForm& a, const Mat& I, int p, int q) {
  if (p + q != a.k()) throw FormError("bitype_project: p+q != degree");
  int n = a.n();
  if ((I * I + Mat::Identity(n, n)).norm() > 1e-8)
    throw FormError("bitype_project: I is not a complex structure");
  // U_theta = cos(theta) Id + sin(theta) I multiplies the (p,q) part by
  // e^{i(p-q)theta} under pullback; project by discrete Fourier averaging.
  int k = a.k();
  int M = 2 * k + 2;
  CKForm acc(KForm(n, k), KForm(n, k));
  for (int m = 0; m < M; ++m) {
    double th = 2.0 * M_PI * m / M;
    Mat U = std::cos(th) * Mat::Identity(n, n) + std::sin(th) * I;
    KForm pb = pullback_linear(a, U);
    std::complex<double> w = std::polar(1.0, -(p - q) * th);
    acc += w * CKForm(pb);
  }
  return (1.0 / M) * acc;
}

KForm delta_vol(const SL3CData& data, const KForm& drho) {
  return 0.5 * wedge(drho, data.rho_tilde);
}

KForm delta_rho_tilde(const SL3CData& data, const KForm& drho) {
  const std::complex<double> i(0, 1);
  CKForm out = (-i) * bitype_project(drho, data.I, 3, 0) +
               (-i) * bitype_project(drho, data.I, 2, 1) +
               i * bitype_project(drho, data.I, 1, 2) +
               i * bitype_project(drho, data.I, 0, 3);
  if (out.im().max_norm() > 1e-10 * std::max(1.0, drho.max_norm()))
    throw FormError("delta_rho_tilde: result not real");
  return out.re();
}

Mat form_to_matrix2(const KForm& omega) {
  if (omega.k() != 2) throw FormError("form_to_matrix2: degree != 2");
  int n = omega.n();
  Mat W = Mat::Zero(n, n);
  int idx[2];
  for (int r = 0; r < omega.size(); ++r) {
    subset_unrank(n, 2, r, idx);
    W(idx[0], idx[1]) = omega[r];
    W(idx[1], idx[0]) = -omega[r];
  }
  return W;
}

KForm matrix2_to_form(const Mat& W) {
  int n = static_cast<int>(W.rows());
  KForm w(n, 2);
  int idx[2];
  for (int r = 0; r < w.size(); ++r) {
    subset_unrank(n, 2, r, idx);
    w[r] = W(idx[0], idx[1]);
  }
  return w;
}

TamingResult taming_check(const KForm& omega, const Mat& I) {
  Mat W = form_to_matrix2(omega);
  Mat S = W * I;
  S = 0.5 * (S + S.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  TamingResult r;
  r.margin = es.eigenvalues().minCoeff();
  r.tamed = r.margin > 0;
  return r;
}

double det22_invariant(const KForm& sigma, const KForm& vol) {
  if (sigma.n() != 6 || sigma.k() != 4)
    throw FormError("det22_invariant: expected a 4-form on R^6");
  // Solve i_b(vol) = sigma for the bivector b.
  int nb = static_cast<int>(binomial(6, 2));
  Mat M(15, nb);
  for (int c = 0; c < nb; ++c) {
    KForm basis_bi(6, 2);
    basis_bi[c] = 1.0;
    KForm img = contract_polyvector(basis_bi, vol);
    for (int r = 0; r < 15; ++r) M(r, c) = img[r];
  }
  Vec rhs(15);
  for (int r = 0; r < 15; ++r) rhs[r] = sigma[r];
  Vec b = M.fullPivLu().solve(rhs);
  KForm bi(6, 2);
  for (int c = 0; c < nb; ++c) bi[c] = b[c];
  // The polyvector wedge reuses the form combinatorics.
  KForm cube = wedge(wedge(bi, bi), bi);
  // Natural pairing <e_{0..5}, e^{0..5}> = 1.
  return cube[0] * vol[0] / 6.0;
}

CKForm conj(const CKForm& a) { return CKForm(a.re(), (-1.0) * a.im()); }

std::array<CKForm, 3> holomorphic_coframe(const SL3CData& data) {
  // (1,0)-part of real covectors xi: xi - i (xi o I), then pick 3 that are
  // complex-linearly independent and normalise the product.
  std::array<CKForm, 3> frame{CKForm(KForm(6, 1)), CKForm(KForm(6, 1)),
                              CKForm(KForm(6, 1))};
  Eigen::MatrixXcd picked(6, 3);
  int have = 0;
  for (int j = 0; j < 6 && have < 3; ++j) {
    KForm re = KForm::basis(6, {j});
    KForm im(6, 1);
    for (int a = 0; a < 6; ++a) im[a] = -data.I(j, a);  // -(e^j o I)
    CKForm cand(re, im);
    Eigen::VectorXcd col(6);
    for (int a = 0; a < 6; ++a)
      col[a] = std::complex<double>(cand.re()[a], cand.im()[a]);
    Eigen::MatrixXcd trial(6, have + 1);
    trial.leftCols(have) = picked.leftCols(have);
    trial.col(have) = col;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(trial);
    if (svd.singularValues()[have] > 1e-6) {
      picked.col(have) = col;
      frame[have] = cand;
      ++have;
    }
  }
  if (have < 3) throw FormError("holomorphic_coframe: degenerate I");
  // Normalise: alpha1 ^ alpha2 ^ alpha3 = rho + i rho_tilde.
  CKForm prod = wedge(wedge(frame[0], frame[1]), frame[2]);
  CKForm omega_c(data.rho, data.rho_tilde);
  std::complex<double> num(0, 0);
  double den = 0;
  for (int r = 0; r < 20; ++r) {
    std::complex<double> w(prod.re()[r], prod.im()[r]);
    std::complex<double> o(omega_c.re()[r], omega_c.im()[r]);
    num += w * std::conj(o);
    den += std::norm(o);
  }
  std::complex<double> c = num / den;
  frame[0] = (1.0 / c) * frame[0];
  return frame;
}

Herm22 herm_of_22(const KForm& sigma, const SL3CData& data, double type_tol) {
  if (sigma.n() != 6 || sigma.k() != 4)
    throw FormError("herm_of_22: expected a 4-form on R^6");
  double norm = sigma.max_norm();
  if (norm > 0) {
    double bad = 0;
    for (auto [p, q] : {std::pair{4, 0}, {0, 4}, {3, 1}, {1, 3}}) {
      bad = std::max(bad, bitype_project(sigma, data.I, p, q).max_norm());
    }
    if (bad > type_tol * norm) throw NotType22Error(bad / norm);
  }
  auto frame = holomorphic_coframe(data);
  Herm22 h;
  const std::complex<double> iu(0, 1);
  double volc = data.vol[0];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CKForm top = wedge(CKForm(sigma), iu * wedge(frame[a], conj(frame[b])));
      std::complex<double> val(top.re()[0], top.im()[0]);
      h.matrix(a, b) = 0.5 * val / volc;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h.matrix);
  h.eigenvalues = es.eigenvalues();
  h.det22 = det22_invariant(sigma, data.vol);
  return h;
}

Sign22 classify_herm(const Herm22& h, double zero_tol) {
  double mn = h.eigenvalues.minCoeff();
  double mx = h.eigenvalues.maxCoeff();
  if (std::abs(mn) <= zero_tol && std::abs(mx) <= zero_tol)
    return Sign22::kZero;
  if (mn > zero_tol) return Sign22::kPositive;
  if (mx < -zero_tol) return Sign22::kNegative;
  if (mn >= -zero_tol) return Sign22::kSemipositive;
  if (mx <= zero_tol) return Sign22::kSeminegative;
  return Sign22::kIndefinite;
}

Sign22 classify_22(const KForm& sigma, const SL3CData& data, double zero_tol) {
  if (sigma.max_norm() <= zero_tol) return Sign22::kZero;
  return classify_herm(herm_of_22(sigma, data), zero_tol);
}

namespace {

Sign22 meet(Sign22 a, Sign22 b) {
  if (a == b) return a;
  auto nonneg = [](Sign22 s) {
    return s == Sign22::kPositive || s == Sign22::kSemipositive ||
           s == Sign22::kZero;
  };
  auto nonpos = [](Sign22 s) {
    return s == Sign22::kNegative || s == Sign22::kSeminegative ||
           s == Sign22::kZero;
  };
  if (nonneg(a) && nonneg(b)) return Sign22::kSemipositive;
  if (nonpos(a) && nonpos(b)) return Sign22::kSeminegative;
  return Sign22::kIndefinite;
}

}  // namespace

MeanConvexityReport mean_convexity(const FormField& rho_field,
                                   double closed_tol, double zero_tol) {
  FormField drho = exterior_derivative(rho_field);
  FormField rho_tilde_field;
  rho_tilde_field.chart = rho_field.chart;
  rho_tilde_field.degree = 3;
  rho_tilde_field.fd_step = rho_field.fd_step;
  FormField src = rho_field;
  rho_tilde_field.eval = [src](const Vec& p) {
    return analyze_definite(src.eval(p), src.chart.orientation).rho_tilde;
  };
  FormField drt = exterior_derivative(rho_tilde_field);

  MeanConvexityReport rep;
  rep.points = 0;
  rep.m = 0;
  rep.min_det22 = std::numeric_limits<double>::infinity();
  rep.max_nontype22_fraction = 0;
  bool first = true;
  Sign22 overall = Sign22::kZero;

  rho_field.chart.for_each_node([&](const Vec& p) {
    double scale = std::max(1.0, rho_field.eval(p).max_norm());
    if (drho.eval(p).max_norm() > closed_tol * scale)
      throw NotClosedError("mean_convexity: d rho residual exceeds tolerance");
    SL3CData data = analyze_definite(rho_field.eval(p),
                                     rho_field.chart.orientation);
    KForm s = drt.eval(p);
    Sign22 cls;
    if (s.max_norm() <= zero_tol * scale) {
      cls = Sign22::kZero;
    } else {
      double bad = 0;
      for (auto [pp, qq] : {std::pair{4, 0}, {0, 4}, {3, 1}, {1, 3}})
        bad = std::max(bad, bitype_project(s, data.I, pp, qq).max_norm());
      double frac = bad / s.max_norm();
      rep.max_nontype22_fraction = std::max(rep.max_nontype22_fraction, frac);
      if (frac > 1e-4)
        throw Lemma1ViolationError(
            "mean_convexity: d rho_tilde has a non-(2,2) part");
      Herm22 h = herm_of_22(s, data, 1e-3);
      cls = classify_herm(h, zero_tol * scale);
      rep.min_det22 = std::min(rep.min_det22, h.det22);
    }
    overall = first ? cls : meet(overall, cls);
    first = false;
    ++rep.points;
  });
  rep.overall = overall;
  if (std::isfinite(rep.min_det22) && rep.min_det22 > 0)
    rep.m = std::cbrt(rep.min_det22);
  else if (!std::isfinite(rep.min_det22))
    rep.min_det22 = 0;
  return rep;
}

}  // namespace g2forms
