#include "g2forms/hypersurface.hpp"

#include <sstream>

namespace g2forms {

namespace {

// Calibrated on quadratic graph hypersurfaces in the flat model; see the
// conventions table in the README.
const std::complex<double> kBeta12Cal(1.0, 0.0);

// Richardson central difference of a vector-valued chart function, one-sided
// second order at non-periodic boundaries (mirrors partial_derivative).
Vec vec_partial(const Chart& c, const std::function<Vec(const Vec&)>& f,
                const Vec& p, int axis, double fd_step) {
  double h = fd_step * c.extent(axis);
  auto shifted = [&](double step) -> Vec {
    Vec q = p;
    q[axis] += step;
    return q;
  };
  bool central_ok = c.periodic[axis] ||
                    (p[axis] - h >= c.lo[axis] && p[axis] + h <= c.hi[axis]);
  if (central_ok) {
    auto D = [&](double step) -> Vec {
      return (f(shifted(step)) - f(shifted(-step))) / (2 * step);
    };
    return (4.0 * D(h / 2) - D(h)) / 3.0;
  }
  double dir = (p[axis] - h < c.lo[axis]) ? 1.0 : -1.0;
  return dir * (-3.0 * f(p) + 4.0 * f(shifted(dir * h)) -
                f(shifted(dir * 2 * h))) /
         (2 * h);
}

// Christoffel symbols Gamma[k](a,b) of an ambient metric field by central FD.
std::array<Mat, 7> christoffels(const std::function<G2Data(const Vec&)>& amb,
                                const Vec& x, double step) {
  std::array<Mat, 7> dg;
  for (int a = 0; a < 7; ++a) {
    Vec xp = x, xm = x;
    xp[a] += step;
    xm[a] -= step;
    dg[a] = (amb(xp).metric - amb(xm).metric) / (2 * step);
  }
  Mat ginv = amb(x).metric.inverse();
  std::array<Mat, 7> gam;
  for (int k = 0; k < 7; ++k) gam[k] = Mat::Zero(7, 7);
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b)
      for (int k = 0; k < 7; ++k) {
        double s = 0;
        for (int l = 0; l < 7; ++l)
          s += ginv(k, l) * (dg[a](l, b) + dg[b](l, a) - dg[l](a, b));
        gam[k](a, b) = 0.5 * s;
      }
  return gam;
}

}  // namespace

HypersurfaceData induce(const FormField& ambient, const SmoothMap& embedding,
                        int co_orientation, bool validate, double density_tol) {
  if (ambient.chart.dim != 7 || ambient.degree != 3)
    throw FormError("induce: ambient must be a 3-form field on a 7-chart");
  if (embedding.source.dim != 6)
    throw FormError("induce: embedding source must be 6-dimensional");
  HypersurfaceData h;
  h.embedding = embedding;
  h.ambient = ambient;
  h.co_orientation = co_orientation;
  h.fd_step = ambient.fd_step;

  if (ambient.constant) {
    G2Data cached = analyze_positive(ambient.eval(Vec::Zero(7)),
                                     ambient.chart.orientation);
    h.ambient_at = [cached](const Vec&) { return cached; };
  } else {
    FormField amb = ambient;
    h.ambient_at = [amb](const Vec& x) {
      return analyze_positive(amb.eval(x), amb.chart.orientation);
    };
  }

  SmoothMap emb = embedding;
  auto ambient_at = h.ambient_at;
  int co = co_orientation;

  h.normal = [emb, ambient_at, co](const Vec& p) -> Vec {
    Mat J = emb.jacobian_at(p);
    Eigen::ColPivHouseholderQR<Mat> rank_qr(J);
    if (rank_qr.rank() < 6) {
      std::ostringstream os;
      os << "induce: embedding is not an immersion at [";
      for (int i = 0; i < 6; ++i) os << (i ? ", " : "") << p[i];
      os << "]";
      throw FormError(os.str());
    }
    G2Data amb = ambient_at(emb.eval(p));
    Eigen::HouseholderQR<Mat> qr(J);
    Mat Q = qr.householderQ();
    Vec m = Q.col(6);  // Euclidean normal to the image of J
    Vec n = amb.metric.ldlt().solve(m);
    n /= std::sqrt(n.dot(amb.metric * n));
    Mat F(7, 7);
    F.leftCols(6) = J;
    F.col(6) = n;
    if (F.determinant() * co < 0) n = -n;
    return n;
  };

  h.rho.chart = embedding.source;
  h.rho.degree = 3;
  h.rho.fd_step = h.fd_step;
  FormField amb_field = ambient;
  h.rho.eval = [emb, amb_field](const Vec& p) {
    return pullback_linear(amb_field.eval(emb.eval(p)), emb.jacobian_at(p));
  };

  h.omega.chart = embedding.source;
  h.omega.degree = 2;
  h.omega.fd_step = h.fd_step;
  auto normal = h.normal;
  h.omega.eval = [emb, amb_field, normal](const Vec& p) {
    KForm phi = amb_field.eval(emb.eval(p));
    return pullback_linear(contract(normal(p), phi), emb.jacobian_at(p));
  };

  // Induced orientation for the intrinsic structure: opposite to the frame
  // (J | nu).  With this choice the outward-co-oriented round sphere is
  // strictly mean-convex (d rho_tilde = 2 omega^2) while omega tames the
  // companion structure of the reversed orientation; see the conventions
  // table in the README.
  int orient_n = -co_orientation * ambient.chart.orientation;
  FormField rho_field = h.rho;
  h.rho_at = [rho_field, orient_n](const Vec& p) {
    return analyze_definite(rho_field.eval(p), orient_n);
  };
  auto rho_at = h.rho_at;
  h.rho_tilde.chart = embedding.source;
  h.rho_tilde.degree = 3;
  h.rho_tilde.fd_step = h.fd_step;
  h.rho_tilde.eval = [rho_at](const Vec& p) { return rho_at(p).rho_tilde; };

  h.metric_at = [emb, ambient_at](const Vec& p) -> Mat {
    Mat J = emb.jacobian_at(p);
    return J.transpose() * ambient_at(emb.eval(p)).metric * J;
  };

  bool flat = ambient.constant;
  double fd = h.fd_step;
  Chart chart = embedding.source;
  h.second_at = [emb, ambient_at, normal, chart, fd, flat](const Vec& p) -> Mat {
    Mat J = emb.jacobian_at(p);
    Vec x = emb.eval(p);
    G2Data amb = ambient_at(x);
    Vec nu = normal(p);
    Mat Dnu(7, 6);
    for (int i = 0; i < 6; ++i)
      Dnu.col(i) = vec_partial(chart, normal, p, i, fd);
    if (!flat) {
      double step = fd * std::max(1.0, x.cwiseAbs().maxCoeff());
      auto gam = christoffels(ambient_at, x, step);
      for (int i = 0; i < 6; ++i) {
        Vec corr(7);
        for (int k = 0; k < 7; ++k)
          corr[k] = J.col(i).dot(gam[k] * nu);
        Dnu.col(i) += corr;
      }
    }
    Mat B = Dnu.transpose() * amb.metric * J;
    return 0.5 * (B + B.transpose());
  };

  auto second_at = h.second_at;
  auto metric_at = h.metric_at;
  h.mu_at = [second_at, metric_at](const Vec& p) {
    Mat G = metric_at(p);
    return G.ldlt().solve(second_at(p)).trace();
  };

  h.beta11_at = [second_at, rho_at](const Vec& p) -> KForm {
    Mat B = second_at(p);
    Mat I = rho_at(p).I;
    Mat B11 = 0.5 * (B + I.transpose() * B * I);
    // beta(x, y) = B11(x, I y); the sign is pinned by the round-sphere
    // calibration of the curvature identities.
    Mat W = B11 * I;
    return matrix2_to_form(0.5 * (W - W.transpose()));
  };

  if (validate) {
    FormField omega_field = h.omega;
    chart.for_each_node([&](const Vec& p) {
      SL3CData d = rho_at(p);
      // omega tames the complex structure of the reversed orientation (the
      // transverse-splitting positivity convention).
      TamingResult t = taming_check(omega_field.eval(p), Mat(-d.I));
      if (!t.tamed)
        throw FormError("induce: induced omega does not tame I_rho");
      Mat G = metric_at(p);
      double dens = std::sqrt(std::max(G.determinant(), 0.0));
      double vol_dens = std::abs(d.vol[0]);
      if (std::abs(dens - vol_dens) > density_tol * std::max(1.0, dens))
        throw FormError(
            "induce: Riemannian density does not match |vol_rho| density");
    });
  }
  return h;
}

Mat second_fundamental(const HypersurfaceData& h, const Vec& p) {
  return h.second_at(p);
}

Prop1Report verify_prop1(const HypersurfaceData& h, double fd_step) {
  HypersurfaceData fresh = h;
  if (fd_step > 0 && fd_step != h.fd_step) {
    FormField amb = h.ambient;
    amb.fd_step = fd_step;
    fresh = induce(amb, h.embedding, h.co_orientation, false);
  }
  FormField drt = exterior_derivative(fresh.rho_tilde);
  Prop1Report rep{0.0, 0.0, 0};
  fresh.embedding.source.for_each_node([&](const Vec& p) {
    KForm d = drt.eval(p);
    KForm omega = fresh.omega.eval(p);
    KForm id1 = wedge(fresh.beta11_at(p), omega) - 0.5 * d;
    rep.id1_residual = std::max(rep.id1_residual, id1.max_norm());
    SL3CData data = fresh.rho_at(p);
    // With the signed volume of the induced orientation the curvature
    // identity reads mu vol = -1/2 omega ^ d rho_tilde; equivalently
    // mu |vol| = +1/2 omega ^ d rho_tilde against the positive density.
    double id2 =
        fresh.mu_at(p) * data.vol[0] + 0.5 * wedge(omega, d)[0];
    rep.id2_residual = std::max(rep.id2_residual, std::abs(id2));
    ++rep.points;
  });
  return rep;
}

Eq9Report verify_eq9(const HypersurfaceData& h) {
  FormField drt = exterior_derivative(h.rho_tilde);
  Eq9Report rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  rep.mu_min = rep.det_min = std::numeric_limits<double>::infinity();
  rep.mu_max = rep.det_max = -std::numeric_limits<double>::infinity();
  rep.points = 0;
  h.embedding.source.for_each_node([&](const Vec& p) {
    SL3CData data = h.rho_at(p);
    KForm d = drt.eval(p);
    double det = det22_invariant(d, data.vol);
    Herm22 herm = herm_of_22(d, data, 1e-3);
    if (classify_herm(herm, 1e-8) != Sign22::kPositive)
      throw NotStrictlyMeanConvexError(
          "verify_eq9: d rho_tilde not strictly positive at a grid point");
    double mu = h.mu_at(p);
    double slack = mu - 1.5 * std::cbrt(det);
    rep.min_slack = std::min(rep.min_slack, slack);
    rep.mu_min = std::min(rep.mu_min, mu);
    rep.mu_max = std::max(rep.mu_max, mu);
    rep.det_min = std::min(rep.det_min, det);
    rep.det_max = std::max(rep.det_max, det);
    ++rep.points;
  });
  return rep;
}

CKForm beta12_raw(const HypersurfaceData& h, const Vec& p) {
  SL3CData data = h.rho_at(p);
  Mat B = h.second_at(p);
  Mat I = data.I;
  Mat BC = 0.5 * (B - I.transpose() * B * I);
  // complex quadratic form q(x,y) = B_C(x,y) - i B_C(Ix,y)
  Eigen::MatrixXcd Q =
      BC.cast<std::complex<double>>() -
      std::complex<double>(0, 1) * (I.transpose() * BC).cast<std::complex<double>>();
  auto frame = holomorphic_coframe(data);
  // dual (1,0) tangent frame: [alpha; conj(alpha)] u_b = e_b
  Eigen::MatrixXcd M6(6, 6);
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 6; ++c) {
      M6(a, c) = std::complex<double>(frame[a].re()[c], frame[a].im()[c]);
      M6(3 + a, c) = std::conj(M6(a, c));
    }
  Eigen::MatrixXcd U = M6.fullPivLu().solve(
      Eigen::MatrixXcd::Identity(6, 6).leftCols(3));
  // conj(Omega) = rho - i rho_tilde
  CKForm conj_omega(data.rho, (-1.0) * data.rho_tilde);
  Mat g = [&] {
    // metric of the induced structure in the chart basis
    return h.metric_at(p);
  }();
  Mat ginv = g.inverse();
  CKForm out(KForm(6, 3), KForm(6, 3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      std::complex<double> qab = (U.col(a).transpose() * Q * U.col(b))(0, 0);
      if (std::abs(qab) < 1e-15) continue;
      // metric raise of alpha^b: w = g^{-1} alpha^b, a (0,1) vector
      Vec wr(6), wi(6);
      for (int c = 0; c < 6; ++c) {
        wr[c] = frame[b].re()[c];
        wi[c] = frame[b].im()[c];
      }
      Vec vr = ginv * wr, vi = ginv * wi;
      CKForm gamma = CKForm(contract(vr, conj_omega.re()),
                            contract(vr, conj_omega.im())) +
                     std::complex<double>(0, 1) *
                         CKForm(contract(vi, conj_omega.re()),
                                contract(vi, conj_omega.im()));
      out += qab * wedge(frame[a], gamma);
    }
  return out;
}

double verify_eq10(const HypersurfaceData& h) {
  FormField domega = exterior_derivative(h.omega);
  double res = 0;
  h.embedding.source.for_each_node([&](const Vec& p) {
    KForm r = domega.eval(p) - 0.5 * h.mu_at(p) * h.rho.eval(p);
    CKForm b12 = kBeta12Cal * beta12_raw(h, p);
    r += b12.re();
    res = std::max(res, r.max_norm());
  });
  return res;
}

Eq15Report bound_eq15(const HypersurfaceData& h, double ambient_volume) {
  FormField drt = exterior_derivative(h.rho_tilde);
  double m = std::numeric_limits<double>::infinity();
  h.embedding.source.for_each_node([&](const Vec& p) {
    SL3CData data = h.rho_at(p);
    double det = det22_invariant(drt.eval(p), data.vol);
    if (!(det > 0))
      throw NotStrictlyMeanConvexError(
          "bound_eq15: det22(d rho_tilde) not positive at a grid point");
    m = std::min(m, std::cbrt(det));
  });
  Eq15Report rep;
  rep.m = m;
  rep.vol_n = riemannian_volume(h.ambient, h.embedding);
  rep.lhs = ambient_volume;
  rep.rhs = 4.0 / (7.0 * m) * rep.vol_n;
  rep.slack = rep.rhs - rep.lhs;
  return rep;
}

double riemannian_volume(const FormField& ambient, const SmoothMap& embedding) {
  std::function<G2Data(const Vec&)> amb_at;
  if (ambient.constant) {
    G2Data cached =
        analyze_positive(ambient.eval(Vec::Zero(7)), ambient.chart.orientation);
    amb_at = [cached](const Vec&) { return cached; };
  } else {
    FormField amb = ambient;
    amb_at = [amb](const Vec& x) {
      return analyze_positive(amb.eval(x), amb.chart.orientation);
    };
  }
  const Chart& c = embedding.source;
  double total = 0;
  std::array<int, kMaxDim> it{};
  Vec p(c.dim);
  while (true) {
    double w = 1.0;
    for (int i = 0; i < c.dim; ++i) {
      p[i] = c.lo[i] + it[i] * c.step(i);
      double wi = c.step(i);
      if (!c.periodic[i] && (it[i] == 0 || it[i] == c.grid[i] - 1)) wi *= 0.5;
      w *= wi;
    }
    Mat J = embedding.jacobian_at(p);
    Mat G = J.transpose() * amb_at(embedding.eval(p)).metric * J;
    total += w * std::sqrt(std::max(G.determinant(), 0.0));
    int axis = c.dim - 1;
    while (axis >= 0) {
      if (++it[axis] < c.samples(axis)) break;
      it[axis--] = 0;
    }
    if (axis < 0) break;
  }
  return total;
}

}  // namespace g2forms
