#include "g2forms/field.hpp"

#include <sstream>

namespace g2forms {

Mat SmoothMap::jacobian_at(const Vec& p) const {
  if (jacobian) return jacobian(p);
  return jacobian_fd(p);
}

Mat SmoothMap::jacobian_fd(const Vec& p) const {
  int sd = source.dim, td = target.dim;
  Mat J(td, sd);
  for (int i = 0; i < sd; ++i) {
    double h = fd_step * std::max(1.0, std::abs(p[i]));
    auto central = [&](double step) -> Vec {
      Vec pp = p, pm = p;
      pp[i] += step;
      pm[i] -= step;
      return (eval(pp) - eval(pm)) / (2 * step);
    };
    Vec d = (4.0 * central(h / 2) - central(h)) / 3.0;
    J.col(i) = d;
  }
  return J;
}

SmoothMap SmoothMap::identity(const Chart& c) {
  SmoothMap m;
  m.source = c;
  m.target = c;
  m.eval = [](const Vec& p) { return p; };
  int d = c.dim;
  m.jacobian = [d](const Vec&) { return Mat::Identity(d, d); };
  return m;
}

SmoothMap SmoothMap::linear(const Chart& src, const Chart& dst, const Mat& A) {
  SmoothMap m;
  m.source = src;
  m.target = dst;
  m.eval = [A](const Vec& p) -> Vec { return A * p; };
  m.jacobian = [A](const Vec&) { return A; };
  return m;
}

SmoothMap compose(const SmoothMap& g, const SmoothMap& f) {
  SmoothMap m;
  m.source = f.source;
  m.target = g.target;
  m.eval = [g, f](const Vec& p) { return g.eval(f.eval(p)); };
  m.jacobian = [g, f](const Vec& p) -> Mat {
    return g.jacobian_at(f.eval(p)) * f.jacobian_at(p);
  };
  return m;
}

KForm partial_derivative(const FormField& f, const Vec& p, int axis) {
  if (f.constant) {
    KForm z = f.eval(p);
    z *= 0.0;
    return z;
  }
  const Chart& c = f.chart;
  if (f.fd_step > 0.25)
    throw ChartError("partial_derivative: fd_step exceeds 1/4 of axis extent");
  double h = f.fd_step * c.extent(axis);
  auto shifted = [&](double step) -> Vec {
    Vec q = p;
    q[axis] += step;
    if (c.periodic[axis]) {
      double e = c.extent(axis);
      while (q[axis] >= c.hi[axis]) q[axis] -= e;
      while (q[axis] < c.lo[axis]) q[axis] += e;
    }
    return q;
  };
  bool central_ok = c.periodic[axis] ||
                    (p[axis] - h >= c.lo[axis] && p[axis] + h <= c.hi[axis]);
  if (central_ok) {
    auto D = [&](double step) {
      KForm d = f.eval(shifted(step)) - f.eval(shifted(-step));
      d *= 1.0 / (2 * step);
      return d;
    };
    KForm dh = D(h), dh2 = D(h / 2);
    dh2 *= 4.0 / 3.0;
    dh *= 1.0 / 3.0;
    return dh2 - dh;
  }
  // one-sided second-order stencil at the boundary
  double dir = (p[axis] - h < c.lo[axis]) ? 1.0 : -1.0;
  KForm f0 = f.eval(p);
  KForm f1 = f.eval(shifted(dir * h));
  KForm f2 = f.eval(shifted(dir * 2 * h));
  KForm d = (-3.0) * f0 + 4.0 * f1 - f2;
  d *= dir / (2 * h);
  return d;
}

FormField exterior_derivative(const FormField& f) {
  if (f.degree > f.chart.dim - 1)
    throw ChartError("exterior_derivative: top-degree field");
  FormField out;
  out.chart = f.chart;
  out.degree = f.degree + 1;
  out.fd_step = f.fd_step;
  FormField src = f;
  out.eval = [src](const Vec& p) -> KForm {
    int n = src.chart.dim;
    KForm acc(n, src.degree + 1);
    for (int i = 0; i < n; ++i) {
      KForm di = partial_derivative(src, p, i);
      acc += wedge(KForm::basis(n, {i}), di);
    }
    return acc;
  };
  if (f.constant) {
    out.constant = true;
    out.eval = [n = f.chart.dim, k = f.degree](const Vec&) {
      return KForm(n, k + 1);
    };
  }
  return out;
}

FormField pullback(const FormField& f, const SmoothMap& m) {
  if (m.target.dim != f.chart.dim)
    throw ChartError("pullback: target chart dimension mismatch");
  FormField out;
  out.chart = m.source;
  out.degree = f.degree;
  out.fd_step = f.fd_step;
  FormField src = f;
  SmoothMap map = m;
  out.eval = [src, map](const Vec& p) -> KForm {
    Vec q = map.eval(p);
    if (!src.chart.contains(q)) {
      std::ostringstream os;
      os << "pullback: image point outside field domain: [";
      for (int i = 0; i < q.size(); ++i) os << (i ? ", " : "") << q[i];
      os << "]";
      throw ChartError(os.str());
    }
    return pullback_linear(src.eval(q), map.jacobian_at(p));
  };
  return out;
}

FormField wedge(const FormField& a, const FormField& b) {
  if (a.chart.dim != b.chart.dim)
    throw ChartError("wedge(field): chart dimension mismatch");
  FormField out;
  out.chart = a.chart;
  out.degree = a.degree + b.degree;
  out.fd_step = std::min(a.fd_step, b.fd_step);
  out.constant = a.constant && b.constant;
  FormField fa = a, fb = b;
  out.eval = [fa, fb](const Vec& p) { return wedge(fa.eval(p), fb.eval(p)); };
  return out;
}

double integrate(const FormField& f) {
  const Chart& c = f.chart;
  if (f.degree != c.dim) throw ChartError("integrate: degree != chart dim");
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
    total += w * f.eval(p)[0];
    int axis = c.dim - 1;
    while (axis >= 0) {
      if (++it[axis] < c.samples(axis)) break;
      it[axis--] = 0;
    }
    if (axis < 0) break;
  }
  return c.orientation * total;
}

double chain_integral(const FormField& f, const SmoothMap& cube) {
  if (f.degree != 3) throw ChartError("chain_integral: field degree != 3");
  if (cube.source.dim != 3) throw ChartError("chain_integral: cube not 3-dim");
  return integrate(pullback(f, cube));
}

}  // namespace g2forms
