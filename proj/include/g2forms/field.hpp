#pragma once

#include <functional>
#include <memory>

#include "g2forms/chart.hpp"

namespace g2forms {

// Smooth map between chart domains.  When no analytic Jacobian is supplied a
// Richardson-extrapolated central difference is used.
struct SmoothMap {
  Chart source;
  Chart target;
  std::function<Vec(const Vec&)> eval;
  std::function<Mat(const Vec&)> jacobian;  // optional, target_dim x source_dim
  double fd_step = 1e-5;

  Vec operator()(const Vec& p) const { return eval(p); }

  Mat jacobian_at(const Vec& p) const;
  Mat jacobian_fd(const Vec& p) const;

  static SmoothMap identity(const Chart& c);
  static SmoothMap linear(const Chart& src, const Chart& dst, const Mat& A);
};

SmoothMap compose(const SmoothMap& g, const SmoothMap& f);  // g after f

// Smooth family of KForms over a chart domain.
struct FormField {
  Chart chart;
  int degree = 0;
  std::function<KForm(const Vec&)> eval;
  double fd_step = 1e-3;     // relative to each axis extent
  bool constant = false;     // eval does not depend on the point

  KForm operator()(const Vec& p) const { return eval(p); }

  static FormField constant_field(const Chart& c, const KForm& value,
                                  double fd_step = 1e-3) {
    FormField f;
    f.chart = c;
    f.degree = value.k();
    f.eval = [value](const Vec&) { return value; };
    f.fd_step = fd_step;
    f.constant = true;
    return f;
  }
};

// Partial derivative of the coefficient array of a field along one chart axis,
// central differences with Richardson extrapolation (one-sided second order
// near non-periodic boundaries).
KForm partial_derivative(const FormField& f, const Vec& p, int axis);

FormField exterior_derivative(const FormField& f);

FormField pullback(const FormField& f, const SmoothMap& m);

// Pointwise wedge of two fields over the same chart.
FormField wedge(const FormField& a, const FormField& b);

double integrate(const FormField& f);

// Pullback of a degree-3 field to the unit cube of `cube.source`, then
// integrate.
double chain_integral(const FormField& f, const SmoothMap& cube);

}  // namespace g2forms
