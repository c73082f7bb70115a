#include "g2forms/spheres.hpp"

#include <cmath>

namespace g2forms {

namespace {

// x_j = prod_{i<j} sin(u_i) * cos(u_j) for j < d-1,
// x_{d-1} = prod sin(u_i); u has d-1 entries.
Vec unit_sphere_point(int d, const Vec& u) {
  Vec x(d);
  double prefix = 1.0;
  for (int j = 0; j < d - 1; ++j) {
    x[j] = prefix * std::cos(u[j]);
    prefix *= std::sin(u[j]);
  }
  x[d - 1] = prefix;
  return x;
}

// d x (d-1) Jacobian of unit_sphere_point.
Mat unit_sphere_jacobian(int d, const Vec& u) {
  Mat J = Mat::Zero(d, d - 1);
  for (int i = 0; i < d - 1; ++i) {
    // differentiate factor i: sin -> cos, cos -> -sin
    double prefix = 1.0;
    for (int j = 0; j < d - 1; ++j) {
      double cj = (j == i) ? -std::sin(u[j]) : std::cos(u[j]);
      double sj = (j == i) ? std::cos(u[j]) : std::sin(u[j]);
      if (j >= i) J(j, i) = prefix * cj;
      prefix *= sj;
    }
    J(d - 1, i) = prefix;
    // rows j < i carry no u_i dependence and stay zero
  }
  return J;
}

Chart target_box(int d, double half) {
  return Chart::box(std::vector<double>(d, -half), std::vector<double>(d, half),
                    std::vector<int>(d, 2));
}

}  // namespace

Chart sphere_chart(int d, int n_polar, int n_azimuth, double margin) {
  int m = d - 1;
  std::vector<double> lo(m), hi(m);
  std::vector<int> grid(m);
  std::vector<bool> per(m, false);
  for (int i = 0; i < m - 1; ++i) {
    lo[i] = margin;
    hi[i] = M_PI - margin;
    grid[i] = n_polar;
  }
  lo[m - 1] = 0.0;
  hi[m - 1] = 2.0 * M_PI;
  grid[m - 1] = n_azimuth;
  per[m - 1] = true;
  return Chart::box(lo, hi, grid, per);
}

Chart ball_chart(int d, int n_polar, int n_azimuth, int n_radial, double r_lo,
                 double r_hi, double margin) {
  Chart s = sphere_chart(d, n_polar, n_azimuth, margin);
  std::vector<double> lo, hi;
  std::vector<int> grid;
  std::vector<bool> per;
  for (int i = 0; i < s.dim; ++i) {
    lo.push_back(s.lo[i]);
    hi.push_back(s.hi[i]);
    grid.push_back(s.grid[i]);
    per.push_back(s.periodic[i]);
  }
  lo.push_back(r_lo);
  hi.push_back(r_hi);
  grid.push_back(n_radial);
  per.push_back(false);
  return Chart::box(lo, hi, grid, per);
}

SmoothMap sphere_embedding(const Chart& chart, int d, double radius,
                           const Mat& A) {
  if (chart.dim != d - 1)
    throw ChartError("sphere_embedding: chart dimension must be d-1");
  Mat M = (A.size() == 0) ? Mat(radius * Mat::Identity(d, d)) : Mat(radius * A);
  SmoothMap m;
  m.source = chart;
  m.target = target_box(d, 1.5 * M.cwiseAbs().rowwise().sum().maxCoeff());
  m.eval = [M, d](const Vec& u) -> Vec { return M * unit_sphere_point(d, u); };
  m.jacobian = [M, d](const Vec& u) -> Mat {
    return M * unit_sphere_jacobian(d, u);
  };
  return m;
}

SmoothMap polar_ball_map(const Chart& chart, int d, const Mat& A) {
  if (chart.dim != d)
    throw ChartError("polar_ball_map: chart dimension must be d");
  Mat M = (A.size() == 0) ? Mat(Mat::Identity(d, d)) : A;
  double rmax = std::max(std::abs(chart.lo[d - 1]), std::abs(chart.hi[d - 1]));
  SmoothMap m;
  m.source = chart;
  m.target = target_box(d, 1.5 * rmax * M.cwiseAbs().rowwise().sum().maxCoeff());
  m.eval = [M, d](const Vec& p) -> Vec {
    Vec u = p.head(d - 1);
    return p[d - 1] * (M * unit_sphere_point(d, u));
  };
  m.jacobian = [M, d](const Vec& p) -> Mat {
    Vec u = p.head(d - 1);
    Mat J(d, d);
    J.leftCols(d - 1) = p[d - 1] * (M * unit_sphere_jacobian(d, u));
    J.col(d - 1) = M * unit_sphere_point(d, u);
    return J;
  };
  return m;
}

Mat plane_rotation(int d, int i, int j, double angle) {
  Mat R = Mat::Identity(d, d);
  R(i, i) = std::cos(angle);
  R(j, j) = std::cos(angle);
  R(i, j) = -std::sin(angle);
  R(j, i) = std::sin(angle);
  return R;
}

SmoothMap box_to_ball(const Chart& box, double radius) {
  int d = box.dim;
  if (d != 2 && d != 3) throw ChartError("box_to_ball: dim must be 2 or 3");
  for (int i = 0; i < d; ++i)
    if (std::abs(box.lo[i] + 1.0) > 1e-12 || std::abs(box.hi[i] - 1.0) > 1e-12)
      throw ChartError("box_to_ball: box must be [-1,1]^dim");
  SmoothMap m;
  m.source = box;
  m.target = target_box(d, 1.1 * radius);
  if (d == 2) {
    m.eval = [radius](const Vec& p) -> Vec {
      Vec x(2);
      x[0] = radius * p[0] * std::sqrt(1.0 - 0.5 * p[1] * p[1]);
      x[1] = radius * p[1] * std::sqrt(1.0 - 0.5 * p[0] * p[0]);
      return x;
    };
    m.jacobian = [radius](const Vec& p) -> Mat {
      double a = std::sqrt(1.0 - 0.5 * p[1] * p[1]);
      double b = std::sqrt(1.0 - 0.5 * p[0] * p[0]);
      Mat J(2, 2);
      J(0, 0) = radius * a;
      J(0, 1) = -radius * p[0] * 0.5 * p[1] / a;
      J(1, 0) = -radius * p[1] * 0.5 * p[0] / b;
      J(1, 1) = radius * b;
      return J;
    };
  } else {
    auto root = [](double y, double z) {
      return std::sqrt(1.0 - 0.5 * y * y - 0.5 * z * z + y * y * z * z / 3.0);
    };
    m.eval = [radius, root](const Vec& p) -> Vec {
      Vec x(3);
      for (int i = 0; i < 3; ++i)
        x[i] = radius * p[i] * root(p[(i + 1) % 3], p[(i + 2) % 3]);
      return x;
    };
    m.jacobian = [radius, root](const Vec& p) -> Mat {
      Mat J(3, 3);
      for (int i = 0; i < 3; ++i) {
        double y = p[(i + 1) % 3], z = p[(i + 2) % 3];
        double r = root(y, z);
        J(i, i) = radius * r;
        J(i, (i + 1) % 3) =
            radius * p[i] * (-y + 2.0 * y * z * z / 3.0) / (2.0 * r);
        J(i, (i + 2) % 3) =
            radius * p[i] * (-z + 2.0 * z * y * y / 3.0) / (2.0 * r);
      }
      return J;
    };
  }
  return m;
}

}  // namespace g2forms
