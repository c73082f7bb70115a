#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "g2forms/kform.hpp"

namespace g2forms {

struct ChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Axis-aligned box chart with per-axis grid counts.  Periodic axes identify
// lo with hi (torus factors); their grid points cover [lo, hi) only.
struct Chart {
  int dim = 0;
  std::array<double, kMaxDim> lo{};
  std::array<double, kMaxDim> hi{};
  std::array<int, kMaxDim> grid{};
  std::array<bool, kMaxDim> periodic{};
  int orientation = 1;

  static Chart box(std::vector<double> los, std::vector<double> his,
                   std::vector<int> grids, std::vector<bool> per = {},
                   int orientation = 1) {
    Chart c;
    c.dim = static_cast<int>(los.size());
    if (c.dim < 1 || c.dim > kMaxDim)
      throw ChartError("Chart: dimension out of range");
    if (his.size() != los.size() || grids.size() != los.size())
      throw ChartError("Chart: inconsistent axis data");
    c.orientation = orientation;
    for (int i = 0; i < c.dim; ++i) {
      if (!(los[i] < his[i])) throw ChartError("Chart: lo >= hi");
      if (grids[i] < 2) throw ChartError("Chart: grid count < 2");
      c.lo[i] = los[i];
      c.hi[i] = his[i];
      c.grid[i] = grids[i];
      c.periodic[i] = per.empty() ? false : per[i];
    }
    return c;
  }

  // Unit torus chart T^d with unit-period axes.
  static Chart torus(int d, int n) {
    std::vector<double> los(d, 0.0), his(d, 1.0);
    std::vector<int> grids(d, n);
    std::vector<bool> per(d, true);
    return box(los, his, grids, per);
  }

  double extent(int axis) const { return hi[axis] - lo[axis]; }
  double step(int axis) const { return extent(axis) / (grid[axis] - 1); }

  // Grid node count actually sampled along an axis (periodic axes drop the
  // duplicated endpoint).
  int samples(int axis) const {
    return periodic[axis] ? grid[axis] - 1 : grid[axis];
  }

  bool contains(const Vec& p, double tol = 1e-9) const {
    for (int i = 0; i < dim; ++i) {
      if (periodic[i]) continue;
      double t = tol * std::max(1.0, extent(i));
      if (p[i] < lo[i] - t || p[i] > hi[i] + t) return false;
    }
    return true;
  }

  double smallest_extent() const {
    double m = extent(0);
    for (int i = 1; i < dim; ++i) m = std::min(m, extent(i));
    return m;
  }

  // Visit every sampled grid node in a fixed (row-major) order.
  void for_each_node(const std::function<void(const Vec&)>& fn) const {
    std::array<int, kMaxDim> it{};
    Vec p(dim);
    while (true) {
      for (int i = 0; i < dim; ++i) p[i] = lo[i] + it[i] * step(i);
      fn(p);
      int axis = dim - 1;
      while (axis >= 0) {
        if (++it[axis] < samples(axis)) break;
        it[axis--] = 0;
      }
      if (axis < 0) break;
    }
  }
};

}  // namespace g2forms
