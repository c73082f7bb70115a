#pragma once

#include "g2forms/field.hpp"

namespace g2forms {

// Hyperspherical chart for S^{d-1}: d-2 polar angles in
// [margin, pi - margin] and one periodic azimuth in [0, 2pi).
Chart sphere_chart(int d, int n_polar, int n_azimuth, double margin = 0.0);

// Chart for the polar ball map: sphere_chart axes plus a trailing radial
// axis [r_lo, r_hi].
Chart ball_chart(int d, int n_polar, int n_azimuth, int n_radial,
                 double r_lo, double r_hi, double margin = 0.0);

// Embedding S^{d-1} -> R^d (composed with the linear map A, default scaling
// by `radius`); analytic Jacobian.  A must be d x d; ellipsoids and rotated
// patches are A = diag(a_i) or A = rotation.
SmoothMap sphere_embedding(const Chart& chart, int d, double radius = 1.0,
                           const Mat& A = Mat());

// (angles, r) -> r * unit_sphere(angles), composed with A; analytic Jacobian.
SmoothMap polar_ball_map(const Chart& chart, int d, const Mat& A = Mat());

// Rotation in the (i, j) coordinate plane by `angle` (SO(d)).
Mat plane_rotation(int d, int i, int j, double angle);

// Smooth area-true-corner map of the box chart onto the ball of `radius`
// (dim 2 or 3); analytic Jacobian.  The box must be [-1,1]^dim.
SmoothMap box_to_ball(const Chart& box, double radius);

}  // namespace g2forms
