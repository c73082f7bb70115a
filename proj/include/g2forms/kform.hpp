#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

#include "g2forms/multiindex.hpp"

namespace g2forms {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct FormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Alternating k-form at a point of R^n, dense coefficients over the
// lexicographically sorted strictly-increasing index tuples.
class KForm {
 public:
  KForm() : n_(0), k_(0) {}
  KForm(int n, int k) : n_(n), k_(k) {
    if (n < 1 || n > kMaxDim) throw FormError("KForm: dimension out of range");
    if (k < 0 || k > n) throw FormError("KForm: degree out of range");
    coeffs_.assign(static_cast<size_t>(binomial(n, k)), 0.0);
  }

  int n() const { return n_; }
  int k() const { return k_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  double& operator[](int i) { return coeffs_[static_cast<size_t>(i)]; }
  double operator[](int i) const { return coeffs_[static_cast<size_t>(i)]; }

  const std::vector<double>& coeffs() const { return coeffs_; }
  std::vector<double>& coeffs() { return coeffs_; }

  // Basis k-form dx^{i0} ^ ... ^ dx^{ik-1}; indices need not be sorted,
  // the sign of the sorting permutation is absorbed into the coefficient.
  static KForm basis(int n, std::initializer_list<int> idx, double c = 1.0) {
    KForm f(n, static_cast<int>(idx.size()));
    std::vector<int> v(idx);
    int sign = 1;
    for (size_t i = 0; i + 1 < v.size(); ++i)
      for (size_t j = 0; j + 1 < v.size() - i; ++j)
        if (v[j] > v[j + 1]) {
          std::swap(v[j], v[j + 1]);
          sign = -sign;
        }
    for (size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i] == v[i + 1]) return f;  // degenerate: zero form
    f[subset_rank(n, f.k(), v.data())] = sign * c;
    return f;
  }

  KForm& operator+=(const KForm& o) {
    check_same(o);
    for (int i = 0; i < size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_same(o);
    for (int i = 0; i < size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  KForm& operator*=(double c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(KForm a, double c) { return a *= c; }
  friend KForm operator*(double c, KForm a) { return a *= c; }

  double max_norm() const {
    double m = 0;
    for (double x : coeffs_) m = std::max(m, std::abs(x));
    return m;
  }
  double euclid_norm_sq() const {
    double s = 0;
    for (double x : coeffs_) s += x * x;
    return s;
  }

  // Value on k vectors (columns of V).
  double apply(const Mat& V) const;

 private:
  void check_same(const KForm& o) const {
    if (n_ != o.n_ || k_ != o.k_) throw FormError("KForm: shape mismatch");
  }
  int n_, k_;
  std::vector<double> coeffs_;
};

KForm wedge(const KForm& a, const KForm& b);

// Interior product i_v(a); requires a.k() >= 1.
KForm contract(const Vec& v, const KForm& a);

// (L^* a)(v_1..v_k) = a(L v_1,..,L v_k).  L maps R^m -> R^n where a lives on
// R^n; the result lives on R^m.  Handles rectangular L (pullback along a
// linear map between spaces of different dimension).
KForm pullback_linear(const KForm& a, const Mat& L);

// Gram matrix of the metric induced on k-forms by a metric g on vectors
// (entries <e^I, e^J>_g = det of the corresponding minor of g^{-1}).
Mat form_metric(const Mat& g, int k);

double inner(const KForm& a, const KForm& b, const Mat& g);

// Hodge star for metric g and orientation sign (reference volume form
// orientation * sqrt(det g) * dx^1..dx^n).
KForm hodge_star(const KForm& a, const Mat& g, int orientation);

// ---- complex-coefficient forms (for bi-type decompositions) ----

class CKForm {
 public:
  CKForm() = default;
  CKForm(const KForm& re) : re_(re), im_(re.n(), re.k()) {}
  CKForm(const KForm& re, const KForm& im) : re_(re), im_(im) {
    if (re.n() != im.n() || re.k() != im.k())
      throw FormError("CKForm: shape mismatch");
  }
  const KForm& re() const { return re_; }
  const KForm& im() const { return im_; }
  int n() const { return re_.n(); }
  int k() const { return re_.k(); }

  CKForm& operator+=(const CKForm& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  friend CKForm operator+(CKForm a, const CKForm& b) { return a += b; }
  friend CKForm operator-(const CKForm& a, const CKForm& b) {
    return CKForm(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend CKForm operator*(const std::complex<double>& c, const CKForm& a) {
    return CKForm(c.real() * a.re_ - c.imag() * a.im_,
                  c.real() * a.im_ + c.imag() * a.re_);
  }
  double max_norm() const { return std::max(re_.max_norm(), im_.max_norm()); }

 private:
  KForm re_, im_;
};

inline CKForm wedge(const CKForm& a, const CKForm& b) {
  return CKForm(wedge(a.re(), b.re()) - wedge(a.im(), b.im()),
                wedge(a.re(), b.im()) + wedge(a.im(), b.re()));
}

inline CKForm contract(const Vec& v, const CKForm& a) {
  return CKForm(contract(v, a.re()), contract(v, a.im()));
}

// ---- polyvectors ----
// Elements of Lambda^k V reuse the KForm coefficient layout.  The natural
// pairing <Lambda^n V, Lambda^n V*> sends e_{0..n-1} x e^{0..n-1} to 1.

// Contraction of a bivector (or general k-vector) into a form:
// i_{u ^ v} = i_v . i_u applied left-to-right over the polyvector factors.
KForm contract_polyvector(const KForm& poly, const KForm& form);

}  // namespace g2forms
