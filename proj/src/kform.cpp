#include "g2forms/kform.hpp"

namespace g2forms {

double KForm::apply(const Mat& V) const {
  if (V.rows() != n_ || V.cols() != k_) throw FormError("KForm::apply: shape");
  if (k_ == 0) return coeffs_[0];
  int idx[kMaxDim];
  Eigen::MatrixXd sub(k_, k_);
  double total = 0;
  for (int r = 0; r < size(); ++r) {
    if (coeffs_[r] == 0.0) continue;
    subset_unrank(n_, k_, r, idx);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) sub(i, j) = V(idx[i], j);
    total += coeffs_[r] * sub.determinant();
  }
  return total;
}

KForm wedge(const KForm& a, const KForm& b) {
  if (a.n() != b.n()) throw FormError("wedge: dimension mismatch");
  if (a.k() + b.k() > a.n()) throw FormError("wedge: degree overflow");
  KForm out(a.n(), a.k() + b.k());
  int ia[kMaxDim], ib[kMaxDim], im[kMaxDim];
  for (int ra = 0; ra < a.size(); ++ra) {
    double ca = a[ra];
    if (ca == 0.0) continue;
    subset_unrank(a.n(), a.k(), ra, ia);
    for (int rb = 0; rb < b.size(); ++rb) {
      double cb = b[rb];
      if (cb == 0.0) continue;
      subset_unrank(b.n(), b.k(), rb, ib);
      int s = merge_sign(a.k(), ia, b.k(), ib, im);
      if (s == 0) continue;
      out[subset_rank(a.n(), out.k(), im)] += s * ca * cb;
    }
  }
  return out;
}

KForm contract(const Vec& v, const KForm& a) {
  if (v.size() != a.n()) throw FormError("contract: dimension mismatch");
  if (a.k() < 1) throw FormError("contract: degree 0 input");
  KForm out(a.n(), a.k() - 1);
  int idx[kMaxDim], rest[kMaxDim];
  for (int r = 0; r < a.size(); ++r) {
    double c = a[r];
    if (c == 0.0) continue;
    subset_unrank(a.n(), a.k(), r, idx);
    for (int p = 0; p < a.k(); ++p) {
      double vc = v[idx[p]];
      if (vc == 0.0) continue;
      int m = 0;
      for (int q = 0; q < a.k(); ++q)
        if (q != p) rest[m++] = idx[q];
      double sign = (p % 2 == 0) ? 1.0 : -1.0;
      out[subset_rank(a.n(), a.k() - 1, rest)] += sign * vc * c;
    }
  }
  return out;
}

KForm pullback_linear(const KForm& a, const Mat& L) {
  if (L.rows() != a.n()) throw FormError("pullback_linear: shape mismatch");
  int m = static_cast<int>(L.cols());
  int k = a.k();
  if (k > m) return KForm(m, 0);  // cannot happen for valid callers
  KForm out(m, k);
  if (k == 0) {
    out[0] = a[0];
    return out;
  }
  int iI[kMaxDim], iJ[kMaxDim];
  Eigen::MatrixXd sub(k, k);
  for (int rI = 0; rI < out.size(); ++rI) {
    subset_unrank(m, k, rI, iI);
    double acc = 0;
    for (int rJ = 0; rJ < a.size(); ++rJ) {
      double c = a[rJ];
      if (c == 0.0) continue;
      subset_unrank(a.n(), k, rJ, iJ);
      for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) sub(p, q) = L(iJ[p], iI[q]);
      acc += c * sub.determinant();
    }
    out[rI] = acc;
  }
  return out;
}

Mat form_metric(const Mat& g, int k) {
  int n = static_cast<int>(g.rows());
  Mat ginv = g.inverse();
  int sz = static_cast<int>(binomial(n, k));
  Mat G(sz, sz);
  if (k == 0) {
    G(0, 0) = 1.0;
    return G;
  }
  int iI[kMaxDim], iJ[kMaxDim];
  Eigen::MatrixXd sub(k, k);
  for (int rI = 0; rI < sz; ++rI) {
    subset_unrank(n, k, rI, iI);
    for (int rJ = 0; rJ < sz; ++rJ) {
      subset_unrank(n, k, rJ, iJ);
      for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) sub(p, q) = ginv(iI[p], iJ[q]);
      G(rI, rJ) = sub.determinant();
    }
  }
  return G;
}

double inner(const KForm& a, const KForm& b, const Mat& g) {
  if (a.n() != b.n() || a.k() != b.k()) throw FormError("inner: shape");
  Mat G = form_metric(g, a.k());
  double s = 0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) s += a[i] * G(i, j) * b[j];
  return s;
}

KForm hodge_star(const KForm& a, const Mat& g, int orientation) {
  // Defined by alpha ^ (*beta) = <alpha, beta>_g vol for all alpha, with
  // vol = orientation * sqrt(det g) * dx^0..dx^{n-1}.
  int n = a.n(), k = a.k();
  double sq = std::sqrt(g.determinant());
  Mat G = form_metric(g, k);
  KForm out(n, n - k);
  int iI[kMaxDim], iC[kMaxDim], im[kMaxDim];
  for (int rI = 0; rI < a.size(); ++rI) {
    subset_unrank(n, k, rI, iI);
    // complement of I
    bool used[kMaxDim] = {};
    for (int p = 0; p < k; ++p) used[iI[p]] = true;
    int m = 0;
    for (int v = 0; v < n; ++v)
      if (!used[v]) iC[m++] = v;
    int s = merge_sign(k, iI, n - k, iC, im);
    // <e^I, a>_g
    double val = 0;
    for (int rJ = 0; rJ < a.size(); ++rJ) val += G(rI, rJ) * a[rJ];
    out[subset_rank(n, n - k, iC)] += s * orientation * sq * val;
  }
  return out;
}

KForm contract_polyvector(const KForm& poly, const KForm& form) {
  if (poly.n() != form.n()) throw FormError("contract_polyvector: dimension");
  if (poly.k() > form.k()) throw FormError("contract_polyvector: degree");
  int n = poly.n();
  KForm out(n, form.k() - poly.k());
  int idx[kMaxDim];
  for (int r = 0; r < poly.size(); ++r) {
    double c = poly[r];
    if (c == 0.0) continue;
    subset_unrank(n, poly.k(), r, idx);
    KForm cur = form;
    for (int p = 0; p < poly.k(); ++p) {
      Vec e = Vec::Zero(n);
      e[idx[p]] = 1.0;
      cur = contract(e, cur);
    }
    out += c * cur;
  }
  return out;
}

}  // namespace g2forms
