#pragma once

#include <initializer_list>
#include <vector>

#include "poincare_deform/series.hpp"

namespace poincare_deform {

// Dense square matrix of Series values (2x2 phase-space blocks, 4x4 tensor
// products, 8x8 triple products).
class MatrixExpr {
 public:
  MatrixExpr() : n_(0) {}
  explicit MatrixExpr(int n) : n_(n), e_(static_cast<std::size_t>(n) * n) {}

  static MatrixExpr identity(int n) {
    MatrixExpr m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Series::one();
    return m;
  }
  static MatrixExpr zero(int n) { return MatrixExpr(n); }

  int dim() const { return n_; }
  Series& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  const Series& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }

  bool is_zero() const {
    for (const auto& v : e_)
      if (!v.is_zero()) return false;
    return true;
  }

  MatrixExpr operator-() const {
    MatrixExpr r = *this;
    for (auto& v : r.e_) v = -v;
    return r;
  }

  friend MatrixExpr operator+(const MatrixExpr& a, const MatrixExpr& b) {
    check_dims(a, b);
    MatrixExpr r(a.n_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
    return r;
  }
  friend MatrixExpr operator-(const MatrixExpr& a, const MatrixExpr& b) { return a + (-b); }

  friend MatrixExpr operator*(const MatrixExpr& a, const MatrixExpr& b) {
    check_dims(a, b);
    MatrixExpr r(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j < a.n_; ++j) {
        Series s;
        for (int k = 0; k < a.n_; ++k) s += a.at(i, k) * b.at(k, j);
        r.at(i, j) = s;
      }
    return r;
  }

  MatrixExpr scaled(const Scalar& c) const {
    MatrixExpr r = *this;
    for (auto& v : r.e_) v = v.scaled(c);
    return r;
  }
  MatrixExpr scaled(const Series& c) const {
    MatrixExpr r = *this;
    for (auto& v : r.e_) v = v * c;
    return r;
  }

  MatrixExpr transpose() const {
    MatrixExpr r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  // Hermitean conjugate: entry-wise complex conjugation plus transpose.
  MatrixExpr dagger() const {
    MatrixExpr r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j).star();
    return r;
  }

  MatrixExpr star_entries() const {
    MatrixExpr r = *this;
    for (auto& v : r.e_) v = v.star();
    return r;
  }

  Series trace() const {
    Series s;
    for (int i = 0; i < n_; ++i) s += at(i, i);
    return s;
  }

  MatrixExpr truncated(int32_t ord) const {
    MatrixExpr r = *this;
    for (auto& v : r.e_) v = v.truncated(ord);
    return r;
  }
  MatrixExpr set_lambda_zero() const {
    MatrixExpr r = *this;
    for (auto& v : r.e_) v = v.set_lambda_zero();
    return r;
  }

  MatrixExpr map(const auto& fn) const {
    MatrixExpr r = *this;
    for (auto& v : r.e_) v = fn(v);
    return r;
  }

  friend bool operator==(const MatrixExpr& a, const MatrixExpr& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t k = 0; k < a.e_.size(); ++k)
      if (a.e_[k] != b.e_[k]) return false;
    return true;
  }
  friend bool operator!=(const MatrixExpr& a, const MatrixExpr& b) { return !(a == b); }

  std::string str() const {
    std::string out = "[";
    for (int i = 0; i < n_; ++i) {
      out += i ? "; " : "";
      for (int j = 0; j < n_; ++j) out += (j ? ", " : "") + at(i, j).str();
    }
    return out + "]";
  }

 private:
  static void check_dims(const MatrixExpr& a, const MatrixExpr& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("MatrixExpr: dimension mismatch");
  }

  int n_;
  std::vector<Series> e_;
};

using Mat = MatrixExpr;

// Kronecker product with the first factor slow: row index 2i+k, column 2j+l
// for (a ⊗ b)[(i k),(j l)] = a(i,j) b(k,l).
inline Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < b.dim(); ++k)
        for (int l = 0; l < b.dim(); ++l)
          r.at(i * b.dim() + k, j * b.dim() + l) = a.at(i, j) * b.at(k, l);
  return r;
}

// Embeddings into the two tensor slots of the 4x4 space.
inline Mat slot1(const Mat& a) { return kron(a, Mat::identity(2)); }
inline Mat slot2(const Mat& a) { return kron(Mat::identity(2), a); }

// Flip operator: Pi (a ⊗ b) Pi = b ⊗ a.
inline Mat flip_pi() {
  Mat p(4);
  p.at(0, 0) = Series::one();
  p.at(1, 2) = Series::one();
  p.at(2, 1) = Series::one();
  p.at(3, 3) = Series::one();
  return p;
}

// Adjugate of a 2x2 matrix: [[d, -b], [-c, a]]; satisfies M adj(M) = det(M) 1.
inline Mat adjugate2(const Mat& m) {
  if (m.dim() != 2) throw std::invalid_argument("adjugate2: 2x2 only");
  Mat r(2);
  r.at(0, 0) = m.at(1, 1);
  r.at(0, 1) = -m.at(0, 1);
  r.at(1, 0) = -m.at(1, 0);
  r.at(1, 1) = m.at(0, 0);
  return r;
}

inline Series det2(const Mat& m) {
  if (m.dim() != 2) throw std::invalid_argument("det2: 2x2 only");
  return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
}

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

}  // namespace poincare_deform
