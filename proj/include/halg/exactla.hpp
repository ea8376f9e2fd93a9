#pragma once

// Dense exact linear algebra over prime fields F_p.
//
// Conventions: a linear map V -> W is a dim(W) x dim(V) matrix acting on
// column vectors. Subspaces are carried as matrices whose columns are a
// basis.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace halg {

using Scalar = std::uint32_t;

/// Arithmetic modulo a word-size prime.
class Field {
 public:
  Field() : p_(2) {}
  explicit Field(std::uint64_t p) : p_(static_cast<Scalar>(p)) {
    if (p < 2 || p > 0x7fffffffULL || !is_prime(p))
      throw std::invalid_argument("field modulus must be a prime below 2^31, got " + std::to_string(p));
  }

  Scalar p() const { return p_; }

  Scalar reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }
  Scalar add(Scalar a, Scalar b) const {
    Scalar s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Scalar pow(Scalar a, std::uint64_t e) const {
    std::uint64_t r = 1, b = a % p_;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return static_cast<Scalar>(r);
  }
  Scalar inv(Scalar a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
    return pow(a, p_ - 2);
  }

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  Scalar p_;
};

/// A field element tagged with its modulus, for the public value-level API.
struct FieldElem {
  Scalar value = 0;
  Scalar modulus = 2;

  static FieldElem make(const Field& f, std::int64_t v) { return {f.reduce(v), f.p()}; }

  friend FieldElem operator+(FieldElem a, FieldElem b) {
    check(a, b);
    return {Field(a.modulus).add(a.value, b.value), a.modulus};
  }
  friend FieldElem operator-(FieldElem a, FieldElem b) {
    check(a, b);
    return {Field(a.modulus).sub(a.value, b.value), a.modulus};
  }
  friend FieldElem operator*(FieldElem a, FieldElem b) {
    check(a, b);
    return {Field(a.modulus).mul(a.value, b.value), a.modulus};
  }
  FieldElem inverse() const { return {Field(modulus).inv(value), modulus}; }
  friend bool operator==(const FieldElem&, const FieldElem&) = default;

 private:
  static void check(const FieldElem& a, const FieldElem& b) {
    if (a.modulus != b.modulus) throw std::invalid_argument("mixed moduli");
  }
};

/// Dense row-major matrix over F_p.
class Mat {
 public:
  Mat() = default;
  Mat(Field f, std::size_t rows, std::size_t cols) : f_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Mat zero(Field f, std::size_t rows, std::size_t cols) { return Mat(f, rows, cols); }
  static Mat identity(Field f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Mat from_rows(Field f, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Mat m(f, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = f.reduce(rows[i][j]);
    }
    return m;
  }
  static Mat from_rows(Field f, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<std::vector<std::int64_t>> v;
    for (auto& r : rows) v.emplace_back(r);
    return from_rows(f, v);
  }
  /// Single column holding the standard basis vector e_i of F^n.
  static Mat unit(Field f, std::size_t n, std::size_t i) {
    Mat m(f, n, 1);
    m(i, 0) = 1;
    return m;
  }

  const Field& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Scalar operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  FieldElem at(std::size_t r, std::size_t c) const { return {(*this)(r, c), f_.p()}; }
  const std::vector<Scalar>& data() const { return a_; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Scalar v) { return v == 0; });
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.f_ == b.f_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Mat c(a.f_, a.rows_, b.cols_);
    const std::uint64_t p = a.f_.p();
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint64_t x = a(i, k);
        if (!x) continue;
        const Scalar* brow = &b.a_[k * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + x * brow[j]) % p;
      }
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = static_cast<Scalar>(acc[j]);
    }
    return c;
  }
  friend Mat operator+(const Mat& a, const Mat& b) {
    a.check_same_shape(b);
    Mat c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = a.f_.add(a.a_[i], b.a_[i]);
    return c;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    a.check_same_shape(b);
    Mat c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = a.f_.sub(a.a_[i], b.a_[i]);
    return c;
  }
  Mat operator-() const {
    Mat c = *this;
    for (auto& v : c.a_) v = f_.neg(v);
    return c;
  }
  Mat scaled(Scalar s) const {
    Mat c = *this;
    for (auto& v : c.a_) v = f_.mul(v, s);
    return c;
  }
  /// this += s * other
  void axpy(Scalar s, const Mat& other) {
    check_same_shape(other);
    if (s == 0) return;
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = f_.add(a_[i], f_.mul(s, other.a_[i]));
  }

  Mat transposed() const {
    Mat t(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
    Mat b(f_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("matrix block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  Mat col(std::size_t j) const { return block(0, j, rows_, 1); }
  Mat cols_subset(const std::vector<std::size_t>& idx) const {
    Mat m(f_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    return m;
  }
  Mat rows_subset(const std::vector<std::size_t>& idx) const {
    Mat m(f_, idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
    return m;
  }

  static Mat hstack(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
    Mat m(a.f_, a.rows_, a.cols_ + b.cols_);
    m.set_block(0, 0, a);
    m.set_block(0, a.cols_, b);
    return m;
  }
  static Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack column mismatch");
    Mat m(a.f_, a.rows_ + b.rows_, a.cols_);
    m.set_block(0, 0, a);
    m.set_block(a.rows_, 0, b);
    return m;
  }
  static Mat block_diag(const Mat& a, const Mat& b) {
    Mat m(a.f_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    m.set_block(0, 0, a);
    m.set_block(a.rows_, a.cols_, b);
    return m;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Mat& m) { return os << m.str(); }

 private:
  void check_same_shape(const Mat& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_ || !(f_ == b.f_)) throw std::invalid_argument("matrix shape mismatch");
  }

  Field f_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> a_;
};

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline RrefResult rref(const Mat& m) {
  Mat a = m;
  const Field& f = m.field();
  const std::uint64_t p = f.p();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = c; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    const Scalar s = f.inv(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), s);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const std::uint64_t x = p - a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = static_cast<Scalar>((a(i, j) + x * a(r, j)) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

inline std::size_t rank(const Mat& m) {
  if (m.empty()) return 0;
  return rref(m).rank();
}

/// Columns form a basis of {x : m x = 0}.
inline Mat kernel_basis(const Mat& m) {
  const Field& f = m.field();
  auto [r, piv] = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  Mat k(f, m.cols(), free.size());
  for (std::size_t t = 0; t < free.size(); ++t) {
    k(free[t], t) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], t) = f.neg(r(i, free[t]));
  }
  return k;
}

/// An independent subset of the columns of m spanning its column space.
inline Mat column_basis(const Mat& m) {
  if (m.cols() == 0) return m;
  return m.cols_subset(rref(m).pivots);
}

/// Some X with m X = b, or nullopt when b is not in the column space of m.
inline std::optional<Mat> solve(const Mat& m, const Mat& b) {
  if (m.rows() != b.rows()) throw std::invalid_argument("solve: row counts differ");
  const Field& f = m.field();
  auto [r, piv] = rref(Mat::hstack(m, b));
  const std::size_t n = m.cols();
  if (!piv.empty() && piv.back() >= n) return std::nullopt;
  Mat x(f, n, b.cols());
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = r(i, n + j);
  return x;
}

inline std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (m.rows() == 0) return m;
  auto [r, piv] = rref(Mat::hstack(m, Mat::identity(m.field(), m.rows())));
  if (piv.size() < m.rows() || piv[m.rows() - 1] != m.rows() - 1) return std::nullopt;
  return r.block(0, m.cols(), m.rows(), m.rows());
}

inline bool is_invertible(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

/// Extends the independent columns of b to a basis of F^n by appending
/// standard basis vectors; returns only the appended columns.
inline Mat complement_basis(const Mat& b) {
  const std::size_t n = b.rows();
  auto piv = rref(Mat::hstack(b, Mat::identity(b.field(), n))).pivots;
  std::vector<std::size_t> extra;
  for (auto c : piv)
    if (c >= b.cols()) extra.push_back(c - b.cols());
  return Mat::identity(b.field(), n).cols_subset(extra);
}

/// Basis of the intersection of two column spaces (both given by independent columns).
inline Mat intersect(const Mat& a, const Mat& b) {
  if (a.cols() == 0 || b.cols() == 0) return Mat(a.field(), a.rows(), 0);
  Mat k = kernel_basis(Mat::hstack(a, -b));
  return column_basis(a * k.block(0, 0, a.cols(), k.cols()));
}

/// Canonical key of a column space: rref of the transposed basis.
inline std::vector<Scalar> subspace_key(const Mat& basis) {
  if (basis.cols() == 0) return {};
  auto r = rref(basis.transposed());
  return r.reduced.block(0, 0, r.rank(), basis.rows()).data();
}

/// m^e by repeated squaring (square m only).
inline Mat power(const Mat& m, std::uint64_t e) {
  Mat r = Mat::identity(m.field(), m.rows());
  Mat b = m;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

}  // namespace halg
