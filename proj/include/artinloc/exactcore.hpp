#pragma once

// Exact arithmetic over GF(p) and dense linear algebra on row vectors.
//
// Everything here uses the row-vector convention: a vector is a row, and a
// matrix acts on it from the right (x -> x * m). Kernels are left kernels,
// spans are row spans.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "artinloc/errors.hpp"

namespace artinloc {

using Residue = std::uint32_t;
using Vec = std::vector<Residue>;

/// Largest admissible modulus. Root finding scans all of GF(p).
inline constexpr std::uint32_t kMaxPrime = 1u << 16;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void check_prime(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  if (p > kMaxPrime) throw InputError("modulus " + std::to_string(p) + " exceeds 2^16");
}

inline Residue reduce_mod(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<Residue>(r);
}

inline Residue add_mod(Residue a, Residue b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline Residue sub_mod(Residue a, Residue b, std::uint32_t p) { return a >= b ? a - b : a + p - b; }
inline Residue mul_mod(Residue a, Residue b, std::uint32_t p) {
  return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p);
}
inline Residue neg_mod(Residue a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline Residue pow_mod(Residue a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p, base = a % p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

inline Residue inv_mod(Residue a, std::uint32_t p) {
  if (a % p == 0) throw InputError("division by zero in GF(" + std::to_string(p) + ")");
  return pow_mod(a, p - 2, p);
}

inline void check_same_modulus(std::uint32_t p, std::uint32_t q) {
  if (p != q)
    throw ModulusMismatch("mixed moduli " + std::to_string(p) + " and " + std::to_string(q));
}

/// A residue class modulo a prime, carrying its modulus.
class Fp {
 public:
  Fp(std::int64_t value, std::uint32_t p) : v_(reduce_mod(value, p)), p_(p) {}

  Residue value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(Fp a, Fp b) { return {add_mod(a.v_, b.raw(a.p_), a.p_), a.p_, raw_tag{}}; }
  friend Fp operator-(Fp a, Fp b) { return {sub_mod(a.v_, b.raw(a.p_), a.p_), a.p_, raw_tag{}}; }
  friend Fp operator*(Fp a, Fp b) { return {mul_mod(a.v_, b.raw(a.p_), a.p_), a.p_, raw_tag{}}; }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return {neg_mod(v_, p_), p_, raw_tag{}}; }

  Fp inverse() const { return {inv_mod(v_, p_), p_, raw_tag{}}; }
  Fp pow(std::uint64_t e) const { return {pow_mod(v_, e, p_), p_, raw_tag{}}; }

  friend bool operator==(Fp a, Fp b) {
    check_same_modulus(a.p_, b.p_);
    return a.v_ == b.v_;
  }

 private:
  struct raw_tag {};
  Fp(Residue v, std::uint32_t p, raw_tag) : v_(v), p_(p) {}
  Residue raw(std::uint32_t p) const {
    check_same_modulus(p, p_);
    return v_;
  }

  Residue v_;
  std::uint32_t p_;
};

// ---------------------------------------------------------------------------
// Vector helpers (vectors are plain residue rows; the caller owns the modulus)

inline bool is_zero_vec(std::span<const Residue> v) {
  return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

inline void axpy(std::span<Residue> y, Residue a, std::span<const Residue> x, std::uint32_t p) {
  if (a == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = add_mod(y[i], mul_mod(a, x[i], p), p);
}

inline Vec vec_add(std::span<const Residue> a, std::span<const Residue> b, std::uint32_t p) {
  Vec r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = add_mod(r[i], b[i], p);
  return r;
}

inline Vec vec_sub(std::span<const Residue> a, std::span<const Residue> b, std::uint32_t p) {
  Vec r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = sub_mod(r[i], b[i], p);
  return r;
}

inline Vec vec_scale(std::span<const Residue> a, Residue c, std::uint32_t p) {
  Vec r(a.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mul_mod(c, a[i], p);
  return r;
}

// ---------------------------------------------------------------------------

/// Dense row-major matrix over GF(p).
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  static Mat identity(std::size_t n, std::uint32_t p) {
    Mat m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols,
                       std::uint32_t p) {
    Mat m(rows.size(), cols, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InputError("ragged matrix literal");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = reduce_mod(rows[i][j], p);
    }
    return m;
  }

  static Mat from_vectors(const std::vector<Vec>& rows, std::size_t cols, std::uint32_t p) {
    Mat m(rows.size(), cols, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InputError("ragged vector list");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Fp at(std::size_t r, std::size_t c) const { return Fp(data_[r * cols_ + c], p_); }

  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec row_vec(std::size_t r) const { return Vec(row(r).begin(), row(r).end()); }
  const Vec& data() const { return data_; }

  bool is_zero() const { return is_zero_vec(data_); }

  void append_row(std::span<const Residue> v) {
    if (v.size() != cols_) throw InputError("row length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  Mat transpose() const {
    Mat t(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    check_same_modulus(a.p_, b.p_);
    if (a.cols_ != b.rows_) throw InputError("matrix shape mismatch in product");
    Mat c(a.rows_, b.cols_, a.p_);
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        std::uint64_t x = a(i, k);
        if (x == 0) continue;
        auto brow = b.row(k);
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + x * brow[j]) % a.p_;
      }
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = static_cast<Residue>(acc[j]);
    }
    return c;
  }

  friend Mat operator+(const Mat& a, const Mat& b) { return a.combine(b, add_mod); }
  friend Mat operator-(const Mat& a, const Mat& b) { return a.combine(b, sub_mod); }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// x * m for a row vector x.
  Vec apply(std::span<const Residue> x) const {
    if (x.size() != rows_) throw InputError("vector length mismatch in apply");
    std::vector<std::uint64_t> acc(cols_, 0);
    for (std::size_t k = 0; k < rows_; ++k) {
      std::uint64_t xk = x[k];
      if (xk == 0) continue;
      auto r = row(k);
      for (std::size_t j = 0; j < cols_; ++j) acc[j] = (acc[j] + xk * r[j]) % p_;
    }
    return Vec(acc.begin(), acc.end());
  }

 private:
  Mat combine(const Mat& b, Residue (*op)(Residue, Residue, std::uint32_t)) const {
    check_same_modulus(p_, b.p_);
    if (rows_ != b.rows_ || cols_ != b.cols_) throw InputError("matrix shape mismatch");
    Mat c(rows_, cols_, p_);
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = op(data_[i], b.data_[i], p_);
    return c;
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::uint32_t p_ = 2;
  Vec data_;
};

inline Mat vstack(const Mat& a, const Mat& b) {
  check_same_modulus(a.modulus(), b.modulus());
  if (a.cols() != b.cols()) throw InputError("column mismatch in vstack");
  Mat m = a;
  for (std::size_t i = 0; i < b.rows(); ++i) m.append_row(b.row(i));
  return m;
}

inline Mat hstack(const Mat& a, const Mat& b) {
  check_same_modulus(a.modulus(), b.modulus());
  if (a.rows() != b.rows()) throw InputError("row mismatch in hstack");
  Mat m(a.rows(), a.cols() + b.cols(), a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), m.row(i).begin());
    std::copy(b.row(i).begin(), b.row(i).end(), m.row(i).begin() + a.cols());
  }
  return m;
}

struct RrefResult {
  Mat reduced;  // nonzero rows only
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Canonical reduced row-echelon form. Zero rows are dropped.
inline RrefResult rref(const Mat& m) {
  const std::uint32_t p = m.modulus();
  Mat a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    Residue inv = inv_mod(a(r, c), p);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = mul_mod(a(r, j), inv, p);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Residue f = neg_mod(a(i, c), p);
      axpy(a.row(i), f, a.row(r), p);
    }
    pivots.push_back(c);
    ++r;
  }
  Mat reduced(0, a.cols(), p);
  for (std::size_t i = 0; i < r; ++i) reduced.append_row(a.row(i));
  return {std::move(reduced), r, std::move(pivots)};
}

inline std::size_t rank(const Mat& m) { return rref(m).rank; }

class Subspace;
Subspace kernel(const Mat& m);

/// A linear subspace of GF(p)^n, stored as its canonical RREF basis.
/// Two subspaces are equal iff their basis matrices are identical.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t n, std::uint32_t p) { return Subspace(Mat(0, n, p), {}); }
  static Subspace full(std::size_t n, std::uint32_t p) {
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;
    return Subspace(Mat::identity(n, p), std::move(piv));
  }
  /// Row span of `gens`.
  static Subspace span(const Mat& gens) {
    auto r = rref(gens);
    return Subspace(std::move(r.reduced), std::move(r.pivots));
  }
  static Subspace span(const std::vector<Vec>& gens, std::size_t n, std::uint32_t p) {
    return span(Mat::from_vectors(gens, n, p));
  }

  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  std::uint32_t modulus() const { return basis_.modulus(); }
  const Mat& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }

  /// Residue of v modulo this subspace: pivot coordinates cleared.
  Vec reduce(std::span<const Residue> v) const {
    if (v.size() != ambient_dim()) throw InputError("vector length mismatch in reduce");
    Vec r(v.begin(), v.end());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      Residue c = r[pivots_[i]];
      if (c) axpy(r, neg_mod(c, modulus()), basis_.row(i), modulus());
    }
    return r;
  }

  bool contains(std::span<const Residue> v) const { return is_zero_vec(reduce(v)); }

  bool contains(const Subspace& other) const {
    check_compatible(other);
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  /// Coordinates of v (assumed a member) in the RREF basis: the pivot entries.
  Vec coordinates(std::span<const Residue> v) const {
    Vec c(pivots_.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  /// Inverse of coordinates().
  Vec combine(std::span<const Residue> coords) const {
    Vec v(ambient_dim(), 0);
    for (std::size_t i = 0; i < coords.size(); ++i) axpy(v, coords[i], basis_.row(i), modulus());
    return v;
  }

  /// Matrix of the linear map v -> reduce(v); its left kernel is this subspace.
  Mat reduction_matrix() const {
    Mat m(ambient_dim(), ambient_dim(), modulus());
    for (std::size_t k = 0; k < ambient_dim(); ++k) {
      Vec e(ambient_dim(), 0);
      e[k] = 1;
      auto r = reduce(e);
      std::copy(r.begin(), r.end(), m.row(k).begin());
    }
    return m;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

  void check_compatible(const Subspace& o) const {
    check_same_modulus(modulus(), o.modulus());
    if (ambient_dim() != o.ambient_dim()) throw InputError("ambient dimension mismatch");
  }

 private:
  Subspace(Mat basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  Mat basis_;
  std::vector<std::size_t> pivots_;
};

/// Left kernel {x : x * m = 0}.
inline Subspace kernel(const Mat& m) {
  const std::uint32_t p = m.modulus();
  // Row-reduce [m | I]; rows whose m-part vanishes give the kernel.
  Mat aug = hstack(m, Mat::identity(m.rows(), p));
  auto r = rref(aug);
  Mat gens(0, m.rows(), p);
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.pivots[i] < m.cols()) continue;
    auto row = r.reduced.row(i);
    gens.append_row(row.subspan(m.cols()));
  }
  return Subspace::span(gens);
}

/// Some x with x * m = b, if one exists.
inline std::optional<Vec> solve_left(const Mat& m, std::span<const Residue> b) {
  const std::uint32_t p = m.modulus();
  if (b.size() != m.cols()) throw InputError("right-hand side length mismatch");
  // Transpose: m^T x^T = b^T. Eliminate on [m^T | b^T].
  Mat t = m.transpose();
  Mat aug(t.rows(), t.cols() + 1, p);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    std::copy(t.row(i).begin(), t.row(i).end(), aug.row(i).begin());
    aug(i, t.cols()) = b[i];
  }
  auto r = rref(aug);
  Vec x(m.rows(), 0);
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.pivots[i] == t.cols()) return std::nullopt;
    x[r.pivots[i]] = r.reduced(i, t.cols());
  }
  return x;
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  a.check_compatible(b);
  return Subspace::span(vstack(a.basis(), b.basis()));
}

inline Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero()) return Subspace::zero(a.ambient_dim(), a.modulus());
  // (x, y) with x*A = y*B: left kernel of [A; -B].
  Mat negb = Mat(b.dim(), b.ambient_dim(), b.modulus()) - b.basis();
  Subspace k = kernel(vstack(a.basis(), negb));
  Mat gens(0, a.ambient_dim(), a.modulus());
  for (std::size_t i = 0; i < k.dim(); ++i) {
    auto x = k.basis().row(i).first(a.dim());
    gens.append_row(a.combine(x));
  }
  return Subspace::span(gens);
}

/// Result bundle of the pairwise subspace operations.
struct SubspaceRelation {
  Subspace sum;
  Subspace intersection;
  bool contains = false;  // a ⊇ b
  bool equal = false;
};

inline SubspaceRelation subspace_ops(const Subspace& a, const Subspace& b) {
  a.check_compatible(b);
  SubspaceRelation r{subspace_sum(a, b), subspace_intersection(a, b), a.contains(b), a == b};
  ensure(a.dim() + b.dim() == r.sum.dim() + r.intersection.dim(),
         "dimension formula violated for subspace sum/intersection");
  return r;
}

}  // namespace artinloc
