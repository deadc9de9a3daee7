#pragma once

// Finite-dimensional associative unital algebras over GF(p), given by
// structure constants in a fixed basis b_0, ..., b_{d-1}.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "artinloc/errors.hpp"
#include "artinloc/exactcore.hpp"

namespace artinloc {

enum class Side { left, right, twosided };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::twosided: return "twosided";
  }
  return "?";
}

/// Coefficient vector of an algebra element.
class Element {
 public:
  Element() = default;
  Element(Vec coeffs, std::uint32_t p) : c_(std::move(coeffs)), p_(p) {}

  const Vec& coeffs() const { return c_; }
  std::size_t dim() const { return c_.size(); }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return is_zero_vec(c_); }
  Residue operator[](std::size_t i) const { return c_[i]; }

  friend bool operator==(const Element& a, const Element& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  /// Canonical order: lexicographic on coefficients, first coordinate most significant.
  friend bool operator<(const Element& a, const Element& b) { return a.c_ < b.c_; }

 private:
  Vec c_;
  std::uint32_t p_ = 2;
};

/// Basis of an algebra realised as n x n matrices (matrix-type constructors).
struct MatrixModel {
  std::size_t n = 0;
  std::vector<Mat> basis;
};

class Algebra {
 public:
  Algebra() = default;

  /// `table[(i*dim + j)*dim + k]` is the b_k-coefficient of b_i * b_j.
  /// Throws InputError unless p is prime, p > dim, the table is associative and `one` is a
  /// two-sided identity.
  Algebra(std::uint32_t p, std::size_t dim, Vec table, Vec one, std::string label)
      : p_(p), dim_(dim), table_(std::move(table)), one_(std::move(one)), label_(std::move(label)) {
    check_prime(p_);
    if (dim_ == 0) throw InputError("algebra dimension must be positive");
    if (p_ <= dim_)
      throw InputError("prime " + std::to_string(p_) + " must exceed dimension " +
                       std::to_string(dim_));
    if (table_.size() != dim_ * dim_ * dim_) throw InputError("structure table has wrong size");
    if (one_.size() != dim_) throw InputError("identity vector has wrong length");
    for (auto& v : table_) v %= p_;
    for (auto& v : one_) v %= p_;
    validate();
  }

  std::uint32_t p() const { return p_; }
  std::size_t dim() const { return dim_; }
  const std::string& label() const { return label_; }
  const Vec& table() const { return table_; }
  const std::optional<MatrixModel>& matrix_model() const { return model_; }

  void set_label(std::string l) { label_ = std::move(l); }
  void set_matrix_model(MatrixModel m) { model_ = std::move(m); }

  std::span<const Residue> product_of_basis(std::size_t i, std::size_t j) const {
    return {table_.data() + (i * dim_ + j) * dim_, dim_};
  }

  Element one() const { return {one_, p_}; }
  Element zero() const { return {Vec(dim_, 0), p_}; }
  Element basis(std::size_t k) const {
    Vec v(dim_, 0);
    v.at(k) = 1;
    return {std::move(v), p_};
  }

  Element element(const std::vector<std::int64_t>& coeffs) const {
    if (coeffs.size() != dim_)
      throw InputError("element has " + std::to_string(coeffs.size()) +
                       " coefficients, algebra dimension is " + std::to_string(dim_));
    Vec v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) v[i] = reduce_mod(coeffs[i], p_);
    return {std::move(v), p_};
  }
  Element element(Vec coeffs) const {
    if (coeffs.size() != dim_) throw InputError("element length does not match algebra dimension");
    for (auto& c : coeffs) c %= p_;
    return {std::move(coeffs), p_};
  }

  /// Element whose matrix (in the matrix model) is `m`.
  Element element_from_matrix(const Mat& m) const {
    if (!model_) throw InputError("algebra '" + label_ + "' has no matrix model");
    if (m.rows() != model_->n || m.cols() != model_->n) throw InputError("matrix literal has wrong size");
    Mat flat(0, model_->n * model_->n, p_);
    for (auto& b : model_->basis) flat.append_row(b.data());
    auto x = solve_left(flat, m.data());
    if (!x) throw InputError("matrix literal does not lie in algebra '" + label_ + "'");
    return {std::move(*x), p_};
  }

  Mat matrix_of(const Element& x) const {
    if (!model_) throw InputError("algebra '" + label_ + "' has no matrix model");
    check(x);
    Mat m(model_->n, model_->n, p_);
    for (std::size_t k = 0; k < dim_; ++k)
      if (x[k]) m = m + scaled(model_->basis[k], x[k]);
    return m;
  }

  void check(const Element& x) const {
    check_same_modulus(x.modulus(), p_);
    if (x.dim() != dim_) throw InputError("element dimension does not match algebra");
  }

  Element mul(const Element& x, const Element& y) const {
    check(x);
    check(y);
    return {mul_raw(x.coeffs(), y.coeffs()), p_};
  }

  Vec mul_raw(std::span<const Residue> x, std::span<const Residue> y) const {
    std::vector<std::uint64_t> acc(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!y[j]) continue;
        std::uint64_t c = static_cast<std::uint64_t>(x[i]) * y[j] % p_;
        const Residue* t = table_.data() + (i * dim_ + j) * dim_;
        for (std::size_t k = 0; k < dim_; ++k)
          if (t[k]) acc[k] += c * t[k];
      }
      // Keep the accumulators far from overflow.
      if ((i & 255) == 255)
        for (auto& a : acc) a %= p_;
    }
    Vec r(dim_);
    for (std::size_t k = 0; k < dim_; ++k) r[k] = static_cast<Residue>(acc[k] % p_);
    return r;
  }

  Element add(const Element& x, const Element& y) const {
    check(x);
    check(y);
    return {vec_add(x.coeffs(), y.coeffs(), p_), p_};
  }
  Element sub(const Element& x, const Element& y) const {
    check(x);
    check(y);
    return {vec_sub(x.coeffs(), y.coeffs(), p_), p_};
  }
  Element scale(const Element& x, Residue c) const {
    check(x);
    return {vec_scale(x.coeffs(), c % p_, p_), p_};
  }
  Element neg(const Element& x) const { return scale(x, p_ - 1); }
  Element mul3(const Element& x, const Element& y, const Element& z) const { return mul(mul(x, y), z); }

  Element pow(const Element& x, std::uint64_t n) const {
    Element result = one(), base = x;
    while (n) {
      if (n & 1) result = mul(result, base);
      n >>= 1;
      if (n) base = mul(base, base);
    }
    return result;
  }

  /// Matrix of y -> x*y (left) or y -> y*x (right) acting on row vectors, so that
  /// coeffs(y) * regular_matrix(x, left) = coeffs(x*y). Composition reverses
  /// order: regular_matrix(x, left) * regular_matrix(z, left) = regular_matrix(z*x, left).
  Mat regular_matrix(const Element& x, Side side) const {
    check(x);
    if (side == Side::twosided) throw InputError("regular_matrix needs side left or right");
    Mat m(dim_, dim_, p_);
    Vec b(dim_, 0);
    for (std::size_t k = 0; k < dim_; ++k) {
      std::fill(b.begin(), b.end(), 0);
      b[k] = 1;
      Vec prod = side == Side::left ? mul_raw(x.coeffs(), b) : mul_raw(b, x.coeffs());
      std::copy(prod.begin(), prod.end(), m.row(k).begin());
    }
    return m;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        if (!std::equal(product_of_basis(i, j).begin(), product_of_basis(i, j).end(),
                        product_of_basis(j, i).begin()))
          return false;
    return true;
  }

  bool is_central(const Element& x) const {
    for (std::size_t k = 0; k < dim_; ++k) {
      auto b = basis(k);
      if (!(mul(x, b) == mul(b, x))) return false;
    }
    return true;
  }

  bool is_idempotent(const Element& x) const { return mul(x, x) == x; }
  bool is_nilpotent(const Element& x) const { return pow(x, dim_).is_zero(); }
  bool is_unit(const Element& x) const { return rank(regular_matrix(x, Side::left)) == dim_; }

  /// x is a unit of the corner ring eRe, for x in eRe and e idempotent.
  bool is_unit_in_corner(const Element& x, const Element& e) const {
    return is_unit(add(x, sub(one(), e)));
  }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.p_ == b.p_ && a.dim_ == b.dim_ && a.table_ == b.table_ && a.one_ == b.one_;
  }

 private:
  static Mat scaled(const Mat& m, Residue c) {
    Mat r = m;
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = mul_mod(r(i, j), c, m.modulus());
    return r;
  }

  void validate() const {
    // Identity.
    for (std::size_t k = 0; k < dim_; ++k) {
      Vec b(dim_, 0);
      b[k] = 1;
      if (mul_raw(one_, b) != b || mul_raw(b, one_) != b)
        throw InputError("identity vector is not a two-sided identity (basis element " +
                         std::to_string(k) + ")");
    }
    // Associativity on basis triples.
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        auto ij = product_of_basis(i, j);
        for (std::size_t k = 0; k < dim_; ++k) {
          auto jk = product_of_basis(j, k);
          std::vector<std::uint64_t> lhs(dim_, 0), rhs(dim_, 0);
          for (std::size_t m = 0; m < dim_; ++m) {
            if (ij[m]) {
              auto t = product_of_basis(m, k);
              for (std::size_t q = 0; q < dim_; ++q) lhs[q] += static_cast<std::uint64_t>(ij[m]) * t[q];
            }
            if (jk[m]) {
              auto t = product_of_basis(i, m);
              for (std::size_t q = 0; q < dim_; ++q) rhs[q] += static_cast<std::uint64_t>(jk[m]) * t[q];
            }
          }
          for (std::size_t q = 0; q < dim_; ++q)
            if (lhs[q] % p_ != rhs[q] % p_)
              throw InputError("structure table is not associative at basis triple (" +
                               std::to_string(i) + "," + std::to_string(j) + "," +
                               std::to_string(k) + ")");
        }
      }
    }
  }

  std::uint32_t p_ = 2;
  std::size_t dim_ = 0;
  Vec table_;
  Vec one_;
  std::string label_;
  std::optional<MatrixModel> model_;
};

// ---------------------------------------------------------------------------
// Constructors

inline constexpr std::size_t kMaxSubalgebraDim = 64;

/// Algebra spanned by the given n x n matrices. The flattened matrices must already be in
/// reduced row-echelon order (matrix units in lexicographic order are).
inline Algebra algebra_from_matrix_basis(std::size_t n, std::vector<Mat> basis, std::uint32_t p,
                                         std::string label) {
  const std::size_t d = basis.size();
  Mat flat(0, n * n, p);
  for (auto& b : basis) flat.append_row(b.data());
  Subspace space = Subspace::span(flat);
  ensure(space.basis() == flat, "matrix basis is not in canonical order");
  Vec table(d * d * d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Mat prod = basis[i] * basis[j];
      if (!space.contains(prod.data())) throw InputError("matrix span is not closed under products");
      auto c = space.coordinates(prod.data());
      std::copy(c.begin(), c.end(), table.begin() + (i * d + j) * d);
    }
  Mat id = Mat::identity(n, p);
  if (!space.contains(id.data())) throw InputError("matrix span does not contain the identity");
  Algebra a(p, d, std::move(table), space.coordinates(id.data()), std::move(label));
  a.set_matrix_model({n, std::move(basis)});
  return a;
}

inline Mat matrix_unit(std::size_t n, std::size_t i, std::size_t j, std::uint32_t p) {
  Mat m(n, n, p);
  m(i, j) = 1;
  return m;
}

/// Lower triangular n x n matrices; basis E_ij (i >= j), lexicographic in (i, j).
inline Algebra lower_triangular(std::size_t n, std::uint32_t p) {
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) basis.push_back(matrix_unit(n, i, j, p));
  return algebra_from_matrix_basis(n, std::move(basis), p,
                                   "L" + std::to_string(n) + "_" + std::to_string(p));
}

/// Upper triangular n x n matrices; basis E_ij (i <= j), lexicographic in (i, j).
inline Algebra upper_triangular(std::size_t n, std::uint32_t p) {
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) basis.push_back(matrix_unit(n, i, j, p));
  return algebra_from_matrix_basis(n, std::move(basis), p,
                                   "U" + std::to_string(n) + "_" + std::to_string(p));
}

/// Full matrix algebra M_n; basis E_ij lexicographic in (i, j).
inline Algebra full_matrix(std::size_t n, std::uint32_t p) {
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis.push_back(matrix_unit(n, i, j, p));
  return algebra_from_matrix_basis(n, std::move(basis), p,
                                   "M" + std::to_string(n) + "_" + std::to_string(p));
}

/// GF(p)[x]/(x^k); basis 1, x, ..., x^{k-1}.
inline Algebra truncated_poly(std::size_t k, std::uint32_t p) {
  if (k == 0) throw InputError("truncated_poly needs k >= 1");
  Vec table(k * k * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i + j < k) table[(i * k + j) * k + i + j] = 1;
  Vec one(k, 0);
  one[0] = 1;
  return Algebra(p, k, std::move(table), std::move(one),
                 k == 1 ? "GF(" + std::to_string(p) + ")" : "T" + std::to_string(p) + "_" + std::to_string(k));
}

inline Algebra prime_field(std::uint32_t p) { return truncated_poly(1, p); }

/// Unital subalgebra of M_n generated by `gens`: the span of I and the generators,
/// closed under products until it stops growing. Basis is the RREF of the flattened span.
inline Algebra matrix_subalgebra(std::size_t n, const std::vector<Mat>& gens, std::uint32_t p) {
  check_prime(p);
  Mat flat(0, n * n, p);
  flat.append_row(Mat::identity(n, p).data());
  for (auto& g : gens) {
    check_same_modulus(g.modulus(), p);
    if (g.rows() != n || g.cols() != n) throw InputError("generator has wrong size");
    flat.append_row(g.data());
  }
  Subspace space = Subspace::span(flat);
  auto unflatten = [&](std::span<const Residue> v) {
    Mat m(n, n, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    return m;
  };
  for (;;) {
    Mat grown = space.basis();
    for (std::size_t i = 0; i < space.dim(); ++i)
      for (std::size_t j = 0; j < space.dim(); ++j) {
        Mat prod = unflatten(space.basis().row(i)) * unflatten(space.basis().row(j));
        if (!space.contains(prod.data())) grown.append_row(prod.data());
      }
    Subspace next = Subspace::span(grown);
    if (next.dim() > kMaxSubalgebraDim)
      throw InputError("matrix_subalgebra closure exceeds " + std::to_string(kMaxSubalgebraDim) +
                       " dimensions");
    if (next == space) break;
    space = std::move(next);
  }
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < space.dim(); ++i) basis.push_back(unflatten(space.basis().row(i)));
  return algebra_from_matrix_basis(n, std::move(basis), p, "subalgebra(M" + std::to_string(n) + ")");
}

struct BlockEmbedding {
  std::size_t offset = 0;
  std::size_t dim = 0;
};

struct DirectProduct {
  Algebra algebra;
  std::vector<BlockEmbedding> blocks;

  Element embed(std::size_t block, const Element& x) const {
    const auto& b = blocks.at(block);
    if (x.dim() != b.dim) throw InputError("factor element has wrong dimension");
    Vec v(algebra.dim(), 0);
    std::copy(x.coeffs().begin(), x.coeffs().end(), v.begin() + b.offset);
    return {std::move(v), algebra.p()};
  }
  Element component(std::size_t block, const Element& x) const {
    const auto& b = blocks.at(block);
    return {Vec(x.coeffs().begin() + b.offset, x.coeffs().begin() + b.offset + b.dim), algebra.p()};
  }
};

/// Block-diagonal product; basis is the concatenation of the factors' bases.
inline DirectProduct direct_product(const std::vector<Algebra>& factors) {
  if (factors.empty()) throw InputError("direct product of zero factors");
  const std::uint32_t p = factors.front().p();
  std::size_t d = 0;
  std::vector<BlockEmbedding> blocks;
  std::string label;
  for (auto& f : factors) {
    if (f.p() != p) throw InputError("direct product factors over different primes");
    blocks.push_back({d, f.dim()});
    d += f.dim();
    label += (label.empty() ? "" : " x ") + f.label();
  }
  if (factors.size() == 1) return {factors.front(), blocks};
  Vec table(d * d * d, 0), one(d, 0);
  for (std::size_t b = 0; b < factors.size(); ++b) {
    const auto& f = factors[b];
    const std::size_t o = blocks[b].offset, fd = f.dim();
    for (std::size_t i = 0; i < fd; ++i)
      for (std::size_t j = 0; j < fd; ++j) {
        auto src = f.product_of_basis(i, j);
        std::copy(src.begin(), src.end(), table.begin() + ((o + i) * d + (o + j)) * d + o);
      }
    auto fo = f.one().coeffs();
    std::copy(fo.begin(), fo.end(), one.begin() + o);
  }
  return {Algebra(p, d, std::move(table), std::move(one), label), std::move(blocks)};
}

/// Same basis, multiplication reversed. opposite(opposite(a)) has a's table.
inline Algebra opposite_algebra(const Algebra& a) {
  const std::size_t d = a.dim();
  Vec table(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto src = a.product_of_basis(j, i);
      std::copy(src.begin(), src.end(), table.begin() + (i * d + j) * d);
    }
  std::string label = a.label();
  const std::string suffix = "^op";
  if (label.size() > suffix.size() && label.ends_with(suffix))
    label.resize(label.size() - suffix.size());
  else
    label += suffix;
  return Algebra(a.p(), d, std::move(table), a.one().coeffs(), std::move(label));
}

// ---------------------------------------------------------------------------
// Neutral algebra descriptions (the CLI parses JSON into these)

struct AlgebraDesc {
  struct StructureConstants {
    std::size_t dim;
    std::vector<std::int64_t> one;
    std::vector<std::vector<std::vector<std::int64_t>>> mul_table;  // [i][j] -> coeffs of b_i b_j
  };
  struct Named {
    std::string name;  // lower_triangular | upper_triangular | full_matrix | truncated_poly | field
    std::size_t n;
  };
  struct Product {
    std::vector<AlgebraDesc> factors;
  };
  struct Opposite {
    std::shared_ptr<AlgebraDesc> inner;
  };
  struct MatrixSubalgebra {
    std::size_t ambient_n;
    std::vector<std::vector<std::vector<std::int64_t>>> generators;
  };

  std::uint32_t prime = 2;
  std::variant<StructureConstants, Named, Product, Opposite, MatrixSubalgebra> kind;

  AlgebraDesc();
};

inline AlgebraDesc::AlgebraDesc() : kind(StructureConstants{}) {}

inline Algebra build_algebra(const AlgebraDesc& desc) {
  check_prime(desc.prime);
  const std::uint32_t p = desc.prime;
  return std::visit(
      [&](const auto& k) -> Algebra {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, AlgebraDesc::StructureConstants>) {
          const std::size_t d = k.dim;
          if (k.mul_table.size() != d) throw InputError("mul_table must have dim rows");
          Vec table(d * d * d);
          for (std::size_t i = 0; i < d; ++i) {
            if (k.mul_table[i].size() != d) throw InputError("mul_table row " + std::to_string(i) + " must have dim entries");
            for (std::size_t j = 0; j < d; ++j) {
              if (k.mul_table[i][j].size() != d)
                throw InputError("mul_table[" + std::to_string(i) + "][" + std::to_string(j) +
                                 "] must have dim coefficients");
              for (std::size_t q = 0; q < d; ++q) table[(i * d + j) * d + q] = reduce_mod(k.mul_table[i][j][q], p);
            }
          }
          if (k.one.size() != d) throw InputError("'one' must have dim coefficients");
          Vec one(d);
          for (std::size_t q = 0; q < d; ++q) one[q] = reduce_mod(k.one[q], p);
          return Algebra(p, d, std::move(table), std::move(one), "structure_constants");
        } else if constexpr (std::is_same_v<K, AlgebraDesc::Named>) {
          if (k.n == 0) throw InputError("constructor parameter must be positive");
          if (k.name == "lower_triangular") return lower_triangular(k.n, p);
          if (k.name == "upper_triangular") return upper_triangular(k.n, p);
          if (k.name == "full_matrix") return full_matrix(k.n, p);
          if (k.name == "truncated_poly") return truncated_poly(k.n, p);
          if (k.name == "field") return prime_field(p);
          throw InputError("unknown constructor '" + k.name + "'");
        } else if constexpr (std::is_same_v<K, AlgebraDesc::Product>) {
          std::vector<Algebra> fs;
          for (auto& f : k.factors) {
            if (f.prime != p) throw InputError("product factor over a different prime");
            fs.push_back(build_algebra(f));
          }
          return direct_product(fs).algebra;
        } else if constexpr (std::is_same_v<K, AlgebraDesc::Opposite>) {
          if (!k.inner) throw InputError("opposite needs an inner description");
          return opposite_algebra(build_algebra(*k.inner));
        } else {
          std::vector<Mat> gens;
          for (auto& g : k.generators) gens.push_back(Mat::from_rows(g, k.ambient_n, p));
          return matrix_subalgebra(k.ambient_n, gens, p);
        }
      },
      desc.kind);
}

// ---------------------------------------------------------------------------
// Ideals

/// A subspace closed under multiplication by the algebra on the given side.
struct Ideal {
  Subspace space;
  Side side = Side::twosided;

  std::size_t dim() const { return space.dim(); }
  bool is_zero() const { return space.is_zero(); }
  friend bool operator==(const Ideal& a, const Ideal& b) { return a.space == b.space; }
};

inline bool is_closed(const Algebra& a, const Subspace& v, Side side) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    auto row = v.basis().row(i);
    for (std::size_t k = 0; k < a.dim(); ++k) {
      Vec b(a.dim(), 0);
      b[k] = 1;
      if (side != Side::left && !v.contains(a.mul_raw(row, b))) return false;
      if (side != Side::right && !v.contains(a.mul_raw(b, row))) return false;
    }
  }
  return true;
}

/// Least side-closed subspace containing `gens` (fixed-point iteration).
inline Ideal ideal_generated(const Algebra& a, std::span<const Element> gens, Side side) {
  Mat m(0, a.dim(), a.p());
  for (auto& g : gens) {
    a.check(g);
    m.append_row(g.coeffs());
  }
  Subspace v = Subspace::span(m);
  for (;;) {
    Mat grown = v.basis();
    for (std::size_t i = 0; i < v.dim(); ++i) {
      auto row = v.basis().row(i);
      for (std::size_t k = 0; k < a.dim(); ++k) {
        Vec b(a.dim(), 0);
        b[k] = 1;
        if (side != Side::left) grown.append_row(a.mul_raw(row, b));
        if (side != Side::right) grown.append_row(a.mul_raw(b, row));
      }
    }
    Subspace next = Subspace::span(grown);
    if (next == v) break;
    v = std::move(next);
  }
  return {std::move(v), side};
}

inline Ideal ideal_generated(const Algebra& a, const Element& g, Side side) {
  return ideal_generated(a, std::span<const Element>(&g, 1), side);
}

inline Ideal whole_algebra(const Algebra& a) { return {Subspace::full(a.dim(), a.p()), Side::twosided}; }
inline Ideal zero_ideal(const Algebra& a) { return {Subspace::zero(a.dim(), a.p()), Side::twosided}; }

enum class IdealOp { product, intersection, sum };

inline Ideal ideal_combine(const Algebra& a, const Ideal& x, const Ideal& y, IdealOp op) {
  x.space.check_compatible(y.space);
  if (op == IdealOp::product) {
    if (x.side != Side::twosided || y.side != Side::twosided)
      throw InputError("ideal product requires two-sided ideals");
    Mat m(0, a.dim(), a.p());
    for (std::size_t i = 0; i < x.dim(); ++i)
      for (std::size_t j = 0; j < y.dim(); ++j) m.append_row(a.mul_raw(x.space.basis().row(i), y.space.basis().row(j)));
    // The span of products of two-sided ideals is already two-sided; close anyway.
    std::vector<Element> gens;
    Subspace s = Subspace::span(m);
    for (std::size_t i = 0; i < s.dim(); ++i) gens.emplace_back(s.basis().row_vec(i), a.p());
    return ideal_generated(a, gens, Side::twosided);
  }
  Side side = x.side == y.side ? x.side : Side::twosided;
  if (x.side != y.side) {
    // Only the sides both operands share survive.
    if (x.side == Side::twosided) side = y.side;
    else if (y.side == Side::twosided) side = x.side;
    else throw InputError("cannot combine a left ideal with a right ideal");
  }
  Subspace s = op == IdealOp::sum ? subspace_sum(x.space, y.space) : subspace_intersection(x.space, y.space);
  ensure(is_closed(a, s, side), "combined ideal lost side closure");
  return {std::move(s), side};
}

/// Powers I, I^2, ... until zero; true iff I^k = 0 for some k <= dim + 1.
inline bool is_nilpotent_ideal(const Algebra& a, const Ideal& i) {
  Ideal power = i;
  for (std::size_t k = 0; k <= a.dim() + 1; ++k) {
    if (power.is_zero()) return true;
    power = ideal_combine(a, power, i, IdealOp::product);
  }
  return power.is_zero();
}

// ---------------------------------------------------------------------------
// Quotients

/// R/I on the basis of non-pivot coordinates of I's RREF basis.
struct QuotientAlgebra {
  Algebra algebra;
  Subspace ideal;
  std::vector<std::size_t> kept;  // ambient coordinates forming the quotient basis

  Element project(const Element& x) const {
    Vec r = ideal.reduce(x.coeffs());
    Vec out(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) out[i] = r[kept[i]];
    return {std::move(out), algebra.p()};
  }
  Element lift(const Element& y) const {
    Vec v(ideal.ambient_dim(), 0);
    for (std::size_t i = 0; i < kept.size(); ++i) v[kept[i]] = y[i];
    return {std::move(v), algebra.p()};
  }
  Mat projection_matrix() const {
    Mat m(ideal.ambient_dim(), kept.size(), algebra.p());
    for (std::size_t k = 0; k < ideal.ambient_dim(); ++k) {
      Vec e(ideal.ambient_dim(), 0);
      e[k] = 1;
      auto y = project({e, algebra.p()});
      std::copy(y.coeffs().begin(), y.coeffs().end(), m.row(k).begin());
    }
    return m;
  }
  Mat section_matrix() const {
    Mat m(kept.size(), ideal.ambient_dim(), algebra.p());
    for (std::size_t i = 0; i < kept.size(); ++i) m(i, kept[i]) = 1;
    return m;
  }
};

inline QuotientAlgebra quotient_algebra(const Algebra& a, const Ideal& i) {
  if (i.side != Side::twosided || !is_closed(a, i.space, Side::twosided))
    throw InputError("quotient requires a two-sided ideal");
  if (i.space.is_full()) throw InputError("quotient by the whole algebra");
  std::vector<std::size_t> kept;
  {
    std::size_t pi = 0;
    for (std::size_t k = 0; k < a.dim(); ++k) {
      if (pi < i.space.pivots().size() && i.space.pivots()[pi] == k) {
        ++pi;
        continue;
      }
      kept.push_back(k);
    }
  }
  const std::size_t q = kept.size();
  Vec table(q * q * q);
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t y = 0; y < q; ++y) {
      Vec r = i.space.reduce(a.product_of_basis(kept[x], kept[y]));
      for (std::size_t z = 0; z < q; ++z) table[(x * q + y) * q + z] = r[kept[z]];
    }
  Vec one_r = i.space.reduce(a.one().coeffs());
  Vec one(q);
  for (std::size_t z = 0; z < q; ++z) one[z] = one_r[kept[z]];
  std::string label = i.space.is_zero() ? a.label() : a.label() + "/I";
  return {Algebra(a.p(), q, std::move(table), std::move(one), std::move(label)), i.space, std::move(kept)};
}

// ---------------------------------------------------------------------------
// Subalgebras given by a subspace

/// A subspace closed under products, with its own identity, as an algebra in its RREF basis.
struct Subalgebra {
  Algebra algebra;
  Subspace space;

  Element to_ambient(const Element& y) const { return {space.combine(y.coeffs()), algebra.p()}; }
  Element from_ambient(const Element& x) const {
    if (!space.contains(x.coeffs())) throw InputError("element does not lie in the subalgebra");
    return {space.coordinates(x.coeffs()), algebra.p()};
  }
};

inline Subalgebra subalgebra(const Algebra& a, const Subspace& space, const Element& identity, std::string label) {
  const std::size_t d = space.dim();
  if (d == 0) throw InputError("subalgebra of dimension zero");
  Vec table(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec prod = a.mul_raw(space.basis().row(i), space.basis().row(j));
      if (!space.contains(prod)) throw InputError("subspace is not closed under multiplication");
      auto c = space.coordinates(prod);
      std::copy(c.begin(), c.end(), table.begin() + (i * d + j) * d);
    }
  if (!space.contains(identity.coeffs())) throw InputError("subalgebra identity outside the subspace");
  return {Algebra(a.p(), d, std::move(table), space.coordinates(identity.coeffs()), std::move(label)), space};
}

/// Corner ring eRe with identity e.
inline Subalgebra corner_algebra(const Algebra& a, const Element& e) {
  Mat m(0, a.dim(), a.p());
  for (std::size_t k = 0; k < a.dim(); ++k) m.append_row(a.mul3(e, a.basis(k), e).coeffs());
  return subalgebra(a, Subspace::span(m), e, "eRe");
}

/// Centre {z : zb = bz for all basis b} as a subspace.
inline Subspace center(const Algebra& a) {
  Mat big(a.dim(), 0, a.p());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    auto b = a.basis(k);
    big = hstack(big, a.regular_matrix(b, Side::right) - a.regular_matrix(b, Side::left));
  }
  return kernel(big);
}

// ---------------------------------------------------------------------------

struct ElementInfo {
  bool is_unit = false;
  std::optional<Element> inverse;
  bool is_nilpotent = false;
  bool is_idempotent = false;
  bool is_left_regular = false;
};

inline ElementInfo classify_element_basic(const Algebra& a, const Element& x) {
  ElementInfo info;
  const Mat left = a.regular_matrix(x, Side::left);
  info.is_unit = rank(left) == a.dim();
  if (info.is_unit) {
    auto y = solve_left(left, a.one().coeffs());
    ensure(y.has_value(), "unit without inverse");
    info.inverse = Element(std::move(*y), a.p());
    ensure(a.mul(x, *info.inverse) == a.one() && a.mul(*info.inverse, x) == a.one(),
           "computed inverse is not two-sided");
  }
  info.is_nilpotent = a.is_nilpotent(x);
  info.is_idempotent = a.is_idempotent(x);
  info.is_left_regular = kernel(a.regular_matrix(x, Side::right)).is_zero();
  ensure(!info.is_left_regular || info.is_unit, "left regular element that is not a unit");
  return info;
}

}  // namespace artinloc
