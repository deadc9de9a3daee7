#pragma once

// Jacobson radical, the semisimple quotient R/rad and its blocks, and a lifted
// complete family of orthogonal idempotents 1 = 1_1 + ... + 1_s.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "artinloc/algebra.hpp"
#include "artinloc/errors.hpp"
#include "artinloc/exactcore.hpp"

namespace artinloc {

/// Subset of {1..s} as a bitmask; bit i stands for block i+1.
using BlockSet = std::uint64_t;

inline constexpr std::size_t kMaxBlocks = 64;

inline BlockSet full_blockset(std::size_t s) { return s >= 64 ? ~BlockSet{0} : (BlockSet{1} << s) - 1; }
inline std::size_t blockset_size(BlockSet b) { return static_cast<std::size_t>(std::popcount(b)); }
inline bool blockset_contains(BlockSet outer, BlockSet inner) { return (outer & inner) == inner; }

inline std::vector<std::size_t> blockset_members(BlockSet b) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 64; ++i)
    if (b >> i & 1) out.push_back(i);
  return out;
}

/// "{1,3}" with 1-based indices.
inline std::string format_blockset(BlockSet b) {
  std::string s = "{";
  bool first = true;
  for (auto i : blockset_members(b)) {
    if (!first) s += ",";
    s += std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

/// Inverse of format_blockset.
inline BlockSet parse_blockset(const std::string& text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') throw InputError("bad block set '" + text + "'");
  BlockSet b = 0;
  std::size_t pos = 1;
  while (pos < text.size() - 1) {
    std::size_t end = text.find_first_of(",}", pos);
    int v = std::stoi(text.substr(pos, end - pos));
    if (v < 1 || v > 64) throw InputError("block index out of range in '" + text + "'");
    b |= BlockSet{1} << (v - 1);
    pos = end + 1;
  }
  return b;
}

/// Order by (size, lexicographic on sorted members).
inline bool blockset_less(BlockSet a, BlockSet b) {
  if (blockset_size(a) != blockset_size(b)) return blockset_size(a) < blockset_size(b);
  return blockset_members(a) < blockset_members(b);
}

// ---------------------------------------------------------------------------

/// Trace-form radical: {x : Tr(L_{x b_j}) = 0 for all j}. Exact when p > dim.
inline Ideal radical(const Algebra& a) {
  const std::size_t d = a.dim();
  const std::uint32_t p = a.p();
  Vec tr(d, 0);
  for (std::size_t m = 0; m < d; ++m) {
    std::uint64_t t = 0;
    for (std::size_t k = 0; k < d; ++k) t += a.product_of_basis(m, k)[k];
    tr[m] = static_cast<Residue>(t % p);
  }
  Mat g(d, d, p);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto prod = a.product_of_basis(i, j);
      std::uint64_t t = 0;
      for (std::size_t m = 0; m < d; ++m) t = (t + static_cast<std::uint64_t>(prod[m]) * tr[m]) % p;
      g(i, j) = static_cast<Residue>(t);
    }
  Ideal rad{kernel(g), Side::twosided};
  ensure(is_closed(a, rad.space, Side::twosided), "radical is not a two-sided ideal");
  ensure(is_nilpotent_ideal(a, rad), "radical is not nilpotent");
  return rad;
}

/// Minimal polynomial of x in an algebra with identity `unit` (monic, low degree first).
inline Vec minimal_polynomial(const Algebra& a, const Element& x, const Element& unit) {
  const std::uint32_t p = a.p();
  Mat powers(0, a.dim(), p);
  Element cur = unit;
  for (std::size_t k = 0; k <= a.dim(); ++k) {
    if (k > 0) {
      auto c = solve_left(powers, cur.coeffs());
      if (c) {
        Vec poly(k + 1);
        for (std::size_t i = 0; i < k; ++i) poly[i] = neg_mod((*c)[i], p);
        poly[k] = 1;
        return poly;
      }
    }
    powers.append_row(cur.coeffs());
    cur = a.mul(cur, x);
  }
  throw InvariantViolation("no minimal polynomial found");
}

inline Residue eval_poly(const Vec& poly, Residue v, std::uint32_t p) {
  Residue r = 0;
  for (std::size_t i = poly.size(); i-- > 0;) r = add_mod(mul_mod(r, v, p), poly[i], p);
  return r;
}

/// Primitive idempotents of a commutative split-semisimple subspace F (all z in F satisfy
/// z^p = z), given its basis as elements of `a` and its identity `unit`.
inline std::vector<Element> split_idempotents(const Algebra& a, const std::vector<Element>& fbasis,
                                              const Element& unit) {
  const std::uint32_t p = a.p();
  std::vector<Element> done, pending{unit};
  auto corner_dim = [&](const Element& e) {
    Mat m(0, a.dim(), p);
    for (auto& f : fbasis) m.append_row(a.mul(e, f).coeffs());
    return rank(m);
  };
  while (!pending.empty()) {
    Element e = pending.back();
    pending.pop_back();
    if (corner_dim(e) <= 1) {
      done.push_back(e);
      continue;
    }
    bool split = false;
    for (auto& f : fbasis) {
      Element x = a.mul(e, f);
      Vec poly = minimal_polynomial(a, x, e);
      std::vector<Residue> roots;
      for (std::uint32_t v = 0; v < p; ++v)
        if (eval_poly(poly, v, p) == 0) roots.push_back(v);
      ensure(roots.size() + 1 == poly.size(), "minimal polynomial does not split into distinct roots");
      if (roots.size() < 2) continue;
      for (auto alpha : roots) {
        Element prod = e;
        for (auto beta : roots) {
          if (beta == alpha) continue;
          Element factor = a.sub(x, a.scale(e, beta));
          prod = a.scale(a.mul(prod, factor), inv_mod(sub_mod(alpha, beta, p), p));
        }
        pending.push_back(prod);
      }
      split = true;
      break;
    }
    ensure(split, "idempotent with a corner of dimension > 1 could not be split");
  }
  return done;
}

/// Lift an idempotent modulo a nilpotent ideal: x <- 3x^2 - 2x^3.
inline Element newton_lift(const Algebra& a, Element x) {
  std::size_t rounds = 1;
  while ((std::size_t{1} << (rounds - 1)) < a.dim()) ++rounds;
  for (std::size_t r = 0; r < rounds; ++r) {
    Element x2 = a.mul(x, x);
    Element x3 = a.mul(x2, x);
    x = a.sub(a.scale(x2, 3), a.scale(x3, 2));
  }
  ensure(a.is_idempotent(x), "Newton lift did not converge to an idempotent");
  return x;
}

struct IdempotentFamily {
  std::vector<Element> idempotents;   // 1_1, ..., 1_s in R
  std::vector<Element> bar_idempotents;  // their images in R/rad
  std::vector<std::size_t> block_dims;
  std::vector<bool> block_commutative;
  Ideal rad;
  QuotientAlgebra rbar;

  std::size_t s() const { return idempotents.size(); }

  /// e_I = sum of 1_i over i in I.
  Element block_sum(const Algebra& a, BlockSet set) const {
    Element e = a.zero();
    for (auto i : blockset_members(set)) {
      ensure(i < s(), "block index out of range");
      e = a.add(e, idempotents[i]);
    }
    return e;
  }
};

/// Centre of R/rad, its split Frobenius-fixed part, the primitive central idempotents of
/// R/rad in canonical order, and their sequential orthogonal lifts to R.
inline IdempotentFamily block_decomposition(const Algebra& a) {
  const std::uint32_t p = a.p();
  IdempotentFamily fam;
  fam.rad = radical(a);
  fam.rbar = quotient_algebra(a, fam.rad);
  const Algebra& rb = fam.rbar.algebra;
  ensure(radical(rb).is_zero(), "R/rad is not semisimple");

  Subalgebra z = subalgebra(rb, center(rb), rb.one(), "Z(R/rad)");
  const Algebra& za = z.algebra;
  // Frobenius-fixed subspace {z : z^p = z}; the map is linear over GF(p).
  Mat frob(za.dim(), za.dim(), p);
  for (std::size_t k = 0; k < za.dim(); ++k) {
    Vec v = za.pow(za.basis(k), p).coeffs();
    std::copy(v.begin(), v.end(), frob.row(k).begin());
  }
  Subspace fixed = kernel(frob - Mat::identity(za.dim(), p));
  std::vector<Element> fbasis;
  for (std::size_t i = 0; i < fixed.dim(); ++i) fbasis.emplace_back(fixed.basis().row_vec(i), p);
  std::vector<Element> prim = split_idempotents(za, fbasis, za.one());
  ensure(prim.size() == fixed.dim(), "number of primitive idempotents differs from dim of Frobenius-fixed part");
  ensure(prim.size() <= kMaxBlocks, "too many blocks");

  std::vector<Element> bars;
  for (auto& e : prim) bars.push_back(z.to_ambient(e));
  auto first_nonzero = [](const Element& e) {
    for (std::size_t i = 0; i < e.dim(); ++i)
      if (e[i]) return i;
    return e.dim();
  };
  std::sort(bars.begin(), bars.end(), [&](const Element& x, const Element& y) {
    auto fx = first_nonzero(x), fy = first_nonzero(y);
    if (fx != fy) return fx < fy;
    return y < x;
  });

  Element f = a.zero();
  for (std::size_t k = 0; k < bars.size(); ++k) {
    Element lifted;
    if (k + 1 == bars.size()) {
      lifted = a.sub(a.one(), f);
    } else {
      Element c = a.sub(a.one(), f);
      Element x = a.mul3(c, fam.rbar.lift(bars[k]), c);
      lifted = newton_lift(a, x);
    }
    ensure(a.is_idempotent(lifted), "lifted element is not idempotent");
    ensure(fam.rbar.project(lifted) == bars[k], "lift does not reduce to the central idempotent of R/rad");
    for (auto& prev : fam.idempotents)
      ensure(a.mul(prev, lifted).is_zero() && a.mul(lifted, prev).is_zero(), "lifted idempotents are not orthogonal");
    f = a.add(f, lifted);
    fam.idempotents.push_back(lifted);
  }
  ensure(f == a.one(), "lifted idempotents do not sum to 1");

  fam.bar_idempotents = bars;
  for (auto& e : bars) {
    Subalgebra block = corner_algebra(rb, e);
    fam.block_dims.push_back(block.algebra.dim());
    fam.block_commutative.push_back(block.algebra.is_commutative());
  }
  return fam;
}

struct BlockSupport {
  BlockSet blocks = 0;
  bool in_radical = false;
};

/// Blocks j with 1_j * I not contained in rad, i.e. blocks met by (I + rad)/rad.
inline BlockSupport ideal_block_support(const Algebra& a, const IdempotentFamily& fam, const Ideal& i) {
  if (i.side != Side::twosided) throw InputError("block support needs a two-sided ideal");
  BlockSupport out;
  for (std::size_t j = 0; j < fam.s(); ++j)
    for (std::size_t r = 0; r < i.dim(); ++r) {
      Vec v = a.mul_raw(fam.idempotents[j].coeffs(), i.space.basis().row(r));
      if (!fam.rad.space.contains(v)) {
        out.blocks |= BlockSet{1} << j;
        break;
      }
    }
  out.in_radical = out.blocks == 0;
  return out;
}

/// Primitive central idempotents of R, via the block decomposition of the centre.
inline std::vector<Element> primitive_central_idempotents(const Algebra& a) {
  Subalgebra z = subalgebra(a, center(a), a.one(), "Z(R)");
  IdempotentFamily zf = block_decomposition(z.algebra);
  std::vector<Element> out;
  for (auto& e : zf.idempotents) {
    Element c = z.to_ambient(e);
    ensure(a.is_central(c) && a.is_idempotent(c), "central idempotent lift failed");
    out.push_back(c);
  }
  return out;
}

}  // namespace artinloc
