#pragma once

// Left, right and two-sided denominator sets and localizations of a finite-dimensional
// algebra: the triangular block idempotents e_I, the localizations R/(1-e_I)R, the maximal
// denominator sets T_e, the localization radicals, element classification and duality.
//
// Right-sided objects are computed as left-sided objects of the opposite algebra, using the
// same idempotent family (idempotents, orthogonality and the radical are side-free).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "artinloc/algebra.hpp"
#include "artinloc/errors.hpp"
#include "artinloc/exactcore.hpp"
#include "artinloc/oracle.hpp"
#include "artinloc/structure.hpp"

namespace artinloc {

/// Largest block count for which all 2^s block subsets are scanned.
inline constexpr std::size_t kMaxSubsetBlocks = 20;

inline void check_subset_guard(std::size_t s) {
  if (s > kMaxSubsetBlocks)
    throw ResourceError(std::to_string(s) + " blocks: subset scan limited to " + std::to_string(kMaxSubsetBlocks));
}

/// e R (1-e) = 0, tested on basis elements.
inline bool is_left_triangular(const Algebra& a, const Element& e) {
  Element f = a.sub(a.one(), e);
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (!a.mul3(e, a.basis(k), f).is_zero()) return false;
  return true;
}

/// (1-e) R e = 0.
inline bool is_right_triangular(const Algebra& a, const Element& e) {
  Element f = a.sub(a.one(), e);
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (!a.mul3(f, a.basis(k), e).is_zero()) return false;
  return true;
}

/// (1-e)R as a subspace.
inline Ideal complement_right_ideal(const Algebra& a, const Element& e) {
  Element f = a.sub(a.one(), e);
  Mat m(0, a.dim(), a.p());
  for (std::size_t k = 0; k < a.dim(); ++k) m.append_row(a.mul(f, a.basis(k)).coeffs());
  return {Subspace::span(m), Side::right};
}

/// eR as a subspace.
inline Subspace principal_right_ideal(const Algebra& a, const Element& e) {
  Mat m(0, a.dim(), a.p());
  for (std::size_t k = 0; k < a.dim(); ++k) m.append_row(a.mul(e, a.basis(k)).coeffs());
  return Subspace::span(m);
}

/// For each block i, the blocks j with 1_i R 1_j != 0.
inline std::vector<BlockSet> block_links(const Algebra& a, const IdempotentFamily& fam) {
  std::vector<BlockSet> links(fam.s(), 0);
  for (std::size_t i = 0; i < fam.s(); ++i)
    for (std::size_t j = 0; j < fam.s(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (!a.mul3(fam.idempotents[i], a.basis(k), fam.idempotents[j]).is_zero()) {
          links[i] |= BlockSet{1} << j;
          break;
        }
  return links;
}

/// e_I R (1 - e_I) = 0 in terms of block links.
inline bool subset_is_triangular(const std::vector<BlockSet>& links, BlockSet set) {
  for (auto i : blockset_members(set))
    if (!blockset_contains(set, links[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

struct TriangularEntry {
  BlockSet set = 0;
  Element e;
};

/// The left triangular block idempotents e_I, ordered by (|I|, lexicographic), with the
/// inclusion order and its minimal elements.
struct TriangularIdempotentSet {
  std::size_t s = 0;
  std::vector<TriangularEntry> entries;
  std::vector<std::size_t> minima;  // indices into entries

  /// e_i <= e_j, i.e. I_i is a subset of I_j.
  bool leq(std::size_t i, std::size_t j) const { return blockset_contains(entries[j].set, entries[i].set); }

  std::optional<std::size_t> find(BlockSet set) const {
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (entries[i].set == set) return i;
    return std::nullopt;
  }

  std::vector<BlockSet> minimal_sets() const {
    std::vector<BlockSet> out;
    for (auto m : minima) out.push_back(entries[m].set);
    return out;
  }
};

inline constexpr std::size_t kMaxPairChecks = 256;

inline TriangularIdempotentSet left_triangular_idempotents(const Algebra& a, const IdempotentFamily& fam) {
  check_subset_guard(fam.s());
  const std::size_t s = fam.s();
  const auto links = block_links(a, fam);
  TriangularIdempotentSet tri;
  tri.s = s;
  std::vector<BlockSet> sets;
  for (BlockSet b = 1; b <= full_blockset(s); ++b) {
    bool tri_by_links = subset_is_triangular(links, b);
    if (s <= 8) {
      ensure(tri_by_links == is_left_triangular(a, fam.block_sum(a, b)),
             "block-link triangularity disagrees with the direct test for " + format_blockset(b));
    }
    if (tri_by_links) sets.push_back(b);
  }
  std::sort(sets.begin(), sets.end(), blockset_less);
  for (auto b : sets) {
    Element e = fam.block_sum(a, b);
    ensure(is_left_triangular(a, e), "accepted e_I is not left triangular");
    tri.entries.push_back({b, std::move(e)});
  }
  ensure(!tri.entries.empty() && tri.entries.back().set == full_blockset(s), "e = 1 missing from the triangular set");

  for (std::size_t i = 0; i < tri.entries.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < tri.entries.size() && minimal; ++j)
      if (j != i && tri.leq(j, i)) minimal = false;
    if (minimal) tri.minima.push_back(i);
  }

  // Closure under products and disjoint sums; minima orthogonal with e_I R e_J = 0.
  if (tri.entries.size() <= kMaxPairChecks) {
    for (auto& x : tri.entries)
      for (auto& y : tri.entries) {
        Element prod = a.mul(x.e, y.e);
        BlockSet meet = x.set & y.set;
        if (!prod.is_zero()) {
          ensure(meet != 0 && tri.find(meet).has_value(), "e_I e_J is not in the triangular set");
          ensure(prod == fam.block_sum(a, meet) && prod == a.mul(y.e, x.e), "e_I e_J differs from e_{I cap J}");
        }
        if (meet == 0) ensure(tri.find(x.set | y.set).has_value(), "e_I + e_J missing for disjoint I, J");
      }
  }
  for (auto i : tri.minima)
    for (auto j : tri.minima) {
      if (i == j) continue;
      const auto& x = tri.entries[i];
      const auto& y = tri.entries[j];
      ensure((x.set & y.set) == 0 && a.mul(x.e, y.e).is_zero(), "distinct minima are not orthogonal");
      for (std::size_t k = 0; k < a.dim(); ++k)
        ensure(a.mul3(x.e, a.basis(k), y.e).is_zero(), "e_I R e_J != 0 for distinct minima");
    }
  return tri;
}

/// Reconstructs the block-triangular shape from the minima and checks it characterises them:
/// off-diagonal corners between minima and from minima to the rest vanish, no minimum's corner
/// ring is itself triangular on a proper block subset, and no subset of the leftover blocks
/// is triangular.
inline bool minima_shape_consistent(const Algebra& a, const IdempotentFamily& fam, const TriangularIdempotentSet& tri) {
  const auto links = block_links(a, fam);
  BlockSet covered = 0;
  for (auto b : tri.minimal_sets()) {
    if (covered & b) return false;
    covered |= b;
  }
  for (auto b : tri.minimal_sets()) {
    for (auto i : blockset_members(b))
      if (!blockset_contains(b, links[i])) return false;
    // e_J R (e_I - e_J) = 0 for a proper J would make the corner ring triangular.
    for (BlockSet j = (b - 1) & b; j != 0; j = (j - 1) & b) {
      bool corner_tri = true;
      for (auto i : blockset_members(j))
        if ((links[i] & b & ~j) != 0) corner_tri = false;
      if (corner_tri) return false;
    }
  }
  BlockSet rest = full_blockset(fam.s()) & ~covered;
  for (BlockSet j = rest; j != 0; j = (j - 1) & rest)
    if (subset_is_triangular(links, j)) return false;
  return true;
}

// ---------------------------------------------------------------------------

enum class DenKind { idempotent, powers, monoid, maximal };

inline const char* to_string(DenKind k) {
  switch (k) {
    case DenKind::idempotent: return "idempotent";
    case DenKind::powers: return "powers";
    case DenKind::monoid: return "monoid";
    case DenKind::maximal: return "maximal";
  }
  return "?";
}

/// A left denominator set described by its idempotent e: ass = (1-e)R, S^{-1}R = R/(1-e)R.
struct DenSetDescriptor {
  DenKind kind = DenKind::idempotent;
  Element e;
  Ideal ass;
  QuotientAlgebra quotient;
  std::optional<std::uint64_t> core_min_exponent;  // powers only

  /// Core membership: ker(x.) = ass, equivalently (1-e) x (1-e) = 0.
  bool in_core(const Algebra& a, const Element& x) const {
    Element f = a.sub(a.one(), e);
    return a.mul3(f, x, f).is_zero();
  }
  /// x + (1-e)R is a unit of R/(1-e)R; for kind maximal this is membership in T_e.
  bool unit_in_quotient(const Element& x) const { return quotient.algebra.is_unit(quotient.project(x)); }
};

inline DenSetDescriptor make_descriptor(const Algebra& a, const Element& e, DenKind kind) {
  ensure(!e.is_zero() && a.is_idempotent(e), "descriptor needs a nonzero idempotent");
  ensure(is_left_triangular(a, e), "descriptor idempotent is not left triangular");
  DenSetDescriptor d;
  d.kind = kind;
  d.e = e;
  d.ass = complement_right_ideal(a, e);
  ensure(is_closed(a, d.ass.space, Side::twosided), "(1-e)R is not an ideal");
  d.ass.side = Side::twosided;
  ensure(ideal_combine(a, d.ass, d.ass, IdealOp::product) == d.ass, "ass^2 != ass");
  d.quotient = quotient_algebra(a, d.ass);
  return d;
}

/// |T_e| = |units of R/(1-e)R| * p^dim(ass), by enumerating the quotient.
inline std::uint64_t count_max_den(const DenSetDescriptor& d, std::uint64_t guard) {
  const Algebra& q = d.quotient.algebra;
  const std::uint64_t n = oracle::element_count(q, guard);
  std::uint64_t units = 0;
  for (std::uint64_t k = 0; k < n; ++k)
    if (q.is_unit(oracle::element_at(q, k))) ++units;
  std::uint64_t scale = 1;
  for (std::size_t i = 0; i < d.ass.dim(); ++i) {
    if (scale > guard / q.p() + 1) throw ResourceError("T_e too large to count within guard");
    scale *= q.p();
  }
  return units * scale;
}

// ---------------------------------------------------------------------------

struct AssociatedIdempotent {
  std::size_t n = 0;
  Element e;        // in R s^n
  Element e_prime;  // in ker(. s^n)
  bool nilpotent = false;
};

/// R = R s^n + ker(. s^n) for the least n with R s^n = R s^{n+1}; 1 = e + e'.
inline AssociatedIdempotent associated_idempotent(const Algebra& a, const Element& s) {
  a.check(s);
  AssociatedIdempotent out;
  Element power = a.one();
  Subspace cur = Subspace::full(a.dim(), a.p());
  for (;;) {
    Element next_power = a.mul(power, s);
    Subspace next = Subspace::span(a.regular_matrix(next_power, Side::right));
    if (next.dim() == cur.dim()) break;
    cur = std::move(next);
    power = std::move(next_power);
    ++out.n;
    ensure(out.n <= a.dim(), "R s^n did not stabilise");
  }
  if (cur.is_zero()) {
    out.nilpotent = true;
    out.e = a.zero();
    out.e_prime = a.one();
    return out;
  }
  Subspace ker = kernel(a.regular_matrix(power, Side::right));
  auto rel = subspace_ops(cur, ker);
  ensure(rel.intersection.is_zero() && rel.sum.is_full(), "R is not R s^n + ker(. s^n)");
  Mat stacked = vstack(cur.basis(), ker.basis());
  auto c = solve_left(stacked, a.one().coeffs());
  ensure(c.has_value(), "cannot decompose 1");
  Vec cu(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(cur.dim()));
  out.e = Element(cur.combine(cu), a.p());
  out.e_prime = a.sub(a.one(), out.e);
  ensure(ker.contains(out.e_prime.coeffs()), "e' does not lie in ker(. s^n)");
  ensure(a.is_idempotent(out.e) && a.is_idempotent(out.e_prime), "associated idempotents are not idempotent");
  ensure(a.mul(out.e, out.e_prime).is_zero() && a.mul(out.e_prime, out.e).is_zero(),
         "associated idempotents are not orthogonal");
  return out;
}

struct PowersVerdict {
  bool is_den = false;
  bool nilpotent = false;
  bool triangular = false;         // e R (1-e) = 0
  bool corner_nilpotent = false;   // (1-e) s (1-e) nilpotent
  AssociatedIdempotent assoc;
  std::optional<DenSetDescriptor> descriptor;
};

/// {s^i : i >= 0} is a left denominator set iff e R (1-e) = 0 and (1-e)s(1-e) is nilpotent,
/// e = e(s). Nilpotent s is rejected since 0 would lie in the set. The core is
/// {s^i : (1-e) s^i (1-e) = 0}; once an exponent qualifies all larger ones do.
inline PowersVerdict powers_denominator_criterion(const Algebra& a, const Element& s) {
  PowersVerdict v;
  v.assoc = associated_idempotent(a, s);
  if (v.assoc.nilpotent) {
    v.nilpotent = true;
    return v;
  }
  const Element& e = v.assoc.e;
  Element f = a.sub(a.one(), e);
  v.triangular = is_left_triangular(a, e);
  v.corner_nilpotent = a.is_nilpotent(a.mul3(f, s, f));
  v.is_den = v.triangular && v.corner_nilpotent;
  if (!v.is_den) return v;
  auto d = make_descriptor(a, e, DenKind::powers);
  Element power = a.one();
  for (std::uint64_t i = 0; i <= a.dim() + 1; ++i) {
    if (d.in_core(a, power)) {
      d.core_min_exponent = i;
      break;
    }
    power = a.mul(power, s);
  }
  ensure(d.core_min_exponent.has_value(), "core of S_s is empty");
  v.descriptor = std::move(d);
  return v;
}

struct MonoidVerdict {
  bool is_den = false;
  bool contains_zero = false;
  std::size_t closure_size = 0;
  std::optional<Element> witness;
  std::optional<DenSetDescriptor> descriptor;
};

/// Decides whether the monoid generated by `gens` is a left denominator set: it is iff some
/// element s of it has S_s a left denominator set with every generator a unit modulo
/// ass(S_s). All witnesses must give the same ass, which is ker(s.) for a witness with the
/// largest left annihilator.
inline MonoidVerdict monoid_denominator_decision(const Algebra& a, const std::vector<Element>& gens,
                                                 std::uint64_t guard) {
  MonoidVerdict v;
  oracle::FiniteSet closure = oracle::monoid_closure(a, gens, guard);
  v.closure_size = closure.size();
  if (closure.contains_zero) {
    v.contains_zero = true;
    return v;
  }
  std::optional<Subspace> common_ass;
  std::optional<Element> best;
  std::size_t best_ker = 0;
  std::optional<PowersVerdict> best_verdict;
  for (auto& s : closure.members) {
    PowersVerdict pv = powers_denominator_criterion(a, s);
    if (!pv.is_den) continue;
    const auto& d = *pv.descriptor;
    bool all_units = std::all_of(gens.begin(), gens.end(), [&](const Element& g) { return d.unit_in_quotient(g); });
    if (!all_units) continue;
    if (common_ass) ensure(*common_ass == d.ass.space, "witnesses give different ass ideals");
    else common_ass = d.ass.space;
    std::size_t kd = kernel(a.regular_matrix(s, Side::left)).dim();
    if (!best || kd > best_ker) {
      best = s;
      best_ker = kd;
      best_verdict = std::move(pv);
    }
  }
  if (!best) return v;
  v.is_den = true;
  v.witness = best;
  DenSetDescriptor d = *best_verdict->descriptor;
  d.kind = DenKind::monoid;
  d.core_min_exponent.reset();
  ensure(kernel(a.regular_matrix(*best, Side::left)) == d.ass.space, "ker(s.) of the best witness differs from (1-e)R");
  v.descriptor = std::move(d);
  return v;
}

struct IdempotentCheck {
  bool left = false;
  bool right = false;
  bool twosided = false;
  bool central = false;
};

/// {1, e} is a left (right) denominator set iff e R (1-e) = 0 ((1-e) R e = 0); both iff e central.
inline IdempotentCheck idempotent_denominator_check(const Algebra& a, const Element& e) {
  a.check(e);
  if (!a.is_idempotent(e)) throw InputError("element is not idempotent");
  if (e.is_zero()) throw InputError("the zero idempotent gives no denominator set");
  IdempotentCheck c;
  c.left = is_left_triangular(a, e);
  c.right = is_right_triangular(a, e);
  c.twosided = c.left && c.right;
  c.central = a.is_central(e);
  ensure(c.twosided == c.central, "two-sided denominator idempotent is not central (or conversely)");
  return c;
}

// ---------------------------------------------------------------------------

struct LocEntry {
  BlockSet set = 0;
  Element e;
  Ideal ass;
  std::size_t quotient_dim = 0;
};

struct ReportFlags {
  bool localization_maximal = false;
  bool semisimple = false;
  bool is_direct_product_of_loc_max = false;
  bool completely_loc_equals_units = false;
};

/// The five equivalent conditions for C_l(R) = R*.
struct CompletelyLocalizableBundle {
  bool c_equals_units = false;        // C_l(R) = R*
  bool c_exhaustive = false;          // decided by enumeration (otherwise by witness/sampling)
  bool union_is_all = false;          // minima cover all blocks
  bool product_of_corners = false;    // R = prod e_i R e_i over the minima
  bool product_of_maximal = false;    // factors of R are non-strongly-triangular
  bool l_zero = false;

  bool consistent() const {
    return c_equals_units == union_is_all && union_is_all == product_of_corners &&
           product_of_corners == product_of_maximal && product_of_maximal == l_zero;
  }
};

struct LocalizationReport {
  Side side = Side::left;
  std::string label;
  std::uint32_t p = 2;
  std::size_t dim = 0;
  std::size_t s = 0;
  std::vector<std::size_t> block_dims;
  std::vector<bool> block_commutative;
  Ideal rad;
  TriangularIdempotentSet tri;
  std::vector<LocEntry> loc_entries;
  std::vector<DenSetDescriptor> max_den;  // T_e for e in the minima, same order
  Ideal l_rad;
  Ideal little_rad;
  ReportFlags flags;
  bool nl_ideal = false;
  CompletelyLocalizableBundle bundle;

  std::size_t loc_count() const { return loc_entries.size(); }
};

struct ReportOptions {
  std::uint64_t guard = oracle::kDefaultGuard;
};

/// x is a unit modulo (1-e)R for all (completely) or some (localizable) minimal e.
struct ElementClass {
  bool left_localizable = false;
  bool completely = false;
  std::vector<BlockSet> witnesses;
};

inline ElementClass classify_in(const Algebra& a, const std::vector<DenSetDescriptor>& max_den,
                                const TriangularIdempotentSet& tri, const Element& r) {
  a.check(r);
  ElementClass c;
  c.completely = true;
  for (std::size_t i = 0; i < max_den.size(); ++i) {
    if (max_den[i].unit_in_quotient(r)) c.witnesses.push_back(tri.entries[tri.minima[i]].set);
    else c.completely = false;
  }
  c.left_localizable = !c.witnesses.empty();
  if (a.is_unit(r)) ensure(c.completely, "a unit is not completely localizable");
  return c;
}

namespace detail {

inline Ideal intersect_all(const Algebra& a, const std::vector<Ideal>& ideals) {
  Ideal acc = whole_algebra(a);
  for (auto& i : ideals) acc = ideal_combine(a, acc, i, IdealOp::intersection);
  return acc;
}

inline Ideal multiply_all(const Algebra& a, const std::vector<Ideal>& ideals) {
  Ideal acc = whole_algebra(a);
  for (auto& i : ideals) acc = ideal_combine(a, acc, i, IdealOp::product);
  return acc;
}

inline CompletelyLocalizableBundle completely_localizable_bundle(const Algebra& a, const IdempotentFamily& fam,
                                                                 const LocalizationReport& rep,
                                                                 std::uint64_t guard) {
  CompletelyLocalizableBundle b;
  const auto links = block_links(a, fam);
  Element sum_min = a.zero();
  BlockSet covered = 0;
  for (auto m : rep.tri.minima) {
    sum_min = a.add(sum_min, rep.tri.entries[m].e);
    covered |= rep.tri.entries[m].set;
  }
  b.union_is_all = covered == full_blockset(rep.s);
  b.product_of_corners = sum_min == a.one();
  for (auto m : rep.tri.minima)
    if (!a.is_central(rep.tri.entries[m].e)) b.product_of_corners = false;
  b.l_zero = rep.l_rad.is_zero();

  b.product_of_maximal = true;
  BlockSet seen = 0;
  for (auto& c : primitive_central_idempotents(a)) {
    BlockSet bc = 0;
    for (std::size_t j = 0; j < fam.s(); ++j) {
      Element part = a.mul(fam.idempotents[j], c);
      if (part.is_zero()) continue;
      ensure(part == fam.idempotents[j], "block idempotent straddles two central factors");
      bc |= BlockSet{1} << j;
    }
    ensure((bc & seen) == 0, "central factors share a block");
    seen |= bc;
    for (BlockSet j = (bc - 1) & bc; j != 0; j = (j - 1) & bc) {
      bool tri = true;
      for (auto i : blockset_members(j))
        if ((links[i] & bc & ~j) != 0) tri = false;
      if (tri) b.product_of_maximal = false;
    }
  }
  ensure(seen == full_blockset(fam.s()), "central factors do not cover all blocks");

  // C_l(R) = R*: exhaustive when the ring is small enough, else the sum of the minima (which
  // is completely localizable) as a witness, backed by random sampling.
  auto completely = [&](const Element& x) {
    return std::all_of(rep.max_den.begin(), rep.max_den.end(), [&](const DenSetDescriptor& d) { return d.unit_in_quotient(x); });
  };
  ensure(completely(sum_min), "sum of the minima is not completely localizable");
  std::uint64_t n = 0;
  try {
    n = oracle::element_count(a, guard);
    b.c_exhaustive = true;
  } catch (const ResourceError&) {
    b.c_exhaustive = false;
  }
  b.c_equals_units = true;
  if (b.c_exhaustive) {
    for (std::uint64_t k = 0; k < n && b.c_equals_units; ++k) {
      Element x = oracle::element_at(a, k);
      if (completely(x) && !a.is_unit(x)) b.c_equals_units = false;
    }
  } else if (!a.is_unit(sum_min)) {
    b.c_equals_units = false;
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<Residue> coeff(0, a.p() - 1);
    for (int t = 0; t < 10000 && b.c_equals_units; ++t) {
      Vec v(a.dim());
      for (auto& c : v) c = coeff(rng);
      Element x(std::move(v), a.p());
      if (completely(x) && !a.is_unit(x)) b.c_equals_units = false;
    }
  }
  return b;
}

}  // namespace detail

/// Full report for one side. For side right the left pipeline runs on the opposite algebra;
/// elements and subspaces are shared with R, so results read directly in R.
inline LocalizationReport localization_report(const Algebra& r, const IdempotentFamily& fam, Side side,
                                              const ReportOptions& opt = {}) {
  if (side == Side::twosided) throw InputError("use two_sided_report for the two-sided case");
  const Algebra a = side == Side::left ? r : opposite_algebra(r);
  LocalizationReport rep;
  rep.side = side;
  rep.label = r.label();
  rep.p = r.p();
  rep.dim = r.dim();
  rep.s = fam.s();
  rep.block_dims = fam.block_dims;
  rep.block_commutative = fam.block_commutative;
  rep.rad = fam.rad;
  rep.tri = left_triangular_idempotents(a, fam);

  std::set<std::pair<std::size_t, Vec>> distinct;
  for (auto& entry : rep.tri.entries) {
    LocEntry le;
    le.set = entry.set;
    le.e = entry.e;
    le.ass = complement_right_ideal(a, entry.e);
    ensure(is_closed(a, le.ass.space, Side::twosided), "(1-e_I)R is not an ideal");
    le.ass.side = Side::twosided;
    le.quotient_dim = a.dim() - le.ass.dim();
    ensure(distinct.insert({le.ass.dim(), le.ass.space.basis().data()}).second, "two e_I give the same ass ideal");
    rep.loc_entries.push_back(std::move(le));
  }

  std::vector<Ideal> min_ass;
  Element sum_min = a.zero();
  for (auto m : rep.tri.minima) {
    rep.max_den.push_back(make_descriptor(a, rep.tri.entries[m].e, DenKind::maximal));
    min_ass.push_back(rep.max_den.back().ass);
    sum_min = a.add(sum_min, rep.tri.entries[m].e);
  }
  ensure(rep.max_den.size() <= rep.s, "more maximal denominator sets than blocks");
  if (rep.rad.is_zero()) ensure(rep.max_den.size() == rep.s, "semisimple ring with fewer than s maximal denominator sets");
  {
    bool all_central = std::all_of(fam.idempotents.begin(), fam.idempotents.end(),
                                   [&](const Element& e) { return a.is_central(e); });
    ensure((rep.max_den.size() == rep.s) == all_central, "|max.Den| = s does not match centrality of the 1_i");
  }

  Ideal by_intersection = detail::intersect_all(a, min_ass);
  Ideal by_product = detail::multiply_all(a, min_ass);
  Ideal closed_form = complement_right_ideal(a, sum_min);
  ensure(is_left_triangular(a, sum_min), "sum of minima is not left triangular");
  ensure(by_intersection == by_product && by_product == closed_form, "three forms of the localization radical differ");
  rep.l_rad = by_intersection;
  ensure(ideal_combine(a, rep.l_rad, rep.l_rad, IdealOp::product) == rep.l_rad, "l^2 != l");

  std::vector<Ideal> nonzero;
  for (auto& le : rep.loc_entries)
    if (!le.ass.is_zero()) nonzero.push_back(le.ass);
  if (nonzero.empty()) {
    rep.little_rad = zero_ideal(a);
  } else {
    rep.little_rad = detail::intersect_all(a, nonzero);
    ensure(rep.little_rad == detail::multiply_all(a, nonzero), "little radical: product differs from intersection");
  }

  rep.flags.localization_maximal = rep.tri.entries.size() == 1;
  rep.flags.semisimple = rep.rad.is_zero();
  rep.flags.is_direct_product_of_loc_max = rep.l_rad.is_zero();

  rep.nl_ideal = std::all_of(rep.max_den.begin(), rep.max_den.end(), [](const DenSetDescriptor& d) {
    const Algebra& q = d.quotient.algebra;
    IdempotentFamily qf = block_decomposition(q);
    return qf.rad.is_zero() && qf.s() == 1 && q.is_commutative();
  });

  rep.bundle = detail::completely_localizable_bundle(a, fam, rep, opt.guard);
  ensure(rep.bundle.consistent(), "conditions for C_l(R) = R* disagree");
  rep.flags.completely_loc_equals_units = rep.bundle.c_equals_units;
  ensure(rep.flags.completely_loc_equals_units == rep.flags.is_direct_product_of_loc_max,
         "C_l(R) = R* disagrees with l = 0");
  return rep;
}

inline LocalizationReport localization_report(const Algebra& a, Side side = Side::left, const ReportOptions& opt = {}) {
  return localization_report(a, block_decomposition(a), side, opt);
}

/// The algebra a report's elements multiply in: R for left, R^op for right.
inline Algebra report_algebra(const Algebra& r, const LocalizationReport& rep) {
  return rep.side == Side::left ? r : opposite_algebra(r);
}

inline ElementClass classify_element(const Algebra& r, const Element& x, const LocalizationReport& rep) {
  return classify_in(report_algebra(r, rep), rep.max_den, rep.tri, x);
}

/// Every R/(1-e)R, e minimal, is a division ring (for finite rings: a field).
inline bool nl_ideal_test(const LocalizationReport& rep) { return rep.nl_ideal; }

/// Identities of the ass ideals and the radicals, each as a flag.
struct AssIdentities {
  bool idempotent = true;           // a^2 = a
  bool product_is_intersection = true;  // a a' = a cap a' = a' a
  bool complement = true;           // a + eR = R, a cap eR = 0
  bool l_in_rad_iff_zero = true;
  bool little_in_l = true;
};

inline AssIdentities check_ass_identities(const Algebra& r, const LocalizationReport& rep) {
  const Algebra a = report_algebra(r, rep);
  AssIdentities out;
  for (auto& x : rep.loc_entries) {
    if (!(ideal_combine(a, x.ass, x.ass, IdealOp::product) == x.ass)) out.idempotent = false;
    auto rel = subspace_ops(x.ass.space, principal_right_ideal(a, x.e));
    if (!rel.sum.is_full() || !rel.intersection.is_zero()) out.complement = false;
    for (auto& y : rep.loc_entries) {
      Ideal xy = ideal_combine(a, x.ass, y.ass, IdealOp::product);
      Ideal yx = ideal_combine(a, y.ass, x.ass, IdealOp::product);
      Ideal meet = ideal_combine(a, x.ass, y.ass, IdealOp::intersection);
      if (!(xy == meet && yx == meet)) out.product_is_intersection = false;
    }
  }
  out.l_in_rad_iff_zero = rep.rad.space.contains(rep.l_rad.space) == rep.l_rad.is_zero();
  out.little_in_l = rep.l_rad.space.contains(rep.little_rad.space);
  return out;
}

// ---------------------------------------------------------------------------

struct DualityReport {
  LocalizationReport left;
  LocalizationReport right;
  std::vector<std::pair<BlockSet, BlockSet>> pairing;  // I -> complement of I, over the proper e_I
  bool pairing_bijective = false;
  bool order_reversing = false;
  bool counts_equal = false;
  bool l_zero_iff_r_zero = false;
  bool loc_max_equivalent = false;
  bool l_neq_r = false;
};

inline DualityReport duality_report(const Algebra& a, const ReportOptions& opt = {}) {
  IdempotentFamily fam = block_decomposition(a);
  DualityReport d;
  d.left = localization_report(a, fam, Side::left, opt);
  d.right = localization_report(a, fam, Side::right, opt);
  const BlockSet all = full_blockset(fam.s());
  std::vector<BlockSet> proper_l, proper_r;
  for (auto& e : d.left.tri.entries)
    if (e.set != all) proper_l.push_back(e.set);
  for (auto& e : d.right.tri.entries)
    if (e.set != all) proper_r.push_back(e.set);
  std::set<BlockSet> image;
  d.pairing_bijective = true;
  for (auto i : proper_l) {
    BlockSet ci = all & ~i;
    d.pairing.emplace_back(i, ci);
    if (std::find(proper_r.begin(), proper_r.end(), ci) == proper_r.end()) d.pairing_bijective = false;
    image.insert(ci);
  }
  if (image.size() != proper_r.size()) d.pairing_bijective = false;
  d.order_reversing = true;
  for (auto& [i, ci] : d.pairing)
    for (auto& [j, cj] : d.pairing)
      if (blockset_contains(j, i) != blockset_contains(ci, cj)) d.order_reversing = false;
  d.counts_equal = d.left.loc_count() == d.right.loc_count();
  d.l_zero_iff_r_zero = d.left.l_rad.is_zero() == d.right.l_rad.is_zero();
  d.loc_max_equivalent = d.left.flags.localization_maximal == d.right.flags.localization_maximal;
  d.l_neq_r = !(d.left.l_rad.space == d.right.l_rad.space);
  return d;
}

// ---------------------------------------------------------------------------

/// Two-sided theory: R = R_1 x ... x R_t along its primitive central idempotents.
struct TwoSidedReport {
  std::size_t t = 0;
  std::vector<Element> central_idempotents;
  std::vector<std::size_t> factor_dims;
  std::size_t loc_count = 0;
  std::vector<BlockSet> idempotent_sets;  // all nonempty I, ordered by (size, lex)
};

inline TwoSidedReport two_sided_report(const Algebra& a) {
  TwoSidedReport rep;
  rep.central_idempotents = primitive_central_idempotents(a);
  rep.t = rep.central_idempotents.size();
  check_subset_guard(rep.t);
  for (auto& c : rep.central_idempotents) rep.factor_dims.push_back(principal_right_ideal(a, c).dim());
  for (BlockSet b = 1; b <= full_blockset(rep.t); ++b) {
    Element e = a.zero();
    for (auto i : blockset_members(b)) e = a.add(e, rep.central_idempotents[i]);
    if (is_left_triangular(a, e) && is_right_triangular(a, e)) rep.idempotent_sets.push_back(b);
  }
  std::sort(rep.idempotent_sets.begin(), rep.idempotent_sets.end(), blockset_less);
  rep.loc_count = rep.idempotent_sets.size();
  ensure(rep.loc_count == full_blockset(rep.t), "number of two-sided localizations is not 2^t - 1");
  return rep;
}

inline Element central_sum(const Algebra& a, const TwoSidedReport& rep, BlockSet set) {
  Element e = a.zero();
  for (auto i : blockset_members(set)) e = a.add(e, rep.central_idempotents.at(i));
  return e;
}

enum class ComponentKind { unit, nilpotent, other };

struct TwoSidedPowersVerdict {
  bool is_den = false;
  bool nilpotent = false;
  std::vector<ComponentKind> components;
  BlockSet unit_factors = 0;
  Element e;  // sum of central idempotents of the unit components
  Ideal ass;  // (1-e)R

  /// Core: (1-e)s = 0.
  bool in_core(const Algebra& a, const Element& x) const { return a.mul(a.sub(a.one(), e), x).is_zero(); }
};

/// Powers of r form a denominator set iff r is not nilpotent and each factor component of r
/// is a unit or nilpotent.
inline TwoSidedPowersVerdict two_sided_powers_criterion(const Algebra& a, const TwoSidedReport& rep, const Element& r) {
  a.check(r);
  TwoSidedPowersVerdict v;
  v.nilpotent = a.is_nilpotent(r);
  bool ok = !v.nilpotent;
  for (std::size_t i = 0; i < rep.t; ++i) {
    const Element& c = rep.central_idempotents[i];
    Element comp = a.mul(c, r);
    if (a.is_unit_in_corner(comp, c)) {
      v.components.push_back(ComponentKind::unit);
      v.unit_factors |= BlockSet{1} << i;
    } else if (a.is_nilpotent(comp)) {
      v.components.push_back(ComponentKind::nilpotent);
    } else {
      v.components.push_back(ComponentKind::other);
      ok = false;
    }
  }
  v.is_den = ok;
  if (ok) {
    v.e = central_sum(a, rep, v.unit_factors);
    v.ass = complement_right_ideal(a, v.e);
    v.ass.side = Side::twosided;
  }
  return v;
}

/// Membership in the i-th maximal two-sided denominator set: the i-th component is a unit.
inline bool in_two_sided_max_den(const Algebra& a, const TwoSidedReport& rep, std::size_t i, const Element& r) {
  const Element& c = rep.central_idempotents.at(i);
  return a.is_unit_in_corner(a.mul(c, r), c);
}

}  // namespace artinloc
