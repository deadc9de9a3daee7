#pragma once

// Brute-force checks straight from the definitions, for finite rings small enough to
// enumerate. Elements are indexed base p with the first coordinate most significant,
// which is also the canonical element order.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "artinloc/algebra.hpp"
#include "artinloc/errors.hpp"
#include "artinloc/exactcore.hpp"

namespace artinloc::oracle {

inline constexpr std::uint64_t kDefaultGuard = std::uint64_t{1} << 20;

/// p^dim, or ResourceError when it exceeds the guard.
inline std::uint64_t element_count(const Algebra& a, std::uint64_t guard) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (n > guard / a.p())
      throw ResourceError("ring has more than " + std::to_string(guard) + " elements (p^dim = " +
                          std::to_string(a.p()) + "^" + std::to_string(a.dim()) + ")");
    n *= a.p();
  }
  return n;
}

inline Element element_at(const Algebra& a, std::uint64_t index) {
  Vec v(a.dim());
  for (std::size_t i = a.dim(); i-- > 0;) {
    v[i] = static_cast<Residue>(index % a.p());
    index /= a.p();
  }
  return {std::move(v), a.p()};
}

inline std::uint64_t index_of(const Element& x) {
  std::uint64_t n = 0;
  for (auto c : x.coeffs()) n = n * x.modulus() + c;
  return n;
}

/// Every element of a subspace, in canonical order of the ambient ring.
inline std::vector<Element> subspace_elements(const Subspace& v, std::uint64_t guard) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (n > guard / v.modulus()) throw ResourceError("subspace too large to enumerate");
    n *= v.modulus();
  }
  std::vector<Element> out;
  out.reserve(n);
  Vec coords(v.dim(), 0);
  for (std::uint64_t k = 0; k < n; ++k) {
    std::uint64_t idx = k;
    for (std::size_t i = v.dim(); i-- > 0;) {
      coords[i] = static_cast<Residue>(idx % v.modulus());
      idx /= v.modulus();
    }
    out.emplace_back(v.combine(coords), v.modulus());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Calls f on every element of v (unordered) until f returns false; false if stopped early.
template <class F>
bool for_each_in_subspace(const Subspace& v, std::uint64_t guard, F&& f) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (n > guard / v.modulus()) throw ResourceError("subspace too large to enumerate");
    n *= v.modulus();
  }
  Vec coords(v.dim(), 0);
  for (std::uint64_t k = 0; k < n; ++k) {
    if (!f(Element(v.combine(coords), v.modulus()))) return false;
    for (std::size_t i = v.dim(); i-- > 0;) {
      if (++coords[i] < v.modulus()) break;
      coords[i] = 0;
    }
  }
  return true;
}

/// Explicit set of elements, deduplicated and canonically ordered.
struct FiniteSet {
  std::vector<Element> members;
  bool contains_zero = false;

  std::size_t size() const { return members.size(); }
  bool contains(const Element& x) const { return std::binary_search(members.begin(), members.end(), x); }
};

inline FiniteSet make_set(std::vector<Element> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  FiniteSet s;
  s.contains_zero = std::any_of(xs.begin(), xs.end(), [](const Element& x) { return x.is_zero(); });
  s.members = std::move(xs);
  return s;
}

/// Closure of gens and 1 under multiplication.
inline FiniteSet monoid_closure(const Algebra& a, const std::vector<Element>& gens, std::uint64_t guard) {
  if (guard < 1) throw InputError("guard must be at least 1");
  for (auto& g : gens) a.check(g);
  std::set<Element> seen{a.one()};
  std::deque<Element> queue{a.one()};
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    for (auto& g : gens) {
      Element y = a.mul(x, g);
      if (seen.insert(y).second) {
        if (seen.size() > guard)
          throw ResourceError("monoid closure exceeds guard of " + std::to_string(guard) + " elements");
        queue.push_back(y);
      }
    }
  }
  return make_set(std::vector<Element>(seen.begin(), seen.end()));
}

inline bool is_unit(const Algebra& a, const Element& x) { return rank(a.regular_matrix(x, Side::left)) == a.dim(); }

/// Unit flags for every element, indexed canonically.
inline std::vector<bool> unit_table(const Algebra& a, std::uint64_t guard) {
  const std::uint64_t n = element_count(a, guard);
  std::vector<bool> units(n);
  for (std::uint64_t k = 0; k < n; ++k) units[k] = is_unit(a, element_at(a, k));
  return units;
}

struct BruteResult {
  bool is_ore = false;
  bool is_reversible = false;
  bool is_den = false;
  std::optional<Ideal> ass;     // set only when the annihilated set is a subspace
  std::vector<Element> core;    // {s in S : ker(s.) = ass}, canonical order
  std::optional<std::pair<Element, Element>> counterexample;  // (s, r)
  std::string failure;
};

namespace detail {

// Deduplicated list of subspaces whose union is being tested.
struct SubspaceUnion {
  std::vector<Subspace> parts;

  void add(Subspace v) {
    if (std::find(parts.begin(), parts.end(), v) == parts.end()) parts.push_back(std::move(v));
  }
  bool contains(std::span<const Residue> x) const {
    return std::any_of(parts.begin(), parts.end(), [&](const Subspace& v) { return v.contains(x); });
  }
};

// First element (canonical order) of `target` not in the union, or nullopt if covered.
// If one piece contains the target no scan is needed. Otherwise the scan is cut short by the
// first uncovered element, which must exist when at most p pieces are present (a GF(p)-space
// is never a union of p or fewer proper subspaces).
inline std::optional<Element> first_uncovered(const Algebra& a, const Subspace& target, SubspaceUnion& u,
                                              std::uint64_t guard) {
  for (auto& v : u.parts)
    if (v.contains(target)) return std::nullopt;
  const std::uint64_t n = element_count(a, guard);
  for (std::uint64_t k = 0; k < n; ++k) {
    Element r = element_at(a, k);
    if (!target.contains(r.coeffs())) continue;
    if (!u.contains(r.coeffs())) return r;
  }
  return std::nullopt;
}

inline BruteResult left_check(const Algebra& a, const FiniteSet& s, std::uint64_t guard) {
  BruteResult res;
  if (s.contains_zero) {
    res.failure = "0 lies in S";
    return res;
  }
  const Subspace whole = Subspace::full(a.dim(), a.p());
  std::vector<Mat> left_maps;
  for (auto& x : s.members) left_maps.push_back(a.regular_matrix(x, Side::left));

  // Ore: for every s and r there is s' with s'r in Rs.
  // The condition for s only depends on Rs.
  res.is_ore = true;
  std::vector<Subspace> seen;
  for (std::size_t i = 0; i < s.size() && res.is_ore; ++i) {
    Subspace rs = Subspace::span(a.regular_matrix(s.members[i], Side::right));
    if (std::find(seen.begin(), seen.end(), rs) != seen.end()) continue;
    Mat reduce = rs.reduction_matrix();
    SubspaceUnion u;
    for (auto& lm : left_maps) {
      u.add(kernel(lm * reduce));
      if (u.parts.back().contains(whole)) break;
    }
    seen.push_back(std::move(rs));
    if (auto r = first_uncovered(a, whole, u, guard)) {
      res.is_ore = false;
      res.counterexample = {{s.members[i], *r}};
      res.failure = "left Ore condition fails";
    }
  }

  // Annihilated set {r : s r = 0 for some s}.
  SubspaceUnion ann;
  for (auto& lm : left_maps) ann.add(kernel(lm));
  Subspace largest = ann.parts.front();
  for (auto& v : ann.parts)
    if (v.dim() > largest.dim()) largest = v;
  bool chain = std::all_of(ann.parts.begin(), ann.parts.end(), [&](const Subspace& v) { return largest.contains(v); });
  if (chain) res.ass = Ideal{largest, Side::twosided};

  // Reversibility: r s = 0 implies t r = 0 for some t.
  res.is_reversible = true;
  std::vector<Subspace> checked;
  for (std::size_t i = 0; i < s.size() && res.is_reversible; ++i) {
    Subspace ks = kernel(a.regular_matrix(s.members[i], Side::right));
    if (std::find(checked.begin(), checked.end(), ks) != checked.end()) continue;
    checked.push_back(ks);
    if (auto r = first_uncovered(a, ks, ann, guard)) {
      res.is_reversible = false;
      if (res.is_ore) {
        res.counterexample = {{s.members[i], *r}};
        res.failure = "left reversibility fails";
      }
    }
  }

  res.is_den = res.is_ore && res.is_reversible;
  if (res.is_den) {
    ensure(res.ass.has_value(), "ass of a left denominator set is not a subspace");
    ensure(is_closed(a, res.ass->space, Side::twosided), "ass of a left denominator set is not an ideal");
    for (std::size_t i = 0; i < s.size(); ++i)
      if (kernel(left_maps[i]) == res.ass->space) res.core.push_back(s.members[i]);
  }
  return res;
}

}  // namespace detail

/// Definitional left / right / two-sided denominator check of an explicit set.
inline BruteResult brute_denominator_check(const Algebra& a, const FiniteSet& s, Side side, std::uint64_t guard) {
  for (auto& x : s.members) a.check(x);
  if (side == Side::left) return detail::left_check(a, s, guard);
  Algebra op = opposite_algebra(a);
  if (side == Side::right) return detail::left_check(op, s, guard);
  BruteResult l = detail::left_check(a, s, guard);
  BruteResult r = detail::left_check(op, s, guard);
  BruteResult out;
  out.is_ore = l.is_ore && r.is_ore;
  out.is_reversible = l.is_reversible && r.is_reversible;
  out.is_den = l.is_den && r.is_den;
  if (!l.is_den) {
    out.counterexample = l.counterexample;
    out.failure = l.failure;
  } else if (!r.is_den) {
    out.counterexample = r.counterexample;
    out.failure = r.failure.empty() ? "" : "right: " + r.failure;
  }
  if (out.is_den) {
    ensure(l.ass && r.ass && l.ass->space == r.ass->space, "left and right ass differ for a denominator set");
    out.ass = l.ass;
    std::set_intersection(l.core.begin(), l.core.end(), r.core.begin(), r.core.end(), std::back_inserter(out.core));
  }
  return out;
}

/// {x : 1 - y is a unit for every y in Rx}.
inline Ideal brute_radical(const Algebra& a, std::uint64_t guard) {
  const std::uint64_t n = element_count(a, guard);
  std::vector<bool> units = unit_table(a, guard);
  std::vector<Element> members;
  for (std::uint64_t k = 0; k < n; ++k) {
    Element x = element_at(a, k);
    Subspace rx = Subspace::span(a.regular_matrix(x, Side::right));
    bool quasi_regular =
        for_each_in_subspace(rx, guard, [&](const Element& y) { return bool(units[index_of(a.sub(a.one(), y))]); });
    if (quasi_regular) members.push_back(x);
  }
  Mat m(0, a.dim(), a.p());
  for (auto& x : members) m.append_row(x.coeffs());
  Ideal rad{Subspace::span(m), Side::twosided};
  ensure(subspace_elements(rad.space, guard).size() == members.size(), "quasi-regular elements do not form a subspace");
  ensure(is_closed(a, rad.space, Side::twosided), "quasi-regular elements do not form an ideal");
  ensure(is_nilpotent_ideal(a, rad), "brute radical is not nilpotent");
  return rad;
}

inline FiniteSet brute_idempotents(const Algebra& a, std::uint64_t guard) {
  const std::uint64_t n = element_count(a, guard);
  std::vector<Element> out;
  for (std::uint64_t k = 0; k < n; ++k) {
    Element x = element_at(a, k);
    if (a.mul(x, x) == x) out.push_back(std::move(x));
  }
  return make_set(std::move(out));
}

}  // namespace artinloc::oracle
