// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "artinloc/localization.hpp"
#include "artinloc/oracle.hpp"
#include "artinloc/structure.hpp"
#include "fixtures.hpp"

using namespace artinloc;
using oracle::kDefaultGuard;

namespace {

// Collects failed expectations of one criterion.
struct Check {
  std::vector<std::string> failures;
  void operator()(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

Element mat_elem(const Algebra& a, std::size_t n, std::vector<std::vector<std::int64_t>> rows) {
  return a.element_from_matrix(Mat::from_rows(rows, n, a.p()));
}

Element diag_sum(const Algebra& a, std::size_t n, std::size_t from, std::size_t to) {
  Mat m(n, n, a.p());
  for (std::size_t j = from; j < to; ++j) m(j, j) = 1;
  return a.element_from_matrix(m);
}

std::vector<Element> powers_from(const Algebra& a, const Element& s, std::uint64_t m) {
  std::set<Element> seen;
  for (Element x = a.pow(s, m); seen.insert(x).second; x = a.mul(x, s)) {}
  return {seen.begin(), seen.end()};
}

std::vector<Algebra> small_rings() { return {fixtures::L2_5(), fixtures::U2_5(), fixtures::T5(), fixtures::F5F5()}; }

// Triangular ring of size n: minimum e, chain of entries, radical (1 - e)R, quotient GF(p).
void triangular_case(Check& check, const Algebra& a, std::size_t n, bool lower) {
  const std::string tag = a.label() + ": ";
  const auto t0 = std::chrono::steady_clock::now();
  LocalizationReport rep = localization_report(a, Side::left);
  check(rep.loc_count() == n, tag + "|Loc_l| != n");
  std::set<Element> expected, found;
  for (std::size_t k = 1; k <= n; ++k) expected.insert(lower ? diag_sum(a, n, 0, k) : diag_sum(a, n, n - k, n));
  for (auto& entry : rep.tri.entries) found.insert(entry.e);
  check(found == expected, tag + "entries are not the diagonal segments");
  const Element corner = lower ? diag_sum(a, n, 0, 1) : diag_sum(a, n, n - 1, n);
  check(rep.tri.minima.size() == 1 && rep.tri.entries[rep.tri.minima[0]].e == corner, tag + "minima != {corner unit}");
  check(rep.max_den.size() == 1, tag + "|max.Den_l| != 1");
  if (rep.max_den.size() == 1) {
    check(rep.max_den[0].quotient.algebra.dim() == 1, tag + "maximal quotient is not 1-dimensional");
    check(rep.max_den[0].quotient.algebra.is_commutative(), tag + "maximal quotient is not a field");
  }
  Element f = a.sub(a.one(), corner);
  Mat gens(0, a.dim(), a.p());
  for (std::size_t k = 0; k < a.dim(); ++k) gens.append_row(a.mul(f, a.basis(k)).coeffs());
  check(rep.l_rad.space == Subspace::span(gens), tag + "l != (1 - corner)R");
  DualityReport d = duality_report(a);
  check(!(d.left.l_rad.space == d.right.l_rad.space), tag + "l == r");
  check(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(1), tag + "runtime over 1 s");
}

bool criterion1(Check& check) {
  for (std::size_t n : {2u, 3u}) {
    triangular_case(check, lower_triangular(n, 7), n, true);
    triangular_case(check, upper_triangular(n, 7), n, false);
  }
  return true;
}

bool criterion2(Check& check) {
  LocalizationReport p1 = localization_report(fixtures::P1(), Side::left);
  check(p1.s == 2, "P1: s != 2");
  check(p1.max_den.size() == 2, "P1: |max.Den_l| != 2");
  check(radical(fixtures::P1()).is_zero() && p1.flags.semisimple, "P1 not semisimple");
  check(two_sided_report(fixtures::P1()).loc_count == 3, "P1: two-sided loc_count != 3");
  LocalizationReport m2 = localization_report(fixtures::M2_7(), Side::left);
  check(m2.tri.entries.size() == 1 && m2.tri.entries[0].e == fixtures::M2_7().one(), "M2: I'_l != {1}");
  check(m2.flags.localization_maximal, "M2: not localization-maximal");
  return true;
}

bool criterion3(Check& check) {
  Algebra a = fixtures::L2_7();
  Element s = mat_elem(a, 2, {{2, 0}, {1, 0}});
  Element e11 = mat_elem(a, 2, {{1, 0}, {0, 0}});
  PowersVerdict v = powers_denominator_criterion(a, s);
  check(v.is_den, "powers criterion false");
  if (!v.is_den) return true;
  const Ideal& ass = v.descriptor->ass;
  check(ass == complement_right_ideal(a, e11), "ass != (1 - E11)R");
  bool left_zero = true, right_nonzero = false;
  for (auto& x : oracle::subspace_elements(ass.space, kDefaultGuard)) {
    left_zero = left_zero && a.mul(s, x).is_zero();
    right_nonzero = right_nonzero || !a.mul(x, s).is_zero();
  }
  check(left_zero, "s.a != 0");
  check(right_nonzero, "a.s == 0");
  check(v.descriptor->core_min_exponent == std::optional<std::uint64_t>{1}, "core exponent != 1");
  auto brute = oracle::brute_denominator_check(a, oracle::monoid_closure(a, {s}, kDefaultGuard), Side::left, kDefaultGuard);
  check(brute.is_den && brute.core == powers_from(a, s, 1), "oracle core != {s^i : i >= 1}");
  check(brute.ass && brute.ass->space == ass.space, "oracle ass differs");
  DenSetDescriptor idem = make_descriptor(a, e11, DenKind::idempotent);
  check(idempotent_denominator_check(a, e11).left, "{1, E11} not a left denominator set");
  check(idem.ass == ass, "S_E11 and powers give different ass");
  check(idem.quotient.algebra == v.descriptor->quotient.algebra, "S_E11 and powers give different quotients");
  check(v.descriptor->quotient.algebra.dim() == 1, "quotient is not 1-dimensional");
  LocalizationReport rep = localization_report(a, Side::left);
  bool listed = false;
  for (auto& le : rep.loc_entries) listed = listed || (le.ass == ass && le.quotient_dim == 1);
  check(listed, "localization not listed in Loc_l");
  return true;
}

bool criterion4(Check& check) {
  for (auto& a : small_rings()) {
    const auto n = oracle::element_count(a, kDefaultGuard);
    for (std::uint64_t k = 0; k < n; ++k) {
      Element s = oracle::element_at(a, k);
      PowersVerdict v = powers_denominator_criterion(a, s);
      auto r = oracle::brute_denominator_check(a, oracle::monoid_closure(a, {s}, kDefaultGuard), Side::left, kDefaultGuard);
      const std::string tag = a.label() + " s#" + std::to_string(k);
      check(v.is_den == r.is_den, tag + ": verdict");
      if (v.is_den && r.is_den) {
        check(r.ass && r.ass->space == v.descriptor->ass.space, tag + ": ass");
        check(r.core == powers_from(a, s, *v.descriptor->core_min_exponent), tag + ": core");
      }
    }
    for (auto& e : oracle::brute_idempotents(a, kDefaultGuard).members) {
      if (e.is_zero()) continue;
      IdempotentCheck c = idempotent_denominator_check(a, e);
      auto set = oracle::make_set({a.one(), e});
      check(c.left == oracle::brute_denominator_check(a, set, Side::left, kDefaultGuard).is_den, a.label() + ": idempotent left");
      check(c.right == oracle::brute_denominator_check(a, set, Side::right, kDefaultGuard).is_den, a.label() + ": idempotent right");
      Element f = a.sub(a.one(), e);
      bool tri = true;  // e R (1-e) = 0
      for (std::size_t k = 0; k < a.dim(); ++k) tri = tri && a.mul(a.mul(e, a.basis(k)), f).is_zero();
      check(c.left == tri, a.label() + ": left verdict != (eR(1-e) = 0)");
    }
  }
  return true;
}

bool criterion5(Check& check) {
  for (auto& f : fixtures::all()) {
    IdempotentFamily fam = block_decomposition(f.algebra);
    if (f.enumerable) check(fam.rad == oracle::brute_radical(f.algebra, kDefaultGuard), f.name + ": radical != brute");
    check(radical(fam.rbar.algebra).is_zero(), f.name + ": rad(R/rad) != 0");
  }
  return true;
}

Ideal two_sided(const Ideal& i) { return {i.space, Side::twosided}; }

bool criterion6(Check& check) {
  for (auto& f : fixtures::all()) {
    for (Side side : {Side::left, Side::right}) {
      LocalizationReport rep = localization_report(f.algebra, side);
      const Algebra a = report_algebra(f.algebra, rep);
      const std::string tag = f.name + " " + to_string(side) + ": ";
      for (auto& x : rep.loc_entries) {
        check(ideal_combine(a, x.ass, x.ass, IdealOp::product) == x.ass, tag + "a^2 != a");
        auto rel = subspace_ops(x.ass.space, principal_right_ideal(a, x.e));
        check(rel.sum.is_full() && rel.intersection.is_zero(), tag + "a + eR != R");
        for (auto& y : rep.loc_entries) {
          Ideal meet = ideal_combine(a, x.ass, y.ass, IdealOp::intersection);
          check(ideal_combine(a, x.ass, y.ass, IdealOp::product) == meet, tag + "aa' != a cap a'");
          check(ideal_combine(a, y.ass, x.ass, IdealOp::product) == meet, tag + "a'a != a cap a'");
        }
      }
      Ideal by_meet{Subspace::full(a.dim(), a.p()), Side::twosided};
      Ideal by_product = by_meet;
      Element sum = a.zero();
      for (auto m : rep.tri.minima) {
        const Element& e = rep.tri.entries[m].e;
        Ideal c = two_sided(complement_right_ideal(a, e));
        by_meet = ideal_combine(a, by_meet, c, IdealOp::intersection);
        by_product = ideal_combine(a, by_product, c, IdealOp::product);
        sum = a.add(sum, e);
      }
      Ideal closed = two_sided(complement_right_ideal(a, sum));
      check(by_meet == closed && by_product == closed && rep.l_rad == closed, tag + "three forms of l differ");
      check(rep.rad.space.contains(rep.l_rad.space) == rep.l_rad.is_zero(), tag + "l in rad but l != 0");
      check(rep.l_rad.space.contains(rep.little_rad.space), tag + "l' not in l");
    }
  }
  LocalizationReport l3 = localization_report(fixtures::L3_7(), Side::left);
  check(l3.little_rad.dim() == 3 && l3.l_rad.dim() == 5, "L3_7: dims of l', l != 3, 5");
  return true;
}

bool criterion7(Check& check) {
  for (auto& f : fixtures::all()) {
    DualityReport d = duality_report(f.algebra);
    const std::string tag = f.name + ": ";
    check(d.left.loc_count() == d.right.loc_count(), tag + "|Loc_l| != |Loc_r|");
    check(d.pairing_bijective && d.order_reversing, tag + "pairing");
    check(d.left.l_rad.is_zero() == d.right.l_rad.is_zero(), tag + "(l = 0) != (r = 0)");
    // Independently: the proper left sets complement to proper right sets, reversing inclusion.
    const BlockSet full = full_blockset(d.left.s);
    std::set<BlockSet> left, right;
    for (auto& x : d.left.tri.entries)
      if (x.set != full) left.insert(x.set);
    for (auto& x : d.right.tri.entries)
      if (x.set != full) right.insert(x.set);
    std::set<BlockSet> mapped;
    for (auto b : left) mapped.insert(full & ~b);
    check(mapped == right, tag + "complements of left sets != right sets");
  }
  return true;
}

bool criterion8(Check& check) {
  for (auto& f : fixtures::all())
    for (Side side : {Side::left, Side::right}) {
      LocalizationReport rep = localization_report(f.algebra, side);
      check(rep.bundle.consistent(), f.name + ": the five conditions disagree");
      if (f.enumerable && side == Side::left) {
        // C_l(R) = R* by enumeration: every completely localizable element is a unit.
        const auto n = oracle::element_count(f.algebra, kDefaultGuard);
        bool equal = true;
        for (std::uint64_t k = 0; k < n && equal; ++k) {
          Element x = oracle::element_at(f.algebra, k);
          equal = classify_element(f.algebra, x, rep).completely == f.algebra.is_unit(x);
        }
        check(equal == rep.bundle.c_equals_units, f.name + ": C_l = R* by enumeration disagrees");
      }
    }
  std::mt19937_64 rng(8);
  for (auto& a : small_rings()) {
    const auto n = oracle::element_count(a, kDefaultGuard);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    for (int t = 0; t < 200; ++t) {
      std::vector<Element> gens{oracle::element_at(a, pick(rng))};
      if (t % 2) gens.push_back(oracle::element_at(a, pick(rng)));
      MonoidVerdict v = monoid_denominator_decision(a, gens, kDefaultGuard);
      auto r = oracle::brute_denominator_check(a, oracle::monoid_closure(a, gens, kDefaultGuard), Side::left, kDefaultGuard);
      check(v.is_den == r.is_den, a.label() + ": monoid verdict");
      if (v.is_den && r.is_den) check(r.ass && r.ass->space == v.descriptor->ass.space, a.label() + ": monoid ass");
    }
  }
  for (auto a : {fixtures::P1(), fixtures::T7xF7()}) {
    TwoSidedReport tr = two_sided_report(a);
    const auto n = oracle::element_count(a, kDefaultGuard);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    for (int t = 0; t < 100; ++t) {
      Element r = oracle::element_at(a, pick(rng));
      TwoSidedPowersVerdict v = two_sided_powers_criterion(a, tr, r);
      auto b = oracle::brute_denominator_check(a, oracle::monoid_closure(a, {r}, kDefaultGuard), Side::twosided, kDefaultGuard);
      check(v.is_den == b.is_den, a.label() + ": two-sided verdict");
      if (v.is_den && b.is_den) check(b.ass && b.ass->space == v.ass.space, a.label() + ": two-sided ass");
    }
  }
  return true;
}

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;  // 0: no limit
  std::function<bool(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "triangular rings L_n, U_n", 0.0, criterion1},
      {2, "counting on P1 and M2", 1.0, criterion2},
      {3, "powers of [[2,0],[1,0]] in L2", 1.0, criterion3},
      {4, "oracle sweep of powers and idempotents", 60.0, criterion4},
      {5, "radical cross-check", 0.0, criterion5},
      {6, "ass identities and localization radicals", 0.0, criterion6},
      {7, "left/right duality", 0.0, criterion7},
      {8, "equivalence bundles and random monoids", 120.0, criterion8},
  };
  int failed = 0;
  for (auto& c : criteria) {
    Check check;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) check(false, "runtime over limit");
    const bool ok = check.failures.empty();
    failed += !ok;
    std::printf("criterion %d: %s (%.2f s) %s\n", c.number, ok ? "PASS" : "FAIL", secs, c.title.c_str());
    for (std::size_t i = 0; i < check.failures.size() && i < 10; ++i) std::printf("    %s\n", check.failures[i].c_str());
    if (check.failures.size() > 10) std::printf("    ... %zu more\n", check.failures.size() - 10);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
