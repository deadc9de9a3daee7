#pragma once

// Test rings shared by the unit suites and the acceptance runner.

#include <string>
#include <vector>

#include "artinloc/algebra.hpp"
#include "artinloc/oracle.hpp"

namespace fixtures {

using namespace artinloc;

inline Algebra product(std::vector<Algebra> fs) { return direct_product(fs).algebra; }

inline Algebra L2_7() { return lower_triangular(2, 7); }
inline Algebra L3_7() { return lower_triangular(3, 7); }
inline Algebra U2_7() { return upper_triangular(2, 7); }
inline Algebra U3_7() { return upper_triangular(3, 7); }
inline Algebra M2_7() { return full_matrix(2, 7); }
inline Algebra T7() { return truncated_poly(2, 7); }
inline Algebra F7F7() { return product({prime_field(7), prime_field(7)}); }
inline Algebra P1() { return product({full_matrix(2, 7), prime_field(7)}); }
inline Algebra L2_5() { return lower_triangular(2, 5); }
inline Algebra U2_5() { return upper_triangular(2, 5); }
inline Algebra T5() { return truncated_poly(2, 5); }
inline Algebra F5F5() { return product({prime_field(5), prime_field(5)}); }
inline Algebra T7xF7() { return product({truncated_poly(2, 7), prime_field(7)}); }
inline Algebra L2_7xF7() { return product({lower_triangular(2, 7), prime_field(7)}); }
inline Algebra L3_7op() { return opposite_algebra(lower_triangular(3, 7)); }

/// Generated by [[2,0],[1,0]] in M_2(GF(7)): a split two-dimensional commutative algebra.
inline Algebra S7() { return matrix_subalgebra(2, {Mat::from_rows({{2, 0}, {1, 0}}, 2, 7)}, 7); }

/// Block lower triangular 4x4 matrices over GF(13) with diagonal blocks of sizes 1, 2, 1.
/// 13^11 elements, far beyond the enumeration guard.
inline Algebra B3() {
  const std::size_t block[] = {0, 1, 1, 2};
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (block[i] >= block[j]) basis.push_back(matrix_unit(4, i, j, 13));
  return algebra_from_matrix_basis(4, std::move(basis), 13, "B3_13");
}

struct Fixture {
  std::string name;
  Algebra algebra;
  bool enumerable;  // p^dim within the default guard
};

inline std::vector<Fixture> all() {
  std::vector<Fixture> out;
  auto add = [&](std::string name, Algebra a) {
    bool small = true;
    try {
      oracle::element_count(a, oracle::kDefaultGuard);
    } catch (const ResourceError&) {
      small = false;
    }
    out.push_back({std::move(name), std::move(a), small});
  };
  add("L2_7", L2_7());
  add("L3_7", L3_7());
  add("U2_7", U2_7());
  add("U3_7", U3_7());
  add("M2_7", M2_7());
  add("T7", T7());
  add("F7F7", F7F7());
  add("P1", P1());
  add("L2_5", L2_5());
  add("U2_5", U2_5());
  add("T5", T5());
  add("F5F5", F5F5());
  add("T7xF7", T7xF7());
  add("S7", S7());
  add("L2_7xF7", L2_7xF7());
  add("L3_7op", L3_7op());
  add("B3", B3());
  return out;
}

inline std::vector<Fixture> enumerable() {
  std::vector<Fixture> out;
  for (auto& f : all())
    if (f.enumerable) out.push_back(f);
  return out;
}

}  // namespace fixtures
