#include <gtest/gtest.h>

#include <random>

#include "artinloc/algebra.hpp"
#include "artinloc/oracle.hpp"
#include "fixtures.hpp"

using namespace artinloc;

namespace {

Element random_element(std::mt19937_64& rng, const Algebra& a) {
  std::uniform_int_distribution<Residue> d(0, a.p() - 1);
  Vec v(a.dim());
  for (auto& c : v) c = d(rng);
  return a.element(std::move(v));
}

}  // namespace

TEST(Algebra, MatrixModelMultipliesLikeMatrices) {
  std::mt19937_64 rng(10);
  for (auto a : {fixtures::L3_7(), fixtures::U2_7(), fixtures::M2_7(), fixtures::S7()}) {
    for (int t = 0; t < 50; ++t) {
      Element x = random_element(rng, a), y = random_element(rng, a);
      EXPECT_EQ(a.matrix_of(a.mul(x, y)), a.matrix_of(x) * a.matrix_of(y)) << a.label();
      EXPECT_EQ(a.element_from_matrix(a.matrix_of(x)), x);
    }
    EXPECT_EQ(a.matrix_of(a.one()), Mat::identity(a.matrix_of(a.one()).rows(), a.p()));
  }
}

TEST(Algebra, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (auto& f : fixtures::all()) {
    const Algebra& a = f.algebra;
    for (int t = 0; t < 20; ++t) {
      Element x = random_element(rng, a), y = random_element(rng, a), z = random_element(rng, a);
      EXPECT_EQ(a.mul(a.mul(x, y), z), a.mul(x, a.mul(y, z))) << f.name;
      EXPECT_EQ(a.mul(x, a.add(y, z)), a.add(a.mul(x, y), a.mul(x, z))) << f.name;
      EXPECT_EQ(a.mul(a.one(), x), x);
      EXPECT_EQ(a.mul(x, a.one()), x);
    }
  }
}

TEST(Algebra, RegularMatricesFollowRowConvention) {
  std::mt19937_64 rng(12);
  Algebra a = fixtures::L3_7();
  for (int t = 0; t < 30; ++t) {
    Element x = random_element(rng, a), y = random_element(rng, a);
    Mat yr(0, a.dim(), a.p());
    yr.append_row(y.coeffs());
    EXPECT_EQ((yr * a.regular_matrix(x, Side::left)).row_vec(0), a.mul(x, y).coeffs());
    EXPECT_EQ((yr * a.regular_matrix(x, Side::right)).row_vec(0), a.mul(y, x).coeffs());
  }
}

TEST(Algebra, ValidationRejectsBadTables) {
  // p must exceed the dimension.
  EXPECT_THROW(lower_triangular(2, 3), InputError);
  EXPECT_THROW(truncated_poly(2, 2), InputError);
  // Non-associative table: b1*b1 = b2, everything else zero except identity products.
  AlgebraDesc d;
  d.prime = 7;
  AlgebraDesc::StructureConstants sc;
  sc.dim = 3;
  sc.one = {1, 0, 0};
  sc.mul_table = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                  {{0, 1, 0}, {0, 0, 1}, {0, 1, 0}},
                  {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}};
  d.kind = sc;
  EXPECT_THROW(build_algebra(d), InputError);
  // Wrong identity.
  sc.mul_table = {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}};
  sc.dim = 2;
  sc.one = {0, 1};
  d.kind = sc;
  EXPECT_THROW(build_algebra(d), InputError);
  sc.one = {1, 0};
  d.kind = sc;
  EXPECT_EQ(build_algebra(d).dim(), 2u);
  d.prime = 4;
  EXPECT_THROW(build_algebra(d), InputError);
}

TEST(Algebra, ElementLengthAndModulusChecks) {
  Algebra a = fixtures::L2_7();
  EXPECT_THROW(a.element(std::vector<std::int64_t>{1, 2}), InputError);
  EXPECT_EQ(a.element(std::vector<std::int64_t>{-1, 8, 14}).coeffs(), (Vec{6, 1, 0}));
  Element foreign = fixtures::L2_5().one();
  EXPECT_THROW(a.mul(a.one(), foreign), ModulusMismatch);
  EXPECT_THROW(a.element_from_matrix(Mat::from_rows({{1, 1}, {0, 1}}, 2, 7)), InputError);
}

TEST(Algebra, OppositeReversesProducts) {
  std::mt19937_64 rng(13);
  Algebra a = fixtures::L3_7();
  Algebra op = opposite_algebra(a);
  EXPECT_EQ(op.label(), "L3_7^op");
  EXPECT_EQ(opposite_algebra(op).label(), "L3_7");
  EXPECT_TRUE(opposite_algebra(op) == a);
  for (int t = 0; t < 30; ++t) {
    Element x = random_element(rng, a), y = random_element(rng, a);
    EXPECT_EQ(op.mul(x, y), a.mul(y, x));
  }
}

TEST(Algebra, DirectProductComponents) {
  std::mt19937_64 rng(14);
  DirectProduct dp = direct_product({full_matrix(2, 7), prime_field(7)});
  EXPECT_EQ(dp.algebra.dim(), 5u);
  EXPECT_EQ(dp.algebra.label(), "M2_7 x GF(7)");
  Algebra m2 = full_matrix(2, 7);
  for (int t = 0; t < 30; ++t) {
    Element x = random_element(rng, dp.algebra), y = random_element(rng, dp.algebra);
    Element xy = dp.algebra.mul(x, y);
    EXPECT_EQ(dp.component(0, xy), m2.mul(dp.component(0, x), dp.component(0, y)));
  }
  EXPECT_THROW(direct_product({prime_field(7), prime_field(5)}), InputError);
}

TEST(Algebra, CentreDimensionsAgreeWithEnumeration) {
  for (auto& f : fixtures::enumerable()) {
    const Algebra& a = f.algebra;
    Subspace z = center(a);
    std::uint64_t central = 0;
    const std::uint64_t n = oracle::element_count(a, oracle::kDefaultGuard);
    if (n > 20000) continue;
    for (std::uint64_t k = 0; k < n; ++k) central += a.is_central(oracle::element_at(a, k));
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < z.dim(); ++i) expected *= a.p();
    EXPECT_EQ(central, expected) << f.name;
  }
}

TEST(Ideals, GeneratedIdealIsSmallestClosedSubspace) {
  Algebra a = fixtures::L3_7();
  Element e21 = a.element_from_matrix(matrix_unit(3, 1, 0, 7));
  Ideal two = ideal_generated(a, e21, Side::twosided);
  EXPECT_TRUE(is_closed(a, two.space, Side::twosided));
  // R E21 R = span{E21, E31}.
  EXPECT_EQ(two.dim(), 2u);
  Ideal left = ideal_generated(a, e21, Side::left);
  EXPECT_TRUE(is_closed(a, left.space, Side::left));
  EXPECT_TRUE(two.space.contains(left.space));
  // The span of {x e21 y} over basis elements is the generated ideal.
  Mat m(0, a.dim(), a.p());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m.append_row(a.mul3(a.basis(i), e21, a.basis(j)).coeffs());
  EXPECT_EQ(Subspace::span(m), two.space);
}

TEST(Ideals, ProductIntersectionSum) {
  Algebra a = fixtures::L2_7();
  Ideal rad{Subspace::span(std::vector<Vec>{a.element_from_matrix(matrix_unit(2, 1, 0, 7)).coeffs()}, 3, 7), Side::twosided};
  ASSERT_TRUE(is_closed(a, rad.space, Side::twosided));
  EXPECT_TRUE(ideal_combine(a, rad, rad, IdealOp::product).is_zero());
  EXPECT_TRUE(is_nilpotent_ideal(a, rad));
  EXPECT_EQ(ideal_combine(a, rad, whole_algebra(a), IdealOp::intersection), rad);
  EXPECT_EQ(ideal_combine(a, rad, zero_ideal(a), IdealOp::sum), rad);
  EXPECT_FALSE(is_nilpotent_ideal(a, whole_algebra(a)));
}

TEST(Quotients, ProjectionIsARingHomomorphism) {
  std::mt19937_64 rng(15);
  Algebra a = fixtures::L3_7();
  Element e = a.element_from_matrix(matrix_unit(3, 0, 0, 7));
  Ideal ass = ideal_generated(a, a.sub(a.one(), e), Side::twosided);
  QuotientAlgebra q = quotient_algebra(a, ass);
  EXPECT_EQ(q.algebra.dim(), a.dim() - ass.dim());
  EXPECT_EQ(q.project(a.one()), q.algebra.one());
  for (int t = 0; t < 30; ++t) {
    Element x = random_element(rng, a), y = random_element(rng, a);
    EXPECT_EQ(q.project(a.mul(x, y)), q.algebra.mul(q.project(x), q.project(y)));
    EXPECT_EQ(q.project(q.lift(q.project(x))), q.project(x));
  }
}

TEST(Subalgebras, CornerAndCentre) {
  Algebra p1 = fixtures::P1();
  EXPECT_EQ(center(p1).dim(), 2u);
  EXPECT_EQ(center(fixtures::M2_7()).dim(), 1u);
  EXPECT_EQ(center(fixtures::T7()).dim(), 2u);
  Algebra l3 = fixtures::L3_7();
  Element e = l3.element_from_matrix(matrix_unit(3, 0, 0, 7) + matrix_unit(3, 1, 1, 7));
  Subalgebra c = corner_algebra(l3, e);
  EXPECT_EQ(c.algebra.dim(), 3u);  // E11 + E22 corner of L3 is L2
  EXPECT_EQ(c.to_ambient(c.algebra.one()), e);
}

TEST(Subalgebras, MatrixSubalgebraClosure) {
  Algebra s = fixtures::S7();
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_TRUE(s.is_commutative());
  Algebra whole = matrix_subalgebra(2, {matrix_unit(2, 0, 1, 7), matrix_unit(2, 1, 0, 7)}, 7);
  EXPECT_EQ(whole.dim(), 4u);
}

TEST(Elements, BasicClassificationMatchesDefinitions) {
  for (auto& f : fixtures::enumerable()) {
    const Algebra& a = f.algebra;
    const std::uint64_t n = oracle::element_count(a, oracle::kDefaultGuard);
    if (n > 3000) continue;
    for (std::uint64_t k = 0; k < n; ++k) {
      Element x = oracle::element_at(a, k);
      ElementInfo info = classify_element_basic(a, x);
      bool has_inverse = false;
      for (std::uint64_t j = 0; j < n && !has_inverse; ++j) {
        Element y = oracle::element_at(a, j);
        has_inverse = a.mul(x, y) == a.one() && a.mul(y, x) == a.one();
      }
      EXPECT_EQ(info.is_unit, has_inverse) << f.name;
      EXPECT_EQ(info.is_idempotent, a.mul(x, x) == x);
    }
  }
}

TEST(Descriptions, BuildMatchesConstructors) {
  AlgebraDesc d;
  d.prime = 7;
  d.kind = AlgebraDesc::Named{"lower_triangular", 2};
  EXPECT_TRUE(build_algebra(d) == fixtures::L2_7());
  AlgebraDesc f;
  f.prime = 7;
  f.kind = AlgebraDesc::Named{"field", 1};
  AlgebraDesc m;
  m.prime = 7;
  m.kind = AlgebraDesc::Named{"full_matrix", 2};
  AlgebraDesc prod;
  prod.prime = 7;
  prod.kind = AlgebraDesc::Product{{m, f}};
  EXPECT_TRUE(build_algebra(prod) == fixtures::P1());
  AlgebraDesc op;
  op.prime = 7;
  AlgebraDesc inner;
  inner.prime = 7;
  inner.kind = AlgebraDesc::Named{"lower_triangular", 3};
  op.kind = AlgebraDesc::Opposite{std::make_shared<AlgebraDesc>(inner)};
  EXPECT_TRUE(build_algebra(op) == fixtures::L3_7op());
  AlgebraDesc bad;
  bad.prime = 7;
  bad.kind = AlgebraDesc::Named{"no_such_ring", 2};
  EXPECT_THROW(build_algebra(bad), InputError);
}
