#include <doctest.h>

#include <random>

#include "lcmv/error.hpp"
#include "lcmv/ring.hpp"
#include "oracles.hpp"

using namespace lcmv;

namespace {

const RingDescriptor R4(4);

LinearIdeal rows(const RingDescriptor& ring, std::vector<std::vector<mpq_class>> m) {
  return LinearIdeal(ring, Matrix::from_rows(m, ring.n_vars()));
}

}  // namespace

TEST_CASE("ring descriptor and field validation") {
  CHECK_THROWS_AS(RingDescriptor(0), Error);
  CHECK_THROWS_AS(Field::prime(4), Error);
  CHECK(Field::parse("p:7").characteristic() == 7);
  CHECK(Field::parse("q").is_rational());
  CHECK_THROWS_AS(Field::parse("p:x"), Error);
}

TEST_CASE("coordinate sums") {
  CoordinateIdeal a = CoordinateIdeal::of(R4, {1, 2});
  CoordinateIdeal b = CoordinateIdeal::of(R4, {3, 4});
  CoordinateIdeal c = CoordinateIdeal::of(R4, {2, 3});
  std::vector<CoordinateIdeal> ab{a, b};
  std::vector<CoordinateIdeal> ac{a, c};
  CHECK(ideal_sum(std::span<const CoordinateIdeal>(ab)).vars() == VarSet::of({1, 2, 3, 4}));
  CHECK(ideal_sum(std::span<const CoordinateIdeal>(ac)).vars() == VarSet::of({1, 2, 3}));
}

TEST_CASE("linear sum is returned in echelon form") {
  RingDescriptor r2(2);
  std::vector<LinearIdeal> in{rows(r2, {{1, 0}}), rows(r2, {{1, 1}})};
  LinearIdeal s = ideal_sum(std::span<const LinearIdeal>(in));
  CHECK(s.height() == 2);
  CHECK(s.echelon() == Matrix::identity(2));
}

TEST_CASE("mixed kinds are rejected") {
  std::vector<Ideal> mixed{CoordinateIdeal::of(R4, {1}), LinearIdeal::from_coordinate(CoordinateIdeal::of(R4, {2}))};
  CHECK_THROWS_WITH_AS(ideal_sum(std::span<const Ideal>(mixed)), doctest::Contains("KIND_MISMATCH"), Error);
  CHECK_THROWS_AS(ideal_equal(mixed[0], mixed[1]), Error);
}

TEST_CASE("heights") {
  CHECK(CoordinateIdeal::of(R4, {1, 2, 3, 4}).height() == 4);
  CHECK(CoordinateIdeal(R4, VarSet()).height() == 0);
  CHECK(CoordinateIdeal(R4, VarSet()).to_string() == "(0)");
  CHECK(rows(RingDescriptor(2), {{1, 1}, {1, -1}}).height() == 2);
  // Over F_2 the forms x1+x2 and x1-x2 coincide.
  CHECK(rows(RingDescriptor(2, Field::prime(2)), {{1, 1}, {1, -1}}).height() == 1);
}

TEST_CASE("equality") {
  CHECK(ideal_equal(CoordinateIdeal::of(R4, {1, 2}), CoordinateIdeal::of(R4, {2, 1})));
  CHECK_FALSE(ideal_equal(CoordinateIdeal::of(R4, {1}), CoordinateIdeal::of(R4, {1, 2})));
  RingDescriptor r2(2);
  CHECK(ideal_equal(rows(r2, {{1, 1}}), rows(r2, {{2, 2}})));
}

TEST_CASE("intersection of two planes") {
  std::vector<CoordinateIdeal> arr{CoordinateIdeal::of(R4, {1, 2}), CoordinateIdeal::of(R4, {3, 4})};
  SquarefreeMonomialIdeal j = intersect(arr);
  std::set<oracle::Mask> got;
  for (VarSet g : j.generators()) got.insert(g.bits());
  CHECK(got == oracle::intersection_generators(4, {oracle::mask_of({1, 2}), oracle::mask_of({3, 4})}));
  CHECK(got.size() == 4);
  for (oracle::Mask g = 0; g < 16; ++g) {
    CHECK(j.contains_monomial(VarSet(g)) ==
          oracle::in_intersection({oracle::mask_of({1, 2}), oracle::mask_of({3, 4})}, g));
  }
}

TEST_CASE("intersection degenerate cases") {
  std::vector<CoordinateIdeal> single{CoordinateIdeal::of(R4, {1})};
  CHECK(intersect(single).generators() == std::vector<VarSet>{VarSet::of({1})});
  std::vector<CoordinateIdeal> twice{CoordinateIdeal::of(R4, {1, 2}), CoordinateIdeal::of(R4, {1, 2})};
  CHECK(intersect(twice).generators() == std::vector<VarSet>{VarSet::of({1}), VarSet::of({2})});
  CHECK_THROWS_WITH_AS(intersect(std::span<const CoordinateIdeal>()), doctest::Contains("EMPTY_ARRANGEMENT"), Error);
}

TEST_CASE("minimal primes check") {
  auto verdict = [](std::vector<std::vector<std::size_t>> sets) {
    std::vector<Ideal> arr;
    for (auto& s : sets) arr.emplace_back(CoordinateIdeal(R4, VarSet::of(std::span<const std::size_t>(s))));
    return minimal_primes_check(arr);
  };
  CHECK(verdict({{1, 2}, {3, 4}}).ok);
  auto bad = verdict({{1}, {1, 2}});
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0] == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(verdict({{1, 2}, {2, 3}, {1, 3}}).ok);
}

TEST_CASE("minimal primes of a monomial ideal") {
  SquarefreeMonomialIdeal j(R4, {VarSet::of({1, 3}), VarSet::of({1, 4}), VarSet::of({2, 3}), VarSet::of({2, 4})});
  CHECK(j.minimal_primes() == std::vector<VarSet>{VarSet::of({1, 2}), VarSet::of({3, 4})});
  CHECK(j.height() == 2);
  CHECK_FALSE(j.has_regular_quotient());
  // Non-minimal generators are dropped.
  SquarefreeMonomialIdeal k(R4, {VarSet::of({1}), VarSet::of({1, 2})});
  CHECK(k.generators() == std::vector<VarSet>{VarSet::of({1})});
}

TEST_CASE("sum_regular") {
  RingDescriptor r3(3);
  auto cert = sum_regular(rows(r3, {{1, 0, 0}, {0, 1, 0}}), rows(r3, {{0, 1, 0}, {0, 0, 1}}));
  CHECK(cert.height == 3);
  CHECK(cert.regular_quotient);
  CHECK(cert.completion.rows() == 0);

  auto idem = sum_regular(rows(r3, {{1, 0, 0}}), rows(r3, {{1, 0, 0}}));
  CHECK(idem.height == 1);
  CHECK(idem.completion.rows() == 2);
  CHECK(oracle::dense_rank({{1, 0, 0}, idem.completion.row(0), idem.completion.row(1)}) == 3);

  RingDescriptor r2(2);
  CHECK(sum_regular(rows(r2, {{1, 1}}), rows(r2, {{1, -1}})).height == 2);
  CHECK_THROWS_WITH_AS(sum_regular(rows(r2, {{1, 1}}), rows(RingDescriptor(3), {{1, 0, 0}})),
                       doctest::Contains("RING_MISMATCH"), Error);
}

TEST_CASE("containment of linear ideals") {
  RingDescriptor r3(3);
  Ideal big = rows(r3, {{1, 0, 0}, {0, 1, 1}});
  Ideal small = rows(r3, {{2, 1, 1}});
  CHECK(ideal_contains(big, small));
  CHECK_FALSE(ideal_contains(small, big));
  CHECK(to_string(small) == "(x1 + 1/2*x2 + 1/2*x3)");
}
