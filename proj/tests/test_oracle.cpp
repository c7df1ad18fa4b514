#include <doctest.h>

#include "borda/errors.hpp"
#include "borda/oracle.hpp"
#include "borda/single_peaked.hpp"
#include "support.hpp"

using namespace borda;
using test_support::make_axis;
using test_support::make_instance;
using test_support::make_vote;

TEST_CASE("exhaustive coalition search finds the unique winning ballot") {
  // One unit base ballot A,B,p against a single weight-2 manipulator:
  // only p,B,A makes p the strict winner.
  const ManipulationInstance inst = make_instance(3, 0, {{1, 2, 0}}, {2});
  const auto votes = brute_wbm(inst);
  REQUIRE(votes.has_value());
  REQUIRE(votes->size() == 1);
  CHECK((*votes)[0] == make_vote({0, 2, 1}));
  CHECK(verify_manipulation(inst, *votes));
}

TEST_CASE("exhaustive coalition search handles empty coalitions") {
  CHECK(brute_wbm(make_instance(2, 0, {{0, 1}}, {})).has_value());
  CHECK_FALSE(brute_wbm(make_instance(2, 0, {{1, 0}}, {})).has_value());
}

TEST_CASE("exhaustive coalition search respects its node budget") {
  BruteLimits limits;
  limits.max_nodes = 1;
  CHECK_THROWS_AS(
      brute_wbm(make_instance(4, 0, {}, {1, 1, 1}), limits),
      ResourceLimitError);
}

TEST_CASE("exhaustive matrix search returns the first matrix in its order") {
  const auto matrix = brute_fmm(make_fmm_instance({1, 1}, 1));
  REQUIRE(matrix.has_value());
  CHECK(matrix->cells == std::vector<Score>{1, 0, 0, 1});
  CHECK(verify_matrix(make_fmm_instance({1, 1}, 1), *matrix));
}

TEST_CASE("exhaustive matrix search reports infeasibility") {
  CHECK_FALSE(brute_fmm(make_fmm_instance({0, 0}, 1)).has_value());
}

TEST_CASE("exhaustive constrained-ballot search handles tiny cases") {
  const HarmoniousOrder axis = make_axis({0, 1});
  CHECK(brute_sp(make_instance(2, 0, {}, {1}), axis).has_value());
  CHECK_FALSE(
      brute_sp(make_instance(2, 0, {{1, 0}, {1, 0}}, {1}), axis)
          .has_value());
  const auto pair =
      brute_sp(make_instance(2, 0, {{1, 0}}, {1, 1}), axis);
  REQUIRE(pair.has_value());
  CHECK(pair->size() == 2);
}

TEST_CASE("exhaustive constrained-ballot search solves the example") {
  const HarmoniousOrder axis = make_axis({0, 2, 1, 3, 4, 5});
  const ManipulationInstance inst = make_instance(
      6, 5,
      {{1, 3, 4, 5, 2, 0}, {5, 4, 3, 1, 2, 0}, {0, 2, 1, 3, 4, 5}},
      {1, 1});
  const auto votes = brute_sp(inst, axis);
  REQUIRE(votes.has_value());
  CHECK(verify_manipulation(inst, *votes));
  for (const Vote& vote : *votes) CHECK(is_coincident(vote, axis));
}
