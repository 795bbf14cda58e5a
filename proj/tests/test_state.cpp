#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pbnn/errors.hpp"
#include "pbnn/state.hpp"
#include "support/oracle.hpp"

using namespace pbnn;

TEST_CASE("canonical index runs from all -1 to all +1") {
  CHECK(BinaryState::all_minus(6).index() == 1);
  CHECK(BinaryState::from_index(2, 6).spins() == std::vector<int>{1, -1, -1, -1, -1, -1});
  CHECK(BinaryState::all_plus(6).index() == 64);
  CHECK(BinaryState::from_index(64, 6) == BinaryState::all_plus(6));
}

TEST_CASE("dimension and range checks") {
  CHECK_THROWS_AS(BinaryState(0, 2), DimensionError);
  CHECK_THROWS_AS(BinaryState(0, 65), DimensionError);
  CHECK_THROWS_AS(BinaryState(0b1000, 3), DimensionError);
  CHECK_NOTHROW(BinaryState(~std::uint64_t{0}, 64));
  CHECK_THROWS_AS(BinaryState::from_index(0, 4), std::out_of_range);
  CHECK_THROWS_AS(BinaryState::from_index(17, 4), std::out_of_range);
  CHECK_THROWS_AS(BinaryState::all_minus(64).index(), DimensionError);
  CHECK_THROWS_AS(state_count(33), DimensionError);
  CHECK(state_count(32) == (std::uint64_t{1} << 32));
}

TEST_CASE("string forms put x_1 first") {
  const BinaryState s = BinaryState::parse("+-++-+");
  CHECK(s.dim() == 6);
  CHECK(s.spins() == std::vector<int>{1, -1, 1, 1, -1, 1});
  CHECK(BinaryState::parse("101101") == s);
  CHECK(s.to_pm_string() == "+-++-+");
  CHECK(s.to_bit_string() == "101101");
  CHECK_THROWS(BinaryState::parse("+-1+-+"));
  CHECK_THROWS(BinaryState::parse("+-x"));
  CHECK_THROWS_AS(BinaryState::parse("+-"), DimensionError);
}

TEST_CASE("packing agrees with the oracle encoding") {
  std::mt19937_64 rng(7);
  for (int n = 3; n <= 64; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      const std::uint64_t bits = rng() & state_mask(n);
      const BinaryState s(bits, n);
      CHECK(s.spins() == oracle::decode(bits, n));
      CHECK(BinaryState::from_spins(oracle::decode(bits, n)) == s);
      CHECK(BinaryState::parse(s.to_pm_string()) == s);
    }
  }
}
