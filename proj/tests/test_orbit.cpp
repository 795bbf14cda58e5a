#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <tuple>

#include "pbnn/errors.hpp"
#include "pbnn/model.hpp"
#include "pbnn/orbit.hpp"
#include "support/oracle.hpp"

using namespace pbnn;

namespace {

FunctionalGraph pbnn_graph(int cn, const Permutation& sigma) {
  const PbnnParams p{ConnectionNumber(cn), sigma};
  return build_graph([p](const BinaryState& s) { return pbnn_step(s, p); }, sigma.size());
}

FunctionalGraph pbnn_graph(int cn, const char* perm, int n) {
  return pbnn_graph(cn, parse_perm_id(perm, n));
}

std::vector<std::uint64_t> as_table(const FunctionalGraph& g) {
  return {g.successors().begin(), g.successors().end()};
}

// (smallest member, period, basin) per cycle
using Inventory = std::vector<std::tuple<std::uint32_t, std::uint64_t, std::uint64_t>>;

Inventory inventory(const OrbitAnalysis& a) {
  Inventory out;
  for (const Cycle& c : a.cycles) out.emplace_back(c.states.front(), c.period(), c.basin_size);
  return out;
}

void check_structure(const FunctionalGraph& g, const OrbitAnalysis& a) {
  const auto table = as_table(g);
  std::uint64_t basin_total = 0;
  for (const Cycle& c : a.cycles) {
    basin_total += c.basin_size;
    // f maps each listed state to the next and the last to the first
    for (std::size_t k = 0; k < c.states.size(); ++k) {
      REQUIRE(g.next(c.states[k]) == c.states[(k + 1) % c.states.size()]);
    }
    // minimal period: f^k(z) != z for 1 <= k < p
    const std::uint32_t z = c.states.front();
    std::uint32_t w = z;
    for (std::uint64_t k = 1; k <= c.period(); ++k) {
      w = g.next(w);
      REQUIRE((w == z) == (k == c.period()));
    }
  }
  REQUIRE(basin_total == g.size());

  for (std::uint64_t s = 0; s < g.size(); ++s) {
    const oracle::Orbit o = oracle::orbit_of(table, s);
    const NodeClass& nc = a.classes[s];
    REQUIRE(nc.transient == o.transient);
    REQUIRE(a.cycles[nc.cycle].period() == o.period);
    REQUIRE(a.cycles[nc.cycle].states.front() == o.cycle_min);
  }

  const FeaturePoint fp = feature_point(a);
  const auto [period, basin] = oracle::feature(table);
  REQUIRE(fp.period == period);
  REQUIRE(fp.basin == basin);
  REQUIRE(fp.alpha <= fp.beta);
  REQUIRE(fp.alpha >= Fraction{1, g.size()});
  REQUIRE(fp.beta <= Fraction{1, 1});

  std::uint64_t epp_into_mbpo = 0;
  for (const NodeClass& nc : a.classes) {
    if (nc.cycle == fp.mbpo_cycle_id && !nc.periodic()) ++epp_into_mbpo;
  }
  REQUIRE(fp.basin - fp.period == epp_into_mbpo);
  REQUIRE((fp.beta == Fraction{1, 1}) == (a.cycles.size() == 1));
}

}  // namespace

TEST_CASE("constant map RN0 sends everything to index 1") {
  const auto g = build_graph([](const BinaryState& s) { return eca_step(s, RuleNumber(0)); }, 5);
  for (std::uint32_t s : g.successors()) CHECK(s == 0);
  const auto a = analyze(g);
  REQUIRE(a.cycles.size() == 1);
  CHECK(a.cycles[0].period() == 1);
  CHECK(a.cycles[0].basin_size == 32);
  CHECK(a.classes[0].periodic());
  CHECK(a.classes[31].transient == 1);
}

TEST_CASE("identity graph has only fixed points") {
  const auto g = build_graph([](const BinaryState& s) { return s; }, 6);
  const auto a = analyze(g);
  CHECK(a.cycles.size() == 64);
  for (const Cycle& c : a.cycles) {
    CHECK(c.period() == 1);
    CHECK(c.basin_size == 1);
  }
  for (const NodeClass& nc : a.classes) CHECK(nc.periodic());
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(FunctionalGraph(3, std::vector<std::uint32_t>(7, 0)), std::invalid_argument);
  CHECK_THROWS_AS(FunctionalGraph(3, std::vector<std::uint32_t>(8, 8)), std::invalid_argument);
  CHECK_THROWS_AS(build_graph([](const BinaryState& s) { return s; }, 33), DimensionError);
  CHECK_THROWS_AS(build_graph([](const BinaryState& s) { return s; }, 2), DimensionError);
}

TEST_CASE("CN6 SBNN at n=6: cycle inventory and feature point") {
  const auto g = build_graph([](const BinaryState& s) { return sbnn_step(s, ConnectionNumber(6)); }, 6);
  const auto a = analyze(g);
  // frozen from the brute-force table oracle
  const Inventory expected{{0, 1, 1},   {3, 6, 12},  {7, 6, 6},  {9, 6, 6},  {11, 6, 12},
                           {13, 6, 12}, {15, 6, 12}, {21, 1, 1}, {42, 1, 1}, {63, 1, 1}};
  CHECK(inventory(a) == expected);
  const auto fp = feature_point(a);
  CHECK(fp.alpha == Fraction{6, 64});
  CHECK(fp.beta == Fraction{12, 64});
  CHECK(fp.alpha.to_string() == "6/64");
  CHECK(fp.mbpo_cycle_id == 1);  // ties on (6, 12) resolved by smallest state
  check_structure(g, a);
}

TEST_CASE("CN6 P231465: period-12 MBPO next to period-4 cycles") {
  const auto g = pbnn_graph(6, "P231465", 6);
  const auto a = analyze(g);
  const Inventory expected{{0, 1, 1}, {3, 1, 2}, {7, 12, 40}, {14, 4, 9}, {21, 4, 9}, {60, 1, 2}, {63, 1, 1}};
  CHECK(inventory(a) == expected);
  const auto fp = feature_point(a);
  CHECK(fp.alpha == Fraction{12, 64});
  CHECK(fp.beta == Fraction{40, 64});
  check_structure(g, a);
}

TEST_CASE("typical PBNN feature points") {
  struct Case {
    int cn;
    const char* perm;
    std::uint64_t period, basin;
  };
  const Case cases[] = {{0, "P513246", 8, 20},  {1, "P413625", 20, 62}, {2, "P524361", 10, 36},
                        {3, "P315462", 20, 62}, {4, "P254136", 20, 62}, {5, "P461253", 10, 62},
                        {6, "P126354", 20, 62}, {7, "P651324", 8, 20}};
  for (const Case& c : cases) {
    CAPTURE(c.perm);
    const auto fp = feature_point(analyze(pbnn_graph(c.cn, c.perm, 6)));
    CHECK(fp.alpha == Fraction{c.period, 64});
    CHECK(fp.beta == Fraction{c.basin, 64});
  }
}

TEST_CASE("feature tie-breaks") {
  SUBCASE("larger basin wins among equal periods") {
    // two 2-cycles {0,1} and {2,3}; 4..7 all feed the second
    const FunctionalGraph g(3, {1, 0, 3, 2, 2, 2, 3, 3});
    const auto fp = feature_point(analyze(g));
    CHECK(fp.period == 2);
    CHECK(fp.basin == 6);
    CHECK(fp.mbpo_cycle_id == 1);
  }
  SUBCASE("smallest state wins among full ties") {
    const FunctionalGraph g(3, {1, 0, 3, 2, 5, 4, 7, 6});
    const auto fp = feature_point(analyze(g));
    CHECK(fp.mbpo_cycle_id == 0);
    CHECK(fp.basin == 2);
  }
  SUBCASE("longer period beats larger basin") {
    const FunctionalGraph g(3, {0, 0, 0, 0, 0, 6, 7, 5});
    const auto fp = feature_point(analyze(g));
    CHECK(fp.period == 3);
    CHECK(fp.beta == Fraction{3, 8});
  }
}

TEST_CASE("f2 o f1 graph equals composed tables for all 5760 PBNNs at n=6") {
  for (int c = 0; c < 8; ++c) {
    const ConnectionNumber cn(c);
    const auto f1 = build_graph([cn](const BinaryState& s) { return sbnn_step(s, cn); }, 6);
    Permutation sigma = Permutation::identity(6);
    do {
      const auto f2 = build_graph([&](const BinaryState& s) { return permute_state(s, sigma); }, 6);
      REQUIRE(compose_graphs(f2, f1) == pbnn_graph(c, sigma));
    } while (sigma.advance());
  }
}

TEST_CASE("analysis agrees with direct iteration, n = 3..5 all PBNNs") {
  for (int n = 3; n <= 5; ++n) {
    for (int c = 0; c < 8; ++c) {
      Permutation sigma = Permutation::identity(n);
      do {
        const auto g = pbnn_graph(c, sigma);
        check_structure(g, analyze(g));
      } while (sigma.advance());
    }
  }
}

TEST_CASE("analysis agrees with direct iteration, n = 6 exhaustive SBNN, sampled PBNN") {
  std::mt19937_64 rng(23);
  for (int c = 0; c < 8; ++c) {
    const auto g = pbnn_graph(c, Permutation::identity(6));
    check_structure(g, analyze(g));
    for (int rep = 0; rep < 40; ++rep) {
      const auto h = pbnn_graph(c, Permutation(oracle::random_perm(6, rng)));
      check_structure(h, analyze(h));
    }
  }
}

TEST_CASE("sampled properties at n = 7, 8") {
  std::mt19937_64 rng(29);
  for (int n : {7, 8}) {
    for (int rep = 0; rep < 24; ++rep) {
      const int c = static_cast<int>(rng() % 8);
      const auto g = pbnn_graph(c, Permutation(oracle::random_perm(n, rng)));
      check_structure(g, analyze(g));
    }
  }
}

TEST_CASE("random functional graphs") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 7);
    std::vector<std::uint32_t> table(std::size_t{1} << n);
    for (auto& t : table) t = static_cast<std::uint32_t>(rng() % table.size());
    const FunctionalGraph g(n, table);
    check_structure(g, analyze(g));
  }
}

TEST_CASE("identity permutation reduces PBNN features to SBNN features") {
  for (int n = 3; n <= 8; ++n) {
    for (int c = 0; c < 8; ++c) {
      const ConnectionNumber cn(c);
      const auto sb = feature_point(analyze(build_graph([cn](const BinaryState& s) { return sbnn_step(s, cn); }, n)));
      const auto pb = feature_point(analyze(pbnn_graph(c, Permutation::identity(n))));
      CHECK(sb.alpha == pb.alpha);
      CHECK(sb.beta == pb.beta);
    }
  }
}

TEST_CASE("trajectory: first-repeat detection") {
  SUBCASE("CN6 SBNN from an MBPO state") {
    const auto g = build_graph([](const BinaryState& s) { return sbnn_step(s, ConnectionNumber(6)); }, 6);
    const auto a = analyze(g);
    const auto start = BinaryState(a.cycles[feature_point(a).mbpo_cycle_id].states[2], 6);
    const auto t = trajectory(start, [](const BinaryState& s) { return sbnn_step(s, ConnectionNumber(6)); }, 20);
    REQUIRE(t.cycle);
    CHECK(*t.cycle == CycleEntry{0, 6});
    CHECK(t.states.size() == 21);
    CHECK(t.states[6] == start);
  }
  SUBCASE("RN0 settles after at most one step") {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 20; ++rep) {
      const BinaryState s(rng() & state_mask(9), 9);
      const auto t = trajectory(s, [](const BinaryState& x) { return eca_step(x, RuleNumber(0)); }, 5);
      REQUIRE(t.cycle);
      CHECK(t.cycle->period == 1);
      CHECK(t.cycle->transient <= 1);
    }
  }
  SUBCASE("unresolved within the horizon") {
    const auto t = trajectory(BinaryState(1, 40),
                              [](const BinaryState& x) { return eca_step(x, RuleNumber(30)); }, 3);
    CHECK_FALSE(t.cycle);
    CHECK(t.states.size() == 4);
  }
  SUBCASE("zero horizon is rejected") {
    CHECK_THROWS_AS(trajectory(BinaryState(1, 4), [](const BinaryState& x) { return x; }, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("trajectory agrees with graph analysis for CN6 P231465") {
  const PbnnParams p{ConnectionNumber(6), parse_perm_id("P231465", 6)};
  const auto g = pbnn_graph(6, "P231465", 6);
  const auto a = analyze(g);
  for (std::uint32_t code = 0; code < 64; ++code) {
    const auto t = trajectory(BinaryState(code, 6), [&](const BinaryState& s) { return pbnn_step(s, p); }, 64);
    REQUIRE(t.cycle);
    CHECK(t.cycle->transient == a.classes[code].transient);
    CHECK(t.cycle->period == a.cycles[a.classes[code].cycle].period());
  }
}

TEST_CASE("large-n trajectory mode") {
  // RN204 is the identity rule, so any 64-cell state is a fixed point
  const BinaryState s(0x0123456789abcdefULL, 64);
  const auto t = trajectory(s, [](const BinaryState& x) { return eca_step(x, RuleNumber(204)); }, 3);
  REQUIRE(t.cycle);
  CHECK(*t.cycle == CycleEntry{0, 1});
}
