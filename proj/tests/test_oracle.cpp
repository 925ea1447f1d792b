#include <catch_amalgamated.hpp>

#include "support/support.hpp"
#include "tcov/generators.hpp"
#include "tcov/oracle.hpp"

using namespace tcov;

TEST_CASE("brute force minimum on reference instances") {
  CoverResult g2 = brute_force_min(gen_grid(2));
  CHECK(g2.size == 2);
  CHECK(g2.witness == EdgeSet{0, 1});

  CoverResult unit = brute_force_min(Hypergraph(1, {}));
  CHECK(unit.size == 0);
  CHECK(unit.witness.empty());

  CoverResult g3 = brute_force_min(gen_grid(3));
  CHECK(g3.size == 4);
  CHECK(g3.witness == EdgeSet{0, 1, 2, 3});
}

TEST_CASE("brute force refuses non-covers and oversized instances") {
  CHECK_THROWS_AS(brute_force_min(Hypergraph(2, {})), contract_error);
  std::vector<std::vector<int>> many(23, std::vector<int>{0});
  CHECK_THROWS_AS(brute_force_min(Hypergraph(2, many)), budget_error);
  CHECK(brute_force_min(Hypergraph(2, many), 23).size == 1);
}

TEST_CASE("branch and bound agrees with brute force") {
  CHECK(exact_min(gen_grid(4)).size == 6);
  CHECK(exact_min(gen_grid_multi(2, 2)).size == 4);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Hypergraph H = gen_random(6, 5, 3, seed);
    if (!is_test_cover(H)) continue;
    CoverResult a = brute_force_min(H);
    CoverResult b = exact_min(H);
    CHECK(a.size == b.size);
    CHECK(is_test_cover(H, b.witness));
    CHECK(static_cast<int>(b.witness.size()) == b.size);
  }
}

TEST_CASE("exact_min respects a node budget") {
  SearchBudget tiny{1};
  CHECK_THROWS_AS(exact_min(gen_grid(4), tiny), budget_error);
}

TEST_CASE("has_cover_of_size") {
  Hypergraph grid3 = gen_grid(3);
  CHECK(has_cover_of_size(grid3, 4).first);
  CHECK_FALSE(has_cover_of_size(grid3, 3).first);
  CHECK_FALSE(has_cover_of_size(grid3, -1).first);
  CHECK(has_cover_of_size(Hypergraph(1, {}), 0).first);
  CHECK_FALSE(has_cover_of_size(Hypergraph(3, {{0}}), 3).first);  // not a test cover at all
  // monotone in s
  for (int s = 0; s < 6; ++s)
    if (has_cover_of_size(grid3, s).first) CHECK(has_cover_of_size(grid3, s + 1).first);
  auto [ok, w] = has_cover_of_size(grid3, 5);
  REQUIRE(ok);
  CHECK(is_test_cover(grid3, *w));
}

TEST_CASE("greedy cover is valid and small") {
  CHECK(greedy_cover(gen_grid(3)).size() == 4);
  Hypergraph tiny(2, {{0}});
  CHECK(greedy_cover(tiny) == EdgeSet{0});
  CHECK_THROWS_AS(greedy_cover(Hypergraph(2, {})), contract_error);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Hypergraph H = gen_random(8, 6, 3, seed);
    if (!is_test_cover(H)) continue;
    EdgeSet F = greedy_cover(H);
    CHECK(is_test_cover(H, F));
    CHECK(static_cast<int>(F.size()) <= H.n - 1);
    CHECK(static_cast<int>(F.size()) >= lower_bound_r(H.n, std::max(H.r(), 2)));
  }
}

TEST_CASE("exhaustive oracle agreement on small instances") {
  support::for_each_instance(5, 4, 4, [](const Hypergraph& H) {
    if (!support::pairwise_cover(H, all_edges(H))) return;
    int ref = support::min_cover_size(H);
    CHECK(brute_force_min(H).size == ref);
    CHECK(exact_min(H).size == ref);
  });
}
