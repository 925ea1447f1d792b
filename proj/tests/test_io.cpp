#include <catch_amalgamated.hpp>

#include "support/support.hpp"
#include "tcov/generators.hpp"
#include "tcov/io.hpp"
#include "tcov/prng.hpp"

using namespace tcov;

TEST_CASE("parse_instance basics") {
  SubsetInstance grid = parse_instance("p tcov 4 2\ne 1 2\ne 1 3\n");
  CHECK(grid.H == gen_grid(2));
  CHECK(grid.black.empty());

  SubsetInstance unit = parse_instance("p tcov 1 0\n");
  CHECK(unit.H.n == 1);
  CHECK(unit.H.m() == 0);

  SubsetInstance black = parse_instance("c a comment\np tcov 3 2\ne 1 2\ne 3\nb 1\n");
  CHECK(black.black == EdgeSet{0});

  // CRLF and stray blank lines are fine
  SubsetInstance crlf = parse_instance("p tcov 2 1\r\n\r\ne 1 2\r\n");
  CHECK(crlf.H.n == 2);
}

TEST_CASE("parse_instance rejects malformed input with line numbers") {
  CHECK_THROWS_WITH(parse_instance("p tcov 4 1\ne 1 5\n"), Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_AS(parse_instance("e 1\np tcov 2 1\n"), parse_error);
  CHECK_THROWS_AS(parse_instance("p tcov 2 1\np tcov 2 1\ne 1\n"), parse_error);
  CHECK_THROWS_AS(parse_instance("p tcov 2 1\n"), parse_error);            // missing e line
  CHECK_THROWS_AS(parse_instance("p tcov 2 1\ne 1\ne 2\n"), parse_error);  // extra e line
  CHECK_THROWS_AS(parse_instance("p tcov 2 1\ne 1\nb 2\n"), parse_error);  // b out of range
  CHECK_THROWS_AS(parse_instance("p tcov 2 1\ne\n"), parse_error);         // empty edge
  CHECK_THROWS_AS(parse_instance("p tcov 2 1\nx 1\n"), parse_error);       // unknown type
  CHECK_THROWS_AS(parse_instance("p tcov x 1\ne 1\n"), parse_error);       // non-integer
}

TEST_CASE("serialize round trip") {
  CHECK(serialize_instance(gen_grid(2)) == "p tcov 4 2\ne 1 2\ne 1 3\n");
  SubsetInstance black(Hypergraph(3, {{0, 1}, {2}}), {1}, 0);
  CHECK(serialize_instance(black) == "p tcov 3 2\ne 1 2\ne 3\nb 2\n");

  SplitMix64 rng(13);
  for (int it = 0; it < 100; ++it) {
    Hypergraph H = gen_random(2 + static_cast<int>(rng.below(10)), static_cast<int>(rng.below(8)), 3,
                              rng.next());
    EdgeSet blk;
    for (int q = 0; q < H.m(); ++q)
      if (rng.below(4) == 0) blk.push_back(q);
    SubsetInstance I(H, blk, 0);
    SubsetInstance back = parse_instance(serialize_instance(I));
    CHECK(back == I);
  }
}

TEST_CASE("r-partite and graph parsers") {
  RPartiteHypergraph G = parse_rpartite("p rdm 3 2\ne 1 3 5\ne 2 4 6\n");
  CHECK(G.r == 3);
  CHECK(G.n_prime == 2);
  CHECK(G.edges.size() == 2);
  CHECK(G.edges[0] == std::vector<int>{0, 2, 4});
  CHECK_THROWS_AS(parse_rpartite("p rdm 3 2\ne 1 2 5\n"), contract_error);  // two in part 1
  CHECK_THROWS_AS(parse_rpartite("p graph 3 2\n"), parse_error);

  SimpleGraph S = parse_simple_graph("p graph 3 2\ne 1 2\ne 2 3\n");
  CHECK(S.n == 3);
  CHECK(S.edges.size() == 2);
  CHECK_THROWS_AS(parse_simple_graph("p graph 3 2\ne 1 2\n"), parse_error);
  CHECK_THROWS_AS(parse_simple_graph("p graph 3 1\ne 1 1\n"), contract_error);
}
