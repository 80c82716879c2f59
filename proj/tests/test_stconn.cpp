#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sipserlab/rng.hpp"
#include "sipserlab/stconn.hpp"

using namespace sipserlab;

namespace {

std::vector<bool> adj_from_mask(int n, std::uint64_t mask) {
  std::vector<bool> adj(pair_count(n));
  for (int i = 0; i < pair_count(n); ++i) adj[i] = (mask >> i) & 1;
  return adj;
}

}  // namespace

TEST_CASE("pair indexing") {
  CHECK(pair_count(5) == 10);
  int n = 5, idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) CHECK(pair_index(n, i, j) == idx++);
  CHECK(pair_index(n, 3, 1) == pair_index(n, 1, 3));
  CHECK_THROWS_AS(pair_index(n, 2, 2), std::invalid_argument);
}

TEST_CASE("bfs oracle basics") {
  int n = 4;
  std::vector<bool> empty(pair_count(n), false);
  CHECK_FALSE(bfs_oracle(empty, n, 0, 1, n));
  std::vector<bool> complete(pair_count(n), true);
  CHECK(bfs_oracle(complete, n, 0, 1, 1));
  // path 0-2-3-1 of length 3
  std::vector<bool> path(pair_count(n), false);
  path[pair_index(n, 0, 2)] = true;
  path[pair_index(n, 2, 3)] = true;
  path[pair_index(n, 3, 1)] = true;
  CHECK_FALSE(bfs_oracle(path, n, 0, 1, 2));
  CHECK(bfs_oracle(path, n, 0, 1, 3));
  CHECK(bfs_oracle(path, n, 0, 1, 4));
}

TEST_CASE("squaring circuit") {
  SUBCASE("k = 1 is the bare edge variable") {
    Circuit c = build_squaring_circuit(3, 1);
    CHECK(c.size() == 1);
    CHECK(c.depth() == 0);
  }
  SUBCASE("k = 2 on three nodes") {
    Circuit c = build_squaring_circuit(3, 2);
    // x_{s,t} OR (x_{s,m} AND x_{m,t}), m the third node
    CHECK(c.depth() == 2);
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      bool want = bfs_oracle(adj_from_mask(3, mask), 3, 0, 1, 2);
      CHECK(c.eval_row(mask) == want);
    }
  }
  SUBCASE("depth exactly 2 ceil(log2 k)") {
    for (int k : {2, 3, 4, 8}) {
      Circuit c = build_squaring_circuit(5, k);
      int log2k = 0;
      while ((1 << log2k) < k) ++log2k;
      CHECK(c.depth() == 2 * log2k);
    }
  }
}

TEST_CASE("power circuit") {
  SUBCASE("budgets") {
    CHECK(power_round_budgets(8, 3) == std::vector<int>{2, 2, 2});
    CHECK(power_round_budgets(8, 2) == std::vector<int>{3, 3});
    CHECK(power_round_budgets(4, 2) == std::vector<int>{2, 2});
    CHECK(power_round_budgets(1, 2) == std::vector<int>{1, 1});
  }
  SUBCASE("d = 1 is the exhaustive path search") {
    Circuit c = build_power_circuit(4, 3, 1);
    CHECK(c.depth() == 2);
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      bool want = bfs_oracle(adj_from_mask(4, mask), 4, 0, 1, 3);
      CHECK(c.eval_row(mask) == want);
    }
  }
  SUBCASE("agrees with the oracle on all 4-node graphs at (k=4, d=2)") {
    Circuit c = build_power_circuit(4, 4, 2);
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      bool want = bfs_oracle(adj_from_mask(4, mask), 4, 0, 1, 4);
      CHECK(c.eval_row(mask) == want);
    }
    CHECK(c.size() == 30);  // frozen from the constructed DAG
  }
  SUBCASE("depth exactly 2d") {
    for (int d : {1, 2, 3}) {
      Circuit c = build_power_circuit(5, 8, d);
      CHECK(c.depth() == 2 * d);
    }
  }
}

TEST_CASE("smaller node counts agree with the oracle too") {
  for (int n : {2, 3, 4}) {
    std::uint64_t graphs = std::uint64_t{1} << pair_count(n);
    for (int k = 1; k <= 4; ++k) {
      Circuit sq = build_squaring_circuit(n, k);
      Circuit pw = build_power_circuit(n, k, 2);
      for (std::uint64_t mask = 0; mask < graphs; ++mask) {
        bool want = bfs_oracle(adj_from_mask(n, mask), n, 0, 1, k);
        CHECK(sq.eval_row(mask) == want);
        CHECK(pw.eval_row(mask) == want);
      }
    }
  }
}

TEST_CASE("monotone: flipping an edge on never turns the output off") {
  SplitRng rng(89);
  Circuit sq = build_squaring_circuit(5, 3);
  Circuit pw = build_power_circuit(5, 3, 2);
  for (int trial = 0; trial < 500; ++trial) {
    std::uint64_t mask = rng.bounded(std::uint64_t{1} << 10);
    int flip = static_cast<int>(rng.bounded(10));
    std::uint64_t more = mask | (std::uint64_t{1} << flip);
    CHECK((sq.eval_row(mask) ? sq.eval_row(more) : true));
    CHECK((pw.eval_row(mask) ? pw.eval_row(more) : true));
  }
}
