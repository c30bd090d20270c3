#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "friezekit/frieze.hpp"
#include "friezekit/quiver.hpp"
#include "friezekit/rng.hpp"

using namespace friezekit;

namespace {

// Mutation by the three-step quiver rule on an arrow multiset, independent of
// the matrix formula: add i->j for every path i->k->j, reverse arrows at k,
// cancel 2-cycles.
ExchangeMatrix three_step_mutation(const ExchangeMatrix& b, int k) {
  const int n = b.size();
  std::vector<std::vector<int>> arrows(n, std::vector<int>(n, 0));  // arrows[i][j] = #(i->j)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) arrows[i][j] = std::max(0, b(i, j));
  auto next = arrows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != k && j != k) next[i][j] += arrows[i][k] * arrows[k][j];
  for (int i = 0; i < n; ++i) {
    next[i][k] = arrows[k][i];
    next[k][i] = arrows[i][k];
  }
  ExchangeMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int net = next[i][j] - next[j][i];
      if (net > 0) r.add_arrows(i, j, net);
      if (net < 0) r.add_arrows(j, i, -net);
    }
  return r;
}

ExchangeMatrix random_acyclic(Rng& rng, int n) {
  // Arrows only from lower to higher index, after a random relabelling.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
  ExchangeMatrix b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int m = static_cast<int>(rng.uniform(0, 2));
      if (m > 0) b.add_arrows(perm[i], perm[j], m);
    }
  return b;
}

std::vector<FamilySpec> affine_families() {
  std::vector<FamilySpec> out;
  for (int N = 4; N <= 9; ++N) out.push_back(FamilySpec::d(N));
  out.push_back(FamilySpec::e6());
  out.push_back(FamilySpec::e7());
  out.push_back(FamilySpec::e8());
  for (int p = 1; p <= 5; ++p)
    for (int q = 1; p + q <= 6; ++q)
      if (std::gcd(p, q) == 1) out.push_back(FamilySpec::a(p, q));
  return out;
}

}  // namespace

TEST(Mutation, PathThroughMiddleVertex) {
  ExchangeMatrix b(3);  // A=0 -> B=1 -> C=2
  b.add_arrows(0, 1);
  b.add_arrows(1, 2);
  ExchangeMatrix m = mutate(b, 1);
  EXPECT_EQ(m(0, 2), 1);  // A -> C
  EXPECT_EQ(m(1, 0), 1);  // B -> A
  EXPECT_EQ(m(2, 1), 1);  // C -> B
  EXPECT_TRUE(m.is_skew_symmetric());
}

TEST(Mutation, AtSinkOnlyReversesIncidentArrows) {
  ExchangeMatrix b(4);
  b.add_arrows(0, 3);
  b.add_arrows(1, 3, 2);
  b.add_arrows(0, 1);
  b.add_arrows(2, 1);
  ExchangeMatrix m = mutate(b, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(m(i, j), (i == 3 || j == 3) ? -b(i, j) : b(i, j));
}

TEST(Mutation, MatchesThreeStepRuleAndIsInvolutive) {
  Rng rng(2024);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(6));
    ExchangeMatrix b = random_acyclic(rng, n);
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    ExchangeMatrix m = mutate(b, k);
    EXPECT_EQ(m, three_step_mutation(b, k));
    EXPECT_TRUE(m.is_skew_symmetric());
    for (int i = 0; i < n; ++i) EXPECT_EQ(m(i, i), 0);
    EXPECT_EQ(mutate(m, k), b);
  }
}

TEST(Affine, E6MatrixAsPrinted) {
  const std::vector<std::vector<int>> printed = {
      {0, 1, 0, 0, 0, 0, 0},  {-1, 0, -1, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 1, 0}, {0, 0, -1, 0, -1, 0, 0},
      {0, 0, 0, 1, 0, 0, 0},  {0, 0, -1, 0, 0, 0, -1}, {0, 0, 0, 0, 0, 1, 0}};
  Quiver q = build_affine_quiver(FamilySpec::e6());
  EXPECT_EQ(q.matrix.rows(), printed);
  EXPECT_EQ(q.labels, (std::vector<std::string>{"a", "b", "c", "d", "e", "f", "g"}));
  EXPECT_EQ(q.delta, (std::vector<int>{1, 2, 3, 2, 1, 2, 1}));
  EXPECT_EQ(q.extending(), (std::vector<int>{0, 4, 6}));
}

TEST(Affine, E7MatrixAsPrinted) {
  const std::vector<std::vector<int>> printed = {
      {0, 1, 0, 0, 0, 0, 0, 0},  {-1, 0, -1, 0, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 0, 0, 0}, {0, 0, -1, 0, -1, -1, 0, 0},
      {0, 0, 0, 1, 0, 0, 0, 0},  {0, 0, 0, 1, 0, 0, 1, 0},   {0, 0, 0, 0, 0, -1, 0, -1}, {0, 0, 0, 0, 0, 0, 1, 0}};
  EXPECT_EQ(build_affine_quiver(FamilySpec::e7()).matrix.rows(), printed);
}

TEST(Affine, E8MatrixAsPrinted) {
  const std::vector<std::vector<int>> printed = {
      {0, 1, 0, 0, 0, 0, 0, 0, 0},   {-1, 0, -1, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 0, 0, 0, 0},
      {0, 0, -1, 0, -1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 1, 0, 0, 0},   {0, 0, 0, 0, -1, 0, -1, -1, 0},
      {0, 0, 0, 0, 0, 1, 0, 0, 0},   {0, 0, 0, 0, 0, 1, 0, 0, 1},   {0, 0, 0, 0, 0, 0, 0, -1, 0}};
  Quiver q = build_affine_quiver(FamilySpec::e8());
  EXPECT_EQ(q.matrix.rows(), printed);
  EXPECT_EQ(q.extending(), (std::vector<int>{0}));
}

TEST(Affine, D6MatrixAsPrinted) {
  const std::vector<std::vector<int>> printed = {
      {0, 0, 1, 0, 0, 0, 0},  {0, 0, 1, 0, 0, 0, 0}, {-1, -1, 0, -1, 0, 0, 0}, {0, 0, 1, 0, 1, 0, 0},
      {0, 0, 0, -1, 0, -1, -1}, {0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0, 0}};
  EXPECT_EQ(build_affine_quiver(FamilySpec::d(6)).matrix.rows(), printed);
}

TEST(Affine, D4StarWithDeltas) {
  Quiver q = build_affine_quiver(FamilySpec::d(4));
  EXPECT_EQ(q.delta, (std::vector<int>{1, 1, 2, 1, 1}));
  for (int i : {0, 1, 3, 4}) {
    EXPECT_EQ(std::abs(q.matrix(i, 2)), 1);
    int degree = 0;
    for (int j = 0; j < 5; ++j) degree += std::abs(q.matrix(i, j));
    EXPECT_EQ(degree, 1);
  }
  EXPECT_EQ(q.extending(), (std::vector<int>{0, 1, 3, 4}));
}

TEST(Affine, DRightEndParity) {
  for (int N = 5; N <= 9; ++N) {
    Quiver q = build_affine_quiver(FamilySpec::d(N));
    if (N % 2 == 0) {
      EXPECT_TRUE(q.is_source(N - 1) && q.is_source(N)) << N;
    } else {
      EXPECT_TRUE(q.is_sink(N - 1) && q.is_sink(N)) << N;
    }
  }
}

TEST(Affine, BipartiteAndComposite) {
  for (const auto& f : affine_families()) {
    Quiver q = build_affine_quiver(f);
    EXPECT_TRUE(q.matrix.is_skew_symmetric()) << f.name();
    if (f.family != Family::A)
      for (int k = 0; k < q.size(); ++k) EXPECT_TRUE(q.is_sink(k) || q.is_source(k)) << f.name() << " vertex " << k;
    // Mutating along the admissible order flips every arrow twice.
    Quiver m = q;
    for (int k : admissible_order(q)) m = mutate_quiver(m, k);
    EXPECT_EQ(m.matrix, q.matrix) << f.name();
    int ones = 0;
    for (int d : q.delta) ones += d == 1;
    EXPECT_EQ(static_cast<int>(q.extending().size()), ones);
  }
}

TEST(Affine, InvalidParameters) {
  EXPECT_THROW(build_affine_quiver(FamilySpec::d(3)), UsageError);
  EXPECT_THROW(build_affine_quiver(FamilySpec::a(0, 2)), UsageError);
  EXPECT_THROW(build_affine_quiver(FamilySpec::a(2, 4)), UsageError);  // disconnected
}

TEST(Order, DefiningPropertyOnRandomAcyclic) {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng.below(7));
    ExchangeMatrix b = random_acyclic(rng, n);
    std::vector<int> order = admissible_order(b);
    ASSERT_EQ(static_cast<int>(order.size()), n);
    // Each vertex is a sink among itself and the vertices after it.
    for (std::size_t s = 0; s < order.size(); ++s)
      for (std::size_t r = s + 1; r < order.size(); ++r) EXPECT_LE(b(order[s], order[r]), 0);
  }
}

TEST(Order, ChainAndBipartite) {
  ExchangeMatrix b(3);  // A -> B -> C: C is the only sink, then B, then A
  b.add_arrows(0, 1);
  b.add_arrows(1, 2);
  EXPECT_EQ(admissible_order(b), (std::vector<int>{2, 1, 0}));

  Quiver e6 = build_affine_quiver(FamilySpec::e6());
  std::vector<int> order = admissible_order(e6);
  std::set<int> first(order.begin(), order.begin() + 3);
  EXPECT_EQ(first, (std::set<int>{1, 3, 5}));  // b, d, f
}

TEST(Order, CycleThrows) {
  ExchangeMatrix b(3);
  b.add_arrows(0, 1);
  b.add_arrows(1, 2);
  b.add_arrows(2, 0);
  EXPECT_THROW(admissible_order(b), NoAdmissibleOrder);
}

TEST(Json, RoundTripAndErrors) {
  for (const auto& f : affine_families()) {
    Quiver q = build_affine_quiver(f);
    Quiver r = quiver_from_json(quiver_to_json(q));
    EXPECT_EQ(r.matrix, q.matrix) << f.name();
    EXPECT_EQ(r.labels, q.labels);
    EXPECT_EQ(r.delta, q.delta);
    EXPECT_EQ(r.family, q.family);
  }
  EXPECT_THROW(quiver_from_json("not json"), UsageError);
  EXPECT_THROW(quiver_from_json(R"({"family":"E6","vertices":["a","b"],"arrows":[["a","z",1]],"delta":[1,1]})"),
               UsageError);
  EXPECT_THROW(quiver_from_json(R"({"family":"E6","vertices":["a","b"],"arrows":[],"delta":[1]})"), UsageError);
}

TEST(Json, MultiplicityAndDirection) {
  Quiver q = quiver_from_json(
      R"({"family":"A","params":{"p":1,"q":1},"vertices":["x0","x1"],"arrows":[["x0","x1",2]],"delta":[1,1]})");
  EXPECT_EQ(q.matrix(0, 1), 2);
  EXPECT_EQ(q.matrix(1, 0), -2);
}
