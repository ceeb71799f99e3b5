#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anosov/errors.hpp"
#include "anosov/sft.hpp"
#include "fixtures.hpp"

using namespace anosov;

namespace {

// Independent oracle: enumerate closed walks of length k in the phi-graph,
// stepping through individual horizontal handles.
long walkCount(const GeometricType& g, int k) {
  long total = 0;
  struct Frame {
    int rect, depth;
  };
  for (int start = 1; start <= g.n; ++start) {
    std::vector<Frame> stack{{start, 0}};
    while (!stack.empty()) {
      auto [r, d] = stack.back();
      stack.pop_back();
      if (d == k) {
        if (r == start) ++total;
        continue;
      }
      for (int kk = 1; kk <= g.h[r - 1]; ++kk)
        stack.push_back({g.phi[r - 1][kk - 1].first, d + 1});
    }
  }
  return total;
}

}  // namespace

TEST_CASE("transition matrices of the fixtures") {
  auto m1 = transitionMatrix(fixtures::t1());
  CHECK(m1.a == std::vector<std::vector<long>>{{1}});
  auto mc = transitionMatrix(fixtures::tcat());
  CHECK(mc.a == std::vector<std::vector<long>>{{2, 1}, {1, 1}});
  // row sums = h, column sums = v
  const auto g = fixtures::tcat();
  for (int i = 0; i < mc.n; ++i) {
    long rs = 0, cs = 0;
    for (int j = 0; j < mc.n; ++j) {
      rs += mc.a[i][j];
      cs += mc.a[j][i];
    }
    CHECK(rs == g.h[i]);
    CHECK(cs == g.v[i]);
  }
}

TEST_CASE("periodic word counts match the brute-force walk enumerator") {
  auto g = fixtures::tcat();
  auto m = transitionMatrix(g);
  CHECK(periodicWordCount(m, 1) == 3);
  CHECK(periodicWordCount(m, 2) == 7);
  CHECK(periodicWordCount(m, 3) == 18);
  for (int k = 1; k <= 7; ++k) CHECK(periodicWordCount(m, k) == walkCount(g, k));
}

TEST_CASE("exact powers agree with repeated multiplication") {
  auto m = transitionMatrix(fixtures::tcat());
  // trace(m^k) by repeated multiplication
  std::vector<std::vector<Int>> acc(m.n, std::vector<Int>(m.n, 0)), base(acc);
  for (int i = 0; i < m.n; ++i) {
    acc[i][i] = 1;
    for (int j = 0; j < m.n; ++j) base[i][j] = m.a[i][j];
  }
  for (int k = 1; k <= 12; ++k) {
    std::vector<std::vector<Int>> next(m.n, std::vector<Int>(m.n, 0));
    for (int i = 0; i < m.n; ++i)
      for (int l = 0; l < m.n; ++l)
        for (int j = 0; j < m.n; ++j) next[i][j] += acc[i][l] * base[l][j];
    acc = next;
    Int tr = 0;
    for (int i = 0; i < m.n; ++i) tr += acc[i][i];
    CHECK(periodicWordCount(m, k) == tr);
    CHECK(tr >= 0);
  }
}

TEST_CASE("entropy of the trivial type is exactly zero") {
  auto m = transitionMatrix(fixtures::t1());
  auto e = entropy(m, Rat(1, 1000000000));
  CHECK(e.lambdaLo == Rat(1));
  CHECK(e.lambdaHi == Rat(1));
  CHECK(std::stod(e.lo) == 0.0);
  CHECK(std::stod(e.hi) == 0.0);
}

TEST_CASE("entropy encloses log((3+sqrt5)/2) within 1e-9") {
  auto m = transitionMatrix(fixtures::tcat());
  auto e = entropy(m, Rat(1, 1000000000));
  double lo = std::stod(e.lo), hi = std::stod(e.hi);
  double expected = 0.962423650119207;  // log((3+sqrt(5))/2)
  CHECK(lo <= expected);
  CHECK(expected <= hi);
  CHECK(hi - lo <= 1e-9);
  CHECK(lo >= 0.0);
}

TEST_CASE("entropy refuses reducible matrices") {
  TransitionMatrix m;
  m.n = 2;
  m.a = {{2, 0}, {1, 1}};
  CHECK(!isIrreducible(m));
  CHECK_THROWS_AS(entropy(m, Rat(1, 1000)), NotIrreducible);
}

TEST_CASE("double cover of T1-minus has the swap matrix") {
  auto cover = orientationDoubleCover(fixtures::t1Minus());
  auto m = transitionMatrix(cover);
  CHECK(m.a == std::vector<std::vector<long>>{{0, 1}, {1, 0}});
  CHECK(periodicWordCount(m, 2) == 2);
  // row sums match the doubled type's h
  for (int i = 0; i < m.n; ++i) {
    long rs = 0;
    for (int j = 0; j < m.n; ++j) rs += m.a[i][j];
    CHECK(rs == cover.h[i]);
  }
}
