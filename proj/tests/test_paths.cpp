#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "anosov/cycles.hpp"
#include "anosov/errors.hpp"
#include "anosov/paths.hpp"
#include "fixtures.hpp"

using namespace anosov;
using fixtures::tcat;

namespace {

DevelopedPatch makePatch(int rects = 300) {
  Budget b{rects, 10, 48};
  return DevelopedPatch::develop(tcat(), b);
}

RectanglePath randomWalk(DevelopedPatch& p, std::mt19937& rng, int len) {
  RectanglePath path;
  path.steps.push_back(p.origin());
  for (int i = 0; i < len; ++i) {
    int cur = path.steps.back();
    std::vector<int> nbrs;
    try {
      for (int s : p.successors(cur)) nbrs.push_back(s);
      for (int s : p.predecessors(cur)) nbrs.push_back(s);
    } catch (const FrontierIncomplete&) {
      break;
    }
    path.steps.push_back(nbrs[rng() % nbrs.size()]);
  }
  return path;
}

}  // namespace

TEST_CASE("projection and lift are mutually inverse on random walks") {
  auto p = makePatch();
  std::mt19937 rng(2718);
  for (int t = 0; t < 25; ++t) {
    auto q = randomWalk(p, rng, 6);
    CHECK(isValidPath(p, q));
    auto a = abstractProjection(p, q);
    CHECK(isValidAbstractPath(p.type(), a));
    auto lifted = liftAbstract(p, a, q.steps.front());
    CHECK(lifted.steps == q.steps);
  }
}

TEST_CASE("projection of the trivial path is trivial") {
  auto p = makePatch(60);
  RectanglePath triv{{p.origin()}};
  auto a = abstractProjection(p, triv);
  CHECK(a.steps.empty());
  CHECK(a.startType == 1);
  CHECK(isClosed(p, triv));
}

TEST_CASE("lifting from two type-1 rectangles gives deck-related paths") {
  auto p = makePatch(400);
  std::mt19937 rng(31);
  // the origin and its deck image under the corner stabilizer are both type 1
  auto res = p.crossingPredecessors(p.origin(), Side::Bottom);
  REQUIRE(res.deck.has_value());
  int other = p.walkToImage(p.origin(), p.imageData(*res.deck, p.origin()));
  for (int t = 0; t < 10; ++t) {
    auto q = randomWalk(p, rng, 4);
    auto a = abstractProjection(p, q);
    RectanglePath fromOther;
    try {
      fromOther = liftAbstract(p, a, other);
    } catch (const BudgetExhausted&) {
      continue;
    }
    // the deck transform maps one lift's endpoint to the other's, exactly
    auto endImg = p.imageData(*res.deck, q.steps.back());
    const auto& e = p.rect(fromOther.steps.back());
    CHECK(endImg.type == e.type);
    CHECK(endImg.scaleExp == e.scaleExp);
    CHECK(endImg.x0 == e.x0);
    CHECK(endImg.y0 == e.y0);
  }
}

TEST_CASE("B reduction deletes backtracks leftmost-first down to a redex-free word") {
  auto p = makePatch(60);
  int r0 = p.origin();
  int r1 = p.successors(r0)[0];
  RectanglePath path{{r0, r1, r0, r1}};
  auto red = reduceB(path);
  CHECK(red.steps == std::vector<int>{r0, r1});
  CHECK(!hasBRedex(red));

  HomotopyMove b{'B', 0, {}, {}};
  auto once = applyMove(path, b);
  CHECK(once.steps == std::vector<int>{r0, r1});
  CHECK_THROWS_AS(applyMove(once, b), MoveNotApplicable);
}

TEST_CASE("out-and-back paths reduce to the trivial path") {
  auto p = makePatch(200);
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto w = randomWalk(p, rng, 5);
    RectanglePath outback = w;
    for (int i = (int)w.steps.size() - 2; i >= 0; --i) outback.steps.push_back(w.steps[i]);
    CHECK(isClosed(p, outback));
    auto red = reduceB(outback);
    CHECK(red.steps == std::vector<int>{w.steps.front()});
  }
}

TEST_CASE("B inflation preserves closedness and endpoints; reduce undoes it") {
  auto p = makePatch(200);
  std::mt19937 rng(123);
  for (int t = 0; t < 20; ++t) {
    RectanglePath path{{p.origin()}};
    for (int i = 0; i < 8; ++i) {
      int locus = (int)(rng() % path.steps.size());
      int r = path.steps[locus];
      std::vector<int> nbrs;
      try {
        for (int s : p.successors(r)) nbrs.push_back(s);
        for (int s : p.predecessors(r)) nbrs.push_back(s);
      } catch (const FrontierIncomplete&) {
        continue;
      }
      auto next = inflateB(p, path, locus, nbrs[rng() % nbrs.size()]);
      CHECK(endpointsAgree(p, path, next));
      CHECK(isClosed(p, next) == isClosed(p, path));
      path = next;
    }
    CHECK(isClosed(p, path));
    CHECK(reduceB(path).steps == std::vector<int>{p.origin()});
  }
}

TEST_CASE("type-C moves around an arc point: apply and undo") {
  auto p = makePatch(500);
  auto arcs = boundaryArcPoints(p, p.origin(), Side::Top);
  REQUIRE(!arcs.empty());
  // pick an arc point interior to the side and an admissible L0
  for (const auto& ap : arcs) {
    if (!(p.rect(p.origin()).x0 < ap.x) || !(ap.x < p.x1(p.origin()))) continue;
    auto [pos, neg] = arcCycles(p, ap, p.origin());
    // build a path that starts with the positive initial segment to anchor 2
    HomotopyMove c = makeCMove(pos, neg, 2, 0);
    RectanglePath path;
    path.steps = c.fromSegment;
    auto moved = applyMove(path, c);
    CHECK(moved.steps == c.toSegment);
    CHECK(endpointsAgree(p, path, moved));
    HomotopyMove back = makeCMove(neg, pos, 2, 0);
    auto roundTrip = applyMove(moved, back);
    CHECK(roundTrip.steps == path.steps);
    return;  // one arc point suffices here
  }
  FAIL("no interior arc point found on the origin's top side");
}

TEST_CASE("abstract path validity follows the phi graph") {
  auto g = tcat();
  AbstractPath ok;
  ok.startType = 1;
  ok.steps = {{1, HandleKind::Horizontal, 3}};  // phi(H_1^3) = V_2^2: into rect 2
  CHECK(isValidAbstractPath(g, ok));
  CHECK(endType(g, ok) == 2);
  AbstractPath bad = ok;
  bad.steps.push_back({1, HandleKind::Horizontal, 1});  // but we are in rect 2
  CHECK(!isValidAbstractPath(g, bad));
}

TEST_CASE("canonical rotation is rotation-invariant") {
  auto p = makePatch(200);
  std::mt19937 rng(7);
  int done = 0;
  for (int t = 0; t < 30 && done < 10; ++t) {
    auto w = randomWalk(p, rng, 4);
    RectanglePath loop = w;
    for (int i = (int)w.steps.size() - 2; i >= 0; --i) loop.steps.push_back(w.steps[i]);
    AbstractPath a;
    try {
      a = abstractProjection(p, loop);
    } catch (const FrontierIncomplete&) {
      continue;
    }
    REQUIRE(isClosedAbstract(p.type(), a));
    auto canon = canonicalRotation(p.type(), a);
    AbstractPath rot = a;
    std::rotate(rot.steps.begin(), rot.steps.begin() + 1, rot.steps.end());
    rot.startType = rot.steps.front().rect;
    CHECK(canonicalRotation(p.type(), rot) == canon);
    ++done;
  }
  CHECK(done > 0);
}
