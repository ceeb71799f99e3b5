#include "anosov/cycles.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "anosov/errors.hpp"

namespace anosov {

namespace {

// Quadrants of a point, counterclockwise: 0 = (+,+), 1 = (-,+), 2 = (-,-),
// 3 = (+,-).
struct Sep {
  bool vertical;  // true: unstable leaf x = px; false: stable leaf y = py
  int dir;        // +1: positive separatrix, -1: negative
};

// Separatrix crossed when leaving quadrant q counterclockwise.
constexpr Sep kSepCCW[4] = {{true, +1}, {false, -1}, {true, -1}, {false, +1}};

Sep sepBetween(int q, int rotation) {
  return rotation > 0 ? kSepCCW[q] : kSepCCW[(q + 3) % 4];
}

struct PointFrame {
  DevelopedPatch& p;
  AlgebraicReal px, py;
  std::vector<int> containing;       // rect ids whose closure contains the point
  std::vector<unsigned> germMask;    // bit q set iff rect has a germ in quadrant q

  PointFrame(DevelopedPatch& patch, const AlgebraicReal& x, const AlgebraicReal& y)
      : p(patch), px(x), py(y) {
    containing = p.rectsContaining(px, py);
    for (int id : containing) {
      const auto& r = p.rect(id);
      bool left = r.x0 < px, right = p.x1(id) > px;
      bool below = r.y0 < py, above = p.y1(id) > py;
      bool xlo = !(r.x0 > px), xhi = !(p.x1(id) < px);
      bool ylo = !(r.y0 > py), yhi = !(p.y1(id) < py);
      unsigned m = 0;
      if (xlo && right && ylo && above) m |= 1u << 0;  // NE
      if (left && xhi && ylo && above) m |= 1u << 1;   // NW
      if (left && xhi && below && yhi) m |= 1u << 2;   // SW
      if (xlo && right && below && yhi) m |= 1u << 3;  // SE
      germMask.push_back(m);
    }
  }

  bool hasGerm(int idx, int q) const { return germMask[idx] & (1u << q); }
  int indexOf(int id) const {
    for (size_t i = 0; i < containing.size(); ++i)
      if (containing[i] == id) return (int)i;
    return -1;
  }

  // Extent measure of rect along a separatrix: the coordinate of the segment
  // endpoint that is not the point itself.
  AlgebraicReal extent(int id, const Sep& s) const {
    if (s.vertical) return s.dir > 0 ? p.y1(id) : p.rect(id).y0;
    return s.dir > 0 ? p.x1(id) : p.rect(id).x0;
  }
  // a's segment contained in b's segment along s
  bool extentWithin(int a, int b, const Sep& s) const {
    AlgebraicReal ea = extent(a, s), eb = extent(b, s);
    bool positiveEnd = (s.vertical && s.dir > 0) || (!s.vertical && s.dir > 0);
    return positiveEnd ? !(eb < ea) : !(ea < eb);
  }
};

bool interiorsIntersect(const DevelopedPatch& p, int a, int b) {
  const auto& A = p.rect(a);
  const auto& B = p.rect(b);
  AlgebraicReal ox0 = A.x0 < B.x0 ? B.x0 : A.x0;
  AlgebraicReal ox1 = p.x1(a) < p.x1(b) ? p.x1(a) : p.x1(b);
  if (!(ox0 < ox1)) return false;
  AlgebraicReal oy0 = A.y0 < B.y0 ? B.y0 : A.y0;
  AlgebraicReal oy1 = p.y1(a) < p.y1(b) ? p.y1(a) : p.y1(b);
  return oy0 < oy1;
}

// Descends from `from` toward the crossing rectangle containing the endpoint
// e of a separatrix segment: successor strips for an unstable leaf x = c,
// predecessor slabs for a stable leaf y = c, until the relevant boundaries
// clear the leaf.
int descendToCrossing(DevelopedPatch& p, int from, bool vertical, const AlgebraicReal& c,
                      const AlgebraicReal& ex, const AlgebraicReal& ey,
                      const AlgebraicReal& sidewardP, int depthBudget) {
  int cur = from;
  for (int depth = 0; depth <= depthBudget; ++depth) {
    int next = -1;
    if (vertical) {
      // walk successors; pick the strip containing ey (tie toward the point)
      auto succ = p.successors(cur);
      for (int cand : succ) {
        if (p.rect(cand).y0 > ey || p.y1(cand) < ey) continue;
        if (next < 0) {
          next = cand;
          continue;
        }
        // tie: two strips meet at ey; prefer the strip on the p side
        bool candBelow = p.y1(cand) == ey;
        bool pBelow = sidewardP < ey;
        if (candBelow == pBelow) next = cand;
      }
      if (next < 0) throw FrontierIncomplete("no successor strip contains the separatrix endpoint");
      if (p.rect(next).x0 != c && p.x1(next) != c) return next;
    } else {
      auto pred = p.predecessors(cur);
      for (int cand : pred) {
        if (p.rect(cand).x0 > ex || p.x1(cand) < ex) continue;
        if (next < 0) {
          next = cand;
          continue;
        }
        bool candLeft = p.x1(cand) == ex;
        bool pLeft = sidewardP < ex;
        if (candLeft == pLeft) next = cand;
      }
      if (next < 0) throw FrontierIncomplete("no predecessor slab contains the separatrix endpoint");
      if (p.rect(next).y0 != c && p.y1(next) != c) return next;
    }
    cur = next;
  }
  throw DepthExceeded("crossing descent exceeded the depth budget");
}

RectanglePath concatHops(DevelopedPatch& p, const std::vector<int>& stations) {
  RectanglePath path;
  path.steps.push_back(stations.front());
  for (size_t i = 0; i + 1 < stations.size(); ++i) {
    auto hop = p.monotonePath(stations[i], stations[i + 1]);
    path.steps.insert(path.steps.end(), hop.begin() + 1, hop.end());
  }
  return path;
}

}  // namespace

std::vector<BoundaryPoint> boundaryArcPoints(DevelopedPatch& p, int rectId, Side side) {
  bool stable = side == Side::Bottom || side == Side::Top;
  auto res = stable ? p.crossingPredecessors(rectId, side) : p.crossingSuccessors(rectId, side);
  std::optional<AlgebraicReal> periodicCoord;
  if (res.deck && res.deck->powExp != 0) {
    const auto& t = *res.deck;
    AlgebraicReal lamM = pow(AlgebraicReal::lambda(p.field()), t.powExp);
    AlgebraicReal one = p.constant(1);
    if (lamM != one) {
      if (stable)
        periodicCoord = t.tx / (one - lamM);
      else
        periodicCoord = t.ty / (one - pow(AlgebraicReal::lambda(p.field()), -t.powExp));
    }
  }
  AlgebraicReal leaf = stable ? (side == Side::Bottom ? p.rect(rectId).y0 : p.y1(rectId))
                              : (side == Side::Left ? p.rect(rectId).x0 : p.x1(rectId));
  AlgebraicReal lo = stable ? p.rect(rectId).x0 : p.rect(rectId).y0;
  AlgebraicReal hi = stable ? p.x1(rectId) : p.y1(rectId);
  std::vector<std::pair<AlgebraicReal, int>> cuts;
  for (int q : res.rects) {
    AlgebraicReal c0 = stable ? p.rect(q).x0 : p.rect(q).y0;
    AlgebraicReal c1 = stable ? p.x1(q) : p.y1(q);
    for (const AlgebraicReal& c : {c0, c1}) {
      if (c < lo || hi < c) continue;
      if (periodicCoord && c == *periodicCoord) continue;  // periodic, not arc
      bool dup = false;
      for (const auto& [seen, _] : cuts) dup |= seen == c;
      if (!dup) cuts.push_back({c, q});
    }
  }
  std::sort(cuts.begin(), cuts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<BoundaryPoint> out;
  for (auto& [c, q] : cuts) {
    BoundaryPoint bp;
    bp.kind = BoundaryPoint::Kind::Arc;
    bp.x = stable ? c : leaf;
    bp.y = stable ? leaf : c;
    bp.rect = rectId;
    bp.side = side;
    bp.crossingRect = q;
    out.push_back(std::move(bp));
  }
  return out;
}

std::vector<BoundaryPoint> boundaryPeriodicPoints(DevelopedPatch& p, int rectId, Side side) {
  bool stable = side == Side::Bottom || side == Side::Top;
  auto res = stable ? p.crossingPredecessors(rectId, side) : p.crossingSuccessors(rectId, side);
  if (!res.deck) return {};
  const DeckTransform& t = *res.deck;
  AlgebraicReal one = p.constant(1);
  AlgebraicReal lamP = pow(AlgebraicReal::lambda(p.field()), t.powExp);
  AlgebraicReal lamN = pow(AlgebraicReal::lambda(p.field()), -t.powExp);
  BoundaryPoint bp;
  bp.kind = BoundaryPoint::Kind::Periodic;
  bp.rect = rectId;
  bp.side = side;
  bp.stabilizer = t;
  if (lamP != one) {
    bp.x = t.tx / (one - lamP);
    bp.y = t.ty / (one - lamN);
  } else {
    // degenerate lambda = 1 family: every leaf point is affinely fixed; use
    // the anchor rectangle's corner as the representative
    int anchor = res.anchor.value_or(rectId);
    bp.x = p.rect(anchor).x0;
    bp.y = p.rect(anchor).y0;
  }
  return {bp};
}

namespace {

// Descends from rect r toward the maximal crossing rectangle adjacent to
// coordinate c on the leaf carrying the given side of r; dir = +1 finds the
// rectangle on the positive side of c, dir = -1 the one on the negative side.
// The walk extends the patch on demand.
int adjacentCrossingAt(DevelopedPatch& p, int r, Side side, const AlgebraicReal& c, int dir,
                       int depthBudget) {
  bool stable = side == Side::Bottom || side == Side::Top;
  AlgebraicReal leaf = stable ? (side == Side::Bottom ? p.rect(r).y0 : p.y1(r))
                              : (side == Side::Left ? p.rect(r).x0 : p.x1(r));
  int cur = r;
  for (int depth = 0; depth <= depthBudget; ++depth) {
    int next = -1;
    if (stable) {
      auto pred = p.predecessors(cur);
      for (int cand : pred) {
        const AlgebraicReal& lo = p.rect(cand).x0;
        AlgebraicReal hi = p.x1(cand);
        bool hit = dir > 0 ? (!(lo > c) && c < hi) : (lo < c && !(hi < c));
        if (hit) {
          next = cand;
          break;
        }
      }
      if (next < 0) throw FrontierIncomplete("no predecessor slab borders the cut coordinate");
      bool clears = side == Side::Bottom ? p.rect(next).y0 != leaf : p.y1(next) != leaf;
      if (clears) return next;
    } else {
      auto succ = p.successors(cur);
      for (int cand : succ) {
        const AlgebraicReal& lo = p.rect(cand).y0;
        AlgebraicReal hi = p.y1(cand);
        bool hit = dir > 0 ? (!(lo > c) && c < hi) : (lo < c && !(hi < c));
        if (hit) {
          next = cand;
          break;
        }
      }
      if (next < 0) throw FrontierIncomplete("no successor strip borders the cut coordinate");
      bool clears = side == Side::Left ? p.rect(next).x0 != leaf : p.x1(next) != leaf;
      if (clears) return next;
    }
    cur = next;
  }
  throw DepthExceeded("adjacent-crossing descent exceeded the depth budget");
}

// The pair of maximal crossing rectangles meeting at the boundary point on
// the side of `cur` that carries it: (negative-side, positive-side).
std::pair<int, int> crossingPairAt(DevelopedPatch& p, int cur, Side side,
                                   const AlgebraicReal& px, const AlgebraicReal& py) {
  bool stable = side == Side::Bottom || side == Side::Top;
  const AlgebraicReal& c = stable ? px : py;
  int neg = adjacentCrossingAt(p, cur, side, c, -1, p.budget().depth);
  int pos = adjacentCrossingAt(p, cur, side, c, +1, p.budget().depth);
  return {neg, pos};
}

// The side of rect `r` that carries the point, assuming the point lies on
// its boundary with two quadrant germs (side interior).
Side sideCarrying(DevelopedPatch& p, int r, const AlgebraicReal& px, const AlgebraicReal& py) {
  if (p.rect(r).y0 == py) return Side::Bottom;
  if (p.y1(r) == py) return Side::Top;
  if (p.rect(r).x0 == px) return Side::Left;
  if (p.x1(r) == px) return Side::Right;
  throw GermNotContained("point does not lie on the rectangle's boundary");
}

// Does the closure of rect id contain the point together with a neighborhood
// inside the (closed) quadrant q?
bool hasGermAt(DevelopedPatch& p, int id, int q, const AlgebraicReal& px,
               const AlgebraicReal& py) {
  const auto& r = p.rect(id);
  if (r.x0 > px || r.y0 > py || p.x1(id) < px || p.y1(id) < py) return false;
  bool right = p.x1(id) > px, left = r.x0 < px;
  bool above = p.y1(id) > py, below = r.y0 < py;
  switch (q) {
    case 0: return right && above;
    case 1: return left && above;
    case 2: return left && below;
    case 3: return right && below;
  }
  return false;
}

AlgebraicReal sepExtent(DevelopedPatch& p, int id, const Sep& s) {
  if (s.vertical) return s.dir > 0 ? p.y1(id) : p.rect(id).y0;
  return s.dir > 0 ? p.x1(id) : p.rect(id).x0;
}

// a's separatrix segment contained in b's
bool sepWithin(DevelopedPatch& p, int a, int b, const Sep& s) {
  AlgebraicReal ea = sepExtent(p, a, s), eb = sepExtent(p, b, s);
  return s.dir > 0 ? !(eb < ea) : !(ea < eb);
}

// The quadrant-minimal rectangle of the pre-cycle construction: the rectangle
// with a germ in quadrant q at the point whose extent along `s` is minimal
// subject to containing prevRect's extent. The rectangles with a germ in one
// quadrant at a boundary point form a nested chain; the walk ascends and
// descends that chain, developing on demand. Returns -1 when no rectangle
// with the germ exists in the patch at all.
int minimalQuadrantRect(DevelopedPatch& p, const AlgebraicReal& px, const AlgebraicReal& py,
                        int q, const Sep& s, int prevRect, int depthBudget) {
  int cur = -1;
  for (int id : p.rectsContaining(px, py))
    if (hasGermAt(p, id, q, px, py)) {
      cur = id;
      break;
    }
  if (cur < 0) return -1;
  auto germChild = [&](int from, bool bigger) -> int {
    // bigger: move to the chain neighbor with the larger extent along s
    // (vertical extents grow toward predecessors, horizontal toward successors)
    bool usePred = s.vertical == bigger;
    auto nbrs = usePred ? p.predecessors(from) : p.successors(from);
    for (int cand : nbrs)
      if (hasGermAt(p, cand, q, px, py)) return cand;
    return -1;
  };
  for (int d = 0; !sepWithin(p, prevRect, cur, s); ++d) {
    if (d > depthBudget) throw DepthExceeded("quadrant chain ascent exceeded the depth budget");
    int up = germChild(cur, true);
    if (up < 0) throw FrontierIncomplete("quadrant chain has no larger developed member");
    cur = up;
  }
  for (int d = 0; d <= depthBudget; ++d) {
    int down = germChild(cur, false);
    if (down < 0 || !sepWithin(p, prevRect, down, s)) return cur;
    cur = down;
  }
  throw DepthExceeded("quadrant chain descent exceeded the depth budget");
}

}  // namespace

std::pair<Cycle, Cycle> arcCycles(DevelopedPatch& p, const BoundaryPoint& ap, int L0) {
  const AlgebraicReal& px = ap.x;
  const AlgebraicReal& py = ap.y;
  Side s0 = sideCarrying(p, L0, px, py);
  // germ precondition: the point must be interior to that side
  {
    bool stable = s0 == Side::Bottom || s0 == Side::Top;
    AlgebraicReal lo = stable ? p.rect(L0).x0 : p.rect(L0).y0;
    AlgebraicReal hi = stable ? p.x1(L0) : p.y1(L0);
    const AlgebraicReal& c = stable ? px : py;
    if (!(lo < c) || !(c < hi))
      throw GermNotContained("L0 must contain germs of two quadrants of the arc point");
  }
  auto [firstNeg, firstPos] = crossingPairAt(p, L0, s0, px, py);

  auto build = [&](int L1) {
    std::vector<int> anchors{L0, L1};
    for (int step = 2; step <= 4; ++step) {
      int cur = anchors[step - 1];
      Side side = sideCarrying(p, cur, px, py);
      auto [a, b] = crossingPairAt(p, cur, side, px, py);
      int avoid = anchors[step - 2];
      int chosen;
      if (!interiorsIntersect(p, a, avoid))
        chosen = a;
      else if (!interiorsIntersect(p, b, avoid))
        chosen = b;
      else
        throw GermNotContained("no crossing rectangle avoids the previous cycle member");
      anchors.push_back(chosen);
    }
    if (!interiorsIntersect(p, anchors[4], anchors[0]))
      throw GermNotContained("cycle did not close around the arc point");
    Cycle c;
    c.center = ap;
    c.anchors = anchors;
    c.path = concatHops(p, {anchors[0], anchors[1], anchors[2], anchors[3], anchors[4], anchors[0]});
    // anchor positions within the path
    size_t pos = 0;
    for (int a : anchors) {
      while (pos < c.path.steps.size() && c.path.steps[pos] != a) ++pos;
      c.anchorPos.push_back((int)pos);
    }
    // rotation sign from the shared quadrants of consecutive anchors
    PointFrame frame(p, px, py);
    auto sharedQuadrant = [&](int r1, int r2) {
      int i1 = frame.indexOf(r1), i2 = frame.indexOf(r2);
      unsigned m = frame.germMask[i1] & frame.germMask[i2];
      for (int q = 0; q < 4; ++q)
        if (m & (1u << q)) return q;
      return -1;
    };
    int q01 = sharedQuadrant(anchors[0], anchors[1]);
    int q12 = sharedQuadrant(anchors[1], anchors[2]);
    c.sign = (q12 == (q01 + 1) % 4) ? +1 : -1;
    AbstractPath word = abstractProjection(p, c.path);
    c.word = canonicalRotation(p.type(), word);
    return c;
  };

  Cycle c1 = build(firstPos);
  Cycle c2 = build(firstNeg);
  if (c1.sign == c2.sign) throw GermNotContained("expected one positive and one negative cycle");
  if (c1.sign == +1) return {c1, c2};
  return {c2, c1};
}

HomotopyMove makeCMove(const Cycle& from, const Cycle& to, int k, int locus) {
  if (k < 1 || k > 4) throw MoveNotApplicable("C anchor index must be in 1..4");
  int kTo = k == 4 ? 4 : 4 - k;
  if (from.anchors[k] != to.anchors[kTo])
    throw MoveNotApplicable("cycles do not share the target anchor");
  HomotopyMove m;
  m.kind = 'C';
  m.locus = locus;
  m.fromSegment.assign(from.path.steps.begin(), from.path.steps.begin() + from.anchorPos[k] + 1);
  m.toSegment.assign(to.path.steps.begin(), to.path.steps.begin() + to.anchorPos[kTo] + 1);
  return m;
}

Cycle periodicCycle(DevelopedPatch& p, const BoundaryPoint& pp, int L0, int sign) {
  const AlgebraicReal& px = pp.x;
  const AlgebraicReal& py = pp.y;
  // start quadrant: the rotational entry of L0's (contiguous) germ block
  int q0 = -1;
  bool anyGerm = false;
  for (int q = 0; q < 4; ++q) {
    bool here = hasGermAt(p, L0, q, px, py);
    anyGerm |= here;
    int prev = sign > 0 ? (q + 3) % 4 : (q + 1) % 4;
    if (here && !hasGermAt(p, L0, prev, px, py)) q0 = q;
  }
  if (!anyGerm) throw GermNotContained("L0 must contain the periodic point with a quadrant germ");
  if (q0 < 0) throw GermNotContained("periodic point lies in the rectangle interior");

  // quadrant-minimal rectangles serving the four quadrants
  std::vector<int> serve(4, L0);
  for (int rel = 1; rel < 4; ++rel) {
    int qPrev = (q0 + sign * (rel - 1) + 8) % 4;
    int qq = (q0 + sign * rel + 8) % 4;
    int prevRect = serve[rel - 1];
    if (hasGermAt(p, prevRect, qq, px, py)) {
      serve[rel] = prevRect;
      continue;
    }
    Sep s = sepBetween(qPrev, sign);
    int best = minimalQuadrantRect(p, px, py, qq, s, prevRect, p.budget().depth);
    if (best < 0) {
      if (p.lambdaIsOne()) {
        serve[rel] = prevRect;  // degenerate family: quadrant uncovered
        continue;
      }
      throw FrontierIncomplete("no developed rectangle covers a quadrant of the periodic point");
    }
    serve[rel] = best;
  }

  // hops across the separatrices between consecutive distinct stations
  std::vector<int> stations{L0};
  Cycle c;
  c.center = pp;
  c.sign = sign;
  for (int rel = 0; rel < 4; ++rel) {
    int A = serve[rel];
    int B = serve[(rel + 1) % 4];
    if (A == B) continue;
    int qHere = (q0 + sign * rel + 8) % 4;
    Sep s = sepBetween(qHere, sign);
    int realizer = frame.extentWithin(A, B, s) ? A : B;
    AlgebraicReal e = frame.extent(realizer, s);
    int rt = s.vertical ? descendToCrossing(p, realizer, true, px, px, e, py, p.budget().depth)
                        : descendToCrossing(p, realizer, false, py, e, py, px, p.budget().depth);
    stations.push_back(rt);
    stations.push_back(B);
  }
  if (stations.size() == 1) {
    // fully degenerate (single-tower family): the chain step is the cycle
    stations.push_back(p.predecessor(L0, 1));
  }
  // collapse equal consecutive stations
  std::vector<int> clean;
  for (int s : stations)
    if (clean.empty() || clean.back() != s) clean.push_back(s);
  c.anchors.clear();
  for (int s : serve)
    if (c.anchors.empty() || c.anchors.back() != s) c.anchors.push_back(s);
  c.path = concatHops(p, clean);
  AbstractPath word = abstractProjection(p, c.path);
  if (isClosedAbstract(p.type(), word))
    c.word = canonicalRotation(p.type(), word);
  else
    c.word = word;
  return c;
}

std::vector<Cycle> cycleSet(DevelopedPatch& p, const BoundaryPoint& pp) {
  PointFrame frame(p, pp.x, pp.y);
  if (!pp.stabilizer) throw InputError("cycleSet requires a periodic boundary point");
  const DeckTransform& gen = *pp.stabilizer;
  // one representative starting rectangle per stabilizer orbit
  std::vector<int> reps;
  std::vector<bool> used(frame.containing.size(), false);
  for (size_t i = 0; i < frame.containing.size(); ++i) {
    if (used[i]) continue;
    if (frame.germMask[i] == 0) continue;
    int rep = frame.containing[i];
    reps.push_back(rep);
    // mark the whole visible orbit
    for (size_t j = i; j < frame.containing.size(); ++j) {
      if (used[j] || frame.germMask[j] == 0) continue;
      int other = frame.containing[j];
      long m = gen.powExp;
      long d = p.rect(other).scaleExp - p.rect(rep).scaleExp;
      if (m != 0) {
        if (d % m != 0) continue;
        DevelopedRectangle img = p.imageData(gen.power(d / m), rep);
        const auto& o = p.rect(other);
        if (img.type == o.type && img.scaleExp == o.scaleExp && img.x0 == o.x0 && img.y0 == o.y0)
          used[j] = true;
      } else if (other == rep) {
        used[j] = true;
      }
    }
  }
  std::vector<Cycle> out;
  for (int rep : reps) {
    out.push_back(periodicCycle(p, pp, rep, +1));
    out.push_back(periodicCycle(p, pp, rep, -1));
  }
  return out;
}

AbstractPath transformWord(const GeometricType& src, const GeometricType&,
                           const EquivalenceWitness& w, const AbstractPath& path) {
  AbstractPath out;
  out.startType = w.sigma[path.startType - 1];
  for (const auto& s : path.steps) {
    SubrectHandle h{s.kind, s.rect, s.pos};
    SubrectHandle img = w.map(src, h);
    out.steps.push_back({img.rect, img.kind, img.pos});
  }
  return out;
}

namespace {

EquivalenceWitness inverseWitness(const EquivalenceWitness& w) {
  int n = (int)w.sigma.size();
  EquivalenceWitness inv;
  inv.sigma.resize(n);
  inv.eps.resize(n);
  inv.epsPrime.resize(n);
  for (int i = 1; i <= n; ++i) {
    inv.sigma[w.sigma[i - 1] - 1] = i;
    inv.eps[w.sigma[i - 1] - 1] = w.eps[i - 1];
    inv.epsPrime[w.sigma[i - 1] - 1] = w.epsPrime[i - 1];
  }
  return inv;
}

}  // namespace

GeometricTypeWithCycles InvariantResult::invariantFile() const {
  GeometricTypeWithCycles out;
  out.g = g;
  std::set<AbstractPath> words;
  for (const auto& o : orbits)
    for (const auto& w : o.words) {
      if (balancing) {
        EquivalenceWitness inv = inverseWitness(*balancing);
        words.insert(canonicalRotation(g, transformWord(developedType, g, inv, w)));
      } else {
        words.insert(w);
      }
    }
  out.cycles.assign(words.begin(), words.end());
  return out;
}

InvariantResult computeInvariant(const GeometricType& g, const Budget& budget) {
  auto rep = validate(g);
  if (!rep.ok) throw InputError("invariant requires a valid type: " + rep.locus);
  InvariantResult res;
  res.g = g;
  res.developedType = g;
  bool needBalance = false;
  for (const auto& row : g.u)
    for (int s : row) needBalance |= s != 1;
  if (needBalance) {
    auto delta = orientationBalancing(g);
    if (delta) {
      GeometricType gg = g;
      for (int i = 1; i <= g.n; ++i)
        if ((*delta)[i - 1] == -1) gg = flipRectangle(gg, i);
      res.developedType = gg;
      EquivalenceWitness w;
      w.sigma.resize(g.n);
      for (int i = 0; i < g.n; ++i) w.sigma[i] = i + 1;
      w.eps = *delta;
      w.epsPrime = *delta;
      res.balancing = w;
    } else {
      res.developedType = orientationDoubleCover(g);
      res.usedDoubleCover = true;
      res.diagnostics.push_back(
          "type is not orientation-balanceable; invariant computed on the orientation double "
          "cover");
    }
  }
  if (res.usedDoubleCover) res.g = res.developedType;  // words live in the cover

  res.patch = std::make_shared<DevelopedPatch>(DevelopedPatch::develop(res.developedType, budget));
  DevelopedPatch& patch = *res.patch;

  // scan one representative rectangle per type, all four sides
  std::vector<BoundaryPoint> points;
  for (int t = 1; t <= res.developedType.n; ++t) {
    int rep = -1;
    for (int id = 0; id < patch.size() && rep < 0; ++id)
      if (patch.rect(id).type == t) rep = id;
    if (rep < 0) {
      res.diagnostics.push_back("type " + std::to_string(t) + " not developed within budget");
      continue;
    }
    for (Side s : {Side::Bottom, Side::Top, Side::Left, Side::Right}) {
      try {
        auto found = boundaryPeriodicPoints(patch, rep, s);
        for (auto& bp : found) {
          bool dup = false;
          for (const auto& known : points)
            dup |= known.x == bp.x && known.y == bp.y;
          if (!dup) points.push_back(bp);
        }
      } catch (const Error& e) {
        res.diagnostics.push_back("side scan (" + std::to_string(t) + "," + toString(s) +
                                  "): " + e.what());
      }
    }
  }

  for (auto& bp : points) {
    try {
      OrbitData o;
      o.point = bp;
      o.generator = *bp.stabilizer;
      o.cycles = cycleSet(patch, bp);
      std::set<AbstractPath> ws;
      for (const auto& c : o.cycles) ws.insert(c.word);
      o.words.assign(ws.begin(), ws.end());
      bool dup = false;
      for (const auto& prev : res.orbits) dup |= prev.words == o.words;
      if (!dup) res.orbits.push_back(std::move(o));
    } catch (const Error& e) {
      res.diagnostics.push_back(std::string("cycle construction: ") + e.what());
    }
  }
  return res;
}

namespace {

// start rectangle of the canonical rotation of a cycle's word
int canonicalStart(DevelopedPatch& p, const Cycle& c) {
  AbstractPath raw = abstractProjection(p, c.path);
  if (raw.steps.size() <= 1) return c.path.steps.front();
  AbstractPath best = raw;
  size_t bestRot = 0;
  AbstractPath cur = raw;
  for (size_t r = 1; r < raw.steps.size(); ++r) {
    std::rotate(cur.steps.begin(), cur.steps.begin() + 1, cur.steps.end());
    cur.startType = cur.steps.front().rect;
    if (cur.steps < best.steps) {
      best = cur;
      bestRot = r;
    }
  }
  return c.path.steps[bestRot];
}

}  // namespace

long surgeryOffset(DevelopedPatch& p, const OrbitData& orbit, const AbstractPath& word) {
  if (!isClosedAbstract(p.type(), word))
    throw NotMatched("offset requires a closed abstract word");
  long m = orbit.generator.powExp;
  auto candidates = p.rectsContaining(orbit.point.x, orbit.point.y);
  for (int L : candidates) {
    if (p.rect(L).type != word.startType) continue;
    RectanglePath lifted;
    try {
      lifted = liftAbstract(p, word, L);
    } catch (const Error&) {
      continue;
    }
    int E = lifted.steps.back();
    if (E == L) return 0;
    long d = p.rect(E).scaleExp - p.rect(L).scaleExp;
    if (m == 0) continue;
    if (d % m != 0) continue;
    long k = d / m;
    DevelopedRectangle img = p.imageData(orbit.generator.power(k), L);
    const auto& e = p.rect(E);
    if (img.type == e.type && img.scaleExp == e.scaleExp && img.x0 == e.x0 && img.y0 == e.y0)
      return k;
  }
  throw NotMatched("word does not close on the orbit's stabilizer");
}

GeometricTypeWithCycles shiftCycles(InvariantResult& inv, int orbitIdx, long k) {
  if (orbitIdx < 0 || orbitIdx >= (int)inv.orbits.size())
    throw IndexOutOfRange("orbit index out of range");
  DevelopedPatch& p = *inv.patch;
  OrbitData& orbit = inv.orbits[orbitIdx];
  std::set<AbstractPath> words;
  for (const auto& c : orbit.cycles) {
    int start = canonicalStart(p, c);
    RectanglePath lifted = liftAbstract(p, c.word, start);
    DevelopedRectangle target = p.imageData(orbit.generator.power(k), start);
    int targetId = p.walkToImage(lifted.steps.back(), target);
    auto walk = p.monotonePath(lifted.steps.back(), targetId);
    RectanglePath shifted = lifted;
    shifted.steps.insert(shifted.steps.end(), walk.begin() + 1, walk.end());
    AbstractPath w = abstractProjection(p, shifted);
    words.insert(canonicalRotation(p.type(), w));
  }
  GeometricTypeWithCycles out;
  out.g = inv.g;
  std::set<AbstractPath> all;
  for (int i = 0; i < (int)inv.orbits.size(); ++i) {
    if (i == orbitIdx) continue;
    for (const auto& w : inv.orbits[i].words) all.insert(w);
  }
  for (const auto& w : words) all.insert(w);
  if (inv.balancing) {
    EquivalenceWitness invW = inverseWitness(*inv.balancing);
    std::set<AbstractPath> back;
    for (const auto& w : all)
      back.insert(canonicalRotation(inv.g, transformWord(inv.developedType, inv.g, invW, w)));
    all = back;
  }
  out.cycles.assign(all.begin(), all.end());
  return out;
}

std::string toString(Verdict v) {
  switch (v) {
    case Verdict::OrbitEquivalent: return "OrbitEquivalent";
    case Verdict::EquivalentUpToSurgeries: return "EquivalentUpToSurgeries";
    case Verdict::NotEquivalent: return "NotEquivalent";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

CompareResult compare(const GeometricTypeWithCycles& gc1, const GeometricTypeWithCycles& gc2,
                      const Budget& budget) {
  CompareResult res;
  for (const auto* gc : {&gc1, &gc2}) {
    auto rep = validate(gc->g);
    if (!rep.ok) throw InputError("compare: invalid type: " + rep.locus);
    for (const auto& w : gc->cycles)
      if (!isClosedAbstract(gc->g, w))
        throw InputError("compare: a cycle word is not a closed rectangle path in its type");
  }
  auto witnesses = allEquivalences(gc1.g, gc2.g);
  if (witnesses.empty()) {
    res.verdict = Verdict::NotEquivalent;
    return res;
  }

  auto canonSet = [](const GeometricType& g, const std::vector<AbstractPath>& ws) {
    std::set<AbstractPath> out;
    for (const auto& w : ws) out.insert(canonicalRotation(g, w));
    return out;
  };
  std::set<AbstractPath> c2 = canonSet(gc2.g, gc2.cycles);
  for (const auto& w : witnesses) {
    std::set<AbstractPath> c1t;
    for (const auto& word : gc1.cycles)
      c1t.insert(canonicalRotation(gc2.g, transformWord(gc1.g, gc2.g, w, word)));
    if (c1t == c2) {
      res.verdict = Verdict::OrbitEquivalent;
      res.witness = w;
      // zero offset per orbit of the second invariant
      try {
        InvariantResult inv2 = computeInvariant(gc2.g, budget);
        for (int i = 0; i < (int)inv2.orbits.size(); ++i) res.offsets[i] = 0;
      } catch (const Error& e) {
        res.diagnostics.push_back(std::string("orbit enumeration: ") + e.what());
      }
      return res;
    }
  }

  // types equivalent, cycle sets differ: quantify per-orbit surgery offsets
  res.verdict = Verdict::EquivalentUpToSurgeries;
  res.witness = witnesses.front();
  try {
    InvariantResult inv2 = computeInvariant(gc2.g, budget);
    DevelopedPatch& patch = *inv2.patch;
    // rewrite both cycle sets into the developed labels of inv2
    auto intoDeveloped = [&](const GeometricType& src, const EquivalenceWitness* first,
                             const AbstractPath& w) {
      AbstractPath cur = w;
      const GeometricType* curType = &src;
      if (first) {
        cur = transformWord(src, gc2.g, *first, cur);
        curType = &gc2.g;
      }
      if (inv2.balancing) cur = transformWord(*curType, inv2.developedType, *inv2.balancing, cur);
      return cur;
    };
    for (int oi = 0; oi < (int)inv2.orbits.size(); ++oi) {
      const OrbitData& orbit = inv2.orbits[oi];
      std::optional<long> k1, k2;
      bool consistent = true;
      auto solveSide = [&](const std::vector<AbstractPath>& words, const GeometricType& src,
                           const EquivalenceWitness* wfirst, std::optional<long>& acc) {
        for (const auto& word : words) {
          AbstractPath dev = intoDeveloped(src, wfirst, word);
          try {
            long k = surgeryOffset(patch, orbit, dev);
            if (!acc)
              acc = k;
            else if (*acc != k)
              consistent = false;
          } catch (const NotMatched&) {
            // word belongs to a different orbit
          }
        }
      };
      solveSide(gc1.cycles, gc1.g, &witnesses.front(), k1);
      solveSide(gc2.cycles, gc2.g, nullptr, k2);
      if (!consistent) {
        res.diagnostics.push_back("orbit " + std::to_string(oi) +
                                  ": inconsistent shifts among its cycle words");
        continue;
      }
      if (k1 && k2)
        res.offsets[oi] = *k2 - *k1;
      else
        res.diagnostics.push_back("orbit " + std::to_string(oi) +
                                  ": cycle words missing on one side (NotMatched)");
    }
  } catch (const BudgetExhausted& e) {
    res.verdict = Verdict::Unknown;
    res.diagnostics.push_back(std::string("budget: ") + e.what());
  } catch (const FrontierIncomplete& e) {
    res.verdict = Verdict::Unknown;
    res.diagnostics.push_back(std::string("budget: ") + e.what());
  }
  return res;
}

}  // namespace anosov
