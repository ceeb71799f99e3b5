#include "anosov/develop.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <sstream>

#include "anosov/errors.hpp"

namespace anosov {

std::string toString(Side s) {
  switch (s) {
    case Side::Bottom: return "bottom";
    case Side::Top: return "top";
    case Side::Left: return "left";
    case Side::Right: return "right";
  }
  return "?";
}

DeckTransform DeckTransform::inverse() const {
  // y = lam^m x + tx  =>  x = lam^-m y - lam^-m tx
  DeckTransform r;
  r.powExp = -powExp;
  AlgebraicReal lpm = pow(AlgebraicReal::lambda(tx.field()), -powExp);
  AlgebraicReal lpp = pow(AlgebraicReal::lambda(tx.field()), powExp);
  r.tx = -(lpm * tx);
  r.ty = -(lpp * ty);
  return r;
}

DeckTransform DeckTransform::composeWith(const DeckTransform& inner) const {
  DeckTransform r;
  r.powExp = powExp + inner.powExp;
  AlgebraicReal lpp = pow(AlgebraicReal::lambda(tx.field()), powExp);
  AlgebraicReal lpm = pow(AlgebraicReal::lambda(tx.field()), -powExp);
  r.tx = lpp * inner.tx + tx;
  r.ty = lpm * inner.ty + ty;
  return r;
}

DeckTransform DeckTransform::power(long k) const {
  DeckTransform r{0, tx - tx, ty - ty};  // identity over the same field
  DeckTransform base = k >= 0 ? *this : inverse();
  long n = k >= 0 ? k : -k;
  for (long i = 0; i < n; ++i) r = base.composeWith(r);
  return r;
}

bool DevelopedPatch::KeyCmp::operator()(
    const std::tuple<int, long, AlgebraicReal, AlgebraicReal>& a,
    const std::tuple<int, long, AlgebraicReal, AlgebraicReal>& b) const {
  if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
  if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
  int c = std::get<2>(a).compare(std::get<2>(b));
  if (c != 0) return c < 0;
  return std::get<3>(a).compare(std::get<3>(b)) < 0;
}

DevelopedPatch::Key DevelopedPatch::keyOf(const DevelopedRectangle& r) const {
  return {r.type, r.scaleExp, r.x0, r.y0};
}

AlgebraicReal DevelopedPatch::lamPow(long e) const {
  auto it = lam_pow_cache_.find(e);
  if (it != lam_pow_cache_.end()) return it->second;
  AlgebraicReal v = pow(AlgebraicReal::lambda(field_), e);
  lam_pow_cache_.emplace(e, v);
  return v;
}

AlgebraicReal DevelopedPatch::width(int id) const {
  const auto& r = rects_.at(id);
  return perron_.xi[r.type - 1] * lamPow(r.scaleExp);
}

AlgebraicReal DevelopedPatch::height(int id) const {
  const auto& r = rects_.at(id);
  return perron_.eta[r.type - 1] * lamPow(-r.scaleExp);
}

AlgebraicReal DevelopedPatch::x1(int id) const { return rects_.at(id).x0 + width(id); }
AlgebraicReal DevelopedPatch::y1(int id) const { return rects_.at(id).y0 + height(id); }

DevelopedPatch DevelopedPatch::develop(const GeometricType& g, const Budget& budget,
                                       int seedRects) {
  auto rep = validate(g);
  if (!rep.ok) throw InputError("develop requires a valid geometric type: " + rep.locus);
  for (const auto& row : g.u)
    for (int s : row)
      if (s != 1)
        throw OrientationNotPositive(
            "develop requires u == +1 everywhere; apply orientationDoubleCover first");
  TransitionMatrix tm = transitionMatrix(g);
  DevelopedPatch p;
  p.g_ = g;
  p.budget_ = budget;
  p.field_ = buildField(tm);  // NotIrreducible for reducible input
  p.perron_ = perronData(tm, p.field_);
  p.phi_inv_ = phiInverse(g);
  {
    auto one = AlgebraicReal::fromRational(p.field_, 1);
    p.lambda_is_one_ = p.perron_.lambda == one;
  }
  bool created = false;
  auto zero = AlgebraicReal::fromRational(p.field_, 0);
  p.findOrCreate(1, 0, zero, zero, created);
  int seedCap = seedRects > 0 ? std::min(seedRects, budget.maxRects) : budget.maxRects;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    int before = p.size();
    p.expandAll(id);
    for (int nid = before; nid < p.size(); ++nid) queue.push_back(nid);
    if (p.budget_exhausted_ || p.size() >= seedCap) break;
  }
  return p;
}

int DevelopedPatch::findOrCreate(int type, long scaleExp, AlgebraicReal x0, AlgebraicReal y0,
                                 bool& created) {
  Key k{type, scaleExp, x0, y0};
  auto it = index_.find(k);
  if (it != index_.end()) {
    created = false;
    return it->second;
  }
  if ((int)rects_.size() >= budget_.maxRects) {
    budget_exhausted_ = true;
    created = false;
    return -1;
  }
  int id = (int)rects_.size();
  rects_.push_back({id, type, scaleExp, std::move(x0), std::move(y0)});
  succ_.emplace_back(g_.h[type - 1], -1);
  pred_.emplace_back(g_.v[type - 1], -1);
  index_.emplace(std::move(k), id);
  created = true;
  return id;
}

bool DevelopedPatch::fillSuccessor(int id, int k) {
  if (succ_[id][k - 1] >= 0) return true;
  DevelopedRectangle r = rects_[id];
  if (r.scaleExp + 1 > budget_.maxScaleExp) return false;
  auto [j, l] = g_.phi[r.type - 1][k - 1];
  // y: bottom of the k-th strip of r
  AlgebraicReal y0 = r.y0;
  for (int m = 1; m < k; ++m) {
    int jm = g_.phi[r.type - 1][m - 1].first;
    y0 = y0 + perron_.eta[jm - 1] * lamPow(-(r.scaleExp + 1));
  }
  // x: r occupies predecessor slot l of the successor
  AlgebraicReal x0 = r.x0;
  for (int m = 1; m < l; ++m) {
    int im = phi_inv_[j - 1][m - 1].rect;
    x0 = x0 - perron_.xi[im - 1] * lamPow(r.scaleExp);
  }
  bool created = false;
  int sid = findOrCreate(j, r.scaleExp + 1, std::move(x0), std::move(y0), created);
  if (sid < 0) return false;
  if (succ_[id][k - 1] >= 0 && succ_[id][k - 1] != sid)
    throw MergeConflict("successor slot already bound to a different rectangle");
  succ_[id][k - 1] = sid;
  int& back = pred_[sid][l - 1];
  if (back >= 0 && back != id)
    throw MergeConflict("rectangle " + std::to_string(sid) + " predecessor slot " +
                        std::to_string(l) + " bound to both " + std::to_string(back) + " and " +
                        std::to_string(id));
  back = id;
  return true;
}

bool DevelopedPatch::fillPredecessor(int id, int l) {
  if (pred_[id][l - 1] >= 0) return true;
  DevelopedRectangle r = rects_[id];
  if (r.scaleExp - 1 < -budget_.maxScaleExp) return false;
  SubrectHandle src = phi_inv_[r.type - 1][l - 1];  // H_i^k with phi(H_i^k) = V_type^l
  int i = src.rect, k = src.pos;
  AlgebraicReal x0 = r.x0;
  for (int m = 1; m < l; ++m) {
    int im = phi_inv_[r.type - 1][m - 1].rect;
    x0 = x0 + perron_.xi[im - 1] * lamPow(r.scaleExp - 1);
  }
  AlgebraicReal y0 = r.y0;
  for (int m = 1; m < k; ++m) {
    int jm = g_.phi[i - 1][m - 1].first;
    y0 = y0 - perron_.eta[jm - 1] * lamPow(-r.scaleExp);
  }
  bool created = false;
  int pid = findOrCreate(i, r.scaleExp - 1, std::move(x0), std::move(y0), created);
  if (pid < 0) return false;
  if (pred_[id][l - 1] >= 0 && pred_[id][l - 1] != pid)
    throw MergeConflict("predecessor slot already bound to a different rectangle");
  pred_[id][l - 1] = pid;
  int& back = succ_[pid][k - 1];
  if (back >= 0 && back != id)
    throw MergeConflict("rectangle " + std::to_string(pid) + " successor slot " +
                        std::to_string(k) + " bound to both " + std::to_string(back) + " and " +
                        std::to_string(id));
  back = id;
  return true;
}

void DevelopedPatch::expandAll(int id) {
  for (int k = 1; k <= g_.h[rects_[id].type - 1]; ++k) fillSuccessor(id, k);
  for (int l = 1; l <= g_.v[rects_[id].type - 1]; ++l) fillPredecessor(id, l);
}

std::vector<int> DevelopedPatch::frontier() const {
  std::vector<int> out;
  for (int id = 0; id < size(); ++id) {
    bool incomplete = false;
    for (int s : succ_[id]) incomplete |= s < 0;
    for (int s : pred_[id]) incomplete |= s < 0;
    if (incomplete) out.push_back(id);
  }
  return out;
}

std::vector<int> DevelopedPatch::successors(int id) {
  for (int k = 1; k <= (int)succ_[id].size(); ++k)
    if (!fillSuccessor(id, k))
      throw FrontierIncomplete("successors of rectangle " + std::to_string(id) +
                               " exceed the development budget");
  return succ_[id];
}

std::vector<int> DevelopedPatch::predecessors(int id) {
  for (int l = 1; l <= (int)pred_[id].size(); ++l)
    if (!fillPredecessor(id, l))
      throw FrontierIncomplete("predecessors of rectangle " + std::to_string(id) +
                               " exceed the development budget");
  return pred_[id];
}

int DevelopedPatch::successor(int id, int k) {
  if (k < 1 || k > (int)succ_[id].size()) throw IndexOutOfRange("successor slot");
  if (!fillSuccessor(id, k))
    throw FrontierIncomplete("successor slot exceeds the development budget");
  return succ_[id][k - 1];
}

int DevelopedPatch::predecessor(int id, int l) {
  if (l < 1 || l > (int)pred_[id].size()) throw IndexOutOfRange("predecessor slot");
  if (!fillPredecessor(id, l))
    throw FrontierIncomplete("predecessor slot exceeds the development budget");
  return pred_[id][l - 1];
}

std::vector<int> DevelopedPatch::monotonePath(int from, int to) {
  if (from == to) return {from};
  const auto& A = rects_[from];
  const auto& B = rects_[to];
  // interiors must intersect
  AlgebraicReal ix0 = std::max(A.x0, B.x0, [](const auto& a, const auto& b) { return a < b; });
  AlgebraicReal iy0 = std::max(A.y0, B.y0, [](const auto& a, const auto& b) { return a < b; });
  AlgebraicReal ix1 = std::min(x1(from), x1(to), [](const auto& a, const auto& b) { return a < b; });
  AlgebraicReal iy1 = std::min(y1(from), y1(to), [](const auto& a, const auto& b) { return a < b; });
  if (!(ix0 < ix1) || !(iy0 < iy1))
    throw NotComparable("monotonePath requires intersecting interiors");
  bool increasing;
  if (B.scaleExp > A.scaleExp)
    increasing = true;
  else if (B.scaleExp < A.scaleExp)
    increasing = false;
  else
    throw NotComparable("distinct rectangles of equal scale cannot be related monotonically");
  std::vector<int> path{from};
  int cur = from;
  long steps = std::abs(B.scaleExp - A.scaleExp);
  for (long s = 0; s < steps; ++s) {
    int next = -1;
    if (increasing) {
      // descend through the unique strip containing B's y-extent
      for (int k = 1; k <= (int)succ_[cur].size(); ++k) {
        int cand = successor(cur, k);
        if (!(rects_[cand].y0 > B.y0) && !(y1(cand) < y1(to))) {
          next = cand;
          break;
        }
      }
    } else {
      for (int l = 1; l <= (int)pred_[cur].size(); ++l) {
        int cand = predecessor(cur, l);
        if (!(rects_[cand].x0 > B.x0) && !(x1(cand) < x1(to))) {
          next = cand;
          break;
        }
      }
    }
    if (next < 0) throw NotComparable("no monotone step contains the target");
    path.push_back(next);
    cur = next;
  }
  if (cur != to) throw NotComparable("monotone walk missed the target rectangle");
  return path;
}

DevelopedRectangle DevelopedPatch::imageData(const DeckTransform& t, int id) const {
  const auto& r = rects_.at(id);
  DevelopedRectangle img;
  img.id = -1;
  img.type = r.type;
  img.scaleExp = r.scaleExp + t.powExp;
  img.x0 = lamPow(t.powExp) * r.x0 + t.tx;
  img.y0 = lamPow(-t.powExp) * r.y0 + t.ty;
  return img;
}

std::optional<int> DevelopedPatch::findImage(const DeckTransform& t, int id) const {
  DevelopedRectangle img = imageData(t, id);
  auto it = index_.find({img.type, img.scaleExp, img.x0, img.y0});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int DevelopedPatch::walkToImage(int from, const DevelopedRectangle& target) {
  AlgebraicReal ty0 = target.y0;
  AlgebraicReal ty1 = target.y0 + perron_.eta[target.type - 1] * lamPow(-target.scaleExp);
  AlgebraicReal tx0 = target.x0;
  AlgebraicReal tx1 = target.x0 + perron_.xi[target.type - 1] * lamPow(target.scaleExp);
  int cur = from;
  while (true) {
    const auto& c = rects_[cur];
    if (c.scaleExp == target.scaleExp) {
      if (c.type == target.type && c.x0 == target.x0 && c.y0 == target.y0) return cur;
      throw NotComparable("monotone walk arrived at a different rectangle");
    }
    int next = -1;
    if (c.scaleExp < target.scaleExp) {
      for (int k = 1; k <= (int)succ_[cur].size(); ++k) {
        int cand = successor(cur, k);
        if (!(rects_[cand].y0 > ty0) && !(y1(cand) < ty1)) {
          next = cand;
          break;
        }
      }
    } else {
      for (int l = 1; l <= (int)pred_[cur].size(); ++l) {
        int cand = predecessor(cur, l);
        if (!(rects_[cand].x0 > tx0) && !(x1(cand) < tx1)) {
          next = cand;
          break;
        }
      }
    }
    if (next < 0) throw NotComparable("no monotone step contains the deck image");
    cur = next;
  }
}

std::vector<DevelopedPatch::AxiomViolation> DevelopedPatch::checkMarkovIntersections(
    int threads) const {
  int n = size();
  auto checkPair = [&](int a, int b) -> std::optional<AxiomViolation> {
    const auto& A = rects_[a];
    const auto& B = rects_[b];
    AlgebraicReal ax1 = A.x0 + perron_.xi[A.type - 1] * lamPow(A.scaleExp);
    AlgebraicReal ay1 = A.y0 + perron_.eta[A.type - 1] * lamPow(-A.scaleExp);
    AlgebraicReal bx1 = B.x0 + perron_.xi[B.type - 1] * lamPow(B.scaleExp);
    AlgebraicReal by1 = B.y0 + perron_.eta[B.type - 1] * lamPow(-B.scaleExp);
    // open-interval overlap in both axes?
    AlgebraicReal ox0 = A.x0 < B.x0 ? B.x0 : A.x0;
    AlgebraicReal ox1 = ax1 < bx1 ? ax1 : bx1;
    if (!(ox0 < ox1)) return std::nullopt;
    AlgebraicReal oy0 = A.y0 < B.y0 ? B.y0 : A.y0;
    AlgebraicReal oy1 = ay1 < by1 ? ay1 : by1;
    if (!(oy0 < oy1)) return std::nullopt;
    // A x-extent inside B's and B y-extent inside A's => intersection is a
    // horizontal subrectangle of B... check both orientations.
    bool aInBx = !(A.x0 < B.x0) && !(bx1 < ax1);
    bool bInAx = !(B.x0 < A.x0) && !(ax1 < bx1);
    bool aInBy = !(A.y0 < B.y0) && !(by1 < ay1);
    bool bInAy = !(B.y0 < A.y0) && !(ay1 < by1);
    // case 1: B spans A in x, A spans B in y (B crosses A horizontally):
    //   intersection = A.xext x B.yext, nontrivial for both.
    bool case1 = aInBx && bInAy && !(A.y0 == B.y0 && ay1 == by1) && !(A.x0 == B.x0 && ax1 == bx1);
    bool case2 = bInAx && aInBy && !(A.y0 == B.y0 && ay1 == by1) && !(A.x0 == B.x0 && ax1 == bx1);
    if (case1 || case2) return std::nullopt;
    std::ostringstream os;
    os << "rectangles " << a << " and " << b << " intersect without crossing Markovian-ly";
    return AxiomViolation{a, b, os.str()};
  };
  std::vector<AxiomViolation> out;
  if (threads <= 1) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (auto v = checkPair(a, b)) out.push_back(*v);
    return out;
  }
  std::vector<std::future<std::vector<AxiomViolation>>> futs;
  int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int lo = t * chunk, hi = std::min(n, lo + chunk);
    futs.push_back(std::async(std::launch::async, [&, lo, hi] {
      std::vector<AxiomViolation> local;
      for (int a = lo; a < hi; ++a)
        for (int b = a + 1; b < n; ++b)
          if (auto v = checkPair(a, b)) local.push_back(*v);
      return local;
    }));
  }
  for (auto& f : futs) {
    auto local = f.get();
    out.insert(out.end(), local.begin(), local.end());
  }
  return out;
}

bool DevelopedPatch::verifyDeckTransform(const DeckTransform& t) const {
  for (int id = 0; id < size(); ++id) {
    auto img = findImage(t, id);
    if (!img) continue;
    if (rects_[*img].type != rects_[id].type) return false;
    for (size_t k = 0; k < succ_[id].size(); ++k) {
      int s = succ_[id][k];
      if (s < 0 || succ_[*img][k] < 0) continue;
      auto simg = findImage(t, s);
      if (simg && *simg != succ_[*img][k]) return false;
    }
    for (size_t l = 0; l < pred_[id].size(); ++l) {
      int s = pred_[id][l];
      if (s < 0 || pred_[*img][l] < 0) continue;
      auto simg = findImage(t, s);
      if (simg && *simg != pred_[*img][l]) return false;
    }
  }
  return true;
}

namespace {

struct ChainEntry {
  int id;
  long scaleExp;
};

}  // namespace

DevelopedPatch::CrossingResult DevelopedPatch::crossingPredecessors(int id, Side side) {
  if (side != Side::Bottom && side != Side::Top)
    throw InputError("crossingPredecessors takes a stable side (bottom or top)");
  CrossingResult res;
  AlgebraicReal leaf = side == Side::Bottom ? rects_[id].y0 : y1(id);
  std::vector<int> chain;  // non-clearing rectangles visited, recursion order
  std::deque<std::pair<int, int>> stack{{id, 0}};
  while (!stack.empty()) {
    auto [cur, depth] = stack.front();
    stack.pop_front();
    if (depth > budget_.depth) throw DepthExceeded("crossing walk exceeded the depth budget");
    for (int l = 1; l <= (int)pred_[cur].size(); ++l) {
      int p = predecessor(cur, l);
      bool clears = side == Side::Bottom ? rects_[p].y0 != leaf : y1(p) != leaf;
      if (clears) {
        res.rects.push_back(p);
        continue;
      }
      // periodicity: does a previously visited chain rectangle map onto p by
      // an exact deck transform fixing the leaf?
      bool matched = false;
      for (int prev : chain) {
        if (rects_[prev].type != rects_[p].type) continue;
        long m = rects_[p].scaleExp - rects_[prev].scaleExp;
        if (m == 0 && !lambda_is_one_) continue;
        DeckTransform t;
        t.powExp = m;
        t.tx = rects_[p].x0 - lamPow(m) * rects_[prev].x0;
        t.ty = rects_[p].y0 - lamPow(-m) * rects_[prev].y0;
        if (m == 0 && t.tx.isZero() && t.ty.isZero()) continue;  // identity, not a generator
        if (!res.deck) {
          res.deck = t.powExp < 0 ? t.inverse() : t;  // normalize to powExp >= 0
          res.anchor = prev;
        }
        matched = true;
        break;
      }
      if (!matched) {
        chain.push_back(p);
        stack.push_back({p, depth + 1});
      }
    }
  }
  return res;
}

DevelopedPatch::CrossingResult DevelopedPatch::crossingSuccessors(int id, Side side) {
  if (side != Side::Left && side != Side::Right)
    throw InputError("crossingSuccessors takes an unstable side (left or right)");
  CrossingResult res;
  AlgebraicReal leaf = side == Side::Left ? rects_[id].x0 : x1(id);
  std::vector<int> chain;
  std::deque<std::pair<int, int>> stack{{id, 0}};
  while (!stack.empty()) {
    auto [cur, depth] = stack.front();
    stack.pop_front();
    if (depth > budget_.depth) throw DepthExceeded("crossing walk exceeded the depth budget");
    for (int k = 1; k <= (int)succ_[cur].size(); ++k) {
      int s = successor(cur, k);
      bool clears = side == Side::Left ? rects_[s].x0 != leaf : x1(s) != leaf;
      if (clears) {
        res.rects.push_back(s);
        continue;
      }
      bool matched = false;
      for (int prev : chain) {
        if (rects_[prev].type != rects_[s].type) continue;
        long m = rects_[s].scaleExp - rects_[prev].scaleExp;
        if (m == 0 && !lambda_is_one_) continue;
        DeckTransform t;
        t.powExp = m;
        t.tx = rects_[s].x0 - lamPow(m) * rects_[prev].x0;
        t.ty = rects_[s].y0 - lamPow(-m) * rects_[prev].y0;
        if (m == 0 && t.tx.isZero() && t.ty.isZero()) continue;
        if (!res.deck) {
          res.deck = t.powExp < 0 ? t.inverse() : t;
          res.anchor = prev;
        }
        matched = true;
        break;
      }
      if (!matched) {
        chain.push_back(s);
        stack.push_back({s, depth + 1});
      }
    }
  }
  return res;
}

std::vector<int> DevelopedPatch::rectsContaining(const AlgebraicReal& x,
                                                 const AlgebraicReal& y) const {
  std::vector<int> out;
  for (int id = 0; id < size(); ++id) {
    const auto& r = rects_[id];
    if (r.x0 > x || r.y0 > y) continue;
    if (x1(id) < x || y1(id) < y) continue;
    out.push_back(id);
  }
  return out;
}

}  // namespace anosov
