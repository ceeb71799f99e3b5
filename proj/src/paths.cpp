#include "anosov/paths.hpp"

#include <algorithm>

#include "anosov/errors.hpp"

namespace anosov {

int endType(const GeometricType& g, const AbstractPath& p) {
  if (p.steps.empty()) return p.startType;
  const AbstractStep& s = p.steps.back();
  if (s.kind == HandleKind::Horizontal) return g.phi[s.rect - 1][s.pos - 1].first;
  return phiInverse(g)[s.rect - 1][s.pos - 1].rect;
}

bool isValidAbstractPath(const GeometricType& g, const AbstractPath& p) {
  if (p.startType < 1 || p.startType > g.n) return false;
  auto inv = phiInverse(g);
  int cur = p.startType;
  for (const auto& s : p.steps) {
    if (s.rect != cur) return false;
    if (s.kind == HandleKind::Horizontal) {
      if (s.pos < 1 || s.pos > g.h[s.rect - 1]) return false;
      cur = g.phi[s.rect - 1][s.pos - 1].first;
    } else {
      if (s.pos < 1 || s.pos > g.v[s.rect - 1]) return false;
      cur = inv[s.rect - 1][s.pos - 1].rect;
    }
  }
  return true;
}

bool isClosedAbstract(const GeometricType& g, const AbstractPath& p) {
  return isValidAbstractPath(g, p) && endType(g, p) == p.startType;
}

AbstractPath canonicalRotation(const GeometricType& g, const AbstractPath& p) {
  if (p.steps.size() <= 1) return p;
  if (!isClosedAbstract(g, p)) throw InputError("canonicalRotation requires a closed path");
  AbstractPath best = p;
  AbstractPath cur = p;
  for (size_t r = 1; r < p.steps.size(); ++r) {
    std::rotate(cur.steps.begin(), cur.steps.begin() + 1, cur.steps.end());
    cur.startType = cur.steps.front().rect;
    if (cur.steps < best.steps) best = cur;
  }
  return best;
}

bool isValidPath(DevelopedPatch& p, const RectanglePath& path) {
  if (path.steps.empty()) return false;
  for (size_t i = 0; i + 1 < path.steps.size(); ++i) {
    int a = path.steps[i], b = path.steps[i + 1];
    auto succ = p.successors(a);
    if (std::find(succ.begin(), succ.end(), b) != succ.end()) continue;
    auto pred = p.predecessors(a);
    if (std::find(pred.begin(), pred.end(), b) != pred.end()) continue;
    return false;
  }
  return true;
}

AbstractPath abstractProjection(DevelopedPatch& p, const RectanglePath& path) {
  if (path.steps.empty()) throw InputError("empty rectangle path");
  AbstractPath a;
  a.startType = p.rect(path.steps.front()).type;
  for (size_t i = 0; i + 1 < path.steps.size(); ++i) {
    int from = path.steps[i], to = path.steps[i + 1];
    int t = p.rect(from).type;
    auto succ = p.successors(from);
    auto itS = std::find(succ.begin(), succ.end(), to);
    if (itS != succ.end()) {
      a.steps.push_back({t, HandleKind::Horizontal, int(itS - succ.begin()) + 1});
      continue;
    }
    auto pred = p.predecessors(from);
    auto itP = std::find(pred.begin(), pred.end(), to);
    if (itP != pred.end()) {
      a.steps.push_back({t, HandleKind::Vertical, int(itP - pred.begin()) + 1});
      continue;
    }
    throw InputError("consecutive path steps are not neighbors");
  }
  return a;
}

RectanglePath liftAbstract(DevelopedPatch& p, const AbstractPath& a, int startRect) {
  if (p.rect(startRect).type != a.startType)
    throw TypeMismatch("start rectangle type does not match the abstract path");
  RectanglePath path;
  path.steps.push_back(startRect);
  int cur = startRect;
  try {
    for (const auto& s : a.steps) {
      if (p.rect(cur).type != s.rect) throw TypeMismatch("abstract path diverged from the patch");
      int next = s.kind == HandleKind::Horizontal ? p.successor(cur, s.pos)
                                                  : p.predecessor(cur, s.pos);
      path.steps.push_back(next);
      cur = next;
    }
  } catch (const FrontierIncomplete& e) {
    throw BudgetExhausted(std::string("liftAbstract: ") + e.what());
  }
  return path;
}

bool isClosed(const DevelopedPatch&, const RectanglePath& path) {
  if (path.steps.empty()) return false;
  return path.steps.front() == path.steps.back();
}

bool endpointsAgree(const DevelopedPatch&, const RectanglePath& a, const RectanglePath& b) {
  if (a.steps.empty() || b.steps.empty()) return false;
  return a.steps.front() == b.steps.front() && a.steps.back() == b.steps.back();
}

RectanglePath applyMove(const RectanglePath& path, const HomotopyMove& move) {
  switch (move.kind) {
    case 'A':
      return path;  // reparametrization only; the path word is unchanged
    case 'B': {
      int k = move.locus;
      if (k < 0 || k + 2 >= path.length())
        throw MoveNotApplicable("B locus out of range");
      if (path.steps[k] != path.steps[k + 2])
        throw MoveNotApplicable("B move requires steps[k] == steps[k+2]");
      RectanglePath r;
      r.steps.assign(path.steps.begin(), path.steps.begin() + k + 1);
      r.steps.insert(r.steps.end(), path.steps.begin() + k + 3, path.steps.end());
      return r;
    }
    case 'C': {
      int k = move.locus;
      const auto& from = move.fromSegment;
      const auto& to = move.toSegment;
      if (from.empty() || to.empty() || from.front() != to.front() || from.back() != to.back())
        throw MoveNotApplicable("C segments must share both endpoints");
      if (k < 0 || k + (int)from.size() > path.length())
        throw MoveNotApplicable("C locus out of range");
      for (size_t i = 0; i < from.size(); ++i)
        if (path.steps[k + i] != from[i])
          throw MoveNotApplicable("path does not contain the replaced half-cycle");
      RectanglePath r;
      r.steps.assign(path.steps.begin(), path.steps.begin() + k);
      r.steps.insert(r.steps.end(), to.begin(), to.end());
      r.steps.insert(r.steps.end(), path.steps.begin() + k + from.size(), path.steps.end());
      return r;
    }
    default:
      throw MoveNotApplicable("unknown move kind");
  }
}

RectanglePath inflateB(DevelopedPatch& p, const RectanglePath& path, int locus, int neighbor) {
  if (locus < 0 || locus >= path.length()) throw MoveNotApplicable("inflateB locus out of range");
  int r = path.steps[locus];
  auto succ = p.successors(r);
  auto pred = p.predecessors(r);
  bool ok = std::find(succ.begin(), succ.end(), neighbor) != succ.end() ||
            std::find(pred.begin(), pred.end(), neighbor) != pred.end();
  if (!ok) throw MoveNotApplicable("inflateB: not a neighbor of the locus rectangle");
  RectanglePath out = path;
  out.steps.insert(out.steps.begin() + locus + 1, {neighbor, r});
  return out;
}

bool hasBRedex(const RectanglePath& path) {
  for (int i = 0; i + 2 < path.length(); ++i)
    if (path.steps[i] == path.steps[i + 2]) return true;
  return false;
}

RectanglePath reduceB(const RectanglePath& path) {
  RectanglePath cur = path;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 2 < cur.length(); ++i) {
      if (cur.steps[i] == cur.steps[i + 2]) {
        cur.steps.erase(cur.steps.begin() + i + 1, cur.steps.begin() + i + 3);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

}  // namespace anosov
