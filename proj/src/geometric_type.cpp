#include "anosov/geometric_type.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "anosov/errors.hpp"

namespace anosov {

std::string toString(ValidationError e) {
  switch (e) {
    case ValidationError::None: return "None";
    case ValidationError::EmptyRectangleList: return "EmptyRectangleList";
    case ValidationError::SumMismatch: return "SumMismatch";
    case ValidationError::IndexOutOfRange: return "IndexOutOfRange";
    case ValidationError::PhiNotBijective: return "PhiNotBijective";
  }
  return "?";
}

ValidationReport validate(const GeometricType& g) {
  auto fail = [](ValidationError e, const std::string& locus) {
    return ValidationReport{false, e, locus};
  };
  if (g.n <= 0 || g.h.empty() || g.v.empty())
    return fail(ValidationError::EmptyRectangleList, "n must be positive with nonempty h, v");
  if ((int)g.h.size() != g.n || (int)g.v.size() != g.n)
    return fail(ValidationError::IndexOutOfRange, "h and v must both have length n");
  long sh = 0, sv = 0;
  for (int i = 1; i <= g.n; ++i) {
    if (g.h[i - 1] <= 0)
      return fail(ValidationError::IndexOutOfRange, "h[" + std::to_string(i) + "] must be positive");
    if (g.v[i - 1] <= 0)
      return fail(ValidationError::IndexOutOfRange, "v[" + std::to_string(i) + "] must be positive");
    sh += g.h[i - 1];
    sv += g.v[i - 1];
  }
  if (sh != sv)
    return fail(ValidationError::SumMismatch,
                "sum h = " + std::to_string(sh) + " but sum v = " + std::to_string(sv));
  if ((int)g.phi.size() != g.n || (int)g.u.size() != g.n)
    return fail(ValidationError::IndexOutOfRange, "phi and u must both have n rows");
  std::set<std::pair<int, int>> seen;
  for (int i = 1; i <= g.n; ++i) {
    if ((int)g.phi[i - 1].size() != g.h[i - 1])
      return fail(ValidationError::IndexOutOfRange,
                  "phi row " + std::to_string(i) + " must list h[i] images");
    if ((int)g.u[i - 1].size() != g.h[i - 1])
      return fail(ValidationError::IndexOutOfRange,
                  "u row " + std::to_string(i) + " must list h[i] signs");
    for (int k = 1; k <= g.h[i - 1]; ++k) {
      auto [j, l] = g.phi[i - 1][k - 1];
      std::string at = "phi(H_" + std::to_string(i) + "^" + std::to_string(k) + ")";
      if (j < 1 || j > g.n)
        return fail(ValidationError::IndexOutOfRange, at + " targets rectangle " + std::to_string(j));
      if (l < 1 || l > g.v[j - 1])
        return fail(ValidationError::IndexOutOfRange,
                    at + " = V_" + std::to_string(j) + "^" + std::to_string(l) +
                        " but v[" + std::to_string(j) + "] = " + std::to_string(g.v[j - 1]));
      if (!seen.insert({j, l}).second)
        return fail(ValidationError::PhiNotBijective,
                    at + " duplicates target V_" + std::to_string(j) + "^" + std::to_string(l));
      if (g.u[i - 1][k - 1] != 1 && g.u[i - 1][k - 1] != -1)
        return fail(ValidationError::IndexOutOfRange,
                    "u(H_" + std::to_string(i) + "^" + std::to_string(k) + ") must be +1 or -1");
    }
  }
  // sum h == sum v and no duplicates => surjective
  return {};
}

std::vector<std::vector<SubrectHandle>> phiInverse(const GeometricType& g) {
  std::vector<std::vector<SubrectHandle>> inv(g.n);
  for (int j = 1; j <= g.n; ++j) inv[j - 1].resize(g.v[j - 1]);
  for (int i = 1; i <= g.n; ++i)
    for (int k = 1; k <= g.h[i - 1]; ++k) {
      auto [j, l] = g.phi[i - 1][k - 1];
      inv[j - 1][l - 1] = {HandleKind::Horizontal, i, k};
    }
  return inv;
}

namespace {

// Shared implementation: reindex positions by eps (horizontal orders) and
// epsPrime (vertical orders), rewriting phi and u per the transformation rule.
GeometricType applySigns(const GeometricType& g, const std::vector<int>& eps,
                         const std::vector<int>& epsP) {
  GeometricType r = g;
  for (int i = 1; i <= g.n; ++i) {
    for (int k = 1; k <= g.h[i - 1]; ++k) {
      int kk = eps[i - 1] == 1 ? k : g.h[i - 1] + 1 - k;
      auto [j, l] = g.phi[i - 1][k - 1];
      int ll = epsP[j - 1] == 1 ? l : g.v[j - 1] + 1 - l;
      r.phi[i - 1][kk - 1] = {j, ll};
      r.u[i - 1][kk - 1] = eps[i - 1] * eps[j - 1] * g.u[i - 1][k - 1];
    }
  }
  return r;
}

}  // namespace

GeometricType flipStableOrientation(const GeometricType& g) {
  std::vector<int> eps(g.n, 1), epsP(g.n, -1);
  return applySigns(g, eps, epsP);
}

GeometricType flipUnstableOrientation(const GeometricType& g) {
  std::vector<int> eps(g.n, -1), epsP(g.n, 1);
  return applySigns(g, eps, epsP);
}

GeometricType flipRectangle(const GeometricType& g, int i) {
  if (i < 1 || i > g.n) throw IndexOutOfRange("flipRectangle: rectangle " + std::to_string(i));
  std::vector<int> eps(g.n, 1), epsP(g.n, 1);
  eps[i - 1] = epsP[i - 1] = -1;
  return applySigns(g, eps, epsP);
}

GeometricType relabel(const GeometricType& g, const std::vector<int>& sigma) {
  if ((int)sigma.size() != g.n) throw IndexOutOfRange("relabel: sigma must have length n");
  GeometricType r;
  r.n = g.n;
  r.h.resize(g.n);
  r.v.resize(g.n);
  r.phi.resize(g.n);
  r.u.resize(g.n);
  for (int i = 1; i <= g.n; ++i) {
    int si = sigma[i - 1];
    r.h[si - 1] = g.h[i - 1];
    r.v[si - 1] = g.v[i - 1];
    r.phi[si - 1].resize(g.h[i - 1]);
    r.u[si - 1] = g.u[i - 1];
    for (int k = 1; k <= g.h[i - 1]; ++k) {
      auto [j, l] = g.phi[i - 1][k - 1];
      r.phi[si - 1][k - 1] = {sigma[j - 1], l};
    }
  }
  return r;
}

SubrectHandle EquivalenceWitness::map(const GeometricType& g, const SubrectHandle& x) const {
  SubrectHandle y = x;
  y.rect = sigma[x.rect - 1];
  if (x.kind == HandleKind::Horizontal)
    y.pos = eps[x.rect - 1] == 1 ? x.pos : g.h[x.rect - 1] + 1 - x.pos;
  else
    y.pos = epsPrime[x.rect - 1] == 1 ? x.pos : g.v[x.rect - 1] + 1 - x.pos;
  return y;
}

namespace {

bool witnessWorks(const GeometricType& g1, const GeometricType& g2,
                  const EquivalenceWitness& w) {
  for (int i = 1; i <= g1.n; ++i) {
    if (g1.h[i - 1] != g2.h[w.sigma[i - 1] - 1]) return false;
    if (g1.v[i - 1] != g2.v[w.sigma[i - 1] - 1]) return false;
  }
  for (int i = 1; i <= g1.n; ++i)
    for (int k = 1; k <= g1.h[i - 1]; ++k) {
      SubrectHandle hh{HandleKind::Horizontal, i, k};
      SubrectHandle img = w.map(g1, hh);              // H'_{sigma(i)}^{k'}
      SubrectHandle lhs = w.map(g1, g1.phiOf(i, k));  // H(phi(h))
      auto [j2, l2] = g2.phi[img.rect - 1][img.pos - 1];
      if (lhs.rect != j2 || lhs.pos != l2) return false;
      int j = g1.phiOf(i, k).rect;
      int expected = w.eps[i - 1] * w.eps[j - 1] * g1.u[i - 1][k - 1];
      if (g2.u[img.rect - 1][img.pos - 1] != expected) return false;
    }
  return true;
}

template <typename F>
void forEachProfilePermutation(const GeometricType& g1, const GeometricType& g2, F&& f) {
  std::vector<int> sigma(g1.n);
  std::iota(sigma.begin(), sigma.end(), 1);
  // lexicographic enumeration of all permutations, filtered on profiles
  do {
    bool ok = true;
    for (int i = 1; i <= g1.n && ok; ++i)
      ok = g1.h[i - 1] == g2.h[sigma[i - 1] - 1] && g1.v[i - 1] == g2.v[sigma[i - 1] - 1];
    if (ok && f(sigma)) return;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

}  // namespace

bool isEqual(const GeometricType& g1, const GeometricType& g2) {
  if (g1.n != g2.n) return false;
  bool found = false;
  forEachProfilePermutation(g1, g2, [&](const std::vector<int>& sigma) {
    EquivalenceWitness w{sigma, std::vector<int>(g1.n, 1), std::vector<int>(g1.n, 1)};
    if (witnessWorks(g1, g2, w)) {
      found = true;
      return true;
    }
    return false;
  });
  return found;
}

namespace {

template <typename F>
void forEachWitness(const GeometricType& g1, const GeometricType& g2, F&& f) {
  if (g1.n != g2.n) return;
  forEachProfilePermutation(g1, g2, [&](const std::vector<int>& sigma) {
    // eps free; epsPrime = c * eps with c in {+1,-1}
    for (int c : {1, -1}) {
      for (long mask = 0; mask < (1L << g1.n); ++mask) {
        EquivalenceWitness w;
        w.sigma = sigma;
        w.eps.resize(g1.n);
        w.epsPrime.resize(g1.n);
        for (int i = 0; i < g1.n; ++i) {
          w.eps[i] = (mask >> i) & 1 ? -1 : 1;
          w.epsPrime[i] = c * w.eps[i];
        }
        if (witnessWorks(g1, g2, w) && f(w)) return true;
      }
    }
    return false;
  });
}

}  // namespace

std::optional<EquivalenceWitness> isEquivalent(const GeometricType& g1,
                                               const GeometricType& g2) {
  std::optional<EquivalenceWitness> res;
  forEachWitness(g1, g2, [&](const EquivalenceWitness& w) {
    res = w;
    return true;
  });
  return res;
}

std::vector<EquivalenceWitness> allEquivalences(const GeometricType& g1,
                                                const GeometricType& g2) {
  std::vector<EquivalenceWitness> out;
  forEachWitness(g1, g2, [&](const EquivalenceWitness& w) {
    out.push_back(w);
    return false;
  });
  return out;
}

std::vector<GeometricType> equivalenceClass(const GeometricType& g) {
  auto rep = validate(g);
  if (!rep.ok) throw InputError("equivalenceClass requires a valid type: " + rep.locus);
  std::set<std::vector<long>> seen;  // flattened encoding for dedup
  auto key = [](const GeometricType& t) {
    std::vector<long> k{t.n};
    for (int x : t.h) k.push_back(x);
    for (int x : t.v) k.push_back(x);
    for (const auto& row : t.phi)
      for (auto [j, l] : row) {
        k.push_back(j);
        k.push_back(l);
      }
    for (const auto& row : t.u)
      for (int s : row) k.push_back(s);
    return k;
  };
  std::vector<GeometricType> out;
  std::deque<GeometricType> queue{g};
  seen.insert(key(g));
  std::vector<std::vector<int>> sigmas;
  {
    std::vector<int> sigma(g.n);
    std::iota(sigma.begin(), sigma.end(), 1);
    do sigmas.push_back(sigma);
    while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  while (!queue.empty()) {
    GeometricType cur = queue.front();
    queue.pop_front();
    out.push_back(cur);
    std::vector<GeometricType> next;
    next.push_back(flipStableOrientation(cur));
    next.push_back(flipUnstableOrientation(cur));
    for (int i = 1; i <= g.n; ++i) next.push_back(flipRectangle(cur, i));
    for (const auto& sigma : sigmas) next.push_back(relabel(cur, sigma));
    for (auto& t : next)
      if (seen.insert(key(t)).second) queue.push_back(std::move(t));
  }
  return out;
}

GeometricType orientationDoubleCover(const GeometricType& g) {
  bool allPlus = true;
  for (const auto& row : g.u)
    for (int s : row)
      if (s != 1) allPlus = false;
  if (allPlus) return g;

  GeometricType r;
  r.n = 2 * g.n;
  r.h.resize(r.n);
  r.v.resize(r.n);
  r.phi.resize(r.n);
  r.u.resize(r.n);
  for (int i = 1; i <= g.n; ++i) {
    r.h[i - 1] = r.h[g.n + i - 1] = g.h[i - 1];
    r.v[i - 1] = r.v[g.n + i - 1] = g.v[i - 1];
  }
  for (int i = 0; i < r.n; ++i) {
    r.phi[i].resize(r.h[i]);
    r.u[i].assign(r.h[i], 1);
  }
  // copy index: +copy of i is i, -copy is n+i. On the minus copy both
  // sub-orders are read reversed.
  for (int i = 1; i <= g.n; ++i)
    for (int k = 1; k <= g.h[i - 1]; ++k) {
      auto [j, l] = g.phi[i - 1][k - 1];
      int s = g.u[i - 1][k - 1];
      for (int e : {+1, -1}) {
        int srcRect = e == 1 ? i : g.n + i;
        int srcPos = e == 1 ? k : g.h[i - 1] + 1 - k;
        int te = e * s;
        int dstRect = te == 1 ? j : g.n + j;
        int dstPos = te == 1 ? l : g.v[j - 1] + 1 - l;
        r.phi[srcRect - 1][srcPos - 1] = {dstRect, dstPos};
      }
    }
  return r;
}

std::optional<std::vector<int>> orientationBalancing(const GeometricType& g) {
  // Want delta with delta_i * delta_j * u(h) = +1 for every handle h from i
  // to j: 2-coloring of the graph with edge signs u.
  std::vector<int> delta(g.n, 0);
  for (int start = 1; start <= g.n; ++start) {
    if (delta[start - 1] != 0) continue;
    delta[start - 1] = 1;
    std::deque<int> bfs{start};
    while (!bfs.empty()) {
      int i = bfs.front();
      bfs.pop_front();
      for (int k = 1; k <= g.h[i - 1]; ++k) {
        int j = g.phi[i - 1][k - 1].first;
        int want = delta[i - 1] * g.u[i - 1][k - 1];
        if (delta[j - 1] == 0) {
          delta[j - 1] = want;
          bfs.push_back(j);
        } else if (delta[j - 1] != want) {
          return std::nullopt;
        }
      }
    }
  }
  return delta;
}

}  // namespace anosov
