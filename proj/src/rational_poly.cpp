#include "anosov/rational_poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace anosov::poly {

Poly fromCoeffs(std::vector<Rat> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }
bool isZero(const Poly& p) { return p.empty(); }

Poly add(const Poly& a, const Poly& b) {
  std::vector<Rat> c(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return fromCoeffs(std::move(c));
}

Poly sub(const Poly& a, const Poly& b) {
  std::vector<Rat> c(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  return fromCoeffs(std::move(c));
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rat> c(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return fromCoeffs(std::move(c));
}

Poly scale(const Poly& a, const Rat& c) {
  if (c == 0) return {};
  Poly r = a;
  for (auto& x : r) x *= c;
  return r;
}

Poly neg(const Poly& a) { return scale(a, Rat(-1)); }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  assert(!b.empty());
  Poly r = a;
  if (degree(a) < degree(b)) return {{}, r};
  std::vector<Rat> q(a.size() - b.size() + 1, Rat(0));
  const Rat& lead = b.back();
  for (int i = degree(a) - degree(b); i >= 0; --i) {
    size_t top = i + b.size() - 1;
    if (top >= r.size() || r[top] == 0) continue;
    Rat f = r[top] / lead;
    q[i] = f;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] -= f * b[j];
  }
  return {fromCoeffs(std::move(q)), fromCoeffs(std::move(r))};
}

Poly mod(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly monic(const Poly& p) {
  if (p.empty() || p.back() == 1) return p;
  return scale(p, Rat(1) / p.back());
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  std::vector<Rat> d(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * Rat(static_cast<long>(i));
  return fromCoeffs(std::move(d));
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.empty()) {
    Poly r = mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Xgcd xgcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  Poly s0 = {Rat(1)}, s1 = {};
  Poly t0 = {}, t1 = {Rat(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    Poly s = sub(s0, mul(q, s1));
    Poly t = sub(t0, mul(q, t1));
    r0 = std::move(r1); r1 = std::move(r);
    s0 = std::move(s1); s1 = std::move(s);
    t0 = std::move(t1); t1 = std::move(t);
  }
  if (!r0.empty() && r0.back() != 1) {
    Rat inv = Rat(1) / r0.back();
    r0 = scale(r0, inv); s0 = scale(s0, inv); t0 = scale(t0, inv);
  }
  return {r0, s0, t0};
}

Poly squarefreePart(const Poly& p) {
  if (degree(p) <= 1) return monic(p);
  Poly g = gcd(p, derivative(p));
  if (degree(g) == 0) return monic(p);
  return monic(divmod(p, g).first);
}

Rat eval(const Poly& p, const Rat& x) {
  Rat r(0);
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

int signAt(const Poly& p, const Rat& x) { return sgn(eval(p, x)); }

RatInterval evalInterval(const Poly& p, const Rat& lo, const Rat& hi) {
  Rat rlo(0), rhi(0);
  for (size_t i = p.size(); i-- > 0;) {
    // [rlo,rhi] * [lo,hi] + p[i]
    Rat c1 = rlo * lo, c2 = rlo * hi, c3 = rhi * lo, c4 = rhi * hi;
    Rat nlo = std::min(std::min(c1, c2), std::min(c3, c4));
    Rat nhi = std::max(std::max(c1, c2), std::max(c3, c4));
    rlo = nlo + p[i];
    rhi = nhi + p[i];
  }
  return {rlo, rhi};
}

Rat cauchyBound(const Poly& p) {
  assert(!p.empty());
  Rat m(0);
  for (size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, Rat(abs(p[i] / p.back())));
  return m + 1;
}

namespace {

// Taylor shift p(x+a), synthetic division.
Poly shift(const Poly& p, const Rat& a) {
  Poly r = p;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = r.size() - 1; j + 1 > i + 1; --j) r[j - 1] += a * r[j];
  return fromCoeffs(std::move(r));
}

// p(c*x)
Poly stretch(const Poly& p, const Rat& c) {
  Poly r = p;
  Rat f(1);
  for (size_t i = 1; i < r.size(); ++i) {
    f *= c;
    r[i] *= f;
  }
  return fromCoeffs(std::move(r));
}

int signVariations(const Poly& p) {
  int v = 0, last = 0;
  for (const auto& c : p) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

int descartesVariations(const Poly& p, const Rat& a, const Rat& b) {
  // map (a,b) -> (0,1): q(x) = p(a + (b-a)x); then (0,1) -> (0,inf):
  // r(x) = (1+x)^n q(x/(1+x)) = reverse(q) shifted by 1.
  Poly q = stretch(shift(p, a), b - a);
  Poly rev(q.rbegin(), q.rend());
  rev = fromCoeffs(std::move(rev));
  return signVariations(shift(rev, Rat(1)));
}

static void isolateRec(const Poly& p, const Rat& a, const Rat& b,
                       std::vector<RatInterval>& out) {
  int v = descartesVariations(p, a, b);
  if (v == 0) return;
  if (v == 1) {
    out.push_back({a, b});
    return;
  }
  Rat mid = (a + b) / 2;
  isolateRec(p, a, mid, out);
  if (signAt(p, mid) == 0) out.push_back({mid, mid});
  isolateRec(p, mid, b, out);
}

std::vector<RatInterval> isolateRealRoots(const Poly& p) {
  std::vector<RatInterval> out;
  if (degree(p) <= 0) return out;
  Rat bound = cauchyBound(p);
  if (signAt(p, -bound) == 0) out.push_back({-bound, -bound});
  isolateRec(p, -bound, bound, out);
  if (signAt(p, bound) == 0) out.push_back({bound, bound});
  std::sort(out.begin(), out.end(),
            [](const RatInterval& x, const RatInterval& y) { return x.lo < y.lo; });
  return out;
}

std::string toString(const Poly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    if (!first) os << (p[i] > 0 ? " + " : " - ");
    else if (p[i] < 0) os << "-";
    first = false;
    Rat c = abs(p[i]);
    if (i == 0 || c != 1) os << c.get_str();
    if (i > 0) {
      if (c != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace anosov::poly
