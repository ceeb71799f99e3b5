#include "anosov/sft.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <deque>

#include "anosov/algebraic.hpp"
#include "anosov/errors.hpp"

namespace anosov {

TransitionMatrix transitionMatrix(const GeometricType& g) {
  TransitionMatrix m;
  m.n = g.n;
  m.a.assign(g.n, std::vector<long>(g.n, 0));
  for (int i = 1; i <= g.n; ++i)
    for (int k = 1; k <= g.h[i - 1]; ++k) m.a[i - 1][g.phi[i - 1][k - 1].first - 1]++;
  return m;
}

bool isIrreducible(const TransitionMatrix& m) {
  auto reaches = [&](int s) {
    std::vector<bool> vis(m.n, false);
    std::deque<int> q{s};
    vis[s] = true;
    while (!q.empty()) {
      int i = q.front();
      q.pop_front();
      for (int j = 0; j < m.n; ++j)
        if (m.a[i][j] > 0 && !vis[j]) {
          vis[j] = true;
          q.push_back(j);
        }
    }
    return vis;
  };
  for (int s = 0; s < m.n; ++s) {
    auto vis = reaches(s);
    if (!std::all_of(vis.begin(), vis.end(), [](bool b) { return b; })) return false;
  }
  return true;
}

namespace {

using IntMat = std::vector<std::vector<Int>>;

IntMat mulMat(const IntMat& a, const IntMat& b) {
  size_t n = a.size();
  IntMat c(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace

Int periodicWordCount(const TransitionMatrix& m, int k) {
  if (k < 1) throw InputError("periodicWordCount requires k >= 1");
  IntMat base(m.n, std::vector<Int>(m.n));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) base[i][j] = m.a[i][j];
  IntMat acc;
  bool have = false;
  int e = k;
  while (e > 0) {
    if (e & 1) {
      acc = have ? mulMat(acc, base) : base;
      have = true;
    }
    base = mulMat(base, base);
    e >>= 1;
  }
  Int tr = 0;
  for (int i = 0; i < m.n; ++i) tr += acc[i][i];
  return tr;
}

Poly charPoly(const TransitionMatrix& m) {
  // Faddeev-LeVerrier: exact over Q
  int n = m.n;
  std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n)), M(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A[i][j] = Rat(m.a[i][j]);
    M[i][i] = 1;
  }
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  for (int k = 1; k <= n; ++k) {
    // AM = A * M
    std::vector<std::vector<Rat>> AM(n, std::vector<Rat>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (A[i][l] == 0) continue;
        for (int j = 0; j < n; ++j) AM[i][j] += A[i][l] * M[l][j];
      }
    Rat tr(0);
    for (int i = 0; i < n; ++i) tr += AM[i][i];
    c[n - k] = -tr / k;
    M = AM;
    for (int i = 0; i < n; ++i) M[i][i] += c[n - k];
  }
  return poly::fromCoeffs(std::move(c));
}

namespace {

std::string mpfrLogOfRat(const Rat& q, mpfr_rnd_t rnd, int digits) {
  mpfr_t x;
  mpfr_init2(x, 256);
  mpfr_set_q(x, q.get_mpq_t(), rnd);
  mpfr_log(x, x, rnd);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*R*f", digits, rnd, x);
  std::string s(buf);
  mpfr_free_str(buf);
  mpfr_clear(x);
  return s;
}

}  // namespace

EntropyEnclosure entropy(const TransitionMatrix& m, const Rat& tol) {
  if (tol <= 0) throw InputError("entropy tolerance must be positive");
  if (!isIrreducible(m))
    throw NotIrreducible("entropy refused: matrix is reducible, not a transitive type");
  FieldPtr f = AlgebraicField::fromCharPoly(charPoly(m));
  // log(hi) - log(lo) <= (hi - lo)/lo; refine so the log enclosure plus the
  // decimal rounding slack stays within tol.
  RatInterval iv = f->interval();
  if (iv.lo != iv.hi) {
    for (;;) {
      iv = f->interval();
      if (iv.lo == iv.hi) break;
      if (iv.lo > 0 && (iv.hi - iv.lo) / iv.lo <= tol / 2) break;
      f->refine();
    }
  }
  int digits = 2;
  Rat w(1, 100);
  while (w * 4 > tol) {
    w /= 10;
    ++digits;
  }
  EntropyEnclosure e;
  e.lambdaLo = iv.lo;
  e.lambdaHi = iv.hi;
  e.lo = mpfrLogOfRat(iv.lo, MPFR_RNDD, digits);
  e.hi = mpfrLogOfRat(iv.hi, MPFR_RNDU, digits);
  return e;
}

}  // namespace anosov
