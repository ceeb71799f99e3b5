#include "anosov/algebraic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cassert>
#include <sstream>

#include "anosov/errors.hpp"
#include "anosov/sft.hpp"

namespace anosov {

namespace {

// Shrinks an isolating interval until neither endpoint is a root, keeping
// exactly one root strictly inside. Collapses onto rational roots.
RatInterval normalizeInterval(const Poly& p, RatInterval iv) {
  if (iv.lo == iv.hi) return iv;
  while (poly::signAt(p, iv.lo) == 0 || poly::signAt(p, iv.hi) == 0) {
    Rat mid = (iv.lo + iv.hi) / 2;
    if (poly::signAt(p, mid) == 0) return {mid, mid};
    if (poly::descartesVariations(p, mid, iv.hi) == 1)
      iv.lo = mid;
    else
      iv.hi = mid;
  }
  return iv;
}

}  // namespace

std::shared_ptr<const AlgebraicField> AlgebraicField::fromCharPoly(const Poly& charPoly) {
  Poly m = poly::squarefreePart(charPoly);
  // strip the x factor so that lambda stays invertible modulo minPoly
  if (!m.empty() && m[0] == 0) m.erase(m.begin());
  if (poly::degree(m) < 1) throw DegenerateKernel("characteristic polynomial has no nonzero root");
  auto roots = poly::isolateRealRoots(m);
  if (roots.empty()) throw DegenerateKernel("no real root found for the Perron polynomial");
  RatInterval iv = normalizeInterval(m, roots.back());
  // narrow until at most one integer fits, then collapse onto an exact
  // rational root if there is one (monic integer polynomial: rational roots
  // are integers)
  while (iv.lo != iv.hi && iv.hi - iv.lo >= Rat(1, 2)) {
    Rat mid = (iv.lo + iv.hi) / 2;
    int s = poly::signAt(m, mid);
    if (s == 0) {
      iv = {mid, mid};
      break;
    }
    if (s == poly::signAt(m, iv.lo))
      iv.lo = mid;
    else
      iv.hi = mid;
  }
  if (iv.lo != iv.hi) {
    Rat cand = iv.lo;
    mpz_class c = cand.get_num() / cand.get_den();  // floor toward zero is fine after +1 scan
    for (long d = -1; d <= 2; ++d) {
      Rat t = Rat(c) + d;
      if (iv.lo < t && t < iv.hi && poly::signAt(m, t) == 0) {
        iv = {t, t};
        break;
      }
    }
  }
  auto f = std::shared_ptr<AlgebraicField>(new AlgebraicField());
  f->min_poly_ = std::move(m);
  f->iv_ = std::move(iv);
  return f;
}

bool AlgebraicField::lambdaIsRational() const {
  std::lock_guard<std::mutex> g(mu_);
  return iv_.lo == iv_.hi;
}

RatInterval AlgebraicField::interval() const {
  std::lock_guard<std::mutex> g(mu_);
  return iv_;
}

void AlgebraicField::refine() const {
  std::lock_guard<std::mutex> g(mu_);
  if (iv_.lo == iv_.hi) return;
  Rat mid = (iv_.lo + iv_.hi) / 2;
  int s = poly::signAt(min_poly_, mid);
  if (s == 0) {
    iv_ = {mid, mid};
    return;
  }
  if (s == poly::signAt(min_poly_, iv_.lo))
    iv_.lo = mid;
  else
    iv_.hi = mid;
}

void AlgebraicField::refineTo(const Rat& width) const {
  for (;;) {
    {
      std::lock_guard<std::mutex> g(mu_);
      if (iv_.hi - iv_.lo <= width) return;
    }
    refine();
  }
}

AlgebraicReal::AlgebraicReal(FieldPtr f, Poly coeffs) : field_(std::move(f)) {
  coeffs_ = poly::mod(poly::fromCoeffs(std::move(coeffs)), field_->minPoly());
}

AlgebraicReal AlgebraicReal::fromRational(FieldPtr f, const Rat& q) {
  return AlgebraicReal(std::move(f), q == 0 ? Poly{} : Poly{q});
}

AlgebraicReal AlgebraicReal::lambda(FieldPtr f) {
  return AlgebraicReal(std::move(f), Poly{Rat(0), Rat(1)});
}

void AlgebraicReal::checkField(const AlgebraicReal& o) const {
  if (field_ != o.field_) throw FieldMismatch("operands belong to different fields");
}

AlgebraicReal AlgebraicReal::operator+(const AlgebraicReal& o) const {
  checkField(o);
  return AlgebraicReal(field_, poly::add(coeffs_, o.coeffs_));
}

AlgebraicReal AlgebraicReal::operator-(const AlgebraicReal& o) const {
  checkField(o);
  return AlgebraicReal(field_, poly::sub(coeffs_, o.coeffs_));
}

AlgebraicReal AlgebraicReal::operator*(const AlgebraicReal& o) const {
  checkField(o);
  return AlgebraicReal(field_, poly::mul(coeffs_, o.coeffs_));
}

AlgebraicReal AlgebraicReal::operator-() const {
  return AlgebraicReal(field_, poly::neg(coeffs_));
}

AlgebraicReal AlgebraicReal::inverse() const {
  if (isZero()) throw DivisionByZero("inverse of zero");
  // minPoly may be reducible: peel off factors not vanishing at lambda until
  // the element becomes invertible modulo what is left.
  Poly m = field_->minPoly();
  Poly a = coeffs_;
  for (;;) {
    auto x = poly::xgcd(a, m);
    if (poly::degree(x.g) == 0) return AlgebraicReal(field_, x.s);
    // g divides a and a(lambda) != 0, so lambda is a root of m / g
    m = poly::divmod(m, x.g).first;
    a = poly::mod(a, m);
  }
}

AlgebraicReal AlgebraicReal::operator/(const AlgebraicReal& o) const {
  checkField(o);
  return *this * o.inverse();
}

int AlgebraicReal::sign() const {
  if (coeffs_.empty()) return 0;
  RatInterval iv = field_->interval();
  if (iv.lo == iv.hi) return sgn(poly::eval(coeffs_, iv.lo));
  // exact zero test: the element vanishes at lambda iff gcd(coeffs, minPoly)
  // has the isolated root
  Poly g = poly::gcd(coeffs_, field_->minPoly());
  if (poly::degree(g) >= 1) {
    int slo = poly::signAt(g, iv.lo), shi = poly::signAt(g, iv.hi);
    if (slo == 0 || shi == 0 || slo != shi) return 0;
  }
  for (;;) {
    RatInterval box = poly::evalInterval(coeffs_, iv.lo, iv.hi);
    if (sgn(box.lo) > 0) return 1;
    if (sgn(box.hi) < 0) return -1;
    field_->refine();
    iv = field_->interval();
    if (iv.lo == iv.hi) return sgn(poly::eval(coeffs_, iv.lo));
  }
}

int AlgebraicReal::compare(const AlgebraicReal& o) const { return (*this - o).sign(); }

RatInterval AlgebraicReal::enclosure(const Rat& width) const {
  RatInterval iv = field_->interval();
  if (iv.lo == iv.hi) {
    Rat v = poly::eval(coeffs_, iv.lo);
    return {v, v};
  }
  for (;;) {
    RatInterval box = poly::evalInterval(coeffs_, iv.lo, iv.hi);
    if (box.hi - box.lo <= width) return box;
    field_->refine();
    iv = field_->interval();
    if (iv.lo == iv.hi) {
      Rat v = poly::eval(coeffs_, iv.lo);
      return {v, v};
    }
  }
}

namespace {

std::string ratToDecimal(const Rat& q, int digits) {
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rat scaled = q * Rat(scale);
  // round half away from zero
  Int num = scaled.get_num(), den = scaled.get_den();
  Int r = (2 * num + (sgn(num) >= 0 ? den : -den)) / (2 * den);
  bool negative = sgn(r) < 0;
  std::string s = Int(abs(r)).get_str();
  if ((int)s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  return (negative ? "-" : "") + s;
}

}  // namespace

std::string AlgebraicReal::toDecimal(int digits) const {
  Rat width = Rat(1);
  for (int i = 0; i < digits + 2; ++i) width /= 10;
  RatInterval box = enclosure(width);
  return ratToDecimal((box.lo + box.hi) / 2, digits);
}

double AlgebraicReal::toDouble() const {
  RatInterval box = enclosure(Rat(1, 1000000000));
  return Rat((box.lo + box.hi) / 2).get_d();
}

AlgebraicReal pow(const AlgebraicReal& base, long e) {
  AlgebraicReal b = e >= 0 ? base : base.inverse();
  long k = e >= 0 ? e : -e;
  AlgebraicReal r = AlgebraicReal::fromRational(base.field(), 1);
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

FieldPtr buildField(const TransitionMatrix& m) {
  if (!isIrreducible(m)) throw NotIrreducible("transition matrix is not irreducible");
  return AlgebraicField::fromCharPoly(charPoly(m));
}

namespace {

// Kernel of B (n x n over Q(lambda)); requires dim ker = 1.
std::vector<AlgebraicReal> kernelVector(std::vector<std::vector<AlgebraicReal>> B,
                                        const FieldPtr& f) {
  int n = (int)B.size();
  auto zero = AlgebraicReal::fromRational(f, 0);
  auto one = AlgebraicReal::fromRational(f, 1);
  std::vector<int> pivotColOfRow;
  int row = 0;
  std::vector<bool> colIsPivot(n, false);
  for (int col = 0; col < n && row < n; ++col) {
    int pr = -1;
    for (int r = row; r < n; ++r)
      if (B[r][col].sign() != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(B[row], B[pr]);
    AlgebraicReal inv = B[row][col].inverse();
    for (int c = col; c < n; ++c) B[row][c] = B[row][c] * inv;
    for (int r = 0; r < n; ++r) {
      if (r == row) continue;
      if (B[r][col].sign() == 0) continue;
      AlgebraicReal factor = B[r][col];
      for (int c = col; c < n; ++c) B[r][c] = B[r][c] - factor * B[row][c];
    }
    colIsPivot[col] = true;
    pivotColOfRow.push_back(col);
    ++row;
  }
  int rank = row;
  if (n - rank != 1)
    throw DegenerateKernel("kernel dimension is " + std::to_string(n - rank) +
                           ", expected 1 (minimal polynomial mis-selection)");
  int freeCol = -1;
  for (int c = 0; c < n; ++c)
    if (!colIsPivot[c]) freeCol = c;
  std::vector<AlgebraicReal> vec(n, zero);
  vec[freeCol] = one;
  for (int r = 0; r < rank; ++r) {
    int pc = pivotColOfRow[r];
    vec[pc] = -B[r][freeCol];
  }
  return vec;
}

}  // namespace

PerronData perronData(const TransitionMatrix& m, FieldPtr f) {
  if (!isIrreducible(m)) throw NotIrreducible("transition matrix is not irreducible");
  int n = m.n;
  auto lam = AlgebraicReal::lambda(f);
  auto at = [&](long v) { return AlgebraicReal::fromRational(f, Rat(v)); };

  auto solve = [&](bool transpose) {
    std::vector<std::vector<AlgebraicReal>> B(n, std::vector<AlgebraicReal>(n, at(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        B[i][j] = at(transpose ? m.a[j][i] : m.a[i][j]);
        if (i == j) B[i][j] = B[i][j] - lam;
      }
    auto vec = kernelVector(std::move(B), f);
    if (vec[0].sign() == 0) throw DegenerateKernel("eigenvector has zero leading entry");
    AlgebraicReal inv = vec[0].inverse();
    for (auto& x : vec) x = x * inv;
    for (int i = 0; i < n; ++i)
      if (vec[i].sign() <= 0)
        throw DegenerateKernel("eigenvector entry " + std::to_string(i + 1) +
                               " is not positive; wrong root isolated");
    return vec;
  };

  PerronData pd{f, lam, solve(true), solve(false)};
  return pd;
}

}  // namespace anosov
