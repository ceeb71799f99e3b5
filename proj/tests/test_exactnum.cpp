#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "anosov/algebraic.hpp"
#include "anosov/errors.hpp"
#include "anosov/sft.hpp"

using namespace anosov;

namespace {

TransitionMatrix mat(std::vector<std::vector<long>> a) {
  TransitionMatrix m;
  m.n = (int)a.size();
  m.a = std::move(a);
  return m;
}

AlgebraicReal q(const FieldPtr& f, long num, long den = 1) {
  return AlgebraicReal::fromRational(f, Rat(num, den));
}

}  // namespace

TEST_CASE("identity matrix gives lambda = 1 with unit eigenvectors") {
  auto m = mat({{1}});
  auto f = buildField(m);
  CHECK(f->lambdaIsRational());
  CHECK(f->interval().lo == Rat(1));
  auto pd = perronData(m, f);
  CHECK(pd.xi.size() == 1);
  CHECK(pd.xi[0] == q(f, 1));
  CHECK(pd.eta[0] == q(f, 1));
}

TEST_CASE("cat-map matrix: minimal polynomial x^2-3x+1, eigendata 1, lambda-2") {
  auto m = mat({{2, 1}, {1, 1}});
  auto f = buildField(m);
  CHECK(f->minPoly() == Poly{Rat(1), Rat(-3), Rat(1)});
  f->refineTo(Rat(1, 64));
  auto iv = f->interval();
  CHECK(iv.lo >= Rat(5, 2));  // root ~2.618 isolated away from the conjugate ~0.382
  CHECK(iv.hi <= Rat(3));
  auto pd = perronData(m, f);
  AlgebraicReal lam = AlgebraicReal::lambda(f);
  CHECK(pd.eta[0] == q(f, 1));
  CHECK(pd.eta[1] == lam - q(f, 2));
  CHECK(pd.xi[1] == lam - q(f, 2));  // symmetric matrix: xi = eta
  // residual (A - lambda I) eta == 0 componentwise, exactly
  AlgebraicReal r0 = (q(f, 2) - lam) * pd.eta[0] + q(f, 1) * pd.eta[1];
  AlgebraicReal r1 = q(f, 1) * pd.eta[0] + (q(f, 1) - lam) * pd.eta[1];
  CHECK(r0.isZero());
  CHECK(r1.isZero());
}

TEST_CASE("periodic-but-irreducible matrix is accepted with lambda = 1") {
  auto m = mat({{0, 1}, {1, 0}});
  CHECK(isIrreducible(m));
  auto f = buildField(m);
  CHECK(f->lambdaIsRational());
  CHECK(f->interval().lo == Rat(1));
  auto pd = perronData(m, f);
  CHECK(pd.xi[0] == q(f, 1));
  CHECK(pd.xi[1] == q(f, 1));
  CHECK(pd.eta[1] == q(f, 1));
}

TEST_CASE("reducible matrices are refused") {
  auto m = mat({{1, 1}, {0, 1}});
  CHECK(!isIrreducible(m));
  CHECK_THROWS_AS(buildField(m), NotIrreducible);
}

TEST_CASE("sign and comparison against the minimal polynomial relation") {
  auto f = buildField(mat({{2, 1}, {1, 1}}));
  AlgebraicReal lam = AlgebraicReal::lambda(f);
  CHECK((lam - q(f, 1)).sign() == 1);
  CHECK(q(f, 0).sign() == 0);
  // lambda^2 == 3 lambda - 1
  CHECK((lam * lam).compare(q(f, 3) * lam - q(f, 1)) == 0);
  CHECK(lam * lam == q(f, 3) * lam - q(f, 1));
}

TEST_CASE("field axioms on pseudo-random elements") {
  auto f = buildField(mat({{2, 1}, {1, 1}}));
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<long> d(-9, 9);
  auto rnd = [&] {
    return AlgebraicReal(f, Poly{Rat(d(rng)), Rat(d(rng), 1 + std::abs(d(rng)))});
  };
  for (int it = 0; it < 50; ++it) {
    AlgebraicReal a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    if (!a.isZero()) CHECK(a * a.inverse() == AlgebraicReal::fromRational(f, 1));
  }
}

TEST_CASE("compare is a total order consistent with enclosures") {
  auto f = buildField(mat({{2, 1}, {1, 1}}));
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-6, 6);
  std::vector<AlgebraicReal> xs;
  for (int i = 0; i < 12; ++i) xs.push_back(AlgebraicReal(f, Poly{Rat(d(rng)), Rat(d(rng))}));
  for (const auto& a : xs)
    for (const auto& b : xs) {
      int c = a.compare(b);
      CHECK(c == -b.compare(a));
      if (c != 0) {
        auto ea = a.enclosure(Rat(1, 1L << 40));
        auto eb = b.enclosure(Rat(1, 1L << 40));
        if (c < 0) CHECK(ea.lo <= eb.hi);
        if (c > 0) CHECK(eb.lo <= ea.hi);
      }
    }
}

TEST_CASE("division: zero divisors of a reducible modulus are handled") {
  // charpoly(diag-ish irreducible with rational root): use x^2-1 via the swap
  // matrix; minPoly = x^2 - 1 is squarefree but reducible, lambda = 1.
  auto f = AlgebraicField::fromCharPoly(Poly{Rat(-1), Rat(0), Rat(1)});
  CHECK(f->interval().lo == Rat(1));
  AlgebraicReal lam = AlgebraicReal::lambda(f);
  // lam + 1 = 2 is a zero divisor mod x^2-1 but invertible as a real
  AlgebraicReal v = lam + q(f, 1);
  CHECK(v.sign() > 0);
  CHECK(v * v.inverse() == q(f, 1));
  CHECK_THROWS_AS((lam - q(f, 1)).inverse(), DivisionByZero);
}

TEST_CASE("decimal rendering") {
  auto f = buildField(mat({{2, 1}, {1, 1}}));
  AlgebraicReal lam = AlgebraicReal::lambda(f);
  // lambda = (3+sqrt5)/2 = 2.6180339887...
  CHECK(lam.toDecimal(6) == "2.618034");
  CHECK(q(f, -1, 4).toDecimal(3) == "-0.250");
}

TEST_CASE("field mismatch is refused") {
  auto f1 = buildField(mat({{2, 1}, {1, 1}}));
  auto f2 = buildField(mat({{1, 1}, {1, 1}}));
  CHECK_THROWS_AS(AlgebraicReal::lambda(f1) + AlgebraicReal::lambda(f2), FieldMismatch);
}
