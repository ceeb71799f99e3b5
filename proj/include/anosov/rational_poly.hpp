#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace anosov {

using Rat = mpq_class;
using Int = mpz_class;

// Dense univariate polynomial over Q, coefficients low to high.
// Invariant: empty, or the leading coefficient is nonzero.
using Poly = std::vector<Rat>;

// Closed rational interval [lo, hi]; lo == hi encodes an exact point.
struct RatInterval {
  Rat lo, hi;
};

namespace poly {

Poly fromCoeffs(std::vector<Rat> c);  // trims leading zeros
int degree(const Poly& p);            // -1 for the zero polynomial
bool isZero(const Poly& p);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rat& c);
Poly neg(const Poly& a);
// Euclidean division: returns (quotient, remainder), b != 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly mod(const Poly& a, const Poly& b);
Poly monic(const Poly& p);
Poly derivative(const Poly& p);
Poly gcd(const Poly& a, const Poly& b);  // monic gcd
// monic g = gcd(a,b) together with s,t: s*a + t*b = g.
struct Xgcd {
  Poly g, s, t;
};
Xgcd xgcd(const Poly& a, const Poly& b);

// p / gcd(p, p'); same real roots, all simple.
Poly squarefreePart(const Poly& p);

Rat eval(const Poly& p, const Rat& x);
int signAt(const Poly& p, const Rat& x);
// Interval Horner over [lo, hi]; valid for any polynomial.
RatInterval evalInterval(const Poly& p, const Rat& lo, const Rat& hi);

// Cauchy bound: every real root lies in (-B, B).
Rat cauchyBound(const Poly& p);

// Isolates the real roots of a squarefree polynomial by Descartes-style
// sign-variation counting and bisection on rational endpoints. Each returned
// interval [lo,hi] contains exactly one root; lo == hi encodes an exact
// rational root. Sorted increasing.
std::vector<RatInterval> isolateRealRoots(const Poly& p);

// Number of sign variations of p mapped onto (a,b) via the Moebius change of
// variable; 0 means no root in (a,b), 1 means exactly one.
int descartesVariations(const Poly& p, const Rat& a, const Rat& b);

std::string toString(const Poly& p, const std::string& var = "x");

}  // namespace poly
}  // namespace anosov
