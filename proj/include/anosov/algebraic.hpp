#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "anosov/rational_poly.hpp"

namespace anosov {

// The real algebraic field Q(lambda). lambda is pinned down by a monic
// squarefree integer polynomial together with a rational interval isolating
// exactly one of its real roots. The polynomial need not be irreducible; all
// decisions about elements go through certified sign computation, never
// through the representation alone.
class AlgebraicField {
public:
  // Builds Q(lambda) for the largest real root of charPoly (the Perron root
  // when charPoly comes from a nonnegative irreducible matrix). Factors of x
  // are stripped so that lambda is invertible modulo minPoly.
  static std::shared_ptr<const AlgebraicField> fromCharPoly(const Poly& charPoly);

  const Poly& minPoly() const { return min_poly_; }
  int degree() const { return poly::degree(min_poly_); }
  bool lambdaIsRational() const;
  // Current isolating interval (thread-safe snapshot).
  RatInterval interval() const;
  // Halves the isolating interval (or collapses it onto a rational root).
  void refine() const;
  // Refines until hi - lo <= width.
  void refineTo(const Rat& width) const;

private:
  AlgebraicField() = default;
  Poly min_poly_;
  mutable RatInterval iv_;
  mutable std::mutex mu_;
};

using FieldPtr = std::shared_ptr<const AlgebraicField>;

// An element of Q(lambda): a polynomial in lambda of degree < deg(minPoly).
// Values are immutable; all operators are pure. Equality, sign and order are
// decided exactly (gcd test for zero, interval refinement otherwise).
class AlgebraicReal {
public:
  AlgebraicReal() = default;  // zero of no field; usable only after assignment
  AlgebraicReal(FieldPtr f, Poly coeffs);
  static AlgebraicReal fromRational(FieldPtr f, const Rat& q);
  static AlgebraicReal lambda(FieldPtr f);

  const FieldPtr& field() const { return field_; }
  const Poly& coeffs() const { return coeffs_; }

  AlgebraicReal operator+(const AlgebraicReal& o) const;
  AlgebraicReal operator-(const AlgebraicReal& o) const;
  AlgebraicReal operator*(const AlgebraicReal& o) const;
  AlgebraicReal operator/(const AlgebraicReal& o) const;  // DivisionByZero
  AlgebraicReal operator-() const;
  AlgebraicReal inverse() const;

  // Certified: 0 iff the element is exactly zero as a real number.
  int sign() const;
  bool isZero() const { return sign() == 0; }
  int compare(const AlgebraicReal& o) const;  // sign of *this - o

  bool operator==(const AlgebraicReal& o) const { return compare(o) == 0; }
  bool operator!=(const AlgebraicReal& o) const { return compare(o) != 0; }
  bool operator<(const AlgebraicReal& o) const { return compare(o) < 0; }
  bool operator<=(const AlgebraicReal& o) const { return compare(o) <= 0; }
  bool operator>(const AlgebraicReal& o) const { return compare(o) > 0; }
  bool operator>=(const AlgebraicReal& o) const { return compare(o) >= 0; }

  // Rational enclosure no wider than `width`.
  RatInterval enclosure(const Rat& width) const;
  // Decimal rendering with `digits` digits after the point (round-to-nearest
  // of a certified enclosure).
  std::string toDecimal(int digits) const;
  double toDouble() const;

private:
  void checkField(const AlgebraicReal& o) const;
  FieldPtr field_;
  Poly coeffs_;
};

AlgebraicReal pow(const AlgebraicReal& base, long e);

// Perron eigendata of a transition matrix over Q(lambda): exact widths (left
// eigenvector) and heights (right eigenvector), normalized to first entry 1,
// with certified positive entries.
struct PerronData {
  FieldPtr field;
  AlgebraicReal lambda;
  std::vector<AlgebraicReal> xi;   // widths,  xi^T A = lambda xi^T
  std::vector<AlgebraicReal> eta;  // heights, A eta = lambda eta
};

// Forward; defined in sft.hpp.
struct TransitionMatrix;

FieldPtr buildField(const TransitionMatrix& m);                // NotIrreducible
PerronData perronData(const TransitionMatrix& m, FieldPtr f);  // DegenerateKernel

}  // namespace anosov
