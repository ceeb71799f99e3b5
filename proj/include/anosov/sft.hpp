#pragma once

#include <string>
#include <vector>

#include "anosov/geometric_type.hpp"
#include "anosov/rational_poly.hpp"

namespace anosov {

// a[i][j] = number of horizontal subrectangles of rectangle i+1 whose image
// under phi lies in rectangle j+1. Row sums = h, column sums = v.
struct TransitionMatrix {
  int n = 0;
  std::vector<std::vector<long>> a;
};

TransitionMatrix transitionMatrix(const GeometricType& g);

bool isIrreducible(const TransitionMatrix& m);

// trace(m^k) with exact integers.
Int periodicWordCount(const TransitionMatrix& m, int k);

// Characteristic polynomial det(xI - A), exact (Faddeev-LeVerrier).
Poly charPoly(const TransitionMatrix& m);

struct EntropyEnclosure {
  Rat lambdaLo, lambdaHi;  // certified bracket of the Perron root
  std::string lo, hi;      // decimal bounds of log(lambda), width <= tol
};

// Certified enclosure of log(Perron root), width <= tol. Reducible matrices
// are refused: the type cannot come from a transitive flow at this level.
EntropyEnclosure entropy(const TransitionMatrix& m, const Rat& tol);

}  // namespace anosov
