#pragma once

#include "anosov/geometric_type.hpp"

namespace anosov::fixtures {

// minimal consistent type: one rectangle, one handle
inline GeometricType t1() {
  GeometricType g;
  g.n = 1;
  g.h = {1};
  g.v = {1};
  g.phi = {{{1, 1}}};
  g.u = {{1}};
  return g;
}

inline GeometricType t1Minus() {
  GeometricType g = t1();
  g.u[0][0] = -1;
  return g;
}

// The geometric type of the Adler-Weiss two-rectangle partition of the
// hyperbolic toral automorphism (2 1; 1 1), derived from an exact tiling of
// the plane by the two boxes in Perron coordinates:
//   phi(H_1^1)=V_1^1, phi(H_1^2)=V_1^3, phi(H_1^3)=V_2^2,
//   phi(H_2^1)=V_1^2, phi(H_2^2)=V_2^1, u == +1.
inline GeometricType tcat() {
  GeometricType g;
  g.n = 2;
  g.h = {3, 2};
  g.v = {3, 2};
  g.phi = {{{1, 1}, {1, 3}, {2, 2}}, {{1, 2}, {2, 1}}};
  g.u = {{1, 1, 1}, {1, 1}};
  return g;
}

}  // namespace anosov::fixtures
