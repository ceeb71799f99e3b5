#pragma once

#include <optional>
#include <string>
#include <vector>

namespace anosov {

// All rectangle and position indices are 1-based, mirroring the H_i^j / V_i^j
// notation; the JSON interchange format uses the same convention.

enum class HandleKind { Horizontal, Vertical };

struct SubrectHandle {
  HandleKind kind = HandleKind::Horizontal;
  int rect = 0;  // 1..n
  int pos = 0;   // 1..h[rect] or 1..v[rect]
  friend bool operator==(const SubrectHandle&, const SubrectHandle&) = default;
  friend auto operator<=>(const SubrectHandle&, const SubrectHandle&) = default;
};

// The finite combinatorial invariant (n, h, v, phi, u). phi maps every
// horizontal handle to a vertical handle bijectively; u assigns each
// horizontal handle +1 or -1 depending on whether the return map preserves
// the orientation of the vertical foliation across it.
struct GeometricType {
  int n = 0;
  std::vector<int> h, v;
  // phi[i-1][k-1] = (j, l) meaning phi(H_i^k) = V_j^l
  std::vector<std::vector<std::pair<int, int>>> phi;
  // u[i-1][k-1] in {+1, -1}
  std::vector<std::vector<int>> u;

  SubrectHandle phiOf(int i, int k) const {
    return {HandleKind::Vertical, phi[i - 1][k - 1].first, phi[i - 1][k - 1].second};
  }
  friend bool operator==(const GeometricType&, const GeometricType&) = default;
};

enum class ValidationError {
  None,
  EmptyRectangleList,
  SumMismatch,
  IndexOutOfRange,
  PhiNotBijective,
};

struct ValidationReport {
  bool ok = true;
  ValidationError error = ValidationError::None;
  std::string locus;  // human-readable position of the first violation
};

std::string toString(ValidationError e);

// Accepts arbitrary candidate data; reports the first violated invariant.
ValidationReport validate(const GeometricType& g);

// phi^{-1} as a table: for each vertical handle V_j^l the horizontal handle
// mapping onto it. Requires a valid type.
std::vector<std::vector<SubrectHandle>> phiInverse(const GeometricType& g);

// Orientation changes. Stable flip reverses the left-to-right order of all
// vertical handles, unstable flip the bottom-to-top order of all horizontal
// handles, rectangle flip both orders within rectangle i only. u transforms
// by u'(H(h)) = eps_i * eps_j * u(h).
GeometricType flipStableOrientation(const GeometricType& g);
GeometricType flipUnstableOrientation(const GeometricType& g);
GeometricType flipRectangle(const GeometricType& g, int i);
// Relabels rectangles: old index i becomes sigma[i-1] (sigma a permutation of
// 1..n, 1-based values).
GeometricType relabel(const GeometricType& g, const std::vector<int>& sigma);

struct EquivalenceWitness {
  std::vector<int> sigma;     // rectangle relabeling, 1-based: i -> sigma[i-1]
  std::vector<int> eps;       // per-rectangle sign on horizontal order
  std::vector<int> epsPrime;  // per-rectangle sign on vertical order
  SubrectHandle map(const GeometricType& g, const SubrectHandle& x) const;
};

// Equality: witness with all eps = +1 (rectangle reindexing allowed).
bool isEqual(const GeometricType& g1, const GeometricType& g2);

// Full equivalence search over profile-matching relabelings and admissible
// sign vectors (eps_i * eps'_i constant). Deterministic lexicographic order;
// returns the first witness.
std::optional<EquivalenceWitness> isEquivalent(const GeometricType& g1,
                                               const GeometricType& g2);

// Every witness of equivalence, in search order.
std::vector<EquivalenceWitness> allEquivalences(const GeometricType& g1,
                                                const GeometricType& g2);

// The complete (finite) set of types generated from g by orientation flips,
// per-rectangle flips and relabelings; every member is equivalent to g.
std::vector<GeometricType> equivalenceClass(const GeometricType& g);

// If u is identically +1 returns g; otherwise the 2n-rectangle lift where a
// handle with u=+1 joins same-sign copies and u=-1 joins opposite-sign copies
// with reversed sub-order. Copy i+ keeps index i, copy i- becomes n+i.
GeometricType orientationDoubleCover(const GeometricType& g);

// True iff some set S of rectangle flips makes u identically +1; returns the
// flip signs (delta[i-1] = -1 means flip rectangle i) when it exists.
std::optional<std::vector<int>> orientationBalancing(const GeometricType& g);

}  // namespace anosov
