#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anosov/develop.hpp"
#include "anosov/geometric_type.hpp"

namespace anosov {

// Rectangle path over a developed patch: consecutive steps are
// successor/predecessor pairs. Nonempty by construction.
struct RectanglePath {
  std::vector<int> steps;
  int length() const { return (int)steps.size(); }
};

// One transition of a rectangle path in G: the handle of the current
// rectangle the path leaves through. A horizontal handle means a successor
// step, a vertical handle a predecessor step.
struct AbstractStep {
  int rect = 0;  // 1..n
  HandleKind kind = HandleKind::Horizontal;
  int pos = 0;
  friend bool operator==(const AbstractStep&, const AbstractStep&) = default;
  friend auto operator<=>(const AbstractStep&, const AbstractStep&) = default;
};

struct AbstractPath {
  int startType = 0;
  std::vector<AbstractStep> steps;
  friend bool operator==(const AbstractPath&, const AbstractPath&) = default;
  friend auto operator<=>(const AbstractPath&, const AbstractPath&) = default;
};

// Type of the rectangle the path ends in.
int endType(const GeometricType& g, const AbstractPath& p);
// Checks the three conditions of the rectangle-path-in-G definition.
bool isValidAbstractPath(const GeometricType& g, const AbstractPath& p);
bool isClosedAbstract(const GeometricType& g, const AbstractPath& p);
// Lexicographically minimal rotation of a closed path.
AbstractPath canonicalRotation(const GeometricType& g, const AbstractPath& p);

bool isValidPath(DevelopedPatch& p, const RectanglePath& path);
AbstractPath abstractProjection(DevelopedPatch& p, const RectanglePath& path);
// Re-develops the abstract path from startRect, extending the patch on
// demand. liftAbstract(project(q), q.front()) == q.
RectanglePath liftAbstract(DevelopedPatch& p, const AbstractPath& a, int startRect);

bool isClosed(const DevelopedPatch& p, const RectanglePath& path);
bool endpointsAgree(const DevelopedPatch& p, const RectanglePath& a, const RectanglePath& b);

struct HomotopyMove {
  char kind = 'B';  // 'A' | 'B' | 'C'
  int locus = 0;
  // For C: positions into the two half-cycles around an arc point; see
  // cycles.hpp for their construction. fromCycle/toCycle give the expanded
  // paths of the replaced and replacing initial segments.
  std::vector<int> fromSegment, toSegment;
};

// A-moves are the identity on the path word; B-moves delete a backtrack
// steps[locus] == steps[locus+2]; C-moves swap the two half-cycles around a
// boundary arc point. MoveNotApplicable on mismatch.
RectanglePath applyMove(const RectanglePath& path, const HomotopyMove& move);

// Inverse of a B-move: insert (neighbor, steps[locus]) after locus.
RectanglePath inflateB(DevelopedPatch& p, const RectanglePath& path, int locus, int neighbor);

// Deletes B-redexes leftmost-first until none remain.
RectanglePath reduceB(const RectanglePath& path);
bool hasBRedex(const RectanglePath& path);

}  // namespace anosov
