#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anosov/develop.hpp"
#include "anosov/paths.hpp"

namespace anosov {

// A point of the plane lying in no rectangle's interior: an arc point (non
// periodic, witnessed by a crossing-rectangle corner) or a periodic point
// (the unique fixed point of its stabilizer deck transform).
struct BoundaryPoint {
  enum class Kind { Arc, Periodic };
  Kind kind = Kind::Arc;
  AlgebraicReal x, y;
  // Arc witnesses: the side of `rect` the point lies on and the crossing
  // rectangle whose unstable/stable boundary cuts it out.
  int rect = -1;
  Side side = Side::Bottom;
  int crossingRect = -1;
  // Periodic witness: generator of the side-leaf stabilizer.
  std::optional<DeckTransform> stabilizer;
};

// The canonical closed rectangle path around a boundary point, together with
// the anchor rectangles of its construction (five around an arc point, the
// deduplicated quadrant-minimal list around a periodic point).
struct Cycle {
  BoundaryPoint center;
  int sign = +1;  // +1 positive, -1 negative
  std::vector<int> anchors;
  std::vector<int> anchorPos;  // index of each anchor inside path.steps
  RectanglePath path;          // developed, closed for periodic centers
  AbstractPath word;           // canonical rotation-minimal projection
};

// The complete orbital-equivalence invariant: a geometric type plus the
// finite set of closed rectangle paths in it arising from cycles around the
// boundary periodic orbits.
struct GeometricTypeWithCycles {
  GeometricType g;
  std::vector<AbstractPath> cycles;  // canonical words, sorted
};

// Arc points on one side of a rectangle: intersections of the side with the
// unstable (stable) boundaries of its crossing predecessors (successors).
std::vector<BoundaryPoint> boundaryArcPoints(DevelopedPatch& p, int rectId, Side side);

// Periodic points detected on the side's leaf: follows the crossing chain
// until a (type, position) repetition yields a deck transform, then solves
// the exact fixed point. Zero or one point per side.
std::vector<BoundaryPoint> boundaryPeriodicPoints(DevelopedPatch& p, int rectId, Side side);

// The exactly-two cycles around an arc point starting from L0 (which must
// contain the point and germs of two of its quadrants): first positive, then
// negative. Their anchors satisfy the reversal law.
std::pair<Cycle, Cycle> arcCycles(DevelopedPatch& p, const BoundaryPoint& arcPoint, int L0);

// The positive (sign=+1) or negative (sign=-1) pre-cycle around a periodic
// point starting from L0, with its associated closed rectangle path.
Cycle periodicCycle(DevelopedPatch& p, const BoundaryPoint& perPoint, int L0, int sign);

// Both pre-cycles for one representative starting rectangle per orbit of the
// point's stabilizer.
std::vector<Cycle> cycleSet(DevelopedPatch& p, const BoundaryPoint& perPoint);

// C-move material: replacing the initial segment (up to anchor k, 1..4) of
// `from` by the matching segment of `to`.
HomotopyMove makeCMove(const Cycle& from, const Cycle& to, int k, int locus);

// Rewrites an abstract path through an equivalence witness (source labels to
// target labels); closed paths stay closed.
AbstractPath transformWord(const GeometricType& src, const GeometricType& dst,
                           const EquivalenceWitness& w, const AbstractPath& path);

struct OrbitData {
  BoundaryPoint point;
  DeckTransform generator;  // stable-stabilizer generator, powExp normalized >= 0
  std::vector<Cycle> cycles;
  std::vector<AbstractPath> words;  // canonical, sorted, in developed-type labels
};

struct InvariantResult {
  GeometricType g;              // the input type
  GeometricType developedType;  // orientation-balanced type actually developed
  std::optional<EquivalenceWitness> balancing;  // g -> developedType, when g != developedType
  bool usedDoubleCover = false;
  std::shared_ptr<DevelopedPatch> patch;
  std::vector<OrbitData> orbits;
  std::vector<std::string> diagnostics;

  // The interchange form: words rewritten back into g's labels.
  GeometricTypeWithCycles invariantFile() const;
};

InvariantResult computeInvariant(const GeometricType& g, const Budget& budget);

// Lifts a closed word from the orbit's starting rectangles and returns the
// power k of the orbit generator needed to close it exactly; NotMatched when
// the lift does not land on the generator orbit of its start.
long surgeryOffset(DevelopedPatch& p, const OrbitData& orbit, const AbstractPath& word);

// The Theorem-B bookkeeping helper: the invariant with one orbit's cycle
// words composed with the k-th power of that orbit's stabilizer generator.
GeometricTypeWithCycles shiftCycles(InvariantResult& inv, int orbitIdx, long k);

enum class Verdict { OrbitEquivalent, EquivalentUpToSurgeries, NotEquivalent, Unknown };
std::string toString(Verdict v);

struct CompareResult {
  Verdict verdict = Verdict::Unknown;
  std::map<int, long> offsets;  // per orbit index of the second invariant
  std::optional<EquivalenceWitness> witness;
  std::vector<std::string> diagnostics;
};

CompareResult compare(const GeometricTypeWithCycles& gc1, const GeometricTypeWithCycles& gc2,
                      const Budget& budget);

}  // namespace anosov
