#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anosov/algebraic.hpp"
#include "anosov/geometric_type.hpp"
#include "anosov/sft.hpp"

namespace anosov {

struct Budget {
  int maxRects = 500;
  long maxScaleExp = 12;
  int depth = 32;
};

// Axis-parallel rectangle of the developed family. x runs along the stable
// direction, y along the unstable one: width = xi[type] * lambda^scaleExp,
// height = eta[type] * lambda^{-scaleExp}. Successors sit at scaleExp + 1
// (wider, shorter), predecessors at scaleExp - 1.
struct DevelopedRectangle {
  int id = -1;
  int type = 0;  // 1..n
  long scaleExp = 0;
  AlgebraicReal x0, y0;
};

enum class Side { Bottom, Top, Left, Right };  // Bottom/Top stable boundaries

std::string toString(Side s);

// Exact affine deck transform: (type, a, x, y) |->
// (type, a + powExp, lambda^powExp * x + tx, lambda^{-powExp} * y + ty).
struct DeckTransform {
  long powExp = 0;
  AlgebraicReal tx, ty;
  DeckTransform inverse() const;
  DeckTransform composeWith(const DeckTransform& inner) const;  // this after inner
  DeckTransform power(long k) const;
};

class DevelopedPatch {
public:
  // Breadth-first development from the origin rectangle (type 1 at the unit
  // square, scaleExp 0). Requires a valid type with u identically +1
  // (OrientationNotPositive otherwise) and an irreducible transition matrix.
  // seedRects caps the eager phase (0 = use the whole budget); the remainder
  // of maxRects stays available for on-demand extension.
  static DevelopedPatch develop(const GeometricType& g, const Budget& budget, int seedRects = 0);

  const GeometricType& type() const { return g_; }
  const FieldPtr& field() const { return field_; }
  const PerronData& perron() const { return perron_; }
  const Budget& budget() const { return budget_; }
  bool lambdaIsOne() const { return lambda_is_one_; }

  int size() const { return (int)rects_.size(); }
  const DevelopedRectangle& rect(int id) const { return rects_.at(id); }
  AlgebraicReal width(int id) const;
  AlgebraicReal height(int id) const;
  AlgebraicReal x1(int id) const;
  AlgebraicReal y1(int id) const;

  int origin() const { return 0; }
  bool budgetExhausted() const { return budget_exhausted_; }
  std::vector<int> frontier() const;

  // Slot views; -1 marks a neighbor not developed yet.
  const std::vector<int>& succSlots(int id) const { return succ_.at(id); }
  const std::vector<int>& predSlots(int id) const { return pred_.at(id); }

  // Ordered neighbor lists (bottom-to-top / left-to-right). Missing slots are
  // developed on demand; FrontierIncomplete when the budget forbids it.
  std::vector<int> successors(int id);
  std::vector<int> predecessors(int id);
  int successor(int id, int k);    // k-th, 1-based
  int predecessor(int id, int l);  // l-th, 1-based

  // Unique monotone rectangle path between interior-intersecting rectangles.
  std::vector<int> monotonePath(int from, int to);

  // Applies a deck transform to a rectangle's data; returns the patch id of
  // the image if it is developed.
  std::optional<int> findImage(const DeckTransform& t, int id) const;
  DevelopedRectangle imageData(const DeckTransform& t, int id) const;
  // Monotone walk from `from` to the rectangle with the given data,
  // developing on demand; returns its id (the target must be an iterated
  // successor or predecessor of `from`).
  int walkToImage(int from, const DevelopedRectangle& target);

  AlgebraicReal lamPow(long e) const;
  AlgebraicReal constant(const Rat& q) const { return AlgebraicReal::fromRational(field_, q); }

  // Exact Markovian-intersection check over every pair of rectangles with
  // intersecting interiors. Empty result = axiom holds on the patch.
  struct AxiomViolation {
    int a, b;
    std::string what;
  };
  std::vector<AxiomViolation> checkMarkovIntersections(int threads = 1) const;

  // True if t maps every developed rectangle whose image is developed onto a
  // rectangle of the same type with matching neighbor slots.
  bool verifyDeckTransform(const DeckTransform& t) const;

  struct CrossingResult {
    std::vector<int> rects;  // maximal crossing rectangles, disjoint interiors
    std::optional<DeckTransform> deck;  // side-leaf stabilizer when periodic
    std::optional<int> anchor;          // chain rectangle the deck maps within
  };
  // Maximal rectangles meeting `id` along nontrivial vertical (resp.
  // horizontal) subrectangles whose stable (resp. unstable) boundaries avoid
  // the given stable (resp. unstable) side.
  CrossingResult crossingPredecessors(int id, Side side);
  CrossingResult crossingSuccessors(int id, Side side);

  // Rectangles whose closure contains the exact point (x, y).
  std::vector<int> rectsContaining(const AlgebraicReal& x, const AlgebraicReal& y) const;

private:
  DevelopedPatch() = default;
  struct KeyCmp {
    bool operator()(const std::tuple<int, long, AlgebraicReal, AlgebraicReal>& a,
                    const std::tuple<int, long, AlgebraicReal, AlgebraicReal>& b) const;
  };
  using Key = std::tuple<int, long, AlgebraicReal, AlgebraicReal>;
  Key keyOf(const DevelopedRectangle& r) const;

  int findOrCreate(int type, long scaleExp, AlgebraicReal x0, AlgebraicReal y0, bool& created);
  bool fillSuccessor(int id, int k);    // 1-based slot; false if budget stops it
  bool fillPredecessor(int id, int l);  // 1-based slot
  void expandAll(int id);              // best effort, respects budget

  GeometricType g_;
  FieldPtr field_;
  PerronData perron_;
  Budget budget_;
  bool lambda_is_one_ = false;
  bool budget_exhausted_ = false;
  std::vector<DevelopedRectangle> rects_;
  std::vector<std::vector<int>> succ_, pred_;
  std::map<Key, int, KeyCmp> index_;
  std::vector<std::vector<SubrectHandle>> phi_inv_;
  mutable std::map<long, AlgebraicReal> lam_pow_cache_;
};

}  // namespace anosov
