#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "anosov/errors.hpp"
#include "anosov/geometric_type.hpp"
#include "fixtures.hpp"

using namespace anosov;
using fixtures::t1;
using fixtures::tcat;

TEST_CASE("fixtures validate") {
  CHECK(validate(t1()).ok);
  CHECK(validate(tcat()).ok);
  CHECK(validate(fixtures::t1Minus()).ok);
}

TEST_CASE("validation rejects each class of broken data with a locus") {
  GeometricType g;
  CHECK((validate(g).error == ValidationError::EmptyRectangleList));

  g = t1();
  g.h = {2};  // sum h != sum v
  g.phi = {{{1, 1}, {1, 1}}};
  g.u = {{1, 1}};
  auto rep = validate(g);
  CHECK((rep.error == ValidationError::SumMismatch));
  CHECK(!rep.locus.empty());

  g = tcat();
  g.phi[0][1] = {1, 1};  // duplicates target V_1^1
  CHECK((validate(g).error == ValidationError::PhiNotBijective));

  g = tcat();
  g.phi[0][1] = {3, 1};  // rectangle index out of range
  CHECK((validate(g).error == ValidationError::IndexOutOfRange));

  g = tcat();
  g.phi[0][1] = {2, 5};  // position out of range
  CHECK((validate(g).error == ValidationError::IndexOutOfRange));

  g = tcat();
  g.u[1][0] = 0;  // sign must be +-1
  CHECK((validate(g).error == ValidationError::IndexOutOfRange));
}

TEST_CASE("flips act trivially on the one-handle type") {
  CHECK(flipStableOrientation(t1()) == t1());
  CHECK(flipUnstableOrientation(t1()) == t1());
  CHECK(flipRectangle(t1(), 1) == t1());
  CHECK_THROWS_AS(flipRectangle(t1(), 2), IndexOutOfRange);
}

TEST_CASE("flips are involutions and produce valid equivalent types") {
  auto g = tcat();
  CHECK(flipStableOrientation(flipStableOrientation(g)) == g);
  CHECK(flipUnstableOrientation(flipUnstableOrientation(g)) == g);
  CHECK(flipRectangle(flipRectangle(g, 2), 2) == g);
  for (const auto& e : {flipStableOrientation(g), flipUnstableOrientation(g),
                        flipRectangle(g, 1), flipRectangle(g, 2)}) {
    CHECK(validate(e).ok);
    CHECK(isEquivalent(g, e).has_value());
  }
  CHECK(isEquivalent(g, flipStableOrientation(flipUnstableOrientation(g))).has_value());
}

TEST_CASE("rectangle flips toggle u on handles leaving or entering the rectangle") {
  auto g = flipRectangle(tcat(), 1);
  // handle H_1^3 maps into rectangle 2: exactly one endpoint flipped
  int minus = 0;
  for (const auto& row : g.u)
    for (int s : row) minus += s == -1;
  CHECK(minus == 2);  // H_1^? into rect 2 and H_2^? into rect 1
}

TEST_CASE("isEqual and isEquivalent basics") {
  CHECK(isEqual(t1(), t1()));
  CHECK(!isEquivalent(t1(), tcat()).has_value());
  auto w = isEquivalent(tcat(), tcat());
  REQUIRE(w.has_value());
  CHECK(w->sigma == std::vector<int>{1, 2});
  CHECK(w->eps == std::vector<int>{1, 1});
}

TEST_CASE("relabeling by any permutation stays equivalent (reindexing allowed)") {
  auto g = tcat();
  auto swapped = relabel(g, {2, 1});
  CHECK(validate(swapped).ok);
  CHECK(swapped.h == std::vector<int>{2, 3});
  auto w = isEquivalent(g, swapped);
  REQUIRE(w.has_value());
  CHECK(w->sigma == std::vector<int>{2, 1});
  CHECK(isEqual(g, swapped));  // equality allows reindexing too
}

TEST_CASE("isEqual implies equivalence") {
  auto g = tcat();
  for (const auto& e : equivalenceClass(g))
    if (isEqual(g, e)) CHECK(isEquivalent(g, e).has_value());
}

TEST_CASE("equivalence is reflexive, symmetric and transitive on a flip corpus") {
  std::mt19937 rng(11);
  std::vector<GeometricType> corpus{t1(), tcat()};
  for (int i = 0; i < 12; ++i) {
    GeometricType g = corpus[rng() % corpus.size()];
    switch (rng() % 4) {
      case 0: g = flipStableOrientation(g); break;
      case 1: g = flipUnstableOrientation(g); break;
      case 2: g = flipRectangle(g, 1 + (int)(rng() % g.n)); break;
      case 3: {
        std::vector<int> sigma(g.n);
        for (int k = 0; k < g.n; ++k) sigma[k] = k + 1;
        std::shuffle(sigma.begin(), sigma.end(), rng);
        g = relabel(g, sigma);
        break;
      }
    }
    corpus.push_back(g);
  }
  for (const auto& a : corpus) CHECK(isEquivalent(a, a).has_value());
  for (size_t i = 0; i < corpus.size(); ++i)
    for (size_t j = i; j < corpus.size(); ++j) {
      bool ij = isEquivalent(corpus[i], corpus[j]).has_value();
      bool ji = isEquivalent(corpus[j], corpus[i]).has_value();
      CHECK(ij == ji);
    }
}

TEST_CASE("equivalence class of the trivial type is a point") {
  auto cls = equivalenceClass(t1());
  CHECK(cls.size() == 1);
}

TEST_CASE("equivalence class of Tcat: closed, pairwise equivalent, member-invariant") {
  auto g = tcat();
  auto cls = equivalenceClass(g);
  CHECK(cls.size() >= 4);
  for (const auto& e : cls) {
    CHECK(validate(e).ok);
    CHECK(isEquivalent(e, g).has_value());
  }
  // closure under the generators
  auto contains = [&](const GeometricType& t) {
    for (const auto& e : cls)
      if (e == t) return true;
    return false;
  };
  for (const auto& e : cls) {
    CHECK(contains(flipStableOrientation(e)));
    CHECK(contains(flipUnstableOrientation(e)));
    for (int i = 1; i <= e.n; ++i) CHECK(contains(flipRectangle(e, i)));
    CHECK(contains(relabel(e, {2, 1})));
  }
  // the class is an invariant of each member
  auto cls2 = equivalenceClass(cls[cls.size() / 2]);
  CHECK(cls2.size() == cls.size());
  for (const auto& e : cls2) CHECK(contains(e));
}

TEST_CASE("sum h = sum v is preserved by flips; double cover doubles both") {
  auto sums = [](const GeometricType& g) {
    long sh = 0, sv = 0;
    for (int x : g.h) sh += x;
    for (int x : g.v) sv += x;
    return std::pair{sh, sv};
  };
  auto g = tcat();
  auto [sh, sv] = sums(g);
  CHECK(sh == sv);
  CHECK(sums(flipStableOrientation(g)) == std::pair{sh, sv});
  CHECK(sums(flipRectangle(g, 2)) == std::pair{sh, sv});
  auto cover = orientationDoubleCover(fixtures::t1Minus());
  CHECK(sums(cover) == std::pair{2L, 2L});
}

TEST_CASE("orientation double cover") {
  CHECK(orientationDoubleCover(t1()) == t1());
  CHECK(orientationDoubleCover(tcat()) == tcat());
  auto cover = orientationDoubleCover(fixtures::t1Minus());
  CHECK(cover.n == 2);
  CHECK(cover.h == std::vector<int>{1, 1});
  CHECK(cover.v == std::vector<int>{1, 1});
  CHECK(cover.phi[0][0] == std::pair{2, 1});
  CHECK(cover.phi[1][0] == std::pair{1, 1});
  CHECK(validate(cover).ok);
  for (const auto& row : cover.u)
    for (int s : row) CHECK(s == 1);
}

TEST_CASE("orientation balancing") {
  CHECK(orientationBalancing(tcat()).has_value());
  // flipped Tcat balances back
  auto g = flipRectangle(tcat(), 1);
  auto delta = orientationBalancing(g);
  REQUIRE(delta.has_value());
  GeometricType fixedUp = g;
  for (int i = 1; i <= g.n; ++i)
    if ((*delta)[i - 1] == -1) fixedUp = flipRectangle(fixedUp, i);
  for (const auto& row : fixedUp.u)
    for (int s : row) CHECK(s == 1);
  // T1-minus cannot balance: its single loop is orientation-reversing
  CHECK(!orientationBalancing(fixtures::t1Minus()).has_value());
}
