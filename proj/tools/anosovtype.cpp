// anosovtype: validate, compare and develop geometric types of Anosov flows.
//
// Exit codes: 0 success / affirmative verdict, 1 negative verdict, 2 input
// error, 3 budget exhaustion.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "anosov/cycles.hpp"
#include "anosov/errors.hpp"
#include "anosov/json_io.hpp"
#include "anosov/sft.hpp"

using nlohmann::json;
using namespace anosov;

namespace {

int workerThreads() {
  if (const char* env = std::getenv("ANOSOVTYPE_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

void emit(const json& j, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(outPath);
  if (!out) throw InputError("cannot write " + outPath);
  out << j.dump(2) << "\n";
}

json witnessToJson(const EquivalenceWitness& w) {
  json j;
  j["sigma"] = w.sigma;
  j["eps"] = w.eps;
  j["epsPrime"] = w.epsPrime;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric types and geometric types with cycles for transitive Anosov flows"};
  app.require_subcommand(1);

  Budget budget;
  int precision = 12;
  std::string outPath;
  bool emitSvg = false;
  app.add_option("--budget-rects", budget.maxRects, "development rectangle cap")
      ->capture_default_str();
  app.add_option("--budget-scale", budget.maxScaleExp, "cap on |scaleExp|")->capture_default_str();
  app.add_option("--depth", budget.depth, "crossing-walk depth cap")->capture_default_str();
  app.add_option("--precision", precision, "decimal digits for rendered values")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", outPath, "write the report here instead of stdout");
  app.add_flag("--svg", emitSvg, "also emit an SVG rendering (develop only; display only)");

  std::string fileA, fileB;
  int countsUpTo = 3;

  auto* cValidate = app.add_subcommand("validate", "check the invariants of a geometric type");
  cValidate->add_option("file", fileA)->required();

  auto* cEquiv = app.add_subcommand("equiv", "decide equivalence of two geometric types");
  cEquiv->add_option("first", fileA)->required();
  cEquiv->add_option("second", fileB)->required();

  auto* cClass = app.add_subcommand("class", "enumerate the equivalence class");
  cClass->add_option("file", fileA)->required();

  auto* cSft = app.add_subcommand("sft", "transition matrix, irreducibility, entropy, counts");
  cSft->add_option("file", fileA)->required();
  cSft->add_option("--counts", countsUpTo, "periodic word counts for k = 1..K")
      ->capture_default_str();

  auto* cDevelop = app.add_subcommand("develop", "develop a finite patch with exact coordinates");
  cDevelop->add_option("file", fileA)->required();

  auto* cCycles = app.add_subcommand("cycles", "compute the geometric type with cycles");
  cCycles->add_option("file", fileA)->required();

  auto* cCompare = app.add_subcommand("compare", "compare two geometric types with cycles");
  cCompare->add_option("first", fileA)->required();
  cCompare->add_option("second", fileB)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cValidate->parsed()) {
      GeometricType g = loadGeometricType(fileA);
      auto rep = validate(g);
      json j;
      j["ok"] = rep.ok;
      if (!rep.ok) {
        j["error"] = toString(rep.error);
        j["locus"] = rep.locus;
      }
      emit(j, outPath);
      return rep.ok ? 0 : 1;
    }

    if (cEquiv->parsed()) {
      GeometricType g1 = loadGeometricType(fileA);
      GeometricType g2 = loadGeometricType(fileB);
      for (const auto* g : {&g1, &g2}) {
        auto rep = validate(*g);
        if (!rep.ok) throw InputError("invalid input type: " + rep.locus);
      }
      auto w = isEquivalent(g1, g2);
      json j;
      j["equivalent"] = bool(w);
      j["equal"] = isEqual(g1, g2);
      if (w) j["witness"] = witnessToJson(*w);
      emit(j, outPath);
      return w ? 0 : 1;
    }

    if (cClass->parsed()) {
      GeometricType g = loadGeometricType(fileA);
      auto cls = equivalenceClass(g);
      json j;
      j["size"] = cls.size();
      json members = json::array();
      for (const auto& e : cls) members.push_back(toJson(e));
      j["members"] = members;
      emit(j, outPath);
      return 0;
    }

    if (cSft->parsed()) {
      GeometricType g = loadGeometricType(fileA);
      auto rep = validate(g);
      if (!rep.ok) throw InputError("invalid input type: " + rep.locus);
      TransitionMatrix m = transitionMatrix(g);
      json j;
      j["matrix"] = m.a;
      bool irr = isIrreducible(m);
      j["irreducible"] = irr;
      json counts;
      for (int k = 1; k <= countsUpTo; ++k)
        counts[std::to_string(k)] = periodicWordCount(m, k).get_str();
      j["counts"] = counts;
      if (irr) {
        Rat tol = 1;
        for (int i = 0; i < precision; ++i) tol /= 10;
        auto e = entropy(m, tol);
        j["entropy"] = {{"lo", e.lo}, {"hi", e.hi}};
      }
      emit(j, outPath);
      return 0;
    }

    if (cDevelop->parsed()) {
      GeometricType g = loadGeometricType(fileA);
      bool covered = false;
      for (const auto& row : g.u)
        for (int s : row) covered |= s != 1;
      if (covered) g = orientationDoubleCover(g);
      DevelopedPatch p = DevelopedPatch::develop(g, budget);
      json j = patchToJson(p);
      j["doubleCover"] = covered;
      auto violations = p.checkMarkovIntersections(workerThreads());
      json vj = json::array();
      for (const auto& v : violations) vj.push_back({{"a", v.a}, {"b", v.b}, {"what", v.what}});
      j["markovViolations"] = vj;
      if (emitSvg) {
        std::string svgPath = outPath.empty() ? "patch.svg" : outPath + ".svg";
        std::ofstream svg(svgPath);
        svg << patchToSvg(p, precision);
        j["svg"] = svgPath;
      }
      emit(j, outPath);
      return 0;
    }

    if (cCycles->parsed()) {
      GeometricType g = loadGeometricType(fileA);
      InvariantResult inv = computeInvariant(g, budget);
      json j = toJson(inv.invariantFile());
      j["orbits"] = inv.orbits.size();
      j["diagnostics"] = inv.diagnostics;
      j["doubleCover"] = inv.usedDoubleCover;
      emit(j, outPath);
      return inv.diagnostics.empty() || !inv.orbits.empty() ? 0 : 3;
    }

    if (cCompare->parsed()) {
      GeometricTypeWithCycles a = loadInvariant(fileA);
      GeometricTypeWithCycles b = loadInvariant(fileB);
      CompareResult r = compare(a, b, budget);
      json j;
      j["verdict"] = toString(r.verdict);
      json offsets;
      for (auto [orbit, k] : r.offsets) offsets[std::to_string(orbit)] = k;
      j["offsets"] = offsets;
      if (r.witness) j["witness"] = witnessToJson(*r.witness);
      j["diagnostics"] = r.diagnostics;
      emit(j, outPath);
      if (r.verdict == Verdict::OrbitEquivalent) return 0;
      if (r.verdict == Verdict::Unknown) return 3;
      return 1;
    }
  } catch (const BudgetExhausted& e) {
    std::cerr << "{\"error\":\"BudgetExhausted\",\"detail\":\"" << e.what() << "\"}\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "{\"error\":\"" << e.code() << "\",\"detail\":\"" << e.what() << "\"}\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"internal\",\"detail\":\"" << e.what() << "\"}\n";
    return 2;
  }
  return 2;
}
