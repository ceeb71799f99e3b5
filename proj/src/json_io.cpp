#include "anosov/json_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "anosov/errors.hpp"

namespace anosov {

using nlohmann::json;

json toJson(const GeometricType& g) {
  json j;
  j["n"] = g.n;
  j["h"] = g.h;
  j["v"] = g.v;
  json phi = json::array(), u = json::array();
  for (int i = 1; i <= g.n; ++i)
    for (int k = 1; k <= g.h[i - 1]; ++k) {
      auto [jj, ll] = g.phi[i - 1][k - 1];
      phi.push_back({i, k, jj, ll});
      u.push_back({i, k, g.u[i - 1][k - 1]});
    }
  j["phi"] = phi;
  j["u"] = u;
  return j;
}

GeometricType geometricTypeFromJson(const json& j) {
  GeometricType g;
  try {
    g.n = j.at("n").get<int>();
    g.h = j.at("h").get<std::vector<int>>();
    g.v = j.at("v").get<std::vector<int>>();
    if ((int)g.h.size() != g.n || (int)g.v.size() != g.n)
      throw InputError("h and v must have length n");
    g.phi.resize(g.n);
    g.u.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
      if (g.h[i] < 1) throw InputError("h entries must be positive");
      g.phi[i].assign(g.h[i], {0, 0});
      g.u[i].assign(g.h[i], 0);
    }
    for (const auto& e : j.at("phi")) {
      int i = e.at(0), k = e.at(1), jj = e.at(2), ll = e.at(3);
      if (i < 1 || i > g.n || k < 1 || k > g.h[i - 1])
        throw InputError("phi entry out of range");
      g.phi[i - 1][k - 1] = {jj, ll};
    }
    for (const auto& e : j.at("u")) {
      int i = e.at(0), k = e.at(1), s = e.at(2);
      if (i < 1 || i > g.n || k < 1 || k > g.h[i - 1]) throw InputError("u entry out of range");
      g.u[i - 1][k - 1] = s;
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed geometric type: ") + e.what());
  }
  return g;
}

json toJson(const AbstractPath& p) {
  json steps = json::array();
  for (const auto& s : p.steps)
    steps.push_back({s.rect, s.kind == HandleKind::Horizontal ? "H" : "V", s.pos});
  return steps;
}

AbstractPath abstractPathFromJson(const json& j) {
  AbstractPath p;
  try {
    for (const auto& e : j) {
      AbstractStep s;
      s.rect = e.at(0);
      std::string kind = e.at(1);
      if (kind != "H" && kind != "V") throw InputError("step kind must be \"H\" or \"V\"");
      s.kind = kind == "H" ? HandleKind::Horizontal : HandleKind::Vertical;
      s.pos = e.at(2);
      p.steps.push_back(s);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed abstract path: ") + e.what());
  }
  if (!p.steps.empty()) p.startType = p.steps.front().rect;
  return p;
}

json toJson(const GeometricTypeWithCycles& gc) {
  json j;
  j["type"] = toJson(gc.g);
  json cycles = json::array();
  for (const auto& c : gc.cycles) cycles.push_back(toJson(c));
  j["cycles"] = cycles;
  return j;
}

GeometricTypeWithCycles invariantFromJson(const json& j) {
  GeometricTypeWithCycles gc;
  try {
    gc.g = geometricTypeFromJson(j.at("type"));
    for (const auto& e : j.at("cycles")) gc.cycles.push_back(abstractPathFromJson(e));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed invariant file: ") + e.what());
  }
  return gc;
}

json toJson(const AlgebraicReal& v) {
  json coeffs = json::array();
  for (const auto& c : v.coeffs()) coeffs.push_back(c.get_str());
  return coeffs;
}

json patchToJson(const DevelopedPatch& p) {
  json j;
  json field;
  field["minPoly"] = json::array();
  for (const auto& c : p.field()->minPoly()) field["minPoly"].push_back(c.get_str());
  auto iv = p.field()->interval();
  field["isolatingInterval"] = {iv.lo.get_str(), iv.hi.get_str()};
  json xi = json::array(), eta = json::array();
  for (const auto& v : p.perron().xi) xi.push_back(toJson(v));
  for (const auto& v : p.perron().eta) eta.push_back(toJson(v));
  field["xi"] = xi;
  field["eta"] = eta;
  j["field"] = field;
  json rects = json::array();
  for (int id = 0; id < p.size(); ++id) {
    const auto& r = p.rect(id);
    json e;
    e["id"] = r.id;
    e["type"] = r.type;
    e["scaleExp"] = r.scaleExp;
    e["x0"] = toJson(r.x0);
    e["y0"] = toJson(r.y0);
    e["succ"] = p.succSlots(id);
    e["pred"] = p.predSlots(id);
    rects.push_back(e);
  }
  j["rects"] = rects;
  j["origin"] = p.origin();
  j["frontier"] = p.frontier();
  j["budgetExhausted"] = p.budgetExhausted();
  return j;
}

std::string patchToSvg(const DevelopedPatch& p, int precision) {
  // display only; decimal approximations are never read back
  double minx = 0, miny = 0, maxx = 1, maxy = 1;
  std::vector<std::array<double, 4>> boxes;
  for (int id = 0; id < p.size(); ++id) {
    double x0 = p.rect(id).x0.toDouble();
    double y0 = p.rect(id).y0.toDouble();
    double x1 = p.x1(id).toDouble();
    double y1 = p.y1(id).toDouble();
    boxes.push_back({x0, y0, x1, y1});
    minx = std::min(minx, x0);
    miny = std::min(miny, y0);
    maxx = std::max(maxx, x1);
    maxy = std::max(maxy, y1);
  }
  double w = maxx - minx, h = maxy - miny;
  double scale = 900.0 / std::max(w, h);
  std::ostringstream os;
  os.precision(precision);
  os << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 " << w * scale << " " << h * scale
     << "'>\n";
  for (const auto& b : boxes) {
    double x = (b[0] - minx) * scale;
    double y = (maxy - b[3]) * scale;  // flip y for screen coordinates
    os << "  <rect x='" << x << "' y='" << y << "' width='" << (b[2] - b[0]) * scale
       << "' height='" << (b[3] - b[1]) * scale
       << "' fill='none' stroke='black' stroke-width='0.6'/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

namespace {
json loadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return j;
}
}  // namespace

GeometricType loadGeometricType(const std::string& path) {
  return geometricTypeFromJson(loadFile(path));
}

GeometricTypeWithCycles loadInvariant(const std::string& path) {
  return invariantFromJson(loadFile(path));
}

}  // namespace anosov
