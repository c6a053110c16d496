#include "liesphere/workbench.hpp"

#include "liesphere/conformal.hpp"
#include "liesphere/mesh.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>

namespace liesphere::workbench {

namespace {

// ---------------------------------------------------------------- schema

enum class Kind { curve, ccurve, anycurve, sphere, grid, omega, dupin, cyclides };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::curve: return "sphere curve";
    case Kind::ccurve: return "conformal curve";
    case Kind::anycurve: return "curve";
    case Kind::sphere: return "sphere";
    case Kind::grid: return "grid";
    case Kind::omega: return "omega0 structure";
    case Kind::dupin: return "Dupin cyclide";
    case Kind::cyclides: return "cyclide congruence";
  }
  return "?";
}

enum class Val { number, integer, string, boolean, numbers, vec3, vec6 };

struct Ref {
  const char* key;
  Kind kind;
};
struct Param {
  const char* key;
  Val val;
  bool required;
};
struct OpSpec {
  std::vector<Ref> refs;
  std::vector<Param> params;
  std::vector<Kind> produces;  // bound to "as"
};

const std::map<std::string, OpSpec>& op_table() {
  static const std::map<std::string, OpSpec> t = {
      {"envelope", {{{"curve", Kind::curve}}, {{"n_theta", Val::integer, true}}, {Kind::grid}}},
      {"curve_lift", {{{"curve", Kind::ccurve}}, {{"n_theta", Val::integer, true}}, {Kind::grid}}},
      {"tube",
       {{{"curve", Kind::ccurve}},
        {{"a", Val::number, true}, {"n_theta", Val::integer, true}},
        {Kind::grid, Kind::curve}}},
      {"validate", {{{"grid", Kind::grid}}, {}, {}}},
      {"channel", {{{"grid", Kind::grid}}, {{"expect", Val::string, false}, {"lie_cyclide", Val::boolean, false}}, {}}},
      {"omega0",
       {{{"grid", Kind::grid}, {"curve", Kind::anycurve}},
        {{"normalisation", Val::string, true}, {"p", Val::vec6, false}, {"q_uu", Val::number, false}},
        {Kind::omega}}},
      {"conserved",
       {{{"omega", Kind::omega}},
        {{"p", Val::vec6, false}, {"lambdas", Val::numbers, true}, {"negative_control", Val::boolean, false}},
        {}}},
      {"flatness", {{{"omega", Kind::omega}}, {{"lambdas", Val::numbers, true}}, {}}},
      {"darboux", {{{"grid", Kind::grid}, {"omega", Kind::omega}}, {{"m", Val::number, true}}, {Kind::grid, Kind::curve}}},
      {"calapso", {{{"grid", Kind::grid}, {"omega", Kind::omega}}, {{"lambda", Val::number, true}}, {Kind::grid}}},
      {"ribaucour",
       {{{"a", Kind::anycurve}, {"b", Kind::anycurve}},
        {{"expect", Val::string, true}, {"min_abs_u", Val::number, false}},
        {}}},
      {"cyclides",
       {{{"f", Kind::grid}, {"s", Kind::anycurve}, {"hat_f", Kind::grid}, {"hat_s", Kind::anycurve}}, {}, {Kind::cyclides}}},
      {"darboux_pair",
       {{{"f", Kind::grid}, {"s", Kind::anycurve}, {"hat_f", Kind::grid}, {"hat_s", Kind::anycurve}},
        {{"expect", Val::boolean, true}},
        {}}},
      {"dupin", {{}, {{"torus", Val::numbers, false}}, {Kind::dupin}}},
      {"partner_curve",
       {{{"curve", Kind::anycurve}, {"start", Kind::sphere}},
        {{"beta", Val::numbers, true}, {"gamma", Val::numbers, true}},
        {Kind::curve}}},
      {"circle_congruence", {{{"c1", Kind::ccurve}, {"c2", Kind::ccurve}}, {}, {}}},
      {"tube_agreement", {{{"c1", Kind::ccurve}, {"c2", Kind::ccurve}}, {{"radii", Val::numbers, true}}, {}}},
      {"spherical_lines", {{{"grid", Kind::grid}}, {{"axis", Val::string, true}}, {}}},
  };
  return t;
}

void schema_fail(const std::string& where, const std::string& what) { throw SchemaError(where + ": " + what); }

bool is_vec(const json& j, size_t n) {
  if (!j.is_array() || j.size() != n) return false;
  for (const auto& x : j)
    if (!x.is_number()) return false;
  return true;
}

void check_val(const json& j, Val v, const std::string& where) {
  bool ok = false;
  switch (v) {
    case Val::number: ok = j.is_number(); break;
    case Val::integer: ok = j.is_number_integer(); break;
    case Val::string: ok = j.is_string(); break;
    case Val::boolean: ok = j.is_boolean(); break;
    case Val::numbers:
      ok = j.is_array() && !j.empty();
      for (const auto& x : j) ok = ok && x.is_number();
      break;
    case Val::vec3: ok = is_vec(j, 3); break;
    case Val::vec6: ok = is_vec(j, 6); break;
  }
  if (!ok) schema_fail(where, "wrong type");
}

void check_center(const json& c, const std::string& where) {
  if (!c.is_object() || c.size() != 1) schema_fail(where, "center needs exactly one of line, circle, helix, points");
  if (c.contains("line")) {
    const json& l = c["line"];
    if (!l.is_object() || !is_vec(l.value("point", json()), 3) || !is_vec(l.value("direction", json()), 3))
      schema_fail(where, "line needs point and direction 3-vectors");
  } else if (c.contains("circle")) {
    const json& l = c["circle"];
    if (!l.is_object() || !is_vec(l.value("center", json()), 3) || !l.value("radius", json()).is_number())
      schema_fail(where, "circle needs center and radius");
  } else if (c.contains("helix")) {
    const json& l = c["helix"];
    if (!l.is_object() || !l.value("radius", json()).is_number() || !l.value("pitch", json()).is_number())
      schema_fail(where, "helix needs radius and pitch");
  } else if (c.contains("points")) {
    if (!c["points"].is_array()) schema_fail(where, "points must be an array");
    for (const auto& p : c["points"])
      if (!is_vec(p, 3)) schema_fail(where, "points must be 3-vectors");
  } else {
    schema_fail(where, "unknown center preset");
  }
}

int check_grid(const json& g, const std::string& where) {
  if (!g.is_object() || !g.value("n", json()).is_number_integer()) schema_fail(where, "grid needs integer n");
  const int n = g["n"].get<int>();
  if (n < 8) schema_fail(where, "grid needs n >= 8");
  const bool closed = g.value("closed", false);
  if (!closed && !is_vec(g.value("range", json()), 2)) schema_fail(where, "open grid needs range [a, b]");
  if (!closed && !(g["range"][1].get<double>() > g["range"][0].get<double>())) schema_fail(where, "empty range");
  return n;
}

using Defs = std::map<std::string, std::vector<Kind>>;

bool kind_matches(Kind have, Kind want) {
  if (want == Kind::anycurve) return have == Kind::curve || have == Kind::ccurve;
  return have == want;
}

bool has(const Defs& d, const std::string& n, Kind want) {
  const auto it = d.find(n);
  if (it == d.end()) return false;
  for (Kind k : it->second)
    if (kind_matches(k, want)) return true;
  return false;
}

void check_object(const std::string& name, const json& o, Defs& defs) {
  const std::string where = "objects." + name;
  if (!o.is_object() || !o.value("type", json()).is_string()) schema_fail(where, "needs a type");
  const std::string type = o["type"];
  if (type == "sphere_curve" || type == "conformal_curve") {
    if (!o.contains("center")) schema_fail(where, "needs center");
    check_center(o["center"], where);
    if (!o.contains("grid")) schema_fail(where, "needs grid");
    const int n = check_grid(o["grid"], where);
    if (o["center"].contains("points") && static_cast<int>(o["center"]["points"].size()) != n)
      schema_fail(where, "point count differs from grid n");
    if (type == "sphere_curve") {
      if (!o.contains("radius")) schema_fail(where, "needs radius");
      const json& r = o["radius"];
      const bool ok = r.is_number() || (r.is_object() && r.size() == 1 &&
                                        ((r.contains("polynomial") && r["polynomial"].is_array()) ||
                                         (r.contains("samples") && r["samples"].is_array() &&
                                          static_cast<int>(r["samples"].size()) == n)));
      if (!ok) schema_fail(where, "radius must be a number, {polynomial: [...]} or {samples: [n values]}");
      defs[name] = {Kind::curve};
    } else {
      if (o.contains("p")) check_val(o["p"], Val::vec6, where + ".p");
      defs[name] = {Kind::ccurve};
    }
  } else if (type == "sphere") {
    if (!is_vec(o.value("center", json()), 3) || !o.value("radius", json()).is_number())
      schema_fail(where, "sphere needs center and radius");
    defs[name] = {Kind::sphere};
  } else if (type == "plane") {
    if (!is_vec(o.value("normal", json()), 3) || !o.value("offset", json()).is_number())
      schema_fail(where, "plane needs normal and offset");
    defs[name] = {Kind::sphere};
  } else if (type == "point") {
    if (!is_vec(o.value("position", json()), 3)) schema_fail(where, "point needs position");
    defs[name] = {Kind::sphere};
  } else {
    schema_fail(where, "unknown type '" + type + "'");
  }
}

void require_ref(const json& st, const char* key, Kind want, const Defs& defs,
                 const std::string& where) {
  if (!st.value(key, json()).is_string()) schema_fail(where, std::string("needs '") + key + "'");
  const std::string n = st[key];
  const auto it = defs.find(n);
  if (it == defs.end()) schema_fail(where, "'" + n + "' is not defined before use");
  if (!has(defs, n, want))
    schema_fail(where, "'" + n + "' is a " + kind_name(it->second.front()) + ", expected a " + kind_name(want));
}

bool safe_file(const std::string& f) {
  return !f.empty() && f.find('/') == std::string::npos && f.find('\\') == std::string::npos && f != "." &&
         f != ".." && f != "report.json";
}

}  // namespace

void check_scene(const json& scene) {
  if (!scene.is_object()) schema_fail("scene", "must be a JSON object");
  if (!scene.value("schema_version", json()).is_number_integer() || scene["schema_version"].get<int>() != kSchemaVersion)
    schema_fail("scene", "schema_version must be " + std::to_string(kSchemaVersion));
  if (scene.contains("seed") && !scene["seed"].is_number_unsigned()) schema_fail("scene", "seed must be a non-negative integer");
  if (scene.contains("name") && !scene["name"].is_string()) schema_fail("scene", "name must be a string");
  Defs defs;
  if (scene.contains("objects")) {
    if (!scene["objects"].is_object()) schema_fail("objects", "must be an object");
    for (const auto& [name, o] : scene["objects"].items()) check_object(name, o, defs);
  }
  if (!scene.value("pipeline", json()).is_array() || scene["pipeline"].empty())
    schema_fail("pipeline", "must be a non-empty array");
  std::set<std::string> ids;
  int k = 0;
  for (const auto& st : scene["pipeline"]) {
    const std::string where = "pipeline[" + std::to_string(k++) + "]";
    if (!st.is_object() || !st.value("op", json()).is_string()) schema_fail(where, "needs op");
    const std::string op = st["op"];
    const auto it = op_table().find(op);
    if (it == op_table().end()) schema_fail(where, "unknown op '" + op + "'");
    const OpSpec& spec = it->second;
    std::string id = op + "#" + std::to_string(k - 1);
    if (st.contains("id")) {
      if (!st["id"].is_string() || st["id"].get<std::string>().empty()) schema_fail(where, "id must be a string");
      id = st["id"];
    }
    if (!ids.insert(id).second) schema_fail(where, "duplicate id '" + id + "'");
    for (const Ref& r : spec.refs) require_ref(st, r.key, r.kind, defs, where);
    for (const Param& p : spec.params) {
      if (!st.contains(p.key)) {
        if (p.required) schema_fail(where, std::string("needs '") + p.key + "'");
        continue;
      }
      check_val(st[p.key], p.val, where + "." + p.key);
    }
    if (st.contains("n_theta") && st["n_theta"].get<int>() < 8) schema_fail(where, "n_theta must be >= 8");
    if (st.contains("tolerance")) {
      if (!st["tolerance"].is_object()) schema_fail(where, "tolerance must be an object");
      for (const auto& [tk, tv] : st["tolerance"].items())
        if (!tv.is_number() || !(tv.get<double>() > 0)) schema_fail(where, "tolerance '" + tk + "' must be positive");
    }
    if (op == "omega0") {
      const std::string nm = st["normalisation"];
      if (nm != "unit" && nm != "against_p") schema_fail(where, "normalisation must be unit or against_p");
    }
    if (op == "ribaucour") {
      const std::string e = st["expect"];
      if (e != "pair" && e != "not_pair") schema_fail(where, "expect must be pair or not_pair");
    }
    if (op == "spherical_lines") {
      const std::string a = st["axis"];
      if (a != "u" && a != "th") schema_fail(where, "axis must be u or th");
    }
    if (op == "channel" && st.contains("expect")) {
      const std::string e = st["expect"];
      if (e != "none" && e != "dir1" && e != "dir2" && e != "both") schema_fail(where, "expect must be none, dir1, dir2 or both");
    }
    if (op == "darboux") {
      const json& p = st.value("phi0", json());
      const bool ok = p.is_object() && p.size() >= 1 &&
                      ((p.contains("vector") && is_vec(p["vector"], 6)) ||
                       (p.contains("sphere") && p["sphere"].is_string()) || (p.contains("random") && p["random"].is_object()));
      if (!ok) schema_fail(where, "phi0 must be {vector: [6]}, {sphere: name} or {random: {...}}");
      if (p.contains("sphere")) require_ref(p, "sphere", Kind::sphere, defs, where + ".phi0");
    }
    if (op == "dupin") {
      const json& s = st.value("spheres", json());
      if (!s.is_array() || s.size() != 3) schema_fail(where, "dupin needs three sphere names");
      for (const auto& n : s) {
        if (!n.is_string() || !has(defs, n.get<std::string>(), Kind::sphere))
          schema_fail(where, "dupin spheres must name sphere objects");
      }
      if (st.contains("torus") && st["torus"].size() != 2) schema_fail(where, "torus needs [R, r]");
    }
    if (op == "tube" && st["a"].get<double>() == 0.0) schema_fail(where, "tube radius must be nonzero");
    if (!spec.produces.empty()) {
      if (!st.value("as", json()).is_string()) schema_fail(where, "needs 'as'");
      const std::string as = st["as"];
      if (defs.count(as)) schema_fail(where, "'" + as + "' is already defined");
      defs[as] = spec.produces;
    }
  }
  if (scene.contains("outputs")) {
    if (!scene["outputs"].is_array()) schema_fail("outputs", "must be an array");
    std::set<std::string> files;
    int o = 0;
    for (const auto& out : scene["outputs"]) {
      const std::string where = "outputs[" + std::to_string(o++) + "]";
      if (!out.is_object() || !out.value("file", json()).is_string()) schema_fail(where, "needs file");
      const std::string f = out["file"];
      if (!safe_file(f)) schema_fail(where, "file must be a plain file name");
      if (!files.insert(f).second) schema_fail(where, "duplicate file '" + f + "'");
      if (out.contains("mesh")) {
        const std::string n = out.value("mesh", "");
        if (!has(defs, n, Kind::grid) && !has(defs, n, Kind::dupin))
          schema_fail(where, "mesh must name a grid or Dupin cyclide");
      } else if (out.contains("congruence")) {
        const std::string n = out.value("congruence", "");
        if (!has(defs, n, Kind::cyclides)) schema_fail(where, "congruence must name a cyclides result");
      } else if (out.contains("csv")) {
        if (!out["csv"].is_string() || !ids.count(out["csv"].get<std::string>())) schema_fail(where, "csv must name a stage id");
      } else {
        schema_fail(where, "needs one of mesh, congruence, csv");
      }
    }
  }
}

namespace {

// ---------------------------------------------------------------- runtime

Vec3 vec3(const json& j) { return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>()); }
LieVec vec6(const json& j) {
  LieVec v;
  for (int k = 0; k < 6; ++k) v(k) = j[k].get<double>();
  return v;
}

double poly(const std::vector<double>& c, double u) {
  double y = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) y = y * u + *it;
  return y;
}

CurveGrid grid_of(const json& g) {
  const int n = g["n"];
  if (g.value("closed", false)) return CurveGrid::closed(n);
  return CurveGrid::open(n, g["range"][0].get<double>(), g["range"][1].get<double>());
}

std::optional<CenterFn> center_fn(const json& c) {
  if (c.contains("line")) return presets::line(vec3(c["line"]["point"]), vec3(c["line"]["direction"]));
  if (c.contains("circle")) return presets::circle(vec3(c["circle"]["center"]), c["circle"]["radius"].get<double>());
  if (c.contains("helix")) return presets::helix(c["helix"]["radius"].get<double>(), c["helix"]["pitch"].get<double>());
  return std::nullopt;
}

struct GridEntry {
  LegendreGrid g;
  std::optional<CurvatureData> cd;
  std::optional<ChannelReport> ch;
};

struct OmegaEntry {
  Omega0Structure om;
  std::string grid, curve;
};

struct Ctx {
  Exec exec;
  std::mt19937_64 rng;
  std::map<std::string, SphereCurve> curves;
  std::map<std::string, ConformalCurve> ccurves;
  std::map<std::string, LieVec> spheres;
  std::map<std::string, GridEntry> grids;
  std::map<std::string, OmegaEntry> omegas;
  std::map<std::string, DupinCyclide> dupins;
  std::map<std::string, CyclideCongruences> cyclides;
  std::map<std::string, json> series;  // per stage id, column -> values
  json stages = json::array();
  json assertions = json::array();

  const SphereCurve& curve(const std::string& n) const {
    if (auto it = curves.find(n); it != curves.end()) return it->second;
    return ccurves.at(n).lift();
  }
  GridEntry& grid(const std::string& n) { return grids.at(n); }

  const CurvatureData& cd(const std::string& n) {
    GridEntry& e = grids.at(n);
    if (!e.cd) e.cd = curvature_data(e.g, {}, exec);
    return *e.cd;
  }
  const ChannelReport& ch(const std::string& n) {
    GridEntry& e = grids.at(n);
    if (!e.ch) e.ch = is_channel(e.g, cd(n), {}, exec);
    return *e.ch;
  }
};

class Stage {
 public:
  Stage(Ctx& c, const json& st, std::string id) : c_(c), st_(st), id_(std::move(id)) {}

  double tol(const std::string& name, double dflt) const {
    if (st_.contains("tolerance") && st_["tolerance"].contains(name)) return st_["tolerance"][name].get<double>();
    return dflt;
  }
  // relation: "<=", ">=", ">" or "==" (categorical, measured 1 when equal)
  void check(const std::string& name, double measured, double tolerance, const std::string& rel = "<=") {
    bool pass = false;
    if (rel == "<=") pass = measured <= tolerance;
    else if (rel == ">=") pass = measured >= tolerance;
    else if (rel == ">") pass = measured > tolerance;
    json a = {{"stage", id_}, {"name", name}, {"measured", measured}, {"tolerance", tolerance}, {"relation", rel}, {"pass", pass}};
    c_.assertions.push_back(a);
  }
  void check_label(const std::string& name, const std::string& actual, const std::string& expected) {
    json a = {{"stage", id_}, {"name", name}, {"measured", actual}, {"tolerance", expected}, {"relation", "=="},
              {"pass", actual == expected}};
    c_.assertions.push_back(a);
  }
  json& diag() { return diag_; }
  void series(const std::string& col, std::vector<double> v) { c_.series[id_][col] = std::move(v); }
  void finish() { c_.stages.push_back({{"id", id_}, {"op", st_["op"]}, {"diagnostics", diag_}}); }

 private:
  Ctx& c_;
  const json& st_;
  std::string id_;
  json diag_ = json::object();
};

json validation_json(const ValidationReport& v) {
  return {{"isotropy", v.isotropy}, {"contact", v.contact}, {"contact_tol", v.contact_tol},
          {"immersion", v.immersion}, {"pass", v.pass}};
}

json channel_json(const ChannelReport& r) {
  return {{"circular", to_string(r.circular)}, {"circular_by_n", to_string(r.circular_by_n)},
          {"variation1", r.variation1}, {"variation2", r.variation2}, {"n1", r.n1}, {"n2", r.n2},
          {"tol", r.tol}, {"agree", r.agree}};
}

std::vector<double> u_values(const CurveGrid& g) {
  std::vector<double> u(g.n);
  for (int i = 0; i < g.n; ++i) u[i] = g.u(i);
  return u;
}

double default_rib_tol(const CurveGrid& g) { return std::max(1e-8, 10.0 * g.du * g.du); }

LieVec phi0_of(Ctx& c, const json& p) {
  if (p.contains("vector")) return vec6(p["vector"]);
  if (p.contains("sphere")) return c.spheres.at(p["sphere"].get<std::string>());
  // random: a lightcone point of P(a) span{three random point spheres}
  const json& r = p["random"];
  const double a = r.value("parallel", 0.0);
  std::normal_distribution<double> nd(0.0, r.value("scale", 1.0));
  std::uniform_real_distribution<double> ud(0.0, 2.0 * std::numbers::pi);
  const Mat6 pa = parallel_transform_matrix(a);
  std::vector<LieVec> v;
  for (int k = 0; k < 3; ++k) {
    const double x = nd(c.rng), y = nd(c.rng), z = nd(c.rng);
    v.push_back(pa * point_lift(Vec3(x, y, z)).rep());
  }
  return phi0_from_subspace(span(v), ud(c.rng));
}

void run_stage(Ctx& c, const json& st, Stage& s) {
  const std::string op = st["op"];
  const Exec ex = c.exec;

  if (op == "envelope" || op == "curve_lift") {
    const std::string cn = st["curve"];
    const SphereCurve& sc = c.curve(cn);
    const EnvelopeResult e = envelope(sc, st["n_theta"].get<int>(), {}, ex);
    double mem = 0.0;
    for (int i = 0; i < e.grid.n_u(); ++i)
      for (int j = 0; j < e.grid.n_th(); ++j) mem = std::max(mem, e.grid.element(i, j).membership_residual(sc.value(i)));
    s.diag()["holonomy_defect"] = e.holonomy_defect;
    s.diag()["closed"] = e.closed;
    s.diag()["n_u"] = e.grid.n_u();
    s.diag()["n_theta"] = e.grid.n_th();
    s.check("curve_in_elements", mem, s.tol("membership", 1e-10));
    if (op == "curve_lift") {
      const ConformalCurve& cc = c.ccurves.at(cn);
      double orth = 0.0;
      for (int i = 0; i < sc.size(); ++i)
        orth = std::max(orth, std::abs(inner(sc.value(i), cc.p_vec())) / sc.value(i).norm());
      s.check("s1_orthogonal_to_p", orth, s.tol("p_orthogonality", 1e-12));
    }
    c.grids[st["as"]] = GridEntry{e.grid, {}, {}};
    return;
  }
  if (op == "tube") {
    const TubeResult t = tube(c.ccurves.at(st["curve"].get<std::string>()), st["a"].get<double>(),
                              st["n_theta"].get<int>(), ex);
    s.diag()["focal_margin"] = t.focal_margin;
    c.grids[st["as"]] = GridEntry{t.grid, {}, {}};
    c.curves[st["as"]] = t.curve;
    return;
  }
  if (op == "validate") {
    ValidationOptions o;
    o.isotropy_tol = s.tol("isotropy", o.isotropy_tol);
    o.immersion_tol = s.tol("immersion", o.immersion_tol);
    if (st.contains("tolerance") && st["tolerance"].contains("contact")) o.contact_tol = st["tolerance"]["contact"];
    const ValidationReport v = validate_legendre(c.grid(st["grid"]).g, o, ex);
    s.diag() = validation_json(v);
    s.check("isotropy", v.isotropy, o.isotropy_tol);
    s.check("contact", v.contact, v.contact_tol);
    s.check("immersion", v.immersion, o.immersion_tol, ">=");
    return;
  }
  if (op == "channel") {
    const std::string gn = st["grid"];
    const CurvatureData& cd = c.cd(gn);
    const ChannelReport& r = c.ch(gn);
    s.diag() = channel_json(r);
    s.diag()["umbilic_count"] = cd.umbilic_count;
    if (st.contains("expect")) s.check_label("circular", to_string(r.circular), st["expect"]);
    s.check_label("criteria_agree", r.agree ? "yes" : "no", "yes");
    if (st.value("lie_cyclide", false)) {
      s.check("N_dir1", r.n1, r.tol);
      s.check("N_dir2", r.n2, r.tol);
    }
    return;
  }
  if (op == "omega0") {
    const std::string gn = st["grid"], cn = st["curve"];
    const SphereCurve& sc = c.curve(cn);
    const std::string nm = st["normalisation"];
    const LieVec p = st.contains("p") ? vec6(st["p"]) : basis(6);
    const SpecialLift lift = nm == "unit" ? special_lift_unit(sc) : special_lift_against(sc, p);
    Omega0Structure om = omega0_form(c.grid(gn).g, c.ch(gn), lift, ex);
    s.diag()["closedness"] = om.closedness;
    s.diag()["bracket"] = om.bracket;
    s.diag()["lift_membership"] = om.lift_membership;
    s.diag()["star"] = om.star.describe();
    s.check("closedness", om.closedness, s.tol("closedness", 1e-6));
    s.check("bracket", om.bracket, s.tol("bracket", 1e-12));
    s.check("lift_in_elements", om.lift_membership, s.tol("membership", 1e-10));
    if (st.contains("q_uu")) {
      double e = 0.0;
      for (double q : om.q_uu) e = std::max(e, std::abs(q - st["q_uu"].get<double>()));
      s.check("q_uu", e, s.tol("q_uu", 1e-10));
    }
    s.series("u", u_values(sc.grid()));
    s.series("q_uu", om.q_uu);
    c.omegas[st["as"]] = OmegaEntry{std::move(om), gn, cn};
    return;
  }
  if (op == "conserved") {
    const OmegaEntry& oe = c.omegas.at(st["omega"]);
    const LieVec p = st.contains("p") ? vec6(st["p"]) : basis(6);
    const auto lambdas = st["lambdas"].get<std::vector<double>>();
    const ConservedReport r = conserved_quantity(oe.om, p, lambdas);
    for (size_t k = 0; k < lambdas.size(); ++k)
      s.check("residual(lambda=" + json(lambdas[k]).dump() + ")", r.residuals[k], s.tol("residual", 1e-8));
    s.series("lambda", r.lambdas);
    s.series("residual", r.residuals);
    if (st.value("negative_control", false)) {
      const Omega0Structure bad =
          omega0_form(c.grid(oe.grid).g, c.ch(oe.grid), special_lift_unit(c.curve(oe.curve)), ex);
      double worst = 0.0;
      for (double l : lambdas)
        if (l != 0.0) worst = std::max(worst, conserved_residual(bad, p, l));
      s.diag()["unit_lift_residual"] = worst;
      s.check("unit_lift_fails", worst, s.tol("negative_control", 1e-3), ">=");
    }
    return;
  }
  if (op == "flatness") {
    const auto lambdas = st["lambdas"].get<std::vector<double>>();
    const FlatnessReport r = flatness_check(c.omegas.at(st["omega"]).om, lambdas, ex);
    for (size_t k = 0; k < lambdas.size(); ++k)
      s.check("holonomy(lambda=" + json(lambdas[k]).dump() + ")", r.defects[k], s.tol("defect", 1e-6));
    s.series("lambda", r.lambdas);
    s.series("defect", r.defects);
    return;
  }
  if (op == "darboux") {
    const std::string gn = st["grid"];
    const OmegaEntry& oe = c.omegas.at(st["omega"]);
    const LieVec phi0 = phi0_of(c, st["phi0"]);
    DarbouxResult d = darboux_transform(c.grid(gn).g, oe.om, st["m"].get<double>(), phi0, {}, ex);
    const std::string as = st["as"];
    c.grids[as] = GridEntry{d.hat_f, {}, {}};
    c.curves[as] = d.hat_s;
    const ValidationReport v = validate_legendre(d.hat_f, {}, ex);
    const ChannelReport& ch = c.ch(as);
    const RibaucourReport rb = verify_ribaucour(c.curve(oe.curve), d.hat_s);
    double sph = 0.0;
    for (int i = 0; i < d.hat_f.n_u(); ++i) sph = std::max(sph, spherical_line_residual(d.hat_f, Axis::th, i).residual);
    s.diag()["null_drift"] = d.null_drift;
    s.diag()["validation"] = validation_json(v);
    s.diag()["channel"] = channel_json(ch);
    s.diag()["ribaucour"] = rb.max_residual;
    s.diag()["spherical_theta_lines"] = sph;
    s.check("null_drift", d.null_drift, s.tol("null_drift", 1e-10));
    s.check_label("validates", v.pass ? "yes" : "no", "yes");
    s.check_label("dir1_circular", ch.dir1_circular() ? "yes" : "no", "yes");
    s.check("ribaucour", rb.max_residual, s.tol("ribaucour", 1e-6));
    s.check("spherical_theta_lines", sph, s.tol("spherical", 1e-8));
    std::vector<double> drift(d.phi.size());
    for (size_t i = 0; i < d.phi.size(); ++i) drift[i] = inner(d.phi[i], d.phi[i]) / d.phi[i].squaredNorm();
    s.series("u", u_values(d.hat_s.grid()));
    s.series("phi_null", drift);
    return;
  }
  if (op == "calapso") {
    const std::string gn = st["grid"];
    const OmegaEntry& oe = c.omegas.at(st["omega"]);
    const CalapsoResult r = calapso_transform(c.grid(gn).g, oe.om, st["lambda"].get<double>(), ex);
    const std::string as = st["as"];
    c.grids[as] = GridEntry{r.grid, {}, {}};
    const ChannelReport& ch = c.ch(as);
    const double map = curvature_sphere_mapping(r, c.cd(gn), c.cd(as));
    s.diag()["ortho_defect"] = r.gauge.ortho_defect;
    s.diag()["gauge_residual"] = r.gauge.gauge_residual;
    s.diag()["q_residual"] = r.q_residual;
    s.diag()["channel"] = channel_json(ch);
    s.diag()["curvature_sphere_mapping"] = map;
    s.check("ortho_defect", r.gauge.ortho_defect, s.tol("ortho", 1e-8));
    s.check("q_invariant", r.q_residual, s.tol("q", 1e-8));
    s.check_label("dir1_circular", ch.dir1_circular() ? "yes" : "no", c.ch(gn).dir1_circular() ? "yes" : "no");
    s.check("curvature_spheres_map", map, s.tol("mapping", 1e-6));
    return;
  }
  if (op == "ribaucour") {
    const SphereCurve& a = c.curve(st["a"]);
    const SphereCurve& b = c.curve(st["b"]);
    const RibaucourReport r = verify_ribaucour(a, b);
    s.diag()["max_residual"] = r.max_residual;
    s.diag()["worst_sample"] = r.worst;
    s.series("u", u_values(a.grid()));
    s.series("residual", r.residuals);
    if (st["expect"] == "pair") {
      s.check("residual", r.max_residual, s.tol("residual", default_rib_tol(a.grid())));
    } else {
      const double umin = st.value("min_abs_u", 0.0);
      double m = std::numeric_limits<double>::infinity();
      for (int i = 0; i < a.size(); ++i)
        if (std::abs(a.grid().u(i)) >= umin) m = std::min(m, r.residuals[i]);
      s.check("min_residual", m, s.tol("threshold", 1e-2), ">=");
    }
    return;
  }
  if (op == "cyclides" || op == "darboux_pair") {
    const std::string f = st["f"], hf = st["hat_f"];
    const SphereCurve& sc = c.curve(st["s"]);
    const SphereCurve& hs = c.curve(st["hat_s"]);
    if (op == "darboux_pair") {
      const double t = s.tol("parallel", 1e-6);
      const DarbouxPairStructure d = darboux_pair_structure(c.grid(f).g, sc, c.grid(hf).g, hs, t);
      s.diag() = {{"normalisation", d.normalisation}, {"inclusion", d.inclusion}, {"parallel", d.parallel},
                  {"closedness", d.closedness}, {"tol", d.tol}, {"pass", d.pass}};
      if (st["expect"].get<bool>()) {
        s.check("normalisation", d.normalisation, 1e-10);
        s.check("inclusion", d.inclusion, d.tol);
        s.check("parallel", d.parallel, d.tol);
      } else {
        s.check("inclusion", d.inclusion, d.tol, ">");
      }
      return;
    }
    const RibaucourPair p{&c.grid(f).g, &c.cd(f), &sc, &c.grid(hf).g, &c.cd(hf), &hs};
    CyclideCongruences cy = ribaucour_cyclides(p, ex);
    const CongruenceContact cc = congruence_contact(p, cy, 32, ex);
    s.diag() = {{"coincidence1", cy.coincidence1}, {"coincidence2", cy.coincidence2}, {"duality1", cy.duality1},
                {"duality2", cy.duality2}, {"constancy1", cy.constancy1}, {"constancy2", cy.constancy2},
                {"intersection", cy.intersection}, {"min_separation", cy.min_separation},
                {"sphere_contact", cc.sphere_contact}, {"tangency", cc.tangency},
                {"line_membership", cc.line_membership}, {"failures", cy.failures}};
    s.check("intersection_rank1", cy.intersection, s.tol("intersection", 1e-8));
    s.check("coincidence_D1", cy.coincidence1, s.tol("coincidence", 1e-6));
    s.check("constancy_D1_theta", cy.constancy1, s.tol("constancy", 1e-6));
    s.check("duality_D1", cy.duality1, s.tol("duality", 1e-6));
    s.check("cyclide_sphere_contact", cc.sphere_contact, s.tol("contact", 1e-8));
    s.check("cyclide_tangency", cc.tangency, s.tol("contact", 1e-8));
    s.check("circular_lines_on_cyclides", cc.line_membership, s.tol("spherical", 1e-8));
    c.cyclides[st["as"]] = std::move(cy);
    return;
  }
  if (op == "dupin") {
    const auto names = st["spheres"].get<std::vector<std::string>>();
    const DupinCyclide d = dupin_from_spheres(c.spheres.at(names[0]), c.spheres.at(names[1]), c.spheres.at(names[2]));
    const double r = dupin_contact_residual(d, 32);
    s.diag()["contact"] = r;
    s.check("family_contact", r, s.tol("contact", 1e-10));
    if (st.contains("torus")) {
      const double big = st["torus"][0], small = st["torus"][1];
      const MeshOutput m = mesh_of(d, 64);
      double e = 0.0;
      for (const Vec3& v : m.vertices) e = std::max(e, std::abs(std::hypot(std::hypot(v.x(), v.y()) - big, v.z()) - small));
      s.diag()["torus_distance"] = e;
      s.check("torus_distance", e, s.tol("torus", 1e-6));
    }
    c.dupins[st["as"]] = d;
    return;
  }
  if (op == "partner_curve") {
    const SphereCurve& sc = c.curve(st["curve"]);
    const auto b = st["beta"].get<std::vector<double>>(), g = st["gamma"].get<std::vector<double>>();
    SphereCurve out = ribaucour_partner_curve(
        sc, [b](double u) { return poly(b, u); }, [g](double u) { return poly(g, u); }, c.spheres.at(st["start"]));
    const RibaucourReport r = verify_ribaucour(sc, out);
    s.diag()["ribaucour"] = r.max_residual;
    s.diag()["null_residual"] = out.max_null_residual();
    s.check("ribaucour", r.max_residual, s.tol("residual", 10.0 * sc.grid().du * sc.grid().du));
    c.curves[st["as"]] = std::move(out);
    return;
  }
  if (op == "circle_congruence") {
    const CircleCongruenceReport r =
        circle_congruence_check(c.ccurves.at(st["c1"]), c.ccurves.at(st["c2"]), 32, -1.0, ex);
    s.diag() = {{"ribaucour", r.ribaucour}, {"membership", r.membership}, {"tangency", r.tangency},
                {"nullity", r.nullity}, {"p_orthogonality", r.p_orthogonality}};
    s.check("membership", r.membership, s.tol("membership", 1e-8));
    s.check("tangency_angle", r.tangency, s.tol("tangency", 1e-4));
    s.check("nullity", r.nullity, s.tol("nullity", 1e-12));
    s.check("p_orthogonality", r.p_orthogonality, s.tol("p_orthogonality", 1e-12));
    return;
  }
  if (op == "tube_agreement") {
    const ConformalCurve& a = c.ccurves.at(st["c1"]);
    const ConformalCurve& b = c.ccurves.at(st["c2"]);
    const RibaucourReport r0 = ribaucour_curve_check(a, b);
    const double t = s.tol("residual", default_rib_tol(a.grid()));
    for (double rad : st["radii"].get<std::vector<double>>()) {
      const RibaucourReport rt = verify_ribaucour(tube_curve(a, rad), tube_curve(b, rad));
      double diff = 0.0;
      for (size_t i = 0; i < r0.residuals.size(); ++i) diff = std::max(diff, std::abs(r0.residuals[i] - rt.residuals[i]));
      const std::string tag = "(a=" + json(rad).dump() + ")";
      s.check_label("verdict" + tag, rt.max_residual <= t ? "pair" : "not_pair", r0.max_residual <= t ? "pair" : "not_pair");
      s.check("residual_difference" + tag, diff, s.tol("agreement", 1e-8));
    }
    return;
  }
  if (op == "spherical_lines") {
    const GridEntry& e = c.grid(st["grid"]);
    const bool th = st["axis"] == "th";
    const int lines = th ? e.g.n_u() : e.g.n_th();
    double mx = 0.0;
    for (int k = 0; k < lines; ++k) mx = std::max(mx, spherical_line_residual(e.g, th ? Axis::th : Axis::u, k).residual);
    s.diag()["max_residual"] = mx;
    s.check("spherical", mx, s.tol("spherical", 1e-8));
    return;
  }
  throw Error("unhandled op " + op);
}

void build_objects(Ctx& c, const json& scene) {
  if (!scene.contains("objects")) return;
  for (const auto& [name, o] : scene["objects"].items()) {
    try {
      const std::string type = o["type"];
      if (type == "sphere") {
        c.spheres[name] = sphere_lift(vec3(o["center"]), o["radius"].get<double>()).rep();
      } else if (type == "plane") {
        c.spheres[name] = plane_lift(vec3(o["normal"]), o["offset"].get<double>()).rep();
      } else if (type == "point") {
        c.spheres[name] = point_lift(vec3(o["position"])).rep();
      } else {
        const CurveGrid g = grid_of(o["grid"]);
        const auto cf = center_fn(o["center"]);
        std::vector<Vec3> pts;
        if (!cf)
          for (const auto& p : o["center"]["points"]) pts.push_back(vec3(p));
        if (type == "conformal_curve") {
          const LieVec p = o.contains("p") ? vec6(o["p"]) : basis(6);
          c.ccurves[name] = cf ? ConformalCurve::from_fn(*cf, g, p) : ConformalCurve::from_points(pts, g, p);
          continue;
        }
        const json& r = o["radius"];
        const bool sampled = !cf || r.contains("samples");
        if (!sampled) {
          const RadiusFn rf = r.is_number() ? presets::constant_radius(r.get<double>())
                                            : presets::polynomial_radius(r["polynomial"].get<std::vector<double>>());
          c.curves[name] = presets::sphere_curve(*cf, rf, g);
        } else {
          std::vector<double> radii(g.n);
          if (cf)
            for (int i = 0; i < g.n; ++i) pts.push_back((*cf)(g.u(i))[0]);
          for (int i = 0; i < g.n; ++i)
            radii[i] = r.is_number() ? r.get<double>()
                       : r.contains("samples") ? r["samples"][i].get<double>()
                                               : poly(r["polynomial"].get<std::vector<double>>(), g.u(i));
          c.curves[name] = presets::sampled_sphere_curve(pts, radii, g);
        }
      }
    } catch (const std::exception& e) {
      throw StageError("objects." + name, e.what());
    }
  }
}

std::string csv_text(const json& cols) {
  std::string out;
  size_t rows = 0;
  bool first = true;
  for (const auto& [k, v] : cols.items()) {
    out += (first ? "" : ",") + k;
    first = false;
    rows = std::max(rows, v.size());
  }
  out += "\n";
  char buf[64];
  for (size_t r = 0; r < rows; ++r) {
    first = true;
    for (const auto& [k, v] : cols.items()) {
      if (!first) out += ",";
      first = false;
      if (r < v.size() && v[r].is_number()) {
        std::snprintf(buf, sizeof buf, "%.17g", v[r].get<double>());
        out += buf;
      }
    }
    out += "\n";
  }
  return out;
}

void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot open " + p.string());
  f << s;
  if (!f) throw Error("write failed for " + p.string());
}

json mesh_json(const std::string& file, const MeshOutput& m) {
  return {{"file", file}, {"kind", "mesh"}, {"vertices", m.vertices.size()}, {"faces", m.faces.size()},
          {"dropped_vertices", m.dropped_vertices}, {"dropped_cells", m.dropped_cells}};
}

}  // namespace

RunResult run_scene(const json& scene, const std::string& out_dir, Exec exec) {
  check_scene(scene);
  Ctx c{exec, std::mt19937_64(scene.value("seed", std::uint64_t{1})), {}, {}, {}, {}, {}, {}, {}, {}};
  json error;
  std::map<std::string, std::string> ids;
  try {
    build_objects(c, scene);
    int k = 0;
    for (const auto& st : scene["pipeline"]) {
      const std::string id = st.value("id", st["op"].get<std::string>() + "#" + std::to_string(k));
      ++k;
      Stage s(c, st, id);
      try {
        run_stage(c, st, s);
      } catch (const std::exception& e) {
        throw StageError(id, e.what());
      }
      s.finish();
    }
  } catch (const StageError& e) {
    error = {{"stage", e.stage()}, {"message", e.what()}};
  }

  RunResult r;
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  json outputs = json::array();
  if (error.is_null() && scene.contains("outputs")) {
    try {
      for (const auto& o : scene["outputs"]) {
        const std::string file = o["file"];
        if (o.contains("mesh")) {
          const std::string n = o["mesh"];
          const MeshOutput m = c.grids.count(n) ? mesh_of(c.grids.at(n).g) : mesh_of(c.dupins.at(n), o.value("n", 64));
          write_obj(m, (dir / file).string());
          outputs.push_back(mesh_json(file, m));
        } else if (o.contains("congruence")) {
          const CyclideCongruences& cy = c.cyclides.at(o["congruence"].get<std::string>());
          std::vector<int> idx;
          if (o.contains("u_indices")) {
            idx = o["u_indices"].get<std::vector<int>>();
          } else {
            const int cnt = o.value("count", 5), nu = static_cast<int>(cy.d1.size());
            for (int q = 0; q < cnt; ++q) idx.push_back(cnt == 1 ? nu / 2 : q * (nu - 1) / (cnt - 1));
          }
          MeshOutput all;
          for (int i : idx) {
            if (i < 0 || i >= static_cast<int>(cy.d1.size())) throw Error("congruence index out of range");
            append(all, mesh_of(dupin_from_splitting(cy.d1[i]), o.value("n", 48)));
          }
          write_obj(all, (dir / file).string());
          json mj = mesh_json(file, all);
          mj["cyclides"] = idx;
          outputs.push_back(mj);
        } else {
          const std::string id = o["csv"];
          if (!c.series.count(id)) throw Error("stage '" + id + "' has no tabular output");
          write_text(dir / file, csv_text(c.series.at(id)));
          outputs.push_back({{"file", file}, {"kind", "csv"}});
        }
        r.files.push_back(file);
      }
    } catch (const std::exception& e) {
      error = {{"stage", "outputs"}, {"message", e.what()}};
    }
  }

  bool pass = error.is_null();
  for (const auto& a : c.assertions) pass = pass && a["pass"].get<bool>();
  json rep = {{"report_version", kReportVersion}, {"schema_version", kSchemaVersion},
              {"scene", scene.value("name", "")}, {"seed", scene.value("seed", std::uint64_t{1})},
              {"stages", c.stages}, {"assertions", c.assertions}, {"outputs", outputs}, {"pass", pass}};
  if (!error.is_null()) rep["error"] = error;
  write_text(dir / "report.json", rep.dump(2) + "\n");
  r.files.push_back("report.json");
  r.report = std::move(rep);
  r.pass = pass;
  return r;
}

std::string default_out_dir() {
  const char* e = std::getenv("LIESPHERE_OUT");
  return e && *e ? std::string(e) : std::string("liesphere_out");
}

std::vector<std::string> demo_names() {
  return {"cylinder-darboux", "torus-cyclide", "cylinder-omega0", "cylinder-calapso",
          "helix-channel",    "curves-ribaucour", "partner-curve"};
}

json demo_scene(const std::string& name, int grid, std::uint64_t seed) {
  const int n = std::max(grid, 16);
  const json zaxis = {{"line", {{"point", {0, 0, 0}}, {"direction", {0, 0, 1}}}}};
  // Darboux and Calapso integrate along u with a fixed step of 0.01
  const json fine = {{"n", 201}, {"range", {-1, 1}}};
  json s = {{"schema_version", kSchemaVersion}, {"name", name}, {"seed", seed}};

  if (name == "cylinder-darboux") {
    s["objects"] = {{"axis", {{"type", "conformal_curve"}, {"center", zaxis}, {"grid", fine}}},
                    {"start", {{"type", "sphere"}, {"center", {2.0, 0.5, -1.0}}, {"radius", 1.0}}}};
    s["pipeline"] = {
        {{"id", "cylinder"}, {"op", "tube"}, {"curve", "axis"}, {"a", 1.0}, {"n_theta", n}, {"as", "cyl"}},
        {{"id", "validate-cylinder"}, {"op", "validate"}, {"grid", "cyl"}},
        {{"id", "channel-cylinder"}, {"op", "channel"}, {"grid", "cyl"}, {"expect", "both"}},
        {{"id", "omega"}, {"op", "omega0"}, {"grid", "cyl"}, {"curve", "cyl"}, {"normalisation", "against_p"}, {"q_uu", -1.0}, {"as", "om"}},
        {{"id", "darboux"}, {"op", "darboux"}, {"grid", "cyl"}, {"omega", "om"}, {"m", 1.0}, {"phi0", {{"sphere", "start"}}}, {"as", "hat"}},
        {{"id", "cyclides"}, {"op", "cyclides"}, {"f", "cyl"}, {"s", "cyl"}, {"hat_f", "hat"}, {"hat_s", "hat"}, {"as", "cong"}},
        {{"id", "darboux-pair"}, {"op", "darboux_pair"}, {"f", "cyl"}, {"s", "cyl"}, {"hat_f", "hat"}, {"hat_s", "hat"}, {"expect", true}},
    };
    s["outputs"] = {{{"mesh", "cyl"}, {"file", "cylinder.obj"}},
                    {{"mesh", "hat"}, {"file", "darboux.obj"}},
                    {{"congruence", "cong"}, {"count", 5}, {"n", 48}, {"file", "cyclides.obj"}},
                    {{"csv", "darboux"}, {"file", "darboux.csv"}}};
  } else if (name == "torus-cyclide") {
    const double t = 2.0 * std::numbers::pi / 3.0;
    s["objects"] = {
        {"core", {{"type", "sphere_curve"}, {"center", {{"circle", {{"center", {0, 0, 0}}, {"radius", 2.0}}}}}, {"radius", 1.0}, {"grid", {{"n", n}, {"closed", true}}}}},
        {"a", {{"type", "sphere"}, {"center", {2.0, 0.0, 0.0}}, {"radius", 1.0}}},
        {"b", {{"type", "sphere"}, {"center", {2.0 * std::cos(t), 2.0 * std::sin(t), 0.0}}, {"radius", 1.0}}},
        {"c", {{"type", "sphere"}, {"center", {2.0 * std::cos(2 * t), 2.0 * std::sin(2 * t), 0.0}}, {"radius", 1.0}}}};
    s["pipeline"] = {
        {{"id", "torus"}, {"op", "envelope"}, {"curve", "core"}, {"n_theta", n}, {"as", "torus"}},
        {{"id", "validate"}, {"op", "validate"}, {"grid", "torus"}},
        {{"id", "channel"}, {"op", "channel"}, {"grid", "torus"}, {"expect", "both"}, {"lie_cyclide", true}},
        {{"id", "dupin"}, {"op", "dupin"}, {"spheres", {"a", "b", "c"}}, {"torus", {2.0, 1.0}}, {"as", "cyclide"}},
    };
    s["outputs"] = {{{"mesh", "torus"}, {"file", "torus.obj"}}, {{"mesh", "cyclide"}, {"file", "dupin.obj"}}};
  } else if (name == "cylinder-omega0") {
    s["objects"] = {{"axis", {{"type", "sphere_curve"}, {"center", zaxis}, {"radius", 1.0}, {"grid", {{"n", 2 * n}, {"range", {-1, 1}}}}}}};
    s["pipeline"] = {
        {{"id", "cylinder"}, {"op", "envelope"}, {"curve", "axis"}, {"n_theta", n}, {"as", "cyl"}},
        {{"id", "validate"}, {"op", "validate"}, {"grid", "cyl"}},
        {{"id", "channel"}, {"op", "channel"}, {"grid", "cyl"}, {"expect", "both"}},
        {{"id", "omega"}, {"op", "omega0"}, {"grid", "cyl"}, {"curve", "axis"}, {"normalisation", "against_p"}, {"q_uu", -1.0}, {"as", "om"}},
        {{"id", "conserved"}, {"op", "conserved"}, {"omega", "om"}, {"lambdas", {-1.0, 1.0, 2.0, 3.0}}, {"negative_control", true}},
        {{"id", "flatness"}, {"op", "flatness"}, {"omega", "om"}, {"lambdas", {-2.0, -1.0, 0.0, 1.0, 2.0}}},
    };
    s["outputs"] = {{{"csv", "omega"}, {"file", "q.csv"}}, {{"csv", "conserved"}, {"file", "conserved.csv"}}};
  } else if (name == "cylinder-calapso") {
    s["objects"] = {{"axis", {{"type", "sphere_curve"}, {"center", zaxis}, {"radius", 1.0}, {"grid", fine}}}};
    s["pipeline"] = {
        {{"id", "cylinder"}, {"op", "envelope"}, {"curve", "axis"}, {"n_theta", n}, {"as", "cyl"}},
        {{"id", "channel"}, {"op", "channel"}, {"grid", "cyl"}},
        {{"id", "omega"}, {"op", "omega0"}, {"grid", "cyl"}, {"curve", "axis"}, {"normalisation", "against_p"}, {"as", "om"}},
    };
    int k = 0;
    for (double l : {0.5, 1.0, 2.0}) {
      const std::string as = "cal" + std::to_string(k++);
      s["pipeline"].push_back({{"id", "calapso-" + json(l).dump()}, {"op", "calapso"}, {"grid", "cyl"}, {"omega", "om"}, {"lambda", l}, {"as", as}});
    }
    s["outputs"] = {{{"mesh", "cal1"}, {"file", "calapso.obj"}}};
  } else if (name == "helix-channel") {
    s["objects"] = {{"core", {{"type", "sphere_curve"}, {"center", {{"helix", {{"radius", 1.0}, {"pitch", 0.5}}}}}, {"radius", 0.3}, {"grid", {{"n", std::max(n, 64)}, {"range", {0.0, 6.0}}}}}}};
    s["pipeline"] = {
        {{"id", "tube"}, {"op", "envelope"}, {"curve", "core"}, {"n_theta", std::max(n, 64)}, {"as", "tube"}},
        {{"id", "validate"}, {"op", "validate"}, {"grid", "tube"}},
        {{"id", "channel"}, {"op", "channel"}, {"grid", "tube"}, {"expect", "dir1"}},
        {{"id", "circles"}, {"op", "spherical_lines"}, {"grid", "tube"}, {"axis", "th"}},
    };
    s["outputs"] = {{{"mesh", "tube"}, {"file", "helix_tube.obj"}}};
  } else if (name == "curves-ribaucour") {
    const json g = {{"n", 2 * n + 1}, {"range", {-1, 1}}};
    s["objects"] = {
        {"l1", {{"type", "conformal_curve"}, {"center", zaxis}, {"grid", g}}},
        {"l2", {{"type", "conformal_curve"}, {"center", {{"line", {{"point", {2, 0, 0}}, {"direction", {0, 0, 1}}}}}}, {"grid", g}}},
        {"l3", {{"type", "conformal_curve"}, {"center", {{"line", {{"point", {2, 0, 0}}, {"direction", {0, 0, 2}}}}}}, {"grid", g}}}};
    s["pipeline"] = {
        {{"id", "parallel-lines"}, {"op", "ribaucour"}, {"a", "l1"}, {"b", "l2"}, {"expect", "pair"}, {"tolerance", {{"residual", 1e-10}}}},
        {{"id", "mismatched"}, {"op", "ribaucour"}, {"a", "l1"}, {"b", "l3"}, {"expect", "not_pair"}, {"min_abs_u", 0.5}},
        {{"id", "circles"}, {"op", "circle_congruence"}, {"c1", "l1"}, {"c2", "l2"}},
        {{"id", "tubes"}, {"op", "tube_agreement"}, {"c1", "l1"}, {"c2", "l2"}, {"radii", {0.3, 1.0}}},
        {{"id", "lift"}, {"op", "curve_lift"}, {"curve", "l1"}, {"n_theta", n}, {"as", "zero_tube"}},
    };
    s["outputs"] = {{{"csv", "mismatched"}, {"file", "mismatched.csv"}}};
  } else if (name == "partner-curve") {
    s["objects"] = {
        {"core", {{"type", "conformal_curve"}, {"center", {{"helix", {{"radius", 1.0}, {"pitch", 0.5}}}}}, {"grid", {{"n", 2 * n + 1}, {"range", {0.0, 3.0}}}}}},
        {"start", {{"type", "point"}, {"position", {2.0, 1.0, 0.0}}}}};
    s["pipeline"] = {
        {{"id", "partner"}, {"op", "partner_curve"}, {"curve", "core"}, {"start", "start"}, {"beta", {1.0, 0.2}}, {"gamma", {0.1}}, {"as", "partner"}},
        {{"id", "check"}, {"op", "ribaucour"}, {"a", "core"}, {"b", "partner"}, {"expect", "pair"}},
    };
    s["outputs"] = {{{"csv", "check"}, {"file", "partner.csv"}}};
  } else {
    throw SchemaError("unknown demo '" + name + "'");
  }
  return s;
}

}  // namespace liesphere::workbench
