// Acceptance run: one PASS/FAIL line per criterion.
// Exits 0 once every criterion has been evaluated; --strict also requires all to pass.

#include "fixtures.hpp"

#include "liesphere/workbench.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

using namespace liesphere;
namespace wb = liesphere::workbench;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// accumulates "name value (rel tol)" fragments and the conjunction of their verdicts
class Tally {
 public:
  void le(const std::string& name, double v, double tol) { add(name, v, "<=", tol, v <= tol); }
  void ge(const std::string& name, double v, double tol) { add(name, v, ">=", tol, v >= tol); }
  void flag(const std::string& name, bool ok, const std::string& note = "") {
    pass_ = pass_ && ok;
    parts_.push_back(name + (ok ? " ok" : " NO") + (note.empty() ? "" : " (" + note + ")"));
  }
  Outcome done() const {
    std::string d;
    for (size_t k = 0; k < parts_.size(); ++k) d += (k ? "; " : "") + parts_[k];
    return {pass_, d};
  }

 private:
  void add(const std::string& name, double v, const char* rel, double tol, bool ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.2e %s %.0e%s", name.c_str(), v, rel, tol, ok ? "" : " FAIL");
    parts_.emplace_back(buf);
    pass_ = pass_ && ok;
  }
  bool pass_ = true;
  std::vector<std::string> parts_;
};

double field_error(const EuclideanSphere& a, const EuclideanSphere& b) {
  if (a.index() != b.index()) return 1e300;
  if (const auto* s = std::get_if<Sphere>(&a)) {
    const auto& t = std::get<Sphere>(b);
    return std::max((s->center - t.center).cwiseAbs().maxCoeff(), std::abs(s->radius - t.radius));
  }
  if (const auto* p = std::get_if<Plane>(&a)) {
    const auto& q = std::get<Plane>(b);
    return std::max((p->normal - q.normal).cwiseAbs().maxCoeff(), std::abs(p->offset - q.offset));
  }
  if (const auto* p = std::get_if<Point>(&a)) return (p->position - std::get<Point>(b).position).cwiseAbs().maxCoeff();
  return 0.0;
}

Outcome c1_roundtrip() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-5, 5), scale(0.1, 10);
  std::normal_distribution<double> nd;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    EuclideanSphere e;
    switch (k % 3) {
      case 0: e = Sphere{Vec3(u(rng), u(rng), u(rng)), u(rng) + (k % 2 ? 5.5 : -5.5)}; break;
      case 1: e = Plane{Vec3(nd(rng), nd(rng), nd(rng)).normalized(), u(rng)}; break;
      default: e = Point{Vec3(u(rng), u(rng), u(rng))}; break;
    }
    const double sgn = k % 5 == 0 ? -1.0 : 1.0;
    worst = std::max(worst, field_error(e, project_to_euclidean(LieVec(sgn * scale(rng) * lift(e)))));
  }
  Tally t;
  t.le("max field error", worst, 1e-12);
  return t.done();
}

Outcome c2_tangency() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(-5, 5);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Vec3 c1(u(rng), u(rng), u(rng)), c2(u(rng), u(rng), u(rng));
    const double r1 = u(rng), r2 = u(rng);
    const double v = inner(sphere_lift(c1, r1).rep(), sphere_lift(c2, r2).rep()) +
                     ((c1 - c2).squaredNorm() - (r1 - r2) * (r1 - r2)) / 2;
    worst = std::max(worst, std::abs(v));
  }
  Tally t;
  t.le("max |identity|", worst, 1e-10);
  return t.done();
}

Outcome c3_envelope() {
  Tally t;
  const EnvelopeResult e = envelope(fx::cylinder_curve(64), 64);
  double dist = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const auto p = surface_point(e.grid, i, j);
      dist = p ? std::max(dist, std::abs(std::hypot(p->x(), p->y()) - 1.0)) : 1e300;
    }
  t.le("axis distance error (64x64)", dist, 1e-8);
  std::vector<double> r;
  for (int n : {32, 64, 128}) r.push_back(validate_legendre(envelope(fx::cylinder_curve(n), n).grid).contact);
  const double q1 = r[0] / r[1], q2 = r[1] / r[2];
  t.flag("contact ratio 64->128 in [3.5, 4.5]", q2 >= 3.5 && q2 <= 4.5, std::to_string(q2));
  t.flag("contact ratio 32->64 in [3.5, 4.5]", q1 >= 3.5 && q1 <= 4.5, std::to_string(q1));
  return t.done();
}

Outcome c4_channel() {
  Tally t;
  auto run = [&](const std::string& name, const LegendreGrid& g, CircularDir want) {
    const CurvatureData cd = curvature_data(g);
    const ChannelReport r = is_channel(g, cd);
    t.flag(name + " " + to_string(r.circular), r.circular == want, "expected " + to_string(want));
    t.flag(name + " N-criterion agrees", r.circular_by_n == r.circular, to_string(r.circular_by_n));
  };
  run("helix tube", envelope(fx::helix_curve(64), 64).grid, CircularDir::dir1);
  run("torus", envelope(fx::torus_curve(64), 64).grid, CircularDir::both);
  run("ellipsoid", fx::ellipsoid(64), CircularDir::none);
  return t.done();
}

Outcome c5_omega0() {
  Tally t;
  const fx::Channel c128(fx::cylinder_curve(128), 128);
  t.le("closedness 128^2", c128.om.closedness, 1e-6);
  t.le("[eta^eta]", c128.om.bracket, 1e-12);
  double q = 0.0;
  for (double v : c128.om.q_uu) q = std::max(q, std::abs(v + 1.0));
  t.le("|q_uu + 1|", q, 1e-10);
  // closedness is identically zero here (eta_theta = 0, eta_u independent of theta); the
  // refinement check then reduces to the zero staying zero
  const fx::Channel c64(fx::cylinder_curve(64), 64);
  const double floor = 1e-15;
  t.flag("closedness quarters 64->128", c128.om.closedness <= c64.om.closedness / 3.5 + floor,
         std::to_string(c64.om.closedness) + " -> " + std::to_string(c128.om.closedness));
  return t.done();
}

Outcome c6_conserved() {
  Tally t;
  const fx::Channel c(fx::cylinder_curve(129), 64);
  const std::vector<double> lambdas = {-1, 1, 2, 3};
  const ConservedReport r = conserved_quantity(c.om, basis(6), lambdas);
  t.le("residual over lambda in {-1,1,2,3}", r.max_residual, 1e-8);
  const Omega0Structure unit = omega0_form(c.g, c.ch, special_lift_unit(c.s));
  double neg = 0.0;
  for (double l : lambdas) neg = std::max(neg, conserved_residual(unit, basis(6), l));
  t.ge("unit-lift negative control", neg, 1e-3);
  return t.done();
}

Outcome c7_darboux() {
  const fx::Channel c(fx::cylinder_curve(201), 64);
  std::mt19937_64 rng(1);
  double drift = 0, rib = 0, co = 0, cst = 0, sph = 0;
  int runs = 0, valid = 0, chan = 0, errors = 0;
  std::string first_error;
  for (double m : {-1.0, -0.5, 0.5, 1.0, 2.0})
    for (int ic = 0; ic < 5; ++ic) {
      ++runs;
      try {
        const LieVec phi0 = fx::random_phi0(rng, 0.7 * ic);
        const DarbouxResult d = darboux_transform(c.g, c.om, m, phi0);
        drift = std::max(drift, d.null_drift);
        valid += validate_legendre(d.hat_f).pass;
        const CurvatureData hcd = curvature_data(d.hat_f);
        chan += is_channel(d.hat_f, hcd).dir1_circular();
        rib = std::max(rib, verify_ribaucour(c.s, d.hat_s).max_residual);
        const RibaucourPair p{&c.g, &c.cd, &c.s, &d.hat_f, &hcd, &d.hat_s};
        const CyclideCongruences cy = ribaucour_cyclides(p);
        co = std::max(co, cy.coincidence1);
        cst = std::max(cst, cy.constancy1);
        sph = std::max(sph, fx::max_theta_line_residual(d.hat_f));
      } catch (const std::exception& e) {
        if (!errors++) first_error = e.what();
      }
    }
  Tally t;
  t.flag(std::to_string(runs - errors) + "/" + std::to_string(runs) + " runs completed", errors == 0, first_error);
  t.le("null drift", drift, 1e-10);
  t.flag(std::to_string(valid) + " validate", valid == runs);
  t.flag(std::to_string(chan) + " dir1 circular", chan == runs);
  t.le("verify_ribaucour", rib, 1e-6);
  t.le("D1 coincidence", co, 1e-6);
  t.le("D1 theta-constancy", cst, 1e-6);
  t.le("theta-line spherical residual", sph, 1e-8);
  return t.done();
}

Outcome c8_calapso() {
  const fx::Channel c(fx::cylinder_curve(201), 64);
  double ortho = 0, q = 0, map = 0;
  bool circ = true;
  for (double l : {0.5, 1.0, 2.0}) {
    const CalapsoResult r = calapso_transform(c.g, c.om, l);
    ortho = std::max(ortho, r.gauge.ortho_defect);
    q = std::max(q, r.q_residual);
    const CurvatureData cdl = curvature_data(r.grid);
    circ = circ && is_channel(r.grid, cdl).dir1_circular() == c.ch.dir1_circular();
    map = std::max(map, curvature_sphere_mapping(r, c.cd, cdl));
  }
  Tally t;
  t.le("ortho defect", ortho, 1e-8);
  t.le("|q^lambda - q|", q, 1e-8);
  t.flag("circular direction preserved", circ);
  t.le("curvature sphere mapping", map, 1e-6);
  return t.done();
}

Outcome c9_ribaucour() {
  const CurveGrid g = CurveGrid::open(201, -1, 1);
  auto pts = [&](Vec3 p, Vec3 d) { return presets::sphere_curve(presets::line(p, d), presets::constant_radius(0), g); };
  const SphereCurve l1 = pts({0, 0, 0}, {0, 0, 1});
  Tally t;
  t.le("parallel lines", verify_ribaucour(l1, pts({2, 0, 0}, {0, 0, 1})).max_residual, 1e-10);
  const RibaucourReport r = verify_ribaucour(l1, pts({2, 0, 0}, {0, 0, 2}));
  double mn = 1e300;
  for (int i = 0; i < g.n; ++i)
    if (std::abs(g.u(i)) >= 0.5) mn = std::min(mn, r.residuals[i]);
  t.ge("mismatched, min over |u|>=0.5", mn, 1e-2);

  // partner curves over several base curves, couplings and start spheres
  double worst_ratio = 0.0;
  int count = 0;
  const std::vector<SphereCurve> bases = {fx::helix_curve(101), fx::cylinder_curve(81),
                                          presets::sphere_curve(presets::circle({0, 0, 0}, 2), presets::polynomial_radius({0.3, 0.1}),
                                                                CurveGrid::open(121, 0, 5))};
  const std::vector<LieVec> starts = {point_lift(Vec3(2, 1, 0)).rep(), sphere_lift(Vec3(-1, 3, 0.5), 0.4).rep(),
                                      plane_lift(Vec3(0, 0.6, 0.8), 4.0).rep()};
  for (const SphereCurve& s : bases)
    for (const LieVec& h0 : starts)
      for (double b : {0.5, 1.0, 2.0}) {
        const SphereCurve p = ribaucour_partner_curve(
            s, [b](double u) { return b + 0.2 * std::sin(u); }, [](double u) { return 0.1 * u; }, h0);
        const double h = s.grid().du;
        worst_ratio = std::max(worst_ratio, verify_ribaucour(s, p).max_residual / (10 * h * h));
        ++count;
      }
  t.le("partner curves, max residual/(10h^2) over " + std::to_string(count), worst_ratio, 1.0);
  return t.done();
}

wb::json report_of(const fs::path& dir) {
  std::ifstream f(dir / "report.json");
  return wb::json::parse(f);
}

Outcome c10_figure() {
  const fs::path dir = fs::temp_directory_path() / "liesphere_acceptance_fig";
  fs::remove_all(dir);
  const wb::RunResult r = wb::run_scene(wb::demo_scene("cylinder-darboux", 64, 1), dir.string());
  Tally t;
  for (const char* f : {"cylinder.obj", "darboux.obj", "cyclides.obj"}) t.flag(f, fs::exists(dir / f) && fs::file_size(dir / f) > 0);
  const wb::json rep = report_of(dir);
  for (const auto& a : rep["assertions"]) {
    const std::string n = a["name"];
    if (n == "cyclide_sphere_contact" || n == "cyclide_tangency") t.le(n, a["measured"].get<double>(), 1e-8);
    if (n == "circular_lines_on_cyclides") t.le(n, a["measured"].get<double>(), 1e-8);
  }
  t.flag("all demo assertions pass", r.pass);
  return t.done();
}

Outcome c11_symmetry() {
  const CurveGrid g = CurveGrid::open(201, -1, 1);
  const ConformalCurve l1 = ConformalCurve::from_fn(presets::line({0, 0, 0}, {0, 0, 1}), g);
  const ConformalCurve l2 = ConformalCurve::from_fn(presets::line({2, 0, 0}, {0, 0, 1}), g);
  const ConformalCurve l3 = ConformalCurve::from_fn(presets::line({2, 0, 0}, {0, 0, 2}), g);
  const double tol = std::max(1e-8, 10 * g.du * g.du);
  Tally t;
  auto pair = [&](const std::string& name, const ConformalCurve& a, const ConformalCurve& b) {
    const RibaucourReport r0 = ribaucour_curve_check(a, b);
    bool agree = true;
    double diff = 0.0;
    for (double rad : {0.3, 1.0}) {
      const RibaucourReport rt = verify_ribaucour(tube_curve(a, rad), tube_curve(b, rad));
      agree = agree && ((r0.max_residual <= tol) == (rt.max_residual <= tol));
      for (size_t i = 0; i < r0.residuals.size(); ++i) diff = std::max(diff, std::abs(r0.residuals[i] - rt.residuals[i]));
    }
    t.flag(name + " verdicts agree", agree);
    t.le(name + " residual difference", diff, 1e-8);
  };
  pair("parallel", l1, l2);
  pair("mismatched", l1, l3);
  const CircleCongruenceReport cc = circle_congruence_check(l1, l2);
  t.le("circle membership", cc.membership, 1e-8);
  t.le("circle tangency (rad)", cc.tangency, 1e-4);
  return t.done();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome c12_determinism() {
  const fs::path base = fs::temp_directory_path() / "liesphere_acceptance_det";
  fs::remove_all(base);
  for (const char* run : {"a", "b"})
    for (const auto& n : wb::demo_names()) wb::run_scene(wb::demo_scene(n, 64, 7), (base / run / n).string());
  int files = 0, differing = 0;
  for (const auto& e : fs::recursive_directory_iterator(base / "a")) {
    if (!e.is_regular_file()) continue;
    ++files;
    const fs::path other = base / "b" / fs::relative(e.path(), base / "a");
    if (slurp(e.path()) != slurp(other)) ++differing;
  }
  int reports = 0, same_reports = 0;
  for (const auto& n : wb::demo_names()) {
    ++reports;
    same_reports += slurp(base / "a" / n / "report.json") == slurp(base / "b" / n / "report.json");
  }
  Tally t;
  t.flag(std::to_string(same_reports) + "/" + std::to_string(reports) + " reports byte-identical", same_reports == reports);
  t.flag(std::to_string(files - differing) + "/" + std::to_string(files) + " output files byte-identical", differing == 0);
  return t.done();
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"lift/projection roundtrip", c1_roundtrip},
      {"tangency identity", c2_tangency},
      {"envelope oracle", c3_envelope},
      {"channel detection", c4_channel},
      {"Omega_0 structure", c5_omega0},
      {"conserved quantity", c6_conserved},
      {"Darboux suite", c7_darboux},
      {"Calapso suite", c8_calapso},
      {"Ribaucour criterion", c9_ribaucour},
      {"cylinder-darboux figure", c10_figure},
      {"symmetry breaking", c11_symmetry},
      {"determinism", c12_determinism},
  };
  int failed = 0, k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", k, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return strict && failed ? 1 : 0;
}
