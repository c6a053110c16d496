// liesphere: run declarative scenes and built-in demos.

#include "liesphere/workbench.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace wb = liesphere::workbench;

namespace {

wb::json load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw wb::SchemaError("cannot read " + path);
  try {
    return wb::json::parse(f);
  } catch (const wb::json::parse_error& e) {
    throw wb::SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

int summarise(const wb::RunResult& r, const std::string& dir) {
  int failed = 0;
  for (const auto& a : r.report["assertions"]) {
    if (a["pass"].get<bool>()) continue;
    ++failed;
    std::cout << "FAIL " << a["stage"].get<std::string>() << "/" << a["name"].get<std::string>() << ": measured "
              << a["measured"].dump() << " " << a["relation"].get<std::string>() << " " << a["tolerance"].dump() << "\n";
  }
  if (r.report.contains("error"))
    std::cerr << "error in stage '" << r.report["error"]["stage"].get<std::string>()
              << "': " << r.report["error"]["message"].get<std::string>() << "\n";
  std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.report["assertions"].size() << " assertions, " << failed
            << " failed; report in " << (std::filesystem::path(dir) / "report.json").string() << "\n";
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie sphere geometry workbench"};
  app.require_subcommand(1);

  std::string scene_path, out_dir = wb::default_out_dir();
  auto* run = app.add_subcommand("run", "run a scene file");
  run->add_option("scene", scene_path, "scene JSON")->required();
  run->add_option("--out", out_dir, "output directory");

  auto* check = app.add_subcommand("check", "validate a scene file without running it");
  check->add_option("scene", scene_path, "scene JSON")->required();

  std::string demo;
  int grid = 64;
  std::uint64_t seed = 1;
  bool print_scene = false;
  auto* dm = app.add_subcommand("demo", "run a built-in demo ('all' runs every demo)");
  dm->add_option("name", demo, "demo name")->required();
  dm->add_option("--out", out_dir, "output directory");
  dm->add_option("--grid", grid, "grid resolution")->check(CLI::Range(16, 4096));
  dm->add_option("--seed", seed, "random seed");
  dm->add_flag("--print-scene", print_scene, "print the scene JSON instead of running it");

  app.add_subcommand("list", "list demo names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list")) {
      for (const auto& n : wb::demo_names()) std::cout << n << "\n";
      return 0;
    }
    if (*check) {
      wb::check_scene(load(scene_path));
      std::cout << "ok\n";
      return 0;
    }
    if (*run) {
      const wb::json scene = load(scene_path);
      return summarise(wb::run_scene(scene, out_dir), out_dir);
    }
    std::vector<std::string> names = demo == "all" ? wb::demo_names() : std::vector<std::string>{demo};
    int rc = 0;
    for (const auto& n : names) {
      const wb::json scene = wb::demo_scene(n, grid, seed);
      if (print_scene) {
        std::cout << scene.dump(2) << "\n";
        continue;
      }
      const std::string dir = names.size() > 1 ? (std::filesystem::path(out_dir) / n).string() : out_dir;
      std::cout << "[" << n << "] ";
      rc = std::max(rc, summarise(wb::run_scene(scene, dir), dir));
    }
    return rc;
  } catch (const wb::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
