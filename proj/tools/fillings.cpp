// Command-line driver: verify | bounds | search | certificates | mesh.
// Exit codes: 0 success, 1 domain failure, 2 input error, 3 budget exhausted.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fillings/bounds.hpp"
#include "fillings/json_io.hpp"
#include "fillings/metrics.hpp"
#include "fillings/plmesh.hpp"
#include "fillings/rational.hpp"
#include "fillings/search.hpp"
#include "fillings/separators.hpp"
#include "fillings/triangulation.hpp"

namespace fs = std::filesystem;
using namespace fillings;

namespace {

// FILLINGS_LOG=info|debug sends progress lines to stderr; stdout carries only
// the report, so identical runs stay byte-identical.
int log_level() {
  static const int level = [] {
    const char* env = std::getenv("FILLINGS_LOG");
    if (env == nullptr || *env == '\0') return 0;
    return std::string(env) == "debug" ? 2 : 1;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[fillings] " << msg << "\n";
}

// Input/usage problems exit with 2; the library's invalid_argument joins them.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << bytes;
}

void require_output_dir(const std::string& dir) {
  if (!dir.empty() && !fs::is_directory(dir)) {
    throw InputError("--output must name an existing directory: " + dir);
  }
}

// Text is a flat rendering of the canonical JSON: one "key: value" per line.
std::string render_text(const Json& j) {
  std::ostringstream os;
  for (auto it = j.begin(); it != j.end(); ++it) {
    os << it.key() << ": ";
    if (it.value().is_string()) {
      os << it.value().get<std::string>();
    } else {
      os << it.value().dump();
    }
    os << "\n";
  }
  return os.str();
}

void emit(const Json& j, const std::string& format) {
  if (format == "text") {
    std::cout << render_text(j);
  } else {
    std::cout << dump_json(j);
  }
}

AbstractTriangulation load_complex(const std::string& input, const std::string& preset,
                                   int n) {
  if (!preset.empty()) {
    if (preset != "wheel") {
      throw InputError("preset '" + preset + "' is not a triangulation preset");
    }
    if (n < 3) throw InputError("--preset wheel needs --n at least 3");
    return wheel(n);
  }
  if (input.empty()) throw InputError("provide --input or --preset wheel");
  return triangulation_from_json(read_json_file(input));
}

int cmd_verify(const std::string& input, const std::string& preset, int n,
               const std::string& delta_str, const std::string& format) {
  const Rational delta = parse_rational(delta_str);
  const AbstractTriangulation K = load_complex(input, preset, n);
  const ValidationReport rep = validate(K);
  if (!rep.ok()) {
    Json out;
    out["valid"] = false;
    Json violations = Json::array();
    for (const ValidationIssue& v : rep.violations) {
      Json o;
      o["code"] = v.code;
      o["message"] = v.message;
      violations.push_back(std::move(o));
    }
    out["violations"] = std::move(violations);
    emit(out, format);
    return 1;
  }
  if (!K.boundary_n) {
    Json out;
    out["error"] = "complex has no boundary tag to verify against";
    out["valid"] = true;
    emit(out, format);
    return 1;
  }
  const LipschitzReport lr = lipschitz_constant(K);
  Json out = to_json(lr);
  out["passes"] = lr.delta_achieved >= delta;
  out["required_delta"] = to_json(delta);
  out["valid"] = true;
  emit(out, format);
  return lr.delta_achieved >= delta ? 0 : 1;
}

int cmd_bounds(int n, const std::string& delta_str, int chi, double ell,
               const std::string& format) {
  const Rational delta = parse_rational(delta_str);
  const Rational vb = vertex_lower_bound(n, delta);
  const Rational tb = triangle_lower_bound(n, delta, chi);
  Json out;
  out["chi"] = chi;
  out["continuous_area_bound"] = continuous_area_bound(delta, ell);
  out["delta"] = to_json(delta);
  out["ell"] = ell;
  out["n"] = n;
  Json ps = Json::array();
  for (int k = 1; k <= n / 2; ++k) {
    ps.push_back(Json::array({k, to_json(path_sum_bound(k))}));
  }
  out["path_sum_bounds"] = std::move(ps);
  out["triangle_lower_bound"] = to_json(tb);
  out["triangle_lower_bound_ceil"] = ceil_of(tb);
  out["vertex_lower_bound"] = to_json(vb);
  out["vertex_lower_bound_ceil"] = ceil_of(vb);
  emit(out, format);
  return 0;
}

int cmd_search(int n, const std::string& eps_str, long long budget_nodes,
               std::optional<double> budget_seconds, int threads,
               const std::string& out_dir, const std::string& format) {
  const Rational eps = parse_rational(eps_str);
  require_output_dir(out_dir);
  SearchOptions opts;
  opts.budget_nodes = budget_nodes;
  opts.budget_seconds = budget_seconds;
  opts.threads = threads;
  log_info("searching D(" + std::to_string(n) + "; " + eps.str() + ")");
  const SearchResult r = compute_D(n, eps, opts);
  const Json out = to_json(r);
  if (!out_dir.empty()) {
    write_file(fs::path(out_dir) / "search_result.json", dump_json(out));
    if (r.witness) {
      write_file(fs::path(out_dir) / "witness.json", dump_json(to_json(*r.witness)));
    }
  }
  emit(out, format);
  return r.budget_exhausted ? 3 : 0;
}

int cmd_certificates(const std::string& input, const std::string& preset, int n,
                     int x, int y, const std::string& out_dir,
                     const std::string& format) {
  const AbstractTriangulation K = load_complex(input, preset, n);
  require_output_dir(out_dir);
  const ValidationReport rep = validate(K);
  if (!rep.ok()) throw InputError("input is not a filling: " + rep.violations[0].message);
  if (!K.boundary_n) throw InputError("input has no boundary tag");
  const CutInstance inst = make_cut_instance(K, x, y);
  log_info("computing disjoint paths and separator");
  const MengerCertificate cert = max_disjoint_paths(K, inst);
  const SpernerWalk walk = sperner_walk(K, x, y, cert.separator);
  const LipschitzReport lr = lipschitz_constant(K);
  // The proof quantity ceil(delta * floor(n/2)) - 1 is printed for reference;
  // it bounds the path count for an antipodal boundary pair.
  const Rational proof_qty = lr.delta_achieved * Rational(*K.boundary_n / 2);
  Json out = paths_json(cert.paths, cert.separator);
  out["delta"] = to_json(lr.delta_achieved);
  out["num_paths"] = cert.paths.size();
  out["proof_path_bound"] = ceil_of(proof_qty) - 1;
  out["walk"] = walk.walk;
  if (!out_dir.empty()) {
    write_file(fs::path(out_dir) / "menger.json",
               dump_json(paths_json(cert.paths, cert.separator)));
    write_file(fs::path(out_dir) / "walk.json", dump_json(walk_json(walk.walk)));
  }
  emit(out, format);
  return 0;
}

int cmd_mesh(const std::string& input, const std::string& preset, long long k,
             int n, const std::string& out_dir, const std::string& format) {
  PLSurface S;
  if (preset == "hemisphere") {
    S = hemisphere_surface();
  } else if (preset == "disk") {
    S = disk_surface();
  } else if (!preset.empty()) {
    throw InputError("preset '" + preset + "' is not a surface preset");
  } else if (!input.empty()) {
    S = surface_from_json(read_json_file(input));
  } else {
    throw InputError("provide --input or --preset hemisphere|disk");
  }
  require_output_dir(out_dir);

  // Pipeline failures report the stage they died in and exit 1.
  std::string stage = "validate_surface";
  try {
    const ValidationReport rep = validate_surface(S);
    if (!rep.ok()) {
      throw std::runtime_error(rep.violations[0].code + ": " + rep.violations[0].message);
    }
    if (k < 2) {
      stage = "choose_k";
      if (n < 3) throw InputError("provide --k (grid quality) or --n (target boundary size)");
      k = choose_k(S, n);
      log_info("choose_k(" + std::to_string(n) + ") = " + std::to_string(k));
    }
    stage = "balanced_triangulation";
    const BalancedMesh M = balanced_triangulation(S, k);
    stage = "report";
    const LipschitzReport lr = lipschitz_constant(M.mesh);
    Json report;
    report["annulus_capacity"] = M.annulus_capacity;
    report["annulus_triangles"] = M.annulus_triangles;
    report["boundary_n"] = M.boundary_n;
    report["delta"] = to_json(lr.delta_achieved);
    report["delta_achieved"] = lr.delta_achieved.to_double();
    report["deviation"] = M.plan.deviation;
    report["epsilon"] = M.plan.epsilon;
    report["equilateral_triangles"] = M.equilateral_triangles;
    report["isometric"] = lr.is_isometric;
    report["k"] = M.plan.k;
    report["max_edge"] = M.max_edge;
    report["min_edge"] = M.min_edge;
    report["num_triangles"] = M.mesh.triangles.size();
    report["num_vertices"] = M.mesh.num_vertices;
    report["q"] = M.plan.q;
    report["subdivisions"] = M.plan.subdivisions;
    report["surface_area"] = M.surface_area;
    report["vertex_ratio"] = M.vertex_ratio;
    if (!out_dir.empty()) {
      stage = "write";
      write_file(fs::path(out_dir) / "mesh.json", dump_json(to_json(M)));
      write_file(fs::path(out_dir) / "mesh.off", to_off(M));
      write_file(fs::path(out_dir) / "report.json", dump_json(report));
    }
    emit(report, format);
    return 0;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "fillings mesh: " << stage << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delta-Lipschitz fillings of the discrete circle"};
  app.require_subcommand(1);

  std::string input, output, preset, format = "json";
  std::string delta = "1", epsilon = "0";
  int n = 0, chi = 2, x = -1, y = -1, threads = 1;
  long long budget_nodes = 10'000'000, k = 0;
  double ell = 6.283185307179586;
  double budget_seconds = 0;

  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
  };

  CLI::App* verify = app.add_subcommand("verify", "Validate a filling and its Lipschitz constant");
  verify->add_option("-i,--input", input, "triangulation JSON file");
  verify->add_option("--preset", preset, "built-in input (wheel)");
  verify->add_option("--n", n, "cycle length for --preset wheel");
  verify->add_option("--delta", delta, "required constant p/q")->capture_default_str();
  add_format(verify);

  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate the lower-bound formulas");
  bounds->add_option("--n", n, "boundary cycle length")->required();
  bounds->add_option("--delta", delta, "Lipschitz constant p/q")->capture_default_str();
  bounds->add_option("--chi", chi, "Euler characteristic after closing")->capture_default_str();
  bounds->add_option("--ell", ell, "continuous boundary length")->capture_default_str();
  add_format(bounds);

  CLI::App* search = app.add_subcommand("search", "Compute D(n; epsilon) exhaustively");
  search->add_option("--n", n, "boundary cycle length")->required();
  search->add_option("--epsilon", epsilon, "slack p/q, searches (1-epsilon)-fillings")
      ->capture_default_str();
  search->add_option("--budget-nodes", budget_nodes, "node budget")->capture_default_str();
  search->add_option("--budget-seconds", budget_seconds, "wall-clock budget");
  search->add_option("--threads", threads, "worker threads")->capture_default_str();
  search->add_option("-o,--output", output, "directory for result + witness files");
  add_format(search);

  CLI::App* certs = app.add_subcommand("certificates", "Disjoint paths, separator, and walk");
  certs->add_option("-i,--input", input, "triangulation JSON file");
  certs->add_option("--preset", preset, "built-in input (wheel)");
  certs->add_option("--n", n, "cycle length for --preset wheel");
  certs->add_option("--x", x, "left boundary vertex")->required();
  certs->add_option("--y", y, "right boundary vertex")->required();
  certs->add_option("-o,--output", output, "directory for certificate files");
  add_format(certs);

  CLI::App* mesh = app.add_subcommand("mesh", "Discretize a PL surface into a balanced filling");
  mesh->add_option("-i,--input", input, "surface JSON file");
  mesh->add_option("--preset", preset, "built-in surface (hemisphere, disk)");
  mesh->add_option("--k", k, "approximation quality (grid from the k-plan)");
  mesh->add_option("--n", n, "target boundary size (picks k automatically)");
  mesh->add_option("-o,--output", output, "directory for mesh.json, mesh.off, report.json");
  add_format(mesh);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(input, preset, n, delta, format);
    if (bounds->parsed()) return cmd_bounds(n, delta, chi, ell, format);
    if (search->parsed()) {
      std::optional<double> seconds;
      if (search->count("--budget-seconds") > 0) seconds = budget_seconds;
      return cmd_search(n, epsilon, budget_nodes, seconds, threads, output, format);
    }
    if (certs->parsed()) return cmd_certificates(input, preset, n, x, y, output, format);
    if (mesh->parsed()) return cmd_mesh(input, preset, k, n, output, format);
  } catch (const Json::exception& e) {
    std::cerr << "fillings: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fillings: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fillings: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
