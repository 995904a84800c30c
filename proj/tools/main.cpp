// hypcensus command-line front end.
//
// Subcommands:
//   volume    evaluate the volume of one hyperbolic tetrahedron
//   solve     solve the hyperbolicity equations of a face pairing
//   canonize  solve, then certify/drive to the canonical decomposition
//   census    run the geodesic-boundary census at complexity n
//   octcensus run the octahedral (relative handlebody) census at complexity n
//
// Exit codes: 0 success, 1 usage error, 2 invalid angles, 3 stage failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypcensus/census.hpp"
#include "hypcensus/errors.hpp"
#include "hypcensus/geosolve.hpp"
#include "hypcensus/kojima.hpp"
#include "hypcensus/specfun.hpp"
#include "hypcensus/tetshape.hpp"
#include "hypcensus/tricomb.hpp"

namespace {

using namespace hypcensus;

constexpr double kPi = std::numbers::pi;

// Accepts "0.75", "pi", "pi/6", "2pi/5", "0.5pi"; throws CLI::ValidationError
// on anything else.
double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw CLI::ValidationError("empty angle");
  double sign = 1.0;
  if (s[0] == '-') {
    sign = -1.0;
    s.erase(0, 1);
  }
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("unparseable angle '" + text + "'");
    }
    if (used != s.size())
      throw CLI::ValidationError("unparseable angle '" + text + "'");
    return sign * v;
  }
  double coeff = 1.0;
  if (pi_pos > 0) {
    std::size_t used = 0;
    try {
      coeff = std::stod(s.substr(0, pi_pos), &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("unparseable angle '" + text + "'");
    }
    if (used != pi_pos)
      throw CLI::ValidationError("unparseable angle '" + text + "'");
  }
  double denom = 1.0;
  std::string rest = s.substr(pi_pos + 2);
  if (!rest.empty()) {
    if (rest[0] != '/')
      throw CLI::ValidationError("unparseable angle '" + text + "'");
    std::size_t used = 0;
    try {
      denom = std::stod(rest.substr(1), &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("unparseable angle '" + text + "'");
    }
    if (used != rest.size() - 1 || denom == 0.0)
      throw CLI::ValidationError("unparseable angle '" + text + "'");
  }
  return sign * coeff * kPi / denom;
}

const char* vertex_type_name(VertexType t) {
  switch (t) {
    case VertexType::Finite: return "finite";
    case VertexType::Ideal: return "ideal";
    default: return "ultra-ideal";
  }
}

Pairing load_pairing(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pairing file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return Pairing::from_text(ss.str());
}

CuspMarks toric_marks(const Pairing& p, const BoundaryPattern& bp) {
  CuspMarks marks;
  marks.ideal_vertex.assign(p.n, {false, false, false, false});
  for (const auto& c : bp.components)
    if (c.orientable_link && c.chi == 0)
      for (const auto& [t, v] : c.vertices) marks.ideal_vertex[t][v] = true;
  return marks;
}

GeometricSolution solve_or_exit(const Pairing& p, const CuspMarks& marks,
                                const SolverConfig& solver, bool ansatz) {
  if (ansatz) return solve_mgk_ansatz(p, marks, solver);
  auto res = solve(build_equations(p, marks), solver);
  if (auto* ev = std::get_if<NoSolutionEvidence>(&res)) {
    std::printf("error: solve failed: %s\n", ev->detail.c_str());
    std::exit(3);
  }
  return std::get<GeometricSolution>(std::move(res));
}

void print_solution(const GeometricSolution& sol) {
  std::printf("volume %.9f\n", sol.volume);
  std::printf("residual %.3e\n", sol.residual_norm);
  for (std::size_t t = 0; t < sol.angles.size(); ++t) {
    const DihedralAngles& a = sol.angles[t];
    std::printf("tet %zu angles", t);
    for (int i = 0; i < 6; ++i) std::printf(" %.9f", a[i]);
    std::printf("\n");
  }
  for (std::size_t c = 0; c < sol.edge_class_lengths.size(); ++c) {
    const double l = sol.edge_class_lengths[c];
    if (std::isinf(l))
      std::printf("edge class %zu length inf\n", c);
    else
      std::printf("edge class %zu length %.9f\n", c, l);
  }
}

void print_census_summary(const CensusResult& result) {
  const VolumeStats stats = volume_stats(result.records);
  std::printf("%d manifold%s, %d volume value%s\n", stats.manifold_count,
              stats.manifold_count == 1 ? "" : "s", stats.value_count,
              stats.value_count == 1 ? "" : "s");
  if (stats.manifold_count > 0)
    std::printf("volume range [%.6f, %.6f], max multiplicity %d\n",
                stats.min_volume, stats.max_volume, stats.max_multiplicity);
  std::printf("%-14s %-10s %s\n", "volume", "boundary", "count");
  std::map<std::pair<long long, std::string>, int> rows;
  for (const auto& rec : result.records)
    ++rows[{std::llround(rec.volume * 1e6), boundary_label(rec.boundary)}];
  for (const auto& [key, count] : rows)
    std::printf("%-14.6f %-10s %d\n", key.first / 1e6, key.second.c_str(),
                count);
  if (!result.failures.empty())
    std::printf("%zu unresolved candidate%s (no geometric solution found)\n",
                result.failures.size(),
                result.failures.size() == 1 ? "" : "s");
}

void write_reports(const CensusResult& result, const std::string& csv_path,
                   const std::string& json_path) {
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    out << to_csv(result);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << to_json(result);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic tetrahedra, triangulations, and censuses"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");

  SolverConfig solver;
  std::string pairing_path, csv_path, json_path, log_dir;
  std::vector<std::string> angle_text;
  std::string method = "auto";
  bool diagnostics = false, ansatz = false, octahedral = false;
  bool extended = false;
  int move_budget = 0;
  int census_n = 0;

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tolerance", solver.tolerance, "residual tolerance");
    cmd->add_option("--max-iterations", solver.max_iterations,
                    "Newton iteration cap");
    cmd->add_option("--damping", solver.damping, "backtracking factor");
    cmd->add_option("--seed", solver.seed, "start-point jitter seed");
  };

  CLI::App* c_volume =
      app.add_subcommand("volume", "volume of one hyperbolic tetrahedron");
  c_volume
      ->add_option("angles", angle_text,
                   "six dihedral angles (decimals or pi-fractions like pi/6)")
      ->expected(6);
  c_volume->add_option("--method", method, "integral | dilog | auto")
      ->check(CLI::IsMember({"integral", "dilog", "auto"}));
  c_volume->add_flag("--diagnostics", diagnostics,
                     "print vertex classification and k/z parameters");

  CLI::App* c_solve =
      app.add_subcommand("solve", "solve the hyperbolicity equations");
  c_solve->add_option("pairing", pairing_path, "pairing text file")
      ->required();
  c_solve->add_flag("--ansatz", ansatz,
                    "use the two-parameter symmetric ansatz");
  c_solve->add_flag("--octahedral", octahedral,
                    "pin every dihedral angle to zero");
  add_solver_flags(c_solve);

  CLI::App* c_canonize =
      app.add_subcommand("canonize", "certify the canonical decomposition");
  c_canonize->add_option("pairing", pairing_path, "pairing text file")
      ->required();
  c_canonize->add_option("--move-budget", move_budget,
                         "Pachner move budget (0 = default 50n)");
  add_solver_flags(c_canonize);

  CLI::App* c_census =
      app.add_subcommand("census", "census of manifolds with geodesic boundary");
  c_census->add_option("n", census_n, "complexity (tetrahedron count)")
      ->required();
  c_census->add_flag("--extended", extended, "permit n = 3");
  c_census->add_option("--csv", csv_path, "write records as CSV");
  c_census->add_option("--json", json_path, "write full report as JSON");
  c_census->add_option("--log-dir", log_dir,
                       "resume-log directory (overrides HYPCENSUS_LOG_DIR)");
  add_solver_flags(c_census);

  CLI::App* c_oct =
      app.add_subcommand("octcensus", "octahedral relative handlebody census");
  c_oct->add_option("n", census_n, "complexity parameter")->required();
  c_oct->add_option("--csv", csv_path, "write records as CSV");
  c_oct->add_option("--json", json_path, "write full report as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_volume->parsed()) {
      DihedralAngles ang;
      try {
        for (int i = 0; i < 6; ++i) ang[i] = parse_angle(angle_text[i]);
      } catch (const CLI::ValidationError& e) {
        std::printf("error: %s\n", e.what());
        return 2;
      }
      for (int i = 0; i < 6; ++i)
        if (!(ang[i] >= 0.0) || ang[i] >= kPi) {
          std::printf(
              "error: angle %d = %.9f violates 0 <= angle < pi\n", i, ang[i]);
          return 2;
        }
      if (ang.total() < 1e-12) {
        std::printf(
            "error: all-zero angles are degenerate as a tetrahedron; the "
            "all-zero structure is the regular ideal octahedron (see the "
            "octcensus subcommand)\n");
        return 2;
      }
      try {
        const auto types = classify_vertices(ang);
        const double vol = method == "integral" ? volume_integral(ang)
                                                : volume_dilog(ang);
        std::printf("volume %.9f\n", vol);
        if (diagnostics) {
          for (int v = 0; v < 4; ++v)
            std::printf("vertex %d %s\n", v + 1, vertex_type_name(types[v]));
          const VolumeParams p = volume_params(ang);
          std::printf("k1 %.9f\nk2 %.9f\nk3 %.9f\nk4 %.9f\n", p.k1, p.k2,
                      p.k3, p.k4);
          std::printf("z1 %.9f\nz2 %.9f\n", p.z1, p.z2);
        }
      } catch (const Error& e) {
        std::printf("error: %s\n", e.what());
        return 2;
      }
      return 0;
    }

    if (c_solve->parsed()) {
      const Pairing p = load_pairing(pairing_path);
      CuspMarks marks;
      if (octahedral) {
        marks.all_edges_zero_angle = true;
      } else if (ansatz) {
        marks = toric_marks(p, boundary_pattern(p));
      }
      const GeometricSolution sol = solve_or_exit(p, marks, solver, ansatz);
      print_solution(sol);
      return 0;
    }

    if (c_canonize->parsed()) {
      const Pairing p = load_pairing(pairing_path);
      const GeometricSolution sol = solve_or_exit(p, {}, solver, false);
      const CanonicalDecomposition dec = canonize(sol, solver, move_budget);
      std::printf("signature %s\n", dec.signature.c_str());
      std::printf("volume %.9f\n", dec.solution.volume);
      std::printf("moves %d\n", dec.moves_used);
      std::printf("cells %zu%s\n", dec.cells.size(),
                  dec.has_flat_merge ? " (flat faces merged)" : "");
      for (const auto& cell : dec.cells)
        std::printf("cell %s tets %d faces %d\n", cell.type.c_str(),
                    cell.tet_count, cell.face_count);
      for (const auto& r : tilt_reports(dec.solution))
        std::printf("tilt %d.%d %+.9f %s\n", r.tet, r.face, r.sum,
                    r.sign < 0 ? "convex" : (r.sign == 0 ? "flat" : "bad"));
      return 0;
    }

    CensusConfig config;
    config.solver = solver;
    config.extended = extended;
    config.log_dir = log_dir;
    const CensusResult result = c_census->parsed()
                                    ? run_census(census_n, config)
                                    : run_octahedral_census(census_n, config);
    write_reports(result, csv_path, json_path);
    print_census_summary(result);
    return 0;
  } catch (const Error& e) {
    std::printf("error: %s\n", e.what());
    return 3;
  }
}
