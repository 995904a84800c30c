#include "hypcensus/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include <json.hpp>

#include "hypcensus/errors.hpp"
#include "hypcensus/specfun.hpp"

namespace hypcensus {
namespace {

using nlohmann::json;

std::string log_path(const CensusConfig& config, const std::string& name) {
  std::string dir = config.log_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv(kLogDirEnv)) dir = env;
  }
  if (dir.empty()) return {};
  std::filesystem::create_directories(dir);
  return dir + "/" + name + ".jsonl";
}

json record_to_json(const CensusRecord& rec) {
  json j;
  j["signature"] = rec.signature;
  j["volume"] = rec.volume;
  j["complexity"] = rec.complexity;
  j["boundary"] = boundary_label(rec.boundary);
  json comps = json::array();
  for (const auto& c : rec.boundary.components)
    comps.push_back({{"chi", c.chi},
                     {"genus", c.genus},
                     {"orientable", c.orientable_link}});
  j["boundary_components"] = comps;
  j["toric_count"] = rec.boundary.toric_count;
  j["cells"] = rec.cell_summary;
  j["provenance"] = rec.provenance;
  j["sources"] = rec.source_pairings;
  return j;
}

/// Append-only result log: one JSON line per processed candidate, keyed by
/// the candidate's combinatorial signature so interrupted runs can resume.
class ResultLog {
 public:
  explicit ResultLog(const std::string& path) : path_(path) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("key")) continue;
      std::string key = j["key"].get<std::string>();
      done_[std::move(key)] = std::move(j);
    }
  }

  const json* lookup(const std::string& key) const {
    auto it = done_.find(key);
    return it == done_.end() ? nullptr : &it->second;
  }

  void append(json entry) {
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    out << entry.dump() << "\n";
  }

 private:
  std::string path_;
  std::map<std::string, json> done_;
};

CensusRecord record_from_decomposition(const Pairing& p,
                                       const CanonicalDecomposition& dec,
                                       int n) {
  CensusRecord rec;
  rec.signature = dec.signature;
  rec.volume = dec.solution.volume;
  rec.complexity = n;
  rec.boundary = boundary_pattern(p);
  for (const auto& cell : dec.cells) ++rec.cell_summary[cell.type];
  rec.provenance = "newton";
  rec.source_pairings.push_back(p.to_text());
  return rec;
}

CensusRecord record_from_json(const json& j) {
  CensusRecord rec;
  rec.signature = j["signature"].get<std::string>();
  rec.volume = j["volume"].get<double>();
  rec.complexity = j["complexity"].get<int>();
  for (const auto& c : j["boundary_components"]) {
    BoundaryComponent comp;
    comp.chi = c["chi"].get<int>();
    comp.genus = c["genus"].get<int>();
    comp.orientable_link = c["orientable"].get<bool>();
    rec.boundary.components.push_back(comp);
  }
  rec.boundary.toric_count = j["toric_count"].get<int>();
  for (auto it = j["cells"].begin(); it != j["cells"].end(); ++it)
    rec.cell_summary[it.key()] = it.value().get<int>();
  rec.provenance = j["provenance"].get<std::string>();
  for (const auto& s : j["sources"])
    rec.source_pairings.push_back(s.get<std::string>());
  return rec;
}

}  // namespace

std::vector<CensusRecord> dedup(std::vector<CensusRecord> records) {
  std::map<std::string, CensusRecord> merged;
  for (auto& rec : records) {
    auto it = merged.find(rec.signature);
    if (it == merged.end()) {
      merged.emplace(rec.signature, std::move(rec));
      continue;
    }
    if (std::abs(it->second.volume - rec.volume) > 1e-6)
      throw VolumeMismatchOnMerge(
          "records with signature " + rec.signature +
          " disagree on volume: " + std::to_string(it->second.volume) +
          " vs " + std::to_string(rec.volume));
    for (auto& s : rec.source_pairings)
      it->second.source_pairings.push_back(std::move(s));
  }
  std::vector<CensusRecord> out;
  out.reserve(merged.size());
  for (auto& [sig, rec] : merged) out.push_back(std::move(rec));
  return out;
}

CensusResult run_census(int n, const CensusConfig& config) {
  if (n < 1 || n > 3)
    throw UnsupportedSize("run_census: n must be 1, 2, or 3");
  if (n == 3 && !config.extended)
    throw UnsupportedSize("run_census: n = 3 requires the extended flag");
  // signatures of strictly simpler manifolds, for the exclusion step
  std::set<std::string> known;
  if (n > 1) {
    CensusConfig prev = config;
    prev.log_dir.clear();  // previous-level pass is cheap; no persistence
    for (const auto& rec : run_census(n - 1, prev).records)
      known.insert(rec.signature);
  }
  ResultLog log(log_path(config, "census_n" + std::to_string(n)));
  CensusResult result;
  result.n = n;
  FilterSet filters;  // census defaults: all filters on
  std::vector<CensusRecord> records;
  enumerate_pairings(n, filters, [&](const Pairing& p) {
    ++result.candidate_count;
    const std::string key = canonical_signature(p);
    if (const json* prior = log.lookup(key)) {
      if ((*prior)["status"] == "ok")
        records.push_back(record_from_json((*prior)["record"]));
      else
        result.failures.push_back({(*prior)["pairing"].get<std::string>(),
                                   (*prior)["stage"].get<std::string>(),
                                   (*prior)["evidence"].get<std::string>()});
      return;
    }
    const BoundaryPattern bp = boundary_pattern(p);
    std::string stage = "solve";
    try {
      CensusRecord rec;
      if (bp.toric_count == 0) {
        auto res = solve(build_equations(p, {}), config.solver);
        if (auto* ev = std::get_if<NoSolutionEvidence>(&res)) {
          result.failures.push_back({p.to_text(), "solve", ev->detail});
          log.append({{"key", key},
                      {"status", "fail"},
                      {"pairing", p.to_text()},
                      {"stage", "solve"},
                      {"evidence", ev->detail}});
          return;
        }
        stage = "canonize";
        const auto dec = canonize(std::get<GeometricSolution>(res),
                                  config.solver);
        rec = record_from_decomposition(p, dec, n);
      } else {
        // toric vertex links force ideal vertices; only the two-parameter
        // ansatz is supported for cusped structures
        CuspMarks marks;
        marks.ideal_vertex.assign(p.n, {false, false, false, false});
        for (const auto& c : bp.components)
          if (c.orientable_link && c.chi == 0)
            for (const auto& [t, v] : c.vertices)
              marks.ideal_vertex[t][v] = true;
        const GeometricSolution sol =
            solve_mgk_ansatz(p, marks, config.solver);
        rec.signature = "c:" + key;  // no cusped Kojima canonization
        rec.volume = sol.volume;
        rec.complexity = n;
        rec.boundary = bp;
        rec.cell_summary["tetrahedron"] = p.n;
        rec.provenance = "ansatz";
        rec.source_pairings.push_back(p.to_text());
      }
      records.push_back(rec);
      log.append({{"key", key},
                  {"status", "ok"},
                  {"record", record_to_json(rec)}});
    } catch (const Error& e) {
      result.failures.push_back({p.to_text(), stage, e.what()});
      log.append({{"key", key},
                  {"status", "fail"},
                  {"pairing", p.to_text()},
                  {"stage", stage},
                  {"evidence", e.what()}});
    }
  });
  records = dedup(std::move(records));
  for (auto& rec : records)
    if (!known.count(rec.signature)) result.records.push_back(std::move(rec));
  return result;
}

CensusResult run_octahedral_census(int n, const CensusConfig& config) {
  if (n < 1 || n > 3)
    throw UnsupportedSize("run_octahedral_census: n must be 1, 2, or 3");
  CensusResult result;
  result.n = n;
  FilterSet none;
  none.orientation_reversing_only = false;
  none.drop_valence_one = false;
  none.drop_valence_two = false;
  none.manifold_only = false;
  const double v_oct = 8.0 * lobachevsky(std::numbers::pi / 4.0);
  enumerate_pairings(n, none, [&](const Pairing& p) {
    ++result.candidate_count;
    const YDescription y = build_relative_handlebody(p);
    CensusRecord rec;
    rec.signature = "o:" + canonical_signature(p);
    rec.volume = n * v_oct;
    rec.complexity = y.complexity;
    BoundaryComponent comp;
    comp.genus = y.genus;
    comp.chi = y.orientable ? 2 - 2 * y.genus : 2 - y.genus;
    comp.orientable_link = y.orientable;
    rec.boundary.components.push_back(comp);
    rec.cell_summary["octahedron"] = p.n;
    rec.provenance = "octahedral";
    rec.source_pairings.push_back(p.to_text());
    result.records.push_back(std::move(rec));
  });
  result.records = dedup(std::move(result.records));
  return result;
}

VolumeStats volume_stats(const std::vector<CensusRecord>& records) {
  VolumeStats stats;
  stats.manifold_count = static_cast<int>(records.size());
  std::map<long long, int> hist;
  for (const auto& rec : records)
    ++hist[static_cast<long long>(std::llround(rec.volume * 1e6))];
  stats.value_count = static_cast<int>(hist.size());
  if (!hist.empty()) {
    stats.min_volume = hist.begin()->first / 1e6;
    stats.max_volume = hist.rbegin()->first / 1e6;
    for (const auto& [v, c] : hist)
      stats.max_multiplicity = std::max(stats.max_multiplicity, c);
  }
  return stats;
}

std::string boundary_label(const BoundaryPattern& boundary) {
  std::vector<std::string> parts;
  std::vector<int> genera;
  int nonorientable = 0;
  for (const auto& c : boundary.components) {
    if (c.orientable_link && c.chi == 0) continue;  // counted as toric
    if (c.orientable_link)
      genera.push_back(c.genus);
    else
      ++nonorientable;
  }
  std::sort(genera.rbegin(), genera.rend());
  std::string out;
  for (int g : genera) {
    if (!out.empty()) out += "+";
    out += "g" + std::to_string(g);
  }
  for (int i = 0; i < nonorientable; ++i) out += out.empty() ? "N" : "+N";
  if (boundary.toric_count > 0)
    out += (out.empty() ? "" : "+") + std::to_string(boundary.toric_count) + "T";
  return out.empty() ? "closed" : out;
}

std::string to_csv(const CensusResult& result) {
  std::string out = "signature,volume,complexity,boundary,cells,provenance,source_count\n";
  char buf[64];
  for (const auto& rec : result.records) {
    std::string cells;
    for (const auto& [type, count] : rec.cell_summary) {
      if (!cells.empty()) cells += "|";
      cells += type + "x" + std::to_string(count);
    }
    std::snprintf(buf, sizeof buf, "%.6f", rec.volume);
    out += "\"" + rec.signature + "\"," + buf + "," +
           std::to_string(rec.complexity) + "," +
           boundary_label(rec.boundary) + "," + cells + "," + rec.provenance +
           "," + std::to_string(rec.source_pairings.size()) + "\n";
  }
  return out;
}

std::string to_json(const CensusResult& result) {
  json j;
  j["n"] = result.n;
  j["candidates"] = result.candidate_count;
  json recs = json::array();
  for (const auto& rec : result.records) recs.push_back(record_to_json(rec));
  j["records"] = recs;
  json fails = json::array();
  for (const auto& f : result.failures)
    fails.push_back({{"pairing", f.pairing_text},
                     {"stage", f.stage},
                     {"evidence", f.evidence}});
  j["failures"] = fails;
  const VolumeStats stats = volume_stats(result.records);
  j["stats"] = {{"manifolds", stats.manifold_count},
                {"volume_values", stats.value_count},
                {"min_volume", stats.min_volume},
                {"max_volume", stats.max_volume},
                {"max_multiplicity", stats.max_multiplicity}};
  return j.dump(2) + "\n";
}

}  // namespace hypcensus
