#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "hypcensus/census.hpp"
#include "hypcensus/errors.hpp"
#include "hypcensus/specfun.hpp"
#include "testutil.hpp"

using namespace hypcensus;
using testutil::kPi;

TEST_CASE("census at n=1 is empty") {
  const CensusResult result = run_census(1);
  CHECK(result.records.empty());
  CHECK(result.candidate_count >= 1);
}

TEST_CASE("census at n=2: the eight fujii manifolds") {
  const CensusResult result = run_census(2);
  REQUIRE(result.records.size() == 8);
  for (const auto& rec : result.records) {
    CHECK(std::abs(rec.volume - 6.451990) < 5e-6);
    CHECK(rec.complexity == 2);
    CHECK(boundary_label(rec.boundary) == "g2");
    CHECK(rec.provenance == "newton");
    CHECK(rec.cell_summary.at("tetrahedron") == 2);
  }
  const VolumeStats stats = volume_stats(result.records);
  CHECK(stats.manifold_count == 8);
  CHECK(stats.value_count == 1);
}

TEST_CASE("census requires the extended flag for n=3") {
  CHECK_THROWS_AS(run_census(3), UnsupportedSize);
  CHECK_THROWS_AS(run_census(4), UnsupportedSize);
}

TEST_CASE("dedup merges by signature and is idempotent") {
  CensusRecord a;
  a.signature = "x";
  a.volume = 1.0;
  a.source_pairings = {"p1"};
  CensusRecord b = a;
  b.source_pairings = {"p2"};
  auto merged = dedup({a, b});
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].source_pairings.size() == 2);
  auto again = dedup(merged);
  CHECK(again.size() == 1);
  CHECK(again[0].source_pairings.size() == 2);

  CensusRecord c = a;
  c.volume = 1.5;
  CHECK_THROWS_AS(dedup({a, c}), VolumeMismatchOnMerge);
}

TEST_CASE("octahedral census: volumes n*v_O, complexity 10n, oracle count") {
  const double v_oct = 8.0 * lobachevsky(kPi / 4);
  FilterSet none;
  none.orientation_reversing_only = false;
  none.drop_valence_one = false;
  none.drop_valence_two = false;
  none.manifold_only = false;
  for (int n = 1; n <= 2; ++n) {
    const CensusResult result = run_octahedral_census(n);
    const auto classes = enumerate_pairings(n, none);
    CHECK(result.records.size() == classes.size());
    CHECK(testutil::orbit_sum_matches(classes, n, false));
    for (const auto& rec : result.records) {
      CHECK(std::abs(rec.volume - n * v_oct) < 1e-5);
      CHECK(rec.complexity == 10 * n);
      CHECK(rec.provenance == "octahedral");
      CHECK(rec.cell_summary.at("octahedron") == n);
      REQUIRE(rec.boundary.components.size() == 1);
      CHECK(rec.boundary.components[0].genus == n + 1);
    }
  }
}

TEST_CASE("result log enables resumption") {
  const std::string dir =
      (std::filesystem::temp_directory_path() / "hypcensus_log_test").string();
  std::filesystem::remove_all(dir);
  CensusConfig config;
  config.log_dir = dir;
  const CensusResult first = run_census(2, config);
  REQUIRE(std::filesystem::exists(dir + "/census_n2.jsonl"));
  const auto size_after_first =
      std::filesystem::file_size(dir + "/census_n2.jsonl");
  const CensusResult second = run_census(2, config);
  // all candidates replayed from the log: no new lines appended
  CHECK(std::filesystem::file_size(dir + "/census_n2.jsonl") ==
        size_after_first);
  REQUIRE(second.records.size() == first.records.size());
  for (std::size_t i = 0; i < first.records.size(); ++i) {
    CHECK(second.records[i].signature == first.records[i].signature);
    CHECK(second.records[i].volume ==
          doctest::Approx(first.records[i].volume).epsilon(1e-12));
  }
  CHECK(second.failures.size() == first.failures.size());
  std::filesystem::remove_all(dir);
}

TEST_CASE("boundary labels") {
  BoundaryPattern bp;
  BoundaryComponent g2;
  g2.chi = -2;
  g2.genus = 2;
  g2.orientable_link = true;
  bp.components.push_back(g2);
  CHECK(boundary_label(bp) == "g2");
  bp.toric_count = 1;
  BoundaryComponent torus;
  torus.chi = 0;
  torus.genus = 1;
  torus.orientable_link = true;
  bp.components.push_back(torus);
  CHECK(boundary_label(bp) == "g2+1T");
  CHECK(boundary_label(BoundaryPattern{}) == "closed");
}

TEST_CASE("csv and json reports") {
  const CensusResult result = run_census(2);
  const std::string csv = to_csv(result);
  CHECK(csv.find("signature,volume,complexity,boundary,cells,provenance,"
                 "source_count") == 0);
  CHECK(csv.find("6.451990") != std::string::npos);
  CHECK(csv.find("tetrahedronx2") != std::string::npos);
  const std::string json = to_json(result);
  CHECK(json.find("\"records\"") != std::string::npos);
  CHECK(json.find("\"stats\"") != std::string::npos);
  // determinism: regenerating gives byte-identical output
  CHECK(to_csv(run_census(2)) == csv);
}
