// Copyright 2026 The pconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include "pconc/figures.hpp"
#include "pconc/io.hpp"
#include "test_support.hpp"

using namespace pconc;
using namespace pconc::testing;
using io::json;

TEST_CASE("state files round-trip exactly", "[io][property]") {
  for (int t = 0; t < 20; ++t) {
    const BipartiteKet k = random_ket({2, 3});
    const io::State back = io::state_from_json(json::parse(io::to_json(k).dump()));
    REQUIRE(std::holds_alternative<BipartiteKet>(back));
    CHECK(std::get<BipartiteKet>(back).amplitudes() == k.amplitudes());

    const DensityMatrix rho = validate_density(random_density_matrix(4), {2, 2});
    const io::State rback = io::state_from_json(json::parse(io::to_json(rho).dump()));
    REQUIRE(std::holds_alternative<DensityMatrix>(rback));
    CHECK(frobenius_distance(std::get<DensityMatrix>(rback).matrix(), rho.matrix()) < 1e-15);
  }
}

TEST_CASE("state file layout", "[io]") {
  const json j = io::to_json(make_max_entangled(2));
  CHECK(j["type"] == "ket");
  CHECK(j["dimA"] == 2);
  CHECK(j["dimB"] == 2);
  CHECK(j["data"].size() == 4);
  CHECK(j["data"][0].size() == 2);

  const json d = io::to_json(density_from_ket(make_max_entangled(2)));
  CHECK(d["type"] == "density");
  CHECK(d["data"].size() == 4);
  CHECK(d["data"][0].size() == 4);
  CHECK(std::abs(d["data"][0][3][0].get<double>() - 0.5) < 1e-15);
}

TEST_CASE("malformed state files are rejected", "[io]") {
  CHECK_THROWS_AS(io::state_from_json(json::parse(R"({"type":"ket","dimA":2,"data":[]})")), io::FormatError);
  CHECK_THROWS_AS(io::state_from_json(json::parse(R"({"type":"blob","dimA":1,"dimB":1,"data":[]})")), io::FormatError);
  CHECK_THROWS_AS(io::state_from_json(json::parse(R"({"type":"ket","dimA":1,"dimB":2,"data":[[1,0],[0]]})")),
                  io::FormatError);
  CHECK_THROWS_AS(io::state_from_json(json::parse(R"({"type":"ket","dimA":1,"dimB":2,"data":[[1,0],[1,0]]})")),
                  InvalidStateError);
  CHECK_THROWS_AS(
      io::state_from_json(json::parse(R"({"type":"density","dimA":1,"dimB":2,"data":[[[1,0],[0,0]],[[0,0],[1,0]]]})")),
      InvalidStateError);
}

TEST_CASE("tomography records round-trip", "[io]") {
  const auto k = qubit_setting_kets();
  const TomographyRecord rec =
      simulate_counts(density_from_ket(make_max_entangled(2)), joint_settings(k, k), 500.0, 2.0, 11);
  const json j = io::to_json(rec);
  for (const char* key : {"dimA", "dimB", "rate_hz", "integration_time_s", "seed", "settings", "counts"})
    CHECK(j.contains(key));
  CHECK(j["settings"][0].contains("label_a"));
  const TomographyRecord back = io::record_from_json(json::parse(j.dump()));
  CHECK(back.counts == rec.counts);
  CHECK(back.seed == rec.seed);
  CHECK(back.rate_hz == rec.rate_hz);
  REQUIRE(back.settings.size() == rec.settings.size());
  for (std::size_t i = 0; i < rec.settings.size(); ++i) {
    CHECK(back.settings[i].arm_a == rec.settings[i].arm_a);
    CHECK(back.settings[i].label_b == rec.settings[i].label_b);
  }

  json bad = j;
  bad["counts"].erase(0);
  CHECK_THROWS_AS(io::record_from_json(bad), DimensionError);
  json null_seed = j;
  null_seed["seed"] = nullptr;
  CHECK_FALSE(io::record_from_json(null_seed).seed);
}

TEST_CASE("witness report layout", "[io]") {
  const WitnessReport r =
      pconcurrence_known(density_from_ket(make_spdc_qutrit({0.5, 0.5})), SubspacePairing::identity(3));
  const json j = io::to_json(r);
  CHECK(j["search_mode"] == "known");
  CHECK(std::abs(j["pconcurrence"].get<double>() - 0.64) < 1e-9);
  CHECK(j["pairing"].size() == 3);
  CHECK(j["pairing"][1] == json::array({0, 2, 0, 2}));
  CHECK(j["subspaces"][0]["a"] == json::array({0, 1}));
  for (const char* key : {"a", "b", "concurrence", "fidelity", "weight"}) CHECK(j["subspaces"][2].contains(key));
}

TEST_CASE("budget JSON mirrors the struct", "[io]") {
  const json j = io::to_json(budget(8));
  CHECK(j["pconc_measurements"] == 1008);
  CHECK(j["qst_measurements"] == 14400);
  CHECK(j["k"] == 28);
  CHECK(j["pconc_time_s"] == 10080.0);
}

TEST_CASE("sweep CSV round-trips at full precision", "[io][property]") {
  const auto rows = qutrit_sweep(7);
  const std::string csv = to_csv(rows);
  CHECK(csv.rfind("alpha,beta,pconcurrence,eof_norm,iconcurrence_norm\n", 0) == 0);
  const auto back = parse_sweep_csv(csv);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(back[i] == rows[i]);
  CHECK_THROWS_AS(parse_sweep_csv("a,b\n1,2\n"), DomainError);
}

TEST_CASE("sweep and path contents", "[figures]") {
  const auto rows = qutrit_sweep(4);
  REQUIRE(rows.size() == 25);
  CHECK(rows.front() == SweepRow{0, 0, 0, 0, 0});
  const SweepRow& last = rows.back();
  CHECK(std::abs(last.pconcurrence - 1.0) < 1e-9);
  CHECK(std::abs(last.eof_normalized - 1.0) < 1e-9);
  CHECK(std::abs(last.iconcurrence_normalized - 1.0) < 1e-9);
  for (const auto& r : rows) {
    if (r.alpha * r.beta == 0.0) CHECK(r.pconcurrence == 0.0);
    if (std::max(r.alpha, r.beta) > 0.0) CHECK(r.eof_normalized > 0.0);
  }

  const auto path = qutrit_alpha_path(10);
  REQUIRE(path.size() == 11);
  CHECK(path.front().pconcurrence == 0.0);
  CHECK(std::abs(path.front().eof_normalized - 0.6309297535714575) < 1e-12);
  CHECK(std::abs(path.front().iconcurrence_normalized - std::sqrt(0.75)) < 1e-12);
  for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i].pconcurrence >= path[i - 1].pconcurrence);
}
