// Copyright 2026 The chanmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "chanmet/cli.hpp"
#include "chanmet/families.hpp"
#include "chanmet/output.hpp"
#include "support/generators.hpp"

using namespace chanmet;
using nlohmann::json;

namespace {

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("chanmet");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(int(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("metric min on the bitflip family") {
  const std::string record = tmp_path("min.json");
  const int rc = run_cli({"metric", "min", "--family", "bitflip", "--theta",
                          "0.1", "--out", record});
  CHECK(rc == kExitOk);
  const json rep = read_json_file(record);
  CHECK(rep.at("command") == "metric min");
  CHECK(rep.at("version") == "0.1.0");
  const double value = rep.at("results").at("g_min").at("value").get<double>();
  CHECK(value == doctest::Approx(1.0 / 0.09).epsilon(1e-4));
  CHECK(rep.contains("config_hash"));
  std::remove(record.c_str());
}

TEST_CASE("metric cpball reports a vanishing ball for the unitary family") {
  const std::string record = tmp_path("cpball.json");
  const int rc = run_cli({"metric", "cpball", "--family", "phase_unitary",
                          "--theta", "0.0", "--out", record});
  CHECK(rc == kExitOk);
  const json rep = read_json_file(record);
  CHECK(rep.at("results").at("eps").get<double>() == 0.0);
  CHECK(rep.at("results").at("g_max_upper").is_null());  // +inf serializes as null
  std::remove(record.c_str());
}

TEST_CASE("unknown family exits with the config code") {
  CHECK(run_cli({"metric", "min", "--family", "bogus", "--theta", "0.1"}) ==
        kExitConfig);
  CHECK(run_cli({"metric", "wat", "--family", "bitflip"}) == kExitConfig);
  CHECK(run_cli({"metric", "min", "--family", "depolarized_phase", "--params",
                 "{broken"}) == kExitConfig);
}

TEST_CASE("scaling: budget violations exit with code 4") {
  CHECK(run_cli({"scaling", "--family", "bitflip", "--theta", "0.1", "--n-max",
                 "9"}) == kExitBudget);
}

TEST_CASE("scaling writes a deterministic CSV") {
  const std::string csv_a = tmp_path("scal_a.csv");
  const std::string csv_b = tmp_path("scal_b.csv");
  const std::string svg = tmp_path("scal.svg");
  const std::vector<std::string> base = {"scaling",      "--family", "bitflip",
                                         "--theta",      "0.1",      "--n-max",
                                         "2",            "--seed",   "5"};
  std::vector<std::string> run_a = base;
  run_a.insert(run_a.end(), {"--csv", csv_a, "--svg", svg});
  std::vector<std::string> run_b = base;
  run_b.insert(run_b.end(), {"--csv", csv_b});
  REQUIRE(run_cli(run_a) == kExitOk);
  REQUIRE(run_cli(run_b) == kExitOk);

  const std::string a = slurp(csv_a);
  CHECK(a == slurp(csv_b));
  CHECK(a.rfind("n,g_min_over_n,restarts_used,converged\r\n", 0) == 0);

  const std::string svg_text = slurp(svg);
  CHECK(svg_text.rfind("<svg", 0) == 0);
  std::remove(csv_a.c_str());
  std::remove(csv_b.c_str());
  std::remove(svg.c_str());
}

TEST_CASE("scaling CSV carries the superlinear unitary column") {
  const std::string csv = tmp_path("scal_pu.csv");
  REQUIRE(run_cli({"scaling", "--family", "phase_unitary", "--theta", "0.0",
                   "--n-max", "2", "--csv", csv}) == kExitOk);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> col;
  while (std::getline(in, line)) {
    if (line.size() < 3) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    col.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
  }
  REQUIRE(col.size() == 2);
  CHECK(col[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(col[1] == doctest::Approx(2.0).epsilon(1e-3));
  std::remove(csv.c_str());
}

TEST_CASE("simulate: identity povm exits degenerate, reruns are bit-identical") {
  CHECK(run_cli({"simulate", "--family", "bitflip", "--theta", "0.1", "--probe",
                 "zero", "--povm", "identity"}) == kExitDegenerate);

  const std::string csv_a = tmp_path("sim_a.csv");
  const std::string csv_b = tmp_path("sim_b.csv");
  const std::vector<std::string> base = {
      "simulate", "--family", "bitflip", "--theta", "0.1",
      "--probe",  "zero",     "--povm",  "computational",
      "--n-list", "100,200",  "--trials", "50",
      "--seed",   "7"};
  std::vector<std::string> run_a = base;
  run_a.insert(run_a.end(), {"--csv", csv_a});
  std::vector<std::string> run_b = base;
  run_b.insert(run_b.end(), {"--csv", csv_b});
  REQUIRE(run_cli(run_a) == kExitOk);
  REQUIRE(run_cli(run_b) == kExitOk);
  const std::string a = slurp(csv_a);
  CHECK(a == slurp(csv_b));
  CHECK(a.rfind("n,mse,n_mse,cr_floor\r\n", 0) == 0);
  std::remove(csv_a.c_str());
  std::remove(csv_b.c_str());
}

TEST_CASE("report records round-trip and embed the config hash") {
  const std::string record = tmp_path("roundtrip.json");
  REQUIRE(run_cli({"simulate", "--family", "bitflip", "--theta", "0.1",
                   "--probe", "zero", "--povm", "computational", "--n-list",
                   "100", "--trials", "20", "--seed", "3", "--out", record}) ==
          kExitOk);
  const json rep = read_json_file(record);
  // Lossless round-trip through the serialized text.
  const json again = json::parse(rep.dump());
  CHECK(again == rep);
  CHECK(rep.at("config_hash").get<std::string>().size() == 16);
  CHECK(rep.at("config_hash") == config_hash(rep.at("config")));
  std::remove(record.c_str());
}

TEST_CASE("explicit Choi files drive the metric commands bit-exactly") {
  std::mt19937_64 rng(2024);
  const Channel phi = chanmet::testing::random_interior_channel(2, 2, rng);
  const ChannelTangent dphi = chanmet::testing::random_channel_tangent(2, 2, rng);

  const std::string chan_file = tmp_path("chan.json");
  const std::string tang_file = tmp_path("tang.json");
  write_text_file(chan_file, channel_to_json(phi).dump(2));
  write_text_file(tang_file, tangent_to_json(dphi).dump(2));

  // Bit-exact round-trip through the file.
  const Channel back = channel_from_json(read_json_file(chan_file));
  CHECK((back.choi_mat() - phi.choi_mat()).norm() == 0.0);

  const std::string record = tmp_path("choi_metric.json");
  REQUIRE(run_cli({"metric", "cpball", "--channel", chan_file, "--tangent",
                   tang_file, "--out", record}) == kExitOk);
  const json rep = read_json_file(record);
  CHECK(rep.at("results").at("eps").get<double>() > 0.0);

  // Tangent alone is a config error.
  CHECK(run_cli({"metric", "min", "--tangent", tang_file}) == kExitConfig);

  std::remove(chan_file.c_str());
  std::remove(tang_file.c_str());
  std::remove(record.c_str());
}

TEST_CASE("family spec files select family and theta") {
  const std::string spec = tmp_path("family.json");
  write_text_file(spec, json{{"name", "depolarized_phase"},
                             {"params", {{"r", 0.1}}},
                             {"theta", 0.0}}
                            .dump());
  const std::string record = tmp_path("family_metric.json");
  REQUIRE(run_cli({"metric", "max", "--family-file", spec, "--out", record}) ==
          kExitOk);
  const json rep = read_json_file(record);
  CHECK(rep.at("results").at("g_max_upper").get<double>() ==
        doctest::Approx(8.756756756756757).epsilon(1e-4));
  std::remove(spec.c_str());
  std::remove(record.c_str());
}
