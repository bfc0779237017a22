// Copyright 2026 The FringeLab Authors
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

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fringelab/fringes.hpp"
#include "fringelab/io.hpp"
#include "gtest/gtest.h"

namespace {

using fringelab::io::Json;

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "fringelab_cli_" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

Run run(const std::string& args, const std::string& env = "") {
  const std::string err_path = temp_path("stderr.txt");
  const std::string cmd = env + " " FRINGELAB_CLI_PATH " " + args + " 2> " + err_path;
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// CSV table as header + rows of cells (empty cell = NaN).
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  const auto ls = lines(text);
  csv.header = fringelab::io::split(ls.at(0), ',');
  for (std::size_t i = 1; i < ls.size(); ++i) {
    std::vector<double> row;
    for (const auto& cell : fringelab::io::split(ls[i], ',')) row.push_back(cell.empty() ? NAN : std::stod(cell));
    csv.rows.push_back(row);
  }
  return csv;
}

void expect_same_table(const std::string& csv_text, const std::string& json_text) {
  const Csv csv = parse_csv(csv_text);
  const Json j = Json::parse(json_text);
  ASSERT_EQ(j.at("columns").get<std::vector<std::string>>(), csv.header);
  ASSERT_EQ(j.at("rows").size(), csv.rows.size());
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    for (std::size_t k = 0; k < csv.header.size(); ++k) {
      const auto& cell = j["rows"][i][k];
      if (cell.is_null()) {
        EXPECT_TRUE(std::isnan(csv.rows[i][k]));
      } else {
        EXPECT_EQ(cell.get<double>(), csv.rows[i][k]) << "row " << i << " column " << csv.header[k];
      }
    }
  }
}

double peak_field(const std::string& err, const std::string& key) {
  const auto at = err.find(key + "=");
  if (at == std::string::npos) return NAN;
  return std::stod(err.substr(at + key.size() + 1));
}

}  // namespace

TEST(cli_fringe, full_period_matches_closed_form) {
  const auto r = run("fringe --state hb --n 6 --outcome 3:3 --phi-start 0 --phi-end 360 --phi-step 1");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const Csv csv = parse_csv(r.out);
  EXPECT_EQ(csv.header, (std::vector<std::string>{"phi_deg", "probability"}));
  ASSERT_EQ(csv.rows.size(), 361u);
  for (const auto& row : csv.rows) {
    EXPECT_NEAR(row[1], fringelab::p33_closed_form(fringelab::to_radians(row[0])), 1e-11);
  }
}

TEST(cli_fringe, json_mirrors_csv) {
  const std::string args = "fringe --state noon --n 6 --visibility 0.94 --model noon-cosine --phi-step 2.5";
  const auto csv = run(args);
  const auto json = run(args + " --format json");
  ASSERT_EQ(csv.exit_code, 0);
  ASSERT_EQ(json.exit_code, 0);
  expect_same_table(csv.out, json.out);
}

TEST(cli_exit_codes, invalid_flags_and_physics_errors) {
  EXPECT_EQ(run("fringe --phi-step 0").exit_code, 2);
  EXPECT_EQ(run("fringe --phi-start 10 --phi-end 5").exit_code, 2);
  EXPECT_EQ(run("fringe --no-such-flag").exit_code, 2);
  EXPECT_EQ(run("fringe --state qubit").exit_code, 2);
  EXPECT_EQ(run("fringe --outcome three").exit_code, 2);
  EXPECT_EQ(run("fisher --band").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
  const auto odd = run("fringe --state hb --n 5");
  EXPECT_EQ(odd.exit_code, 3);
  EXPECT_NE(odd.err.find("even"), std::string::npos);
  EXPECT_EQ(run("fringe --state hb --n 6 --outcome 3:2").exit_code, 3);
  EXPECT_EQ(run("fisher --state hb --n 7").exit_code, 3);
  EXPECT_EQ(run("estimate --counts /nonexistent.csv --method fit").exit_code, 1);
}

TEST(cli_fisher, ideal_hb_peak) {
  const auto r = run("fisher --mode single --state hb --n 6 --outcome 3:3");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NEAR(peak_field(r.err, "fisher"), 24.0, 1e-6);
  EXPECT_LT(peak_field(r.err, "phi_deg"), 0.01);
  const Csv csv = parse_csv(r.out);
  EXPECT_EQ(csv.header, (std::vector<std::string>{"phi_deg", "fisher"}));
  EXPECT_EQ(csv.rows.size(), 181u);
}

TEST(cli_fisher, reduced_visibility_peaks) {
  const auto hb = run("fisher --state hb --n 6 --visibility 0.94 --format json");
  ASSERT_EQ(hb.exit_code, 0) << hb.err;
  const Json peak = Json::parse(hb.out).at("peak");
  EXPECT_GE(peak.at("phi_deg").get<double>(), 12.0);
  EXPECT_LE(peak.at("phi_deg").get<double>(), 18.0);
  EXPECT_GE(peak.at("fisher").get<double>(), 19.0);
  EXPECT_LE(peak.at("fisher").get<double>(), 22.0);

  const auto noon = run("fisher --state noon --n 6 --visibility 0.94 --model noon-cosine --format json");
  ASSERT_EQ(noon.exit_code, 0) << noon.err;
  EXPECT_NEAR(Json::parse(noon.out).at("peak").at("fisher").get<double>(), 16.91, 0.05);
}

TEST(cli_fisher, band_column_and_json_mirror) {
  const std::string args = "fisher --visibility 0.94 --band --visibility-sigma 0.02 --phi-end 30";
  const auto csv = run(args);
  const auto json = run(args + " --format json");
  ASSERT_EQ(csv.exit_code, 0) << csv.err;
  EXPECT_EQ(lines(csv.out).at(0), "phi_deg,fisher,sigma");
  EXPECT_EQ(lines(csv.out).size(), 62u);
  expect_same_table(csv.out, json.out);
  EXPECT_GT(peak_field(csv.err, "sigma"), 0.0);
}

TEST(cli_fisher, full_mode_is_flat_for_hb) {
  const auto r = run("fisher --mode full --state hb --n 6 --phi-start 1 --phi-end 89 --phi-step 8");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  for (const auto& row : parse_csv(r.out).rows) EXPECT_NEAR(row[1], 24.0, 1e-8);
  EXPECT_EQ(run("fisher --mode full --visibility 0.9").exit_code, 2);
}

TEST(cli_scaling, tables) {
  const auto r40 = run("scaling --n-max 40");
  ASSERT_EQ(r40.exit_code, 0);
  const Csv t40 = parse_csv(r40.out);
  EXPECT_EQ(t40.header, (std::vector<std::string>{"n", "snl", "noon_single", "hb_single"}));
  ASSERT_EQ(t40.rows.size(), 40u);
  EXPECT_EQ(t40.rows.back()[3], 840.0);

  const Csv t4 = parse_csv(run("scaling --n-max 4").out);
  EXPECT_EQ(t4.rows[1][2], t4.rows[1][3]);
  EXPECT_EQ(t4.rows[3][2], t4.rows[3][3]);

  const Csv t3 = parse_csv(run("scaling --n-max 3").out);
  int with_hb = 0;
  for (const auto& row : t3.rows) with_hb += !std::isnan(row[3]);
  EXPECT_EQ(with_hb, 1);
  EXPECT_EQ(t3.rows[1][3], 4.0);

  const auto asym = run("scaling --n-max 12 --asymptotic");
  EXPECT_EQ(lines(asym.out).at(0), "n,snl,noon_single,hb_single,noon_asymptotic");
  expect_same_table(asym.out, run("scaling --n-max 12 --asymptotic --format json").out);
}

TEST(cli_simulate, deterministic_and_ideal_at_zero) {
  const std::string plan = temp_path("plan.json");
  write(plan, R"({"state": "hb", "n": 6, "shots": 20000, "seed": 42, "phi_start": 0, "phi_end": 60, "phi_step": 5})");
  const std::string a = temp_path("a.csv");
  const std::string b = temp_path("b.csv");
  ASSERT_EQ(run("simulate --plan " + plan + " --out " + a).exit_code, 0);
  ASSERT_EQ(run("simulate --plan " + plan + " --out " + b, "FRINGELAB_THREADS=1").exit_code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto ls = lines(slurp(a));
  EXPECT_EQ(ls.at(0), "phi_deg,shots,seed,counts");
  EXPECT_EQ(ls.size(), 14u);
  EXPECT_EQ(ls.at(1), "0,20000,42,0:6=0;1:5=0;2:4=0;3:3=20000;4:2=0;5:1=0;6:0=0");

  std::istringstream in(slurp(a));
  const auto file = fringelab::io::read_counts(in);
  const auto json = run("simulate --plan " + plan + " --format json");
  std::istringstream jin(json.out);
  const auto jfile = fringelab::io::read_counts(jin);
  ASSERT_EQ(jfile.records.size(), file.records.size());
  for (std::size_t i = 0; i < file.records.size(); ++i) {
    EXPECT_EQ(jfile.records[i].outcome_counts, file.records[i].outcome_counts);
  }
}

TEST(cli_simulate, detector_config) {
  const std::string plan = temp_path("plan0.json");
  const std::string config = temp_path("det.conf");
  write(plan, R"({"shots": 100000, "seed": 1, "phases_deg": [0]})");
  write(config, "# six-fold setup\ndetectors { k = 5, eta = 1.0 }\n");
  const auto r = run("simulate --plan " + plan + " --config " + config);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::istringstream in(r.out);
  const auto file = fringelab::io::read_counts(in);
  const double rate = static_cast<double>(file.records.at(0).count({3, 3})) / 100000.0;
  EXPECT_NEAR(rate, 0.2304, 4 * std::sqrt(0.2304 * 0.7696 / 1e5));
  write(config, "detectors { k = 0 }\n");
  EXPECT_EQ(run("simulate --plan " + plan + " --config " + config).exit_code, 2);
  write(plan, R"({"shots": 10, "seed": 1, "phi_start": 0, "phi_end": 10, "phi_step": 0})");
  EXPECT_EQ(run("simulate --plan " + plan).exit_code, 2);
}

TEST(cli_estimate, reports_in_both_formats) {
  const std::string plan = temp_path("plan_est.json");
  const std::string counts = temp_path("counts.csv");
  write(plan, R"({"state": "hb", "n": 6, "shots": 20000, "seed": 9, "phi_start": 0, "phi_end": 60, "phi_step": 3})");
  ASSERT_EQ(run("simulate --plan " + plan + " --out " + counts).exit_code, 0);
  const std::string single = temp_path("single.csv");
  write(plan, R"({"state": "hb", "n": 6, "shots": 20000, "seed": 9, "phases_deg": [15]})");
  ASSERT_EQ(run("simulate --plan " + plan + " --out " + single).exit_code, 0);

  for (const std::string& args : {"--counts " + counts + " --method fit",
                                  "--counts " + counts + " --method fit --model noon-cosine",
                                  "--counts " + counts + " --method direct --window 9:30",
                                  "--counts " + single + " --method mle --interval 0:38",
                                  "--counts " + single + " --method mle --interval 2:40 --likelihood full"}) {
    const auto csv = run("estimate " + args);
    const auto json = run("estimate " + args + " --format json");
    ASSERT_EQ(csv.exit_code, 0) << args << ": " << csv.err;
    ASSERT_EQ(json.exit_code, 0) << args << ": " << json.err;
    const auto ls = lines(csv.out);
    ASSERT_EQ(ls.size(), 2u);
    const auto keys = fringelab::io::split(ls[0], ',');
    const auto values = fringelab::io::split(ls[1], ',');
    const Json j = Json::parse(json.out);
    ASSERT_EQ(j.size(), keys.size());
    for (const char* field : {"estimate", "stderr", "window_lo_deg", "window_hi_deg", "seed", "shots"}) {
      EXPECT_TRUE(j.contains(field)) << field;
    }
    EXPECT_EQ(j.at("seed").get<int>(), 9);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto& v = j.at(keys[i]);
      if (v.is_number()) {
        EXPECT_EQ(v.get<double>(), std::stod(values[i])) << keys[i];
      } else if (v.is_boolean()) {
        EXPECT_EQ(v.get<bool>() ? "true" : "false", values[i]);
      } else {
        EXPECT_EQ(v.get<std::string>(), values[i]);
      }
    }
  }

  const auto mle = Json::parse(run("estimate --counts " + single + " --method mle --interval 0:38 --format json").out);
  EXPECT_LT(std::abs(mle.at("estimate").get<double>() - 15.0), 4 * mle.at("stderr").get<double>());
  EXPECT_FALSE(mle.at("at_boundary").get<bool>());
  EXPECT_EQ(run("estimate --counts " + counts + " --method mle --interval 0:38").exit_code, 2);
  EXPECT_EQ(run("estimate --counts " + single + " --method mle").exit_code, 2);
  EXPECT_EQ(run("estimate --counts " + counts + " --method direct --window 30:9").exit_code, 2);
  EXPECT_EQ(run("estimate --counts " + counts + " --method fit --outcome 2:2").exit_code, 3);
}

TEST(cli_threads, output_independent_of_thread_cap) {
  const std::string args = "fisher --visibility 0.94 --band --phi-step 0.25";
  const auto one = run(args, "FRINGELAB_THREADS=1");
  const auto many = run(args, "FRINGELAB_THREADS=8");
  ASSERT_EQ(one.exit_code, 0);
  EXPECT_EQ(one.out, many.out);
  EXPECT_EQ(one.err, many.err);
}
