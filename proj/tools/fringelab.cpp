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

// fringelab: fringe, Fisher-information and estimation tables.
//
// Exit codes: 0 success, 1 I/O or numerical failure, 2 invalid flags,
// 3 physics errors (odd N for HB, outcome not matching N, ...).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "fringelab/fringelab.hpp"
#include "fringelab/io.hpp"
#include "fringelab/parallel.hpp"

namespace {

using fringelab::io::Json;
using fringelab::io::format_number;
using fringelab::io::json_number;

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPhysics = 3;

// A column table; empty cells are missing values.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  Json extra = Json::object();
};

void write_table(std::ostream& out, const Table& table, const std::string& format) {
  if (format == "json") {
    Json j;
    j["columns"] = table.columns;
    j["rows"] = Json::array();
    for (const auto& row : table.rows) {
      Json r = Json::array();
      for (const auto& cell : row) r.push_back(cell ? json_number(*cell) : Json(nullptr));
      j["rows"].push_back(r);
    }
    for (const auto& [key, value] : table.extra.items()) j[key] = value;
    out << j.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (row[i]) out << format_number(*row[i]);
    }
    out << '\n';
  }
}

// A flat report: one header row and one value row in CSV, an object in JSON.
using Field = std::variant<double, long long, std::uint64_t, bool, std::string>;
using Report = std::vector<std::pair<std::string, Field>>;

void write_report(std::ostream& out, const Report& report, const std::string& format) {
  if (format == "json") {
    Json j = Json::object();
    for (const auto& [key, value] : report) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              j[key] = json_number(v);
            } else {
              j[key] = v;
            }
          },
          value);
    }
    out << j.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < report.size(); ++i) out << (i ? "," : "") << report[i].first;
  out << '\n';
  for (std::size_t i = 0; i < report.size(); ++i) {
    if (i) out << ',';
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            out << format_number(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            out << (v ? "true" : "false");
          } else {
            out << v;
          }
        },
        report[i].second);
  }
  out << '\n';
}

std::vector<double> phase_grid_deg(double start, double end, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("--phi-step must be positive");
  if (!(end >= start)) throw std::invalid_argument("--phi-end must not be below --phi-start");
  const auto count = static_cast<long>(std::floor((end - start) / step + 1e-9));
  if (count > 10'000'000) throw std::invalid_argument("phase grid too large");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count) + 1);
  for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::pair<double, double> parse_range(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument(flag + " must look like lo:hi");
  const double lo = fringelab::io::parse_double(text.substr(0, colon));
  const double hi = fringelab::io::parse_double(text.substr(colon + 1));
  if (!(hi > lo)) throw std::invalid_argument(flag + " needs lo < hi");
  return {lo, hi};
}

struct StateFlags {
  std::string state = "hb";
  int photons = 6;
  std::string outcome;

  void add(CLI::App* cmd) {
    cmd->add_option("--state", state, "Input state")->check(CLI::IsMember({"hb", "noon", "snl"}));
    cmd->add_option("--n", photons, "Photon number")->check(CLI::Range(1, fringelab::kMaxPhotons));
    cmd->add_option("--outcome", outcome, "Detected outcome n1:n2 (default: balanced)");
  }

  [[nodiscard]] fringelab::TwoModeState make() const {
    return fringelab::make_benchmark_state(fringelab::parse_state_kind(state), photons);
  }

  [[nodiscard]] fringelab::OutcomePattern pattern() const {
    if (outcome.empty()) return {photons - photons / 2, photons / 2};
    return fringelab::parse_outcome(outcome);
  }
};

struct GridFlags {
  double start = 0.0;
  double end = 180.0;
  double step = 1.0;

  void add(CLI::App* cmd) {
    cmd->add_option("--phi-start", start, "First phase in degrees");
    cmd->add_option("--phi-end", end, "Last phase in degrees");
    cmd->add_option("--phi-step", step, "Phase step in degrees");
  }
};

struct ModelFlags {
  std::optional<double> visibility;
  std::string model = "affine";
  std::string affine_form = "midpoint";

  void add(CLI::App* cmd) {
    cmd->add_option("--visibility", visibility, "Fringe visibility V; selects a reduced-contrast model")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--model", model, "Reduced-contrast model")->check(CLI::IsMember({"affine", "noon-cosine"}));
    cmd->add_option("--affine-form", affine_form, "Affine member at fixed V: midpoint (a=V) or unit-peak (a+b=1)")
        ->check(CLI::IsMember({"midpoint", "unit-peak"}));
  }

  [[nodiscard]] fringelab::FringeModel make(const fringelab::TwoModeState& state,
                                            const fringelab::OutcomePattern& outcome) const {
    using fringelab::FringeModel;
    fringelab::check_outcome(state, outcome);
    if (!visibility) return FringeModel::ideal(state, outcome);
    if (model == "noon-cosine") return FringeModel::noon_cosine_for(outcome, *visibility);
    if (affine_form == "unit-peak") return FringeModel::affine_unit_peak(state, outcome, *visibility);
    return FringeModel::affine_midpoint(state, outcome, *visibility);
  }

  // Parameter covariance implied by a 1-sigma visibility uncertainty.
  [[nodiscard]] std::array<std::array<double, 2>, 2> covariance(double sigma) const {
    const double v = *visibility;
    std::array<double, 2> d{};
    if (model == "noon-cosine") {
      d = {0.0, 1.0};
    } else if (affine_form == "unit-peak") {
      d = {2.0 / ((1.0 + v) * (1.0 + v)), -2.0 / ((1.0 + v) * (1.0 + v))};
    } else {
      d = {1.0, -0.5};
    }
    std::array<std::array<double, 2>, 2> cov{};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) cov[i][j] = d[i] * d[j] * sigma * sigma;
    }
    return cov;
  }
};

struct FringeCommand {
  StateFlags state;
  GridFlags grid;
  ModelFlags model;

  int run(const std::string& format) const {
    const auto input = state.make();
    const auto outcome = state.pattern();
    const auto fringe = model.make(input, outcome);
    const auto phis = phase_grid_deg(grid.start, grid.end, grid.step);
    const auto values = fringelab::parallel_map<double>(
        phis.size(), [&](std::size_t i) { return fringe.probability(fringelab::to_radians(phis[i])); });
    Table table{{"phi_deg", "probability"}, {}, {}};
    for (std::size_t i = 0; i < phis.size(); ++i) table.rows.push_back({phis[i], values[i]});
    write_table(std::cout, table, format);
    return 0;
  }
};

struct FisherCommand {
  StateFlags state;
  GridFlags grid{0.0, 90.0, 0.5};
  ModelFlags model;
  std::string mode = "single";
  bool band = false;
  double visibility_sigma = 0.02;

  int run(const std::string& format) const {
    const auto input = state.make();
    const bool full = mode == "full";
    if (full && model.visibility) throw std::invalid_argument("--visibility applies to --mode single only");
    if (band && !model.visibility) throw std::invalid_argument("--band needs --visibility");
    if (!(visibility_sigma >= 0.0)) throw std::invalid_argument("--visibility-sigma must be non-negative");
    const auto phis = phase_grid_deg(grid.start, grid.end, grid.step);

    std::function<fringelab::FisherWithError(double)> evaluate;
    std::optional<fringelab::FringeModel> fringe;
    if (full) {
      evaluate = [&](double phi) { return fringelab::FisherWithError{fringelab::full_fisher(input, phi), 0.0}; };
    } else {
      fringe = model.make(input, state.pattern());
      const auto cov = band ? model.covariance(visibility_sigma) : std::array<std::array<double, 2>, 2>{};
      evaluate = [&, cov](double phi) {
        if (!band) return fringelab::FisherWithError{fringelab::single_fringe_fisher_model(*fringe, phi), 0.0};
        return fringelab::single_fringe_fisher_model(*fringe, phi, cov);
      };
    }
    const auto values = fringelab::parallel_map<fringelab::FisherWithError>(
        phis.size(), [&](std::size_t i) { return evaluate(fringelab::to_radians(phis[i])); });

    Table table;
    table.columns = {"phi_deg", "fisher"};
    if (band) table.columns.emplace_back("sigma");
    for (std::size_t i = 0; i < phis.size(); ++i) {
      std::vector<std::optional<double>> row{phis[i], values[i].value};
      if (band) row.emplace_back(values[i].sigma);
      table.rows.push_back(std::move(row));
    }

    const auto peak = fringelab::find_fringe_peak([&](double phi) { return evaluate(phi).value; });
    const double peak_deg = fringelab::to_degrees(peak.phi);
    Json peak_json;
    peak_json["phi_deg"] = json_number(peak_deg);
    peak_json["fisher"] = json_number(peak.value);
    if (band) peak_json["sigma"] = json_number(evaluate(peak.phi).sigma);
    if (format == "json") {
      table.extra["peak"] = peak_json;
    } else {
      std::cerr << "peak phi_deg=" << format_number(peak_deg) << " fisher=" << format_number(peak.value);
      if (band) std::cerr << " sigma=" << format_number(evaluate(peak.phi).sigma);
      std::cerr << '\n';
    }
    write_table(std::cout, table, format);
    return 0;
  }
};

struct ScalingCommand {
  int n_max = 40;
  bool asymptotic = false;

  int run(const std::string& format) const {
    const auto rows = fringelab::scaling_table(n_max, asymptotic);
    Table table{{"n", "snl", "noon_single", "hb_single"}, {}, {}};
    if (asymptotic) table.columns.emplace_back("noon_asymptotic");
    for (const auto& r : rows) {
      std::vector<std::optional<double>> row{static_cast<double>(r.photons), r.shot_noise, r.noon_single, r.hb_single};
      if (asymptotic) row.emplace_back(r.noon_asymptote);
      table.rows.push_back(std::move(row));
    }
    write_table(std::cout, table, format);
    return 0;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct SimulateCommand {
  std::string plan_path;
  std::string out_path;
  std::string config_path;

  int run(const std::string& format) const {
    Json plan_json;
    try {
      plan_json = Json::parse(read_file(plan_path));
    } catch (const Json::exception& e) {
      throw std::invalid_argument(std::string("bad plan file: ") + e.what());
    }
    fringelab::ExperimentPlan plan;
    try {
      plan = fringelab::io::plan_from_json(plan_json);
    } catch (const Json::exception& e) {
      throw std::invalid_argument(std::string("bad plan file: ") + e.what());
    }
    if (!config_path.empty()) plan.detectors = fringelab::load_detector_config(config_path);
    const fringelab::io::CountFile file{fringelab::simulate_counts(plan), plan.seed};

    std::ofstream out_file;
    if (!out_path.empty()) {
      out_file.open(out_path);
      if (!out_file) throw std::runtime_error("cannot write " + out_path);
    }
    std::ostream& out = out_path.empty() ? std::cout : out_file;
    if (format == "json") {
      out << fringelab::io::counts_to_json(file).dump(2) << '\n';
    } else {
      fringelab::io::write_counts_csv(out, file);
    }
    return 0;
  }
};

struct EstimateCommand {
  std::string counts_path;
  std::string outcome;
  std::string method;
  std::string state = "hb";
  std::string window = "9:30";
  std::string interval;
  std::string fit_model = "affine";
  std::string likelihood = "single";
  std::optional<double> at_deg;
  std::optional<double> visibility;

  int run(const std::string& format) const {
    std::ifstream in(counts_path);
    if (!in) throw std::runtime_error("cannot open " + counts_path);
    fringelab::io::CountFile file;
    try {
      file = fringelab::io::read_counts(in);
    } catch (const Json::exception& e) {
      throw std::invalid_argument(std::string("bad counts file: ") + e.what());
    }
    if (file.records.empty()) throw std::invalid_argument("counts file holds no records");
    int photons = -1;
    for (const auto& r : file.records) {
      for (const auto& [pattern, c] : r.outcome_counts) {
        if (photons < 0) photons = pattern.total();
        if (pattern.total() != photons) throw fringelab::PhysicsError("counts file mixes photon numbers");
      }
    }
    if (photons < 1) throw std::invalid_argument("counts file holds no outcome patterns");
    const auto input = fringelab::make_benchmark_state(fringelab::parse_state_kind(state), photons);
    const fringelab::OutcomePattern pattern =
        outcome.empty() ? fringelab::OutcomePattern{photons - photons / 2, photons / 2} : fringelab::parse_outcome(outcome);
    fringelab::check_outcome(input, pattern);

    long long shots = 0;
    for (const auto& r : file.records) shots += r.shots;

    Report report{{"method", method}, {"outcome", fringelab::to_string(pattern)}};
    if (method == "fit") {
      run_fit(file, input, pattern, report);
    } else if (method == "direct") {
      run_direct(file, pattern, report, shots);
    } else {
      run_mle(file, input, pattern, report, shots);
    }
    report.emplace_back("seed", file.seed);
    write_report(std::cout, report, format);
    return 0;
  }

 private:
  void run_fit(const fringelab::io::CountFile& file, const fringelab::TwoModeState& input,
               const fringelab::OutcomePattern& pattern, Report& report) const {
    const auto kind = fringelab::parse_model_kind(fit_model);
    const auto fit = fringelab::fit_fringe(file.records, input, pattern, kind);
    const bool affine = kind == fringelab::ModelKind::affine;
    double lo = 1e300;
    double hi = -1e300;
    long long shots = 0;
    for (const auto& r : file.records) {
      lo = std::min(lo, fringelab::to_degrees(r.phi));
      hi = std::max(hi, fringelab::to_degrees(r.phi));
      shots += r.shots;
    }
    // The Fisher peak of a fit outside the physical region is meaningless.
    const double nan = std::numeric_limits<double>::quiet_NaN();
    fringelab::Peak peak{nan, nan};
    fringelab::FisherWithError at_peak{nan, nan};
    if (fit.physical) {
      peak = fringelab::find_fringe_peak(
          [&](double phi) { return fringelab::single_fringe_fisher_model(fit.model, phi); });
      at_peak = fringelab::single_fringe_fisher_model(fit.model, peak.phi, fit.covariance);
    }
    report.emplace_back("model", fit_model);
    report.emplace_back("estimate", fit.visibility);
    report.emplace_back("stderr", fit.visibility_sigma);
    report.emplace_back("window_lo_deg", lo);
    report.emplace_back("window_hi_deg", hi);
    report.emplace_back("shots", shots);
    report.emplace_back(affine ? "a" : "q", fit.parameters[0]);
    report.emplace_back(affine ? "a_sigma" : "q_sigma", fit.sigmas[0]);
    report.emplace_back(affine ? "b" : "v", fit.parameters[1]);
    report.emplace_back(affine ? "b_sigma" : "v_sigma", fit.sigmas[1]);
    report.emplace_back("chi_squared", fit.chi_squared);
    report.emplace_back("dof", static_cast<long long>(fit.degrees_of_freedom));
    report.emplace_back("physical", fit.physical);
    report.emplace_back("peak_phi_deg", fringelab::to_degrees(peak.phi));
    report.emplace_back("peak_fisher", at_peak.value);
    report.emplace_back("peak_fisher_sigma", at_peak.sigma);
  }

  void run_direct(const fringelab::io::CountFile& file, const fringelab::OutcomePattern& pattern, Report& report,
                  long long) const {
    const auto [lo, hi] = parse_range(window, "--window");
    const auto est = fringelab::direct_fisher_from_data(file.records, pattern, fringelab::to_radians(lo),
                                                        fringelab::to_radians(hi));
    long long shots = 0;
    for (const auto& r : file.records) {
      const double deg = fringelab::to_degrees(r.phi);
      if (deg >= lo - 1e-9 && deg <= hi + 1e-9) shots += r.shots;
    }
    report.emplace_back("estimate", est.fisher);
    report.emplace_back("stderr", est.sigma);
    report.emplace_back("window_lo_deg", lo);
    report.emplace_back("window_hi_deg", hi);
    report.emplace_back("shots", shots);
    report.emplace_back("phi_mid_deg", fringelab::to_degrees(est.phi_mid));
    report.emplace_back("probability", est.probability);
    report.emplace_back("slope", est.slope);
    report.emplace_back("points", static_cast<long long>(est.points));
    report.emplace_back("low_confidence", est.low_confidence);
  }

  void run_mle(const fringelab::io::CountFile& file, const fringelab::TwoModeState& input,
               const fringelab::OutcomePattern& pattern, Report& report, long long) const {
    if (interval.empty()) throw std::invalid_argument("--method mle needs --interval lo:hi (degrees)");
    const auto [lo, hi] = parse_range(interval, "--interval");
    std::set<double> phases;
    for (const auto& r : file.records) phases.insert(fringelab::to_degrees(r.phi));
    double chosen = 0.0;
    if (at_deg) {
      chosen = *at_deg;
    } else if (phases.size() == 1) {
      chosen = *phases.begin();
    } else {
      throw std::invalid_argument("counts file holds several phases; pick one with --at");
    }
    std::vector<fringelab::CountRecord> selected;
    for (const auto& r : file.records) {
      if (std::abs(fringelab::to_degrees(r.phi) - chosen) < 1e-9) selected.push_back(r);
    }
    if (selected.empty()) throw std::invalid_argument("no records at the requested phase");
    long long shots = 0;
    for (const auto& r : selected) shots += r.shots;

    const fringelab::PhaseInterval cell{fringelab::to_radians(lo), fringelab::to_radians(hi)};
    fringelab::PhaseEstimate est;
    if (likelihood == "full") {
      if (visibility) throw std::invalid_argument("--visibility applies to --likelihood single only");
      est = fringelab::mle_phase(selected, input, cell);
    } else {
      const auto model = visibility ? fringelab::FringeModel::affine_midpoint(input, pattern, *visibility)
                                    : fringelab::FringeModel::ideal(input, pattern);
      est = fringelab::mle_phase(selected, model, cell);
    }
    report.emplace_back("estimate", fringelab::to_degrees(est.phi));
    report.emplace_back("stderr", fringelab::to_degrees(est.standard_error));
    report.emplace_back("window_lo_deg", lo);
    report.emplace_back("window_hi_deg", hi);
    report.emplace_back("shots", shots);
    report.emplace_back("likelihood", likelihood);
    report.emplace_back("log_likelihood", est.log_likelihood);
    report.emplace_back("at_boundary", est.at_boundary);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-fringe phase sensitivity of multi-photon interferometers"};
  app.require_subcommand(1);
  std::string format = "csv";
  auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };

  FringeCommand fringe;
  auto* fringe_cmd = app.add_subcommand("fringe", "Fringe probability over a phase grid");
  add_format(fringe_cmd);
  fringe.state.add(fringe_cmd);
  fringe.grid.add(fringe_cmd);
  fringe.model.add(fringe_cmd);

  FisherCommand fisher;
  auto* fisher_cmd = app.add_subcommand("fisher", "Fisher information over a phase grid, with its peak");
  add_format(fisher_cmd);
  fisher.state.add(fisher_cmd);
  fisher.grid.add(fisher_cmd);
  fisher.model.add(fisher_cmd);
  fisher_cmd->add_option("--mode", fisher.mode, "single fringe or full counting")
      ->check(CLI::IsMember({"single", "full"}));
  fisher_cmd->add_flag("--band", fisher.band, "Add a 1-sigma column from the visibility uncertainty");
  fisher_cmd->add_option("--visibility-sigma", fisher.visibility_sigma, "1-sigma visibility uncertainty for --band");

  ScalingCommand scaling;
  auto* scaling_cmd = app.add_subcommand("scaling", "Best single-fringe Fisher information against N");
  add_format(scaling_cmd);
  scaling_cmd->add_option("--n-max", scaling.n_max, "Largest N")->check(CLI::Range(1, fringelab::kMaxPhotons));
  scaling_cmd->add_flag("--asymptotic", scaling.asymptotic, "Add the large-N NOON column");

  SimulateCommand simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo photon counts from a JSON plan");
  add_format(simulate_cmd);
  simulate_cmd->add_option("--plan", simulate.plan_path, "Plan file (JSON)")->required();
  simulate_cmd->add_option("--out", simulate.out_path, "Output file (default: stdout)");
  simulate_cmd->add_option("--config", simulate.config_path, "Config file with a detectors block");

  EstimateCommand estimate;
  auto* estimate_cmd = app.add_subcommand("estimate", "Fit, direct Fisher estimate or MLE phase from counts");
  add_format(estimate_cmd);
  estimate_cmd->add_option("--counts", estimate.counts_path, "Count file (CSV or JSON)")->required();
  estimate_cmd->add_option("--outcome", estimate.outcome, "Outcome n1:n2 (default: balanced)");
  estimate_cmd->add_option("--method", estimate.method, "Estimator")
      ->required()
      ->check(CLI::IsMember({"fit", "direct", "mle"}));
  estimate_cmd->add_option("--state", estimate.state, "Input state")->check(CLI::IsMember({"hb", "noon", "snl"}));
  estimate_cmd->add_option("--window", estimate.window, "Direct-estimate window lo:hi in degrees");
  estimate_cmd->add_option("--interval", estimate.interval, "MLE search interval lo:hi in degrees");
  estimate_cmd->add_option("--at", estimate.at_deg, "MLE: use the records at this phase (degrees)");
  estimate_cmd->add_option("--model", estimate.fit_model, "Fit model")->check(CLI::IsMember({"affine", "noon-cosine"}));
  estimate_cmd->add_option("--likelihood", estimate.likelihood, "MLE likelihood")
      ->check(CLI::IsMember({"single", "full"}));
  estimate_cmd->add_option("--visibility", estimate.visibility, "MLE: affine midpoint model of this visibility")
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*fringe_cmd) return fringe.run(format);
    if (*fisher_cmd) return fisher.run(format);
    if (*scaling_cmd) return scaling.run(format);
    if (*simulate_cmd) return simulate.run(format);
    if (*estimate_cmd) return estimate.run(format);
  } catch (const fringelab::PhysicsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
