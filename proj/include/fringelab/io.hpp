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

// Text formats shared by the command-line tool.
//
// CSV conventions: comma separated, '.' decimal point, 12 significant
// digits, one mandatory header row. Angles are written in degrees.
//
// Count records:
//   phi_deg,shots,seed,counts
//   15,10000,42,0:6=10;1:5=0;2:4=1602;3:3=6471;4:2=1655;5:1=0;6:0=262
//
// JSON mirror:
//   {"seed": 42, "records": [{"phi_deg": 15, "shots": 10000,
//                             "counts": {"0:6": 10, ...}}]}

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fringelab/detection.hpp"
#include "fringelab/estimation.hpp"
#include "fringelab/fisher.hpp"
#include "fringelab/fringes.hpp"
#include "fringelab/peak_search.hpp"
#include "fringelab/states.hpp"

namespace fringelab::io {

using Json = nlohmann::ordered_json;

inline std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

/// Value as written to CSV, re-read as a double. JSON output uses these
/// rounded values so both formats carry identical numbers.
inline double rounded(double value) { return std::stod(format_number(value)); }

inline Json json_number(double value) {
  if (!std::isfinite(value)) return Json(format_number(value));
  return Json(rounded(value));
}

struct CountFile {
  std::vector<CountRecord> records;
  std::uint64_t seed = 0;
};

inline std::string encode_counts(const CountRecord& record) {
  std::string out;
  for (const auto& [pattern, n] : record.outcome_counts) {
    if (!out.empty()) out += ';';
    out += to_string(pattern) + "=" + std::to_string(n);
  }
  return out;
}

inline void write_counts_csv(std::ostream& out, const CountFile& file) {
  out << "phi_deg,shots,seed,counts\n";
  for (const auto& r : file.records) {
    out << format_number(to_degrees(r.phi)) << ',' << r.shots << ',' << file.seed << ',' << encode_counts(r) << '\n';
  }
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

inline long long parse_count(const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad count '" + text + "'");
  }
  if (used != text.size() || v < 0) throw std::invalid_argument("bad count '" + text + "'");
  return v;
}

inline double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("bad number '" + text + "'");
  return v;
}

inline CountFile read_counts_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty count file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "phi_deg,shots,seed,counts") throw std::invalid_argument("unexpected count file header '" + line + "'");
  CountFile file;
  bool have_seed = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 4) throw std::invalid_argument("count row needs 4 columns: '" + line + "'");
    CountRecord r;
    r.phi = to_radians(parse_double(cols[0]));
    r.shots = parse_count(cols[1]);
    const auto seed = static_cast<std::uint64_t>(std::stoull(cols[2]));
    if (have_seed && seed != file.seed) throw std::invalid_argument("count file mixes seeds");
    file.seed = seed;
    have_seed = true;
    if (!cols[3].empty()) {
      for (const auto& entry : split(cols[3], ';')) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad counts entry '" + entry + "'");
        r.outcome_counts[parse_outcome(entry.substr(0, eq))] = parse_count(entry.substr(eq + 1));
      }
    }
    if (r.total_counts() > r.shots) throw std::invalid_argument("record counts exceed its shots");
    file.records.push_back(std::move(r));
  }
  return file;
}

inline Json counts_to_json(const CountFile& file) {
  Json j;
  j["seed"] = file.seed;
  j["records"] = Json::array();
  for (const auto& r : file.records) {
    Json rec;
    rec["phi_deg"] = json_number(to_degrees(r.phi));
    rec["shots"] = r.shots;
    Json counts = Json::object();
    for (const auto& [pattern, n] : r.outcome_counts) counts[to_string(pattern)] = n;
    rec["counts"] = counts;
    j["records"].push_back(rec);
  }
  return j;
}

inline CountFile counts_from_json(const Json& j) {
  CountFile file;
  file.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& rec : j.at("records")) {
    CountRecord r;
    r.phi = to_radians(rec.at("phi_deg").get<double>());
    r.shots = rec.at("shots").get<long long>();
    for (const auto& [key, value] : rec.at("counts").items()) r.outcome_counts[parse_outcome(key)] = value.get<long long>();
    if (r.total_counts() > r.shots) throw std::invalid_argument("record counts exceed its shots");
    file.records.push_back(std::move(r));
  }
  return file;
}

/// Reads either format, picking JSON when the first non-blank character is '{'.
inline CountFile read_counts(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::istringstream again(text);
  if (first != std::string::npos && text[first] == '{') return counts_from_json(Json::parse(text));
  return read_counts_csv(again);
}

/// Experiment plan in JSON:
///   {"state": "hb", "n": 6, "shots": 10000, "seed": 42,
///    "phases_deg": [0, 15, 30]            -- or phi_start/phi_end/phi_step in degrees
///    "detectors": {"k": 5, "eta": 1.0}}   -- optional
inline ExperimentPlan plan_from_json(const Json& j) {
  ExperimentPlan plan;
  plan.state = parse_state_kind(j.value("state", std::string("hb")));
  plan.photons = j.value("n", 6);
  plan.shots = j.at("shots").get<long long>();
  plan.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("phases_deg")) {
    for (const auto& v : j.at("phases_deg")) plan.phases.push_back(to_radians(v.get<double>()));
  } else {
    const double start = j.at("phi_start").get<double>();
    const double end = j.at("phi_end").get<double>();
    const double step = j.at("phi_step").get<double>();
    if (!(step > 0.0) || end < start) throw std::invalid_argument("plan phase grid needs step > 0 and end >= start");
    const auto count = static_cast<long>(std::floor((end - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) plan.phases.push_back(to_radians(start + static_cast<double>(i) * step));
  }
  if (j.contains("detectors")) {
    DetectorArrayConfig det;
    det.detectors_per_port = j.at("detectors").value("k", det.detectors_per_port);
    det.efficiency = j.at("detectors").value("eta", det.efficiency);
    plan.detectors = det;
  }
  plan.validate();
  return plan;
}

}  // namespace fringelab::io
