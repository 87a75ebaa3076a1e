// SPDX-License-Identifier: Apache-2.0
//
// noma-sim - downlink mmWave-NOMA user clustering and rate simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "noma/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace noma {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

long long require_integer(const json& value, const std::string& field) {
  if (!value.is_number_integer() && !value.is_number_unsigned()) {
    throw std::invalid_argument(field + ": expected an integer");
  }
  return value.get<long long>();
}

int require_int(const json& value, const std::string& field) {
  const long long v = require_integer(value, field);
  if (v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    throw std::invalid_argument(field + ": out of range");
  }
  return static_cast<int>(v);
}

double require_number(const json& value, const std::string& field) {
  if (!value.is_number()) {
    throw std::invalid_argument(field + ": expected a number");
  }
  return value.get<double>();
}

std::string require_string(const json& value, const std::string& field) {
  if (!value.is_string()) {
    throw std::invalid_argument(field + ": expected a string");
  }
  return value.get<std::string>();
}

void parse_sweep(const json& value, ExperimentFile& file) {
  if (!value.is_object()) {
    throw std::invalid_argument("sweep: expected an object");
  }
  for (const auto& [key, item] : value.items()) {
    if (key == "axis") {
      try {
        file.sweep_axis = parse_sweep_axis(require_string(item, "sweep.axis"));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("sweep.axis: ") + e.what());
      }
    } else if (key == "values") {
      if (!item.is_array()) {
        throw std::invalid_argument("sweep.values: expected an array");
      }
      for (const auto& v : item) {
        file.sweep_values.push_back(require_integer(v, "sweep.values"));
      }
    } else {
      throw std::invalid_argument("unknown key 'sweep." + key + "'");
    }
  }
  if (file.sweep_axis == SweepAxis::none) {
    if (!file.sweep_values.empty()) {
      throw std::invalid_argument(
          "sweep.values: must be empty when sweep.axis is none");
    }
  } else if (file.sweep_values.empty()) {
    throw std::invalid_argument("sweep.values: must be non-empty");
  }
}

} // namespace

ExperimentFile parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("malformed config: top level must be an "
                                "object");
  }

  ExperimentFile file;
  for (const auto& [key, value] : doc.items()) {
    if (key == "users") {
      file.scenario.num_users = require_int(value, key);
    } else if (key == "beams") {
      file.scenario.num_divisions = require_int(value, key);
    } else if (key == "antennas") {
      file.scenario.num_antennas = require_int(value, key);
    } else if (key == "beams_per_user") {
      file.scenario.beams_per_user = require_int(value, key);
    } else if (key == "d_max") {
      file.scenario.d_max = require_int(value, key);
    } else if (key == "capability_mode") {
      const std::string mode = require_string(value, key);
      if (mode == "homogeneous") {
        file.scenario.capability_mode = CapabilityMode::homogeneous;
      } else if (mode == "uniform-random") {
        file.scenario.capability_mode = CapabilityMode::uniform_random;
      } else {
        throw std::invalid_argument(
            "capability_mode: expected 'homogeneous' or 'uniform-random'");
      }
    } else if (key == "radius_m") {
      file.scenario.radius = require_number(value, key);
    } else if (key == "num_paths") {
      file.scenario.channel.num_paths = require_int(value, key);
    } else if (key == "pathloss_exponent") {
      file.scenario.channel.pathloss_exponent = require_number(value, key);
    } else if (key == "spacing_ratio") {
      file.scenario.spacing_ratio = require_number(value, key);
    } else if (key == "power_w") {
      file.scenario.power = require_number(value, key);
    } else if (key == "noise_w") {
      file.scenario.noise = require_number(value, key);
    } else if (key == "qos_sinr") {
      file.scenario.qos_sinr = require_number(value, key);
    } else if (key == "seed") {
      const long long v = require_integer(value, key);
      if (v < 0) throw std::invalid_argument("seed: must be >= 0");
      file.scenario.seed = static_cast<std::uint64_t>(v);
    } else if (key == "trials") {
      file.trials = require_int(value, key);
    } else if (key == "algorithms") {
      if (!value.is_array() || value.empty()) {
        throw std::invalid_argument("algorithms: expected a non-empty array");
      }
      file.algorithms.clear();
      for (const auto& item : value) {
        try {
          file.algorithms.push_back(
              parse_algorithm(require_string(item, "algorithms")));
        } catch (const std::invalid_argument& e) {
          throw std::invalid_argument(std::string("algorithms: ") + e.what());
        }
      }
    } else if (key == "sweep") {
      parse_sweep(value, file);
    } else if (key == "output") {
      file.output = require_string(value, key);
      if (file.output.empty()) {
        throw std::invalid_argument("output: must be non-empty");
      }
    } else {
      throw std::invalid_argument("unknown key '" + key + "'");
    }
  }

  validate(file.scenario);
  if (file.trials < 1) throw std::invalid_argument("trials: must be >= 1");
  // Dry-run every sweep point so range errors surface at parse time.
  for (long long v : file.sweep_values) {
    try {
      apply_sweep(file.scenario, file.sweep_axis, v);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("sweep.values: value " + std::to_string(v) +
                                  " rejected: " + e.what());
    }
  }
  return file;
}

ExperimentFile parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string serialize_config(const ExperimentFile& file) {
  ordered_json doc;
  doc["users"] = file.scenario.num_users;
  doc["beams"] = file.scenario.num_divisions;
  doc["antennas"] = file.scenario.num_antennas;
  doc["beams_per_user"] = file.scenario.beams_per_user;
  doc["d_max"] = file.scenario.d_max;
  doc["capability_mode"] =
      file.scenario.capability_mode == CapabilityMode::homogeneous
          ? "homogeneous"
          : "uniform-random";
  doc["radius_m"] = file.scenario.radius;
  doc["num_paths"] = file.scenario.channel.num_paths;
  doc["pathloss_exponent"] = file.scenario.channel.pathloss_exponent;
  doc["spacing_ratio"] = file.scenario.spacing_ratio;
  doc["power_w"] = file.scenario.power;
  doc["noise_w"] = file.scenario.noise;
  doc["qos_sinr"] = file.scenario.qos_sinr;
  doc["seed"] = file.scenario.seed;
  doc["trials"] = file.trials;
  ordered_json algs = ordered_json::array();
  for (const auto& spec : file.algorithms) algs.push_back(algorithm_name(spec));
  doc["algorithms"] = algs;
  if (file.sweep_axis != SweepAxis::none) {
    ordered_json sweep;
    sweep["axis"] = std::string(sweep_axis_name(file.sweep_axis));
    sweep["values"] = file.sweep_values;
    doc["sweep"] = sweep;
  }
  doc["output"] = file.output;
  return doc.dump(2) + "\n";
}

std::string format_csv_row(const AggregateRow& row) {
  char buf[512];
  std::snprintf(
      buf, sizeof buf,
      "%s,%lld,%s,%d,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%.8e,%lld,%.8e",
      std::string(sweep_axis_name(row.axis)).c_str(), row.sweep_value,
      algorithm_name(row.algorithm).c_str(), row.trials, row.k_mean, row.k_se,
      row.rsum_mean, row.rsum_se, row.roma_mean, row.i1_mean, row.i2_mean,
      row.infeasible_total, row.seconds);
  return buf;
}

void run_experiment(const ExperimentFile& file, int threads) {
  const std::vector<AggregateRow> rows =
      monte_carlo(file.scenario, file.trials, file.algorithms, file.sweep_axis,
                  file.sweep_values, threads);

  const std::filesystem::path target(file.output);
  const std::filesystem::path tmp(file.output + ".tmp");
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) {
        throw std::runtime_error("cannot write output file '" + tmp.string() +
                                 "'");
      }
      out << kCsvHeader << '\n';
      for (const auto& row : rows) out << format_csv_row(row) << '\n';
      out.flush();
      if (!out) {
        throw std::runtime_error("failed writing output file '" +
                                 tmp.string() + "'");
      }
    }
    std::filesystem::rename(tmp, target);
  } catch (...) {
    std::error_code ignore;
    std::filesystem::remove(tmp, ignore);
    throw;
  }
}

} // namespace noma
