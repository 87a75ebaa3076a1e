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

#ifndef NOMA_EXPERIMENT_HPP
#define NOMA_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "noma/harness.hpp"

namespace noma {

/// A complete experiment description: scenario, trial count, algorithms,
/// optional sweep, and the CSV destination.
struct ExperimentFile {
  ScenarioConfig scenario;
  int trials = 100;
  std::vector<AlgorithmSpec> algorithms{AlgorithmSpec{}};
  SweepAxis sweep_axis = SweepAxis::none;
  std::vector<long long> sweep_values;
  std::string output = "results.csv";

  bool operator==(const ExperimentFile&) const = default;
};

inline constexpr std::string_view kCsvHeader =
    "sweep_axis,sweep_value,algorithm,trials,K_mean,K_se,Rsum_mean,Rsum_se,"
    "Roma_mean,I1_mean,I2_mean,infeasible_total,seconds";

/// Parse a JSON experiment document. Omitted fields keep their defaults;
/// unknown keys, malformed values and out-of-range values raise
/// std::invalid_argument with the offending field named.
ExperimentFile parse_config_text(const std::string& text);

/// parse_config_text over the contents of `path`. Throws std::runtime_error
/// if the file cannot be read.
ExperimentFile parse_config(const std::string& path);

/// JSON document such that parse_config_text(serialize_config(f)) == f.
std::string serialize_config(const ExperimentFile& file);

/// One CSV line (no newline): statistics in scientific notation with nine
/// significant digits, counts as plain integers.
std::string format_csv_row(const AggregateRow& row);

/// Run the experiment and write the CSV atomically (temp file + rename).
/// Throws on any failure; no partial output file is left behind.
void run_experiment(const ExperimentFile& file, int threads = 0);

} // namespace noma

#endif
