// Copyright 2026 The arms-bench Authors
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

#ifndef ARMS_BENCH_HPP
#define ARMS_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace arms {

/// One experiment run of the bench harness. Parsed from JSON so the CLI
/// (and the C API) can hand over a single config blob.
struct BenchConfig {
  std::string experiment;  // toy | corr-curves | variance-grid |
                           // unbiasedness | msb-compare
  std::vector<std::string> estimators;
  std::vector<int> n_list;
  std::uint64_t seed = 1;
  int steps = 30000;
  double learning_rate = 0.7;
  long mc_replicates = 1000;
  int probe_every = 50;
  std::string output_path;
  std::string format = "csv";  // csv | json
  std::string model_path;      // msb-compare only; empty = built-in model

  static BenchConfig from_json(const std::string& text);
  void validate() const;
};

/// Runs the configured experiment and writes its output file. Returns 0 on
/// success; nonzero when any unbiasedness case fails or on I/O errors.
int run_bench(const BenchConfig& config);

}  // namespace arms

#endif  // ARMS_BENCH_HPP
