// nc/bench.h

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef NC_BENCH_H_
#define NC_BENCH_H_

#include <string>
#include <vector>

#include "nc/decoder.h"

namespace nc {

// One (mode, beam, batch size) measurement. Counter totals are a
// deterministic function of data, models, and config, so they are identical
// across trials and batch sizes; wall-clock is what varies.
struct BenchCell {
  Mode mode = Mode::kDirect;
  int32_t k1 = 5;
  int32_t k2 = 3;
  int32_t batch_size = 1;
  bool skipped = false;  // score-buffer estimate exceeded the memory budget
  uint64_t estimated_bytes = 0;
  std::vector<double> trial_seconds;
  double mean_seconds = 0.0;
  CostCounters counters;
  bool fastest = false;  // fastest batch size for this (mode, k1)
};

struct BenchOptions {
  std::vector<Mode> modes{Mode::kDirect, Mode::kNaiveNc, Mode::kFastNc};
  std::vector<int32_t> beams{5, 10, 25, 50};
  std::vector<int32_t> batch_sizes{1, 10, 25, 50, 75, 100, 125, 150, 200, 300};
  int32_t trials = 3;
  uint64_t mem_budget_bytes = 4ull << 30;
  int32_t workers = 1;
};

struct BenchReport {
  BenchOptions options;
  std::vector<BenchCell> cells;
};

// Times decoding of `data` over the full (mode, beam, batch size) grid,
// `trials` runs per cell on a monotonic clock around the decode calls only.
// Cells whose k1 * k2 * S * |support| * batch score buffer would exceed the
// memory budget are reported as skipped rather than run. The fastest
// non-skipped batch size is marked per (mode, beam).
BenchReport bench(const std::vector<TokenIds>& data, const Models& models,
                  const CombinationWeights& weights,
                  const DecodeConfig& base_config, const BenchOptions& options);

// TSV rows: mode, k1, k2, batch_size, trial, seconds, direct_evals,
// lm_evals, channel_evals, channel_calls.
std::string bench_tsv(const BenchReport& report);

std::string bench_json(const BenchReport& report);

}  // namespace nc

#endif  // NC_BENCH_H_
