// nc/bench.cc

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

#include "nc/bench.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nc/util.h"

namespace nc {

namespace {

// Score-buffer footprint of one batch under the cost model: the channel
// materializes k1 * k2 * S * |support| probabilities per batch element, the
// direct model and LM k1 * |V| each.
uint64_t estimate_bytes(Mode mode, int32_t k1, int32_t k2, int32_t batch,
                        int32_t max_source_len, int32_t support,
                        int32_t target_vocab) {
  uint64_t per_sentence =
      static_cast<uint64_t>(k1) * static_cast<uint64_t>(target_vocab);
  if (mode_uses_lm(mode)) per_sentence *= 2;
  if (mode_uses_channel(mode)) {
    per_sentence += static_cast<uint64_t>(k1) * static_cast<uint64_t>(k2) *
                    static_cast<uint64_t>(max_source_len) *
                    static_cast<uint64_t>(support);
  }
  return per_sentence * static_cast<uint64_t>(batch) * sizeof(double);
}

}  // namespace

BenchReport bench(const std::vector<TokenIds>& data, const Models& models,
                  const CombinationWeights& weights,
                  const DecodeConfig& base_config, const BenchOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (data.empty()) throw std::invalid_argument("empty corpus");

  int32_t max_source_len = 0;
  for (const TokenIds& x : data) {
    max_source_len = std::max(max_source_len, static_cast<int32_t>(x.size()));
  }
  const int32_t target_vocab = models.direct->target_vocab().size();

  BenchReport report;
  report.options = options;

  for (Mode mode : options.modes) {
    // Support size under this mode: the full source vocabulary, or the
    // largest per-sentence reduced vocabulary for fast-nc.
    int32_t support = 0;
    if (mode_uses_channel(mode)) {
      support = models.channel->source_vocab().size();
      if (mode == Mode::kFastNc && !base_config.full_vocab) {
        int32_t max_reduced = 0;
        for (const TokenIds& x : data) {
          ReducedVocab r = build_reduced_vocab({x}, models.channel->source_vocab(),
                                               base_config.top_f);
          max_reduced = std::max(max_reduced, r.size());
        }
        support = max_reduced;
      }
    }

    for (int32_t k1 : options.beams) {
      for (int32_t batch : options.batch_sizes) {
        BenchCell cell;
        cell.mode = mode;
        cell.k1 = k1;
        cell.k2 = base_config.k2;
        cell.batch_size = batch;
        cell.estimated_bytes = estimate_bytes(mode, k1, base_config.k2, batch,
                                              max_source_len, support,
                                              target_vocab);
        if (cell.estimated_bytes > options.mem_budget_bytes) {
          cell.skipped = true;
          report.cells.push_back(cell);
          continue;
        }

        DecodeConfig config = base_config;
        config.mode = mode;
        config.k1 = k1;

        for (int32_t trial = 0; trial < options.trials; ++trial) {
          CostCounters totals;
          const double start = monotonic_seconds();
          for (size_t begin = 0; begin < data.size();
               begin += static_cast<size_t>(batch)) {
            const size_t end =
                std::min(data.size(), begin + static_cast<size_t>(batch));
            std::vector<TokenIds> chunk(data.begin() + static_cast<ptrdiff_t>(begin),
                                        data.begin() + static_cast<ptrdiff_t>(end));
            for (const DecodeResult& r :
                 decode_batch(chunk, models, weights, config, options.workers)) {
              totals.merge(r.counters);
            }
          }
          cell.trial_seconds.push_back(monotonic_seconds() - start);
          cell.counters = totals;
        }
        double sum = 0.0;
        for (double sec : cell.trial_seconds) sum += sec;
        cell.mean_seconds = sum / static_cast<double>(cell.trial_seconds.size());
        report.cells.push_back(cell);
      }
    }
  }

  // Mark the fastest batch size per (mode, beam); ties go to the smaller
  // batch, which comes first in the grid.
  std::map<std::pair<int32_t, int32_t>, BenchCell*> fastest;
  for (BenchCell& cell : report.cells) {
    if (cell.skipped) continue;
    const std::pair<int32_t, int32_t> key{static_cast<int32_t>(cell.mode), cell.k1};
    auto it = fastest.find(key);
    if (it == fastest.end() || cell.mean_seconds < it->second->mean_seconds) {
      fastest[key] = &cell;
    }
  }
  for (auto& [key, cell] : fastest) cell->fastest = true;
  return report;
}

std::string bench_tsv(const BenchReport& report) {
  std::ostringstream out;
  out << "mode\tk1\tk2\tbatch_size\ttrial\tseconds\tdirect_evals\tlm_evals"
      << "\tchannel_evals\tchannel_calls\n";
  out.precision(9);
  out << std::fixed;
  for (const BenchCell& cell : report.cells) {
    if (cell.skipped) {
      out << mode_name(cell.mode) << '\t' << cell.k1 << '\t' << cell.k2 << '\t'
          << cell.batch_size << '\t' << "skipped" << "\t\t\t\t\t\n";
      continue;
    }
    for (size_t trial = 0; trial < cell.trial_seconds.size(); ++trial) {
      out << mode_name(cell.mode) << '\t' << cell.k1 << '\t' << cell.k2 << '\t'
          << cell.batch_size << '\t' << trial << '\t'
          << cell.trial_seconds[trial] << '\t' << cell.counters.direct_evals
          << '\t' << cell.counters.lm_evals << '\t'
          << cell.counters.channel_evals << '\t' << cell.counters.channel_calls
          << '\n';
    }
  }
  return out.str();
}

std::string bench_json(const BenchReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const BenchCell& cell : report.cells) {
    nlohmann::json j{{"mode", mode_name(cell.mode)},
                     {"k1", cell.k1},
                     {"k2", cell.k2},
                     {"batch_size", cell.batch_size},
                     {"skipped", cell.skipped},
                     {"estimated_bytes", cell.estimated_bytes},
                     {"fastest", cell.fastest}};
    if (!cell.skipped) {
      j["trial_seconds"] = cell.trial_seconds;
      j["mean_seconds"] = cell.mean_seconds;
      j["counters"] = {{"direct_evals", cell.counters.direct_evals},
                       {"lm_evals", cell.counters.lm_evals},
                       {"channel_evals", cell.counters.channel_evals},
                       {"channel_calls", cell.counters.channel_calls}};
    }
    cells.push_back(std::move(j));
  }
  nlohmann::json j{{"trials", report.options.trials},
                   {"mem_budget_bytes", report.options.mem_budget_bytes},
                   {"cells", std::move(cells)}};
  return j.dump(2);
}

}  // namespace nc
