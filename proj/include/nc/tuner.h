// nc/tuner.h

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

#ifndef NC_TUNER_H_
#define NC_TUNER_H_

#include <optional>

#include "nc/core.h"
#include "nc/decoder.h"

namespace nc {

// Random-search specification. The free dimensions depend on the mode:
// "dir" tunes the length reward only, "dir+lm" adds lambda2 and the
// noisy-channel modes add lambda1. Weights are drawn uniformly from
// [lo, hi]; dimensions that are not free stay 0.
struct TuneSpec {
  Mode mode = Mode::kNaiveNc;
  std::optional<int32_t> samples;  // default: 10 / 100 / 1000 by mode
  double lo = 0.0;
  double hi = 2.0;
  uint64_t seed = 0;

  int32_t resolved_samples() const;
};

/// 10 for dir, 100 for dir+lm, 1000 for the noisy-channel modes.
int32_t default_samples(Mode mode);

// N independent draws per free dimension, reproducible from the seed.
// Throws std::invalid_argument when the sample count is not positive.
std::vector<CombinationWeights> sample_configs(const TuneSpec& spec);

struct TuneEntry {
  int32_t index = 0;
  CombinationWeights weights;
  double bleu = 0.0;
};

struct TuneResult {
  CombinationWeights best;
  double best_bleu = 0.0;
  int32_t best_index = 0;
  std::vector<TuneEntry> table;
};

// Decodes the dev set under every sampled config and returns the
// argmax-BLEU config (ties resolved to the first sampled). Dev decoding
// uses `config` as-is (with the spec's mode) so tuned weights match
// deployment conditions. Throws std::invalid_argument
// ("misaligned dev files") when source and reference sizes differ.
TuneResult tune(const TuneSpec& spec, const std::vector<TokenIds>& dev_sources,
                const std::vector<StringSentence>& dev_references,
                const Models& models, const DecodeConfig& config,
                const Vocabulary& target_vocab, int32_t workers = 1);

/// The per-config audit table as TSV: index, mode, weights, BLEU.
std::string tune_table_tsv(Mode mode, const TuneResult& result);

}  // namespace nc

#endif  // NC_TUNER_H_
