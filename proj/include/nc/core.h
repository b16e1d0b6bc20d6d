// nc/core.h

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

#ifndef NC_CORE_H_
#define NC_CORE_H_

#include <cstdint>
#include <string>

#include "nc/vocab.h"

namespace nc {

// Decode modes. "dir" ranks by the direct model alone, "dir+lm" fuses a
// language model into the beam score, the two noisy-channel modes add
// channel-model rescoring of the k2 candidates pre-selected per beam.
enum class Mode {
  kDirect,
  kDirectLm,
  kNaiveNc,
  kFastNc,
};

Mode parse_mode(const std::string& name);  // throws on unknown mode
std::string mode_name(Mode mode);
bool mode_uses_lm(Mode mode);
bool mode_uses_channel(Mode mode);

// Interpolation weights for the combined decoding score plus the tuned
// length reward applied when ranking finished hypotheses.
struct CombinationWeights {
  double lambda1 = 0.0;    // channel model weight
  double lambda2 = 0.0;    // language model weight
  double len_reward = 0.0; // finished-hypothesis length reward
};

// Combined score of a partial hypothesis:
//
//   (1/t) * direct_lp + (lambda1/s) * channel_lp + (lambda2/s) * lm_lp
//
// t is the output prefix length (excluding BOS), s the source length. The
// language-model term is divided by s, not t; `lm_div_by_t` switches that
// divisor to t for experimentation and defaults to off. Throws
// std::invalid_argument ("zero length") when t or s is not positive.
//
// This function is the single arithmetic path for the combined score; the
// decoder and all tests recompute through it so stored scores are
// reproducible bit for bit.
double combine_scores(double direct_lp, int32_t t, double channel_lp,
                      double lm_lp, int32_t s, const CombinationWeights& weights,
                      bool lm_div_by_t = false);

/// Counts of scalar token-probability evaluations, owned by one decode job.
struct CostCounters {
  uint64_t direct_evals = 0;
  uint64_t lm_evals = 0;
  uint64_t channel_evals = 0;
  uint64_t channel_calls = 0;

  void reset() { *this = CostCounters{}; }
  void merge(const CostCounters& other) {
    direct_evals += other.direct_evals;
    lm_evals += other.lm_evals;
    channel_evals += other.channel_evals;
    channel_calls += other.channel_calls;
  }
};

// Beam-search configuration. Defaults follow the reference protocol:
// beam 5, k2 = 3 rescoring candidates per beam, 500 frequent types added to
// the reduced channel vocabulary, and a 2*s + 20 output length cap.
struct DecodeConfig {
  Mode mode = Mode::kDirect;
  int32_t k1 = 5;
  int32_t k2 = 3;
  int32_t top_f = 500;
  bool full_vocab = false;  // fast-nc only: skip vocabulary reduction
  int32_t max_len_a = 2;
  int32_t max_len_b = 20;
  bool lm_div_by_t = false;

  int32_t max_len(int32_t source_len) const {
    return max_len_a * source_len + max_len_b;
  }
};

// A partial target sequence with its per-model cumulative log-scores.
// `prefix` always starts with BOS; `channel_lp` is the most recent full
// channel scoring of the prefix (channel models rescore the whole source
// each step, so it is not cumulative).
struct Hypothesis {
  TokenIds prefix;
  double direct_lp = 0.0;
  double lm_lp = 0.0;
  double channel_lp = 0.0;
  double combined = 0.0;
  bool finished = false;
  uint64_t stamp = 0;  // creation order, last tie-break key

  /// Output length t, excluding BOS.
  int32_t length() const { return static_cast<int32_t>(prefix.size()) - 1; }
};

}  // namespace nc

#endif  // NC_CORE_H_
