// nc/decoder.h

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

#ifndef NC_DECODER_H_
#define NC_DECODER_H_

#include <vector>

#include "nc/core.h"
#include "nc/reduced_vocab.h"
#include "nc/scorer.h"

namespace nc {

// Scorers for one decode, non-owning. The language model is required for
// every mode but "dir"; the channel model only for the noisy-channel modes.
struct Models {
  const DirectScorer* direct = nullptr;
  const LmScorer* lm = nullptr;
  const ChannelScorer* channel = nullptr;
};

struct FinishedHypothesis {
  Hypothesis hyp;
  double final_score = 0.0;  // combined + len_reward * (t/s)
};

/// Counter deltas of one beam step.
struct StepCost {
  int32_t step = 0;  // candidate prefix length t at this step
  int32_t num_candidates = 0;
  CostCounters delta;
};

struct BeamState {
  std::vector<Hypothesis> active;  // sorted by combined desc, tie rule below
  std::vector<FinishedHypothesis> finished;
  int32_t step = 0;
  CostCounters counters;
};

struct DecodeResult {
  TokenIds best;  // BOS-started; EOS-terminated unless degenerate
  double best_combined = 0.0;
  double best_final = 0.0;
  bool degenerate = false;  // nothing finished before the length cap
  std::vector<FinishedHypothesis> finished;
  CostCounters counters;
  std::vector<StepCost> steps;
  int32_t support_size = 0;  // |R| used for channel scoring, |V| if full
};

// The k (clamped to the vocabulary size) token ids with the highest scores,
// ordered by score descending with ties broken by lower id.
std::vector<TokenId> select_candidates(const std::vector<double>& scores,
                                       int32_t k2);

// Fills channel_lp (a fresh full-source scoring of each candidate prefix)
// and the combined score of candidates whose prefix, direct_lp and lm_lp are
// already set. `s` is the source length used by the score combination.
void rescore_candidates(std::vector<Hypothesis>& candidates, const TokenIds& x,
                        const ChannelScorer& channel,
                        const CombinationWeights& weights,
                        const ReducedVocab* restrict_set, int32_t s,
                        bool lm_div_by_t, CostCounters& counters,
                        ChannelWorkspace* workspace = nullptr);

// Beam search over one source sentence. Every step pre-selects the k2 best
// extensions of each beam, rescores them (noisy-channel modes), and prunes
// the pool to beam size k1; candidates that select EOS move to the finished
// list and their beam slots are backfilled. Decoding stops once k1
// hypotheses have finished or the output length reaches max_len. Hypothesis
// ordering everywhere is: higher combined score first, then lexicographically
// smaller token sequence, then earlier creation.
//
// In fast-nc mode the channel support is reduced to this sentence's source
// types plus the top_f most frequent source types (unless full_vocab is
// set), so results never depend on how sentences are batched.
DecodeResult decode(const TokenIds& x, const Models& models,
                    const CombinationWeights& weights,
                    const DecodeConfig& config);

/// Decodes a batch of sentences; results are indexed like the input.
std::vector<DecodeResult> decode_batch(const std::vector<TokenIds>& sources,
                                       const Models& models,
                                       const CombinationWeights& weights,
                                       const DecodeConfig& config,
                                       int32_t workers = 1);

}  // namespace nc

#endif  // NC_DECODER_H_
