// nc/scorer.h

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

#ifndef NC_SCORER_H_
#define NC_SCORER_H_

#include <unordered_map>
#include <vector>

#include "nc/core.h"
#include "nc/reduced_vocab.h"
#include "nc/vocab.h"

namespace nc {

// Scratch buffers for channel scoring, owned by one decode job. The row
// cache holds translation-table rows gathered down to the current support
// set; it is keyed on (model, support) and cleared when either changes.
struct ChannelWorkspace {
  std::vector<double> mix;
  std::vector<double> position_probs;
  std::unordered_map<TokenId, std::vector<double>> row_cache;
  const void* model_key = nullptr;
  const void* support_key = nullptr;
};

/// Forward model p(y | x): next-token log-probabilities over the target vocab.
class DirectScorer {
 public:
  virtual ~DirectScorer() = default;
  virtual const Vocabulary& target_vocab() const = 0;

  // One row per prefix, each of size |V_target|, natural-log probabilities.
  // Adds batch * |V| to counters.direct_evals (per ensemble member).
  virtual void next_logprobs(const TokenIds& x,
                             const std::vector<TokenIds>& prefixes,
                             std::vector<std::vector<double>>& out,
                             CostCounters& counters) const = 0;
};

/// Prior p(y): next-token log-probabilities over the target vocab.
class LmScorer {
 public:
  virtual ~LmScorer() = default;
  virtual const Vocabulary& vocab() const = 0;

  /// Adds batch * |V| to counters.lm_evals.
  virtual void next_logprobs(const std::vector<TokenIds>& prefixes,
                             std::vector<std::vector<double>>& out,
                             CostCounters& counters) const = 0;
};

// Channel model p(x | y): scores the full source sequence given a target
// prefix. When `restrict` is non-null the per-position output distribution
// is renormalized over the reduced support before scoring.
class ChannelScorer {
 public:
  virtual ~ChannelScorer() = default;
  virtual const Vocabulary& source_vocab() const = 0;

  // y excludes BOS. Adds |x| * (|R| or |V_source|) to counters.channel_evals
  // and 1 to counters.channel_calls.
  virtual double logprob(const TokenIds& x, const TokenIds& y,
                         const ReducedVocab* restrict_set,
                         CostCounters& counters,
                         ChannelWorkspace* workspace = nullptr) const = 0;
};

}  // namespace nc

#endif  // NC_SCORER_H_
