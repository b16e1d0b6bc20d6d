// nc/ngram_lm.h

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

#ifndef NC_NGRAM_LM_H_
#define NC_NGRAM_LM_H_

#include <map>
#include <memory>

#include "nc/scorer.h"

namespace nc {

// Count-based n-gram language model with add-alpha smoothing over the full
// target vocabulary. Contexts are fixed-length (order - 1), padded with BOS
// at sentence start, so every context is distributed over all |V| tokens and
// unseen contexts fall back to the uniform distribution.
class NGramLM : public LmScorer {
 public:
  struct ContextCounts {
    int64_t total = 0;
    std::map<TokenId, int64_t> next;
  };
  using CountTable = std::map<TokenIds, ContextCounts>;

  NGramLM(std::shared_ptr<const Vocabulary> vocab, int32_t order, double alpha,
          CountTable counts);

  const Vocabulary& vocab() const override { return *vocab_; }
  int32_t order() const { return order_; }
  double alpha() const { return alpha_; }
  const CountTable& counts() const { return counts_; }

  void next_logprobs(const std::vector<TokenIds>& prefixes,
                     std::vector<std::vector<double>>& out,
                     CostCounters& counters) const override;

  /// Smoothed log p(token | context of `prefix`). prefix starts with BOS.
  double token_logprob(const TokenIds& prefix, TokenId token) const;

  /// Sum of token_logprob over a BOS-started, EOS-terminated sequence.
  double sequence_logprob(const TokenIds& sequence) const;

 private:
  TokenIds context_of(const TokenIds& prefix) const;
  void fill_logprobs(const TokenIds& prefix, std::vector<double>& row) const;

  std::shared_ptr<const Vocabulary> vocab_;
  int32_t order_;
  double alpha_;
  CountTable counts_;
};

// Trains an order-n model on a target-side corpus. Sentences are
// EOS-terminated before counting (appended when missing). Throws on
// order < 1 or an empty corpus.
NGramLM train_ngram(const std::vector<TokenIds>& corpus,
                    std::shared_ptr<const Vocabulary> vocab, int32_t order = 3,
                    double alpha = 0.1);

}  // namespace nc

#endif  // NC_NGRAM_LM_H_
