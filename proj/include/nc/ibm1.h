// nc/ibm1.h

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

#ifndef NC_IBM1_H_
#define NC_IBM1_H_

#include <memory>
#include <utility>
#include <vector>

#include "nc/scorer.h"

namespace nc {

/// A sentence pair (source, target) in id space.
using ParallelCorpus = std::vector<std::pair<TokenIds, TokenIds>>;

// Word-translation channel model p(x | y): a translation table
// tprob(source_token | target_token) with a NULL target row, scored with a
// uniform alignment mixture over the target prefix. The table is dense,
// row-major, rows = |V_target| + 1 (row 0 is NULL, row 1 + id is the target
// token), cols = |V_source|.
class Ibm1Channel : public ChannelScorer {
 public:
  Ibm1Channel(std::shared_ptr<const Vocabulary> src_vocab,
              std::shared_ptr<const Vocabulary> tgt_vocab,
              std::vector<double> table, std::vector<double> em_loglik = {});

  const Vocabulary& source_vocab() const override { return *src_vocab_; }
  const Vocabulary& target_vocab() const { return *tgt_vocab_; }

  /// tprob(src | tgt); tgt = -1 addresses the NULL row.
  double tprob(TokenId src, TokenId tgt) const {
    return table_[row_offset(tgt) + static_cast<size_t>(src)];
  }
  const std::vector<double>& table() const { return table_; }

  /// Corpus log-likelihood recorded at the start of each EM iteration.
  const std::vector<double>& em_loglik() const { return em_loglik_; }

  // log p(x | y) = sum_j log [ sum_{i in y+NULL} tprob(x_j | y_i) / (|y|+1) ],
  // with the per-position output distribution renormalized over the support
  // set. The unrestricted call uses the full source vocabulary as support
  // through the same arithmetic path, so restrict = V reproduces it bit for
  // bit. Also materializes the |x| * |support| per-position probabilities the
  // cost counters account for.
  double logprob(const TokenIds& x, const TokenIds& y,
                 const ReducedVocab* restrict_set, CostCounters& counters,
                 ChannelWorkspace* workspace = nullptr) const override;

 private:
  size_t row_offset(TokenId tgt) const {
    return static_cast<size_t>(tgt + 1) * static_cast<size_t>(src_vocab_->size());
  }

  std::shared_ptr<const Vocabulary> src_vocab_;
  std::shared_ptr<const Vocabulary> tgt_vocab_;
  std::vector<double> table_;
  std::vector<double> em_loglik_;
};

// Fits the translation table with expectation maximization from a uniform
// initialization. EOS is appended to both sides of every pair (when missing)
// so EOS-terminated prefixes can be scored. `smoothing` mixes a uniform
// floor into every row after training, keeping rows normalized while making
// all table entries positive; 0 disables it.
Ibm1Channel train_ibm1(const ParallelCorpus& corpus,
                       std::shared_ptr<const Vocabulary> src_vocab,
                       std::shared_ptr<const Vocabulary> tgt_vocab,
                       int32_t iterations = 5, double smoothing = 1e-6);

}  // namespace nc

#endif  // NC_IBM1_H_
