// nc/direct.h

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

#ifndef NC_DIRECT_H_
#define NC_DIRECT_H_

#include <map>
#include <memory>

#include "nc/ibm1.h"
#include "nc/scorer.h"

namespace nc {

// Forward model p(y | x): a mixture of a bag-of-source lexical average and a
// target bigram model,
//
//   p(v | prefix, x) = mu * (1/|x|) sum_j fprob(v | x_j)
//                    + (1 - mu) * bigram(v | last(prefix))
//
// The distribution depends only on the prefix's last token and the source
// sentence. fprob is dense row-major with rows = |V_source| and
// cols = |V_target|; the bigram table is add-alpha smoothed.
class LexMixDirect : public DirectScorer {
 public:
  struct BigramRow {
    int64_t total = 0;
    std::map<TokenId, int64_t> next;
  };
  using BigramTable = std::map<TokenId, BigramRow>;

  LexMixDirect(std::shared_ptr<const Vocabulary> src_vocab,
               std::shared_ptr<const Vocabulary> tgt_vocab,
               std::vector<double> fprob, BigramTable bigram, double mu,
               double alpha);

  const Vocabulary& target_vocab() const override { return *tgt_vocab_; }
  const Vocabulary& source_vocab() const { return *src_vocab_; }
  double mu() const { return mu_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& fprob() const { return fprob_; }
  const BigramTable& bigram() const { return bigram_; }

  double fprob_at(TokenId tgt, TokenId src) const {
    return fprob_[static_cast<size_t>(src) * static_cast<size_t>(tgt_vocab_->size()) +
                  static_cast<size_t>(tgt)];
  }

  void next_logprobs(const TokenIds& x, const std::vector<TokenIds>& prefixes,
                     std::vector<std::vector<double>>& out,
                     CostCounters& counters) const override;

 private:
  void fill_logprobs(const TokenIds& x, const TokenIds& prefix,
                     std::vector<double>& row) const;

  std::shared_ptr<const Vocabulary> src_vocab_;
  std::shared_ptr<const Vocabulary> tgt_vocab_;
  std::vector<double> fprob_;
  BigramTable bigram_;
  double mu_;
  double alpha_;
};

// Ensemble of direct models scored as the arithmetic mean of the members'
// log-probabilities (not renormalized). A single-member ensemble scores
// identically to its member.
class DirectEnsemble : public DirectScorer {
 public:
  explicit DirectEnsemble(std::vector<std::shared_ptr<const LexMixDirect>> members);

  const Vocabulary& target_vocab() const override;
  const std::vector<std::shared_ptr<const LexMixDirect>>& members() const {
    return members_;
  }

  void next_logprobs(const TokenIds& x, const std::vector<TokenIds>& prefixes,
                     std::vector<std::vector<double>>& out,
                     CostCounters& counters) const override;

 private:
  std::vector<std::shared_ptr<const LexMixDirect>> members_;
};

// Fits the forward lexical table with EM (target words aligned to source
// positions) and counts the target bigram table. EOS is appended to both
// sides of every pair so EOS is predictable.
LexMixDirect train_direct(const ParallelCorpus& corpus,
                          std::shared_ptr<const Vocabulary> src_vocab,
                          std::shared_ptr<const Vocabulary> tgt_vocab,
                          int32_t iterations = 5, double mu = 0.7,
                          double alpha = 0.1, double smoothing = 1e-6);

}  // namespace nc

#endif  // NC_DIRECT_H_
