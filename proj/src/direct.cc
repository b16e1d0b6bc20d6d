// nc/direct.cc

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

#include "nc/direct.h"

#include <cmath>
#include <stdexcept>

namespace nc {

LexMixDirect::LexMixDirect(std::shared_ptr<const Vocabulary> src_vocab,
                           std::shared_ptr<const Vocabulary> tgt_vocab,
                           std::vector<double> fprob, BigramTable bigram,
                           double mu, double alpha)
    : src_vocab_(std::move(src_vocab)),
      tgt_vocab_(std::move(tgt_vocab)),
      fprob_(std::move(fprob)),
      bigram_(std::move(bigram)),
      mu_(mu),
      alpha_(alpha) {
  const size_t expected = static_cast<size_t>(src_vocab_->size()) *
                          static_cast<size_t>(tgt_vocab_->size());
  if (fprob_.size() != expected) {
    throw std::invalid_argument("lexical table has wrong shape");
  }
  if (mu_ < 0.0 || mu_ > 1.0) {
    throw std::invalid_argument("mixture weight must be in [0,1]");
  }
}

void LexMixDirect::fill_logprobs(const TokenIds& x, const TokenIds& prefix,
                                 std::vector<double>& row) const {
  const size_t v = static_cast<size_t>(tgt_vocab_->size());
  row.assign(v, 0.0);

  const double lex_w = mu_ / static_cast<double>(x.size());
  for (TokenId xj : x) {
    const double* frow = fprob_.data() + static_cast<size_t>(xj) * v;
    for (size_t t = 0; t < v; ++t) row[t] += lex_w * frow[t];
  }

  const double big_w = 1.0 - mu_;
  auto it = bigram_.find(prefix.back());
  const BigramRow* br = it == bigram_.end() ? nullptr : &it->second;
  const double total = br ? static_cast<double>(br->total) : 0.0;
  const double denom = total + alpha_ * static_cast<double>(v);
  const double unseen = big_w * (alpha_ / denom);
  for (size_t t = 0; t < v; ++t) row[t] += unseen;
  if (br) {
    for (const auto& [tok, count] : br->next) {
      row[static_cast<size_t>(tok)] +=
          big_w * (static_cast<double>(count) / denom);
    }
  }

  for (size_t t = 0; t < v; ++t) row[t] = std::log(row[t]);
}

void LexMixDirect::next_logprobs(const TokenIds& x,
                                 const std::vector<TokenIds>& prefixes,
                                 std::vector<std::vector<double>>& out,
                                 CostCounters& counters) const {
  if (x.empty()) throw std::invalid_argument("empty source");
  out.resize(prefixes.size());
  for (size_t i = 0; i < prefixes.size(); ++i) {
    if (prefixes[i].empty()) throw std::invalid_argument("empty prefix");
    fill_logprobs(x, prefixes[i], out[i]);
  }
  counters.direct_evals += static_cast<uint64_t>(prefixes.size()) *
                           static_cast<uint64_t>(tgt_vocab_->size());
}

DirectEnsemble::DirectEnsemble(
    std::vector<std::shared_ptr<const LexMixDirect>> members)
    : members_(std::move(members)) {
  if (members_.empty()) {
    throw std::invalid_argument("ensemble needs at least one member");
  }
}

const Vocabulary& DirectEnsemble::target_vocab() const {
  return members_[0]->target_vocab();
}

void DirectEnsemble::next_logprobs(const TokenIds& x,
                                   const std::vector<TokenIds>& prefixes,
                                   std::vector<std::vector<double>>& out,
                                   CostCounters& counters) const {
  members_[0]->next_logprobs(x, prefixes, out, counters);
  if (members_.size() == 1) return;

  std::vector<std::vector<double>> member_out;
  for (size_t m = 1; m < members_.size(); ++m) {
    members_[m]->next_logprobs(x, prefixes, member_out, counters);
    for (size_t i = 0; i < out.size(); ++i) {
      for (size_t t = 0; t < out[i].size(); ++t) {
        out[i][t] += member_out[i][t];
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(members_.size());
  for (auto& row : out) {
    for (double& cell : row) cell *= inv;
  }
}

namespace {

TokenIds with_eos(const TokenIds& sent) {
  TokenIds out = sent;
  if (out.empty() || out.back() != Vocabulary::kEos) {
    out.push_back(Vocabulary::kEos);
  }
  return out;
}

}  // namespace

LexMixDirect train_direct(const ParallelCorpus& corpus,
                          std::shared_ptr<const Vocabulary> src_vocab,
                          std::shared_ptr<const Vocabulary> tgt_vocab,
                          int32_t iterations, double mu, double alpha,
                          double smoothing) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");

  const size_t vt = static_cast<size_t>(tgt_vocab->size());
  const size_t vs = static_cast<size_t>(src_vocab->size());

  ParallelCorpus pairs;
  pairs.reserve(corpus.size());
  for (const auto& [x, y] : corpus) {
    pairs.emplace_back(with_eos(x), with_eos(y));
  }

  // EM on fprob(target | source); each target token aligns uniformly to the
  // source positions.
  std::vector<double> fprob(vs * vt, 1.0 / static_cast<double>(vt));
  std::vector<double> counts(vs * vt);
  std::vector<double> row_total(vs);

  for (int32_t iter = 0; iter < iterations; ++iter) {
    std::fill(counts.begin(), counts.end(), 0.0);
    std::fill(row_total.begin(), row_total.end(), 0.0);
    for (const auto& [x, y] : pairs) {
      for (TokenId yi : y) {
        double denom = 0.0;
        for (TokenId xj : x) {
          denom += fprob[static_cast<size_t>(xj) * vt + static_cast<size_t>(yi)];
        }
        for (TokenId xj : x) {
          const size_t cell =
              static_cast<size_t>(xj) * vt + static_cast<size_t>(yi);
          const double share = fprob[cell] / denom;
          counts[cell] += share;
          row_total[static_cast<size_t>(xj)] += share;
        }
      }
    }
    for (size_t r = 0; r < vs; ++r) {
      if (row_total[r] <= 0.0) continue;
      const double inv = 1.0 / row_total[r];
      double* dst = fprob.data() + r * vt;
      const double* src = counts.data() + r * vt;
      for (size_t c = 0; c < vt; ++c) dst[c] = src[c] * inv;
    }
  }

  if (smoothing > 0.0) {
    const double floor = smoothing / static_cast<double>(vt);
    for (double& cell : fprob) cell = (1.0 - smoothing) * cell + floor;
  }

  LexMixDirect::BigramTable bigram;
  for (const auto& [x, y] : pairs) {
    (void)x;
    TokenId prev = Vocabulary::kBos;
    for (TokenId tok : y) {
      LexMixDirect::BigramRow& row = bigram[prev];
      row.total += 1;
      row.next[tok] += 1;
      prev = tok;
    }
  }

  return LexMixDirect(std::move(src_vocab), std::move(tgt_vocab),
                      std::move(fprob), std::move(bigram), mu, alpha);
}

}  // namespace nc
