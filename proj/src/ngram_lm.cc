// nc/ngram_lm.cc

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

#include "nc/ngram_lm.h"

#include <cmath>
#include <stdexcept>

namespace nc {

NGramLM::NGramLM(std::shared_ptr<const Vocabulary> vocab, int32_t order,
                 double alpha, CountTable counts)
    : vocab_(std::move(vocab)),
      order_(order),
      alpha_(alpha),
      counts_(std::move(counts)) {
  if (order_ < 1) throw std::invalid_argument("ngram order must be >= 1");
}

TokenIds NGramLM::context_of(const TokenIds& prefix) const {
  // prefix = [BOS, y_1 .. y_k]; the context is the last (order - 1) tokens
  // of the stream [BOS]*(order-1) + y_1..y_k, matching training padding.
  const int32_t clen = order_ - 1;
  TokenIds ctx(static_cast<size_t>(clen), Vocabulary::kBos);
  const int32_t body = static_cast<int32_t>(prefix.size()) - 1;
  int32_t take = std::min(clen, body);
  for (int32_t i = 0; i < take; ++i) {
    ctx[static_cast<size_t>(clen - take + i)] =
        prefix[prefix.size() - static_cast<size_t>(take - i)];
  }
  return ctx;
}

void NGramLM::fill_logprobs(const TokenIds& prefix,
                            std::vector<double>& row) const {
  const int32_t v = vocab_->size();
  row.assign(static_cast<size_t>(v), 0.0);
  auto it = counts_.find(context_of(prefix));
  const ContextCounts* cc = it == counts_.end() ? nullptr : &it->second;
  const double total = cc ? static_cast<double>(cc->total) : 0.0;
  const double denom = total + alpha_ * static_cast<double>(v);
  const double unseen = std::log(alpha_ / denom);
  for (double& cell : row) cell = unseen;
  if (cc) {
    for (const auto& [tok, count] : cc->next) {
      row[static_cast<size_t>(tok)] =
          std::log((static_cast<double>(count) + alpha_) / denom);
    }
  }
}

void NGramLM::next_logprobs(const std::vector<TokenIds>& prefixes,
                            std::vector<std::vector<double>>& out,
                            CostCounters& counters) const {
  out.resize(prefixes.size());
  for (size_t i = 0; i < prefixes.size(); ++i) {
    if (prefixes[i].empty()) throw std::invalid_argument("empty prefix");
    fill_logprobs(prefixes[i], out[i]);
  }
  counters.lm_evals +=
      static_cast<uint64_t>(prefixes.size()) * static_cast<uint64_t>(vocab_->size());
}

double NGramLM::token_logprob(const TokenIds& prefix, TokenId token) const {
  if (prefix.empty()) throw std::invalid_argument("empty prefix");
  auto it = counts_.find(context_of(prefix));
  const ContextCounts* cc = it == counts_.end() ? nullptr : &it->second;
  const double total = cc ? static_cast<double>(cc->total) : 0.0;
  const double denom = total + alpha_ * static_cast<double>(vocab_->size());
  double count = 0.0;
  if (cc) {
    auto nit = cc->next.find(token);
    if (nit != cc->next.end()) count = static_cast<double>(nit->second);
  }
  return std::log((count + alpha_) / denom);
}

double NGramLM::sequence_logprob(const TokenIds& sequence) const {
  if (sequence.empty() || sequence[0] != Vocabulary::kBos) {
    throw std::invalid_argument("sequence must start with BOS");
  }
  double lp = 0.0;
  TokenIds prefix = {Vocabulary::kBos};
  for (size_t i = 1; i < sequence.size(); ++i) {
    lp += token_logprob(prefix, sequence[i]);
    prefix.push_back(sequence[i]);
  }
  return lp;
}

NGramLM train_ngram(const std::vector<TokenIds>& corpus,
                    std::shared_ptr<const Vocabulary> vocab, int32_t order,
                    double alpha) {
  if (order < 1) throw std::invalid_argument("ngram order must be >= 1");
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  NGramLM::CountTable counts;
  const int32_t clen = order - 1;
  for (const TokenIds& sent : corpus) {
    TokenIds stream(static_cast<size_t>(clen), Vocabulary::kBos);
    stream.insert(stream.end(), sent.begin(), sent.end());
    if (sent.empty() || sent.back() != Vocabulary::kEos) {
      stream.push_back(Vocabulary::kEos);
    }
    for (size_t i = static_cast<size_t>(clen); i < stream.size(); ++i) {
      TokenIds ctx(stream.begin() + static_cast<ptrdiff_t>(i) - clen,
                   stream.begin() + static_cast<ptrdiff_t>(i));
      NGramLM::ContextCounts& cc = counts[ctx];
      cc.total += 1;
      cc.next[stream[i]] += 1;
    }
  }
  return NGramLM(std::move(vocab), order, alpha, std::move(counts));
}

}  // namespace nc
