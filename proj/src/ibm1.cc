// nc/ibm1.cc

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

#include "nc/ibm1.h"

#include <cmath>
#include <stdexcept>

namespace nc {

Ibm1Channel::Ibm1Channel(std::shared_ptr<const Vocabulary> src_vocab,
                         std::shared_ptr<const Vocabulary> tgt_vocab,
                         std::vector<double> table,
                         std::vector<double> em_loglik)
    : src_vocab_(std::move(src_vocab)),
      tgt_vocab_(std::move(tgt_vocab)),
      table_(std::move(table)),
      em_loglik_(std::move(em_loglik)) {
  const size_t expected = static_cast<size_t>(tgt_vocab_->size() + 1) *
                          static_cast<size_t>(src_vocab_->size());
  if (table_.size() != expected) {
    throw std::invalid_argument("translation table has wrong shape");
  }
}

namespace {

// Gathers one table row down to the support set, cached per (model, support).
const std::vector<double>& gathered_row(const Ibm1Channel& model,
                                        const double* row,
                                        const ReducedVocab& support, TokenId key,
                                        ChannelWorkspace& ws) {
  if (ws.model_key != &model || ws.support_key != &support) {
    ws.row_cache.clear();
    ws.model_key = &model;
    ws.support_key = &support;
  }
  auto [it, inserted] = ws.row_cache.try_emplace(key);
  if (inserted) {
    std::vector<double>& gathered = it->second;
    gathered.resize(support.ids.size());
    for (size_t idx = 0; idx < support.ids.size(); ++idx) {
      gathered[idx] = row[support.ids[idx]];
    }
  }
  return it->second;
}

}  // namespace

double Ibm1Channel::logprob(const TokenIds& x, const TokenIds& y,
                            const ReducedVocab* restrict_set,
                            CostCounters& counters,
                            ChannelWorkspace* workspace) const {
  if (y.empty()) throw std::invalid_argument("empty prefix");
  if (x.empty()) throw std::invalid_argument("empty source");

  const int32_t full = src_vocab_->size();
  const size_t support_size =
      restrict_set ? restrict_set->ids.size() : static_cast<size_t>(full);
  if (restrict_set) {
    for (TokenId id : x) {
      if (!restrict_set->contains(id)) {
        throw std::runtime_error("reduced vocab violation");
      }
    }
  }

  ChannelWorkspace local;
  ChannelWorkspace& ws = workspace ? *workspace : local;
  ws.mix.assign(support_size, 0.0);

  // Accumulate the alignment mixture over NULL plus the prefix tokens, in
  // support order. The 1/(|y|+1) factor cancels against the support
  // renormalization and is folded into Z.
  for (size_t i = 0; i <= y.size(); ++i) {
    const TokenId row_key = i == 0 ? -1 : y[i - 1];
    const double* row = table_.data() + row_offset(row_key);
    if (restrict_set) {
      const std::vector<double>& gathered =
          gathered_row(*this, row, *restrict_set, row_key, ws);
      for (size_t idx = 0; idx < support_size; ++idx) ws.mix[idx] += gathered[idx];
    } else {
      for (size_t idx = 0; idx < support_size; ++idx) ws.mix[idx] += row[idx];
    }
  }

  double z = 0.0;
  for (size_t idx = 0; idx < support_size; ++idx) z += ws.mix[idx];

  // Per-position output probabilities; every position shares the same
  // distribution under this channel family, but the |x| * |support| block is
  // what a full output layer computes and what channel_evals counts.
  const double inv_z = 1.0 / z;
  ws.position_probs.resize(x.size() * support_size);
  for (size_t j = 0; j < x.size(); ++j) {
    double* out_row = ws.position_probs.data() + j * support_size;
    for (size_t idx = 0; idx < support_size; ++idx) {
      out_row[idx] = ws.mix[idx] * inv_z;
    }
  }

  double score = 0.0;
  const double log_z = std::log(z);
  for (TokenId id : x) {
    const size_t idx = restrict_set
                           ? static_cast<size_t>(restrict_set->index_of(id))
                           : static_cast<size_t>(id);
    score += std::log(ws.mix[idx]) - log_z;
  }

  counters.channel_evals += static_cast<uint64_t>(x.size()) * support_size;
  counters.channel_calls += 1;
  return score;
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

Ibm1Channel train_ibm1(const ParallelCorpus& corpus,
                       std::shared_ptr<const Vocabulary> src_vocab,
                       std::shared_ptr<const Vocabulary> tgt_vocab,
                       int32_t iterations, double smoothing) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");

  const size_t vs = static_cast<size_t>(src_vocab->size());
  const size_t rows = static_cast<size_t>(tgt_vocab->size()) + 1;

  ParallelCorpus pairs;
  pairs.reserve(corpus.size());
  for (const auto& [x, y] : corpus) {
    pairs.emplace_back(with_eos(x), with_eos(y));
  }

  std::vector<double> table(rows * vs, 1.0 / static_cast<double>(vs));
  std::vector<double> loglik;
  std::vector<double> counts(rows * vs);
  std::vector<double> row_total(rows);

  for (int32_t iter = 0; iter < iterations; ++iter) {
    std::fill(counts.begin(), counts.end(), 0.0);
    std::fill(row_total.begin(), row_total.end(), 0.0);
    double ll = 0.0;

    for (const auto& [x, y] : pairs) {
      const double align = 1.0 / static_cast<double>(y.size() + 1);
      for (TokenId xj : x) {
        double denom = table[static_cast<size_t>(xj)];  // NULL row
        for (TokenId yi : y) {
          denom += table[static_cast<size_t>(yi + 1) * vs + static_cast<size_t>(xj)];
        }
        ll += std::log(denom * align);
        // Posterior over alignments of x_j; NULL is row 0.
        double share = table[static_cast<size_t>(xj)] / denom;
        counts[static_cast<size_t>(xj)] += share;
        row_total[0] += share;
        for (TokenId yi : y) {
          const size_t cell =
              static_cast<size_t>(yi + 1) * vs + static_cast<size_t>(xj);
          share = table[cell] / denom;
          counts[cell] += share;
          row_total[static_cast<size_t>(yi + 1)] += share;
        }
      }
    }
    loglik.push_back(ll);

    for (size_t r = 0; r < rows; ++r) {
      if (row_total[r] <= 0.0) continue;  // unseen target rows stay uniform
      const double inv = 1.0 / row_total[r];
      double* dst = table.data() + r * vs;
      const double* src = counts.data() + r * vs;
      for (size_t c = 0; c < vs; ++c) dst[c] = src[c] * inv;
    }
  }

  if (smoothing > 0.0) {
    const double floor = smoothing / static_cast<double>(vs);
    for (double& cell : table) cell = (1.0 - smoothing) * cell + floor;
  }

  return Ibm1Channel(std::move(src_vocab), std::move(tgt_vocab),
                     std::move(table), std::move(loglik));
}

}  // namespace nc
