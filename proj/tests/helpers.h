// tests/helpers.h

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

#ifndef NC_TESTS_HELPERS_H_
#define NC_TESTS_HELPERS_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "nc/decoder.h"
#include "nc/model_file.h"
#include "nc/util.h"

namespace nctest {

inline double logsumexp(const std::vector<double>& row) {
  double mx = row[0];
  for (double v : row) mx = std::max(mx, v);
  double sum = 0.0;
  for (double v : row) sum += std::exp(v - mx);
  return mx + std::log(sum);
}

// ---------------------------------------------------------------------------
// Synthetic translation task: a seeded Markov source language, a bijective
// token permutation to the target side, and optional token-substitution
// noise on the parallel training targets. Dev/test references are clean, so
// the task is invertible and BLEU-checkable.

struct TaskOptions {
  int32_t types = 30;
  int32_t train_pairs = 300;
  int32_t lm_sentences = 2000;  // clean target-side sentences for the LM
  int32_t dev_sentences = 30;
  int32_t test_sentences = 50;
  int32_t min_len = 3;
  int32_t max_len = 9;
  double noise = 0.15;
  uint64_t seed = 1;
};

struct ToyTask {
  std::vector<nc::StringSentence> train_src, train_tgt;
  std::vector<nc::StringSentence> lm_tgt;
  std::vector<nc::StringSentence> dev_src, dev_ref;
  std::vector<nc::StringSentence> test_src, test_ref;
};

inline ToyTask make_toy_task(const TaskOptions& opt) {
  nc::Rng rng(opt.seed);
  const int32_t n = opt.types;

  // Markov source language: every type prefers a couple of successors.
  std::vector<std::array<int32_t, 2>> successors(static_cast<size_t>(n));
  for (int32_t i = 0; i < n; ++i) {
    successors[static_cast<size_t>(i)] = {
        static_cast<int32_t>(rng.uniform_int(0, n - 1)),
        static_cast<int32_t>(rng.uniform_int(0, n - 1))};
  }
  auto sample_sentence = [&](nc::Rng& r) {
    const int32_t len =
        static_cast<int32_t>(r.uniform_int(opt.min_len, opt.max_len));
    std::vector<int32_t> sent;
    int32_t tok = static_cast<int32_t>(r.uniform_int(0, n - 1));
    for (int32_t k = 0; k < len; ++k) {
      sent.push_back(tok);
      const double u = r.uniform();
      if (u < 0.45) {
        tok = successors[static_cast<size_t>(tok)][0];
      } else if (u < 0.8) {
        tok = successors[static_cast<size_t>(tok)][1];
      } else {
        tok = static_cast<int32_t>(r.uniform_int(0, n - 1));
      }
    }
    return sent;
  };

  // Bijective type permutation source -> target.
  std::vector<int32_t> perm(static_cast<size_t>(n));
  for (int32_t i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  for (int32_t i = n - 1; i > 0; --i) {
    std::swap(perm[static_cast<size_t>(i)],
              perm[static_cast<size_t>(rng.uniform_int(0, i))]);
  }

  auto src_name = [](int32_t i) { return "s" + std::to_string(i); };
  auto tgt_name = [](int32_t i) { return "t" + std::to_string(i); };
  auto to_src = [&](const std::vector<int32_t>& sent) {
    nc::StringSentence out;
    for (int32_t t : sent) out.push_back(src_name(t));
    return out;
  };
  auto to_tgt = [&](const std::vector<int32_t>& sent, double noise, nc::Rng& r) {
    nc::StringSentence out;
    for (int32_t t : sent) {
      int32_t mapped = perm[static_cast<size_t>(t)];
      if (noise > 0.0 && r.uniform() < noise) {
        mapped = static_cast<int32_t>(r.uniform_int(0, n - 1));
      }
      out.push_back(tgt_name(mapped));
    }
    return out;
  };

  ToyTask task;
  for (int32_t i = 0; i < opt.train_pairs; ++i) {
    const auto sent = sample_sentence(rng);
    task.train_src.push_back(to_src(sent));
    task.train_tgt.push_back(to_tgt(sent, opt.noise, rng));
  }
  for (int32_t i = 0; i < opt.lm_sentences; ++i) {
    task.lm_tgt.push_back(to_tgt(sample_sentence(rng), 0.0, rng));
  }
  for (int32_t i = 0; i < opt.dev_sentences; ++i) {
    const auto sent = sample_sentence(rng);
    task.dev_src.push_back(to_src(sent));
    task.dev_ref.push_back(to_tgt(sent, 0.0, rng));
  }
  for (int32_t i = 0; i < opt.test_sentences; ++i) {
    const auto sent = sample_sentence(rng);
    task.test_src.push_back(to_src(sent));
    task.test_ref.push_back(to_tgt(sent, 0.0, rng));
  }
  return task;
}

inline nc::ModelFile train_toy(const ToyTask& task,
                               const nc::TrainOptions& options = {}) {
  return nc::train_model_file(task.train_src, task.train_tgt, options,
                              task.lm_tgt);
}

inline std::vector<nc::TokenIds> encode_sources(
    const nc::Vocabulary& vocab, const std::vector<nc::StringSentence>& corpus) {
  std::vector<nc::TokenIds> out;
  out.reserve(corpus.size());
  for (const auto& sent : corpus) out.push_back(nc::encode_source(vocab, sent));
  return out;
}

// ---------------------------------------------------------------------------
// Independent IBM Model 1 EM oracle. Sparse map-based implementation of the
// textbook update equations, kept structurally separate from the library's
// dense-table trainer. Row key -1 is NULL; absent cells of touched rows are
// 0, untouched rows stay at the uniform 1/|V_src| initialization.

struct OracleIbm1 {
  std::map<std::pair<int32_t, int32_t>, double> cells;  // (tgt row, src) -> p
  std::map<int32_t, bool> touched;
  int32_t src_vocab_size = 0;

  double prob(int32_t src, int32_t tgt_row) const {
    auto it = cells.find({tgt_row, src});
    if (it != cells.end()) return it->second;
    if (touched.count(tgt_row) > 0) return 0.0;
    return 1.0 / static_cast<double>(src_vocab_size);
  }
};

inline OracleIbm1 oracle_em_ibm1(const nc::ParallelCorpus& raw_pairs,
                                 int32_t src_vocab_size, int32_t iterations) {
  nc::ParallelCorpus pairs;
  for (auto [x, y] : raw_pairs) {
    if (x.empty() || x.back() != nc::Vocabulary::kEos) {
      x.push_back(nc::Vocabulary::kEos);
    }
    if (y.empty() || y.back() != nc::Vocabulary::kEos) {
      y.push_back(nc::Vocabulary::kEos);
    }
    pairs.emplace_back(std::move(x), std::move(y));
  }

  OracleIbm1 oracle;
  oracle.src_vocab_size = src_vocab_size;
  for (int32_t iter = 0; iter < iterations; ++iter) {
    std::map<std::pair<int32_t, int32_t>, double> expected;
    std::map<int32_t, double> row_totals;
    for (const auto& [x, y] : pairs) {
      std::vector<int32_t> rows = {-1};
      for (nc::TokenId yi : y) rows.push_back(yi);
      for (nc::TokenId xj : x) {
        double denom = 0.0;
        for (int32_t row : rows) denom += oracle.prob(xj, row);
        for (int32_t row : rows) {
          const double share = oracle.prob(xj, row) / denom;
          expected[{row, xj}] += share;
          row_totals[row] += share;
        }
      }
    }
    OracleIbm1 next;
    next.src_vocab_size = src_vocab_size;
    next.touched = oracle.touched;
    for (const auto& [row, total] : row_totals) next.touched[row] = true;
    for (const auto& [cell, count] : expected) {
      next.cells[cell] = count / row_totals[cell.first];
    }
    oracle = std::move(next);
  }
  return oracle;
}

// ---------------------------------------------------------------------------
// Exhaustive decode oracle: enumerates every EOS-terminated sequence with at
// most max_len tokens (EOS only final, any other token anywhere), scores it
// with fresh scorer calls, and returns the argmax of the finalization score
// combined + len_reward * (t/s). Ties: lexicographically smaller sequence.

struct OracleSequence {
  nc::TokenIds prefix;  // [BOS, ..., EOS]
  double direct_lp = 0.0;
  double lm_lp = 0.0;
  double channel_lp = 0.0;
  double combined = 0.0;
  double final_score = 0.0;
};

inline std::vector<OracleSequence> enumerate_sequences(
    const nc::TokenIds& x, const nc::Models& models,
    const nc::CombinationWeights& weights, const nc::DecodeConfig& config) {
  const int32_t s = static_cast<int32_t>(x.size());
  const int32_t max_len = config.max_len(s);
  const int32_t vocab = models.direct->target_vocab().size();
  const bool uses_lm = nc::mode_uses_lm(config.mode);
  const bool uses_channel = nc::mode_uses_channel(config.mode);

  nc::ReducedVocab reduced;
  const nc::ReducedVocab* restrict_set = nullptr;
  if (config.mode == nc::Mode::kFastNc && !config.full_vocab) {
    reduced = nc::build_reduced_vocab({x}, models.channel->source_vocab(),
                                      config.top_f);
    restrict_set = &reduced;
  }

  std::vector<OracleSequence> out;
  nc::CostCounters scratch;

  struct Node {
    nc::TokenIds prefix;
    double direct_lp;
    double lm_lp;
  };
  std::vector<Node> frontier{{{nc::Vocabulary::kBos}, 0.0, 0.0}};

  for (int32_t t = 1; t <= max_len; ++t) {
    std::vector<Node> next_frontier;
    for (const Node& node : frontier) {
      std::vector<std::vector<double>> direct_rows, lm_rows;
      models.direct->next_logprobs(x, {node.prefix}, direct_rows, scratch);
      if (uses_lm) models.lm->next_logprobs({node.prefix}, lm_rows, scratch);
      for (nc::TokenId v = 0; v < vocab; ++v) {
        Node child;
        child.prefix = node.prefix;
        child.prefix.push_back(v);
        child.direct_lp = node.direct_lp + direct_rows[0][static_cast<size_t>(v)];
        child.lm_lp =
            uses_lm ? node.lm_lp + lm_rows[0][static_cast<size_t>(v)] : 0.0;
        if (v == nc::Vocabulary::kEos) {
          OracleSequence seq;
          seq.prefix = child.prefix;
          seq.direct_lp = child.direct_lp;
          seq.lm_lp = child.lm_lp;
          if (uses_channel) {
            nc::TokenIds y(seq.prefix.begin() + 1, seq.prefix.end());
            seq.channel_lp =
                models.channel->logprob(x, y, restrict_set, scratch);
          }
          seq.combined =
              nc::combine_scores(seq.direct_lp, t, seq.channel_lp, seq.lm_lp, s,
                                 weights, config.lm_div_by_t);
          seq.final_score =
              seq.combined + weights.len_reward *
                                 (static_cast<double>(t) / static_cast<double>(s));
          out.push_back(std::move(seq));
        } else if (t < max_len) {
          next_frontier.push_back(std::move(child));
        }
      }
    }
    frontier = std::move(next_frontier);
  }
  return out;
}

inline OracleSequence brute_force_best(const nc::TokenIds& x,
                                       const nc::Models& models,
                                       const nc::CombinationWeights& weights,
                                       const nc::DecodeConfig& config) {
  std::vector<OracleSequence> all =
      enumerate_sequences(x, models, weights, config);
  const OracleSequence* best = nullptr;
  for (const OracleSequence& seq : all) {
    if (best == nullptr || seq.final_score > best->final_score ||
        (seq.final_score == best->final_score &&
         std::lexicographical_compare(seq.prefix.begin(), seq.prefix.end(),
                                      best->prefix.begin(), best->prefix.end()))) {
      best = &seq;
    }
  }
  return *best;
}

}  // namespace nctest

#endif  // NC_TESTS_HELPERS_H_
