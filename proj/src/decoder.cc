// nc/decoder.cc

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

#include "nc/decoder.h"

#include <algorithm>
#include <stdexcept>

#include "nc/util.h"

namespace nc {

namespace {

bool hyp_before(const Hypothesis& a, const Hypothesis& b) {
  if (a.combined != b.combined) return a.combined > b.combined;
  if (a.prefix != b.prefix) {
    return std::lexicographical_compare(a.prefix.begin(), a.prefix.end(),
                                        b.prefix.begin(), b.prefix.end());
  }
  return a.stamp < b.stamp;
}

bool finished_before(const FinishedHypothesis& a, const FinishedHypothesis& b) {
  if (a.final_score != b.final_score) return a.final_score > b.final_score;
  if (a.hyp.prefix != b.hyp.prefix) {
    return std::lexicographical_compare(a.hyp.prefix.begin(), a.hyp.prefix.end(),
                                        b.hyp.prefix.begin(), b.hyp.prefix.end());
  }
  return a.hyp.stamp < b.hyp.stamp;
}

double final_score(const Hypothesis& hyp, int32_t s,
                   const CombinationWeights& weights) {
  return hyp.combined + weights.len_reward * (static_cast<double>(hyp.length()) /
                                              static_cast<double>(s));
}

void validate(const TokenIds& x, const Models& models,
              const DecodeConfig& config) {
  if (x.empty()) throw std::invalid_argument("empty source");
  if (config.k1 < 1) throw std::invalid_argument("beam size must be >= 1");
  if (config.k2 < 1) throw std::invalid_argument("k2 must be >= 1");
  if (config.top_f < 0) throw std::invalid_argument("top_f must be >= 0");
  if (models.direct == nullptr) {
    throw std::invalid_argument("missing model for mode");
  }
  if (mode_uses_lm(config.mode) && models.lm == nullptr) {
    throw std::invalid_argument("missing model for mode");
  }
  if (mode_uses_channel(config.mode) && models.channel == nullptr) {
    throw std::invalid_argument("missing model for mode");
  }
}

}  // namespace

std::vector<TokenId> select_candidates(const std::vector<double>& scores,
                                       int32_t k2) {
  if (k2 < 1) throw std::invalid_argument("k2 must be >= 1");
  const int32_t v = static_cast<int32_t>(scores.size());
  const int32_t k = std::min(k2, v);
  std::vector<TokenId> ids(static_cast<size_t>(v));
  for (int32_t i = 0; i < v; ++i) ids[static_cast<size_t>(i)] = i;
  std::partial_sort(ids.begin(), ids.begin() + k, ids.end(),
                    [&scores](TokenId a, TokenId b) {
                      const double sa = scores[static_cast<size_t>(a)];
                      const double sb = scores[static_cast<size_t>(b)];
                      if (sa != sb) return sa > sb;
                      return a < b;
                    });
  ids.resize(static_cast<size_t>(k));
  return ids;
}

void rescore_candidates(std::vector<Hypothesis>& candidates, const TokenIds& x,
                        const ChannelScorer& channel,
                        const CombinationWeights& weights,
                        const ReducedVocab* restrict_set, int32_t s,
                        bool lm_div_by_t, CostCounters& counters,
                        ChannelWorkspace* workspace) {
  ChannelWorkspace local;
  ChannelWorkspace& ws = workspace ? *workspace : local;
  for (Hypothesis& cand : candidates) {
    TokenIds y(cand.prefix.begin() + 1, cand.prefix.end());
    cand.channel_lp = channel.logprob(x, y, restrict_set, counters, &ws);
    cand.combined = combine_scores(cand.direct_lp, cand.length(), cand.channel_lp,
                                   cand.lm_lp, s, weights, lm_div_by_t);
  }
}

DecodeResult decode(const TokenIds& x, const Models& models,
                    const CombinationWeights& weights,
                    const DecodeConfig& config) {
  validate(x, models, config);

  const int32_t s = static_cast<int32_t>(x.size());
  const int32_t max_len = config.max_len(s);
  const int32_t vocab_size = models.direct->target_vocab().size();
  const int32_t k2 = std::min(config.k2, vocab_size);
  const bool uses_lm = mode_uses_lm(config.mode);
  const bool uses_channel = mode_uses_channel(config.mode);

  ReducedVocab reduced;
  const ReducedVocab* restrict_set = nullptr;
  if (config.mode == Mode::kFastNc && !config.full_vocab) {
    reduced = build_reduced_vocab({x}, models.channel->source_vocab(),
                                  config.top_f);
    restrict_set = &reduced;
  }

  DecodeResult result;
  result.support_size = restrict_set
                            ? restrict_set->size()
                            : (uses_channel ? models.channel->source_vocab().size()
                                            : 0);

  BeamState state;
  Hypothesis root;
  root.prefix = {Vocabulary::kBos};
  state.active.push_back(root);

  uint64_t next_stamp = 1;
  ChannelWorkspace ws;
  std::vector<TokenIds> prefixes;
  std::vector<std::vector<double>> direct_out;
  std::vector<std::vector<double>> lm_out;
  std::vector<double> selection_scores;
  std::vector<Hypothesis> candidates;

  for (int32_t t = 1; t <= max_len && !state.active.empty(); ++t) {
    state.step = t;
    const CostCounters before = state.counters;

    prefixes.clear();
    for (const Hypothesis& hyp : state.active) prefixes.push_back(hyp.prefix);
    models.direct->next_logprobs(x, prefixes, direct_out, state.counters);
    if (uses_lm) models.lm->next_logprobs(prefixes, lm_out, state.counters);

    candidates.clear();
    for (size_t b = 0; b < state.active.size(); ++b) {
      const Hypothesis& parent = state.active[b];
      const std::vector<double>& direct_row = direct_out[b];

      // k2 pre-selection: by the direct model alone, except in dir+lm mode
      // where there is no rescoring pass and the selection score is the
      // fused (1/t) direct + (lambda2/s) lm combination.
      std::vector<TokenId> picked;
      if (config.mode == Mode::kDirectLm) {
        selection_scores.resize(static_cast<size_t>(vocab_size));
        for (int32_t v = 0; v < vocab_size; ++v) {
          selection_scores[static_cast<size_t>(v)] = combine_scores(
              parent.direct_lp + direct_row[static_cast<size_t>(v)], t, 0.0,
              parent.lm_lp + lm_out[b][static_cast<size_t>(v)], s, weights,
              config.lm_div_by_t);
        }
        picked = select_candidates(selection_scores, k2);
      } else {
        picked = select_candidates(direct_row, k2);
      }

      for (TokenId v : picked) {
        Hypothesis cand;
        cand.prefix = parent.prefix;
        cand.prefix.push_back(v);
        cand.direct_lp = parent.direct_lp + direct_row[static_cast<size_t>(v)];
        cand.lm_lp = uses_lm ? parent.lm_lp + lm_out[b][static_cast<size_t>(v)]
                             : 0.0;
        cand.stamp = next_stamp++;
        candidates.push_back(std::move(cand));
      }
    }

    if (uses_channel) {
      rescore_candidates(candidates, x, *models.channel, weights, restrict_set,
                         s, config.lm_div_by_t, state.counters, &ws);
    } else {
      for (Hypothesis& cand : candidates) {
        cand.combined = combine_scores(cand.direct_lp, t, 0.0, cand.lm_lp, s,
                                       weights, config.lm_div_by_t);
      }
    }

    StepCost cost;
    cost.step = t;
    cost.num_candidates = static_cast<int32_t>(candidates.size());
    cost.delta = state.counters;
    cost.delta.direct_evals -= before.direct_evals;
    cost.delta.lm_evals -= before.lm_evals;
    cost.delta.channel_evals -= before.channel_evals;
    cost.delta.channel_calls -= before.channel_calls;
    result.steps.push_back(cost);

    // Prune: walk candidates best-first; EOS candidates finish and their
    // beam slots are backfilled by the next-ranked candidates.
    std::sort(candidates.begin(), candidates.end(), hyp_before);
    state.active.clear();
    for (Hypothesis& cand : candidates) {
      if (static_cast<int32_t>(state.active.size()) >= config.k1) break;
      if (cand.prefix.back() == Vocabulary::kEos) {
        cand.finished = true;
        const double fs = final_score(cand, s, weights);
        state.finished.push_back({std::move(cand), fs});
      } else {
        state.active.push_back(std::move(cand));
      }
    }

    if (static_cast<int32_t>(state.finished.size()) >= config.k1) break;
  }

  result.finished = state.finished;
  result.counters = state.counters;

  const FinishedHypothesis* best = nullptr;
  for (const FinishedHypothesis& fin : result.finished) {
    if (best == nullptr || finished_before(fin, *best)) best = &fin;
  }
  if (best != nullptr) {
    result.best = best->hyp.prefix;
    result.best_combined = best->hyp.combined;
    result.best_final = best->final_score;
    return result;
  }

  // Nothing finished before the length cap: fall back to the best active
  // hypothesis, ranked with the same finalization score.
  result.degenerate = true;
  if (state.active.empty() || state.active[0].length() == 0) {
    result.best = {Vocabulary::kBos};
    return result;
  }
  const Hypothesis* best_active = nullptr;
  double best_fs = 0.0;
  for (const Hypothesis& hyp : state.active) {
    const double fs = final_score(hyp, s, weights);
    FinishedHypothesis probe{hyp, fs};
    if (best_active == nullptr ||
        finished_before(probe, FinishedHypothesis{*best_active, best_fs})) {
      best_active = &hyp;
      best_fs = fs;
    }
  }
  result.best = best_active->prefix;
  result.best_combined = best_active->combined;
  result.best_final = best_fs;
  return result;
}

std::vector<DecodeResult> decode_batch(const std::vector<TokenIds>& sources,
                                       const Models& models,
                                       const CombinationWeights& weights,
                                       const DecodeConfig& config,
                                       int32_t workers) {
  std::vector<DecodeResult> results(sources.size());
  parallel_for(sources.size(), workers, [&](size_t i) {
    results[i] = decode(sources[i], models, weights, config);
  });
  return results;
}

}  // namespace nc
