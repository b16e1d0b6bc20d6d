// nc/tuner.cc

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

#include "nc/tuner.h"

#include <sstream>
#include <stdexcept>

#include "nc/bleu.h"
#include "nc/text_io.h"
#include "nc/util.h"

namespace nc {

int32_t default_samples(Mode mode) {
  switch (mode) {
    case Mode::kDirect: return 10;
    case Mode::kDirectLm: return 100;
    case Mode::kNaiveNc:
    case Mode::kFastNc: return 1000;
  }
  return 0;
}

int32_t TuneSpec::resolved_samples() const {
  return samples.has_value() ? *samples : default_samples(mode);
}

std::vector<CombinationWeights> sample_configs(const TuneSpec& spec) {
  const int32_t n = spec.resolved_samples();
  if (n <= 0) throw std::invalid_argument("sample count must be positive");
  Rng rng(spec.seed);
  std::vector<CombinationWeights> configs;
  configs.reserve(static_cast<size_t>(n));
  for (int32_t i = 0; i < n; ++i) {
    CombinationWeights w;
    w.len_reward = rng.uniform(spec.lo, spec.hi);
    if (mode_uses_lm(spec.mode)) w.lambda2 = rng.uniform(spec.lo, spec.hi);
    if (mode_uses_channel(spec.mode)) w.lambda1 = rng.uniform(spec.lo, spec.hi);
    configs.push_back(w);
  }
  return configs;
}

TuneResult tune(const TuneSpec& spec, const std::vector<TokenIds>& dev_sources,
                const std::vector<StringSentence>& dev_references,
                const Models& models, const DecodeConfig& config,
                const Vocabulary& target_vocab, int32_t workers) {
  if (dev_sources.size() != dev_references.size()) {
    throw std::invalid_argument("misaligned dev files");
  }

  const std::vector<CombinationWeights> configs = sample_configs(spec);
  TuneResult result;
  result.table.resize(configs.size());

  DecodeConfig decode_config = config;
  decode_config.mode = spec.mode;

  // Configs may be evaluated concurrently; every entry lands in its own
  // slot and the argmax scan below runs in index order.
  parallel_for(configs.size(), workers, [&](size_t i) {
    std::vector<StringSentence> hyps;
    hyps.reserve(dev_sources.size());
    for (const TokenIds& x : dev_sources) {
      DecodeResult decoded = decode(x, models, configs[i], decode_config);
      hyps.push_back(output_tokens(target_vocab, decoded.best));
    }
    TuneEntry& entry = result.table[i];
    entry.index = static_cast<int32_t>(i);
    entry.weights = configs[i];
    entry.bleu = corpus_bleu(hyps, dev_references).bleu;
  });

  result.best_index = 0;
  for (size_t i = 0; i < result.table.size(); ++i) {
    if (result.table[i].bleu > result.table[static_cast<size_t>(result.best_index)].bleu) {
      result.best_index = static_cast<int32_t>(i);
    }
  }
  result.best = result.table[static_cast<size_t>(result.best_index)].weights;
  result.best_bleu = result.table[static_cast<size_t>(result.best_index)].bleu;
  return result;
}

std::string tune_table_tsv(Mode mode, const TuneResult& result) {
  std::ostringstream out;
  out << "index\tmode\tlambda1\tlambda2\tlen_reward\tbleu\n";
  out.precision(17);
  for (const TuneEntry& entry : result.table) {
    out << entry.index << '\t' << mode_name(mode) << '\t'
        << entry.weights.lambda1 << '\t' << entry.weights.lambda2 << '\t'
        << entry.weights.len_reward << '\t' << entry.bleu << '\n';
  }
  return out.str();
}

}  // namespace nc
