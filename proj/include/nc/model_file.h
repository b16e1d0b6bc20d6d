// nc/model_file.h

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

#ifndef NC_MODEL_FILE_H_
#define NC_MODEL_FILE_H_

#include <memory>
#include <string>

#include "nc/decoder.h"
#include "nc/direct.h"
#include "nc/ibm1.h"
#include "nc/ngram_lm.h"

namespace nc {

struct TrainOptions {
  int32_t em_iters = 5;
  int32_t ngram_order = 3;
  double alpha = 0.1;
  double mu = 0.7;
  double smoothing = 1e-6;
  int32_t ensemble = 1;
  uint64_t seed = 0;
};

// All trained scorers plus their vocabularies, persisted as one versioned
// JSON file. Loading a saved file reproduces scoring behavior bit for bit;
// a format_version other than kFormatVersion is rejected.
struct ModelFile {
  static constexpr int32_t kFormatVersion = 1;

  std::shared_ptr<const Vocabulary> src_vocab;
  std::shared_ptr<const Vocabulary> tgt_vocab;
  std::shared_ptr<const NGramLM> lm;
  std::shared_ptr<const Ibm1Channel> channel;
  std::vector<std::shared_ptr<const LexMixDirect>> direct_members;
  std::shared_ptr<const DirectEnsemble> direct;

  std::string src_corpus_hash;
  std::string tgt_corpus_hash;
  TrainOptions options;

  /// Non-owning scorer view for the decoder.
  Models models() const { return Models{direct.get(), lm.get(), channel.get()}; }
};

// Trains every toy scorer on a line-aligned parallel corpus. Ensemble
// members beyond the first train on seeded bootstrap resamples of the
// corpus, which is what makes members with different seeds differ. Throws
// std::invalid_argument ("misaligned corpora") on unequal corpus sizes.
ModelFile train_model_file(const std::vector<StringSentence>& src_corpus,
                           const std::vector<StringSentence>& tgt_corpus,
                           const TrainOptions& options);

/// Serializes to versioned JSON; identical inputs produce identical bytes.
std::string model_file_to_json(const ModelFile& model);
ModelFile model_file_from_json(const std::string& text);

void save_model_file(const ModelFile& model, const std::string& path);
ModelFile load_model_file(const std::string& path);

}  // namespace nc

#endif  // NC_MODEL_FILE_H_
