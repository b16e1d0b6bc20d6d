// nc/model_file.cc

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

#include "nc/model_file.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nc/text_io.h"
#include "nc/util.h"

namespace nc {

namespace {

using nlohmann::json;

json vocab_to_json(const Vocabulary& vocab) {
  return json{{"tokens", vocab.tokens()}, {"freq", vocab.freqs()}};
}

std::shared_ptr<const Vocabulary> vocab_from_json(const json& j) {
  return std::make_shared<Vocabulary>(Vocabulary::from_parts(
      j.at("tokens").get<std::vector<std::string>>(),
      j.at("freq").get<std::vector<int64_t>>()));
}

json lm_to_json(const NGramLM& lm) {
  json contexts = json::array();
  for (const auto& [ctx, cc] : lm.counts()) {
    json next = json::array();
    for (const auto& [tok, count] : cc.next) {
      next.push_back(json::array({tok, count}));
    }
    contexts.push_back(json{{"ctx", ctx}, {"next", std::move(next)}});
  }
  return json{{"order", lm.order()}, {"alpha", lm.alpha()},
              {"contexts", std::move(contexts)}};
}

std::shared_ptr<const NGramLM> lm_from_json(
    const json& j, std::shared_ptr<const Vocabulary> vocab) {
  NGramLM::CountTable counts;
  for (const json& entry : j.at("contexts")) {
    NGramLM::ContextCounts cc;
    for (const json& pair : entry.at("next")) {
      const int64_t count = pair.at(1).get<int64_t>();
      cc.next[pair.at(0).get<TokenId>()] = count;
      cc.total += count;
    }
    counts[entry.at("ctx").get<TokenIds>()] = std::move(cc);
  }
  return std::make_shared<NGramLM>(std::move(vocab), j.at("order").get<int32_t>(),
                                   j.at("alpha").get<double>(), std::move(counts));
}

json channel_to_json(const Ibm1Channel& channel) {
  return json{{"table", channel.table()}, {"em_loglik", channel.em_loglik()}};
}

json direct_to_json(const LexMixDirect& direct) {
  json bigram = json::array();
  for (const auto& [prev, row] : direct.bigram()) {
    json next = json::array();
    for (const auto& [tok, count] : row.next) {
      next.push_back(json::array({tok, count}));
    }
    bigram.push_back(json{{"prev", prev}, {"next", std::move(next)}});
  }
  return json{{"mu", direct.mu()},
              {"alpha", direct.alpha()},
              {"fprob", direct.fprob()},
              {"bigram", std::move(bigram)}};
}

std::shared_ptr<const LexMixDirect> direct_from_json(
    const json& j, std::shared_ptr<const Vocabulary> src,
    std::shared_ptr<const Vocabulary> tgt) {
  LexMixDirect::BigramTable bigram;
  for (const json& entry : j.at("bigram")) {
    LexMixDirect::BigramRow row;
    for (const json& pair : entry.at("next")) {
      const int64_t count = pair.at(1).get<int64_t>();
      row.next[pair.at(0).get<TokenId>()] = count;
      row.total += count;
    }
    bigram[entry.at("prev").get<TokenId>()] = std::move(row);
  }
  return std::make_shared<LexMixDirect>(
      std::move(src), std::move(tgt), j.at("fprob").get<std::vector<double>>(),
      std::move(bigram), j.at("mu").get<double>(), j.at("alpha").get<double>());
}

}  // namespace

ModelFile train_model_file(const std::vector<StringSentence>& src_corpus,
                           const std::vector<StringSentence>& tgt_corpus,
                           const TrainOptions& options) {
  if (src_corpus.size() != tgt_corpus.size()) {
    throw std::invalid_argument("misaligned corpora");
  }
  if (options.ensemble < 1) {
    throw std::invalid_argument("ensemble needs at least one member");
  }

  ModelFile model;
  model.options = options;
  model.src_corpus_hash = corpus_hash(src_corpus);
  model.tgt_corpus_hash = corpus_hash(tgt_corpus);

  auto src_vocab = std::make_shared<Vocabulary>(build_vocab(src_corpus));
  auto tgt_vocab = std::make_shared<Vocabulary>(build_vocab(tgt_corpus));
  model.src_vocab = src_vocab;
  model.tgt_vocab = tgt_vocab;

  ParallelCorpus pairs;
  pairs.reserve(src_corpus.size());
  std::vector<TokenIds> tgt_sentences;
  tgt_sentences.reserve(tgt_corpus.size());
  for (size_t i = 0; i < src_corpus.size(); ++i) {
    pairs.emplace_back(src_vocab->encode_sentence(src_corpus[i]),
                       tgt_vocab->encode_sentence(tgt_corpus[i]));
    tgt_sentences.push_back(pairs.back().second);
  }

  model.lm = std::make_shared<NGramLM>(train_ngram(
      tgt_sentences, tgt_vocab, options.ngram_order, options.alpha));
  model.channel = std::make_shared<Ibm1Channel>(train_ibm1(
      pairs, src_vocab, tgt_vocab, options.em_iters, options.smoothing));

  // Member 0 trains on the full corpus; further members train on bootstrap
  // resamples drawn from seed + member index.
  for (int32_t m = 0; m < options.ensemble; ++m) {
    const ParallelCorpus* train_pairs = &pairs;
    ParallelCorpus resampled;
    if (m > 0) {
      Rng rng(options.seed + static_cast<uint64_t>(m));
      resampled.reserve(pairs.size());
      for (size_t i = 0; i < pairs.size(); ++i) {
        resampled.push_back(pairs[static_cast<size_t>(
            rng.uniform_int(0, static_cast<int64_t>(pairs.size()) - 1))]);
      }
      train_pairs = &resampled;
    }
    model.direct_members.push_back(std::make_shared<LexMixDirect>(
        train_direct(*train_pairs, src_vocab, tgt_vocab, options.em_iters,
                     options.mu, options.alpha, options.smoothing)));
  }
  model.direct = std::make_shared<DirectEnsemble>(model.direct_members);
  return model;
}

std::string model_file_to_json(const ModelFile& model) {
  json members = json::array();
  for (const auto& member : model.direct_members) {
    members.push_back(direct_to_json(*member));
  }
  const json j{
      {"format_version", ModelFile::kFormatVersion},
      {"src_vocab", vocab_to_json(*model.src_vocab)},
      {"tgt_vocab", vocab_to_json(*model.tgt_vocab)},
      {"lm", lm_to_json(*model.lm)},
      {"channel", channel_to_json(*model.channel)},
      {"direct_members", std::move(members)},
      {"meta",
       {{"src_corpus_hash", model.src_corpus_hash},
        {"tgt_corpus_hash", model.tgt_corpus_hash},
        {"em_iters", model.options.em_iters},
        {"ngram_order", model.options.ngram_order},
        {"alpha", model.options.alpha},
        {"mu", model.options.mu},
        {"smoothing", model.options.smoothing},
        {"ensemble", model.options.ensemble},
        {"seed", model.options.seed}}}};
  return j.dump(1);
}

ModelFile model_file_from_json(const std::string& text) {
  const json j = json::parse(text);
  const int32_t version = j.at("format_version").get<int32_t>();
  if (version != ModelFile::kFormatVersion) {
    throw std::runtime_error("unsupported model file version " +
                             std::to_string(version));
  }

  ModelFile model;
  auto src_vocab = vocab_from_json(j.at("src_vocab"));
  auto tgt_vocab = vocab_from_json(j.at("tgt_vocab"));
  model.src_vocab = src_vocab;
  model.tgt_vocab = tgt_vocab;
  model.lm = lm_from_json(j.at("lm"), tgt_vocab);
  model.channel = std::make_shared<Ibm1Channel>(
      src_vocab, tgt_vocab, j.at("channel").at("table").get<std::vector<double>>(),
      j.at("channel").at("em_loglik").get<std::vector<double>>());
  for (const json& member : j.at("direct_members")) {
    model.direct_members.push_back(direct_from_json(member, src_vocab, tgt_vocab));
  }
  model.direct = std::make_shared<DirectEnsemble>(model.direct_members);

  const json& meta = j.at("meta");
  model.src_corpus_hash = meta.at("src_corpus_hash").get<std::string>();
  model.tgt_corpus_hash = meta.at("tgt_corpus_hash").get<std::string>();
  model.options.em_iters = meta.at("em_iters").get<int32_t>();
  model.options.ngram_order = meta.at("ngram_order").get<int32_t>();
  model.options.alpha = meta.at("alpha").get<double>();
  model.options.mu = meta.at("mu").get<double>();
  model.options.smoothing = meta.at("smoothing").get<double>();
  model.options.ensemble = meta.at("ensemble").get<int32_t>();
  model.options.seed = meta.at("seed").get<uint64_t>();
  return model;
}

void save_model_file(const ModelFile& model, const std::string& path) {
  write_text_file(path, model_file_to_json(model));
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_file_from_json(buffer.str());
}

}  // namespace nc
