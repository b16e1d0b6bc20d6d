// nc/vocab.cc

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

#include "nc/vocab.h"

#include <algorithm>
#include <stdexcept>

namespace nc {

Vocabulary::Vocabulary(const Specials& specials) {
  const std::string* names[4] = {&specials.bos, &specials.eos, &specials.unk,
                                 &specials.pad};
  for (const std::string* name : names) {
    if (ids_.count(*name) > 0) {
      throw std::invalid_argument("special tokens must be distinct");
    }
    ids_.emplace(*name, static_cast<TokenId>(tokens_.size()));
    tokens_.push_back(*name);
    freq_.push_back(0);
  }
}

Vocabulary Vocabulary::from_parts(std::vector<std::string> tokens,
                                  std::vector<int64_t> freq) {
  if (tokens.size() != freq.size() || tokens.size() < 4) {
    throw std::invalid_argument("vocabulary parts have wrong shape");
  }
  Vocabulary vocab;
  vocab.tokens_ = std::move(tokens);
  vocab.freq_ = std::move(freq);
  for (size_t i = 0; i < vocab.tokens_.size(); ++i) {
    auto [it, inserted] =
        vocab.ids_.emplace(vocab.tokens_[i], static_cast<TokenId>(i));
    if (!inserted) throw std::invalid_argument("duplicate token in vocabulary");
  }
  return vocab;
}

TokenId Vocabulary::add(const std::string& token, int64_t count) {
  auto it = ids_.find(token);
  if (it != ids_.end()) {
    freq_[static_cast<size_t>(it->second)] += count;
    rank_.clear();
    return it->second;
  }
  TokenId id = static_cast<TokenId>(tokens_.size());
  ids_.emplace(token, id);
  tokens_.push_back(token);
  freq_.push_back(count);
  rank_.clear();
  return id;
}

TokenId Vocabulary::encode(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnk : it->second;
}

const std::string& Vocabulary::decode(TokenId id) const {
  if (id < 0 || id >= size()) {
    throw std::out_of_range("token id out of range");
  }
  return tokens_[static_cast<size_t>(id)];
}

TokenIds Vocabulary::encode_sentence(const StringSentence& tokens) const {
  TokenIds ids;
  ids.reserve(tokens.size());
  for (const std::string& tok : tokens) ids.push_back(encode(tok));
  return ids;
}

StringSentence Vocabulary::decode_sentence(const TokenIds& ids) const {
  StringSentence out;
  out.reserve(ids.size());
  for (TokenId id : ids) out.push_back(decode(id));
  return out;
}

const std::vector<TokenId>& Vocabulary::freq_rank() const {
  if (rank_.empty() && size() > 0) {
    rank_.resize(static_cast<size_t>(size()));
    for (int32_t i = 0; i < size(); ++i) rank_[static_cast<size_t>(i)] = i;
    std::stable_sort(rank_.begin(), rank_.end(), [this](TokenId a, TokenId b) {
      int64_t fa = freq_[static_cast<size_t>(a)];
      int64_t fb = freq_[static_cast<size_t>(b)];
      if (fa != fb) return fa > fb;
      return a < b;
    });
  }
  return rank_;
}

std::vector<TokenId> Vocabulary::top_frequent(int32_t count) const {
  const std::vector<TokenId>& rank = freq_rank();
  count = std::min(count, size());
  if (count < 0) count = 0;
  return std::vector<TokenId>(rank.begin(), rank.begin() + count);
}

Vocabulary build_vocab(const StringCorpus& corpus, const Specials& specials) {
  if (corpus.empty()) {
    throw std::invalid_argument("empty corpus");
  }
  Vocabulary vocab(specials);
  for (const StringSentence& sent : corpus) {
    for (const std::string& tok : sent) vocab.add(tok);
  }
  return vocab;
}

}  // namespace nc
