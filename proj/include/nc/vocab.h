// nc/vocab.h

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

#ifndef NC_VOCAB_H_
#define NC_VOCAB_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace nc {

using TokenId = int32_t;
using TokenIds = std::vector<TokenId>;

/// Token sequences as read from whitespace-tokenized text.
using StringSentence = std::vector<std::string>;
using StringCorpus = std::vector<StringSentence>;

struct Specials {
  std::string bos = "<bos>";
  std::string eos = "<eos>";
  std::string unk = "<unk>";
  std::string pad = "<pad>";
};

// Bijective token<->id map with a corpus frequency table. Ids are dense in
// [0, size()). The four special tokens always occupy ids 0..3; remaining ids
// follow first-seen corpus order, so builds are deterministic.
class Vocabulary {
 public:
  static constexpr TokenId kBos = 0;
  static constexpr TokenId kEos = 1;
  static constexpr TokenId kUnk = 2;
  static constexpr TokenId kPad = 3;

  Vocabulary() = default;
  explicit Vocabulary(const Specials& specials);

  // Rebuilds a vocabulary from serialized parts; tokens[0..3] are the
  // specials. Throws when tokens are not distinct or sizes disagree.
  static Vocabulary from_parts(std::vector<std::string> tokens,
                               std::vector<int64_t> freq);

  // Adds a token if unseen and bumps its count by `count`.
  TokenId add(const std::string& token, int64_t count = 1);

  /// Id for `token`, or kUnk for out-of-vocabulary tokens.
  TokenId encode(const std::string& token) const;
  const std::string& decode(TokenId id) const;

  TokenIds encode_sentence(const StringSentence& tokens) const;
  StringSentence decode_sentence(const TokenIds& ids) const;

  int32_t size() const { return static_cast<int32_t>(tokens_.size()); }
  int64_t freq(TokenId id) const { return freq_.at(static_cast<size_t>(id)); }
  bool contains(const std::string& token) const { return ids_.count(token) > 0; }

  // All ids ordered by frequency descending, ties broken by ascending id.
  // This is the total order behind top-F vocabulary reduction.
  const std::vector<TokenId>& freq_rank() const;

  /// The `count` highest-ranked ids (clamped to the vocabulary size).
  std::vector<TokenId> top_frequent(int32_t count) const;

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::vector<int64_t>& freqs() const { return freq_; }

 private:
  std::vector<std::string> tokens_;
  std::vector<int64_t> freq_;
  std::unordered_map<std::string, TokenId> ids_;
  mutable std::vector<TokenId> rank_;  // computed lazily, invalidated by add()
};

// Builds a vocabulary from a tokenized corpus. Specials are injected with
// count 0 when they do not appear in the corpus. Throws std::invalid_argument
// ("empty corpus") when the corpus has no sentences.
Vocabulary build_vocab(const StringCorpus& corpus, const Specials& specials = {});

}  // namespace nc

#endif  // NC_VOCAB_H_
