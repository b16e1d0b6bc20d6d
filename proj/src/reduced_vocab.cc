// nc/reduced_vocab.cc

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

#include "nc/reduced_vocab.h"

#include <algorithm>

namespace nc {

ReducedVocab build_reduced_vocab(const std::vector<TokenIds>& batch_sources,
                                 const Vocabulary& src_vocab, int32_t top_f) {
  const int32_t v = src_vocab.size();
  std::vector<uint8_t> member(static_cast<size_t>(v), 0);
  for (const TokenIds& sent : batch_sources) {
    for (TokenId id : sent) {
      if (id >= 0 && id < v) member[static_cast<size_t>(id)] = 1;
    }
  }
  for (TokenId id : src_vocab.top_frequent(std::max<int32_t>(top_f, 0))) {
    member[static_cast<size_t>(id)] = 1;
  }

  ReducedVocab reduced;
  reduced.vocab_size = v;
  reduced.pos.assign(static_cast<size_t>(v), -1);
  for (TokenId id = 0; id < v; ++id) {
    if (member[static_cast<size_t>(id)]) {
      reduced.pos[static_cast<size_t>(id)] =
          static_cast<int32_t>(reduced.ids.size());
      reduced.ids.push_back(id);
    }
  }
  return reduced;
}

}  // namespace nc
