// nc/reduced_vocab.h

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

#ifndef NC_REDUCED_VOCAB_H_
#define NC_REDUCED_VOCAB_H_

#include <cstdint>
#include <vector>

#include "nc/vocab.h"

namespace nc {

// Reduced output vocabulary for channel scoring: the source-token types of a
// batch plus the top-F most frequent source types. Ids are kept sorted so
// restricted and unrestricted scoring walk the support in the same order.
struct ReducedVocab {
  std::vector<TokenId> ids;   // sorted ascending
  std::vector<int32_t> pos;   // id -> index into ids, or -1
  int32_t vocab_size = 0;     // |V| of the source vocabulary

  int32_t size() const { return static_cast<int32_t>(ids.size()); }
  bool contains(TokenId id) const {
    return id >= 0 && id < vocab_size && pos[static_cast<size_t>(id)] >= 0;
  }
  int32_t index_of(TokenId id) const { return pos[static_cast<size_t>(id)]; }
};

// Union of all source-token ids in `batch_sources` with the `top_f` most
// frequent ids of `src_vocab` (by freq_rank). top_f >= |V| yields R = V.
ReducedVocab build_reduced_vocab(const std::vector<TokenIds>& batch_sources,
                                 const Vocabulary& src_vocab, int32_t top_f);

}  // namespace nc

#endif  // NC_REDUCED_VOCAB_H_
