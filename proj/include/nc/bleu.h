// nc/bleu.h

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

#ifndef NC_BLEU_H_
#define NC_BLEU_H_

#include <array>
#include <cstdint>

#include "nc/vocab.h"

namespace nc {

struct BleuReport {
  double bleu = 0.0;  // 0..100
  std::array<double, 4> precisions{};
  double brevity_penalty = 0.0;
  int64_t hyp_len = 0;
  int64_t ref_len = 0;
  std::array<int64_t, 4> matched{};
  std::array<int64_t, 4> totals{};
};

// Corpus-level 4-gram BLEU with clipped counts and the standard brevity
// penalty. Unsmoothed by default: any zero n-gram precision yields BLEU 0.
// With `smooth`, precisions for n >= 2 use (matched+1)/(total+1). Throws
// std::invalid_argument ("length mismatch") on unequal corpus sizes.
BleuReport corpus_bleu(const std::vector<StringSentence>& hypotheses,
                       const std::vector<StringSentence>& references,
                       bool smooth = false);

}  // namespace nc

#endif  // NC_BLEU_H_
