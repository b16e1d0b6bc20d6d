// nc/bleu.cc

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

#include "nc/bleu.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace nc {

namespace {

using NgramCounts = std::map<std::vector<std::string>, int64_t>;

NgramCounts count_ngrams(const StringSentence& tokens, size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string> gram(tokens.begin() + static_cast<ptrdiff_t>(i),
                                  tokens.begin() + static_cast<ptrdiff_t>(i + n));
    counts[gram] += 1;
  }
  return counts;
}

}  // namespace

BleuReport corpus_bleu(const std::vector<StringSentence>& hypotheses,
                       const std::vector<StringSentence>& references,
                       bool smooth) {
  if (hypotheses.size() != references.size()) {
    throw std::invalid_argument("length mismatch");
  }

  BleuReport report;
  for (size_t i = 0; i < hypotheses.size(); ++i) {
    report.hyp_len += static_cast<int64_t>(hypotheses[i].size());
    report.ref_len += static_cast<int64_t>(references[i].size());
    for (size_t n = 1; n <= 4; ++n) {
      const NgramCounts hyp_counts = count_ngrams(hypotheses[i], n);
      const NgramCounts ref_counts = count_ngrams(references[i], n);
      for (const auto& [gram, count] : hyp_counts) {
        report.totals[n - 1] += count;
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) {
          report.matched[n - 1] += std::min(count, it->second);
        }
      }
    }
  }

  bool zero_precision = false;
  double log_precision = 0.0;
  for (size_t n = 0; n < 4; ++n) {
    double m = static_cast<double>(report.matched[n]);
    double t = static_cast<double>(report.totals[n]);
    if (smooth && n >= 1) {
      m += 1.0;
      t += 1.0;
    }
    const double p = t > 0.0 ? m / t : 0.0;
    report.precisions[n] = p;
    if (p <= 0.0) {
      zero_precision = true;
    } else {
      log_precision += 0.25 * std::log(p);
    }
  }

  if (report.hyp_len == 0) {
    report.brevity_penalty = 0.0;
    report.bleu = 0.0;
    return report;
  }
  report.brevity_penalty =
      report.hyp_len >= report.ref_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(report.ref_len) /
                               static_cast<double>(report.hyp_len));
  report.bleu = zero_precision
                    ? 0.0
                    : 100.0 * report.brevity_penalty * std::exp(log_precision);
  return report;
}

}  // namespace nc
