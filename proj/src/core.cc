// nc/core.cc

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

#include "nc/core.h"

#include <stdexcept>

namespace nc {

Mode parse_mode(const std::string& name) {
  if (name == "dir" || name == "direct") return Mode::kDirect;
  if (name == "dir+lm" || name == "direct+lm") return Mode::kDirectLm;
  if (name == "naive-nc") return Mode::kNaiveNc;
  if (name == "fast-nc") return Mode::kFastNc;
  throw std::invalid_argument("unknown mode: " + name);
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::kDirect: return "dir";
    case Mode::kDirectLm: return "dir+lm";
    case Mode::kNaiveNc: return "naive-nc";
    case Mode::kFastNc: return "fast-nc";
  }
  return "?";
}

bool mode_uses_lm(Mode mode) { return mode != Mode::kDirect; }

bool mode_uses_channel(Mode mode) {
  return mode == Mode::kNaiveNc || mode == Mode::kFastNc;
}

double combine_scores(double direct_lp, int32_t t, double channel_lp,
                      double lm_lp, int32_t s, const CombinationWeights& weights,
                      bool lm_div_by_t) {
  if (t <= 0 || s <= 0) {
    throw std::invalid_argument("zero length");
  }
  const double td = static_cast<double>(t);
  const double sd = static_cast<double>(s);
  double score = (1.0 / td) * direct_lp;
  score += (weights.lambda1 / sd) * channel_lp;
  score += (weights.lambda2 / (lm_div_by_t ? td : sd)) * lm_lp;
  return score;
}

}  // namespace nc
