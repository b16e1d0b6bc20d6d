// nc/text_io.cc

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

#include "nc/text_io.h"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace nc {

StringSentence split_tokens(const std::string& line) {
  StringSentence tokens;
  std::istringstream stream(line);
  std::string tok;
  while (stream >> tok) tokens.push_back(tok);
  return tokens;
}

std::string join_tokens(const StringSentence& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<StringSentence> read_token_lines(const std::string& path) {
  std::vector<StringSentence> lines;
  std::string line;
  if (path == "-") {
    while (std::getline(std::cin, line)) lines.push_back(split_tokens(line));
    return lines;
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  while (std::getline(in, line)) lines.push_back(split_tokens(line));
  return lines;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  if (path == "-") {
    for (const std::string& line : lines) std::cout << line << '\n';
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (const std::string& line : lines) out << line << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_text_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string corpus_hash(const std::vector<StringSentence>& corpus) {
  uint64_t hash = 1469598103934665603ull;
  auto mix = [&hash](const char* data, size_t len) {
    for (size_t i = 0; i < len; ++i) {
      hash ^= static_cast<unsigned char>(data[i]);
      hash *= 1099511628211ull;
    }
  };
  for (const StringSentence& sent : corpus) {
    for (const std::string& tok : sent) {
      mix(tok.data(), tok.size());
      mix(" ", 1);
    }
    mix("\n", 1);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

TokenIds encode_source(const Vocabulary& vocab, const StringSentence& tokens) {
  TokenIds ids = vocab.encode_sentence(tokens);
  ids.push_back(Vocabulary::kEos);
  return ids;
}

StringSentence output_tokens(const Vocabulary& vocab, const TokenIds& prefix) {
  StringSentence out;
  size_t begin = prefix.empty() ? 0 : (prefix[0] == Vocabulary::kBos ? 1 : 0);
  size_t end = prefix.size();
  if (end > begin && prefix[end - 1] == Vocabulary::kEos) --end;
  for (size_t i = begin; i < end; ++i) out.push_back(vocab.decode(prefix[i]));
  return out;
}

}  // namespace nc
