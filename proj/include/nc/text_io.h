// nc/text_io.h

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

#ifndef NC_TEXT_IO_H_
#define NC_TEXT_IO_H_

#include <string>
#include <vector>

#include "nc/vocab.h"

namespace nc {

/// Splits on ASCII whitespace; bytes are otherwise passed through untouched.
StringSentence split_tokens(const std::string& line);

std::string join_tokens(const StringSentence& tokens);

// Reads newline-delimited, whitespace-tokenized sentences. "-" reads stdin.
// Throws std::runtime_error on unreadable files.
std::vector<StringSentence> read_token_lines(const std::string& path);

/// Writes one line per entry. "-" writes stdout.
void write_lines(const std::string& path, const std::vector<std::string>& lines);

void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a over the corpus lines, as a hex string; used for model metadata.
std::string corpus_hash(const std::vector<StringSentence>& corpus);

/// Encodes a source sentence and appends EOS, the decoder's input form.
TokenIds encode_source(const Vocabulary& vocab, const StringSentence& tokens);

/// Decoded surface form of a hypothesis: BOS and the trailing EOS stripped.
StringSentence output_tokens(const Vocabulary& vocab, const TokenIds& prefix);

}  // namespace nc

#endif  // NC_TEXT_IO_H_
