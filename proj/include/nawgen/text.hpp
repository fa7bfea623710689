// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NAWGEN_TEXT_HPP
#define NAWGEN_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nawgen {

// Decodes the UTF-8 sequence starting at s[i] and advances i past it.
// Malformed bytes are returned as-is (one byte per call), so processing
// never gets stuck on broken input.
std::uint32_t utf8_next(std::string_view s, std::size_t& i);

void utf8_append(std::string& out, std::uint32_t cp);

// Lowercases and strips accents: ASCII A-Z, the Latin-1 accented vowels,
// macron vowels and n-with-tilde map to their plain lowercase base letter;
// combining marks (U+0300..U+036F) are dropped. C-cedilla is preserved
// (lowercased only) because the orthography tables treat it as a letter
// with its own rewrite.
std::string fold_text(std::string_view s);

// Whitespace-delimited tokens (ASCII whitespace).
std::vector<std::string> split_ws(std::string_view s);
std::size_t count_ws_tokens(std::string_view s);

// Collapses whitespace runs to a single space and trims both ends.
std::string collapse_ws(std::string_view s);

// Uppercases the first character when it is an ASCII lowercase letter.
void capitalize_first(std::string& s);

std::uint64_t fnv1a64(std::string_view s);

std::string read_file(const std::string& path);        // IoError on failure
void write_file(const std::string& path, std::string_view content);

}  // namespace nawgen

#endif  // NAWGEN_TEXT_HPP
