// Copyright 2026 The Burgerstack Authors.
//
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

#include "burger/symbol.hpp"

#include <cctype>
#include <stdexcept>

namespace burger {

Word ParseWord(std::string_view text, std::int64_t first_index) {
  Word word;
  word.first_index = first_index;
  word.symbols.reserve(text.size());
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    const auto s = FromChar(ch);
    if (!s) {
      throw std::invalid_argument(std::string("invalid symbol character '") +
                                  ch + "'");
    }
    word.symbols.push_back(*s);
  }
  return word;
}

std::string FormatWord(const std::vector<Symbol>& symbols) {
  std::string out;
  out.reserve(symbols.size());
  for (Symbol s : symbols) out.push_back(ToChar(s));
  return out;
}

}  // namespace burger
