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

#ifndef BURGER_SYMBOL_HPP_
#define BURGER_SYMBOL_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace burger {

/// The five-letter inventory alphabet: two burger types and three order types.
enum class Symbol : std::uint8_t {
  kBurgerH = 0,
  kBurgerC = 1,
  kOrderH = 2,
  kOrderC = 3,
  kOrderF = 4,
};

inline constexpr std::array<Symbol, 5> kAllSymbols = {
    Symbol::kBurgerH, Symbol::kBurgerC, Symbol::kOrderH, Symbol::kOrderC,
    Symbol::kOrderF};

constexpr bool IsBurger(Symbol s) {
  return s == Symbol::kBurgerH || s == Symbol::kBurgerC;
}
constexpr bool IsOrder(Symbol s) { return !IsBurger(s); }

constexpr std::size_t Index(Symbol s) { return static_cast<std::size_t>(s); }

/// Fixture encoding: 'H','C' burgers; 'h','c','f' orders.
constexpr char ToChar(Symbol s) {
  constexpr char kChars[] = {'H', 'C', 'h', 'c', 'f'};
  return kChars[Index(s)];
}

constexpr std::optional<Symbol> FromChar(char ch) {
  switch (ch) {
    case 'H': return Symbol::kBurgerH;
    case 'C': return Symbol::kBurgerC;
    case 'h': return Symbol::kOrderH;
    case 'c': return Symbol::kOrderC;
    case 'f': return Symbol::kOrderF;
    default: return std::nullopt;
  }
}

/// A finite word X_a ... X_b; `first_index` is a.
struct Word {
  std::vector<Symbol> symbols;
  std::int64_t first_index = 1;

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  std::int64_t last_index() const {
    return first_index + static_cast<std::int64_t>(symbols.size()) - 1;
  }
  Symbol at(std::int64_t i) const {
    return symbols.at(static_cast<std::size_t>(i - first_index));
  }
};

/// Parses the one-character-per-symbol fixture format. Whitespace is ignored;
/// any other character throws std::invalid_argument.
Word ParseWord(std::string_view text, std::int64_t first_index = 1);
std::string FormatWord(const std::vector<Symbol>& symbols);
inline std::string FormatWord(const Word& word) {
  return FormatWord(word.symbols);
}

}  // namespace burger

#endif  // BURGER_SYMBOL_HPP_
