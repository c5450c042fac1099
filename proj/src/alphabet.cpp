#include "dct/alphabet.hpp"

#include <limits>
#include <stdexcept>

#include "dct/error.hpp"

namespace dct {

void check_alphabet_size(int alphabet_size) {
  if (alphabet_size < kMinAlphabetSize || alphabet_size > kMaxAlphabetSize) {
    throw std::invalid_argument("alphabet size must be in [2, 32], got " +
                                std::to_string(alphabet_size));
  }
}

bool is_valid(Symbol symbol, int alphabet_size) noexcept {
  if (alphabet_size < kMinAlphabetSize || alphabet_size > kMaxAlphabetSize) return false;
  if (symbol.is_base()) return symbol.value() < alphabet_size;
  if (!symbol.memory().is_subset_of(SymbolSet::full(alphabet_size))) return false;
  const Tape tape = symbol.tape();
  if (tape.is_removed()) return true;
  return tape.value() < alphabet_size && symbol.memory().contains(tape.value());
}

std::uint64_t alphabet_cardinality(int alphabet_size) {
  check_alphabet_size(alphabet_size);
  const auto k = static_cast<std::uint64_t>(alphabet_size);
  // Each tape symbol s pairs with the 2^(k-1) memories containing s; X pairs
  // with all 2^k memories.
  if (k >= 62) return std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t per_counter = k * (std::uint64_t{1} << (k - 1)) + (std::uint64_t{1} << k);
  return k + 2 * per_counter;
}

std::vector<Symbol> enumerate_alphabet(int alphabet_size) {
  check_alphabet_size(alphabet_size);
  if (alphabet_size > 20) {
    throw std::length_error("alphabet of size " + std::to_string(alphabet_size) +
                            " is too large to materialize");
  }
  std::vector<Symbol> out;
  out.reserve(alphabet_cardinality(alphabet_size));
  for (int s = 0; s < alphabet_size; ++s) out.push_back(Symbol::base(s));

  const std::uint32_t mask_end = std::uint32_t{1} << alphabet_size;
  for (Counter c : {Counter::Odd, Counter::Even}) {
    for (int t = 0; t <= alphabet_size; ++t) {
      const Tape tape = t == alphabet_size ? Tape::removed() : Tape::of(t);
      for (std::uint32_t m = 0; m < mask_end; ++m) {
        const Symbol sym = Symbol::triple(c, tape, SymbolSet::from_mask(m));
        if (is_valid(sym, alphabet_size)) out.push_back(sym);
      }
    }
  }
  return out;
}

char symbol_glyph(int value) {
  if (value < 0 || value >= kMaxAlphabetSize) {
    throw std::out_of_range("no glyph for symbol " + std::to_string(value));
  }
  return value < 10 ? static_cast<char>('0' + value) : static_cast<char>('a' + value - 10);
}

int glyph_value(char c) noexcept {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c < 'a' + (kMaxAlphabetSize - 10)) return c - 'a' + 10;
  return -1;
}

std::string to_string(Counter counter) { return counter == Counter::Odd ? "o" : "*"; }

std::string to_string(SymbolSet set) {
  if (set.empty()) return "-";
  std::string out;
  for (int s = 0; s < kMaxAlphabetSize; ++s) {
    if (set.contains(s)) out.push_back(symbol_glyph(s));
  }
  return out;
}

std::string to_string(Symbol symbol) {
  if (symbol.is_base()) return std::string(1, symbol_glyph(symbol.value()));
  std::string out = "(";
  out += to_string(symbol.counter());
  out += '|';
  out += symbol.tape().is_removed() ? 'X' : symbol_glyph(symbol.tape().value());
  out += '|';
  out += to_string(symbol.memory());
  out += ')';
  return out;
}

namespace {

int expect_glyph(char c, int alphabet_size, std::size_t column) {
  const int v = glyph_value(c);
  if (v < 0) throw ParseError(std::string("unexpected character '") + c + "'", 0, column);
  if (v >= alphabet_size) {
    throw ParseError(std::string("symbol '") + c + "' outside alphabet of size " +
                         std::to_string(alphabet_size),
                     0, column);
  }
  return v;
}

}  // namespace

Symbol parse_symbol(std::string_view text, int alphabet_size) {
  check_alphabet_size(alphabet_size);
  if (text.empty()) throw ParseError("empty symbol");
  if (text.size() == 1) return Symbol::base(expect_glyph(text[0], alphabet_size, 1));

  // (c|t|M)
  if (text.front() != '(' || text.back() != ')' || text.size() < 7 || text[2] != '|' ||
      text[4] != '|') {
    throw ParseError("malformed symbol '" + std::string(text) + "'");
  }
  Counter counter;
  switch (text[1]) {
    case 'o': counter = Counter::Odd; break;
    case '*': counter = Counter::Even; break;
    default: throw ParseError("bad counter '" + std::string(1, text[1]) + "'", 0, 2);
  }
  const Tape tape = text[3] == 'X' ? Tape::removed() : Tape::of(expect_glyph(text[3], alphabet_size, 4));

  const std::string_view mem = text.substr(5, text.size() - 6);
  SymbolSet memory;
  if (mem != "-") {
    int previous = -1;
    for (std::size_t i = 0; i < mem.size(); ++i) {
      const int v = expect_glyph(mem[i], alphabet_size, 6 + i);
      if (v <= previous) throw ParseError("memory digits must be strictly ascending", 0, 6 + i);
      previous = v;
      memory = memory.with(v);
    }
  }
  const Symbol sym = Symbol::triple(counter, tape, memory);
  if (!is_valid(sym, alphabet_size)) {
    throw ParseError("invalid triplet '" + std::string(text) + "': tape symbol not in memory");
  }
  return sym;
}

}  // namespace dct
