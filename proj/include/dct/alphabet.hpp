#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dct {

// A memory subset must fit in one 32-bit word.
inline constexpr int kMaxAlphabetSize = 32;
inline constexpr int kMinAlphabetSize = 2;

// Throws std::invalid_argument unless 2 <= k <= 32.
void check_alphabet_size(int alphabet_size);

// Top layer of an intermediate symbol: the parity of the current cycle.
// Odd renders as `o`, Even as `*`.
enum class Counter : std::uint8_t { Odd = 0, Even = 1 };

constexpr Counter flip_counter(Counter c) noexcept {
  return c == Counter::Odd ? Counter::Even : Counter::Odd;
}

// Bottom layer: the subset of base symbols harvested by the moving head.
class SymbolSet {
 public:
  constexpr SymbolSet() noexcept = default;

  static constexpr SymbolSet from_mask(std::uint32_t mask) noexcept {
    SymbolSet s;
    s.mask_ = mask;
    return s;
  }
  static constexpr SymbolSet single(int symbol) noexcept {
    return from_mask(std::uint32_t{1} << symbol);
  }
  // {0, ..., alphabet_size - 1}
  static constexpr SymbolSet full(int alphabet_size) noexcept {
    return from_mask(alphabet_size >= 32 ? ~std::uint32_t{0}
                                         : (std::uint32_t{1} << alphabet_size) - 1);
  }

  constexpr std::uint32_t mask() const noexcept { return mask_; }
  constexpr bool contains(int symbol) const noexcept { return (mask_ >> symbol) & 1u; }
  constexpr SymbolSet with(int symbol) const noexcept {
    return from_mask(mask_ | (std::uint32_t{1} << symbol));
  }
  constexpr int size() const noexcept { return std::popcount(mask_); }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr bool is_subset_of(SymbolSet other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  // Smallest element; only meaningful when non-empty.
  constexpr int first() const noexcept { return std::countr_zero(mask_); }

  friend constexpr bool operator==(SymbolSet, SymbolSet) noexcept = default;

 private:
  std::uint32_t mask_ = 0;
};

// Middle layer: the symbol still present at this position, or X once it
// has been moved into a memory.
class Tape {
 public:
  static constexpr Tape removed() noexcept { return Tape(kRemoved); }
  static constexpr Tape of(int symbol) noexcept { return Tape(static_cast<std::uint8_t>(symbol)); }

  constexpr bool is_removed() const noexcept { return raw_ == kRemoved; }
  constexpr int value() const noexcept { return raw_; }

  friend constexpr bool operator==(Tape, Tape) noexcept = default;

 private:
  static constexpr std::uint8_t kRemoved = 0xFF;
  constexpr explicit Tape(std::uint8_t raw) noexcept : raw_(raw) {}
  std::uint8_t raw_;
};

// A cell value: either a base symbol of S or an intermediate triplet
// (counter, tape, memory). Eight bytes, trivially copyable, and every
// logical value has exactly one representation so == is structural.
class Symbol {
 public:
  constexpr Symbol() noexcept : Symbol(base(0)) {}

  static constexpr Symbol base(int value) noexcept {
    return Symbol(false, Counter::Odd, Tape::of(value), SymbolSet{});
  }
  static constexpr Symbol triple(Counter counter, Tape tape, SymbolSet memory) noexcept {
    return Symbol(true, counter, tape, memory);
  }

  constexpr bool is_base() const noexcept { return !triple_; }
  constexpr bool is_triple() const noexcept { return triple_; }

  // Base symbols only.
  constexpr int value() const noexcept { return tape_.value(); }

  // Triplets only.
  constexpr Counter counter() const noexcept { return counter_; }
  constexpr Tape tape() const noexcept { return tape_; }
  constexpr SymbolSet memory() const noexcept { return memory_; }

  friend constexpr bool operator==(Symbol, Symbol) noexcept = default;

 private:
  constexpr Symbol(bool triple, Counter counter, Tape tape, SymbolSet memory) noexcept
      : memory_(memory), tape_(tape), counter_(counter), triple_(triple) {}

  SymbolSet memory_;
  Tape tape_;
  Counter counter_;
  bool triple_;
};

static_assert(sizeof(Symbol) == 8);

bool is_valid(Symbol symbol, int alphabet_size) noexcept;

// |S| + 2 * (|S| * 2^(|S|-1) + 2^|S|); saturates at SIZE_MAX for |S| near 32.
std::uint64_t alphabet_cardinality(int alphabet_size);

// All valid symbols: base symbols ascending, then triplets ordered by
// counter (o before *), tape (symbols ascending, X last), memory mask.
// Materializing the list is only practical for small alphabets; k > 20
// throws std::length_error.
std::vector<Symbol> enumerate_alphabet(int alphabet_size);

// Digit glyphs: 0-9 then a-v for symbols 10..31.
char symbol_glyph(int value);
// -1 when c is not a symbol glyph.
int glyph_value(char c) noexcept;

// Compact notation: base symbols print as their glyph, triplets as
// `(c|t|M)` with c in {o,*}, t a glyph or X, M ascending glyphs or `-`.
std::string to_string(Symbol symbol);
std::string to_string(SymbolSet set);
std::string to_string(Counter counter);

// Inverse of to_string. Throws ParseError on malformed text, or when the
// result is not valid for alphabet_size.
Symbol parse_symbol(std::string_view text, int alphabet_size);

}  // namespace dct
