#include <algorithm>
#include <set>
#include <stdexcept>

#include "dct/alphabet.hpp"
#include "dct/error.hpp"
#include "doctest.h"

using namespace dct;

TEST_CASE("cardinality") {
  CHECK(alphabet_cardinality(2) == 18);
  CHECK(alphabet_cardinality(3) == 43);
  CHECK(enumerate_alphabet(2).size() == 18);
  CHECK(enumerate_alphabet(3).size() == 43);
  for (int k = 2; k <= 10; ++k) {
    CAPTURE(k);
    CHECK(enumerate_alphabet(k).size() == alphabet_cardinality(k));
  }
}

TEST_CASE("binary alphabet has 16 triplets and forbids the other 8") {
  const auto symbols = enumerate_alphabet(2);
  int triples = 0;
  for (const Symbol& s : symbols) triples += s.is_triple() ? 1 : 0;
  CHECK(triples == 16);

  // All 2 * 3 * 4 candidate triplets; those whose tape is missing from
  // memory are invalid and absent from the enumeration.
  int forbidden = 0;
  for (Counter c : {Counter::Odd, Counter::Even}) {
    for (int t = -1; t < 2; ++t) {
      for (std::uint32_t m = 0; m < 4; ++m) {
        const Tape tape = t < 0 ? Tape::removed() : Tape::of(t);
        const Symbol s = Symbol::triple(c, tape, SymbolSet::from_mask(m));
        const bool listed = std::find(symbols.begin(), symbols.end(), s) != symbols.end();
        CHECK(is_valid(s, 2) == listed);
        if (!is_valid(s, 2)) ++forbidden;
      }
    }
  }
  CHECK(forbidden == 8);
}

TEST_CASE("enumeration is distinct, valid and base first") {
  for (int k = 2; k <= 5; ++k) {
    const auto symbols = enumerate_alphabet(k);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      CHECK(is_valid(symbols[i], k));
      CHECK(seen.insert(to_string(symbols[i])).second);
      if (i < static_cast<std::size_t>(k)) CHECK(symbols[i] == Symbol::base(static_cast<int>(i)));
    }
  }
}

TEST_CASE("validity rules") {
  CHECK(is_valid(Symbol::base(1), 2));
  CHECK_FALSE(is_valid(Symbol::base(2), 2));
  CHECK(is_valid(Symbol::triple(Counter::Even, Tape::removed(), SymbolSet{}), 2));
  CHECK(is_valid(Symbol::triple(Counter::Odd, Tape::of(1), SymbolSet::from_mask(0b11)), 2));
  CHECK_FALSE(is_valid(Symbol::triple(Counter::Odd, Tape::of(0), SymbolSet::single(1)), 2));
  // Memory outside the alphabet.
  CHECK_FALSE(is_valid(Symbol::triple(Counter::Odd, Tape::removed(), SymbolSet::single(2)), 2));
}

TEST_CASE("notation") {
  CHECK(to_string(Symbol::base(0)) == "0");
  CHECK(to_string(Symbol::triple(Counter::Odd, Tape::removed(), SymbolSet::from_mask(0b11))) ==
        "(o|X|01)");
  CHECK(to_string(Symbol::triple(Counter::Even, Tape::of(0), SymbolSet{})) == "(*|0|-)");
  CHECK(to_string(SymbolSet::from_mask(0b101)) == "02");
  CHECK(to_string(Counter::Even) == "*");
  CHECK(symbol_glyph(10) == 'a');
  CHECK(symbol_glyph(31) == 'v');
  CHECK(glyph_value('v') == 31);
  CHECK(glyph_value('w') == -1);
  CHECK(glyph_value('(') == -1);
}

TEST_CASE("parse inverts to_string") {
  for (int k = 2; k <= 4; ++k) {
    for (const Symbol& s : enumerate_alphabet(k)) {
      CHECK(parse_symbol(to_string(s), k) == s);
    }
  }
}

TEST_CASE("parse rejects malformed and invalid symbols") {
  for (const char* bad : {"", "2", "(o|2|01)", "(o|0|1)", "(x|0|0)", "(o|X|10)", "(o|X|00)",
                          "(o|X|01", "(o|X)", "o|X|01)", "(o||01)", "00"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_symbol(bad, 2), ParseError);
  }
}

TEST_CASE("alphabet size bounds") {
  CHECK_THROWS_AS(check_alphabet_size(1), std::invalid_argument);
  CHECK_THROWS_AS(check_alphabet_size(33), std::invalid_argument);
  CHECK_NOTHROW(check_alphabet_size(32));
  CHECK_THROWS_AS(enumerate_alphabet(21), std::length_error);
}
