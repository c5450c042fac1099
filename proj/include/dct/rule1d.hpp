#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dct/alphabet.hpp"

namespace dct {

enum class RuleCase : std::uint8_t {
  FixedPoint,
  Kickstart,
  PropFirstTake,
  PropFirstKeep,
  PropTake,
  PropKeep,
  SwapReset,
  SwapConverge,
  SwapTie,
  Convergence,
  // Never produced by the 1-D dispatch. Kept so totality can be asserted.
  Unreachable,
};

inline constexpr std::array<RuleCase, 11> kAllRuleCases = {
    RuleCase::FixedPoint,   RuleCase::Kickstart,  RuleCase::PropFirstTake, RuleCase::PropFirstKeep,
    RuleCase::PropTake,     RuleCase::PropKeep,   RuleCase::SwapReset,     RuleCase::SwapConverge,
    RuleCase::SwapTie,      RuleCase::Convergence, RuleCase::Unreachable,
};

std::string_view to_string(RuleCase c) noexcept;

constexpr bool is_propagation(RuleCase c) noexcept {
  return c == RuleCase::PropFirstTake || c == RuleCase::PropFirstKeep ||
         c == RuleCase::PropTake || c == RuleCase::PropKeep;
}

// Output of the local rule. A tie is the swap with an empty active memory:
// the input was balanced and no symbol is produced.
class LocalResult {
 public:
  static constexpr LocalResult of(Symbol s) noexcept { return LocalResult(s, false); }
  static constexpr LocalResult tie() noexcept { return LocalResult(Symbol{}, true); }

  constexpr bool is_tie() const noexcept { return tie_; }
  constexpr Symbol symbol() const noexcept { return symbol_; }

  friend constexpr bool operator==(LocalResult, LocalResult) noexcept = default;

 private:
  constexpr LocalResult(Symbol s, bool tie) noexcept : symbol_(s), tie_(tie) {}
  Symbol symbol_;
  bool tie_;
};

struct Transition {
  RuleCase rule_case;
  LocalResult result;
};

// Head state seen by a propagation step: counter and active memory of the
// cell to the left. The left cell's tape never matters.
struct HeadState {
  Counter counter;
  SymbolSet memory;
};

// Propagation from `head` onto `current` (base or triplet with a different
// counter). Shared by the 1-D rule and the d-dimensional rule.
constexpr Transition propagate(HeadState head, Symbol current) noexcept {
  if (current.is_base()) {
    const int b = current.value();
    if (!head.memory.contains(b)) {
      return {RuleCase::PropFirstTake,
              LocalResult::of(Symbol::triple(head.counter, Tape::removed(), head.memory.with(b)))};
    }
    return {RuleCase::PropFirstKeep,
            LocalResult::of(Symbol::triple(head.counter, Tape::of(b), head.memory))};
  }
  const Tape tape = current.tape();
  if (!tape.is_removed() && !head.memory.contains(tape.value())) {
    return {RuleCase::PropTake, LocalResult::of(Symbol::triple(head.counter, Tape::removed(),
                                                               head.memory.with(tape.value())))};
  }
  return {RuleCase::PropKeep, LocalResult::of(Symbol::triple(head.counter, tape, head.memory))};
}

// Swap at a phase boundary, driven by the active memory of the finished cycle.
constexpr Transition swap(HeadState head) noexcept {
  if (head.memory.size() >= 2) {
    return {RuleCase::SwapReset, LocalResult::of(Symbol::triple(flip_counter(head.counter),
                                                                Tape::removed(), SymbolSet{}))};
  }
  if (head.memory.size() == 1) {
    return {RuleCase::SwapConverge, LocalResult::of(Symbol::base(head.memory.first()))};
  }
  return {RuleCase::SwapTie, LocalResult::tie()};
}

// The radius-1/2 rule on (left, current). No validation; both symbols are
// assumed valid for the same alphabet.
constexpr Transition evaluate_local(Symbol left, Symbol current) noexcept {
  if (left.is_base()) {
    if (current.is_base()) {
      if (left.value() == current.value()) return {RuleCase::FixedPoint, LocalResult::of(current)};
      return {RuleCase::Kickstart,
              LocalResult::of(Symbol::triple(Counter::Odd, Tape::removed(),
                                             SymbolSet::single(current.value())))};
    }
    return {RuleCase::Convergence, LocalResult::of(left)};
  }
  const HeadState head{left.counter(), left.memory()};
  if (current.is_triple() && current.counter() == left.counter()) return swap(head);
  return propagate(head, current);
}

// Checked entry points; throw std::invalid_argument on symbols that are
// not valid for alphabet_size.
RuleCase classify_case(Symbol left, Symbol current, int alphabet_size);
LocalResult apply_local(Symbol left, Symbol current, int alphabet_size);

// evaluate_local tabulated over symbol ids, for alphabets small enough that
// the |S|^2 table is cheap. Ids follow enumerate_alphabet, so base value b
// has id b. A tie maps the cell to itself.
class RuleTable {
 public:
  static constexpr int kMaxAlphabet = 4;

  struct Entry {
    std::uint8_t next;
    RuleCase rule_case;
  };

  // Shared instance; nullptr when alphabet_size > kMaxAlphabet.
  static const RuleTable* get(int alphabet_size);

  int alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t symbol_count() const noexcept { return symbols_.size(); }
  Symbol symbol(std::uint8_t id) const noexcept { return symbols_[id]; }
  Entry at(std::uint8_t left, std::uint8_t current) const noexcept {
    return entries_[left * symbols_.size() + current];
  }

 private:
  explicit RuleTable(int alphabet_size);

  int alphabet_size_;
  std::vector<Symbol> symbols_;
  std::vector<Entry> entries_;
};

}  // namespace dct
