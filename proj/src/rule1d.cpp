#include "dct/rule1d.hpp"

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace dct {

std::string_view to_string(RuleCase c) noexcept {
  switch (c) {
    case RuleCase::FixedPoint: return "FIXED_POINT";
    case RuleCase::Kickstart: return "KICKSTART";
    case RuleCase::PropFirstTake: return "PROP_FIRST_TAKE";
    case RuleCase::PropFirstKeep: return "PROP_FIRST_KEEP";
    case RuleCase::PropTake: return "PROP_TAKE";
    case RuleCase::PropKeep: return "PROP_KEEP";
    case RuleCase::SwapReset: return "SWAP_RESET";
    case RuleCase::SwapConverge: return "SWAP_CONVERGE";
    case RuleCase::SwapTie: return "SWAP_TIE";
    case RuleCase::Convergence: return "CONVERGENCE";
    case RuleCase::Unreachable: return "UNREACHABLE";
  }
  return "UNREACHABLE";
}

namespace {

void require_valid(Symbol s, int alphabet_size, const char* which) {
  check_alphabet_size(alphabet_size);
  if (!is_valid(s, alphabet_size)) {
    throw std::invalid_argument(std::string(which) + " symbol " + to_string(s) +
                                " is not valid for alphabet size " +
                                std::to_string(alphabet_size));
  }
}

}  // namespace

RuleCase classify_case(Symbol left, Symbol current, int alphabet_size) {
  require_valid(left, alphabet_size, "left");
  require_valid(current, alphabet_size, "current");
  return evaluate_local(left, current).rule_case;
}

LocalResult apply_local(Symbol left, Symbol current, int alphabet_size) {
  require_valid(left, alphabet_size, "left");
  require_valid(current, alphabet_size, "current");
  return evaluate_local(left, current).result;
}

RuleTable::RuleTable(int alphabet_size)
    : alphabet_size_(alphabet_size), symbols_(enumerate_alphabet(alphabet_size)) {
  const auto key = [](Symbol s) {
    return std::uint64_t{s.is_triple()} << 48 | std::uint64_t(s.counter()) << 40 |
           std::uint64_t(s.tape().value()) << 32 | s.memory().mask();
  };
  std::map<std::uint64_t, std::uint8_t> ids;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    ids.emplace(key(symbols_[i]), static_cast<std::uint8_t>(i));
  }
  entries_.reserve(symbols_.size() * symbols_.size());
  for (const Symbol& left : symbols_) {
    for (std::size_t c = 0; c < symbols_.size(); ++c) {
      const Transition t = evaluate_local(left, symbols_[c]);
      const auto next =
          t.result.is_tie() ? static_cast<std::uint8_t>(c) : ids.at(key(t.result.symbol()));
      entries_.push_back({next, t.rule_case});
    }
  }
}

const RuleTable* RuleTable::get(int alphabet_size) {
  check_alphabet_size(alphabet_size);
  if (alphabet_size > kMaxAlphabet) return nullptr;
  static const auto tables = [] {
    std::array<std::unique_ptr<RuleTable>, kMaxAlphabet + 1> out;
    for (int k = kMinAlphabetSize; k <= kMaxAlphabet; ++k) out[k].reset(new RuleTable(k));
    return out;
  }();
  return tables[static_cast<std::size_t>(alphabet_size)].get();
}

}  // namespace dct
