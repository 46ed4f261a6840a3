#pragma once

#include <optional>
#include <vector>

#include "otx/alphabet.hpp"

namespace otx {

/// Plain acceptor over an ordered token list (tokens may be multi-character
/// words like "left"). Total transition function on dense integer states.
struct Dfa {
  std::vector<Symbol> tokens;
  int num_states = 0;
  int initial = 0;
  std::vector<std::vector<int>> next;  // [state][token index]
  std::vector<char> accepting;

  int token_index(const Symbol& s) const;  // DomainError if unknown
  int run(const Word& w) const;
  bool accepts(const Word& w) const;
  bool operator==(const Dfa&) const = default;
};

/// Classical minimization: restrict to reachable states, merge
/// behavior-equal states, renumber breadth-first (token order) so equal
/// languages yield structurally equal automata.
Dfa minimize_dfa(const Dfa& d);

/// Shortest word accepted by exactly one of the two automata,
/// lexicographically least among shortest; nullopt if the languages are
/// equal. Token lists must be identical (DomainError otherwise).
std::optional<Word> shortest_difference(const Dfa& a, const Dfa& b);

}  // namespace otx
