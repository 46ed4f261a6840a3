#pragma once

#include <compare>
#include <vector>

#include "otx/machine.hpp"
#include "otx/origin.hpp"

namespace otx {

/// Deterministic automaton on dense integer states. `dir` says which way it
/// consumes words: past automata read prefixes left to right, future
/// automata read suffixes right to left.
struct BehaviorDfa {
  enum class Dir { LeftToRight, RightToLeft };
  Dir dir = Dir::LeftToRight;
  int num_states = 0;
  int initial = 0;
  std::vector<std::vector<int>> next;  // [state][letter index]

  int run(const Alphabet& a, const Word& w) const;
  bool operator==(const BehaviorDfa&) const = default;
};

/// Finite presentation of the function (v, a, w) -> value of the whole
/// output on v·a·w with v abstracted to `left`, the letter a concrete as
/// `middle`, and w abstracted to `right`. Rows are indexed by the past
/// state of v, columns by the future state of w.
struct CharTable {
  Alphabet input_alphabet, output_alphabet;
  BehaviorDfa past;    // left to right
  BehaviorDfa future;  // right to left
  std::vector<FactoredOutput> entries;  // dense [(p * letters + a) * future + s]
  std::vector<char> empty_given_past;   // whole-word output empty, by past state
  std::vector<char> empty_given_future; // whole-word output empty, by future state

  const FactoredOutput& entry(int p, int a, int s) const {
    return entries[(static_cast<std::size_t>(p) * input_alphabet.size() + a) *
                       future.num_states + s];
  }
  FactoredOutput& entry(int p, int a, int s) {
    return entries[(static_cast<std::size_t>(p) * input_alphabet.size() + a) *
                       future.num_states + s];
  }
  bool operator==(const CharTable&) const = default;
};

CharTable sst_char_table(const StreamingTransducer& m);
CharTable twoway_char_table(const TwoWayTransducer& m);
CharTable lookaround_char_table(const LookaroundTransducer& m);
CharTable char_table(const Machine& m);

/// Merge rows with identical behavior and columns with identical behavior
/// (flags, all entries, and successor classes), then renumber both automata
/// in breadth-first order so equal tables compare equal structurally.
CharTable minimize_table(const CharTable& t);

/// Value at a concrete split: run v through the past automaton, w through
/// the future automaton, read the entry.
FactoredOutput table_lookup(const CharTable& t, const Word& v, const Symbol& a,
                            const Word& w);

/// Rebuild the full origin-tagged output of w from the per-position values.
/// Returns the empty output for the empty word.
OriginString table_eval(const CharTable& t, const Word& w);

// --- streaming-transducer word summaries (exposed for property tests) ---

/// Item of a summary sequence: a register atom (its index at the start of
/// the summarized word) or kEffMark, a placeholder for letters created
/// inside the word.
inline constexpr int kEffMark = -1;
using EffSeq = std::vector<int>;

/// Effect of reading a word: per starting control state, the control state
/// afterwards and, for each register, the sequence its content becomes.
/// Copylessness keeps every atom to at most one use across a row.
struct SstWordEffect {
  std::vector<int> next_control;
  std::vector<std::vector<EffSeq>> regs;  // [control][register]
  auto operator<=>(const SstWordEffect&) const = default;
};

SstWordEffect sst_identity_effect(const StreamingTransducer& m);
SstWordEffect sst_letter_effect(const StreamingTransducer& m, const Symbol& a);
/// Effect of the word of `first` followed by the word of `then`.
SstWordEffect sst_effect_compose(const SstWordEffect& first, const SstWordEffect& then);
SstWordEffect sst_word_effect(const StreamingTransducer& m, const Word& w);

}  // namespace otx
