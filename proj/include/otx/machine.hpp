#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "otx/alphabet.hpp"
#include "otx/origin.hpp"

namespace otx {

/// Atomic register operation. `concat dst src` appends src to dst and
/// erases src; `create dst b` replaces dst's content with the single
/// letter b (lossy if dst was non-empty).
struct RegisterOp {
  enum class Kind { Concat, Create };
  Kind kind;
  std::string dst;
  std::string src;  // Concat only
  Symbol letter;    // Create only

  static RegisterOp concat(std::string dst, std::string src) {
    return {Kind::Concat, std::move(dst), std::move(src), {}};
  }
  static RegisterOp create(std::string dst, Symbol letter) {
    return {Kind::Create, std::move(dst), {}, std::move(letter)};
  }
  bool operator==(const RegisterOp&) const = default;
};

/// Check an update sequence: registers named, dst != src, create letters in
/// the output alphabet, and no register consulted after it was consumed
/// (a later create may refill it). `concat_only` additionally bans create.
void check_ops(const std::vector<RegisterOp>& ops,
               const std::set<std::string>& registers,
               const Alphabet& output_alphabet, bool concat_only,
               const std::string& context);

/// Copyless streaming register transducer. One left-to-right pass; each
/// letter triggers a register update; after the last letter the
/// state-dependent end-of-input sequence (concat only, so no fresh letters
/// appear without an origin) runs and the output register is read.
struct StreamingTransducer {
  Alphabet input_alphabet, output_alphabet;
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> registers;
  std::string output_register;
  struct Transition {
    std::string next;
    std::vector<RegisterOp> ops;
  };
  std::map<std::pair<std::string, Symbol>, Transition> transitions;
  std::map<std::string, std::vector<RegisterOp>> end_of_input;

  void validate() const;
};

/// Tape markers used by two-way machines (outside the input alphabet).
inline const Symbol kLeftEnd = "^";
inline const Symbol kRightEnd = "$";

enum class Direction { Left, Right };

/// Deterministic two-way transducer over the tape ^ w $. Transitions on the
/// markers produce no output (every output letter needs a letter origin);
/// the head never leaves the tape; entering `accept` ends the run.
struct TwoWayTransducer {
  Alphabet input_alphabet, output_alphabet;
  std::vector<std::string> states;  // accept listed separately
  std::string initial;
  std::string accept;
  struct Transition {
    std::string next;
    Direction move;
    Word output;
  };
  std::map<std::pair<std::string, Symbol>, Transition> transitions;

  void validate() const;
};

/// Deterministic automaton with named states, used inside machine files.
struct DfaSpec {
  std::vector<std::string> states;
  std::string initial;
  std::map<std::pair<std::string, Symbol>, std::string> transitions;

  void validate(const Alphabet& alphabet, const std::string& context) const;
  const std::string& next(const std::string& state, const Symbol& a) const;
};

/// Register transducer with regular lookaround: position i is classified by
/// the past automaton's state on the strict prefix (read left to right) and
/// the future automaton's state on the strict suffix (read right to left);
/// the update at i is chosen by (past, letter, future). After the last
/// position the finish sequence of the final past state (concat only) runs.
struct LookaroundTransducer {
  Alphabet input_alphabet, output_alphabet;
  DfaSpec past;    // reads prefixes left to right
  DfaSpec future;  // reads suffixes right to left
  std::vector<std::string> registers;
  std::string output_register;
  std::map<std::tuple<std::string, Symbol, std::string>, std::vector<RegisterOp>> updates;
  std::map<std::string, std::vector<RegisterOp>> finish;
  bool canonical = false;

  void validate() const;
};

using Machine = std::variant<StreamingTransducer, TwoWayTransducer, LookaroundTransducer>;

const Alphabet& input_alphabet(const Machine& m);
const Alphabet& output_alphabet(const Machine& m);
void validate(const Machine& m);

/// Run the streaming transducer; origins record the position whose update
/// created each letter.
OriginString sst_eval(const StreamingTransducer& m, const Word& w);

/// Evaluation statistics used by instrumentation-style checks.
struct SstEvalStats {
  long long creates = 0;
};
OriginString sst_eval(const StreamingTransducer& m, const Word& w, SstEvalStats& stats);

/// Run the two-way transducer on ^ w $. A repeated configuration, or more
/// than `fuel` steps (default |states| * (|w|+2) + 1 when fuel < 0), raises
/// NonterminationError.
OriginString twoway_eval(const TwoWayTransducer& m, const Word& w, long long fuel = -1);

/// Run the lookaround transducer.
OriginString lookaround_eval(const LookaroundTransducer& m, const Word& w);

OriginString eval(const Machine& m, const Word& w);

/// Evaluate on the concatenation of `parts`, color positions by their part,
/// factorize, and abstract the parts whose 1-based indices are in
/// `underlined`. Part names follow part_names(parts.size()).
FactoredOutput factored_eval(const Machine& m, const std::vector<Word>& parts,
                             const std::set<int>& underlined);

}  // namespace otx
