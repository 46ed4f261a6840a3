#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "otx/canonical.hpp"
#include "otx/chartable.hpp"
#include "otx/dfa.hpp"

namespace otx {

/// Separator of the four segments in an encoded query word.
inline const Symbol kLfSep = "#";

/// Token list of the query language: the input letters, any further output
/// letters, the two abstract-block markers, and the separator — in that
/// order. Reserved tokens colliding with user letters -> ValidationError.
struct LfAlphabet {
  std::vector<Symbol> tokens;

  static LfAlphabet make(const Alphabet& input, const Alphabet& output);
};

/// Token rendering of a three-way value: "left"/"right" for abstract
/// blocks, raw letters for concrete content.
Word render_lf_value(const FactoredOutput& f);

/// Inverse of render_lf_value; rejects sequences that do not describe a
/// valid block alternation (MalformedLanguageError).
FactoredOutput parse_lf_value(const Word& tokens, const Alphabet& output);

/// Minimal acceptor of the query language of a table:
/// { v # a # reverse(w) # tokens(value at the split v|a|w) }.
Dfa build_lf_dfa(const CharTable& t);

/// Active-learning oracle for one regular language over a token list.
struct LanguageTeacher {
  virtual ~LanguageTeacher() = default;
  virtual const std::vector<Symbol>& tokens() const = 0;
  virtual bool member(const Word& u) = 0;
  /// nullopt accepts the hypothesis; otherwise a word in the symmetric
  /// difference of hypothesis and target.
  virtual std::optional<Word> counterexample(const Dfa& hypothesis) = 0;
};

/// Called once per hypothesis with the current table dimensions.
using LstarTrace = std::function<void(int round, int prefixes, int suffixes)>;

/// Classic active learning of the minimal acceptor: closed observation
/// table with pairwise-distinct rows, every counterexample suffix added as
/// a column. A counterexample that fails to grow the table is a protocol
/// violation (ProtocolError).
Dfa lstar(LanguageTeacher& teacher, const LstarTrace& trace = {});

struct LearnStats {
  long membership_queries = 0;  // distinct words asked
  long local_rejections = 0;    // malformed words answered without a value query
  long value_queries = 0;       // distinct whole-input evaluations
  long equivalence_queries = 0;
  std::vector<int> cex_lengths;
  int hypothesis_states = 0;
  bool bound_regressed = false;  // membership exceeded 4·n²·m (reported, not fatal)
};

/// Teacher backed by a concrete machine. Membership first validates the
/// v#a#reverse(w)#t format locally (malformed words are rejected without
/// touching the machine), then evaluates the machine once per distinct
/// input word and compares the rendered split value. Equivalence compares
/// against the minimal acceptor of the machine's query language.
class MachineTeacher : public LanguageTeacher {
 public:
  explicit MachineTeacher(Machine m);

  const std::vector<Symbol>& tokens() const override { return lf_alphabet_.tokens; }
  bool member(const Word& u) override;
  std::optional<Word> counterexample(const Dfa& hypothesis) override;

  const Alphabet& input_alphabet() const { return table_.input_alphabet; }
  const Alphabet& output_alphabet() const { return table_.output_alphabet; }
  const CharTable& table() const { return table_; }
  const Dfa& language_dfa() const { return language_; }
  const LearnStats& stats() const { return stats_; }

 private:
  Machine machine_;
  CharTable table_;  // minimized
  Dfa language_;     // minimal acceptor of the query language
  LfAlphabet lf_alphabet_;
  std::map<Word, OriginString> value_cache_;
  LearnStats stats_;
};

/// Rebuild a table from an acceptor of its query language: rows are the
/// residuals before the first separator, columns the functions induced on
/// the reversed-suffix segment, entries the unique accepted completion.
/// Rows and columns then gain the whole-word-emptiness bit (readable off
/// the decoded values edge by edge), which the query language does not
/// carry per residual. Shape violations -> MalformedLanguageError; the
/// result is validated by re-encoding and comparing languages.
CharTable decode_table(const Dfa& d, const Alphabet& input, const Alphabet& output);

struct LearnResult {
  LookaroundTransducer device;
  CharTable table;  // minimized decoded table
  LearnStats stats;
};

/// Learn the language, decode it, and synthesize the canonical device.
LearnResult learn_transducer(MachineTeacher& teacher, const LstarTrace& trace = {});

}  // namespace otx
