#pragma once

#include <optional>
#include <vector>

#include "otx/canonical.hpp"
#include "otx/chartable.hpp"

namespace otx {

/// All state-to-state functions realized by words, as the closure of the
/// per-letter functions under composition, together with the identity.
struct TransitionMonoid {
  std::vector<std::vector<int>> elements;  // element e: state -> state

  /// Closure cap exceeded -> ResourceError.
  static TransitionMonoid of(const std::vector<std::vector<int>>& next,
                             long cap = 1'000'000);

  /// True iff every element's power sequence becomes constant (its
  /// eventual cycle has length one).
  bool aperiodic() const;
};

/// Origins never decrease along the output. Checked entry-wise (every
/// three-way value lies in left?-then-right?) and on the whole shape map.
bool is_order_preserving(const CharTable& t);

/// The function is realized by a plain one-way deterministic transducer:
/// for every row and letter, the value does not depend on the suffix
/// beyond whether the suffix still contributes at the end. Requires an
/// order-preserving table, else PreconditionError.
bool is_one_way_deterministic(const CharTable& t);

/// Both the row and column automata have aperiodic transition monoids.
bool is_first_order(const CharTable& t);

struct Classification {
  bool order_preserving = false;
  std::optional<bool> one_way_deterministic;  // unset when not order-preserving
  bool first_order = false;
};

/// All three predicates on the minimized table of a machine.
Classification classify(const Machine& m);

/// Origin-aware equivalence via canonical forms. Requires equal alphabets
/// (PreconditionError otherwise); the witness is a split input on which
/// the three-way values differ.
CanonicalEquivalence equivalent(const Machine& m1, const Machine& m2);

struct BoundedEquivalence {
  bool equal = false;
  std::optional<Word> witness;  // shortest, then lexicographically least
};

/// Exhaustive oracle: compare full origin-tagged outputs on every word of
/// length at most max_len.
BoundedEquivalence bounded_equivalent(const Machine& m1, const Machine& m2,
                                      int max_len);

}  // namespace otx
