#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otx/chartable.hpp"

namespace otx {

/// Interleaving pattern of prefix-sourced ('L') and suffix-sourced ('R')
/// segments in the output, for one two-part split of the input.
using Shape = std::string;

/// Collapse a three-way value to a two-part shape: left and middle blocks
/// become 'L', right blocks 'R', adjacent equal letters merged.
Shape collapse_shape(const FactoredOutput& f);

/// shapes[(p, s)] = shape of the output on any v·w with past(v) = p and
/// future(w) = s, the prefix abstracted to 'L' and the suffix to 'R'.
struct ShapeMap {
  int future_states = 0;
  std::vector<Shape> shapes;  // dense [p * future_states + s]

  const Shape& at(int p, int s) const { return shapes[p * future_states + s]; }
};

/// Compute every shape by folding table entries from the empty prefix
/// outward. Every way of deriving the same (p, s) pair must agree;
/// disagreement (a non-congruent table) throws TableError.
ShapeMap two_part_shapes(const CharTable& t);

/// Build the canonical register machine of a minimized table. The table's
/// own row and column automata drive it; register r_j carries the j-th
/// prefix-sourced segment of the current shape, so an update moves the old
/// segments aside and reassembles them with the new letter's contributions.
LookaroundTransducer canonize_from_table(const CharTable& t);

/// Canonical form of any machine: summarize, minimize, rebuild.
LookaroundTransducer canonize(const Machine& m);

/// A split input on which two machines produce different three-way values.
struct SplitWitness {
  Word prefix;
  Symbol letter;
  Word suffix;
};

struct CanonicalEquivalence {
  bool equal = false;
  std::optional<SplitWitness> witness;  // set exactly when not equal
};

/// Decide equality of two canonical machines by structural comparison of
/// their minimized tables; on inequality, search the product automata for a
/// shortest (then lexicographically least) distinguishing split. Inputs
/// must be canonical over the same alphabets, else PreconditionError.
CanonicalEquivalence canonical_equal(const LookaroundTransducer& c1,
                                     const LookaroundTransducer& c2);

}  // namespace otx
