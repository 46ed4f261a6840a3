#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "otx/alphabet.hpp"
#include "otx/error.hpp"

namespace otx {

/// One output letter together with the 1-based input position it
/// originates from.
struct OriginItem {
  Symbol letter;
  int origin;
  bool operator==(const OriginItem&) const = default;
};

/// An output word with origin information. Origins range over
/// 1..input_length.
struct OriginString {
  std::vector<OriginItem> items;
  int input_length = 0;
  bool operator==(const OriginString&) const = default;

  Word letters() const;
};

/// Render as `a@1 b@2 a@1 b@2` (empty string for the empty output).
std::string render_origin_string(const OriginString& s);

/// Identifier of a source region. The canonical three-part set is
/// {"left", "middle", "right"}.
using SourceId = std::string;

inline const SourceId kLeft = "left";
inline const SourceId kMiddle = "middle";
inline const SourceId kRight = "right";

/// A total assignment of a source identifier to every input position.
struct SourceColoring {
  int input_length = 0;
  std::vector<SourceId> colors;  // colors[i] is the source of position i+1

  const SourceId& at(int position) const;  // 1-based

  /// Coloring that assigns `names[k]` to the positions of the k-th part.
  /// Part sizes must sum to the input length.
  static SourceColoring from_parts(const std::vector<int>& sizes,
                                   const std::vector<SourceId>& names);
};

/// Conventional part names: 2 parts -> left/right, 3 -> left/middle/right,
/// 1 -> middle, otherwise p1..pk.
std::vector<SourceId> part_names(int count);

/// A maximal run of output letters whose origins share a source. An
/// abstract block has no content (only the source survives).
struct Block {
  SourceId source;
  std::optional<Word> content;
  auto operator<=>(const Block&) const = default;

  bool abstract() const { return !content.has_value(); }
};

/// A sequence of blocks; adjacent blocks always differ in source.
struct FactoredOutput {
  std::vector<Block> blocks;
  auto operator<=>(const FactoredOutput&) const = default;

  bool empty() const { return blocks.empty(); }
};

/// Render as `left middle[cd] right` (abstract blocks show only the source;
/// concrete blocks append `[content]`). Empty output renders as "".
std::string render_factored(const FactoredOutput& f);

/// Group the output into maximal runs of letters whose origins share a
/// color. Empty contributions produce no block. Throws DomainError if an
/// origin falls outside the coloring's domain.
FactoredOutput factorize(const OriginString& out, const SourceColoring& sigma);

/// Drop the content of every block whose source is in `underlined`. The
/// block sequence itself is unchanged.
FactoredOutput abstract_blocks(FactoredOutput f, const std::set<SourceId>& underlined);

/// Rebuild the full origin-tagged output of a length-n input from the
/// family xs[i] = value at position i+1, where each xs[i] describes the
/// whole output with the prefix abstracted to `left`, the single letter at
/// position i+1 concrete as `middle`, and the suffix abstracted to `right`.
///
/// Throws InconsistentFamilyError (with the first bad 1-based position) if
/// the family cannot arise from one transduction, and IncompleteMergeError
/// if placeholders remain after the last step.
OriginString otimes_merge(const std::vector<FactoredOutput>& xs, int n);

}  // namespace otx
