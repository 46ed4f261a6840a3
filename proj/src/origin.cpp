#include "otx/origin.hpp"

#include <algorithm>

namespace otx {

Word OriginString::letters() const {
  Word w;
  w.reserve(items.size());
  for (const OriginItem& it : items) w.push_back(it.letter);
  return w;
}

std::string render_origin_string(const OriginString& s) {
  std::string out;
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i) out += ' ';
    out += s.items[i].letter;
    out += '@';
    out += std::to_string(s.items[i].origin);
  }
  return out;
}

const SourceId& SourceColoring::at(int position) const {
  if (position < 1 || position > input_length)
    throw DomainError("position " + std::to_string(position) +
                      " outside coloring domain 1.." + std::to_string(input_length));
  return colors[position - 1];
}

SourceColoring SourceColoring::from_parts(const std::vector<int>& sizes,
                                          const std::vector<SourceId>& names) {
  if (sizes.size() != names.size())
    throw DomainError("part sizes and names differ in count");
  SourceColoring sigma;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] < 0) throw DomainError("negative part size");
    for (int i = 0; i < sizes[k]; ++i) sigma.colors.push_back(names[k]);
  }
  sigma.input_length = static_cast<int>(sigma.colors.size());
  return sigma;
}

std::vector<SourceId> part_names(int count) {
  switch (count) {
    case 1: return {kMiddle};
    case 2: return {kLeft, kRight};
    case 3: return {kLeft, kMiddle, kRight};
    default: {
      std::vector<SourceId> names;
      for (int i = 1; i <= count; ++i) names.push_back("p" + std::to_string(i));
      return names;
    }
  }
}

std::string render_factored(const FactoredOutput& f) {
  std::string out;
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    if (i) out += ' ';
    out += f.blocks[i].source;
    if (!f.blocks[i].abstract()) {
      out += '[';
      out += render_word(*f.blocks[i].content);
      out += ']';
    }
  }
  return out;
}

FactoredOutput factorize(const OriginString& out, const SourceColoring& sigma) {
  if (sigma.input_length != out.input_length)
    throw DomainError("coloring domain does not match the input length");
  FactoredOutput f;
  for (const OriginItem& it : out.items) {
    const SourceId& color = sigma.at(it.origin);
    if (!f.blocks.empty() && f.blocks.back().source == color)
      f.blocks.back().content->push_back(it.letter);
    else
      f.blocks.push_back({color, Word{it.letter}});
  }
  return f;
}

FactoredOutput abstract_blocks(FactoredOutput f, const std::set<SourceId>& underlined) {
  for (Block& b : f.blocks)
    if (underlined.count(b.source)) b.content.reset();
  return f;
}

namespace {

// Partial reconstruction state: alternating concrete runs and placeholders
// for letters whose origin has not been reached yet.
struct Segment {
  bool gap;
  std::vector<OriginItem> run;  // meaningful when !gap
};

void check_family_value(const FactoredOutput& fo, int position) {
  const Block* prev = nullptr;
  for (const Block& b : fo.blocks) {
    if (b.source != kLeft && b.source != kMiddle && b.source != kRight)
      throw InconsistentFamilyError(
          position, "position " + std::to_string(position) +
                        ": unexpected source '" + b.source + "' in family value");
    if (b.source == kMiddle) {
      if (b.abstract() || b.content->empty())
        throw InconsistentFamilyError(
            position, "position " + std::to_string(position) +
                          ": middle block must carry non-empty content");
    } else if (!b.abstract()) {
      throw InconsistentFamilyError(
          position, "position " + std::to_string(position) + ": " + b.source +
                        " block must be abstract");
    }
    if (prev && prev->source == b.source)
      throw InconsistentFamilyError(
          position, "position " + std::to_string(position) +
                        ": adjacent blocks share a source");
    prev = &b;
  }
}

// Expand a run of middle/right blocks into segments; middle content becomes
// a concrete run with the given origin, a right block becomes a placeholder.
void expand_into(std::vector<Segment>& out, const std::vector<const Block*>& blocks,
                 int origin) {
  for (const Block* b : blocks) {
    if (b->source == kMiddle) {
      Segment seg{false, {}};
      for (const Symbol& s : *b->content) seg.run.push_back({s, origin});
      if (!out.empty() && !out.back().gap) {
        auto& dst = out.back().run;
        dst.insert(dst.end(), seg.run.begin(), seg.run.end());
      } else {
        out.push_back(std::move(seg));
      }
    } else {
      out.push_back({true, {}});
    }
  }
}

}  // namespace

OriginString otimes_merge(const std::vector<FactoredOutput>& xs, int n) {
  if (static_cast<int>(xs.size()) != n)
    throw InconsistentFamilyError(
        1, "family has " + std::to_string(xs.size()) + " values for input length " +
               std::to_string(n));
  if (n == 0) return {{}, 0};

  std::vector<Segment> state;

  // First step: nothing is concrete yet, so the value may not mention the
  // (empty) prefix at all.
  check_family_value(xs[0], 1);
  {
    std::vector<const Block*> blocks;
    for (const Block& b : xs[0].blocks) {
      if (b.source == kLeft)
        throw InconsistentFamilyError(1, "position 1: left block before any prefix");
      blocks.push_back(&b);
    }
    expand_into(state, blocks, 1);
  }

  for (int i = 2; i <= n; ++i) {
    const FactoredOutput& fo = xs[i - 1];
    check_family_value(fo, i);

    // Split the value at its left blocks: segment j sits between left block
    // j and left block j+1 (segment 0 before the first, segment k after the
    // last).
    std::vector<std::vector<const Block*>> segments(1);
    int left_count = 0;
    for (const Block& b : fo.blocks) {
      if (b.source == kLeft) {
        ++left_count;
        segments.emplace_back();
      } else {
        segments.back().push_back(&b);
      }
    }

    // Current structure, viewed as: [gap?] run_1 [gap?] run_2 ... [gap?].
    int run_count = 0;
    for (const Segment& s : state)
      if (!s.gap) ++run_count;
    if (left_count != run_count)
      throw InconsistentFamilyError(
          i, "position " + std::to_string(i) + ": value has " +
                 std::to_string(left_count) + " left blocks but " +
                 std::to_string(run_count) + " runs are known");

    std::vector<Segment> next;
    std::size_t cursor = 0;  // index into `state`
    for (int j = 0; j <= run_count; ++j) {
      bool gap_here = cursor < state.size() && state[cursor].gap;
      bool segment_nonempty = !segments[j].empty();
      if (gap_here != segment_nonempty)
        throw InconsistentFamilyError(
            i, "position " + std::to_string(i) + ": placeholder " +
                   std::to_string(j) + (gap_here ? " unmatched by new content"
                                                 : " missing for new content"));
      if (gap_here) {
        expand_into(next, segments[j], i);
        ++cursor;
      }
      if (j < run_count) {
        // The j+1-th known run aligns with the j+1-th left block.
        Segment run = std::move(state[cursor]);
        ++cursor;
        if (!next.empty() && !next.back().gap) {
          auto& dst = next.back().run;
          dst.insert(dst.end(), run.run.begin(), run.run.end());
        } else {
          next.push_back(std::move(run));
        }
      }
    }
    state = std::move(next);
  }

  OriginString result;
  result.input_length = n;
  for (Segment& s : state) {
    if (s.gap)
      throw IncompleteMergeError("placeholders remain after the last position");
    result.items.insert(result.items.end(), s.run.begin(), s.run.end());
  }
  return result;
}

}  // namespace otx
