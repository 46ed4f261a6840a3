#include "otx/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace otx {

Shape collapse_shape(const FactoredOutput& f) {
  Shape s;
  for (const Block& b : f.blocks) {
    char c = b.source == kRight ? 'R' : 'L';
    if (s.empty() || s.back() != c) s.push_back(c);
  }
  return s;
}

ShapeMap two_part_shapes(const CharTable& t) {
  const int P = t.past.num_states, S = t.future.num_states, L = t.input_alphabet.size();
  ShapeMap m;
  m.future_states = S;
  m.shapes.assign(static_cast<std::size_t>(P) * S, {});
  std::vector<char> have(static_cast<std::size_t>(P) * S, 0);

  auto propose = [&](int p, int s, Shape sh) {
    std::size_t k = static_cast<std::size_t>(p) * S + s;
    if (!have[k]) {
      have[k] = 1;
      m.shapes[k] = std::move(sh);
    } else if (m.shapes[k] != sh) {
      throw TableError("table is not congruent: two derivations of the same split disagree");
    }
  };

  // Empty prefix: the whole output comes from the suffix, or is empty.
  for (int s = 0; s < S; ++s)
    propose(t.past.initial, s, t.empty_given_future[s] ? Shape{} : Shape{"R"});
  // Extending the prefix by one letter: the entry at that letter, with its
  // left and middle parts merged into the new prefix.
  for (int p = 0; p < P; ++p)
    for (int a = 0; a < L; ++a)
      for (int s = 0; s < S; ++s)
        propose(t.past.next[p][a], s, collapse_shape(t.entry(p, a, s)));

  for (char h : have)
    if (!h) throw TableError("internal: split not reachable from the empty prefix");
  for (int p = 0; p < P; ++p) {
    const Shape& sh = m.at(p, t.future.initial);
    if (sh != "" && sh != "L")
      throw TableError("internal: empty suffix contributed a segment");
  }
  return m;
}

LookaroundTransducer canonize_from_table(const CharTable& t) {
  const int P = t.past.num_states, S = t.future.num_states, L = t.input_alphabet.size();
  ShapeMap shapes = two_part_shapes(t);

  int K = 0;
  for (const Shape& sh : shapes.shapes)
    K = std::max(K, static_cast<int>(std::count(sh.begin(), sh.end(), 'L')));

  LookaroundTransducer c;
  c.input_alphabet = t.input_alphabet;
  c.output_alphabet = t.output_alphabet;
  auto pname = [](int i) { return "p" + std::to_string(i); };
  auto sname = [](int i) { return "s" + std::to_string(i); };
  auto rname = [](int j) { return "r" + std::to_string(j); };
  auto uname = [](int j) { return "u" + std::to_string(j); };

  for (int p = 0; p < P; ++p) c.past.states.push_back(pname(p));
  c.past.initial = pname(t.past.initial);
  for (int p = 0; p < P; ++p)
    for (int a = 0; a < L; ++a)
      c.past.transitions[{pname(p), t.input_alphabet.letter(a)}] = pname(t.past.next[p][a]);
  for (int s = 0; s < S; ++s) c.future.states.push_back(sname(s));
  c.future.initial = sname(t.future.initial);
  for (int s = 0; s < S; ++s)
    for (int a = 0; a < L; ++a)
      c.future.transitions[{sname(s), t.input_alphabet.letter(a)}] =
          sname(t.future.next[s][a]);

  if (K == 0) {
    c.registers = {rname(1)};
  } else {
    for (int j = 1; j <= K; ++j) c.registers.push_back(rname(j));
    for (int j = 1; j <= K; ++j) c.registers.push_back(uname(j));
    c.registers.push_back("c");
  }
  c.output_register = rname(1);

  for (int p = 0; p < P; ++p) {
    for (int a = 0; a < L; ++a) {
      const Symbol& letter = t.input_alphabet.letter(a);
      for (int s = 0; s < S; ++s) {
        const FactoredOutput& e = t.entry(p, a, s);
        // The prefix-sourced blocks of the entry are exactly the segments
        // the registers held before this letter; their count must match.
        int olds = 0;
        for (const Block& b : e.blocks)
          if (b.source == kLeft) ++olds;
        const Shape& before = shapes.at(p, t.future.next[s][a]);
        if (olds != static_cast<int>(std::count(before.begin(), before.end(), 'L')))
          throw TableError("internal: entry left blocks do not match the incoming shape");

        std::vector<RegisterOp> ops;
        for (int i = 1; i <= olds; ++i)
          ops.push_back(RegisterOp::concat(uname(i), rname(i)));
        int seg = 0, old_index = 0;
        bool at_break = true;
        for (const Block& b : e.blocks) {
          if (b.source == kRight) {
            at_break = true;
            continue;
          }
          if (at_break) {
            ++seg;
            at_break = false;
          }
          if (b.source == kLeft) {
            ops.push_back(RegisterOp::concat(rname(seg), uname(++old_index)));
          } else {
            for (const Symbol& x : *b.content) {
              ops.push_back(RegisterOp::create("c", x));
              ops.push_back(RegisterOp::concat(rname(seg), "c"));
            }
          }
        }
        c.updates[{pname(p), letter, sname(s)}] = std::move(ops);
      }
    }
  }
  for (int p = 0; p < P; ++p) c.finish[pname(p)] = {};
  c.canonical = true;
  c.validate();
  return c;
}

LookaroundTransducer canonize(const Machine& m) {
  return canonize_from_table(minimize_table(char_table(m)));
}

namespace {

// Representatives of every reachable state pair of two same-alphabet
// automata: shortest word first, lexicographically least within a length.
// `append` grows words on the right (prefix side); otherwise on the left
// (suffix side, matching right-to-left consumption).
std::vector<std::pair<std::pair<int, int>, Word>> product_reps(
    const Alphabet& alphabet, const BehaviorDfa& d1, const BehaviorDfa& d2,
    bool append) {
  const int L = alphabet.size();
  std::vector<std::pair<std::pair<int, int>, Word>> all, layer;
  std::set<std::pair<int, int>> seen;
  layer.push_back({{d1.initial, d2.initial}, {}});
  seen.insert(layer[0].first);
  all = layer;
  while (!layer.empty()) {
    std::vector<std::pair<std::pair<int, int>, Word>> next_layer;
    auto step = [&](const std::pair<std::pair<int, int>, Word>& item, int a) {
      std::pair<int, int> np{d1.next[item.first.first][a], d2.next[item.first.second][a]};
      if (!seen.insert(np).second) return;
      Word w;
      if (append) {
        w = item.second;
        w.push_back(alphabet.letter(a));
      } else {
        w.push_back(alphabet.letter(a));
        w.insert(w.end(), item.second.begin(), item.second.end());
      }
      next_layer.push_back({np, std::move(w)});
    };
    if (append) {
      for (const auto& item : layer)
        for (int a = 0; a < L; ++a) step(item, a);
    } else {
      for (int a = 0; a < L; ++a)
        for (const auto& item : layer) step(item, a);
    }
    all.insert(all.end(), next_layer.begin(), next_layer.end());
    layer = std::move(next_layer);
  }
  return all;
}

}  // namespace

CanonicalEquivalence canonical_equal(const LookaroundTransducer& c1,
                                     const LookaroundTransducer& c2) {
  for (const LookaroundTransducer* c : {&c1, &c2})
    if (!c->canonical)
      throw PreconditionError("machine is not marked canonical");
  if (!(c1.input_alphabet == c2.input_alphabet))
    throw PreconditionError("input alphabets differ");
  if (!(c1.output_alphabet == c2.output_alphabet))
    throw PreconditionError("output alphabets differ");

  CharTable t1 = minimize_table(lookaround_char_table(c1));
  CharTable t2 = minimize_table(lookaround_char_table(c2));
  if (t1.past.num_states != static_cast<int>(c1.past.states.size()) ||
      t1.future.num_states != static_cast<int>(c1.future.states.size()) ||
      t2.past.num_states != static_cast<int>(c2.past.states.size()) ||
      t2.future.num_states != static_cast<int>(c2.future.states.size()))
    throw PreconditionError("machine is not in canonical (minimal) form");

  if (t1 == t2) return {true, std::nullopt};

  auto past_pairs = product_reps(t1.input_alphabet, t1.past, t2.past, true);
  auto future_pairs = product_reps(t1.input_alphabet, t1.future, t2.future, false);
  const int L = t1.input_alphabet.size();
  std::optional<SplitWitness> best;
  auto better = [](const SplitWitness& a, const SplitWitness& b) {
    std::size_t la = a.prefix.size() + 1 + a.suffix.size();
    std::size_t lb = b.prefix.size() + 1 + b.suffix.size();
    if (la != lb) return la < lb;
    return std::tie(a.prefix, a.letter, a.suffix) < std::tie(b.prefix, b.letter, b.suffix);
  };
  for (const auto& [pp, v] : past_pairs)
    for (int a = 0; a < L; ++a)
      for (const auto& [ss, w] : future_pairs)
        if (!(t1.entry(pp.first, a, ss.first) == t2.entry(pp.second, a, ss.second))) {
          SplitWitness cand{v, t1.input_alphabet.letter(a), w};
          if (!best || better(cand, *best)) best = std::move(cand);
        }
  if (!best) throw TableError("internal: tables differ but no split distinguishes them");
  return {false, std::move(best)};
}

}  // namespace otx
