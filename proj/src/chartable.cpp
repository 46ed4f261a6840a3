#include "otx/chartable.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>

namespace otx {

int BehaviorDfa::run(const Alphabet& a, const Word& w) const {
  int q = initial;
  if (dir == Dir::LeftToRight) {
    for (const Symbol& s : w) q = next[q][a.index(s)];
  } else {
    for (auto it = w.rbegin(); it != w.rend(); ++it) q = next[q][a.index(*it)];
  }
  return q;
}

namespace {

// ---- shared block assembly -------------------------------------------------

enum class ChunkKind { Left, Middle, Right };

struct Chunk {
  ChunkKind kind;
  Word letters;  // Middle only
};

using ChunkSeq = std::vector<Chunk>;

void append_chunk(ChunkSeq& seq, Chunk c) {
  if (!seq.empty() && seq.back().kind == c.kind) {
    if (c.kind == ChunkKind::Middle)
      seq.back().letters.insert(seq.back().letters.end(), c.letters.begin(),
                                c.letters.end());
    return;  // abstract chunks of one kind collapse
  }
  seq.push_back(std::move(c));
}

void append_seq(ChunkSeq& dst, const ChunkSeq& src) {
  for (const Chunk& c : src) append_chunk(dst, c);
}

FactoredOutput chunks_to_factored(const ChunkSeq& seq) {
  FactoredOutput fo;
  for (const Chunk& c : seq) {
    switch (c.kind) {
      case ChunkKind::Left: fo.blocks.push_back({kLeft, std::nullopt}); break;
      case ChunkKind::Middle: fo.blocks.push_back({kMiddle, c.letters}); break;
      case ChunkKind::Right: fo.blocks.push_back({kRight, std::nullopt}); break;
    }
  }
  return fo;
}

void push_eff(EffSeq& out, int item) {
  if (item == kEffMark && !out.empty() && out.back() == kEffMark) return;
  out.push_back(item);
}

void append_eff(EffSeq& dst, const EffSeq& src) {
  for (int x : src) push_eff(dst, x);
}

// Replace every atom of `pattern` by its sequence in `env`, keeping marks.
EffSeq subst_eff(const EffSeq& pattern, const std::vector<EffSeq>& env) {
  EffSeq out;
  for (int item : pattern) {
    if (item == kEffMark) push_eff(out, kEffMark);
    else append_eff(out, env[item]);
  }
  return out;
}

// ---- indexed view of a streaming transducer ---------------------------------

struct IOp {
  bool create;
  int dst;
  int src;        // concat
  Symbol letter;  // create
};

struct SstIndexed {
  int n_states, n_regs, n_letters, initial, out_reg;
  std::vector<std::vector<std::pair<int, std::vector<IOp>>>> delta;  // [q][a]
  std::vector<std::vector<IOp>> eoi;                                 // [q]

  explicit SstIndexed(const StreamingTransducer& m) {
    std::map<std::string, int> sidx, ridx;
    for (int i = 0; i < static_cast<int>(m.states.size()); ++i) sidx[m.states[i]] = i;
    for (int i = 0; i < static_cast<int>(m.registers.size()); ++i)
      ridx[m.registers[i]] = i;
    n_states = static_cast<int>(m.states.size());
    n_regs = static_cast<int>(m.registers.size());
    n_letters = m.input_alphabet.size();
    initial = sidx.at(m.initial);
    out_reg = ridx.at(m.output_register);
    auto index_ops = [&](const std::vector<RegisterOp>& ops) {
      std::vector<IOp> out;
      for (const RegisterOp& op : ops) {
        if (op.kind == RegisterOp::Kind::Create)
          out.push_back({true, ridx.at(op.dst), -1, op.letter});
        else
          out.push_back({false, ridx.at(op.dst), ridx.at(op.src), {}});
      }
      return out;
    };
    delta.assign(n_states, {});
    eoi.assign(n_states, {});
    for (int q = 0; q < n_states; ++q) {
      delta[q].resize(n_letters);
      for (int a = 0; a < n_letters; ++a) {
        const auto& tr = m.transitions.at({m.states[q], m.input_alphabet.letter(a)});
        delta[q][a] = {sidx.at(tr.next), index_ops(tr.ops)};
      }
      auto it = m.end_of_input.find(m.states[q]);
      if (it != m.end_of_input.end()) eoi[q] = index_ops(it->second);
    }
  }
};

uint64_t apply_ops_mask(const std::vector<IOp>& ops, uint64_t mask) {
  for (const IOp& op : ops) {
    if (op.create) {
      mask |= 1ull << op.dst;
    } else {
      if (mask >> op.src & 1) mask |= 1ull << op.dst;
      mask &= ~(1ull << op.src);
    }
  }
  return mask;
}

// Apply ops symbolically over per-register sequences.
void apply_ops_eff(const std::vector<IOp>& ops, std::vector<EffSeq>& env) {
  for (const IOp& op : ops) {
    if (op.create) {
      env[op.dst] = {kEffMark};
    } else {
      append_eff(env[op.dst], env[op.src]);
      env[op.src].clear();
    }
  }
}

// Apply ops concretely over per-register chunk sequences; created letters
// become middle content.
void apply_ops_chunks(const std::vector<IOp>& ops, std::vector<ChunkSeq>& env) {
  for (const IOp& op : ops) {
    if (op.create) {
      env[op.dst] = {Chunk{ChunkKind::Middle, {op.letter}}};
    } else {
      append_seq(env[op.dst], env[op.src]);
      env[op.src].clear();
    }
  }
}

SstWordEffect identity_effect(int n_states, int n_regs) {
  SstWordEffect e;
  e.next_control.resize(n_states);
  e.regs.assign(n_states, std::vector<EffSeq>(n_regs));
  for (int q = 0; q < n_states; ++q) {
    e.next_control[q] = q;
    for (int r = 0; r < n_regs; ++r) e.regs[q][r] = {r};
  }
  return e;
}

SstWordEffect letter_effect(const SstIndexed& ix, int a) {
  SstWordEffect e;
  e.next_control.resize(ix.n_states);
  e.regs.assign(ix.n_states, {});
  for (int q = 0; q < ix.n_states; ++q) {
    const auto& [q2, ops] = ix.delta[q][a];
    e.next_control[q] = q2;
    std::vector<EffSeq> env(ix.n_regs);
    for (int r = 0; r < ix.n_regs; ++r) env[r] = {r};
    apply_ops_eff(ops, env);
    e.regs[q] = std::move(env);
  }
  return e;
}

// Output sequence per starting control state, with the end-of-input
// concatenations folded in.
std::vector<EffSeq> effect_outmap(const SstIndexed& ix, const SstWordEffect& e) {
  std::vector<EffSeq> out(ix.n_states);
  for (int q = 0; q < ix.n_states; ++q) {
    std::vector<EffSeq> env = e.regs[q];
    apply_ops_eff(ix.eoi[e.next_control[q]], env);
    out[q] = env[ix.out_reg];
    int atoms = 0;
    for (int item : out[q])
      if (item != kEffMark) ++atoms;
    if (atoms > ix.n_regs ||
        static_cast<int>(out[q].size()) > 2 * ix.n_regs + 1)
      throw TableError("internal: summary sequence exceeds its bound");
  }
  return out;
}

std::vector<char> flags_from_reps(const CharTable& t, const std::vector<Word>& reps) {
  std::vector<char> flags(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i)
    flags[i] = reps[i].empty() ? 1 : table_eval(t, reps[i]).items.empty();
  return flags;
}

}  // namespace

SstWordEffect sst_identity_effect(const StreamingTransducer& m) {
  SstIndexed ix(m);
  return identity_effect(ix.n_states, ix.n_regs);
}

SstWordEffect sst_letter_effect(const StreamingTransducer& m, const Symbol& a) {
  SstIndexed ix(m);
  return letter_effect(ix, m.input_alphabet.index(a));
}

SstWordEffect sst_effect_compose(const SstWordEffect& first, const SstWordEffect& then) {
  SstWordEffect out;
  int n_states = static_cast<int>(first.next_control.size());
  out.next_control.resize(n_states);
  out.regs.assign(n_states, {});
  for (int q = 0; q < n_states; ++q) {
    int q1 = first.next_control[q];
    out.next_control[q] = then.next_control[q1];
    int n_regs = static_cast<int>(first.regs[q].size());
    out.regs[q].resize(n_regs);
    for (int r = 0; r < n_regs; ++r)
      out.regs[q][r] = subst_eff(then.regs[q1][r], first.regs[q]);
  }
  return out;
}

SstWordEffect sst_word_effect(const StreamingTransducer& m, const Word& w) {
  SstIndexed ix(m);
  SstWordEffect e = identity_effect(ix.n_states, ix.n_regs);
  for (const Symbol& s : w)
    e = sst_effect_compose(e, letter_effect(ix, m.input_alphabet.index(s)));
  return e;
}

CharTable sst_char_table(const StreamingTransducer& m) {
  m.validate();
  SstIndexed ix(m);
  if (ix.n_regs > 60) throw ResourceError("too many registers for summary masks");
  const int L = ix.n_letters;

  // Prefix summaries: control state plus which registers are non-empty.
  struct Past {
    int q;
    uint64_t mask;
    auto operator<=>(const Past&) const = default;
  };
  std::map<Past, int> pindex;
  std::vector<Past> plist;
  std::vector<Word> preps;
  std::vector<std::vector<int>> pnext;
  {
    Past start{ix.initial, 0};
    pindex[start] = 0;
    plist.push_back(start);
    preps.push_back({});
    for (std::size_t i = 0; i < plist.size(); ++i) {
      Past cur = plist[i];
      pnext.emplace_back(L);
      for (int a = 0; a < L; ++a) {
        const auto& [q2, ops] = ix.delta[cur.q][a];
        Past nxt{q2, apply_ops_mask(ops, cur.mask)};
        auto [it, fresh] = pindex.try_emplace(nxt, static_cast<int>(plist.size()));
        if (fresh) {
          plist.push_back(nxt);
          Word w = preps[i];
          w.push_back(m.input_alphabet.letter(a));
          preps.push_back(std::move(w));
        }
        pnext[i][a] = it->second;
      }
    }
  }

  // Suffix summaries: effect of the suffix, keyed by value.
  std::map<SstWordEffect, int> findex;
  std::vector<SstWordEffect> flist;
  std::vector<std::vector<EffSeq>> foutmaps;
  std::vector<Word> freps;
  std::vector<std::vector<int>> fnext;
  {
    std::vector<SstWordEffect> letter_effects;
    for (int a = 0; a < L; ++a) letter_effects.push_back(letter_effect(ix, a));
    SstWordEffect start = identity_effect(ix.n_states, ix.n_regs);
    findex[start] = 0;
    flist.push_back(start);
    foutmaps.push_back(effect_outmap(ix, start));
    freps.push_back({});
    for (std::size_t i = 0; i < flist.size(); ++i) {
      fnext.emplace_back(L);
      for (int a = 0; a < L; ++a) {
        SstWordEffect nxt = sst_effect_compose(letter_effects[a], flist[i]);
        auto [it, fresh] = findex.try_emplace(nxt, static_cast<int>(flist.size()));
        if (fresh) {
          flist.push_back(nxt);
          foutmaps.push_back(effect_outmap(ix, flist.back()));
          Word w{m.input_alphabet.letter(a)};
          w.insert(w.end(), freps[i].begin(), freps[i].end());
          freps.push_back(std::move(w));
        }
        fnext[i][a] = it->second;
      }
    }
  }

  CharTable t;
  t.input_alphabet = m.input_alphabet;
  t.output_alphabet = m.output_alphabet;
  t.past = {BehaviorDfa::Dir::LeftToRight, static_cast<int>(plist.size()), 0, pnext};
  t.future = {BehaviorDfa::Dir::RightToLeft, static_cast<int>(flist.size()), 0, fnext};
  t.entries.resize(static_cast<std::size_t>(plist.size()) * L * flist.size());

  for (int p = 0; p < t.past.num_states; ++p) {
    for (int a = 0; a < L; ++a) {
      const auto& [q2, ops] = ix.delta[plist[p].q][a];
      for (int s = 0; s < t.future.num_states; ++s) {
        std::vector<ChunkSeq> env(ix.n_regs);
        for (int r = 0; r < ix.n_regs; ++r)
          if (plist[p].mask >> r & 1) env[r] = {Chunk{ChunkKind::Left, {}}};
        apply_ops_chunks(ops, env);
        ChunkSeq out;
        for (int item : foutmaps[s][q2]) {
          if (item == kEffMark) append_chunk(out, {ChunkKind::Right, {}});
          else append_seq(out, env[item]);
        }
        t.entry(p, a, s) = chunks_to_factored(out);
      }
    }
  }

  t.empty_given_past = flags_from_reps(t, preps);
  t.empty_given_future = flags_from_reps(t, freps);
  return t;
}

// ---- two-way construction ----------------------------------------------------

namespace {

struct TwIndexed {
  int n_states, n_letters, initial;
  struct Tr {
    int next;  // -1 = accept
    bool right;
    bool emits;
    Word out;
  };
  std::vector<std::vector<Tr>> delta;  // [q][sym]; sym L = ^, L+1 = $

  explicit TwIndexed(const TwoWayTransducer& m) {
    std::map<std::string, int> sidx;
    for (int i = 0; i < static_cast<int>(m.states.size()); ++i) sidx[m.states[i]] = i;
    n_states = static_cast<int>(m.states.size());
    n_letters = m.input_alphabet.size();
    initial = sidx.at(m.initial);
    delta.assign(n_states, std::vector<Tr>(n_letters + 2));
    for (int q = 0; q < n_states; ++q) {
      for (int sym = 0; sym < n_letters + 2; ++sym) {
        const Symbol& s = sym < n_letters ? m.input_alphabet.letter(sym)
                          : sym == n_letters ? kLeftEnd
                                             : kRightEnd;
        const auto& tr = m.transitions.at({m.states[q], s});
        delta[q][sym] = {tr.next == m.accept ? -1 : sidx.at(tr.next),
                         tr.move == Direction::Right, !tr.output.empty(), tr.output};
      }
    }
  }
  int left_marker() const { return n_letters; }
  int right_marker() const { return n_letters + 1; }
};

struct Outcome {
  bool halt = false;
  int state = -1;  // exit state (when !halt)
  bool emitted = false;
  auto operator<=>(const Outcome&) const = default;
};

// Behavior of a suffix region w·$ on a head entering from the left.
struct SuffixType {
  std::vector<Outcome> enter;
  auto operator<=>(const SuffixType&) const = default;
};

// Behavior of a prefix region ^·v: the run from the initial configuration
// up to its first exit on the right, and the reaction to re-entries from
// the right.
struct PrefixType {
  Outcome first;
  std::vector<Outcome> reenter;
  auto operator<=>(const PrefixType&) const = default;
};

SuffixType suffix_base(const TwIndexed& ix) {
  SuffixType t;
  t.enter.resize(ix.n_states);
  for (int q = 0; q < ix.n_states; ++q) {
    const auto& tr = ix.delta[q][ix.right_marker()];
    if (tr.next < 0) t.enter[q] = {true, -1, false};
    else if (!tr.right) t.enter[q] = {false, tr.next, false};
    else throw ValidationError("transition at $ moves right without accepting");
  }
  return t;
}

SuffixType suffix_compose(const TwIndexed& ix, int a, const SuffixType& y) {
  SuffixType t;
  t.enter.resize(ix.n_states);
  for (int q = 0; q < ix.n_states; ++q) {
    std::set<int> seen;
    int cur = q;
    bool em = false;
    while (true) {
      if (!seen.insert(cur).second)
        throw NonterminationError("two-way machine loops inside a suffix region");
      const auto& tr = ix.delta[cur][a];
      em = em || tr.emits;
      if (tr.next < 0) { t.enter[q] = {true, -1, em}; break; }
      if (!tr.right) { t.enter[q] = {false, tr.next, em}; break; }
      const Outcome& o = y.enter[tr.next];
      em = em || o.emitted;
      if (o.halt) { t.enter[q] = {true, -1, em}; break; }
      cur = o.state;
    }
  }
  return t;
}

// Run at the cell holding letter `a` with the region summarized by `left`
// on its left, until the head exits to the right, accepts, or loops.
Outcome run_at_cell(const TwIndexed& ix, int a, const PrefixType& left, int q0,
                    bool emitted0) {
  std::set<int> seen;
  int cur = q0;
  bool em = emitted0;
  while (true) {
    if (!seen.insert(cur).second)
      throw NonterminationError("two-way machine loops inside a prefix region");
    const auto& tr = ix.delta[cur][a];
    em = em || tr.emits;
    if (tr.next < 0) return {true, -1, em};
    if (tr.right) return {false, tr.next, em};
    const Outcome& o = left.reenter[tr.next];
    em = em || o.emitted;
    if (o.halt) return {true, -1, em};
    cur = o.state;
  }
}

PrefixType prefix_base(const TwIndexed& ix) {
  PrefixType t;
  t.reenter.resize(ix.n_states);
  auto at_mark = [&](int q) -> Outcome {
    const auto& tr = ix.delta[q][ix.left_marker()];
    if (tr.next < 0) return {true, -1, false};
    if (!tr.right) throw ValidationError("transition at ^ moves left");
    return {false, tr.next, false};
  };
  t.first = at_mark(ix.initial);
  for (int q = 0; q < ix.n_states; ++q) t.reenter[q] = at_mark(q);
  return t;
}

PrefixType prefix_compose(const TwIndexed& ix, const PrefixType& x, int a) {
  PrefixType t;
  t.first = x.first.halt ? x.first : run_at_cell(ix, a, x, x.first.state, x.first.emitted);
  t.reenter.resize(ix.n_states);
  for (int q = 0; q < ix.n_states; ++q) t.reenter[q] = run_at_cell(ix, a, x, q, false);
  return t;
}

FactoredOutput twoway_entry(const TwIndexed& ix, const PrefixType& p, int a,
                            const SuffixType& s) {
  ChunkSeq out;
  if (p.first.emitted) append_chunk(out, {ChunkKind::Left, {}});
  if (!p.first.halt) {
    std::set<int> seen;
    int cur = p.first.state;
    while (true) {
      if (!seen.insert(cur).second)
        throw NonterminationError("two-way machine loops at a middle cell");
      const auto& tr = ix.delta[cur][a];
      if (tr.emits) append_chunk(out, {ChunkKind::Middle, tr.out});
      if (tr.next < 0) break;
      if (tr.right) {
        const Outcome& o = s.enter[tr.next];
        if (o.emitted) append_chunk(out, {ChunkKind::Right, {}});
        if (o.halt) break;
        cur = o.state;
      } else {
        const Outcome& o = p.reenter[tr.next];
        if (o.emitted) append_chunk(out, {ChunkKind::Left, {}});
        if (o.halt) break;
        cur = o.state;
      }
    }
  }
  return chunks_to_factored(out);
}

}  // namespace

CharTable twoway_char_table(const TwoWayTransducer& m) {
  m.validate();
  twoway_eval(m, {});  // the empty-word run must terminate
  TwIndexed ix(m);
  const int L = ix.n_letters;

  std::map<PrefixType, int> pindex;
  std::vector<PrefixType> plist;
  std::vector<Word> preps;
  std::vector<std::vector<int>> pnext;
  {
    PrefixType start = prefix_base(ix);
    pindex[start] = 0;
    plist.push_back(start);
    preps.push_back({});
    for (std::size_t i = 0; i < plist.size(); ++i) {
      pnext.emplace_back(L);
      for (int a = 0; a < L; ++a) {
        PrefixType nxt = prefix_compose(ix, plist[i], a);
        auto [it, fresh] = pindex.try_emplace(nxt, static_cast<int>(plist.size()));
        if (fresh) {
          plist.push_back(nxt);
          Word w = preps[i];
          w.push_back(m.input_alphabet.letter(a));
          preps.push_back(std::move(w));
        }
        pnext[i][a] = it->second;
      }
    }
  }

  std::map<SuffixType, int> findex;
  std::vector<SuffixType> flist;
  std::vector<Word> freps;
  std::vector<std::vector<int>> fnext;
  {
    SuffixType start = suffix_base(ix);
    findex[start] = 0;
    flist.push_back(start);
    freps.push_back({});
    for (std::size_t i = 0; i < flist.size(); ++i) {
      fnext.emplace_back(L);
      for (int a = 0; a < L; ++a) {
        SuffixType nxt = suffix_compose(ix, a, flist[i]);
        auto [it, fresh] = findex.try_emplace(nxt, static_cast<int>(flist.size()));
        if (fresh) {
          flist.push_back(nxt);
          Word w{m.input_alphabet.letter(a)};
          w.insert(w.end(), freps[i].begin(), freps[i].end());
          freps.push_back(std::move(w));
        }
        fnext[i][a] = it->second;
      }
    }
  }

  CharTable t;
  t.input_alphabet = m.input_alphabet;
  t.output_alphabet = m.output_alphabet;
  t.past = {BehaviorDfa::Dir::LeftToRight, static_cast<int>(plist.size()), 0, pnext};
  t.future = {BehaviorDfa::Dir::RightToLeft, static_cast<int>(flist.size()), 0, fnext};
  t.entries.resize(static_cast<std::size_t>(plist.size()) * L * flist.size());
  for (int p = 0; p < t.past.num_states; ++p)
    for (int a = 0; a < L; ++a)
      for (int s = 0; s < t.future.num_states; ++s)
        t.entry(p, a, s) = twoway_entry(ix, plist[p], a, flist[s]);

  t.empty_given_past = flags_from_reps(t, preps);
  t.empty_given_future = flags_from_reps(t, freps);
  return t;
}

// ---- lookaround construction ---------------------------------------------------

namespace {

struct LaIndexed {
  int n_past, n_future, n_regs, n_letters, p0, s0, out_reg;
  std::vector<std::vector<int>> pnext, fnext;                 // [state][letter]
  std::vector<std::vector<std::vector<std::vector<IOp>>>> upd;  // [p][a][s]
  std::vector<std::vector<IOp>> fin;                          // [p]

  explicit LaIndexed(const LookaroundTransducer& m) {
    std::map<std::string, int> pidx, sidx, ridx;
    for (int i = 0; i < static_cast<int>(m.past.states.size()); ++i)
      pidx[m.past.states[i]] = i;
    for (int i = 0; i < static_cast<int>(m.future.states.size()); ++i)
      sidx[m.future.states[i]] = i;
    for (int i = 0; i < static_cast<int>(m.registers.size()); ++i)
      ridx[m.registers[i]] = i;
    n_past = static_cast<int>(m.past.states.size());
    n_future = static_cast<int>(m.future.states.size());
    n_regs = static_cast<int>(m.registers.size());
    n_letters = m.input_alphabet.size();
    p0 = pidx.at(m.past.initial);
    s0 = sidx.at(m.future.initial);
    out_reg = ridx.at(m.output_register);
    auto index_ops = [&](const std::vector<RegisterOp>& ops) {
      std::vector<IOp> out;
      for (const RegisterOp& op : ops) {
        if (op.kind == RegisterOp::Kind::Create)
          out.push_back({true, ridx.at(op.dst), -1, op.letter});
        else
          out.push_back({false, ridx.at(op.dst), ridx.at(op.src), {}});
      }
      return out;
    };
    pnext.assign(n_past, std::vector<int>(n_letters));
    fnext.assign(n_future, std::vector<int>(n_letters));
    for (int p = 0; p < n_past; ++p)
      for (int a = 0; a < n_letters; ++a)
        pnext[p][a] =
            pidx.at(m.past.transitions.at({m.past.states[p], m.input_alphabet.letter(a)}));
    for (int s = 0; s < n_future; ++s)
      for (int a = 0; a < n_letters; ++a)
        fnext[s][a] = sidx.at(
            m.future.transitions.at({m.future.states[s], m.input_alphabet.letter(a)}));
    upd.assign(n_past, {});
    fin.assign(n_past, {});
    for (int p = 0; p < n_past; ++p) {
      upd[p].assign(n_letters, std::vector<std::vector<IOp>>(n_future));
      for (int a = 0; a < n_letters; ++a)
        for (int s = 0; s < n_future; ++s)
          upd[p][a][s] = index_ops(m.updates.at(
              {m.past.states[p], m.input_alphabet.letter(a), m.future.states[s]}));
      fin[p] = index_ops(m.finish.at(m.past.states[p]));
    }
  }
};

}  // namespace

CharTable lookaround_char_table(const LookaroundTransducer& m) {
  m.validate();
  LaIndexed ix(m);
  if (ix.n_regs > 60) throw ResourceError("too many registers for summary masks");
  const int L = ix.n_letters;

  // Prefix summaries: past automaton state plus, for every possible future
  // state of the text still to come, which registers are non-empty. The
  // dependence on the upcoming future state is unavoidable: updates inside
  // the prefix already consulted it.
  struct Past {
    int p;
    std::vector<uint64_t> val;  // [future state] -> register mask
    auto operator<=>(const Past&) const = default;
  };
  std::map<Past, int> pindex;
  std::vector<Past> plist;
  std::vector<Word> preps;
  std::vector<std::vector<int>> pnext;
  {
    Past start{ix.p0, std::vector<uint64_t>(ix.n_future, 0)};
    pindex[start] = 0;
    plist.push_back(start);
    preps.push_back({});
    for (std::size_t i = 0; i < plist.size(); ++i) {
      Past cur = plist[i];
      pnext.emplace_back(L);
      for (int a = 0; a < L; ++a) {
        Past nxt;
        nxt.p = ix.pnext[cur.p][a];
        nxt.val.resize(ix.n_future);
        for (int t = 0; t < ix.n_future; ++t)
          nxt.val[t] = apply_ops_mask(ix.upd[cur.p][a][t], cur.val[ix.fnext[t][a]]);
        auto [it, fresh] = pindex.try_emplace(nxt, static_cast<int>(plist.size()));
        if (fresh) {
          plist.push_back(nxt);
          Word w = preps[i];
          w.push_back(m.input_alphabet.letter(a));
          preps.push_back(std::move(w));
        }
        pnext[i][a] = it->second;
      }
    }
  }

  // Suffix summaries: future automaton state of the suffix plus its effect,
  // per past state at which the suffix is entered.
  struct Fut {
    int s;
    std::vector<int> pfinal;               // [entry past state]
    std::vector<std::vector<EffSeq>> regs; // [entry past state][register]
    auto operator<=>(const Fut&) const = default;
  };
  auto outmap_of = [&](const Fut& f) {
    std::vector<EffSeq> out(ix.n_past);
    for (int p = 0; p < ix.n_past; ++p) {
      std::vector<EffSeq> env = f.regs[p];
      apply_ops_eff(ix.fin[f.pfinal[p]], env);
      out[p] = env[ix.out_reg];
    }
    return out;
  };
  std::map<Fut, int> findex;
  std::vector<Fut> flist;
  std::vector<std::vector<EffSeq>> foutmaps;
  std::vector<Word> freps;
  std::vector<std::vector<int>> fnext;
  {
    Fut start;
    start.s = ix.s0;
    start.pfinal.resize(ix.n_past);
    start.regs.assign(ix.n_past, std::vector<EffSeq>(ix.n_regs));
    for (int p = 0; p < ix.n_past; ++p) {
      start.pfinal[p] = p;
      for (int r = 0; r < ix.n_regs; ++r) start.regs[p][r] = {r};
    }
    findex[start] = 0;
    flist.push_back(start);
    foutmaps.push_back(outmap_of(start));
    freps.push_back({});
    for (std::size_t i = 0; i < flist.size(); ++i) {
      fnext.emplace_back(L);
      for (int a = 0; a < L; ++a) {
        const Fut& cur = flist[i];
        Fut nxt;
        nxt.s = ix.fnext[cur.s][a];
        nxt.pfinal.resize(ix.n_past);
        nxt.regs.assign(ix.n_past, {});
        for (int p = 0; p < ix.n_past; ++p) {
          std::vector<EffSeq> env(ix.n_regs);
          for (int r = 0; r < ix.n_regs; ++r) env[r] = {r};
          apply_ops_eff(ix.upd[p][a][cur.s], env);
          int p1 = ix.pnext[p][a];
          nxt.pfinal[p] = cur.pfinal[p1];
          nxt.regs[p].resize(ix.n_regs);
          for (int r = 0; r < ix.n_regs; ++r)
            nxt.regs[p][r] = subst_eff(cur.regs[p1][r], env);
        }
        auto [it, fresh] = findex.try_emplace(nxt, static_cast<int>(flist.size()));
        if (fresh) {
          flist.push_back(nxt);
          foutmaps.push_back(outmap_of(flist.back()));
          Word w{m.input_alphabet.letter(a)};
          w.insert(w.end(), freps[i].begin(), freps[i].end());
          freps.push_back(std::move(w));
        }
        fnext[i][a] = it->second;
      }
    }
  }

  CharTable t;
  t.input_alphabet = m.input_alphabet;
  t.output_alphabet = m.output_alphabet;
  t.past = {BehaviorDfa::Dir::LeftToRight, static_cast<int>(plist.size()), 0, pnext};
  t.future = {BehaviorDfa::Dir::RightToLeft, static_cast<int>(flist.size()), 0, fnext};
  t.entries.resize(static_cast<std::size_t>(plist.size()) * L * flist.size());

  for (int p = 0; p < t.past.num_states; ++p) {
    for (int a = 0; a < L; ++a) {
      for (int s = 0; s < t.future.num_states; ++s) {
        const Past& P = plist[p];
        const Fut& F = flist[s];
        uint64_t mask = P.val[ix.fnext[F.s][a]];
        std::vector<ChunkSeq> env(ix.n_regs);
        for (int r = 0; r < ix.n_regs; ++r)
          if (mask >> r & 1) env[r] = {Chunk{ChunkKind::Left, {}}};
        apply_ops_chunks(ix.upd[P.p][a][F.s], env);
        int p1 = ix.pnext[P.p][a];
        ChunkSeq out;
        for (int item : foutmaps[s][p1]) {
          if (item == kEffMark) append_chunk(out, {ChunkKind::Right, {}});
          else append_seq(out, env[item]);
        }
        t.entry(p, a, s) = chunks_to_factored(out);
      }
    }
  }

  t.empty_given_past = flags_from_reps(t, preps);
  t.empty_given_future = flags_from_reps(t, freps);
  return t;
}

CharTable char_table(const Machine& m) {
  return std::visit(
      [](const auto& x) -> CharTable {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, StreamingTransducer>) return sst_char_table(x);
        else if constexpr (std::is_same_v<T, TwoWayTransducer>) return twoway_char_table(x);
        else return lookaround_char_table(x);
      },
      m);
}

// ---- minimization -----------------------------------------------------------

namespace {

// Assign dense class ids (0-based, in order of first appearance) to equal keys.
template <typename Key>
std::vector<int> classify(std::vector<Key> keys) {
  std::map<Key, int> ids;
  std::vector<int> out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [it, fresh] = ids.try_emplace(std::move(keys[i]), static_cast<int>(ids.size()));
    out[i] = it->second;
  }
  return out;
}

int count_classes(const std::vector<int>& c) {
  int m = 0;
  for (int x : c) m = std::max(m, x + 1);
  return m;
}

// Standard Moore refinement of `cls` under the successor structure.
void refine_by_transitions(std::vector<int>& cls, const std::vector<std::vector<int>>& next) {
  while (true) {
    std::vector<std::vector<int>> keys(cls.size());
    for (std::size_t q = 0; q < cls.size(); ++q) {
      keys[q].push_back(cls[q]);
      for (int t : next[q]) keys[q].push_back(cls[t]);
    }
    std::vector<int> refined = classify(std::move(keys));
    if (count_classes(refined) == count_classes(cls)) break;
    cls = std::move(refined);
  }
}

}  // namespace

CharTable minimize_table(const CharTable& t) {
  const int P = t.past.num_states, S = t.future.num_states, L = t.input_alphabet.size();

  // Split by observable behavior: the whole-word emptiness flag plus every
  // table entry of the row (column). Every summary state is realized by a
  // word, so raw-indexed rows and columns are exactly the observations.
  std::vector<int> cp, cs;
  {
    std::vector<std::pair<char, std::vector<FactoredOutput>>> rows(P);
    for (int p = 0; p < P; ++p) {
      rows[p].first = t.empty_given_past[p];
      for (int a = 0; a < L; ++a)
        for (int s = 0; s < S; ++s) rows[p].second.push_back(t.entry(p, a, s));
    }
    cp = classify(std::move(rows));
    std::vector<std::pair<char, std::vector<FactoredOutput>>> cols(S);
    for (int s = 0; s < S; ++s) {
      cols[s].first = t.empty_given_future[s];
      for (int p = 0; p < P; ++p)
        for (int a = 0; a < L; ++a) cols[s].second.push_back(t.entry(p, a, s));
    }
    cs = classify(std::move(cols));
  }
  refine_by_transitions(cp, t.past.next);
  refine_by_transitions(cs, t.future.next);

  // The quotient must be well defined on entries, flags and transitions.
  std::vector<int> prep(count_classes(cp), -1), srep(count_classes(cs), -1);
  for (int p = 0; p < P; ++p)
    if (prep[cp[p]] < 0) prep[cp[p]] = p;
  for (int s = 0; s < S; ++s)
    if (srep[cs[s]] < 0) srep[cs[s]] = s;
  for (int p = 0; p < P; ++p) {
    int r = prep[cp[p]];
    if (t.empty_given_past[p] != t.empty_given_past[r])
      throw TableError("internal: emptiness flag differs inside a merged row class");
    for (int a = 0; a < L; ++a) {
      if (cp[t.past.next[p][a]] != cp[t.past.next[r][a]])
        throw TableError("internal: transitions differ inside a merged row class");
      for (int s = 0; s < S; ++s)
        if (!(t.entry(p, a, s) == t.entry(r, a, s)))
          throw TableError("internal: entries differ inside a merged row class");
    }
  }
  for (int s = 0; s < S; ++s) {
    int r = srep[cs[s]];
    if (t.empty_given_future[s] != t.empty_given_future[r])
      throw TableError("internal: emptiness flag differs inside a merged column class");
    for (int a = 0; a < L; ++a) {
      if (cs[t.future.next[s][a]] != cs[t.future.next[r][a]])
        throw TableError("internal: transitions differ inside a merged column class");
      for (int p = 0; p < P; ++p)
        if (!(t.entry(p, a, s) == t.entry(p, a, srep[cs[s]])))
          throw TableError("internal: entries differ inside a merged column class");
    }
  }

  // Renumber both quotients in breadth-first order from the initial class so
  // that equal tables become structurally identical.
  auto bfs_order = [&](const std::vector<int>& cls, int initial,
                       const std::vector<int>& rep,
                       const std::vector<std::vector<int>>& next) {
    int n = static_cast<int>(rep.size());
    std::vector<int> order(n, -1);
    std::vector<int> list;
    order[cls[initial]] = 0;
    list.push_back(cls[initial]);
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (int a = 0; a < L; ++a) {
        int c = cls[next[rep[list[i]]][a]];
        if (order[c] < 0) {
          order[c] = static_cast<int>(list.size());
          list.push_back(c);
        }
      }
    }
    if (static_cast<int>(list.size()) != n)
      throw TableError("internal: unreachable class after minimization");
    return std::pair{order, list};
  };
  auto [porder, plistc] = bfs_order(cp, t.past.initial, prep, t.past.next);
  auto [sorder, slistc] = bfs_order(cs, t.future.initial, srep, t.future.next);

  CharTable out;
  out.input_alphabet = t.input_alphabet;
  out.output_alphabet = t.output_alphabet;
  int P2 = static_cast<int>(plistc.size()), S2 = static_cast<int>(slistc.size());
  out.past.dir = BehaviorDfa::Dir::LeftToRight;
  out.past.num_states = P2;
  out.past.initial = 0;
  out.past.next.assign(P2, std::vector<int>(L));
  out.future.dir = BehaviorDfa::Dir::RightToLeft;
  out.future.num_states = S2;
  out.future.initial = 0;
  out.future.next.assign(S2, std::vector<int>(L));
  out.empty_given_past.resize(P2);
  out.empty_given_future.resize(S2);
  for (int i = 0; i < P2; ++i) {
    int p = prep[plistc[i]];
    out.empty_given_past[i] = t.empty_given_past[p];
    for (int a = 0; a < L; ++a) out.past.next[i][a] = porder[cp[t.past.next[p][a]]];
  }
  for (int j = 0; j < S2; ++j) {
    int s = srep[slistc[j]];
    out.empty_given_future[j] = t.empty_given_future[s];
    for (int a = 0; a < L; ++a) out.future.next[j][a] = sorder[cs[t.future.next[s][a]]];
  }
  out.entries.resize(static_cast<std::size_t>(P2) * L * S2);
  for (int i = 0; i < P2; ++i)
    for (int a = 0; a < L; ++a)
      for (int j = 0; j < S2; ++j)
        out.entry(i, a, j) = t.entry(prep[plistc[i]], a, srep[slistc[j]]);
  return out;
}

FactoredOutput table_lookup(const CharTable& t, const Word& v, const Symbol& a,
                            const Word& w) {
  return t.entry(t.past.run(t.input_alphabet, v), t.input_alphabet.index(a),
                 t.future.run(t.input_alphabet, w));
}

OriginString table_eval(const CharTable& t, const Word& w) {
  const int n = static_cast<int>(w.size());
  if (n == 0) return {{}, 0};
  std::vector<int> pstate(n + 1), sstate(n + 1);
  pstate[0] = t.past.initial;
  for (int i = 1; i <= n; ++i)
    pstate[i] = t.past.next[pstate[i - 1]][t.input_alphabet.index(w[i - 1])];
  sstate[n] = t.future.initial;
  for (int i = n - 1; i >= 1; --i)
    sstate[i] = t.future.next[sstate[i + 1]][t.input_alphabet.index(w[i])];
  std::vector<FactoredOutput> xs;
  xs.reserve(n);
  for (int i = 1; i <= n; ++i)
    xs.push_back(t.entry(pstate[i - 1], t.input_alphabet.index(w[i - 1]), sstate[i]));
  return otimes_merge(xs, n);
}

}  // namespace otx
