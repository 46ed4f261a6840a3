#include "otx/learn.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace otx {

LfAlphabet LfAlphabet::make(const Alphabet& input, const Alphabet& output) {
  LfAlphabet al;
  std::set<Symbol> seen;
  for (const Symbol& s : input.letters()) {
    al.tokens.push_back(s);
    seen.insert(s);
  }
  for (const Symbol& s : output.letters())
    if (seen.insert(s).second) al.tokens.push_back(s);
  for (const Symbol& reserved : {kLeft, kRight, kLfSep}) {
    if (seen.count(reserved))
      throw ValidationError("alphabet letter collides with reserved token: " + reserved);
    al.tokens.push_back(reserved);
  }
  return al;
}

Word render_lf_value(const FactoredOutput& f) {
  Word out;
  for (const Block& b : f.blocks) {
    if (b.source == kLeft) out.push_back(kLeft);
    else if (b.source == kRight) out.push_back(kRight);
    else out.insert(out.end(), b.content->begin(), b.content->end());
  }
  return out;
}

FactoredOutput parse_lf_value(const Word& tokens, const Alphabet& output) {
  FactoredOutput f;
  for (const Symbol& tok : tokens) {
    if (tok == kLeft || tok == kRight) {
      if (!f.blocks.empty() && f.blocks.back().source == tok)
        throw MalformedLanguageError("adjacent blocks share a source in a value");
      f.blocks.push_back({tok, std::nullopt});
    } else if (output.contains(tok)) {
      if (f.blocks.empty() || f.blocks.back().source != kMiddle)
        f.blocks.push_back({kMiddle, Word{}});
      f.blocks.back().content->push_back(tok);
    } else {
      throw MalformedLanguageError("unexpected token in a value: " + tok);
    }
  }
  return f;
}

Dfa build_lf_dfa(const CharTable& t) {
  LfAlphabet al = LfAlphabet::make(t.input_alphabet, t.output_alphabet);
  const int NT = static_cast<int>(al.tokens.size());
  const int Lin = t.input_alphabet.size();
  const int sep = NT - 1;  // token order fixed by LfAlphabet::make
  std::vector<char> is_value_token(NT, 0);
  is_value_token[NT - 3] = is_value_token[NT - 2] = 1;
  for (const Symbol& o : t.output_alphabet.letters()) {
    for (int i = 0; i < NT; ++i)
      if (al.tokens[i] == o) is_value_token[i] = 1;
  }

  // States: a sink, the four reading phases, and one shared spine per
  // distinct rendered value.
  std::vector<std::vector<int>> next;
  std::vector<char> accepting;
  auto new_state = [&](bool acc) {
    next.emplace_back(NT, 0);  // default transition: sink (state 0)
    accepting.push_back(acc);
    return static_cast<int>(next.size()) - 1;
  };
  new_state(false);  // 0 = sink

  std::map<Word, int> spine_of;
  auto spine = [&](const Word& value) {
    auto it = spine_of.find(value);
    if (it != spine_of.end()) return it->second;
    // Chain of states consuming the value; built back to front.
    int after = new_state(true);
    for (auto rit = value.rbegin(); rit != value.rend(); ++rit) {
      int pos = new_state(false);
      int tok = static_cast<int>(std::find(al.tokens.begin(), al.tokens.end(), *rit) -
                                 al.tokens.begin());
      next[pos][tok] = after;
      after = pos;
    }
    spine_of.emplace(value, after);
    return after;
  };

  std::map<std::array<int, 4>, int> phase_id;
  std::vector<std::array<int, 4>> todo;
  auto phase = [&](std::array<int, 4> key) {
    auto it = phase_id.find(key);
    if (it != phase_id.end()) return it->second;
    int id = new_state(false);
    phase_id.emplace(key, id);
    todo.push_back(key);
    return id;
  };

  int initial = phase({0, t.past.initial, 0, 0});
  for (std::size_t i = 0; i < todo.size(); ++i) {
    auto [ph, p, a, s] = todo[i];
    int self = phase_id.at(todo[i]);
    switch (ph) {
      case 0:  // reading the prefix v
        for (int x = 0; x < Lin; ++x) next[self][x] = phase({0, t.past.next[p][x], 0, 0});
        next[self][sep] = phase({1, p, 0, 0});
        break;
      case 1:  // exactly one letter
        for (int x = 0; x < Lin; ++x) next[self][x] = phase({2, p, x, 0});
        break;
      case 2:  // the second separator
        next[self][sep] = phase({3, p, a, t.future.initial});
        break;
      case 3:  // reading reverse(w)
        for (int x = 0; x < Lin; ++x) next[self][x] = phase({3, p, a, t.future.next[s][x]});
        next[self][sep] = spine(render_lf_value(t.entry(p, a, s)));
        break;
    }
  }

  Dfa raw;
  raw.tokens = al.tokens;
  raw.num_states = static_cast<int>(next.size());
  raw.initial = initial;
  raw.next = std::move(next);
  raw.accepting = std::move(accepting);
  return minimize_dfa(raw);
}

Dfa lstar(LanguageTeacher& teacher, const LstarTrace& trace) {
  const std::vector<Symbol>& toks = teacher.tokens();
  const int L = static_cast<int>(toks.size());
  std::map<Word, char> memo;
  auto ask = [&](const Word& w) -> bool {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    bool b = teacher.member(w);
    memo.emplace(w, b);
    return b;
  };
  std::vector<Word> prefixes{{}}, suffixes{{}};
  std::set<Word> suffix_set{{}};
  auto row_of = [&](const Word& u) {
    std::vector<char> r(suffixes.size());
    for (std::size_t i = 0; i < suffixes.size(); ++i) {
      Word w = u;
      w.insert(w.end(), suffixes[i].begin(), suffixes[i].end());
      r[i] = ask(w);
    }
    return r;
  };

  int round = 0, prev_states = -1;
  while (true) {
    std::map<std::vector<char>, int> rows;
    bool changed = true;
    while (changed) {
      changed = false;
      rows.clear();
      for (std::size_t i = 0; i < prefixes.size(); ++i)
        if (!rows.emplace(row_of(prefixes[i]), static_cast<int>(i)).second)
          throw ProtocolError("two prefixes share a row despite distinct classes");
      for (std::size_t i = 0; i < prefixes.size() && !changed; ++i)
        for (int a = 0; a < L && !changed; ++a) {
          Word ua = prefixes[i];
          ua.push_back(toks[a]);
          if (!rows.count(row_of(ua))) {
            prefixes.push_back(std::move(ua));
            changed = true;
          }
        }
    }

    const int n = static_cast<int>(prefixes.size());
    Dfa h;
    h.tokens = toks;
    h.num_states = n;
    h.initial = 0;
    h.next.assign(n, std::vector<int>(L));
    h.accepting.resize(n);
    for (int i = 0; i < n; ++i) {
      h.accepting[i] = row_of(prefixes[i])[0];  // the empty suffix is column 0
      for (int a = 0; a < L; ++a) {
        Word ua = prefixes[i];
        ua.push_back(toks[a]);
        h.next[i][a] = rows.at(row_of(ua));
      }
    }
    if (trace) trace(round, n, static_cast<int>(suffixes.size()));
    ++round;
    if (prev_states >= 0 && n <= prev_states)
      throw ProtocolError("counterexample did not grow the hypothesis");
    prev_states = n;

    std::optional<Word> cex = teacher.counterexample(h);
    if (!cex) return h;
    for (std::size_t k = 0; k <= cex->size(); ++k) {
      Word suffix(cex->begin() + k, cex->end());
      if (suffix_set.insert(suffix).second) suffixes.push_back(std::move(suffix));
    }
  }
}

MachineTeacher::MachineTeacher(Machine m)
    : machine_(std::move(m)),
      table_(minimize_table(char_table(machine_))),
      language_(build_lf_dfa(table_)),
      lf_alphabet_(LfAlphabet::make(table_.input_alphabet, table_.output_alphabet)) {}

bool MachineTeacher::member(const Word& u) {
  ++stats_.membership_queries;
  auto reject = [&] {
    ++stats_.local_rejections;
    return false;
  };

  std::vector<std::size_t> seps;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] == kLfSep) seps.push_back(i);
  if (seps.size() != 3) return reject();
  Word v(u.begin(), u.begin() + seps[0]);
  Word mid(u.begin() + seps[0] + 1, u.begin() + seps[1]);
  Word wr(u.begin() + seps[1] + 1, u.begin() + seps[2]);
  Word value(u.begin() + seps[2] + 1, u.end());
  if (mid.size() != 1) return reject();
  const Alphabet& in = table_.input_alphabet;
  const Alphabet& out = table_.output_alphabet;
  for (const Word* seg : {&v, &mid, &wr})
    for (const Symbol& x : *seg)
      if (!in.contains(x)) return reject();
  for (const Symbol& x : value)
    if (!(x == kLeft || x == kRight || out.contains(x))) return reject();

  Word w(wr.rbegin(), wr.rend());
  Word whole = v;
  whole.push_back(mid[0]);
  whole.insert(whole.end(), w.begin(), w.end());
  auto it = value_cache_.find(whole);
  if (it == value_cache_.end()) {
    ++stats_.value_queries;
    it = value_cache_.emplace(whole, eval(machine_, whole)).first;
  }
  SourceColoring sigma = SourceColoring::from_parts(
      {static_cast<int>(v.size()), 1, static_cast<int>(w.size())}, part_names(3));
  FactoredOutput f = abstract_blocks(factorize(it->second, sigma), {kLeft, kRight});
  return render_lf_value(f) == value;
}

std::optional<Word> MachineTeacher::counterexample(const Dfa& hypothesis) {
  ++stats_.equivalence_queries;
  std::optional<Word> diff = shortest_difference(hypothesis, language_);
  if (diff) stats_.cex_lengths.push_back(static_cast<int>(diff->size()));
  return diff;
}

CharTable decode_table(const Dfa& d0, const Alphabet& input, const Alphabet& output) {
  LfAlphabet al = LfAlphabet::make(input, output);
  Dfa d = minimize_dfa(d0);
  if (d.tokens != al.tokens)
    throw ValidationError("acceptor tokens do not match the declared alphabets");
  const int NT = static_cast<int>(al.tokens.size());
  const int Lin = input.size();
  const int sep = NT - 1;
  std::vector<int> value_tokens;
  for (int i = 0; i < NT - 1; ++i)
    if (al.tokens[i] == kLeft || al.tokens[i] == kRight || output.contains(al.tokens[i]))
      value_tokens.push_back(i);

  // Rows: residuals of the acceptor under input letters.
  std::vector<int> pstates{d.initial};
  std::map<int, int> pindex{{d.initial, 0}};
  std::vector<Word> preps{{}};
  std::vector<std::vector<int>> pnext;
  for (std::size_t i = 0; i < pstates.size(); ++i) {
    pnext.emplace_back(Lin);
    for (int a = 0; a < Lin; ++a) {
      int q = d.next[pstates[i]][a];
      auto [it, fresh] = pindex.try_emplace(q, static_cast<int>(pstates.size()));
      if (fresh) {
        pstates.push_back(q);
        Word w = preps[i];
        w.push_back(al.tokens[a]);
        preps.push_back(std::move(w));
      }
      pnext[i][a] = it->second;
    }
  }
  const int P = static_cast<int>(pstates.size());

  // Anchor states: where the acceptor sits after v#a#.
  std::vector<std::vector<int>> anchor(P, std::vector<int>(Lin));
  std::vector<int> rset;
  std::map<int, int> rindex;
  for (int i = 0; i < P; ++i)
    for (int a = 0; a < Lin; ++a) {
      int q = d.next[d.next[d.next[pstates[i]][sep]][a]][sep];
      anchor[i][a] = q;
      if (rindex.try_emplace(q, static_cast<int>(rset.size())).second) rset.push_back(q);
    }
  const int R = static_cast<int>(rset.size());

  // Columns: the functions the reversed-suffix segment induces on anchors.
  std::vector<std::vector<int>> fstates;
  std::map<std::vector<int>, int> findex;
  std::vector<Word> freps;
  std::vector<std::vector<int>> fnext;
  {
    std::vector<int> id(rset);
    findex[id] = 0;
    fstates.push_back(std::move(id));
    freps.push_back({});
    for (std::size_t i = 0; i < fstates.size(); ++i) {
      fnext.emplace_back(Lin);
      for (int a = 0; a < Lin; ++a) {
        std::vector<int> g(R);
        for (int k = 0; k < R; ++k) g[k] = d.next[fstates[i][k]][a];
        auto [it, fresh] = findex.try_emplace(g, static_cast<int>(fstates.size()));
        if (fresh) {
          fstates.push_back(std::move(g));
          Word w{al.tokens[a]};
          w.insert(w.end(), freps[i].begin(), freps[i].end());
          freps.push_back(std::move(w));
        }
        fnext[i][a] = it->second;
      }
    }
  }
  const int S = static_cast<int>(fstates.size());

  // A value completion must exist from every state it passes through.
  std::vector<char> alive(d.accepting.begin(), d.accepting.end());
  for (bool grew = true; grew;) {
    grew = false;
    for (int q = 0; q < d.num_states; ++q) {
      if (alive[q]) continue;
      for (int tok : value_tokens)
        if (alive[d.next[q][tok]]) {
          alive[q] = 1;
          grew = true;
          break;
        }
    }
  }
  auto unique_value = [&](int start) {
    Word out;
    int q = start, steps = 0;
    while (true) {
      std::vector<int> options;
      for (int tok : value_tokens)
        if (alive[d.next[q][tok]]) options.push_back(tok);
      if (d.accepting[q]) {
        if (!options.empty())
          throw MalformedLanguageError("a split has more than one value completion");
        return out;
      }
      if (options.empty())
        throw MalformedLanguageError("a split has no value completion");
      if (options.size() > 1)
        throw MalformedLanguageError("a split has more than one value completion");
      out.push_back(al.tokens[options[0]]);
      q = d.next[q][options[0]];
      if (++steps > d.num_states)
        throw MalformedLanguageError("a value completion does not terminate");
    }
  };

  std::vector<FactoredOutput> values(static_cast<std::size_t>(P) * Lin * S);
  auto value_at = [&](int p, int a, int s) -> FactoredOutput& {
    return values[(static_cast<std::size_t>(p) * Lin + a) * S + s];
  };
  for (int p = 0; p < P; ++p)
    for (int a = 0; a < Lin; ++a)
      for (int s = 0; s < S; ++s) {
        int q3 = fstates[s][rindex.at(anchor[p][a])];
        int q4 = d.next[q3][sep];
        value_at(p, a, s) = parse_lf_value(unique_value(q4), output);
      }

  // The encoded language only describes splits around a distinguished
  // letter, so residuals cannot tell apart words whose futures agree but
  // whose own whole-word output differs in emptiness. That bit travels
  // along edges: f(va) is empty exactly when the value at (v, a, ε) has no
  // blocks, and f(aw) is empty exactly when the value at (ε, a, w) has no
  // blocks. Refine both automata with it so the emptiness flags are
  // well-defined per state.
  auto refine = [Lin](int base_init,
                      const std::function<int(int, int)>& base_next,
                      const std::function<bool(int, int)>& step_empty) {
    struct Refined {
      std::vector<std::pair<int, char>> nodes;
      std::vector<std::vector<int>> next;
    };
    Refined r;
    std::map<std::pair<int, char>, int> index;
    r.nodes.push_back({base_init, 1});  // the empty word maps to ε
    index[r.nodes[0]] = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      r.next.emplace_back(Lin);
      for (int a = 0; a < Lin; ++a) {
        std::pair<int, char> to{base_next(r.nodes[i].first, a),
                                step_empty(r.nodes[i].first, a) ? 1 : 0};
        auto [it, fresh] = index.try_emplace(to, static_cast<int>(r.nodes.size()));
        if (fresh) r.nodes.push_back(to);
        r.next[i][a] = it->second;
      }
    }
    return r;
  };
  auto rpast = refine(
      0, [&](int p, int a) { return pnext[p][a]; },
      [&](int p, int a) { return value_at(p, a, 0).empty(); });
  auto rfut = refine(
      0, [&](int s, int a) { return fnext[s][a]; },
      [&](int s, int a) { return value_at(0, a, s).empty(); });
  const int RP = static_cast<int>(rpast.nodes.size());
  const int RS = static_cast<int>(rfut.nodes.size());

  CharTable t;
  t.input_alphabet = input;
  t.output_alphabet = output;
  t.past = {BehaviorDfa::Dir::LeftToRight, RP, 0, rpast.next};
  t.future = {BehaviorDfa::Dir::RightToLeft, RS, 0, rfut.next};
  t.entries.resize(static_cast<std::size_t>(RP) * Lin * RS);
  for (int p = 0; p < RP; ++p)
    for (int a = 0; a < Lin; ++a)
      for (int s = 0; s < RS; ++s)
        t.entry(p, a, s) = value_at(rpast.nodes[p].first, a, rfut.nodes[s].first);
  t.empty_given_past.resize(RP);
  t.empty_given_future.resize(RS);
  for (int p = 0; p < RP; ++p) t.empty_given_past[p] = rpast.nodes[p].second;
  for (int s = 0; s < RS; ++s) t.empty_given_future[s] = rfut.nodes[s].second;

  if (shortest_difference(build_lf_dfa(t), d))
    throw MalformedLanguageError("acceptor is not the encoding of any table");
  return t;
}

LearnResult learn_transducer(MachineTeacher& teacher, const LstarTrace& trace) {
  Dfa d = lstar(teacher, trace);
  CharTable decoded =
      minimize_table(decode_table(d, teacher.input_alphabet(), teacher.output_alphabet()));
  LearnResult res{canonize_from_table(decoded), std::move(decoded), teacher.stats()};
  res.stats.hypothesis_states = d.num_states;
  long m = 1;
  for (int len : res.stats.cex_lengths) m = std::max<long>(m, len);
  res.stats.bound_regressed =
      res.stats.membership_queries > 4L * d.num_states * d.num_states * m;
  return res;
}

}  // namespace otx
