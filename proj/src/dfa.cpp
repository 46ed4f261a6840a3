#include "otx/dfa.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "otx/error.hpp"

namespace otx {

int Dfa::token_index(const Symbol& s) const {
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i] == s) return static_cast<int>(i);
  throw DomainError("token not in the automaton's alphabet: " + s);
}

int Dfa::run(const Word& w) const {
  int q = initial;
  for (const Symbol& s : w) q = next[q][token_index(s)];
  return q;
}

bool Dfa::accepts(const Word& w) const { return accepting[run(w)]; }

Dfa minimize_dfa(const Dfa& d) {
  const int L = static_cast<int>(d.tokens.size());

  // Reachable restriction, breadth-first.
  std::vector<int> order, id(d.num_states, -1);
  order.push_back(d.initial);
  id[d.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int a = 0; a < L; ++a) {
      int t = d.next[order[i]][a];
      if (id[t] < 0) {
        id[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  const int R = static_cast<int>(order.size());

  // Moore refinement over the reachable part.
  std::vector<int> cls(R);
  for (int q = 0; q < R; ++q) cls[q] = d.accepting[order[q]] ? 1 : 0;
  while (true) {
    std::map<std::vector<int>, int> key_id;
    std::vector<int> refined(R);
    for (int q = 0; q < R; ++q) {
      std::vector<int> key{cls[q]};
      for (int a = 0; a < L; ++a) key.push_back(cls[id[d.next[order[q]][a]]]);
      refined[q] = key_id.try_emplace(std::move(key), static_cast<int>(key_id.size()))
                       .first->second;
    }
    bool same = std::set<int>(cls.begin(), cls.end()).size() ==
                std::set<int>(refined.begin(), refined.end()).size();
    cls = std::move(refined);
    if (same) break;
  }

  // Breadth-first renumbering of classes from the initial class.
  int n_cls = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<int> rep(n_cls, -1);
  for (int q = 0; q < R; ++q)
    if (rep[cls[q]] < 0) rep[cls[q]] = q;
  std::vector<int> new_id(n_cls, -1), cls_order;
  new_id[cls[0]] = 0;
  cls_order.push_back(cls[0]);
  for (std::size_t i = 0; i < cls_order.size(); ++i)
    for (int a = 0; a < L; ++a) {
      int c = cls[id[d.next[order[rep[cls_order[i]]]][a]]];
      if (new_id[c] < 0) {
        new_id[c] = static_cast<int>(cls_order.size());
        cls_order.push_back(c);
      }
    }

  Dfa out;
  out.tokens = d.tokens;
  out.num_states = n_cls;
  out.initial = 0;
  out.next.assign(n_cls, std::vector<int>(L));
  out.accepting.resize(n_cls);
  for (int i = 0; i < n_cls; ++i) {
    int q = rep[cls_order[i]];
    out.accepting[i] = d.accepting[order[q]];
    for (int a = 0; a < L; ++a) out.next[i][a] = new_id[cls[id[d.next[order[q]][a]]]];
  }
  return out;
}

std::optional<Word> shortest_difference(const Dfa& a, const Dfa& b) {
  if (a.tokens != b.tokens)
    throw DomainError("automata have different token alphabets");
  const int L = static_cast<int>(a.tokens.size());
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<std::pair<int, int>, Word>> layer;
  layer.push_back({{a.initial, b.initial}, {}});
  seen.insert(layer[0].first);
  while (!layer.empty()) {
    for (const auto& [pr, w] : layer)
      if (a.accepting[pr.first] != b.accepting[pr.second]) return w;
    std::vector<std::pair<std::pair<int, int>, Word>> next_layer;
    for (const auto& [pr, w] : layer)
      for (int t = 0; t < L; ++t) {
        std::pair<int, int> np{a.next[pr.first][t], b.next[pr.second][t]};
        if (!seen.insert(np).second) continue;
        Word w2 = w;
        w2.push_back(a.tokens[t]);
        next_layer.push_back({np, std::move(w2)});
      }
    layer = std::move(next_layer);
  }
  return std::nullopt;
}

}  // namespace otx
