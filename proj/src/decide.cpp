#include "otx/decide.hpp"

#include <map>
#include <numeric>

namespace otx {

TransitionMonoid TransitionMonoid::of(const std::vector<std::vector<int>>& next,
                                      long cap) {
  const int Q = static_cast<int>(next.size());
  const int L = Q ? static_cast<int>(next[0].size()) : 0;
  std::vector<std::vector<int>> gens(L, std::vector<int>(Q));
  for (int q = 0; q < Q; ++q)
    for (int a = 0; a < L; ++a) gens[a][q] = next[q][a];

  TransitionMonoid m;
  std::map<std::vector<int>, int> index;
  std::vector<int> id(Q);
  std::iota(id.begin(), id.end(), 0);
  index[id] = 0;
  m.elements.push_back(id);
  for (std::size_t i = 0; i < m.elements.size(); ++i) {
    for (int a = 0; a < L; ++a) {
      std::vector<int> f(Q);
      for (int q = 0; q < Q; ++q) f[q] = gens[a][m.elements[i][q]];
      if (index.try_emplace(f, static_cast<int>(m.elements.size())).second) {
        m.elements.push_back(std::move(f));
        if (static_cast<long>(m.elements.size()) > cap)
          throw ResourceError("transition monoid exceeds the configured cap");
      }
    }
  }
  return m;
}

bool TransitionMonoid::aperiodic() const {
  const int Q = elements.empty() ? 0 : static_cast<int>(elements[0].size());
  for (const std::vector<int>& e : elements) {
    std::map<std::vector<int>, int> seen;
    std::vector<int> x = e;
    int k = 1;
    seen[x] = 1;
    while (true) {
      std::vector<int> y(Q);
      for (int q = 0; q < Q; ++q) y[q] = e[x[q]];
      ++k;
      auto [it, fresh] = seen.try_emplace(y, k);
      if (!fresh) {
        if (k - it->second != 1) return false;
        break;
      }
      x = std::move(y);
    }
  }
  return true;
}

namespace {

bool shape_one_way(const Shape& s) {
  return s == "" || s == "L" || s == "R" || s == "LR";
}

// Drop a trailing suffix-sourced block: for a one-way machine it is the
// only part of the value that can depend on the suffix.
FactoredOutput drop_trailing_right(FactoredOutput f) {
  if (!f.blocks.empty() && f.blocks.back().source == kRight) f.blocks.pop_back();
  return f;
}

}  // namespace

bool is_order_preserving(const CharTable& t) {
  const int P = t.past.num_states, S = t.future.num_states, L = t.input_alphabet.size();
  for (int p = 0; p < P; ++p)
    for (int a = 0; a < L; ++a)
      for (int s = 0; s < S; ++s)
        if (!shape_one_way(collapse_shape(t.entry(p, a, s)))) return false;
  for (const Shape& sh : two_part_shapes(t).shapes)
    if (!shape_one_way(sh)) return false;
  return true;
}

bool is_one_way_deterministic(const CharTable& t) {
  if (!is_order_preserving(t))
    throw PreconditionError("table is not order-preserving");
  const int P = t.past.num_states, S = t.future.num_states, L = t.input_alphabet.size();
  for (int p = 0; p < P; ++p)
    for (int a = 0; a < L; ++a) {
      FactoredOutput base = drop_trailing_right(t.entry(p, a, 0));
      for (int s = 1; s < S; ++s)
        if (!(drop_trailing_right(t.entry(p, a, s)) == base)) return false;
    }
  return true;
}

bool is_first_order(const CharTable& t) {
  return TransitionMonoid::of(t.past.next).aperiodic() &&
         TransitionMonoid::of(t.future.next).aperiodic();
}

Classification classify(const Machine& m) {
  CharTable t = minimize_table(char_table(m));
  Classification c;
  c.order_preserving = is_order_preserving(t);
  if (c.order_preserving) c.one_way_deterministic = is_one_way_deterministic(t);
  c.first_order = is_first_order(t);
  return c;
}

CanonicalEquivalence equivalent(const Machine& m1, const Machine& m2) {
  if (!(input_alphabet(m1) == input_alphabet(m2)))
    throw PreconditionError("input alphabets differ");
  if (!(output_alphabet(m1) == output_alphabet(m2)))
    throw PreconditionError("output alphabets differ");
  return canonical_equal(canonize(m1), canonize(m2));
}

BoundedEquivalence bounded_equivalent(const Machine& m1, const Machine& m2,
                                      int max_len) {
  if (!(input_alphabet(m1) == input_alphabet(m2)))
    throw PreconditionError("input alphabets differ");
  if (!(output_alphabet(m1) == output_alphabet(m2)))
    throw PreconditionError("output alphabets differ");
  for (const Word& w : all_words(input_alphabet(m1), max_len))
    if (!(eval(m1, w) == eval(m2, w))) return {false, w};
  return {true, std::nullopt};
}

}  // namespace otx
