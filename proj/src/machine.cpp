#include "otx/machine.hpp"

#include <algorithm>

namespace otx {

namespace {

void check_names(const std::vector<std::string>& names, const std::string& what) {
  std::set<std::string> seen;
  if (names.empty()) throw ValidationError("machine needs at least one " + what);
  for (const std::string& n : names) {
    if (n.empty()) throw ValidationError(what + " name must not be empty");
    if (!seen.insert(n).second) throw ValidationError("duplicate " + what + ": " + n);
  }
}

}  // namespace

void check_ops(const std::vector<RegisterOp>& ops,
               const std::set<std::string>& registers,
               const Alphabet& output_alphabet, bool concat_only,
               const std::string& context) {
  std::set<std::string> dead;  // consumed and not refilled
  for (const RegisterOp& op : ops) {
    if (!registers.count(op.dst))
      throw ValidationError(context + ": unknown register " + op.dst);
    if (op.kind == RegisterOp::Kind::Concat) {
      if (!registers.count(op.src))
        throw ValidationError(context + ": unknown register " + op.src);
      if (op.src == op.dst)
        throw ValidationError(context + ": register " + op.src +
                              " concatenated onto itself");
      if (dead.count(op.src))
        throw ValidationError(context + ": copyless violation, register " +
                              op.src + " used after it was consumed");
      dead.insert(op.src);
      dead.erase(op.dst);  // dst now holds content again
    } else {
      if (concat_only)
        throw ValidationError(context + ": create is not allowed here");
      if (!output_alphabet.contains(op.letter))
        throw ValidationError(context + ": created letter " + op.letter +
                              " is not in the output alphabet");
      dead.erase(op.dst);
    }
  }
}

void StreamingTransducer::validate() const {
  check_names(states, "state");
  check_names(registers, "register");
  std::set<std::string> state_set(states.begin(), states.end());
  std::set<std::string> reg_set(registers.begin(), registers.end());
  if (!state_set.count(initial))
    throw ValidationError("initial state " + initial + " is not a state");
  if (!reg_set.count(output_register))
    throw ValidationError("output register " + output_register + " is not a register");
  for (const std::string& q : states) {
    for (const Symbol& a : input_alphabet.letters()) {
      auto it = transitions.find({q, a});
      if (it == transitions.end())
        throw ValidationError("missing transition (" + q + ", " + a + ")");
      if (!state_set.count(it->second.next))
        throw ValidationError("transition (" + q + ", " + a + ") targets unknown state " +
                              it->second.next);
      check_ops(it->second.ops, reg_set, output_alphabet, false,
                "update (" + q + ", " + a + ")");
    }
  }
  for (const auto& [key, tr] : transitions) {
    (void)tr;
    if (!state_set.count(key.first) || !input_alphabet.contains(key.second))
      throw ValidationError("transition from unknown state or letter: (" + key.first +
                            ", " + key.second + ")");
  }
  for (const auto& [q, ops] : end_of_input) {
    if (!state_set.count(q))
      throw ValidationError("end-of-input entry for unknown state " + q);
    check_ops(ops, reg_set, output_alphabet, true, "end-of-input (" + q + ")");
  }
}

void TwoWayTransducer::validate() const {
  check_names(states, "state");
  std::set<std::string> state_set(states.begin(), states.end());
  if (!state_set.count(initial))
    throw ValidationError("initial state " + initial + " is not a state");
  if (accept.empty() || state_set.count(accept))
    throw ValidationError("accept state must be named and distinct from working states");
  if (input_alphabet.contains(kLeftEnd) || input_alphabet.contains(kRightEnd))
    throw ValidationError("input alphabet may not contain the tape markers ^ $");

  std::vector<Symbol> tape_symbols = input_alphabet.letters();
  tape_symbols.push_back(kLeftEnd);
  tape_symbols.push_back(kRightEnd);
  for (const std::string& q : states) {
    for (const Symbol& s : tape_symbols) {
      auto it = transitions.find({q, s});
      if (it == transitions.end())
        throw ValidationError("missing transition (" + q + ", " + s + ")");
      const Transition& tr = it->second;
      if (tr.next != accept && !state_set.count(tr.next))
        throw ValidationError("transition (" + q + ", " + s + ") targets unknown state " +
                              tr.next);
      bool marker = (s == kLeftEnd || s == kRightEnd);
      if (marker && !tr.output.empty())
        throw ValidationError("transition (" + q + ", " + s +
                              ") emits output on a tape marker");
      if (s == kLeftEnd && tr.move == Direction::Left)
        throw ValidationError("transition (" + q + ", ^) moves off the left end");
      if (s == kRightEnd && tr.move == Direction::Right && tr.next != accept)
        throw ValidationError("transition (" + q + ", $) moves off the right end");
      output_alphabet.check_word(tr.output);
    }
  }
  for (const auto& [key, tr] : transitions) {
    (void)tr;
    bool marker = (key.second == kLeftEnd || key.second == kRightEnd);
    if (!state_set.count(key.first) || (!marker && !input_alphabet.contains(key.second)))
      throw ValidationError("transition from unknown state or symbol: (" + key.first +
                            ", " + key.second + ")");
  }
}

void DfaSpec::validate(const Alphabet& alphabet, const std::string& context) const {
  check_names(states, context + " state");
  std::set<std::string> state_set(states.begin(), states.end());
  if (!state_set.count(initial))
    throw ValidationError(context + ": initial state " + initial + " is not a state");
  for (const std::string& q : states) {
    for (const Symbol& a : alphabet.letters()) {
      auto it = transitions.find({q, a});
      if (it == transitions.end())
        throw ValidationError(context + ": missing transition (" + q + ", " + a + ")");
      if (!state_set.count(it->second))
        throw ValidationError(context + ": transition (" + q + ", " + a +
                              ") targets unknown state " + it->second);
    }
  }
}

const std::string& DfaSpec::next(const std::string& state, const Symbol& a) const {
  auto it = transitions.find({state, a});
  if (it == transitions.end())
    throw ValidationError("missing automaton transition (" + state + ", " + a + ")");
  return it->second;
}

void LookaroundTransducer::validate() const {
  past.validate(input_alphabet, "past automaton");
  future.validate(input_alphabet, "future automaton");
  check_names(registers, "register");
  std::set<std::string> reg_set(registers.begin(), registers.end());
  if (!reg_set.count(output_register))
    throw ValidationError("output register " + output_register + " is not a register");
  for (const std::string& p : past.states) {
    for (const Symbol& a : input_alphabet.letters()) {
      for (const std::string& s : future.states) {
        auto it = updates.find({p, a, s});
        if (it == updates.end())
          throw ValidationError("missing update (" + p + ", " + a + ", " + s + ")");
        check_ops(it->second, reg_set, output_alphabet, false,
                  "update (" + p + ", " + a + ", " + s + ")");
      }
    }
    auto fit = finish.find(p);
    if (fit == finish.end())
      throw ValidationError("missing finish sequence for past state " + p);
    check_ops(fit->second, reg_set, output_alphabet, true, "finish (" + p + ")");
  }
}

const Alphabet& input_alphabet(const Machine& m) {
  return std::visit([](const auto& x) -> const Alphabet& { return x.input_alphabet; }, m);
}

const Alphabet& output_alphabet(const Machine& m) {
  return std::visit([](const auto& x) -> const Alphabet& { return x.output_alphabet; }, m);
}

void validate(const Machine& m) {
  std::visit([](const auto& x) { x.validate(); }, m);
}

namespace {

using RegisterContents = std::map<std::string, std::vector<OriginItem>>;

void apply_ops(const std::vector<RegisterOp>& ops, RegisterContents& regs, int position,
               SstEvalStats* stats) {
  for (const RegisterOp& op : ops) {
    if (op.kind == RegisterOp::Kind::Concat) {
      auto& dst = regs[op.dst];
      auto& src = regs[op.src];
      dst.insert(dst.end(), src.begin(), src.end());
      src.clear();
    } else {
      regs[op.dst] = {{op.letter, position}};
      if (stats) ++stats->creates;
    }
  }
}

}  // namespace

OriginString sst_eval(const StreamingTransducer& m, const Word& w, SstEvalStats& stats) {
  m.input_alphabet.check_word(w);
  RegisterContents regs;
  for (const std::string& r : m.registers) regs[r];
  std::string q = m.initial;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    auto it = m.transitions.find({q, w[i]});
    if (it == m.transitions.end())
      throw ValidationError("missing transition (" + q + ", " + w[i] + ")");
    apply_ops(it->second.ops, regs, i + 1, &stats);
    q = it->second.next;
  }
  auto eit = m.end_of_input.find(q);
  if (eit != m.end_of_input.end()) apply_ops(eit->second, regs, 0, nullptr);
  OriginString out;
  out.items = regs[m.output_register];
  out.input_length = static_cast<int>(w.size());
  return out;
}

OriginString sst_eval(const StreamingTransducer& m, const Word& w) {
  SstEvalStats stats;
  return sst_eval(m, w, stats);
}

OriginString twoway_eval(const TwoWayTransducer& m, const Word& w, long long fuel) {
  m.input_alphabet.check_word(w);
  const int n = static_cast<int>(w.size());
  if (fuel < 0)
    fuel = static_cast<long long>(m.states.size()) * (n + 2) + 1;

  auto tape = [&](int pos) -> const Symbol& {
    if (pos == 0) return kLeftEnd;
    if (pos == n + 1) return kRightEnd;
    return w[pos - 1];
  };

  OriginString out;
  out.input_length = n;
  std::string q = m.initial;
  int head = 0;
  std::set<std::pair<std::string, int>> seen;
  long long steps = 0;
  while (true) {
    if (!seen.insert({q, head}).second || ++steps > fuel)
      throw NonterminationError("two-way run repeats a configuration on input '" +
                                render_word(w) + "'");
    auto it = m.transitions.find({q, tape(head)});
    if (it == m.transitions.end())
      throw ValidationError("missing transition (" + q + ", " + tape(head) + ")");
    const TwoWayTransducer::Transition& tr = it->second;
    for (const Symbol& s : tr.output) out.items.push_back({s, head});
    if (tr.next == m.accept) break;
    q = tr.next;
    head += tr.move == Direction::Right ? 1 : -1;
    if (head < 0 || head > n + 1)
      throw ValidationError("two-way head left the tape");
  }
  return out;
}

OriginString lookaround_eval(const LookaroundTransducer& m, const Word& w) {
  m.input_alphabet.check_word(w);
  const int n = static_cast<int>(w.size());

  // future.state over the strict suffix after each position (1-based).
  std::vector<std::string> future_state(n + 1);
  if (n > 0) {
    future_state[n] = m.future.initial;
    for (int i = n - 1; i >= 1; --i)
      future_state[i] = m.future.next(future_state[i + 1], w[i]);  // w[i] is letter i+1
  }

  RegisterContents regs;
  for (const std::string& r : m.registers) regs[r];
  std::string p = m.past.initial;
  for (int i = 1; i <= n; ++i) {
    auto it = m.updates.find({p, w[i - 1], future_state[i]});
    if (it == m.updates.end())
      throw ValidationError("missing update (" + p + ", " + w[i - 1] + ", " +
                            future_state[i] + ")");
    apply_ops(it->second, regs, i, nullptr);
    p = m.past.next(p, w[i - 1]);
  }
  auto fit = m.finish.find(p);
  if (fit == m.finish.end())
    throw ValidationError("missing finish sequence for past state " + p);
  apply_ops(fit->second, regs, 0, nullptr);

  OriginString out;
  out.items = regs[m.output_register];
  out.input_length = n;
  return out;
}

OriginString eval(const Machine& m, const Word& w) {
  return std::visit(
      [&](const auto& x) -> OriginString {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, StreamingTransducer>) return sst_eval(x, w);
        else if constexpr (std::is_same_v<T, TwoWayTransducer>) return twoway_eval(x, w);
        else return lookaround_eval(x, w);
      },
      m);
}

FactoredOutput factored_eval(const Machine& m, const std::vector<Word>& parts,
                             const std::set<int>& underlined) {
  if (parts.empty()) throw DomainError("factored evaluation needs at least one part");
  for (int idx : underlined)
    if (idx < 1 || idx > static_cast<int>(parts.size()))
      throw DomainError("underline index " + std::to_string(idx) + " out of range");

  Word whole;
  std::vector<int> sizes;
  for (const Word& p : parts) {
    whole.insert(whole.end(), p.begin(), p.end());
    sizes.push_back(static_cast<int>(p.size()));
  }
  std::vector<SourceId> names = part_names(static_cast<int>(parts.size()));
  SourceColoring sigma = SourceColoring::from_parts(sizes, names);
  std::set<SourceId> abstracted;
  for (int idx : underlined) abstracted.insert(names[idx - 1]);
  return abstract_blocks(factorize(eval(m, whole), sigma), abstracted);
}

}  // namespace otx
