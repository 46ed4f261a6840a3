#include "otx/zoo.hpp"

namespace otx {

namespace {

Alphabet ab() { return Alphabet({"a", "b"}); }

RegisterOp cr(const std::string& dst, const Symbol& x) { return RegisterOp::create(dst, x); }
RegisterOp cc(const std::string& dst, const std::string& src) {
  return RegisterOp::concat(dst, src);
}

StreamingTransducer one_state_sst(std::vector<std::string> registers,
                                  const std::string& out_reg) {
  StreamingTransducer m;
  m.input_alphabet = ab();
  m.output_alphabet = ab();
  m.states = {"q"};
  m.initial = "q";
  m.registers = std::move(registers);
  m.output_register = out_reg;
  m.end_of_input["q"] = {};
  return m;
}

}  // namespace

StreamingTransducer dup_sst() {
  StreamingTransducer m = one_state_sst({"r1", "r2", "c"}, "r1");
  for (Symbol x : {"a", "b"})
    m.transitions[{"q", x}] = {"q", {cr("c", x), cc("r1", "c"), cr("c", x), cc("r2", "c")}};
  m.end_of_input["q"] = {cc("r1", "r2")};
  m.validate();
  return m;
}

StreamingTransducer pal_sst() {
  StreamingTransducer m = one_state_sst({"r1", "r2", "c"}, "r1");
  for (Symbol x : {"a", "b"})
    m.transitions[{"q", x}] = {
        "q", {cr("c", x), cc("r1", "c"), cr("c", x), cc("c", "r2"), cc("r2", "c")}};
  m.end_of_input["q"] = {cc("r1", "r2")};
  m.validate();
  return m;
}

StreamingTransducer revdup_sst() {
  StreamingTransducer m = one_state_sst({"r1", "r2", "c"}, "r1");
  for (Symbol x : {"a", "b"})
    m.transitions[{"q", x}] = {
        "q", {cr("c", x), cc("c", "r1"), cc("r1", "c"), cr("c", x), cc("r2", "c")}};
  m.end_of_input["q"] = {cc("r1", "r2")};
  m.validate();
  return m;
}

StreamingTransducer evenid_sst() {
  StreamingTransducer m;
  m.input_alphabet = ab();
  m.output_alphabet = ab();
  m.states = {"ev", "od"};
  m.initial = "ev";
  m.registers = {"r1", "r2", "c"};
  m.output_register = "r1";
  for (Symbol x : {"a", "b"}) {
    m.transitions[{"ev", x}] = {"od", {cr("c", x), cc("r1", "c")}};
    m.transitions[{"od", x}] = {"ev", {cr("c", x), cc("r1", "c")}};
  }
  m.end_of_input["ev"] = {};
  m.end_of_input["od"] = {cc("r2", "r1")};  // discard: the word has odd length
  m.validate();
  return m;
}

StreamingTransducer identity_sst() {
  StreamingTransducer m = one_state_sst({"r1", "c"}, "r1");
  for (Symbol x : {"a", "b"})
    m.transitions[{"q", x}] = {"q", {cr("c", x), cc("r1", "c")}};
  m.validate();
  return m;
}

StreamingTransducer relabel_sst() {
  StreamingTransducer m = one_state_sst({"r1", "c"}, "r1");
  m.transitions[{"q", "a"}] = {"q", {cr("c", "b"), cc("r1", "c")}};
  m.transitions[{"q", "b"}] = {"q", {cr("c", "a"), cc("r1", "c")}};
  m.validate();
  return m;
}

StreamingTransducer const_eps_sst() {
  StreamingTransducer m = one_state_sst({"r1"}, "r1");
  for (Symbol x : {"a", "b"}) m.transitions[{"q", x}] = {"q", {}};
  m.validate();
  return m;
}

namespace {

TwoWayTransducer twoway_base() {
  TwoWayTransducer m;
  m.input_alphabet = ab();
  m.output_alphabet = ab();
  m.accept = "acc";
  return m;
}

using TW = TwoWayTransducer;

void tr(TW& m, const std::string& from, const Symbol& sym, const std::string& to,
        Direction move, Word out = {}) {
  m.transitions[{from, sym}] = {to, move, std::move(out)};
}

constexpr Direction Lft = Direction::Left;
constexpr Direction Rgt = Direction::Right;

}  // namespace

TwoWayTransducer dup_twoway() {
  TW m = twoway_base();
  m.states = {"p0", "p1", "p2"};
  m.initial = "p0";
  tr(m, "p0", "^", "p0", Rgt);
  tr(m, "p0", "a", "p0", Rgt, {"a"});
  tr(m, "p0", "b", "p0", Rgt, {"b"});
  tr(m, "p0", "$", "p1", Lft);
  tr(m, "p1", "a", "p1", Lft);
  tr(m, "p1", "b", "p1", Lft);
  tr(m, "p1", "^", "p2", Rgt);
  tr(m, "p1", "$", "p1", Lft);
  tr(m, "p2", "a", "p2", Rgt, {"a"});
  tr(m, "p2", "b", "p2", Rgt, {"b"});
  tr(m, "p2", "$", "acc", Rgt);
  tr(m, "p2", "^", "p2", Rgt);
  m.validate();
  return m;
}

TwoWayTransducer rev_twoway() {
  TW m = twoway_base();
  m.states = {"q0", "q1"};
  m.initial = "q0";
  tr(m, "q0", "^", "q0", Rgt);
  tr(m, "q0", "a", "q0", Rgt);
  tr(m, "q0", "b", "q0", Rgt);
  tr(m, "q0", "$", "q1", Lft);
  tr(m, "q1", "a", "q1", Lft, {"a"});
  tr(m, "q1", "b", "q1", Lft, {"b"});
  tr(m, "q1", "^", "acc", Rgt);
  tr(m, "q1", "$", "q1", Lft);
  m.validate();
  return m;
}

TwoWayTransducer looper_twoway() {
  TW m = twoway_base();
  m.states = {"z0", "z1"};
  m.initial = "z0";
  tr(m, "z0", "^", "z0", Rgt);
  tr(m, "z0", "a", "z1", Rgt);
  tr(m, "z0", "b", "z1", Rgt);
  tr(m, "z0", "$", "z1", Lft);
  tr(m, "z1", "^", "z0", Rgt);
  tr(m, "z1", "a", "z0", Lft);
  tr(m, "z1", "b", "z0", Lft);
  tr(m, "z1", "$", "z1", Lft);
  m.validate();
  return m;
}

TwoWayTransducer ab_variant(char which) {
  TW m = twoway_base();
  m.states = {"st", "cA", "cB", "cEnd", "cBad"};
  m.initial = "st";
  // Accept exactly "ab"; every other word drains to cBad and outputs
  // nothing. No state below ever moves left, so no region can loop.
  tr(m, "st", "^", "cA", Rgt);
  tr(m, "st", "a", "cBad", Rgt);
  tr(m, "st", "b", "cBad", Rgt);
  tr(m, "st", "$", "acc", Rgt);
  tr(m, "cA", "a", "cB", Rgt);
  tr(m, "cA", "b", "cBad", Rgt);
  tr(m, "cA", "$", "acc", Rgt);
  tr(m, "cA", "^", "cA", Rgt);
  tr(m, "cB", "b", "cEnd", Rgt);
  tr(m, "cB", "a", "cBad", Rgt);
  tr(m, "cB", "$", "acc", Rgt);
  tr(m, "cB", "^", "cB", Rgt);
  tr(m, "cEnd", "a", "cBad", Rgt);
  tr(m, "cEnd", "b", "cBad", Rgt);
  tr(m, "cEnd", "^", "cEnd", Rgt);
  tr(m, "cBad", "a", "cBad", Rgt);
  tr(m, "cBad", "b", "cBad", Rgt);
  tr(m, "cBad", "$", "acc", Rgt);
  tr(m, "cBad", "^", "cBad", Rgt);

  if (which == 'd') {
    // Walk back emitting "a" at position 2 and "b" at position 1.
    m.states.insert(m.states.end(), {"dA", "dB", "dFin", "dGo"});
    tr(m, "cEnd", "$", "dA", Lft);
    tr(m, "dA", "a", "dB", Lft, {"a"});
    tr(m, "dA", "b", "dB", Lft, {"a"});
    tr(m, "dA", "^", "dGo", Rgt);
    tr(m, "dA", "$", "dA", Lft);
    tr(m, "dB", "a", "dFin", Lft, {"b"});
    tr(m, "dB", "b", "dFin", Lft, {"b"});
    tr(m, "dB", "^", "dGo", Rgt);
    tr(m, "dB", "$", "dB", Lft);
    tr(m, "dFin", "^", "dGo", Rgt);
    tr(m, "dFin", "a", "dGo", Rgt);
    tr(m, "dFin", "b", "dGo", Rgt);
    tr(m, "dFin", "$", "acc", Rgt);
    tr(m, "dGo", "a", "dGo", Rgt);
    tr(m, "dGo", "b", "dGo", Rgt);
    tr(m, "dGo", "$", "acc", Rgt);
    tr(m, "dGo", "^", "dGo", Rgt);
    m.validate();
    return m;
  }

  // Variants a, b, c rewind to the start and then emit on a single
  // rightward pass: 'a' one letter per position, 'b' everything at
  // position 2, 'c' everything at position 1.
  m.states.insert(m.states.end(), {"w1", "e1", "e2", "fin"});
  tr(m, "cEnd", "$", "w1", Lft);
  tr(m, "w1", "a", "w1", Lft);
  tr(m, "w1", "b", "w1", Lft);
  tr(m, "w1", "^", "e1", Rgt);
  tr(m, "w1", "$", "w1", Lft);
  switch (which) {
    case 'a':
      tr(m, "e1", "a", "e2", Rgt, {"a"});
      tr(m, "e1", "b", "e2", Rgt, {"b"});
      tr(m, "e2", "a", "fin", Rgt, {"a"});
      tr(m, "e2", "b", "fin", Rgt, {"b"});
      break;
    case 'b':
      tr(m, "e1", "a", "e2", Rgt);
      tr(m, "e1", "b", "e2", Rgt);
      tr(m, "e2", "a", "fin", Rgt, {"a", "b"});
      tr(m, "e2", "b", "fin", Rgt, {"a", "b"});
      break;
    case 'c':
      tr(m, "e1", "a", "e2", Rgt, {"a", "b"});
      tr(m, "e1", "b", "e2", Rgt, {"a", "b"});
      tr(m, "e2", "a", "fin", Rgt);
      tr(m, "e2", "b", "fin", Rgt);
      break;
    default:
      throw DomainError("unknown variant: " + std::string(1, which));
  }
  tr(m, "e1", "^", "fin", Rgt);
  tr(m, "e1", "$", "acc", Rgt);
  tr(m, "e2", "^", "fin", Rgt);
  tr(m, "e2", "$", "acc", Rgt);
  tr(m, "fin", "a", "fin", Rgt);
  tr(m, "fin", "b", "fin", Rgt);
  tr(m, "fin", "$", "acc", Rgt);
  tr(m, "fin", "^", "fin", Rgt);
  m.validate();
  return m;
}

std::vector<std::pair<std::string, Machine>> zoo() {
  return {
      {"dup-sst", dup_sst()},
      {"dup-2way", dup_twoway()},
      {"rev", rev_twoway()},
      {"pal", pal_sst()},
      {"revdup", revdup_sst()},
      {"evenid", evenid_sst()},
      {"identity", identity_sst()},
      {"relabel", relabel_sst()},
      {"const-eps", const_eps_sst()},
      {"ab-variant-a", ab_variant('a')},
      {"ab-variant-b", ab_variant('b')},
      {"ab-variant-c", ab_variant('c')},
      {"ab-variant-d", ab_variant('d')},
  };
}

std::vector<std::pair<std::string, Machine>> zoo_with_looper() {
  auto all = zoo();
  all.push_back({"looper", looper_twoway()});
  return all;
}

}  // namespace otx
