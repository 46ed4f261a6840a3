#include <doctest.h>

#include <optional>
#include <vector>

#include "otx/learn.hpp"
#include "otx/zoo.hpp"

using namespace otx;

namespace {

Alphabet ab() { return Alphabet({"a", "b"}); }

/// Teacher backed directly by a target acceptor.
struct DfaTeacher : LanguageTeacher {
  Dfa target;
  int equivalence_queries = 0;

  explicit DfaTeacher(Dfa d) : target(std::move(d)) {}
  const std::vector<Symbol>& tokens() const override { return target.tokens; }
  bool member(const Word& u) override { return target.accepts(u); }
  std::optional<Word> counterexample(const Dfa& h) override {
    ++equivalence_queries;
    return shortest_difference(h, target);
  }
};

/// Teacher that claims a counterexample its own answers contradict.
struct LyingTeacher : LanguageTeacher {
  std::vector<Symbol> toks = {"a"};
  const std::vector<Symbol>& tokens() const override { return toks; }
  bool member(const Word&) override { return false; }
  std::optional<Word> counterexample(const Dfa&) override { return Word{"a"}; }
};

Dfa empty_language(std::vector<Symbol> tokens) {
  Dfa d;
  d.tokens = std::move(tokens);
  d.num_states = 1;
  d.initial = 0;
  d.next = {std::vector<int>(d.tokens.size(), 0)};
  d.accepting = {0};
  return d;
}

}  // namespace

TEST_CASE("lstar learns the empty language in one round") {
  DfaTeacher teacher(empty_language({"a"}));
  Dfa d = lstar(teacher);
  CHECK(d.num_states == 1);
  CHECK_FALSE(d.accepts({}));
  CHECK_FALSE(d.accepts({"a"}));
  CHECK(teacher.equivalence_queries == 1);
}

TEST_CASE("lstar learns even-length words over one letter") {
  Dfa parity;
  parity.tokens = {"a"};
  parity.num_states = 2;
  parity.initial = 0;
  parity.next = {{1}, {0}};
  parity.accepting = {1, 0};
  DfaTeacher teacher(parity);

  int rounds = 0;
  Dfa d = lstar(teacher, [&](int, int, int) { ++rounds; });
  CHECK(d.num_states == 2);
  CHECK(d.accepts({}));
  CHECK_FALSE(d.accepts({"a"}));
  CHECK(d.accepts({"a", "a"}));
  CHECK(rounds >= 1);
}

TEST_CASE("a worthless counterexample is a protocol violation") {
  LyingTeacher teacher;
  CHECK_THROWS_AS(lstar(teacher), ProtocolError);
}

TEST_CASE("query-language tokens extend the letters with markers") {
  LfAlphabet lf = LfAlphabet::make(ab(), ab());
  CHECK(lf.tokens == std::vector<Symbol>{"a", "b", "left", "right", "#"});
  // Letters colliding with the reserved tokens are rejected.
  CHECK_THROWS_AS(LfAlphabet::make(Alphabet({"left"}), ab()), ValidationError);
  CHECK_THROWS_AS(LfAlphabet::make(ab(), Alphabet({"#"})), ValidationError);
}

TEST_CASE("value tokens round-trip") {
  for (const auto& [name, m] : zoo()) {
    CAPTURE(name);
    for (const char* v : {"", "a", "ab"})
      for (const char* s : {"", "b", "ba"})
        for (const char* letter : {"a", "b"}) {
          FactoredOutput f = factored_eval(
              m, {ab().parse_word(v), {letter}, ab().parse_word(s)}, {1, 3});
          CHECK(parse_lf_value(render_lf_value(f), ab()) == f);
        }
  }
  CHECK_THROWS_AS(parse_lf_value({"left", "left"}, ab()), MalformedLanguageError);
}

TEST_CASE("the query language contains exactly the encoded splits") {
  CharTable t = minimize_table(sst_char_table(dup_sst()));
  Dfa d = build_lf_dfa(t);
  // (v, a, w) = (ε, a, b): value is middle[a] right middle[a] right.
  CHECK(d.accepts({"#", "a", "#", "b", "#", "a", "right", "a", "right"}));
  CHECK_FALSE(d.accepts({"#", "a", "#", "b", "#", "a", "right", "a"}));
  CHECK_FALSE(d.accepts({"#", "a", "#", "b", "#", "right", "a", "right", "a"}));
  // (v, a, w) = (ε, a, ε): value is middle[aa].
  CHECK(d.accepts({"#", "a", "#", "#", "a", "a"}));
  CHECK_FALSE(d.accepts({"#", "a", "#", "#", "a"}));
  // Structural garbage.
  CHECK_FALSE(d.accepts({}));
  CHECK_FALSE(d.accepts({"a"}));
  CHECK_FALSE(d.accepts({"#", "#", "#"}));
  CHECK_FALSE(d.accepts({"#", "a", "b", "#", "#"}));
}

TEST_CASE("decoding the query language recovers the table") {
  for (const auto& [name, m] : zoo()) {
    CAPTURE(name);
    CharTable t = minimize_table(char_table(m));
    Dfa d = build_lf_dfa(t);
    CharTable back =
        minimize_table(decode_table(d, t.input_alphabet, t.output_alphabet));
    CHECK(back == t);
  }
}

TEST_CASE("degenerate languages cannot be decoded") {
  std::vector<Symbol> toks = LfAlphabet::make(ab(), ab()).tokens;
  CHECK_THROWS_AS(decode_table(empty_language(toks), ab(), ab()),
                  MalformedLanguageError);

  Dfa all = empty_language(toks);
  all.accepting = {1};
  CHECK_THROWS_AS(decode_table(all, ab(), ab()), MalformedLanguageError);
}

TEST_CASE("membership validates the query format before consulting the machine") {
  MachineTeacher teacher{Machine(dup_sst())};
  const std::vector<Word> malformed = {
      {},
      {"a"},
      {"#"},
      {"#", "#", "#"},
      {"#", "a", "b", "#", "#"},
      {"#", "left", "#", "#"},
      {"left", "#", "a", "#", "#"},
      {"#", "a", "#", "right", "#"},
      {"a", "#", "a", "#", "a", "#", "a", "#"},
      {"#", "a", "#", "#", "#"},
  };
  for (const Word& u : malformed) {
    CAPTURE(render_word(u));
    CHECK_FALSE(teacher.member(u));
  }
  CHECK(teacher.stats().value_queries == 0);
  CHECK(teacher.stats().local_rejections ==
        static_cast<long>(malformed.size()));
  CHECK(teacher.stats().membership_queries ==
        static_cast<long>(malformed.size()));

  // Well-formed queries hit the machine once per distinct input word.
  CHECK(teacher.member({"#", "a", "#", "#", "a", "a"}));
  CHECK_FALSE(teacher.member({"#", "a", "#", "#", "a"}));
  CHECK_FALSE(teacher.member({"#", "a", "#", "#"}));
  CHECK(teacher.stats().value_queries == 1);
}

TEST_CASE("learning produces the canonical device") {
  for (const char* name : {"const-eps", "evenid"}) {
    for (const auto& [n, m] : zoo()) {
      if (n != name) continue;
      CAPTURE(name);
      MachineTeacher teacher{m};
      int rounds = 0;
      LearnResult res = learn_transducer(teacher, [&](int, int, int) { ++rounds; });
      CHECK(res.device.canonical);
      CHECK(canonical_equal(res.device, canonize(m)).equal);
      CHECK(res.stats.equivalence_queries <=
            static_cast<long>(teacher.language_dfa().num_states));
      CHECK(res.stats.hypothesis_states == teacher.language_dfa().num_states);
      CHECK(res.stats.membership_queries > 0);
      CHECK(rounds >= 1);
    }
  }
}
