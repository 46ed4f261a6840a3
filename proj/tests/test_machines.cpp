#include <doctest.h>

#include "otx/machine.hpp"
#include "otx/zoo.hpp"

using namespace otx;

namespace {

OriginString os(std::vector<std::pair<std::string, int>> items, int n) {
  OriginString s;
  for (auto& [l, o] : items) s.items.push_back({l, o});
  s.input_length = n;
  return s;
}

Word w(const char* text) { return Alphabet({"a", "b"}).parse_word(text); }

}  // namespace

TEST_CASE("streaming evaluation oracles") {
  CHECK(sst_eval(dup_sst(), w("ab")) ==
        os({{"a", 1}, {"b", 2}, {"a", 1}, {"b", 2}}, 2));
  CHECK(sst_eval(pal_sst(), w("ab")) ==
        os({{"a", 1}, {"b", 2}, {"b", 2}, {"a", 1}}, 2));
  CHECK(sst_eval(revdup_sst(), w("ab")) ==
        os({{"b", 2}, {"a", 1}, {"a", 1}, {"b", 2}}, 2));
  CHECK(sst_eval(identity_sst(), w("ba")) == os({{"b", 1}, {"a", 2}}, 2));
  CHECK(sst_eval(relabel_sst(), w("ab")) == os({{"b", 1}, {"a", 2}}, 2));
  CHECK(sst_eval(const_eps_sst(), w("ab")) == os({}, 2));

  // Parity-gated identity: copies even-length words, erases odd ones.
  CHECK(sst_eval(evenid_sst(), w("abab")) ==
        os({{"a", 1}, {"b", 2}, {"a", 3}, {"b", 4}}, 4));
  CHECK(sst_eval(evenid_sst(), w("aba")) == os({}, 3));
  CHECK(sst_eval(evenid_sst(), {}) == os({}, 0));
}

TEST_CASE("every machine maps the empty word to the empty output") {
  for (const auto& [name, m] : zoo()) {
    CAPTURE(name);
    CHECK(eval(m, {}) == OriginString{{}, 0});
  }
}

TEST_CASE("two-way evaluation oracles") {
  CHECK(twoway_eval(dup_twoway(), w("ab")) ==
        os({{"a", 1}, {"b", 2}, {"a", 1}, {"b", 2}}, 2));
  CHECK(twoway_eval(rev_twoway(), w("ab")) == os({{"b", 2}, {"a", 1}}, 2));
  CHECK(twoway_eval(rev_twoway(), w("aab")) ==
        os({{"b", 3}, {"a", 2}, {"a", 1}}, 3));
}

TEST_CASE("origin variants of the identity on ab") {
  // All four agree letter-wise on "ab" but tag different origins.
  CHECK(twoway_eval(ab_variant('a'), w("ab")) == os({{"a", 1}, {"b", 2}}, 2));
  CHECK(twoway_eval(ab_variant('b'), w("ab")) == os({{"a", 2}, {"b", 2}}, 2));
  CHECK(twoway_eval(ab_variant('c'), w("ab")) == os({{"a", 1}, {"b", 1}}, 2));
  CHECK(twoway_eval(ab_variant('d'), w("ab")) == os({{"a", 2}, {"b", 1}}, 2));
  // Elsewhere they all produce the empty output.
  for (char v : {'a', 'b', 'c', 'd'}) {
    CAPTURE(v);
    for (const char* t : {"", "a", "b", "ba", "aba", "abb"})
      CHECK(twoway_eval(ab_variant(v), w(t)) ==
            os({}, static_cast<int>(w(t).size())));
  }
}

TEST_CASE("looping two-way machine raises NonterminationError") {
  TwoWayTransducer m = looper_twoway();
  CHECK_THROWS_AS(twoway_eval(m, {}), NonterminationError);
  CHECK_THROWS_AS(twoway_eval(m, w("a")), NonterminationError);
  CHECK_THROWS_AS(twoway_eval(m, w("ab")), NonterminationError);
  // A tight explicit fuel trips even without waiting for a repeat.
  CHECK_THROWS_AS(twoway_eval(m, w("a"), 2), NonterminationError);
}

TEST_CASE("evaluation rejects letters outside the input alphabet") {
  CHECK_THROWS_AS(sst_eval(dup_sst(), {"z"}), DomainError);
  CHECK_THROWS_AS(twoway_eval(rev_twoway(), {"z"}), DomainError);
}

TEST_CASE("copyless discipline on update sequences") {
  StreamingTransducer m = dup_sst();  // registers r1, r2, c

  // Legal: consume c, refill it with create, consume it again.
  m.transitions[{"q", "a"}].ops = {
      RegisterOp::concat("r1", "c"),
      RegisterOp::create("c", "a"),
      RegisterOp::concat("r2", "c"),
  };
  CHECK_NOTHROW(m.validate());

  // Illegal: consume c twice without a refill.
  m.transitions[{"q", "a"}].ops = {
      RegisterOp::concat("r1", "c"),
      RegisterOp::concat("r2", "c"),
  };
  CHECK_THROWS_AS(m.validate(), ValidationError);

  // Illegal: concat a register onto itself.
  m.transitions[{"q", "a"}].ops = {RegisterOp::concat("r1", "r1")};
  CHECK_THROWS_AS(m.validate(), ValidationError);

  // Illegal: end-of-input sequences may not create fresh letters.
  m = dup_sst();
  m.end_of_input["q"] = {RegisterOp::create("c", "a")};
  CHECK_THROWS_AS(m.validate(), ValidationError);

  // Illegal: create letter outside the output alphabet.
  m = dup_sst();
  m.transitions[{"q", "a"}].ops = {RegisterOp::create("c", "z")};
  CHECK_THROWS_AS(m.validate(), ValidationError);
}

TEST_CASE("output length never exceeds the number of creates") {
  Alphabet ab({"a", "b"});
  for (const Word& word : all_words(ab, 5)) {
    for (const StreamingTransducer& m :
         {dup_sst(), pal_sst(), revdup_sst(), evenid_sst(), const_eps_sst()}) {
      SstEvalStats stats;
      OriginString out = sst_eval(m, word, stats);
      CHECK(static_cast<long long>(out.items.size()) <= stats.creates);
    }
  }
}

TEST_CASE("hand-built lookaround transducer evaluates") {
  LookaroundTransducer m;
  m.input_alphabet = Alphabet({"a", "b"});
  m.output_alphabet = Alphabet({"a", "b"});
  m.past = {{"p"}, "p", {{{"p", "a"}, "p"}, {{"p", "b"}, "p"}}};
  m.future = {{"s"}, "s", {{{"s", "a"}, "s"}, {{"s", "b"}, "s"}}};
  m.registers = {"r", "c"};
  m.output_register = "r";
  for (Symbol x : {"a", "b"})
    m.updates[{"p", x, "s"}] = {RegisterOp::create("c", x),
                                RegisterOp::concat("r", "c")};
  m.finish["p"] = {};
  m.validate();
  CHECK(lookaround_eval(m, w("ab")) == os({{"a", 1}, {"b", 2}}, 2));
  CHECK(lookaround_eval(m, {}) == os({}, 0));
}

TEST_CASE("factored evaluation oracles") {
  Machine revdup = revdup_sst();
  CHECK(render_factored(factored_eval(revdup, {w("a"), w("b")}, {1})) ==
        "right[b] left right[b]");
  CHECK(render_factored(factored_eval(revdup, {w("a"), w("b")}, {2})) ==
        "right left[aa] right");
  CHECK(render_factored(factored_eval(revdup, {w("a"), w("b")}, {1, 2})) ==
        "right left right");

  Machine dup = dup_sst();
  CHECK(render_factored(factored_eval(dup, {{}, w("a"), {}}, {1, 3})) ==
        "middle[aa]");
  CHECK(render_factored(factored_eval(dup, {w("a"), w("a"), w("a")}, {1, 3})) ==
        "left middle[a] right left middle[a] right");

  // An empty part covers no positions, so its source never appears.
  CHECK(render_factored(factored_eval(dup, {w("a"), {}, w("bb")}, {})) ==
        "left[a] right[bb] left[a] right[bb]");
  CHECK(render_factored(factored_eval(dup, {w("a"), {}, w("bb")}, {3})) ==
        "left[a] right left[a] right");

  CHECK_THROWS_AS(factored_eval(dup, {w("a")}, {2}), DomainError);
}
