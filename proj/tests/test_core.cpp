#include <doctest.h>

#include "otx/origin.hpp"
#include "otx/zoo.hpp"

using namespace otx;

namespace {

OriginString os(std::vector<std::pair<std::string, int>> items, int n) {
  OriginString s;
  for (auto& [l, o] : items) s.items.push_back({l, o});
  s.input_length = n;
  return s;
}

Block concrete(SourceId src, std::vector<Symbol> w) {
  return {std::move(src), Word(std::move(w))};
}
Block abstr(SourceId src) { return {std::move(src), std::nullopt}; }

}  // namespace

TEST_CASE("origin string rendering") {
  CHECK(render_origin_string(os({{"a", 1}, {"b", 2}, {"a", 1}, {"b", 2}}, 2)) ==
        "a@1 b@2 a@1 b@2");
  CHECK(render_origin_string(os({}, 3)) == "");
  CHECK(os({{"a", 1}}, 1).letters() == Word{"a"});
}

TEST_CASE("colorings from parts") {
  SourceColoring c = SourceColoring::from_parts({1, 1, 0}, part_names(3));
  CHECK(c.input_length == 2);
  CHECK(c.at(1) == kLeft);
  CHECK(c.at(2) == kMiddle);

  SourceColoring whole = SourceColoring::from_parts({0, 3, 0}, part_names(3));
  CHECK(whole.at(1) == kMiddle);
  CHECK(whole.at(3) == kMiddle);

  CHECK(part_names(2) == std::vector<SourceId>{kLeft, kRight});
  CHECK(part_names(1) == std::vector<SourceId>{kMiddle});
  CHECK(part_names(4).size() == 4);

  CHECK_THROWS_AS(SourceColoring::from_parts({1, 2}, part_names(3)), DomainError);
}

TEST_CASE("factorize groups maximal runs by color") {
  // REVDUP on "ab": b@2 a@1 a@1 b@2, colored by the split a | b.
  OriginString out = os({{"b", 2}, {"a", 1}, {"a", 1}, {"b", 2}}, 2);
  SourceColoring sigma = SourceColoring::from_parts({1, 1}, part_names(2));
  FactoredOutput f = factorize(out, sigma);
  REQUIRE(f.blocks.size() == 3);
  CHECK(f.blocks[0] == concrete(kRight, {"b"}));
  CHECK(f.blocks[1] == concrete(kLeft, {"a", "a"}));
  CHECK(f.blocks[2] == concrete(kRight, {"b"}));

  // Adjacent blocks always differ in source.
  for (std::size_t i = 1; i < f.blocks.size(); ++i)
    CHECK(f.blocks[i - 1].source != f.blocks[i].source);
}

TEST_CASE("factorize rejects out-of-range origins") {
  OriginString out = os({{"a", 3}}, 3);
  SourceColoring sigma = SourceColoring::from_parts({1, 1}, part_names(2));
  CHECK_THROWS_AS(factorize(out, sigma), DomainError);
}

TEST_CASE("abstract_blocks drops underlined content only") {
  FactoredOutput f{{concrete(kLeft, {"a"}), concrete(kMiddle, {"b"}),
                    concrete(kLeft, {"a"})}};
  FactoredOutput g = abstract_blocks(f, {kLeft});
  REQUIRE(g.blocks.size() == 3);
  CHECK(g.blocks[0] == abstr(kLeft));
  CHECK(g.blocks[1] == concrete(kMiddle, {"b"}));
  CHECK(g.blocks[2] == abstr(kLeft));
  // Idempotent.
  CHECK(abstract_blocks(g, {kLeft}) == g);
}

TEST_CASE("abstract_blocks commutes over disjoint underline sets") {
  FactoredOutput f{{concrete(kLeft, {"a"}), concrete(kMiddle, {"b"}),
                    concrete(kRight, {"c"}), concrete(kLeft, {"a"}),
                    concrete(kMiddle, {"b"}), concrete(kRight, {"c"})}};
  FactoredOutput lr = abstract_blocks(abstract_blocks(f, {kLeft}), {kRight});
  FactoredOutput rl = abstract_blocks(abstract_blocks(f, {kRight}), {kLeft});
  CHECK(lr == rl);
  CHECK(lr == abstract_blocks(f, {kLeft, kRight}));
  REQUIRE(lr.blocks.size() == 6);
  CHECK(lr.blocks[0] == abstr(kLeft));
  CHECK(lr.blocks[1] == concrete(kMiddle, {"b"}));
  CHECK(lr.blocks[2] == abstr(kRight));
}

TEST_CASE("factored rendering") {
  FactoredOutput f{{abstr(kLeft), concrete(kMiddle, {"c", "d"}), abstr(kRight)}};
  CHECK(render_factored(f) == "left middle[cd] right");
  CHECK(render_factored(FactoredOutput{}) == "");
}

TEST_CASE("otimes_merge rebuilds REVDUP on ab") {
  // Frozen per-position values of w -> reverse(w)·w at "ab":
  //   position 1: right middle[aa] right
  //   position 2: middle[b] left middle[b]
  std::vector<FactoredOutput> xs = {
      {{abstr(kRight), concrete(kMiddle, {"a", "a"}), abstr(kRight)}},
      {{concrete(kMiddle, {"b"}), abstr(kLeft), concrete(kMiddle, {"b"})}},
  };
  OriginString merged = otimes_merge(xs, 2);
  CHECK(merged == os({{"b", 2}, {"a", 1}, {"a", 1}, {"b", 2}}, 2));
}

TEST_CASE("otimes_merge on the empty input") {
  CHECK(otimes_merge({}, 0) == OriginString{{}, 0});
}

TEST_CASE("otimes_merge against direct evaluation across machines") {
  Alphabet ab({"a", "b"});
  for (const auto& [name, m] : zoo()) {
    CAPTURE(name);
    for (const Word& w : all_words(ab, 4)) {
      const int n = static_cast<int>(w.size());
      std::vector<FactoredOutput> xs;
      for (int i = 0; i < n; ++i) {
        Word v(w.begin(), w.begin() + i);
        Word rest(w.begin() + i + 1, w.end());
        xs.push_back(factored_eval(m, {v, {w[i]}, rest}, {1, 3}));
      }
      CHECK(otimes_merge(xs, n) == eval(m, w));
    }
  }
}

TEST_CASE("otimes_merge rejects families no single transduction produces") {
  // Position 1 claims the whole output is "a" from position 1; position 2
  // claims it is "b" from position 2.
  std::vector<FactoredOutput> bad = {
      {{concrete(kMiddle, {"a"})}},
      {{concrete(kMiddle, {"b"})}},
  };
  CHECK_THROWS_AS(otimes_merge(bad, 2), InconsistentFamilyError);
  try {
    otimes_merge(bad, 2);
  } catch (const InconsistentFamilyError& e) {
    CHECK(e.position == 2);
  }
}

TEST_CASE("otimes_merge rejects placeholders outliving the input") {
  // Both positions agree, but a suffix placeholder survives position n.
  std::vector<FactoredOutput> bad = {
      {{concrete(kMiddle, {"a"}), abstr(kRight)}},
      {{abstr(kLeft), concrete(kMiddle, {"b"}), abstr(kRight)}},
  };
  CHECK_THROWS_AS(otimes_merge(bad, 2), IncompleteMergeError);
}
