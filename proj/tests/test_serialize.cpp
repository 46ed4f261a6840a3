#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "otx/canonical.hpp"
#include "otx/serialize.hpp"
#include "otx/zoo.hpp"

using namespace otx;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixture_name(const Machine& m, const std::string& name) {
  if (name.rfind("ab-variant", 0) == 0) return name + ".json";
  std::string stem = name;
  for (const std::string& tag : {std::string("-sst"), std::string("-2way")})
    if (stem.size() > tag.size() &&
        stem.compare(stem.size() - tag.size(), tag.size(), tag) == 0)
      stem.resize(stem.size() - tag.size());
  if (std::holds_alternative<StreamingTransducer>(m)) return stem + ".sst.json";
  if (std::holds_alternative<TwoWayTransducer>(m)) return stem + ".2dfa.json";
  return stem + ".la.json";
}

json dup_doc() { return json::parse(machine_to_json(Machine(dup_sst()))); }

}  // namespace

TEST_CASE("documents round-trip byte for byte") {
  for (const auto& [name, m] : zoo_with_looper()) {
    CAPTURE(name);
    std::string s = machine_to_json(m);
    Machine back = machine_from_json(s);
    CHECK(machine_to_json(back) == s);
  }
  // The canonical lookaround kind round-trips too, flag included.
  LookaroundTransducer c = canonize(Machine(dup_sst()));
  std::string s = machine_to_json(Machine(c));
  Machine back = machine_from_json(s);
  CHECK(machine_to_json(back) == s);
  CHECK(std::get<LookaroundTransducer>(back).canonical);
}

TEST_CASE("multi-character letters serialize as arrays") {
  StreamingTransducer m;
  m.input_alphabet = Alphabet({"x", "yy"});
  m.output_alphabet = Alphabet({"x", "yy"});
  m.states = {"q"};
  m.initial = "q";
  m.registers = {"r"};
  m.output_register = "r";
  for (Symbol t : {"x", "yy"}) m.transitions[{"q", t}] = {"q", {}};
  m.end_of_input["q"] = {};
  m.validate();
  std::string s = machine_to_json(Machine(m));
  CHECK(machine_to_json(machine_from_json(s)) == s);
}

TEST_CASE("shipped fixtures match the reference constructions") {
  for (const auto& [name, m] : zoo_with_looper()) {
    CAPTURE(name);
    std::string path = std::string(FIXTURES_DIR) + "/" + fixture_name(m, name);
    CHECK(slurp(path) == machine_to_json(m));
  }
}

TEST_CASE("inline JSON loads like a file") {
  std::string s = machine_to_json(Machine(rev_twoway()));
  Machine m = load_machine(s);
  CHECK(machine_to_json(m) == s);
  CHECK_THROWS_AS(load_machine("/no/such/file.json"), ParseError);
}

TEST_CASE("malformed documents raise ParseError") {
  CHECK_THROWS_AS(machine_from_json("not json"), ParseError);
  CHECK_THROWS_AS(machine_from_json("[]"), ParseError);

  json j = dup_doc();
  j["format"] = "otx/2";
  CHECK_THROWS_AS(machine_from_json(j.dump()), ParseError);

  j = dup_doc();
  j["kind"] = "mealy";
  CHECK_THROWS_AS(machine_from_json(j.dump()), ParseError);

  j = dup_doc();
  j.erase("states");
  CHECK_THROWS_AS(machine_from_json(j.dump()), ParseError);

  j = dup_doc();
  j["transitions"][0]["ops"][0] = {"concat", "r1"};  // arity
  CHECK_THROWS_AS(machine_from_json(j.dump()), ParseError);
}

TEST_CASE("semantically broken documents raise ValidationError") {
  // Register consumed twice in one update.
  json j = dup_doc();
  j["transitions"][0]["ops"] = {{"concat", "r1", "c"}, {"concat", "r2", "c"}};
  CHECK_THROWS_AS(machine_from_json(j.dump()), ValidationError);

  // Transition on a letter outside the input alphabet.
  j = dup_doc();
  j["transitions"][0]["letter"] = "z";
  CHECK_THROWS_AS(machine_from_json(j.dump()), ValidationError);

  // Unknown initial state.
  j = dup_doc();
  j["initial"] = "nowhere";
  CHECK_THROWS_AS(machine_from_json(j.dump()), ValidationError);

  // Output register not declared.
  j = dup_doc();
  j["output_register"] = "r9";
  CHECK_THROWS_AS(machine_from_json(j.dump()), ValidationError);
}

TEST_CASE("table debugging view is well-formed JSON") {
  CharTable t = minimize_table(sst_char_table(dup_sst()));
  json j = json::parse(chartable_to_json(t));
  CHECK(j.contains("entries"));
  CHECK(j.contains("past"));
  CHECK(j.contains("future"));
}
