#include "otx/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace otx {

namespace {

using nlohmann::json;

json word_to_json(const Word& w, const Alphabet& a) {
  if (a.single_char()) return render_word(w);
  return json(w);
}

Word word_from_json(const json& j, const Alphabet& a, const std::string& where) {
  Word w;
  if (j.is_string()) {
    for (char c : j.get<std::string>()) w.push_back(std::string(1, c));
  } else if (j.is_array()) {
    for (const json& x : j) w.push_back(x.get<std::string>());
  } else {
    throw ParseError("expected a word (string or array) in " + where);
  }
  try {
    a.check_word(w);
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
  return w;
}

json alphabet_to_json(const Alphabet& a) { return json(a.letters()); }

Alphabet alphabet_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError("expected an array of letters in " + where);
  std::vector<Symbol> letters;
  for (const json& x : j) letters.push_back(x.get<std::string>());
  return Alphabet(letters);
}

json ops_to_json(const std::vector<RegisterOp>& ops) {
  json arr = json::array();
  for (const RegisterOp& op : ops) {
    if (op.kind == RegisterOp::Kind::Create)
      arr.push_back(json::array({"create", op.dst, op.letter}));
    else
      arr.push_back(json::array({"concat", op.dst, op.src}));
  }
  return arr;
}

std::vector<RegisterOp> ops_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError("expected an op array in " + where);
  std::vector<RegisterOp> ops;
  for (const json& o : j) {
    if (!o.is_array() || o.size() != 3)
      throw ParseError("each op must be a 3-element array in " + where);
    std::string kind = o[0].get<std::string>();
    if (kind == "create")
      ops.push_back(RegisterOp::create(o[1].get<std::string>(), o[2].get<std::string>()));
    else if (kind == "concat")
      ops.push_back(RegisterOp::concat(o[1].get<std::string>(), o[2].get<std::string>()));
    else
      throw ParseError("unknown op kind '" + kind + "' in " + where);
  }
  return ops;
}

json sst_to_json(const StreamingTransducer& m) {
  json j;
  j["format"] = kFormatTag;
  j["kind"] = "sst";
  j["input_alphabet"] = alphabet_to_json(m.input_alphabet);
  j["output_alphabet"] = alphabet_to_json(m.output_alphabet);
  j["states"] = m.states;
  j["initial"] = m.initial;
  j["registers"] = m.registers;
  j["output_register"] = m.output_register;
  json trs = json::array();
  for (const auto& [key, tr] : m.transitions)
    trs.push_back({{"from", key.first},
                   {"letter", key.second},
                   {"to", tr.next},
                   {"ops", ops_to_json(tr.ops)}});
  j["transitions"] = trs;
  json eoi = json::array();
  for (const auto& [state, ops] : m.end_of_input)
    eoi.push_back({{"from", state}, {"ops", ops_to_json(ops)}});
  j["end_of_input"] = eoi;
  return j;
}

StreamingTransducer sst_from_json(const json& j) {
  StreamingTransducer m;
  m.input_alphabet = alphabet_from_json(j.at("input_alphabet"), "input_alphabet");
  m.output_alphabet = alphabet_from_json(j.at("output_alphabet"), "output_alphabet");
  m.states = j.at("states").get<std::vector<std::string>>();
  m.initial = j.at("initial").get<std::string>();
  m.registers = j.at("registers").get<std::vector<std::string>>();
  m.output_register = j.at("output_register").get<std::string>();
  for (const json& t : j.at("transitions"))
    m.transitions[{t.at("from").get<std::string>(), t.at("letter").get<std::string>()}] = {
        t.at("to").get<std::string>(), ops_from_json(t.at("ops"), "transitions")};
  for (const json& t : j.at("end_of_input"))
    m.end_of_input[t.at("from").get<std::string>()] =
        ops_from_json(t.at("ops"), "end_of_input");
  return m;
}

json twoway_to_json(const TwoWayTransducer& m) {
  json j;
  j["format"] = kFormatTag;
  j["kind"] = "twoway";
  j["input_alphabet"] = alphabet_to_json(m.input_alphabet);
  j["output_alphabet"] = alphabet_to_json(m.output_alphabet);
  j["states"] = m.states;
  j["initial"] = m.initial;
  j["accept"] = m.accept;
  json trs = json::array();
  for (const auto& [key, tr] : m.transitions)
    trs.push_back({{"from", key.first},
                   {"symbol", key.second},
                   {"to", tr.next},
                   {"move", tr.move == Direction::Left ? "left" : "right"},
                   {"output", word_to_json(tr.output, m.output_alphabet)}});
  j["transitions"] = trs;
  return j;
}

TwoWayTransducer twoway_from_json(const json& j) {
  TwoWayTransducer m;
  m.input_alphabet = alphabet_from_json(j.at("input_alphabet"), "input_alphabet");
  m.output_alphabet = alphabet_from_json(j.at("output_alphabet"), "output_alphabet");
  m.states = j.at("states").get<std::vector<std::string>>();
  m.initial = j.at("initial").get<std::string>();
  m.accept = j.at("accept").get<std::string>();
  for (const json& t : j.at("transitions")) {
    std::string move = t.at("move").get<std::string>();
    if (move != "left" && move != "right")
      throw ParseError("move must be 'left' or 'right' in transitions");
    m.transitions[{t.at("from").get<std::string>(), t.at("symbol").get<std::string>()}] = {
        t.at("to").get<std::string>(),
        move == "left" ? Direction::Left : Direction::Right,
        word_from_json(t.at("output"), m.output_alphabet, "transition output")};
  }
  return m;
}

json dfa_spec_to_json(const DfaSpec& d) {
  json j;
  j["states"] = d.states;
  j["initial"] = d.initial;
  json trs = json::array();
  for (const auto& [key, to] : d.transitions)
    trs.push_back({{"from", key.first}, {"letter", key.second}, {"to", to}});
  j["transitions"] = trs;
  return j;
}

DfaSpec dfa_spec_from_json(const json& j, const std::string& where) {
  DfaSpec d;
  d.states = j.at("states").get<std::vector<std::string>>();
  d.initial = j.at("initial").get<std::string>();
  for (const json& t : j.at("transitions"))
    d.transitions[{t.at("from").get<std::string>(), t.at("letter").get<std::string>()}] =
        t.at("to").get<std::string>();
  if (d.transitions.empty() && !j.at("transitions").is_array())
    throw ParseError("expected a transition array in " + where);
  return d;
}

json lookaround_to_json(const LookaroundTransducer& m) {
  json j;
  j["format"] = kFormatTag;
  j["kind"] = "lookaround";
  j["input_alphabet"] = alphabet_to_json(m.input_alphabet);
  j["output_alphabet"] = alphabet_to_json(m.output_alphabet);
  j["past"] = dfa_spec_to_json(m.past);
  j["future"] = dfa_spec_to_json(m.future);
  j["registers"] = m.registers;
  j["output_register"] = m.output_register;
  json ups = json::array();
  for (const auto& [key, ops] : m.updates)
    ups.push_back({{"past", std::get<0>(key)},
                   {"letter", std::get<1>(key)},
                   {"future", std::get<2>(key)},
                   {"ops", ops_to_json(ops)}});
  j["updates"] = ups;
  json fin = json::array();
  for (const auto& [state, ops] : m.finish)
    fin.push_back({{"past", state}, {"ops", ops_to_json(ops)}});
  j["finish"] = fin;
  j["canonical"] = m.canonical;
  return j;
}

LookaroundTransducer lookaround_from_json(const json& j) {
  LookaroundTransducer m;
  m.input_alphabet = alphabet_from_json(j.at("input_alphabet"), "input_alphabet");
  m.output_alphabet = alphabet_from_json(j.at("output_alphabet"), "output_alphabet");
  m.past = dfa_spec_from_json(j.at("past"), "past");
  m.future = dfa_spec_from_json(j.at("future"), "future");
  m.registers = j.at("registers").get<std::vector<std::string>>();
  m.output_register = j.at("output_register").get<std::string>();
  for (const json& t : j.at("updates"))
    m.updates[{t.at("past").get<std::string>(), t.at("letter").get<std::string>(),
               t.at("future").get<std::string>()}] = ops_from_json(t.at("ops"), "updates");
  for (const json& t : j.at("finish"))
    m.finish[t.at("past").get<std::string>()] = ops_from_json(t.at("ops"), "finish");
  m.canonical = j.value("canonical", false);
  return m;
}

}  // namespace

std::string machine_to_json(const Machine& m) {
  json j = std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, StreamingTransducer>) return sst_to_json(x);
        else if constexpr (std::is_same_v<T, TwoWayTransducer>) return twoway_to_json(x);
        else return lookaround_to_json(x);
      },
      m);
  return j.dump(2) + "\n";
}

Machine machine_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ParseError("document is not a JSON object");
    if (j.value("format", "") != kFormatTag)
      throw ParseError("unsupported or missing format tag (expected " + kFormatTag + ")");
    std::string kind = j.value("kind", "");
    Machine m;
    if (kind == "sst") m = sst_from_json(j);
    else if (kind == "twoway") m = twoway_from_json(j);
    else if (kind == "lookaround") m = lookaround_from_json(j);
    else throw ParseError("unknown machine kind '" + kind + "'");
    validate(m);
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema violation: ") + e.what());
  }
}

Machine load_machine(const std::string& path_or_inline) {
  std::size_t first = path_or_inline.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_inline[first] == '{')
    return machine_from_json(path_or_inline);
  std::ifstream in(path_or_inline);
  if (!in) throw ParseError("cannot open machine file: " + path_or_inline);
  std::ostringstream buf;
  buf << in.rdbuf();
  return machine_from_json(buf.str());
}

void save_machine(const Machine& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write machine file: " + path);
  out << machine_to_json(m);
}

std::string chartable_to_json(const CharTable& t) {
  json j;
  j["format"] = kFormatTag;
  j["kind"] = "chartable";
  j["input_alphabet"] = alphabet_to_json(t.input_alphabet);
  j["output_alphabet"] = alphabet_to_json(t.output_alphabet);
  j["past"] = {{"states", t.past.num_states},
               {"initial", t.past.initial},
               {"next", t.past.next},
               {"whole_output_empty", std::vector<bool>(t.empty_given_past.begin(),
                                                        t.empty_given_past.end())}};
  j["future"] = {{"states", t.future.num_states},
                 {"initial", t.future.initial},
                 {"next", t.future.next},
                 {"whole_output_empty", std::vector<bool>(t.empty_given_future.begin(),
                                                          t.empty_given_future.end())}};
  json entries = json::array();
  for (int p = 0; p < t.past.num_states; ++p)
    for (int a = 0; a < t.input_alphabet.size(); ++a)
      for (int s = 0; s < t.future.num_states; ++s)
        entries.push_back({{"past", p},
                           {"letter", t.input_alphabet.letter(a)},
                           {"future", s},
                           {"value", render_factored(t.entry(p, a, s))}});
  j["entries"] = entries;
  return j.dump(2) + "\n";
}

}  // namespace otx
