#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "otx/decide.hpp"
#include "otx/learn.hpp"
#include "otx/serialize.hpp"

namespace {

using namespace otx;

Word parse_input(const Machine& m, const std::string& text) {
  return input_alphabet(m).parse_word(text);
}

std::vector<Word> parse_parts(const Machine& m, const std::string& text) {
  std::vector<std::string> chunks{""};
  for (char c : text) {
    if (c == '|') chunks.emplace_back();
    else chunks.back().push_back(c);
  }
  std::vector<Word> parts;
  for (const std::string& chunk : chunks) parts.push_back(parse_input(m, chunk));
  return parts;
}

std::set<int> parse_underline(const std::string& text, int part_count) {
  std::set<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int i = std::stoi(item);
    if (i < 1 || i > part_count)
      throw DomainError("underline index out of range: " + item);
    out.insert(i);
  }
  return out;
}

/// The three-way value of a machine at a split, for witness display.
FactoredOutput value_at(const Machine& m, const SplitWitness& w) {
  return factored_eval(m, {w.prefix, {w.letter}, w.suffix}, {1, 3});
}

int cmd_eval(const Machine& m, const std::string& input, bool origins) {
  OriginString out = eval(m, parse_input(m, input));
  std::cout << (origins ? render_origin_string(out) : render_word(out.letters())) << "\n";
  return 0;
}

int cmd_factored(const Machine& m, const std::string& parts_text,
                 const std::string& underline_text) {
  std::vector<Word> parts = parse_parts(m, parts_text);
  std::set<int> underlined = parse_underline(underline_text, static_cast<int>(parts.size()));
  std::cout << render_factored(factored_eval(m, parts, underlined)) << "\n";
  return 0;
}

int cmd_canonize(const Machine& m, const std::string& out_path) {
  Machine c = canonize(m);
  if (out_path.empty()) std::cout << machine_to_json(c);
  else save_machine(c, out_path);
  return 0;
}

int cmd_equiv(const Machine& m1, const Machine& m2, int bounded) {
  if (bounded >= 0) {
    BoundedEquivalence r = bounded_equivalent(m1, m2, bounded);
    if (r.equal) {
      std::cout << "equivalent: yes\n";
      return 0;
    }
    std::cout << "equivalent: no\n";
    std::cout << "witness: " << render_word(*r.witness) << "\n";
    std::cout << "output 1: " << render_origin_string(eval(m1, *r.witness)) << "\n";
    std::cout << "output 2: " << render_origin_string(eval(m2, *r.witness)) << "\n";
    return 1;
  }
  CanonicalEquivalence r = equivalent(m1, m2);
  if (r.equal) {
    std::cout << "equivalent: yes\n";
    return 0;
  }
  std::cout << "equivalent: no\n";
  const SplitWitness& w = *r.witness;
  std::cout << "witness: v=" << render_word(w.prefix) << " a=" << w.letter
            << " w=" << render_word(w.suffix) << "\n";
  std::cout << "value 1: " << render_factored(value_at(m1, w)) << "\n";
  std::cout << "value 2: " << render_factored(value_at(m2, w)) << "\n";
  return 1;
}

int cmd_classify(const Machine& m) {
  Classification c = classify(m);
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "order_preserving: " << yn(c.order_preserving) << "\n";
  std::cout << "one_way_deterministic: "
            << (c.one_way_deterministic ? yn(*c.one_way_deterministic) : "n/a") << "\n";
  std::cout << "first_order: " << yn(c.first_order) << "\n";
  return 0;
}

int cmd_learn(const Machine& m, bool trace, const std::string& out_path) {
  MachineTeacher teacher(m);
  LstarTrace cb;
  if (trace)
    cb = [](int round, int prefixes, int suffixes) {
      std::cout << "round " << round << ": prefixes=" << prefixes
                << " suffixes=" << suffixes << "\n";
    };
  LearnResult res = learn_transducer(teacher, cb);
  const LearnStats& s = res.stats;
  int max_cex = 0;
  for (int len : s.cex_lengths) max_cex = std::max(max_cex, len);
  std::cout << "learned: states=" << s.hypothesis_states
            << " membership=" << s.membership_queries
            << " local_rejections=" << s.local_rejections
            << " value_queries=" << s.value_queries
            << " equivalence=" << s.equivalence_queries << " max_cex=" << max_cex
            << " bound_regressed=" << (s.bound_regressed ? "yes" : "no") << "\n";
  if (out_path.empty()) std::cout << machine_to_json(res.device);
  else save_machine(res.device, out_path);
  return 0;
}

int cmd_reconstruct(const Machine& m, const std::string& input) {
  Word w = parse_input(m, input);
  const int n = static_cast<int>(w.size());
  OriginString direct = eval(m, w);
  std::vector<FactoredOutput> values;
  for (int i = 0; i < n; ++i) {
    Word v(w.begin(), w.begin() + i);
    Word rest(w.begin() + i + 1, w.end());
    values.push_back(factored_eval(m, {v, {w[i]}, rest}, {1, 3}));
  }
  OriginString merged = otimes_merge(values, n);
  std::cout << "direct: " << render_origin_string(direct) << "\n";
  std::cout << "merged: " << render_origin_string(merged) << "\n";
  bool same = direct == merged;
  std::cout << "identity: " << (same ? "yes" : "no") << "\n";
  return same ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"origin-aware regular string transducers"};
  app.require_subcommand(1);

  std::string m_path, m2_path, input_text, parts_text, underline_text, out_path,
      teacher_path;
  bool origins = false, trace = false;
  int bounded = -1;

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate a machine on an input word");
  c_eval->add_option("machine", m_path, "machine file or inline JSON")->required();
  c_eval->add_option("--input", input_text, "input word")->required();
  c_eval->add_flag("--origins", origins, "print origin annotations");

  CLI::App* c_fact = app.add_subcommand("factored", "value of a split input");
  c_fact->add_option("machine", m_path)->required();
  c_fact->add_option("--parts", parts_text, "parts separated by '|'")->required();
  c_fact->add_option("--underline", underline_text, "1-based parts to abstract");

  CLI::App* c_canon = app.add_subcommand("canonize", "canonical form of a machine");
  c_canon->add_option("machine", m_path)->required();
  c_canon->add_option("-o,--output", out_path, "write the device here");

  CLI::App* c_equiv = app.add_subcommand("equiv", "origin-aware equivalence");
  c_equiv->add_option("machine1", m_path)->required();
  c_equiv->add_option("machine2", m2_path)->required();
  c_equiv->add_option("--bounded", bounded, "compare outputs on all words up to this length");

  CLI::App* c_class = app.add_subcommand("classify", "decide the subclass properties");
  c_class->add_option("machine", m_path)->required();

  CLI::App* c_learn = app.add_subcommand("learn", "learn a device from queries");
  c_learn->add_option("--teacher", teacher_path, "machine backing the teacher")->required();
  c_learn->add_flag("--trace", trace, "print observation table growth");
  c_learn->add_option("-o,--output", out_path, "write the learned device here");

  CLI::App* c_recon = app.add_subcommand("reconstruct", "rebuild the output from per-position values");
  c_recon->add_option("machine", m_path)->required();
  c_recon->add_option("--input", input_text, "input word")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_eval)) return cmd_eval(load_machine(m_path), input_text, origins);
    if (app.got_subcommand(c_fact))
      return cmd_factored(load_machine(m_path), parts_text, underline_text);
    if (app.got_subcommand(c_canon)) return cmd_canonize(load_machine(m_path), out_path);
    if (app.got_subcommand(c_equiv))
      return cmd_equiv(load_machine(m_path), load_machine(m2_path), bounded);
    if (app.got_subcommand(c_class)) return cmd_classify(load_machine(m_path));
    if (app.got_subcommand(c_learn)) return cmd_learn(load_machine(teacher_path), trace, out_path);
    if (app.got_subcommand(c_recon)) return cmd_reconstruct(load_machine(m_path), input_text);
  } catch (const otx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
