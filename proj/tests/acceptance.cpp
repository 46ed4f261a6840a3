// Acceptance checks: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Each check is phrased against observable behavior
// only (evaluation, tables, canonical devices, the learner).

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "otx/decide.hpp"
#include "otx/learn.hpp"
#include "otx/zoo.hpp"

using namespace otx;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
            << label;
  if (!detail.empty()) std::cout << " — " << detail;
  std::cout << "\n";
  if (!ok) ++failures;
}

void run(int number, const std::string& label,
         const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("unexpected exception: ") + e.what();
  }
  report(number, label, ok, detail);
}

Alphabet ab() { return Alphabet({"a", "b"}); }

Machine find_machine(const std::string& name) {
  for (auto& [n, m] : zoo_with_looper())
    if (n == name) return m;
  throw std::runtime_error("unknown machine " + name);
}

FactoredOutput split_value(const Machine& m, const SplitWitness& w) {
  return factored_eval(m, {w.prefix, {w.letter}, w.suffix}, {1, 3});
}

std::string show(const Classification& c) {
  auto yn = [](bool b) { return b ? std::string("yes") : std::string("no"); };
  return yn(c.order_preserving) + "/" +
         (c.one_way_deterministic ? yn(*c.one_way_deterministic)
                                  : std::string("n/a")) +
         "/" + yn(c.first_order);
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;

  run(1, "doubling as streaming and as two-way agree on all words up to length 6",
      [](std::string& detail) {
        Machine sst = find_machine("dup-sst");
        Machine tw = find_machine("dup-2way");
        auto t0 = Clock::now();
        int count = 0;
        for (const Word& w : all_words(ab(), 6)) {
          if (eval(sst, w) != eval(tw, w)) {
            detail = "mismatch on '" + render_word(w) + "'";
            return false;
          }
          ++count;
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::ostringstream os;
        os << count << " words, " << secs << " s";
        detail = os.str();
        return secs < 5.0;
      });

  run(2, "per-position values merge back to the direct output on every machine",
      [](std::string& detail) {
        for (const auto& [name, m] : zoo()) {
          for (const Word& w : all_words(ab(), 6)) {
            const int n = static_cast<int>(w.size());
            std::vector<FactoredOutput> xs;
            for (int i = 0; i < n; ++i) {
              Word v(w.begin(), w.begin() + i);
              Word rest(w.begin() + i + 1, w.end());
              xs.push_back(factored_eval(m, {v, {w[i]}, rest}, {1, 3}));
            }
            if (otimes_merge(xs, n) != eval(m, w)) {
              detail = name + " on '" + render_word(w) + "'";
              return false;
            }
          }
        }
        detail = "13 machines x 127 words";
        return true;
      });

  run(3, "canonization preserves origin semantics exactly up to length 6",
      [](std::string& detail) {
        for (const auto& [name, m] : zoo()) {
          LookaroundTransducer c = canonize(m);
          for (const Word& w : all_words(ab(), 6))
            if (lookaround_eval(c, w) != eval(m, w)) {
              detail = name + " on '" + render_word(w) + "'";
              return false;
            }
        }
        detail = "13 machines x 127 words";
        return true;
      });

  run(4, "derivative counts: reverse-copy has 2 row classes, parity identity 3",
      [](std::string& detail) {
        int rd = minimize_table(char_table(find_machine("revdup"))).past.num_states;
        int ev = minimize_table(char_table(find_machine("evenid"))).past.num_states;
        std::ostringstream os;
        os << "revdup=" << rd << " evenid=" << ev;
        detail = os.str();
        return rd == 2 && ev == 3;
      });

  run(5, "identity variants hide their difference from letters but not origins",
      [](std::string& detail) {
        std::vector<Machine> vs;
        for (char v : {'a', 'b', 'c', 'd'}) vs.push_back(Machine(ab_variant(v)));
        for (std::size_t i = 0; i < vs.size(); ++i)
          for (std::size_t j = i + 1; j < vs.size(); ++j) {
            for (const Word& w : all_words(ab(), 4))
              if (eval(vs[i], w).letters() != eval(vs[j], w).letters()) {
                detail = "letter mismatch on '" + render_word(w) + "'";
                return false;
              }
            CanonicalEquivalence r = equivalent(vs[i], vs[j]);
            if (r.equal || !r.witness.has_value()) {
              detail = "pair " + std::to_string(i) + "," + std::to_string(j) +
                       " not separated";
              return false;
            }
            if (split_value(vs[i], *r.witness) == split_value(vs[j], *r.witness)) {
              detail = "witness not validated by factored values";
              return false;
            }
          }
        detail = "6 pairs, letter-equal to length 4, each split by a validated witness";
        return true;
      });

  run(6, "classification triples match on doubling, parity identity, identity",
      [](std::string& detail) {
        std::string dup = show(classify(find_machine("dup-sst")));
        std::string ev = show(classify(find_machine("evenid")));
        std::string id = show(classify(find_machine("identity")));
        detail = "dup=" + dup + " evenid=" + ev + " identity=" + id;
        return dup == "no/n/a/yes" && ev == "yes/no/no" && id == "yes/yes/yes";
      });

  run(7, "canonical equivalence agrees with the length-6 oracle on 49 pairs",
      [](std::string& detail) {
        const std::vector<std::string> names = {"dup-sst", "dup-2way", "rev",
                                                "pal",     "revdup",   "evenid",
                                                "const-eps"};
        int checked = 0;
        for (const std::string& n1 : names)
          for (const std::string& n2 : names) {
            Machine m1 = find_machine(n1);
            Machine m2 = find_machine(n2);
            bool canonical = equivalent(m1, m2).equal;
            bool bounded = bounded_equivalent(m1, m2, 6).equal;
            if (canonical != bounded) {
              detail = n1 + " vs " + n2 + ": canonical says " +
                       (canonical ? "yes" : "no") + ", oracle says " +
                       (bounded ? "yes" : "no");
              return false;
            }
            ++checked;
          }
        detail = std::to_string(checked) + " ordered pairs";
        return true;
      });

  run(8, "the learner rebuilds doubling, reverse-copy, parity identity, constant-empty",
      [](std::string& detail) {
        for (const char* name : {"dup-sst", "revdup", "evenid", "const-eps"}) {
          Machine m = find_machine(name);
          auto t0 = Clock::now();
          MachineTeacher teacher{m};
          LearnResult res = learn_transducer(teacher);
          double secs = std::chrono::duration<double>(Clock::now() - t0).count();
          if (secs >= 60.0) {
            detail = std::string(name) + " took too long";
            return false;
          }
          if (!canonical_equal(res.device, canonize(m)).equal) {
            detail = std::string(name) + ": learned device not equivalent";
            return false;
          }
          if (res.stats.equivalence_queries >
              static_cast<long>(teacher.language_dfa().num_states)) {
            detail = std::string(name) + ": too many equivalence queries";
            return false;
          }
          // Malformed membership probes never cost a value query.
          MachineTeacher fresh{m};
          for (const Word& u : std::vector<Word>{
                   {"a"}, {"#", "#", "#"}, {"#", "a", "b", "#", "#"},
                   {"left", "#", "a", "#", "#"}, {"#", "a", "#", "right", "#"}})
            if (fresh.member(u)) {
              detail = std::string(name) + ": malformed word accepted";
              return false;
            }
          if (fresh.stats().value_queries != 0) {
            detail = std::string(name) + ": malformed words reached the machine";
            return false;
          }
        }
        detail = "4 machines learned, equivalence-query bound and local rejection hold";
        return true;
      });

  run(9, "the looping machine raises nontermination from runs and summaries",
      [](std::string& detail) {
        TwoWayTransducer looper = looper_twoway();
        bool eval_throws = false;
        try {
          twoway_eval(looper, {"a"});
        } catch (const NonterminationError&) {
          eval_throws = true;
        }
        bool table_throws = false;
        try {
          twoway_char_table(looper);
        } catch (const NonterminationError&) {
          table_throws = true;
        }
        detail = std::string("eval ") + (eval_throws ? "throws" : "returns") +
                 ", summary " + (table_throws ? "throws" : "returns");
        return eval_throws && table_throws;
      });

  if (failures == 0) std::cout << "all criteria passed\n";
  else std::cout << failures << " criteria failed\n";
  return failures == 0 ? 0 : 1;
}
