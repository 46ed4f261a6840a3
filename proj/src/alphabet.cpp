#include "otx/alphabet.hpp"

#include <sstream>

namespace otx {

Alphabet::Alphabet(std::vector<Symbol> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw ValidationError("alphabet must not be empty");
  for (int i = 0; i < static_cast<int>(letters_.size()); ++i) {
    const Symbol& s = letters_[i];
    if (s.empty()) throw ValidationError("alphabet letter must not be empty");
    if (!index_.emplace(s, i).second)
      throw ValidationError("duplicate alphabet letter: " + s);
  }
}

int Alphabet::index(const Symbol& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw DomainError("letter not in alphabet: " + s);
  return it->second;
}

bool Alphabet::single_char() const {
  for (const Symbol& s : letters_)
    if (s.size() != 1) return false;
  return true;
}

Word Alphabet::parse_word(const std::string& text) const {
  Word w;
  if (single_char()) {
    for (char c : text) {
      Symbol s(1, c);
      if (!contains(s)) throw DomainError("letter not in alphabet: " + s);
      w.push_back(std::move(s));
    }
  } else {
    std::istringstream in(text);
    Symbol s;
    while (in >> s) {
      if (!contains(s)) throw DomainError("letter not in alphabet: " + s);
      w.push_back(s);
    }
  }
  return w;
}

void Alphabet::check_word(const Word& w) const {
  for (const Symbol& s : w)
    if (!contains(s)) throw DomainError("letter not in alphabet: " + s);
}

std::string render_word(const Word& w) {
  std::string out;
  for (const Symbol& s : w) out += s;
  return out;
}

std::vector<Word> all_words(const Alphabet& a, int max_len) {
  std::vector<Word> result;
  result.push_back({});
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = result.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (const Symbol& s : a.letters()) {
        Word w = result[i];
        w.push_back(s);
        result.push_back(std::move(w));
      }
    }
    level_begin = level_end;
  }
  return result;
}

}  // namespace otx
