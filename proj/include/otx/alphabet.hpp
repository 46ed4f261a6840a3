#pragma once

#include <map>
#include <string>
#include <vector>

#include "otx/error.hpp"

namespace otx {

/// A single letter. Letters are short tokens; the common case is a
/// one-character token, but multi-character tokens are allowed.
using Symbol = std::string;

/// A word is a sequence of letters.
using Word = std::vector<Symbol>;

/// An ordered, duplicate-free set of letters.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> letters);

  int size() const { return static_cast<int>(letters_.size()); }
  const Symbol& letter(int i) const { return letters_[i]; }
  const std::vector<Symbol>& letters() const { return letters_; }

  bool contains(const Symbol& s) const { return index_.count(s) != 0; }

  /// Index of a letter; throws DomainError if absent.
  int index(const Symbol& s) const;

  /// True when every letter is a single character, so words can be written
  /// without separators.
  bool single_char() const;

  /// Parse a word from text. With a single-character alphabet the text is
  /// split character by character; otherwise it is split on whitespace.
  Word parse_word(const std::string& text) const;

  /// Check that every letter of `w` belongs to this alphabet.
  void check_word(const Word& w) const;

  bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }

 private:
  std::vector<Symbol> letters_;
  std::map<Symbol, int> index_;
};

/// Join a word into display text (no separator; letters are short tokens).
std::string render_word(const Word& w);

/// All words over `a` of length at most `max_len`, in length-then-
/// lexicographic (alphabet order) order. The empty word comes first.
std::vector<Word> all_words(const Alphabet& a, int max_len);

}  // namespace otx
