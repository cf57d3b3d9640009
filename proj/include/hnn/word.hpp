#pragma once

// Free-group words over small named alphabets, and substitution
// endomorphisms of the free group. Words are kept freely reduced at all
// times. String syntax: lowercase is a generator, uppercase its inverse,
// concatenation left to right ("BabA" = b^-1 a b a^-1).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hnn {

// Malformed user input (unknown generator token, bad schema, ...). CLI exit 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A precondition stated by an operation's contract was violated.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// A semi-decision could not reach a verdict within budget. CLI exit 3.
struct UnknownOutcome : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Letter {
  char gen = 0;
  int sign = +1;  // +1 or -1

  Letter() = default;
  Letter(char g, int s) : gen(g), sign(s) {}

  Letter inverse() const { return Letter(gen, -sign); }
  char to_char() const {
    return sign > 0 ? gen : static_cast<char>(gen - 'a' + 'A');
  }
  static Letter from_char(char c);

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter& a, const Letter& b) {
    if (auto c = a.gen <=> b.gen; c != 0) return c;
    return b.sign <=> a.sign;  // positive letter sorts before its inverse
  }
};

// An unreduced letter sequence; used where backtracking paths are meaningful.
using Path = std::vector<Letter>;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<char> generators);
  static Alphabet from_string(std::string_view gens);

  const std::vector<char>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool contains(char g) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<char> gens_;
};

class Word {
 public:
  Word() = default;

  // Parses the uppercase-inverse syntax; throws InputError on a token that
  // is not an ASCII letter, or (with an alphabet) not a known generator.
  static Word parse(std::string_view s);
  static Word parse(std::string_view s, const Alphabet& alphabet,
                    std::optional<char> stable = std::nullopt);

  // Freely reduces an arbitrary letter sequence.
  static Word from_letters(const Path& letters);

  const Path& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word concat(const Word& rhs) const;        // freely reduced product
  Word conjugate(const Word& by) const;      // by * this * by^-1
  Word subword(std::size_t from, std::size_t len) const;

  // Splits w as p * core * p^-1 with core cyclically reduced.
  std::pair<Word, Word> cyclic_split() const;  // {conjugator, core}
  Word cyclic_reduce() const { return cyclic_split().second; }

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    // length-then-lexicographic; a deterministic total order for test output
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    return a.letters_ <=> b.letters_;
  }

 private:
  Path letters_;
};

Word operator*(const Word& a, const Word& b);

// Signed exponent sum of one generator (the level map P uses gen = stable).
long exponent_sum(const Word& w, char gen);

class Endomorphism {
 public:
  Endomorphism() = default;
  Endomorphism(Alphabet alphabet, std::map<char, Word> table);

  // Parses {"a": "aa", "b": "b"} style tables given as strings.
  static Endomorphism parse(const Alphabet& alphabet,
                            const std::map<char, std::string>& table);
  static Endomorphism identity(const Alphabet& alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  const Word& image(char gen) const;
  const std::map<char, Word>& table() const { return table_; }

  // phi^k(w), freely reduced; k = 0 is the identity.
  Word apply(const Word& w, int k = 1) const;

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

 private:
  Alphabet alphabet_;
  std::map<char, Word> table_;
};

class RelatorSet {
 public:
  RelatorSet() = default;
  // Drops empty relators after free+cyclic reduction, deduplicates, sorts.
  explicit RelatorSet(const std::vector<Word>& relators);

  const std::vector<Word>& relators() const { return relators_; }
  bool empty() const { return relators_.empty(); }
  std::size_t size() const { return relators_.size(); }

  friend bool operator==(const RelatorSet&, const RelatorSet&) = default;

 private:
  std::vector<Word> relators_;
};

// {phi^i(r) : r in R, 0 <= i <= k}, each freely and cyclically reduced,
// duplicates removed, deterministically ordered.
std::vector<Word> iterate_relators(const RelatorSet& relators,
                                   const Endomorphism& phi, int k);

}  // namespace hnn
