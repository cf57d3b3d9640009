#include "hnn/word.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace hnn {

Letter Letter::from_char(char c) {
  if (c >= 'a' && c <= 'z') return Letter(c, +1);
  if (c >= 'A' && c <= 'Z') return Letter(static_cast<char>(c - 'A' + 'a'), -1);
  throw InputError(std::string("unknown generator token '") + c + "'");
}

Alphabet::Alphabet(std::vector<char> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw InputError("alphabet must be nonempty");
  std::set<char> seen;
  for (char g : gens_) {
    if (g < 'a' || g > 'z')
      throw InputError(std::string("generator '") + g + "' is not a lowercase letter");
    if (!seen.insert(g).second)
      throw InputError(std::string("duplicate generator '") + g + "'");
  }
}

Alphabet Alphabet::from_string(std::string_view gens) {
  return Alphabet(std::vector<char>(gens.begin(), gens.end()));
}

bool Alphabet::contains(char g) const {
  return std::find(gens_.begin(), gens_.end(), g) != gens_.end();
}

namespace {

void push_reduced(Path& out, const Letter& l) {
  if (!out.empty() && out.back() == l.inverse())
    out.pop_back();
  else
    out.push_back(l);
}

}  // namespace

Word Word::parse(std::string_view s) {
  Path raw;
  raw.reserve(s.size());
  for (char c : s) raw.push_back(Letter::from_char(c));
  return from_letters(raw);
}

Word Word::parse(std::string_view s, const Alphabet& alphabet,
                 std::optional<char> stable) {
  Word w = parse(s);
  for (const Letter& l : w.letters()) {
    if (alphabet.contains(l.gen)) continue;
    if (stable && l.gen == *stable) continue;
    throw InputError(std::string("unknown generator token '") + l.gen + "'");
  }
  return w;
}

Word Word::from_letters(const Path& letters) {
  Word w;
  w.letters_.reserve(letters.size());
  for (const Letter& l : letters) push_reduced(w.letters_, l);
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(it->inverse());
  return w;  // reversal of a reduced word is reduced
}

Word Word::concat(const Word& rhs) const {
  Word w = *this;
  for (const Letter& l : rhs.letters_) push_reduced(w.letters_, l);
  return w;
}

Word Word::conjugate(const Word& by) const {
  return by.concat(*this).concat(by.inverse());
}

Word Word::subword(std::size_t from, std::size_t len) const {
  Word w;
  for (std::size_t i = from; i < from + len && i < letters_.size(); ++i)
    w.letters_.push_back(letters_[i]);
  return w;  // contiguous piece of a reduced word is reduced
}

std::pair<Word, Word> Word::cyclic_split() const {
  std::size_t lo = 0, hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == letters_[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  Word conj = subword(0, lo);
  Word core = subword(lo, hi - lo);
  return {conj, core};
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (const Letter& l : letters_) s.push_back(l.to_char());
  return s;
}

Word operator*(const Word& a, const Word& b) { return a.concat(b); }

long exponent_sum(const Word& w, char gen) {
  long sum = 0;
  for (const Letter& l : w.letters())
    if (l.gen == gen) sum += l.sign;
  return sum;
}

Endomorphism::Endomorphism(Alphabet alphabet, std::map<char, Word> table)
    : alphabet_(std::move(alphabet)), table_(std::move(table)) {
  for (char g : alphabet_.generators())
    if (!table_.count(g))
      throw InputError(std::string("endomorphism has no image for '") + g + "'");
  for (const auto& [g, w] : table_) {
    if (!alphabet_.contains(g))
      throw InputError(std::string("endomorphism image for non-generator '") + g + "'");
    for (const Letter& l : w.letters())
      if (!alphabet_.contains(l.gen))
        throw InputError(std::string("image of '") + g + "' leaves the alphabet");
  }
}

Endomorphism Endomorphism::parse(const Alphabet& alphabet,
                                 const std::map<char, std::string>& table) {
  std::map<char, Word> t;
  for (const auto& [g, s] : table) t.emplace(g, Word::parse(s, alphabet));
  return Endomorphism(alphabet, std::move(t));
}

Endomorphism Endomorphism::identity(const Alphabet& alphabet) {
  std::map<char, Word> t;
  for (char g : alphabet.generators()) t.emplace(g, Word::parse(std::string(1, g)));
  return Endomorphism(alphabet, std::move(t));
}

const Word& Endomorphism::image(char gen) const {
  auto it = table_.find(gen);
  if (it == table_.end())
    throw InputError(std::string("no image for generator '") + gen + "'");
  return it->second;
}

Word Endomorphism::apply(const Word& w, int k) const {
  if (k < 0) throw ContractError("apply_endo requires k >= 0");
  Word cur = w;
  for (int i = 0; i < k; ++i) {
    Path out;
    for (const Letter& l : cur.letters()) {
      const Word& img = image(l.gen);
      if (l.sign > 0) {
        for (const Letter& m : img.letters()) push_reduced(out, m);
      } else {
        for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it)
          push_reduced(out, it->inverse());
      }
    }
    cur = Word::from_letters(out);
  }
  return cur;
}

RelatorSet::RelatorSet(const std::vector<Word>& relators) {
  std::set<Word> seen;
  for (const Word& r : relators) {
    Word c = r.cyclic_reduce();
    if (c.empty()) continue;
    if (seen.insert(c).second) relators_.push_back(c);
  }
  std::sort(relators_.begin(), relators_.end());
}

std::vector<Word> iterate_relators(const RelatorSet& relators,
                                   const Endomorphism& phi, int k) {
  if (k < 0) throw ContractError("iterate_relators requires k >= 0");
  std::set<Word> seen;
  std::vector<Word> out;
  for (const Word& r : relators.relators()) {
    Word cur = r;
    for (int i = 0; i <= k; ++i) {
      Word c = cur.cyclic_reduce();
      if (!c.empty() && seen.insert(c).second) out.push_back(c);
      if (i < k) cur = phi.apply(cur);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hnn
