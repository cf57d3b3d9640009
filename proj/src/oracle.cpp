#include "hnn/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace hnn {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Trivial: return "Trivial";
    case Verdict::Nontrivial: return "Nontrivial";
    default: return "Unknown";
  }
}

// ---------------------------------------------------------------- free

namespace {

class FreeOracle : public BaseOracle {
 public:
  explicit FreeOracle(Alphabet a) : alphabet_(std::move(a)) {}
  OracleResult is_identity(const Word& w) const override {
    if (w.empty()) return {Verdict::Trivial, "freely trivial"};
    return {Verdict::Nontrivial, "freely reduced to " + w.str()};
  }
  bool exact() const override { return true; }
  const Alphabet& alphabet() const override { return alphabet_; }
  std::string name() const override { return "free"; }

 private:
  Alphabet alphabet_;
};

}  // namespace

OraclePtr free_oracle(const Alphabet& alphabet) {
  return std::make_shared<FreeOracle>(alphabet);
}

// ---------------------------------------------------------------- BS(m,n)

BsOracle::BsOracle(int m, int n)
    : m_(m), n_(n), alphabet_(Alphabet::from_string("ab")) {
  if (m < 1 || n < 1) throw InputError("bs_oracle requires m, n >= 1");
}

std::string BsOracle::name() const {
  return "bs:" + std::to_string(m_) + "," + std::to_string(n_);
}

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

Word a_power(long long k) {
  Path p;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i)
    p.push_back(Letter('a', k < 0 ? -1 : +1));
  return Word::from_letters(p);
}

}  // namespace

Word BsOracle::normal_form(const Word& w) const {
  for (const Letter& l : w.letters())
    if (l.gen != 'a' && l.gen != 'b')
      throw InputError(std::string("BS word has unknown generator '") + l.gen + "'");

  // Stack of (a-run, b-sign) syllables with a trailing a-run; a-exponents
  // are pushed to the right past each b, pinches cancel b-pairs.
  std::vector<std::pair<long long, int>> stack;
  long long pending = 0;
  for (const Letter& l : w.letters()) {
    if (l.gen == 'a') {
      pending += l.sign;
      continue;
    }
    const int eps = l.sign;
    const long long modulus = eps > 0 ? m_ : n_;
    const long long multiplier = eps > 0 ? n_ : m_;
    const long long q = floor_div(pending, modulus);
    const long long rho = pending - q * modulus;
    if (rho == 0 && !stack.empty() && stack.back().second == -eps) {
      pending = stack.back().first + q * multiplier;
      stack.pop_back();
    } else {
      stack.emplace_back(rho, eps);
      pending = q * multiplier;
    }
  }

  Word out;
  for (auto& [run, sign] : stack) {
    out = out.concat(a_power(run));
    out = out.concat(Word::from_letters({Letter('b', sign)}));
  }
  return out.concat(a_power(pending));
}

OracleResult BsOracle::is_identity(const Word& w) const {
  Word nf = normal_form(w);
  if (nf.empty()) return {Verdict::Trivial, "Britton reduction reaches the empty word"};
  return {Verdict::Nontrivial, "Britton normal form " + nf.str()};
}

std::shared_ptr<const BsOracle> bs_oracle(int m, int n) {
  return std::make_shared<BsOracle>(m, n);
}

// ---------------------------------------------------------------- Grigorchuk

namespace {

// Letters of the Klein four-group part plus the swap a; a word is stored
// collapsed: no xx pair, no two adjacent K-letters (products folded via
// bc = d, bd = c, cd = b).
class GrigorchukOracle : public BaseOracle {
 public:
  GrigorchukOracle() : alphabet_(Alphabet::from_string("acd")) {}

  OracleResult is_identity(const Word& w) const override {
    for (const Letter& l : w.letters())
      if (l.gen != 'a' && l.gen != 'c' && l.gen != 'd')
        throw InputError(std::string("Grigorchuk word has unknown generator '") +
                         l.gen + "'");
    std::string word;
    for (const Letter& l : w.letters()) word.push_back(l.gen);  // involutions
    std::string trail;
    bool t = trivial(collapse(word), trail, 0);
    if (t) return {Verdict::Trivial, "tree action is the identity"};
    return {Verdict::Nontrivial, trail};
  }
  bool exact() const override { return true; }
  const Alphabet& alphabet() const override { return alphabet_; }
  std::string name() const override { return "grigorchuk"; }

 private:
  Alphabet alphabet_;

  static bool is_k(char c) { return c == 'b' || c == 'c' || c == 'd'; }
  static char k_product(char x, char y) {
    // distinct Klein letters multiply to the third
    return static_cast<char>('b' + 'c' + 'd' - x - y);
  }

  static std::string collapse(const std::string& w) {
    std::string out;
    for (char c : w) {
      char cur = c;
      while (!out.empty()) {
        char top = out.back();
        if (top == cur) {
          out.pop_back();
          cur = 0;
          break;
        }
        if (is_k(top) && is_k(cur)) {
          out.pop_back();
          cur = k_product(top, cur);
          continue;
        }
        break;
      }
      if (cur) out.push_back(cur);
    }
    return out;
  }

  static bool trivial(const std::string& w, std::string& trail, int depth) {
    if (w.empty()) return true;
    if (w.size() == 1) {
      trail = "section at depth " + std::to_string(depth) + " is the generator " + w;
      return false;
    }
    int swaps = static_cast<int>(std::count(w.begin(), w.end(), 'a'));
    if (swaps % 2 != 0) {
      trail = "root permutation at depth " + std::to_string(depth) + " swaps";
      return false;
    }
    // first-level sections; b = (a,c), c = (a,d), d = (1,b)
    std::string s0, s1;
    int alpha = 0;
    for (char c : w) {
      if (c == 'a') {
        alpha ^= 1;
        continue;
      }
      char left = 0, right = 0;
      if (c == 'b') { left = 'a'; right = 'c'; }
      if (c == 'c') { left = 'a'; right = 'd'; }
      if (c == 'd') { left = 0;   right = 'b'; }
      if (alpha) std::swap(left, right);
      if (left) s0.push_back(left);
      if (right) s1.push_back(right);
    }
    return trivial(collapse(s0), trail, depth + 1) &&
           trivial(collapse(s1), trail, depth + 1);
  }
};

}  // namespace

OraclePtr grigorchuk_oracle() { return std::make_shared<GrigorchukOracle>(); }

// ---------------------------------------------------------------- bounded depth

bool NormalClosureCertificate::recheck(const RelatorSet& relators,
                                       const Endomorphism& phi) const {
  Word prod;
  for (const ConjugacyFactor& f : factors) {
    if (f.relator_index < 0 ||
        f.relator_index >= static_cast<int>(relators.size()))
      return false;
    Word s = phi.apply(relators.relators()[f.relator_index], f.iterate);
    if (f.sign < 0) s = s.inverse();
    prod = prod.concat(s.conjugate(f.conjugator));
  }
  return prod == target;
}

std::string NormalClosureCertificate::str(const RelatorSet& relators,
                                          const Endomorphism&) const {
  std::ostringstream os;
  os << (target.empty() ? "1" : target.str()) << " =";
  if (factors.empty()) os << " (empty product)";
  for (const ConjugacyFactor& f : factors) {
    Word r = relators.relators()[f.relator_index];
    std::string u = f.conjugator.empty() ? "1" : f.conjugator.str();
    os << " [" << u << " * phi^" << f.iterate << "(" << r.str() << ")^"
       << (f.sign > 0 ? "+1" : "-1") << " * " << u << "^-1]";
  }
  return os.str();
}

std::string SearchStats::str() const {
  std::ostringstream os;
  os << "nodes=" << nodes << " max_depth=" << max_depth
     << (budget_exhausted ? " budget_exhausted" : " search_space_exhausted");
  return os.str();
}

BoundedDepthOracle::BoundedDepthOracle(RelatorSet relators, Endomorphism phi,
                                       int k, SearchBudget budget)
    : relators_(std::move(relators)), phi_(std::move(phi)), k_(k),
      budget_(budget) {
  if (k < 0) throw ContractError("bounded_depth_oracle requires k >= 0");
}

std::string BoundedDepthOracle::name() const {
  return "bounded:" + std::to_string(k_);
}

namespace {

struct Atom {
  Word word;
  int relator_index;
  int iterate;
};

// Is `w` a cyclic rotation of `x`? Returns the split point: x = x[:j] x[j:]
// with w = x[j:] x[:j].
std::optional<std::size_t> rotation_offset(const Word& w, const Word& x) {
  if (w.size() != x.size()) return std::nullopt;
  for (std::size_t j = 0; j < std::max<std::size_t>(x.size(), 1); ++j) {
    bool ok = true;
    for (std::size_t i = 0; i < x.size() && ok; ++i)
      if (w[i] != x[(j + i) % x.size()]) ok = false;
    if (ok) return j;
  }
  return std::nullopt;
}

class ClosureSearch {
 public:
  ClosureSearch(const RelatorSet& relators, const Endomorphism& phi,
                const SearchBudget& budget)
      : budget_(budget), gens_(phi.alphabet().generators()) {
    for (std::size_t r = 0; r < relators.size(); ++r) {
      Word cur = relators.relators()[r];
      for (int i = 0; i <= budget.i_max; ++i) {
        if (seen_.insert(cur).second)
          atoms_.push_back({cur, static_cast<int>(r), i});
        if (i < budget.i_max) cur = phi.apply(cur);
      }
    }
    enumerate_conjugators();
    // factor inverses u s^-1 u^-1 for the enumerated conjugators are
    // independent of the current word; compute them once
    for (const Word& u : enumerated_)
      for (const Atom& a : atoms_)
        for (int sign : {+1, -1}) {
          Word s = sign > 0 ? a.word : a.word.inverse();
          peels_.push_back(
              {s.inverse().conjugate(u), {u, a.relator_index, a.iterate, sign}});
        }
  }

  std::variant<NormalClosureCertificate, SearchStats> run(const Word& target) {
    for (int depth = 0; depth <= budget_.max_factors; ++depth) {
      stats_.max_depth = depth;
      visited_.clear();
      auto res = dfs(target, depth);
      if (res) {
        NormalClosureCertificate cert;
        cert.target = target;
        cert.factors = std::move(*res);
        return cert;
      }
      if (stats_.budget_exhausted) break;
    }
    return stats_;
  }

 private:
  struct Peel {
    Word word;  // reduced u s^-1 u^-1
    ConjugacyFactor factor;
  };

  SearchBudget budget_;
  std::vector<char> gens_;
  std::vector<Atom> atoms_;
  std::set<Word> seen_;
  std::vector<Word> enumerated_;
  std::vector<Peel> peels_;
  std::set<Word> visited_;
  SearchStats stats_;

  void enumerate_conjugators() {
    int cap = std::min(budget_.conj_len, budget_.enum_cap);
    std::vector<Word> frontier{Word()};
    for (int len = 1; len <= cap; ++len) {
      std::vector<Word> next;
      for (const Word& w : frontier)
        for (char g : gens_)
          for (int s : {+1, -1}) {
            Word ext = w.concat(Word::from_letters({Letter(g, s)}));
            if (ext.size() == w.size() + 1) next.push_back(ext);
          }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      for (const Word& w : next) enumerated_.push_back(w);
      frontier = std::move(next);
    }
  }

  std::optional<std::vector<ConjugacyFactor>> dfs(const Word& cur, int depth) {
    if (++stats_.nodes > budget_.node_budget) {
      stats_.budget_exhausted = true;
      return std::nullopt;
    }
    if (cur.empty()) return std::vector<ConjugacyFactor>{};
    if (depth == 0) return std::nullopt;

    // closed form: cur literally a single conjugated atom; the conjugator
    // is shortened modulo powers of the atom, which fixes u x u^-1
    auto [p, core] = cur.cyclic_split();
    for (const Atom& a : atoms_) {
      for (int sign : {+1, -1}) {
        Word x = sign > 0 ? a.word : a.word.inverse();
        auto j = rotation_offset(core, x);
        if (!j) continue;
        Word u = p.concat(x.subword(0, *j).inverse());
        for (;;) {
          if (Word shorter = u.concat(x); shorter.size() < u.size())
            u = shorter;
          else if (Word shorter2 = u.concat(x.inverse()); shorter2.size() < u.size())
            u = shorter2;
          else
            break;
        }
        if (static_cast<int>(u.size()) > budget_.conj_len) continue;
        std::vector<ConjugacyFactor> out{{u, a.relator_index, a.iterate, sign}};
        return out;
      }
    }
    if (depth == 1) return std::nullopt;

    if (visited_.count(cur)) return std::nullopt;
    visited_.insert(cur);

    // peel a leftmost factor: prefixes of the current word (data-guided)
    // plus the precomputed exhaustive set; best-first on remainder length,
    // insertion order breaking ties, so certificates stay deterministic
    struct Branch {
      Word rest;
      ConjugacyFactor factor;
    };
    std::vector<Branch> branches;
    std::set<Word> rest_seen;
    auto consider = [&](const Word& peel_word, const ConjugacyFactor& f) {
      Word rest = peel_word.concat(cur);
      if (static_cast<int>(rest.size()) > budget_.len_cap) return;
      if (!rest_seen.insert(rest).second) return;
      branches.push_back({std::move(rest), f});
    };
    for (std::size_t len = 0;
         len <= std::min<std::size_t>(cur.size(), budget_.conj_len); ++len) {
      Word u = cur.subword(0, len);
      for (const Atom& a : atoms_)
        for (int sign : {+1, -1}) {
          Word s = sign > 0 ? a.word : a.word.inverse();
          consider(s.inverse().conjugate(u), {u, a.relator_index, a.iterate, sign});
        }
    }
    for (const Peel& pl : peels_) consider(pl.word, pl.factor);

    stats_.nodes += static_cast<long>(branches.size());
    if (stats_.nodes > budget_.node_budget) {
      stats_.budget_exhausted = true;
      return std::nullopt;
    }
    std::stable_sort(branches.begin(), branches.end(),
                     [](const Branch& x, const Branch& y) {
                       return x.rest.size() < y.rest.size();
                     });

    for (const Branch& b : branches) {
      auto sub = dfs(b.rest, depth - 1);
      if (stats_.budget_exhausted) return std::nullopt;
      if (sub) {
        sub->insert(sub->begin(), b.factor);
        return sub;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::variant<NormalClosureCertificate, SearchStats> BoundedDepthOracle::certify(
    const Word& w) const {
  Word target = phi_.apply(w, k_);
  if (relators_.empty()) {
    if (target.empty()) return NormalClosureCertificate{target, {}};
    SearchStats st;
    return st;
  }
  ClosureSearch search(relators_, phi_, budget_);
  return search.run(target);
}

OracleResult BoundedDepthOracle::is_identity(const Word& w) const {
  auto res = certify(w);
  if (auto* cert = std::get_if<NormalClosureCertificate>(&res))
    return {Verdict::Trivial, cert->str(relators_, phi_)};
  return {Verdict::Unknown, std::get<SearchStats>(res).str()};
}

std::shared_ptr<const BoundedDepthOracle> bounded_depth_oracle(
    RelatorSet relators, Endomorphism phi, int k, SearchBudget budget) {
  return std::make_shared<BoundedDepthOracle>(std::move(relators), std::move(phi),
                                              k, budget);
}

// ---------------------------------------------------------------- registry

OraclePtr make_base_oracle(const std::string& name, const Alphabet& alphabet,
                           const RelatorSet& relators, const Endomorphism& phi) {
  if (name == "free") return free_oracle(alphabet);
  if (name == "grigorchuk") {
    if (!(alphabet == Alphabet::from_string("acd")))
      throw InputError("grigorchuk oracle requires alphabet {a,c,d}");
    return grigorchuk_oracle();
  }
  if (name.rfind("bs:", 0) == 0) {
    auto comma = name.find(',');
    if (comma == std::string::npos) throw InputError("oracle name: expected bs:M,N");
    int m = std::stoi(name.substr(3, comma - 3));
    int n = std::stoi(name.substr(comma + 1));
    if (!(alphabet == Alphabet::from_string("ab")))
      throw InputError("bs oracle requires alphabet {a,b}");
    return bs_oracle(m, n);
  }
  if (name.rfind("bounded:", 0) == 0) {
    int k = std::stoi(name.substr(8));
    return bounded_depth_oracle(relators, phi, k);
  }
  throw InputError("unknown base oracle '" + name + "'");
}

}  // namespace hnn
