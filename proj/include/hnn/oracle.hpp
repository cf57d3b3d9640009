#pragma once

// Pluggable word-problem deciders for base groups. Exact oracles never
// answer Unknown; the bounded-depth oracle is a semi-decider whose Trivial
// verdicts carry a product-of-conjugates certificate re-checkable by free
// reduction alone.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hnn/word.hpp"

namespace hnn {

enum class Verdict { Trivial, Nontrivial, Unknown };

std::string to_string(Verdict v);

struct OracleResult {
  Verdict value = Verdict::Unknown;
  std::string evidence;
};

class BaseOracle {
 public:
  virtual ~BaseOracle() = default;
  virtual OracleResult is_identity(const Word& w) const = 0;
  virtual bool exact() const = 0;
  virtual const Alphabet& alphabet() const = 0;
  virtual std::string name() const = 0;
};

using OraclePtr = std::shared_ptr<const BaseOracle>;

// Free group: trivial iff the free reduction is empty.
OraclePtr free_oracle(const Alphabet& alphabet);

// Baumslag-Solitar group BS(m,n) = <a,b | b^-1 a^m b = a^n>, decided by
// Britton reduction over the stable letter b.
class BsOracle : public BaseOracle {
 public:
  BsOracle(int m, int n);
  OracleResult is_identity(const Word& w) const override;
  bool exact() const override { return true; }
  const Alphabet& alphabet() const override { return alphabet_; }
  std::string name() const override;

  // Unique pinch-free normal form with right-pushed a-exponents; the
  // element is trivial iff this is empty.
  Word normal_form(const Word& w) const;

 private:
  int m_, n_;
  Alphabet alphabet_;
};

std::shared_ptr<const BsOracle> bs_oracle(int m, int n);

// Grigorchuk's group on {a,c,d}, acting on the rooted binary tree by
// wreath recursion a = swap, b = (a,c), c = (a,d), d = (1,b).
OraclePtr grigorchuk_oracle();

struct SearchBudget {
  int i_max = 3;         // relator iterates phi^0..phi^i_max
  int conj_len = 6;      // max conjugator length per factor
  int max_factors = 4;   // iterative-deepening limit
  long node_budget = 60000;  // counted in generated branches
  int len_cap = 400;     // prune intermediate words longer than this
  int enum_cap = 4;      // exhaustive conjugator enumeration up to here
};

struct ConjugacyFactor {
  Word conjugator;
  int relator_index = 0;
  int iterate = 0;
  int sign = +1;
};

struct NormalClosureCertificate {
  Word target;  // the reduced word the factors multiply to
  std::vector<ConjugacyFactor> factors;

  // Recomputes the product by free reduction only.
  bool recheck(const RelatorSet& relators, const Endomorphism& phi) const;
  std::string str(const RelatorSet& relators, const Endomorphism& phi) const;
};

struct SearchStats {
  long nodes = 0;
  int max_depth = 0;
  bool budget_exhausted = false;
  std::string str() const;
};

// Semi-decider: Trivial iff phi^k(w) is found in N(cup_{i<=i_max} phi^i(R))
// within budget, with a certificate; otherwise Unknown. Never Nontrivial.
class BoundedDepthOracle : public BaseOracle {
 public:
  BoundedDepthOracle(RelatorSet relators, Endomorphism phi, int k,
                     SearchBudget budget = {});
  OracleResult is_identity(const Word& w) const override;
  bool exact() const override { return false; }
  const Alphabet& alphabet() const override { return phi_.alphabet(); }
  std::string name() const override;

  std::variant<NormalClosureCertificate, SearchStats> certify(const Word& w) const;

  const RelatorSet& relators() const { return relators_; }
  const Endomorphism& phi() const { return phi_; }
  const SearchBudget& budget() const { return budget_; }

 private:
  RelatorSet relators_;
  Endomorphism phi_;
  int k_;
  SearchBudget budget_;
};

std::shared_ptr<const BoundedDepthOracle> bounded_depth_oracle(
    RelatorSet relators, Endomorphism phi, int k, SearchBudget budget = {});

// Oracle registry used by the presentation schema: "free", "bs:M,N",
// "grigorchuk", "bounded:K".
OraclePtr make_base_oracle(const std::string& name, const Alphabet& alphabet,
                           const RelatorSet& relators, const Endomorphism& phi);

}  // namespace hnn
