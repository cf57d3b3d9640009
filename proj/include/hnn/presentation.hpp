#pragma once

// The ascending HNN extension object: P = <t, A : R, t^-1 a t = phi(a)>.
// Carries the base oracle binding and the machinery for deciding Britton
// pinches (is a base word in the image of the induced endomorphism, and if
// so, a preimage).

#include <optional>

#include "hnn/oracle.hpp"
#include "hnn/stallings.hpp"
#include "hnn/word.hpp"

namespace hnn {

enum class Tri { False, True, Unknown };
std::string to_string(Tri t);

enum class PinchMode {
  FreeStable,  // relator-free base: exact via stabilized image graphs
  Section,     // verified right inverse of phi supplied: pinch always legal
  BestEffort,  // free-level membership only; misses are Unknown
};

struct PinchOutcome {
  Tri in_image = Tri::Unknown;
  Word preimage;  // valid when in_image == True
};

class HnnPresentation {
 public:
  struct Config {
    Alphabet alphabet;
    char stable = 't';
    RelatorSet relators;
    Endomorphism phi;
    std::string oracle_name = "free";
    std::optional<int> depth_bound;
    // Optional map a -> word u_a with phi(u_a) = a in the base group;
    // verified against the base oracle on construction.
    std::optional<std::map<char, Word>> phi_section;
  };

  static HnnPresentation make(Config cfg);
  static HnnPresentation from_json_text(const std::string& text);
  static HnnPresentation load(const std::string& path);
  std::string to_json_text() const;

  const Alphabet& alphabet() const { return cfg_.alphabet; }
  char stable() const { return cfg_.stable; }
  const RelatorSet& relators() const { return cfg_.relators; }
  const Endomorphism& phi() const { return cfg_.phi; }
  const OraclePtr& oracle() const { return oracle_; }
  const std::string& oracle_name() const { return cfg_.oracle_name; }
  std::optional<int> depth_bound() const { return cfg_.depth_bound; }

  Word parse_base_word(const std::string& s) const;      // letters in A only
  Word parse_word(const std::string& s) const;           // letters in A or t
  Word stable_power(long k) const;                       // t^k

  PinchMode pinch_mode() const { return mode_; }
  // Is w in the image of the induced endomorphism of the base group?
  PinchOutcome pinch(const Word& w) const;

  // Whether the bound oracle decides the word problem of the actual base
  // group A = F(A)/N^inf, not merely of A_0 = <A | R>. True for
  // relator-free bases, and for presentations of declared depth 0 whose
  // commuting square checks out; a Nontrivial verdict only rules out
  // equality in G under this condition.
  bool oracle_matches_base() const;

  // Canonical representative of a base word as an element of the base
  // group; exists exactly when the presentation supports exact equality.
  bool has_exact_base_forms() const;
  Word base_normal_form(const Word& w) const;

  int stable_rank_index() const { return m_hat_; }  // kernel stabilization

  // The commuting-square hypothesis: phi maps every relator to a word the
  // base oracle confirms trivial. Cached after the first call.
  Tri commuting_square() const;

 private:
  HnnPresentation() = default;
  Config cfg_;
  OraclePtr oracle_;
  PinchMode mode_ = PinchMode::BestEffort;
  int m_hat_ = 0;
  std::optional<SubgroupGraph> pinch_graph_;  // phi^{m_hat+1} or phi^1 image
  mutable std::optional<Tri> commute_cache_;
};

}  // namespace hnn
