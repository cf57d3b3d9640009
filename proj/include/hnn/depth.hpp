#pragma once

// The depth chain N_i = phi^{-i}(N_0): witness verification for elements
// of N_n - N_{n-1}, sampled confirmation of the chain relations, and
// exhaustive scanning for witnesses at small word lengths.

#include "hnn/presentation.hpp"

namespace hnn {

struct DepthWitness {
  Word w;
  int n = 1;
  OracleResult nontrivial_leg;  // verdict on phi^{n-1}(w)
  OracleResult trivial_leg;     // verdict on phi^{n}(w)
};

struct WitnessCheck {
  enum class Status { Accepted, Rejected, Indeterminate };
  Status status = Status::Indeterminate;
  std::string reason;
  std::optional<DepthWitness> witness;
};

// Accepts iff oracle(phi^{n-1}(w)) = Nontrivial and oracle(phi^n(w)) =
// Trivial. The commuting-square hypothesis (phi maps relators to base-
// trivial words) is checked once per presentation; failure throws
// InputError. The Nontrivial leg requires an exact oracle.
WitnessCheck depth_witness_check(const Word& w, int n, const HnnPresentation& p);

struct ProbeEntry {
  Word w;
  bool confirmed = false;
  std::string evidence;
};

struct ProbeReport {
  int samples = 0;
  int confirmed = 0;
  int unknown = 0;
  std::vector<ProbeEntry> entries;
};

// Builds random members of N_0 as explicit products of conjugates of
// relator iterates, then asks the bounded-depth oracle to certify that
// their phi-images land in N_0 again. Reports confirmations and Unknowns;
// a refutation is impossible by construction.
ProbeReport chain_inclusion_probe(const HnnPresentation& p, int samples,
                                  const SearchBudget& budget = {},
                                  unsigned long seed = 0x5eed);

// Enumerates base words of length <= len_max in (length, lex) order and
// reports every accepted witness with its least level n <= n_max.
std::vector<DepthWitness> depth_scan(const HnnPresentation& p, int len_max,
                                     int n_max);

}  // namespace hnn
