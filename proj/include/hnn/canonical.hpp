#pragma once

// Britton canonical forms t^n w t^-m, the level map, equality in G, and
// the coset/envelope computations. Exact forms are fully pinched; a
// best-effort flag records that some pinch query was undecidable.

#include "hnn/presentation.hpp"

namespace hnn {

// Signed exponent sum of the stable letter.
long level(const Word& w, const HnnPresentation& p);

struct CanonicalForm {
  long n = 0;
  long m = 0;
  Word middle;       // word over the base alphabet
  bool exact = true; // every pinch query during reduction was decided

  long level() const { return n - m; }
  Word as_word(const HnnPresentation& p) const;  // t^n middle t^-m

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const Word& w, const HnnPresentation& p);

Tri equal_in_G(const Word& u, const Word& v, const HnnPresentation& p);

// Does t^-N v t^(N - level(v)) lie in the base group A?
Tri in_coset_tNA(const Word& v, long N, const HnnPresentation& p);

struct Envelope {
  long N = 0;
  long M = 0;
  std::vector<std::pair<Word, long>> table;  // v -> M(v, C)
  bool verified = false;  // every v t^{M(v,C)} landed in t^N A
};

// N(C) = max n(v), M(v,C) = N - n(v) + m(v); throws UnknownOutcome when a
// member of C has no exact canonical form.
Envelope envelope(const std::vector<Word>& c, const HnnPresentation& p);

}  // namespace hnn
