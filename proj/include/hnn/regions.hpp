#pragma once

// Constructive vertex classification of the Cayley 2-complex relative to
// the plug D(N,M) = t^N A {1, t^-1, ..., t^-M}: membership in D, the
// special complement component containing t^{N+1}, or some other
// component — decided purely from the level and one coset test.

#include "hnn/canonical.hpp"

namespace hnn {

enum class RegionLabel { InD, SpecialK0, OtherComponent, Unknown };
std::string to_string(RegionLabel label);

struct Classification {
  RegionLabel label = RegionLabel::Unknown;
  long level = 0;
  std::pair<long, long> window;  // [N - M, N]
  Tri coset = Tri::Unknown;      // v t^{N - P(v)} in t^N A ?
};

Tri in_D(const Word& v, long n, long m, const HnnPresentation& p);

Classification classify(const Word& v, long n, long m, const HnnPresentation& p);

// Checks the climb property at a SpecialK0 vertex: v t^k u stays outside
// D(N,M) for 0 <= k <= n_max and every base suffix u of length <= suffix_len.
// Contract error if v is not classified SpecialK0.
bool check_up_lemma(const Word& v, long n, long m, int n_max,
                    const HnnPresentation& p, int suffix_len = 3);

// If wA is k levels directly below vA (w t^k in vA), returns k; the only
// candidate is level(v) - level(w), capped by `cap`.
std::optional<long> coset_geometry(const Word& v, const Word& w,
                                   const HnnPresentation& p, long cap = 64);

}  // namespace hnn
