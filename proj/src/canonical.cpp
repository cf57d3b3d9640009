#include "hnn/canonical.hpp"

#include <algorithm>

namespace hnn {

long level(const Word& w, const HnnPresentation& p) {
  return exponent_sum(w, p.stable());
}

Word CanonicalForm::as_word(const HnnPresentation& p) const {
  return p.stable_power(n).concat(middle).concat(p.stable_power(-m));
}

CanonicalForm canonical_form(const Word& w, const HnnPresentation& p) {
  const char t = p.stable();
  CanonicalForm cf;

  // Sweep left to right keeping the invariant: prefix = t^n * middle * t^-m.
  // Base letters crossing t^-m are conjugated down by phi^m; a stable letter
  // against m == 0 conjugates the whole middle down one level.
  for (const Letter& l : w.letters()) {
    if (l.gen != t) {
      Word img = p.phi().apply(Word::from_letters({l}), static_cast<int>(cf.m));
      cf.middle = cf.middle.concat(img);
      continue;
    }
    if (l.sign < 0) {
      ++cf.m;
    } else if (cf.m > 0) {
      --cf.m;
    } else {
      ++cf.n;
      cf.middle = p.phi().apply(cf.middle);
    }
  }

  // Britton pinches: while both rails are present and the middle lies in
  // the image of the induced endomorphism, strip one level.
  while (cf.n > 0 && cf.m > 0) {
    PinchOutcome po = p.pinch(cf.middle);
    if (po.in_image == Tri::True) {
      cf.middle = po.preimage;
      --cf.n;
      --cf.m;
    } else {
      if (po.in_image == Tri::Unknown) cf.exact = false;
      break;
    }
  }
  return cf;
}

Tri equal_in_G(const Word& u, const Word& v, const HnnPresentation& p) {
  CanonicalForm cf = canonical_form(u.concat(v.inverse()), p);
  if (cf.level() != 0) return Tri::False;
  if (cf.n == 0 && cf.m == 0) {
    OracleResult r = p.oracle()->is_identity(cf.middle);
    if (r.value == Verdict::Trivial) return Tri::True;
    // Nontrivial in A_0 transfers to A only when the oracle really decides A.
    if (r.value == Verdict::Nontrivial)
      return p.oracle_matches_base() ? Tri::False : Tri::Unknown;
    return Tri::Unknown;
  }
  // fully pinched with stable rails left: Britton's lemma gives nontrivial
  if (cf.exact) return Tri::False;
  return Tri::Unknown;
}

Tri in_coset_tNA(const Word& v, long N, const HnnPresentation& p) {
  long lv = level(v, p);
  Word x = p.stable_power(-N).concat(v).concat(p.stable_power(N - lv));
  CanonicalForm cf = canonical_form(x, p);
  if (cf.n == 0 && cf.m == 0) return Tri::True;
  if (cf.exact) return Tri::False;
  return Tri::Unknown;
}

Envelope envelope(const std::vector<Word>& c, const HnnPresentation& p) {
  Envelope env;
  if (c.empty()) return env;
  std::vector<CanonicalForm> forms;
  for (const Word& v : c) {
    CanonicalForm cf = canonical_form(v, p);
    if (!cf.exact)
      throw UnknownOutcome("envelope needs exact canonical forms; " + v.str() +
                           " has an undecided pinch");
    forms.push_back(cf);
    env.N = std::max(env.N, cf.n);
  }
  env.verified = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    long mv = env.N - forms[i].n + forms[i].m;
    env.table.emplace_back(c[i], mv);
    env.M = std::max(env.M, mv);
    if (in_coset_tNA(c[i].concat(p.stable_power(mv)), env.N, p) != Tri::True)
      env.verified = false;
  }
  return env;
}

}  // namespace hnn
