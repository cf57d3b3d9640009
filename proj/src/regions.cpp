#include "hnn/regions.hpp"

namespace hnn {

std::string to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::InD: return "InD";
    case RegionLabel::SpecialK0: return "SpecialK0";
    case RegionLabel::OtherComponent: return "OtherComponent";
    default: return "Unknown";
  }
}

Tri in_D(const Word& v, long n, long m, const HnnPresentation& p) {
  long lv = level(v, p);
  if (lv > n || lv < n - m) return Tri::False;
  return in_coset_tNA(v, n, p);
}

Classification classify(const Word& v, long n, long m, const HnnPresentation& p) {
  Classification c;
  c.level = level(v, p);
  c.window = {n - m, n};
  bool in_window = c.level >= n - m && c.level <= n;
  if (c.level > n) {
    // above the window the coset test is irrelevant: the t-ray from v
    // never meets D, so v sits in the special component
    c.label = RegionLabel::SpecialK0;
    return c;
  }
  c.coset = in_coset_tNA(v, n, p);
  if (c.coset == Tri::Unknown) {
    c.label = RegionLabel::Unknown;
    return c;
  }
  if (in_window) {
    c.label = c.coset == Tri::True ? RegionLabel::InD : RegionLabel::SpecialK0;
  } else {
    // below the window
    c.label = c.coset == Tri::True ? RegionLabel::OtherComponent
                                   : RegionLabel::SpecialK0;
  }
  return c;
}

bool check_up_lemma(const Word& v, long n, long m, int n_max,
                    const HnnPresentation& p, int suffix_len) {
  if (classify(v, n, m, p).label != RegionLabel::SpecialK0)
    throw ContractError("check_up_lemma requires a SpecialK0-classified vertex");

  // all freely reduced base words of length <= suffix_len, including empty
  std::vector<Word> suffixes{Word()};
  std::size_t lo = 0;
  for (int len = 1; len <= suffix_len; ++len) {
    std::size_t hi = suffixes.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (char g : p.alphabet().generators())
        for (int s : {+1, -1}) {
          Word ext = suffixes[i].concat(Word::from_letters({Letter(g, s)}));
          if (ext.size() == suffixes[i].size() + 1) suffixes.push_back(ext);
        }
    lo = hi;
  }

  for (int k = 0; k <= n_max; ++k) {
    Word vk = v.concat(p.stable_power(k));
    for (const Word& u : suffixes)
      if (in_D(vk.concat(u), n, m, p) != Tri::False) return false;
  }
  return true;
}

std::optional<long> coset_geometry(const Word& v, const Word& w,
                                   const HnnPresentation& p, long cap) {
  long k = level(v, p) - level(w, p);
  if (k < 0 || k > cap) return std::nullopt;
  // w t^k in vA  <=>  t^{-lv} v^-1 w t^k t^{lv - lv}... directly: v^-1 w t^k in A
  CanonicalForm cf = canonical_form(v.inverse().concat(w).concat(p.stable_power(k)), p);
  if (cf.n == 0 && cf.m == 0) return k;
  return std::nullopt;
}

}  // namespace hnn
