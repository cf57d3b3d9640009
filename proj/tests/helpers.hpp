#pragma once

#include <random>

#include "hnn/presentation.hpp"

namespace hnn::testing {

// <t,a | t^-1 a t = a^2>, free base
inline HnnPresentation bs12() {
  HnnPresentation::Config cfg;
  cfg.alphabet = Alphabet::from_string("a");
  cfg.phi = Endomorphism::parse(cfg.alphabet, {{'a', "aa"}});
  cfg.depth_bound = 0;
  return HnnPresentation::make(cfg);
}

// <t,a,b | t^-1 a t = a^2, t^-1 b t = b>, free base of rank 2
inline HnnPresentation free_ab() {
  HnnPresentation::Config cfg;
  cfg.alphabet = Alphabet::from_string("ab");
  cfg.phi = Endomorphism::parse(cfg.alphabet, {{'a', "aa"}, {'b', "b"}});
  cfg.depth_bound = 0;
  return HnnPresentation::make(cfg);
}

// <t,a,b | b^-1 a^2 b = a^3, t^-1 a t = a^2, t^-1 b t = b>, unbounded depth
inline HnnPresentation bs23(bool with_section = true) {
  HnnPresentation::Config cfg;
  cfg.alphabet = Alphabet::from_string("ab");
  cfg.relators = RelatorSet({Word::parse("BaabAAA")});
  cfg.phi = Endomorphism::parse(cfg.alphabet, {{'a', "aa"}, {'b', "b"}});
  cfg.oracle_name = "bs:2,3";
  if (with_section)
    cfg.phi_section =
        std::map<char, Word>{{'a', Word::parse("BabA")}, {'b', Word::parse("b")}};
  return HnnPresentation::make(cfg);
}

// Grigorchuk's ascending HNN extension
inline HnnPresentation grig() {
  HnnPresentation::Config cfg;
  cfg.alphabet = Alphabet::from_string("acd");
  cfg.relators = RelatorSet({Word::parse("aa"), Word::parse("adadadad"),
                             Word::parse("adacacadacacadacacadacac")});
  cfg.phi =
      Endomorphism::parse(cfg.alphabet, {{'a', "aca"}, {'c', "cd"}, {'d', "c"}});
  cfg.oracle_name = "grigorchuk";
  return HnnPresentation::make(cfg);
}

inline Word random_word(std::mt19937_64& rng, const std::vector<char>& gens,
                        int max_len) {
  std::uniform_int_distribution<int> len_d(0, max_len);
  std::uniform_int_distribution<std::size_t> g_d(0, gens.size() - 1);
  std::uniform_int_distribution<int> s_d(0, 1);
  Path ls;
  int len = len_d(rng);
  for (int i = 0; i < len; ++i)
    ls.push_back(Letter(gens[g_d(rng)], s_d(rng) ? +1 : -1));
  return Word::from_letters(ls);
}

}  // namespace hnn::testing
