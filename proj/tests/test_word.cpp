#include "doctest.h"
#include "helpers.hpp"
#include "hnn/word.hpp"

using namespace hnn;

TEST_CASE("free reduction") {
  CHECK(Word::parse("aA").empty());
  CHECK(Word::parse("abBA").empty());
  CHECK(Word::parse("baB").str() == "baB");
  CHECK(Word::parse("BabaBAbA").str() == "BabaBAbA");
  // idempotent
  for (auto s : {"aAa", "abcCBA", "xyzZYx"}) {
    Word w = Word::parse(s);
    CHECK(Word::parse(w.str()) == w);
  }
}

TEST_CASE("parse rejects unknown tokens") {
  CHECK_THROWS_AS(Word::parse("a1b"), InputError);
  CHECK_THROWS_AS(Word::parse("a b"), InputError);
  Alphabet ab = Alphabet::from_string("ab");
  CHECK_THROWS_AS(Word::parse("axb", ab), InputError);
  CHECK_NOTHROW(Word::parse("aTb", ab, 't'));
  CHECK_THROWS_AS(Word::parse("aTb", ab), InputError);
}

TEST_CASE("alphabet invariants") {
  CHECK_THROWS_AS(Alphabet::from_string(""), InputError);
  CHECK_THROWS_AS(Alphabet::from_string("aa"), InputError);
  CHECK_THROWS_AS(Alphabet(std::vector<char>{'A'}), InputError);
}

TEST_CASE("endomorphism application") {
  Alphabet acd = Alphabet::from_string("acd");
  Endomorphism sigma =
      Endomorphism::parse(acd, {{'a', "aca"}, {'c', "cd"}, {'d', "c"}});
  CHECK(sigma.apply(Word::parse("a")).str() == "aca");
  CHECK(sigma.apply(Word::parse("d"), 2).str() == "cd");
  CHECK(sigma.apply(Word::parse("a"), 2).str() == "acacdaca");
  CHECK(sigma.apply(Word::parse("acd"), 0).str() == "acd");

  Alphabet ab = Alphabet::from_string("ab");
  Endomorphism phi = Endomorphism::parse(ab, {{'a', "aa"}, {'b', "b"}});
  // [b^-1 a b, a] maps to [b^-1 a^2 b, a^2]
  CHECK(phi.apply(Word::parse("BabaBAbA")).str() == "BaabaaBAAbAA");
}

TEST_CASE("endomorphism validation") {
  Alphabet ab = Alphabet::from_string("ab");
  CHECK_THROWS_AS(Endomorphism::parse(ab, {{'a', "aa"}}), InputError);
  CHECK_THROWS_AS(Endomorphism::parse(ab, {{'a', "ax"}, {'b', "b"}}), InputError);
  // empty images are allowed
  CHECK_NOTHROW(Endomorphism::parse(ab, {{'a', ""}, {'b', "b"}}));
}

TEST_CASE("endomorphism laws on random words") {
  std::mt19937_64 rng(42);
  Alphabet ab = Alphabet::from_string("ab");
  Endomorphism phi = Endomorphism::parse(ab, {{'a', "aba"}, {'b', "BA"}});
  for (int trial = 0; trial < 200; ++trial) {
    Word u = testing::random_word(rng, ab.generators(), 8);
    Word v = testing::random_word(rng, ab.generators(), 8);
    // homomorphism law
    CHECK(phi.apply(u.concat(v)) == phi.apply(u).concat(phi.apply(v)));
    // composition
    CHECK(phi.apply(u, 3) == phi.apply(phi.apply(u, 2), 1));
    // inverses
    CHECK(phi.apply(u.inverse(), 2) == phi.apply(u, 2).inverse());
  }
}

TEST_CASE("relator sets cyclically reduce and deduplicate") {
  RelatorSet r({Word::parse("abA"), Word::parse("b"), Word::parse("aA")});
  REQUIRE(r.size() == 1);
  CHECK(r.relators()[0].str() == "b");
}

TEST_CASE("iterate_relators") {
  Alphabet acd = Alphabet::from_string("acd");
  Endomorphism sigma =
      Endomorphism::parse(acd, {{'a', "aca"}, {'c', "cd"}, {'d', "c"}});
  CHECK(iterate_relators(RelatorSet(), sigma, 3).empty());

  auto got = iterate_relators(RelatorSet({Word::parse("aa")}), sigma, 1);
  REQUIRE(got.size() == 2);
  CHECK(got[0].str() == "aa");
  CHECK(got[1].str() == "acaaca");

  Alphabet ab = Alphabet::from_string("ab");
  Endomorphism phi = Endomorphism::parse(ab, {{'a', "aa"}, {'b', "b"}});
  auto bs = iterate_relators(RelatorSet({Word::parse("BaabAAA")}), phi, 1);
  REQUIRE(bs.size() == 2);
  CHECK(bs[0].str() == "BaabAAA");
  CHECK(bs[1].str() == "BaaaabAAAAAA");
}

TEST_CASE("word order and helpers") {
  CHECK(Word::parse("ab") < Word::parse("aab"));
  auto [conj, core] = Word::parse("abcBA").cyclic_split();
  CHECK(conj.str() == "ab");
  CHECK(core.str() == "c");
  CHECK(exponent_sum(Word::parse("taTTat"), 't') == 0);
  CHECK(exponent_sum(Word::parse("tta"), 't') == 2);
  CHECK(exponent_sum(Word::parse("Tab"), 't') == -1);
}
