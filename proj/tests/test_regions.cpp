#include "doctest.h"
#include "helpers.hpp"
#include "hnn/ball.hpp"
#include "hnn/regions.hpp"

using namespace hnn;
using hnn::testing::bs12;

TEST_CASE("in_D fixtures") {
  auto p = bs12();
  CHECK(in_D(p.parse_word("T"), 0, 1, p) == Tri::True);
  CHECK(in_D(p.parse_word("t"), 0, 0, p) == Tri::False);  // level above window
  CHECK(in_D(p.parse_word("aT"), 0, 1, p) == Tri::True);
  CHECK(in_D(p.parse_word("aT"), 0, 0, p) == Tri::False);
}

TEST_CASE("classification fixtures") {
  auto p = bs12();
  auto c1 = classify(p.parse_word("t"), 0, 0, p);
  CHECK(c1.label == RegionLabel::SpecialK0);
  CHECK(c1.level == 1);
  CHECK(c1.coset == Tri::Unknown);  // printed as n/a: the test is irrelevant

  auto c2 = classify(p.parse_word("aT"), 0, 0, p);
  CHECK(c2.label == RegionLabel::OtherComponent);
  CHECK(c2.level == -1);
  CHECK(c2.coset == Tri::True);

  auto c3 = classify(p.parse_word("taTT"), 0, 0, p);
  CHECK(c3.label == RegionLabel::SpecialK0);
  CHECK(c3.level == -1);
  CHECK(c3.coset == Tri::False);

  CHECK(classify(p.parse_word("T"), 0, 1, p).label == RegionLabel::InD);
  CHECK(classify(Word(), 0, 0, p).label == RegionLabel::InD);
}

TEST_CASE("check_up_lemma") {
  auto p = bs12();
  CHECK(check_up_lemma(p.parse_word("t"), 0, 0, 4, p));
  CHECK(check_up_lemma(p.parse_word("taTT"), 0, 0, 3, p));
  CHECK_THROWS_AS(check_up_lemma(p.parse_word("aT"), 0, 0, 3, p), ContractError);
}

TEST_CASE("coset geometry") {
  auto p = bs12();
  auto g1 = coset_geometry(Word(), p.parse_word("T"), p);
  REQUIRE(g1);
  CHECK(*g1 == 1);
  CHECK_FALSE(coset_geometry(Word(), p.parse_word("taTT"), p));
  auto g3 = coset_geometry(p.parse_word("a"), p.parse_word("a"), p);
  REQUIRE(g3);
  CHECK(*g3 == 0);
  // negative level difference has no candidate
  CHECK_FALSE(coset_geometry(p.parse_word("T"), Word(), p));
}

TEST_CASE("classification is constant on base cosets") {
  auto p = bs12();
  std::mt19937_64 rng(5);
  std::vector<Word> vs = {p.parse_word("t"),    p.parse_word("aT"),
                          p.parse_word("taTT"), p.parse_word("TTa"),
                          p.parse_word("tta"),  Word()};
  for (const Word& v : vs)
    for (long n : {0L, 1L})
      for (long m : {0L, 1L}) {
        RegionLabel expect = classify(v, n, m, p).label;
        for (int trial = 0; trial < 20; ++trial) {
          Word u = testing::random_word(rng, {'a'}, 4);
          CHECK(classify(v.concat(u), n, m, p).label == expect);
        }
      }
}

TEST_CASE("classification is t^N-equivariant") {
  auto p = bs12();
  Ball b = Ball::build(p, 4);
  for (long n : {1L, 2L})
    for (long m : {0L, 1L})
      for (const BallVertex& v : b.vertices()) {
        Word x = v.form.as_word(p);
        CHECK(classify(p.stable_power(n).concat(x), n, m, p).label ==
              classify(x, 0, m, p).label);
      }
}

TEST_CASE("coset fingerprints separate the non-special components") {
  auto p = bs12();
  const long N = 0, M = 1;
  const long top = N - M - 1;  // highest level inside a non-special component

  // the top-coset fingerprint: two vertices share a component iff their
  // climbs to the top level land in the same base coset
  auto same_fp_at = [&](const Word& u, const Word& v, long top_level) {
    Word x = u.concat(p.stable_power(top_level - level(u, p)));
    Word y = v.concat(p.stable_power(top_level - level(v, p)));
    CanonicalForm cf = canonical_form(x.inverse().concat(y), p);
    return cf.n == 0 && cf.m == 0;
  };
  auto same_fingerprint = [&](const Word& u, const Word& v) {
    return same_fp_at(u, v, top);
  };

  Ball b = Ball::build(p, 6);
  std::vector<bool> removed(b.vertices().size(), false);
  std::vector<bool> other(b.vertices().size(), false);
  for (std::size_t i = 0; i < b.vertices().size(); ++i) {
    auto label = classify(b.vertices()[i].form.as_word(p), N, M, p).label;
    removed[i] = label == RegionLabel::InD;
    other[i] = label == RegionLabel::OtherComponent;
  }
  auto comp = components_minus(b, removed);

  // connectivity inside the truncated ball implies equal fingerprints
  std::vector<int> reps;
  for (std::size_t i = 0; i < b.vertices().size(); ++i) {
    if (!other[i] || b.vertices()[i].dist > 4) continue;
    reps.push_back(static_cast<int>(i));
  }
  REQUIRE(reps.size() > 3);
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t c = a + 1; c < reps.size(); ++c) {
      Word u = b.vertices()[reps[a]].form.as_word(p);
      Word v = b.vertices()[reps[c]].form.as_word(p);
      if (comp[reps[a]] == comp[reps[c]]) CHECK(same_fingerprint(u, v));
    }

  // a concrete separated pair at (0,0): aT a-steps to a^3 T (a t^-1 a =
  // a^3 t^-1) but never to a^2 T
  Word u = p.parse_word("aT");
  CHECK(same_fp_at(u, p.parse_word("aaaT"), -1));
  CHECK_FALSE(same_fp_at(u, p.parse_word("aaT"), -1));
  std::vector<bool> removed0(b.vertices().size(), false);
  for (std::size_t i = 0; i < b.vertices().size(); ++i)
    removed0[i] =
        classify(b.vertices()[i].form.as_word(p), 0, 0, p).label ==
        RegionLabel::InD;
  auto comp0 = components_minus(b, removed0);
  auto cu = b.find(u);
  auto c3 = b.find(p.parse_word("aaaT"));
  auto c2 = b.find(p.parse_word("aaT"));
  REQUIRE((cu && c3 && c2));
  CHECK(comp0[*cu] == comp0[*c3]);
  CHECK(comp0[*cu] != comp0[*c2]);
}
