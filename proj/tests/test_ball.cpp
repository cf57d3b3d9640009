#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "hnn/ball.hpp"

using namespace hnn;
using hnn::testing::bs12;
using hnn::testing::bs23;

TEST_CASE("small balls") {
  auto p = bs12();
  Ball b0 = Ball::build(p, 0);
  CHECK(b0.vertices().size() == 1);
  CHECK(b0.edges().empty());

  Ball b1 = Ball::build(p, 1);
  REQUIRE(b1.vertices().size() == 5);
  std::multiset<long> levels;
  for (const BallVertex& v : b1.vertices()) levels.insert(v.level);
  CHECK(levels == std::multiset<long>{0, 0, 0, 1, -1});
}

TEST_CASE("radius-3 vertex count against an independent BFS") {
  auto p = bs12();
  Ball b = Ball::build(p, 3);

  // a second breadth first search that only uses equal_in_G
  std::vector<Word> reps{Word()};
  std::vector<Word> frontier{Word()};
  std::vector<char> letters{'a', 't'};
  for (int d = 0; d < 3; ++d) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (char g : letters)
        for (int s : {+1, -1}) {
          Word cand = w.concat(Word::from_letters({Letter(g, s)}));
          bool fresh = true;
          for (const Word& r : reps)
            if (equal_in_G(cand, r, p) == Tri::True) {
              fresh = false;
              break;
            }
          if (fresh) {
            reps.push_back(cand);
            next.push_back(cand);
          }
        }
    frontier = std::move(next);
  }
  CHECK(b.vertices().size() == reps.size());
  CHECK(b.vertices().size() == 43);  // frozen from the dual run
}

TEST_CASE("edges are label-deterministic and level-compatible") {
  auto p = bs12();
  Ball b = Ball::build(p, 4);
  std::set<std::pair<int, char>> seen;
  for (const BallEdge& e : b.edges()) {
    CHECK(seen.insert({e.src, e.label}).second);
    long delta = b.vertices()[e.dst].level - b.vertices()[e.src].level;
    CHECK(delta == (e.label == 't' ? 1 : 0));
  }
}

TEST_CASE("vertex count grows with radius and BFS is deterministic") {
  auto p = bs12();
  std::size_t prev = 0;
  for (int r = 0; r <= 5; ++r) {
    Ball b = Ball::build(p, r);
    CHECK(b.vertices().size() >= prev);
    prev = b.vertices().size();
  }
  CHECK(Ball::build(p, 4).to_json_text() == Ball::build(p, 4).to_json_text());
}

TEST_CASE("conjugation cells sit between consecutive levels") {
  auto p = bs12();
  Ball b = Ball::build(p, 4);
  int conj = 0;
  for (const BallCell& c : b.cells()) {
    if (c.kind != BallCell::Kind::Conjugation) continue;
    ++conj;
    // boundary a t phi(a)^-1 t^-1 from the base vertex: the a-edge at level
    // L, the phi(a)-path at level L+1
    long base = b.vertices()[c.base].level;
    REQUIRE(c.boundary.size() >= 3);
    CHECK(b.vertices()[c.boundary[1]].level == base);      // after a
    for (std::size_t i = 2; i < c.boundary.size(); ++i)
      CHECK(b.vertices()[c.boundary[i]].level == base + 1);
  }
  CHECK(conj > 0);
}

TEST_CASE("ball export round trips") {
  auto p = bs12();
  Ball b = Ball::build(p, 2);
  std::string j = b.to_json_text();
  Ball back = Ball::from_json_text(j);
  CHECK(back.to_json_text() == j);
  CHECK_THROWS_AS(Ball::from_json_text("{\"schema\":\"nope\"}"), InputError);

  std::string dot = b.to_dot({{0, "origin"}});
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("origin") != std::string::npos);
  CHECK(dot.find("P=") != std::string::npos);
}

TEST_CASE("ball lookup by word") {
  auto p = bs12();
  Ball b = Ball::build(p, 3);
  auto id = b.find(p.parse_word("taaT"));  // equals a, distance 1
  REQUIRE(id);
  CHECK(b.vertices()[*id].dist == 1);
  CHECK_FALSE(b.find(p.parse_word("tttttttt")));
}

TEST_CASE("presentations without exact forms are rejected") {
  CHECK_THROWS_AS(Ball::build(bs23(), 2), ContractError);
  CHECK_THROWS_AS(Ball::build(hnn::testing::grig(), 2), ContractError);
}

TEST_CASE("depth-zero BS-style bases do support balls") {
  // phi = identity: every relator iterate stays in N(R), depth 0
  HnnPresentation::Config cfg;
  cfg.alphabet = Alphabet::from_string("ab");
  cfg.relators = RelatorSet({Word::parse("BaabAAA")});
  cfg.phi = Endomorphism::identity(cfg.alphabet);
  cfg.oracle_name = "bs:2,3";
  cfg.depth_bound = 0;
  cfg.phi_section = std::map<char, Word>{{'a', Word::parse("a")},
                                         {'b', Word::parse("b")}};
  auto p = HnnPresentation::make(cfg);
  REQUIRE(p.has_exact_base_forms());
  Ball b = Ball::build(p, 3);
  CHECK(b.vertices().size() > 5);
  // the BS relation identifies words inside the ball
  auto u = b.find(p.parse_word("Baab"));
  auto v = b.find(p.parse_word("aaa"));
  REQUIRE(u);
  REQUIRE(v);
  CHECK(*u == *v);
}

TEST_CASE("components of the full and empty ball") {
  auto p = bs12();
  Ball b = Ball::build(p, 3);
  std::vector<bool> none(b.vertices().size(), false);
  auto comp = components_minus(b, none);
  for (int c : comp) CHECK(c == 0);

  std::vector<bool> all(b.vertices().size(), true);
  auto comp2 = components_minus(b, all);
  for (int c : comp2) CHECK(c == -1);
}
