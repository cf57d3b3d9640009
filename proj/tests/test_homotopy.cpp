#include "doctest.h"
#include "helpers.hpp"
#include "hnn/ball.hpp"
#include "hnn/homotopy.hpp"
#include "hnn/regions.hpp"

using namespace hnn;
using hnn::testing::bs12;
using hnn::testing::bs23;
using hnn::testing::grig;

TEST_CASE("push homotopy fixtures") {
  auto p = bs12();
  auto h = build_push(p, Word(), Letter('a', +1), 4);
  REQUIRE(h.rows.size() == 5);
  for (int k = 0; k < 4; ++k)
    CHECK(h.cell_count_in_strip(k) == (std::size_t{1} << k));
  auto cert = verify_levels(h, p);
  REQUIRE(std::holds_alternative<LevelCertificate>(cert));
  auto& lc = std::get<LevelCertificate>(cert);
  REQUIRE(lc.strip_intervals.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(lc.strip_intervals[k].first == k);
    CHECK(lc.strip_intervals[k].second == k + 1);
  }

  auto g = grig();
  auto hg = build_push(g, Word(), Letter('a', +1), 3);
  CHECK(hg.cell_count_in_strip(0) == 1);
  CHECK(hg.cell_count_in_strip(1) == 3);
  CHECK(hg.cell_count_in_strip(2) == 8);
  CHECK(std::holds_alternative<LevelCertificate>(verify_levels(hg, g)));
}

TEST_CASE("push row recurrence is verbatim") {
  auto g = grig();
  auto h = build_push(g, g.parse_word("t"), Letter('c', -1), 3);
  for (std::size_t k = 0; k + 1 < h.rows.size(); ++k) {
    // row k+1 is the per-letter expansion of row k
    Path expect;
    for (const Letter& l : h.rows[k].label) {
      Word img = g.phi().image(l.gen);
      if (l.sign < 0) img = img.inverse();
      for (const Letter& x : img.letters()) expect.push_back(x);
    }
    CHECK(h.rows[k + 1].label == expect);
  }
}

TEST_CASE("degenerate images make bigons") {
  HnnPresentation::Config cfg;
  cfg.alphabet = Alphabet::from_string("ab");
  cfg.phi = Endomorphism::parse(cfg.alphabet, {{'a', ""}, {'b', "b"}});
  auto p = HnnPresentation::make(cfg);
  auto h = build_push(p, Word(), Letter('a', +1), 1);
  REQUIRE(h.rows.size() == 2);
  CHECK(h.rows[1].label.empty());
  REQUIRE(h.cells.size() == 1);
  CHECK(h.cells[0].top_len == 0);
  CHECK(std::holds_alternative<LevelCertificate>(verify_levels(h, p)));
}

TEST_CASE("level verification rejects corrupted homotopies") {
  auto p = bs12();
  auto h = build_push(p, Word(), Letter('a', +1), 3);

  SUBCASE("a letter changed in a row") {
    auto bad = h;
    bad.rows[2].label[1] = Letter('a', -1);
    auto v = verify_levels(bad, p);
    REQUIRE(std::holds_alternative<VerifyFailure>(v));
    CHECK(std::get<VerifyFailure>(v).row >= 1);
  }
  SUBCASE("a stable letter smuggled into a row") {
    auto bad = h;
    bad.rows[1].label.push_back(Letter('t', +1));
    CHECK(std::holds_alternative<VerifyFailure>(verify_levels(bad, p)));
  }
  SUBCASE("a broken rail") {
    auto bad = h;
    bad.rows[2].base = p.parse_word("tta");
    auto v = verify_levels(bad, p);
    REQUIRE(std::holds_alternative<VerifyFailure>(v));
    CHECK(std::get<VerifyFailure>(v).what.find("rail") != std::string::npos);
  }
  SUBCASE("a cell pushed down a row") {
    auto bad = h;
    bad.cells[1].row = 0;
    CHECK(std::holds_alternative<VerifyFailure>(verify_levels(bad, p)));
  }
}

TEST_CASE("string homotopies") {
  auto p = bs12();
  // a single edge is exactly a push
  auto hs = build_string(p, Word(), {Letter('a', +1)}, 3);
  auto hp = build_push(p, Word(), Letter('a', +1), 3);
  CHECK(hs.rows.size() == hp.rows.size());
  for (std::size_t k = 0; k < hs.rows.size(); ++k)
    CHECK(hs.rows[k].label == hp.rows[k].label);
  CHECK(hs.cells.size() == hp.cells.size());

  auto h2 = build_string(p, Word(), {Letter('a', +1), Letter('a', +1)}, 2);
  CHECK(h2.rows[1].label.size() == 4);
  CHECK(h2.cell_count_in_strip(0) == 2);
  CHECK(h2.cell_count_in_strip(1) == 4);
  CHECK(std::holds_alternative<LevelCertificate>(verify_levels(h2, p)));

  CHECK_THROWS_AS(build_string(p, Word(), {}, 2), ContractError);
  CHECK_THROWS_AS(build_string(p, Word(), {Letter('t', +1)}, 2), ContractError);
}

TEST_CASE("corner homotopies") {
  auto p = bs12();

  SUBCASE("an all-base path at the top level equals its string") {
    Path s{Letter('a', +1), Letter('a', -1)};
    auto hc = build_corner(p, Word(), s, 0, 2);
    auto hs = build_string(p, Word(), s, 2);
    REQUIRE(hc.rows.size() == hs.rows.size());
    for (std::size_t k = 0; k < hc.rows.size(); ++k)
      CHECK(hc.rows[k].label == hs.rows[k].label);
    for (const RampBlock& b : hc.ramp) CHECK(b.rows.size() == 1);
    CHECK(std::holds_alternative<LevelCertificate>(verify_levels(hc, p)));
  }

  SUBCASE("the (t, a, t^-1) corner slides onto the a-edge upstairs") {
    Path s{Letter('t', +1), Letter('a', +1), Letter('t', -1)};
    auto hc = build_corner(p, Word(), s, 1, 2);
    REQUIRE(hc.ramp.size() == 1);
    CHECK(hc.ramp[0].from_level == 1);
    CHECK(hc.base_level == 1);
    REQUIRE(hc.rows.size() == 3);
    CHECK(hc.rows[0].label == Path{Letter('a', +1)});
    CHECK(hc.rows[1].label == Path{Letter('a', +1), Letter('a', +1)});
    CHECK(std::holds_alternative<LevelCertificate>(verify_levels(hc, p)));
  }

  SUBCASE("a lower base edge climbs a ramp") {
    Path s{Letter('a', +1), Letter('t', +1), Letter('a', +1), Letter('t', -1)};
    auto hc = build_corner(p, Word(), s, 1, 1);
    REQUIRE(hc.ramp.size() == 2);
    CHECK(hc.ramp[0].from_level == 0);
    CHECK(hc.ramp[0].rows.size() == 2);  // a, then phi(a) at the top
    CHECK(hc.ramp[1].from_level == 1);
    // slid path = phi(a) . a
    CHECK(hc.rows[0].label ==
          Path{Letter('a', +1), Letter('a', +1), Letter('a', +1)});
    CHECK(std::holds_alternative<LevelCertificate>(verify_levels(hc, p)));
  }

  SUBCASE("levels escaping the declared interval are a contract error") {
    Path s{Letter('t', +1), Letter('t', +1), Letter('a', +1)};
    CHECK_THROWS_AS(build_corner(p, Word(), s, 1, 2), ContractError);
  }
}

TEST_CASE("homotopy JSON round trip") {
  auto p = bs12();
  auto h = build_corner(
      p, Word(), {Letter('a', +1), Letter('t', +1), Letter('a', +1), Letter('t', -1)},
      1, 2);
  auto back = CellularHomotopy::from_json_text(h.to_json_text());
  CHECK(back.to_json_text() == h.to_json_text());
  CHECK(std::holds_alternative<LevelCertificate>(verify_levels(back, p)));
  CHECK_THROWS_AS(CellularHomotopy::from_json_text("{}"), InputError);
}

TEST_CASE("trivialize_bounded on the three loop shapes") {
  auto q = bs23();
  Word r = q.parse_base_word("BaabAAA");

  SUBCASE("a relator boundary fills in its own level") {
    auto res = trivialize_bounded(r, Word(), 0, SearchBudget{}, q);
    auto* cert = std::get_if<DiagramCertificate>(&res);
    REQUIRE(cert);
    int fills = 0;
    for (const Move& mv : cert->moves)
      if (mv.kind == MoveKind::RelatorDelete) ++fills;
    CHECK(fills == 1);
    auto rep = replay(*cert, q);
    CHECK(rep.ok);
    CHECK(rep.max_level == 0);
  }

  SUBCASE("phi(r) descends one level and fills") {
    auto res = trivialize_bounded(q.phi().apply(r), Word(), 0, SearchBudget{}, q);
    auto* cert = std::get_if<DiagramCertificate>(&res);
    REQUIRE(cert);
    bool lowered = false;
    for (const Move& mv : cert->moves)
      if (mv.kind == MoveKind::LowerImage) lowered = true;
    CHECK(lowered);
    auto rep = replay(*cert, q);
    CHECK(rep.ok);
    CHECK(rep.max_level == 0);
  }

  SUBCASE("a depth-one element conjugates up once") {
    Word w = q.parse_base_word("BabaBAbA");
    auto res = trivialize_bounded(w, Word(), 1, SearchBudget{}, q);
    auto* cert = std::get_if<DiagramCertificate>(&res);
    REQUIRE(cert);
    auto rep = replay(*cert, q);
    CHECK(rep.ok);
    CHECK(rep.max_level == 1);

    // at cap 0 the same loop is out of reach
    auto blocked = trivialize_bounded(w, Word(), 0, SearchBudget{}, q);
    CHECK(std::holds_alternative<SearchStats>(blocked));
  }
}

TEST_CASE("trivialize handles loops with stable letters") {
  auto q = bs23();
  // t r t^-1 spelled literally: a mountain profile over the relator
  Word loop = q.stable_power(1).concat(q.parse_base_word("BaabAAA"))
                  .concat(q.stable_power(-1));
  auto res = trivialize_bounded(loop, Word(), 1, SearchBudget{}, q);
  auto* cert = std::get_if<DiagramCertificate>(&res);
  REQUIRE(cert);
  auto rep = replay(*cert, q);
  CHECK(rep.ok);
  CHECK(rep.max_level == 1);
  CHECK_THROWS_AS(trivialize_bounded(q.parse_word("t"), Word(), 2, SearchBudget{}, q),
                  ContractError);
}

TEST_CASE("replay is an independent gatekeeper") {
  auto q = bs23();
  Word r = q.parse_base_word("BaabAAA");
  auto res = trivialize_bounded(r, Word(), 0, SearchBudget{}, q);
  auto cert = std::get<DiagramCertificate>(res);

  SUBCASE("dropping a move leaves a nonempty path") {
    auto bad = cert;
    bad.moves.pop_back();
    CHECK_FALSE(replay(bad, q).ok);
  }
  SUBCASE("shifting the relator fill makes a move illegal") {
    auto bad = cert;
    bool found = false;
    for (Move& mv : bad.moves)
      if (mv.kind == MoveKind::RelatorDelete) {
        mv.pos += 1;
        found = true;
        break;
      }
    REQUIRE(found);
    CHECK_FALSE(replay(bad, q).ok);
  }
  SUBCASE("tightening the cap fails the level check") {
    Word w = q.parse_base_word("BabaBAbA");
    auto res2 = trivialize_bounded(w, Word(), 1, SearchBudget{}, q);
    auto bad = std::get<DiagramCertificate>(res2);
    bad.level_cap = 0;
    auto rep = replay(bad, q);
    CHECK_FALSE(rep.ok);
    CHECK(rep.error.find("exceeds the cap") != std::string::npos);
  }
  SUBCASE("diagram JSON round trips and replays") {
    auto back = DiagramCertificate::from_json_text(cert.to_json_text());
    CHECK(back.to_json_text() == cert.to_json_text());
    CHECK(replay(back, q).ok);
  }
}

TEST_CASE("fp_complement_trivialize branches") {
  auto q = bs23();
  Word r = q.parse_base_word("BaabAAA");

  SUBCASE("relator loops above the window never meet D") {
    auto res = fp_complement_trivialize(r, q.parse_word("ta"), 0, 1,
                                        SearchBudget{}, q);
    auto* cert = std::get_if<DiagramCertificate>(&res);
    REQUIRE(cert);
    auto rep = replay(*cert, q);
    CHECK(rep.ok);
    CHECK(rep.d_avoided == Tri::True);
    CHECK(rep.max_level >= 1);
  }

  SUBCASE("other-component loops slide to level N-M-1") {
    auto res = fp_complement_trivialize(r, q.parse_word("TT"), 0, 1,
                                        SearchBudget{}, q);
    auto* cert = std::get_if<DiagramCertificate>(&res);
    REQUIRE(cert);
    CHECK(cert->level_cap == -2);
    auto rep = replay(*cert, q);
    CHECK(rep.ok);
    CHECK(rep.d_avoided == Tri::True);
    CHECK(rep.max_level == -2);
  }

  SUBCASE("loops touching D are a contract error") {
    CHECK_THROWS_AS(
        fp_complement_trivialize(r, Word(), 0, 1, SearchBudget{}, q),
        ContractError);
  }
}

TEST_CASE("straightness: only low pushes meet a level window") {
  auto p = bs12();
  Ball b = Ball::build(p, 4);
  const long W = 1;  // window [-1, 1]
  const int K = 3;
  int meets = 0, expected = 0;
  for (const BallEdge& e : b.edges()) {
    if (e.label == p.stable()) continue;
    Word at = b.vertices()[e.src].form.as_word(p);
    auto h = build_push(p, at, Letter(e.label, +1), K);
    REQUIRE(std::holds_alternative<LevelCertificate>(verify_levels(h, p)));
    // the homotopy's level image is [base_level, base_level + K]
    bool meet = h.base_level <= W && h.base_level + K >= -W;
    if (meet) ++meets;
    if (b.vertices()[e.src].level <= W) ++expected;
  }
  CHECK(meets == expected);
  CHECK(meets > 0);
  CHECK(meets < static_cast<int>(b.edges().size()));
}

TEST_CASE("bounded contraction composes with the declared depth bound") {
  // depth-zero BS-style presentation: phi = identity
  HnnPresentation::Config cfg;
  cfg.alphabet = Alphabet::from_string("ab");
  cfg.relators = RelatorSet({Word::parse("BaabAAA")});
  cfg.phi = Endomorphism::identity(cfg.alphabet);
  cfg.oracle_name = "bs:2,3";
  cfg.depth_bound = 0;
  cfg.phi_section = std::map<char, Word>{{'a', Word::parse("a")},
                                         {'b', Word::parse("b")}};
  auto p = HnnPresentation::make(cfg);
  const long N = 0, M = 1, B = 0;

  // a loop below the window contracts by a homotopy capped at B + N - M
  Word base = p.parse_word("TT");
  REQUIRE(classify(base, N, M, p).label == RegionLabel::OtherComponent);
  Word r = p.parse_base_word("BaabAAA");
  auto res = trivialize_bounded(r, base, B + N - M, SearchBudget{}, p);
  auto* cert = std::get_if<DiagramCertificate>(&res);
  REQUIRE(cert);
  auto rep = replay(*cert, p);
  CHECK(rep.ok);
  CHECK(rep.max_level <= B + N - M);
}

TEST_CASE("string homotopies from special-component vertices avoid D") {
  auto p = bs12();
  const long N = 0, M = 1;
  for (auto s : {"t", "taTT", "tta"}) {
    Word v = p.parse_word(s);
    REQUIRE(classify(v, N, M, p).label == RegionLabel::SpecialK0);
    Path path{Letter('a', +1), Letter('a', -1), Letter('a', +1)};
    auto h = build_string(p, v, path, 4);
    REQUIRE(std::holds_alternative<LevelCertificate>(verify_levels(h, p)));
    // every vertex of the grid is a climb v t^k u; none may land in D
    for (std::size_t k = 0; k < h.rows.size(); ++k) {
      Word at = h.rows[k].base;
      for (std::size_t i = 0; i <= h.rows[k].label.size(); ++i) {
        Path prefix(h.rows[k].label.begin(), h.rows[k].label.begin() + i);
        CHECK(in_D(at.concat(Word::from_letters(prefix)), N, M, p) == Tri::False);
      }
    }
  }
}
