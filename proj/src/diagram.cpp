#include <sstream>

#include "hnn/homotopy.hpp"
#include "hnn/regions.hpp"
#include "json.hpp"

namespace hnn {

using ordered_json = nlohmann::ordered_json;

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::InsertPair: return "insert_pair";
    case MoveKind::DeletePair: return "delete_pair";
    case MoveKind::LiftValley: return "lift_valley";
    case MoveKind::LowerImage: return "lower_image";
    case MoveKind::RelatorDelete: return "relator_delete";
    case MoveKind::RelatorInsert: return "relator_insert";
  }
  return "?";
}

namespace {

MoveKind move_kind_from_string(const std::string& s) {
  if (s == "insert_pair") return MoveKind::InsertPair;
  if (s == "delete_pair") return MoveKind::DeletePair;
  if (s == "lift_valley") return MoveKind::LiftValley;
  if (s == "lower_image") return MoveKind::LowerImage;
  if (s == "relator_delete") return MoveKind::RelatorDelete;
  if (s == "relator_insert") return MoveKind::RelatorInsert;
  throw InputError("unknown move kind '" + s + "'");
}

std::string path_str(const Path& p) {
  std::string s;
  for (const Letter& l : p) s.push_back(l.to_char());
  return s;
}

Path parse_path(const std::string& s) {
  Path p;
  for (char c : s) p.push_back(Letter::from_char(c));
  return p;
}

Path image_path(const Endomorphism& phi, const Letter& l) {
  const Word& img = phi.image(l.gen);
  Path out;
  if (l.sign > 0) {
    for (const Letter& x : img.letters()) out.push_back(x);
  } else {
    for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it)
      out.push_back(it->inverse());
  }
  return out;
}

Path rotated_relator(const RelatorSet& rels, int index, int rotation, int sign) {
  if (index < 0 || index >= static_cast<int>(rels.size()))
    throw InputError("relator index out of range");
  Word r = rels.relators()[index];
  if (sign < 0) r = r.inverse();
  Path out;
  for (std::size_t i = 0; i < r.size(); ++i)
    out.push_back(r[(rotation + i) % r.size()]);
  return out;
}

// Applies one move to the path; returns an error string on illegality.
std::optional<std::string> apply_move(Path& path, const Move& mv,
                                      const HnnPresentation& p) {
  const char t = p.stable();
  auto in_range = [&](int pos, int len) {
    return pos >= 0 && pos + len <= static_cast<int>(path.size());
  };
  switch (mv.kind) {
    case MoveKind::InsertPair: {
      if (mv.pos < 0 || mv.pos > static_cast<int>(path.size()))
        return "insert_pair position out of range";
      path.insert(path.begin() + mv.pos, {mv.letter, mv.letter.inverse()});
      return std::nullopt;
    }
    case MoveKind::DeletePair: {
      if (!in_range(mv.pos, 2)) return "delete_pair position out of range";
      if (!(path[mv.pos + 1] == path[mv.pos].inverse()))
        return "delete_pair letters are not inverse";
      path.erase(path.begin() + mv.pos, path.begin() + mv.pos + 2);
      return std::nullopt;
    }
    case MoveKind::LiftValley: {
      if (!in_range(mv.pos, 3)) return "lift_valley position out of range";
      if (!(path[mv.pos] == Letter(t, -1)) || !(path[mv.pos + 2] == Letter(t, +1)))
        return "lift_valley needs a t^-1 x t segment";
      if (!(path[mv.pos + 1] == mv.letter) || mv.letter.gen == t)
        return "lift_valley letter mismatch";
      Path img = image_path(p.phi(), mv.letter);
      path.erase(path.begin() + mv.pos, path.begin() + mv.pos + 3);
      path.insert(path.begin() + mv.pos, img.begin(), img.end());
      return std::nullopt;
    }
    case MoveKind::LowerImage: {
      if (mv.letter.gen == t || !p.alphabet().contains(mv.letter.gen))
        return "lower_image letter is not a base generator";
      Path img = image_path(p.phi(), mv.letter);
      if (!in_range(mv.pos, static_cast<int>(img.size())))
        return "lower_image position out of range";
      for (std::size_t i = 0; i < img.size(); ++i)
        if (!(path[mv.pos + i] == img[i]))
          return "lower_image segment differs from phi(letter)";
      path.erase(path.begin() + mv.pos, path.begin() + mv.pos + img.size());
      Path repl{Letter(t, -1), mv.letter, Letter(t, +1)};
      path.insert(path.begin() + mv.pos, repl.begin(), repl.end());
      return std::nullopt;
    }
    case MoveKind::RelatorDelete: {
      Path r = rotated_relator(p.relators(), mv.relator, mv.rotation, mv.sign);
      if (!in_range(mv.pos, static_cast<int>(r.size())))
        return "relator_delete position out of range";
      for (std::size_t i = 0; i < r.size(); ++i)
        if (!(path[mv.pos + i] == r[i]))
          return "relator_delete segment does not spell the relator";
      path.erase(path.begin() + mv.pos, path.begin() + mv.pos + r.size());
      return std::nullopt;
    }
    case MoveKind::RelatorInsert: {
      if (mv.pos < 0 || mv.pos > static_cast<int>(path.size()))
        return "relator_insert position out of range";
      Path r = rotated_relator(p.relators(), mv.relator, mv.rotation, mv.sign);
      path.insert(path.begin() + mv.pos, r.begin(), r.end());
      return std::nullopt;
    }
  }
  return "unhandled move kind";
}

}  // namespace

ReplayReport replay(const DiagramCertificate& cert, const HnnPresentation& p) {
  ReplayReport rep;
  rep.d_avoided = Tri::True;
  Path path = cert.initial;
  long base_level = level(cert.base, p);
  rep.max_level = base_level;

  auto scan = [&](const Path& cur) -> std::optional<std::string> {
    long lv = base_level;
    Word vertex = cert.base;
    for (std::size_t i = 0; i <= cur.size(); ++i) {
      if (lv > rep.max_level) rep.max_level = lv;
      if (lv > cert.level_cap)
        return "vertex level " + std::to_string(lv) + " exceeds the cap";
      if (cert.avoid_D) {
        Tri d = in_D(vertex, cert.avoid_D->first, cert.avoid_D->second, p);
        if (d == Tri::True) return "vertex enters D(N,M)";
        if (d == Tri::Unknown) rep.d_avoided = Tri::Unknown;
      }
      if (i < cur.size()) {
        if (cur[i].gen == p.stable()) lv += cur[i].sign;
        vertex = vertex.concat(Word::from_letters({cur[i]}));
      }
    }
    return std::nullopt;
  };

  if (auto err = scan(path)) {
    rep.error = "initial loop: " + *err;
    return rep;
  }
  for (const Move& mv : cert.moves) {
    if (auto err = apply_move(path, mv, p)) {
      rep.error = "move " + std::to_string(rep.moves_applied) + " (" +
                  to_string(mv.kind) + "): " + *err;
      return rep;
    }
    ++rep.moves_applied;
    if (auto err = scan(path)) {
      rep.error = "after move " + std::to_string(rep.moves_applied - 1) + ": " + *err;
      return rep;
    }
  }
  if (!path.empty()) {
    rep.error = "final path is not empty: " + path_str(path);
    return rep;
  }
  rep.ok = cert.avoid_D ? rep.d_avoided != Tri::Unknown : true;
  if (cert.avoid_D && rep.d_avoided == Tri::Unknown)
    rep.error = "a D-membership test returned Unknown during replay";
  return rep;
}

// --------------------------------------------------------------- builders

namespace {

// Records moves while applying them to a working path, so every emitted
// position is valid at emission time.
class MoveBuilder {
 public:
  MoveBuilder(const HnnPresentation& p, const Word& base, const Word& loop)
      : p_(p), t_(p.stable()), base_level_(level(base, p)) {
    path_ = loop.letters();
  }

  const Path& path() const { return path_; }
  std::vector<Move>&& take_moves() { return std::move(moves_); }

  long level_at(int pos) const {  // level of the vertex before path_[pos]
    long lv = base_level_;
    for (int i = 0; i < pos; ++i)
      if (path_[i].gen == t_) lv += path_[i].sign;
    return lv;
  }

  void insert_pair(int pos, Letter l) { emit({MoveKind::InsertPair, pos, l, 0, 0, +1}); }
  void delete_pair(int pos) { emit({MoveKind::DeletePair, pos, {}, 0, 0, +1}); }
  void lift_valley(int pos) {
    emit({MoveKind::LiftValley, pos, path_[pos + 1], 0, 0, +1});
  }
  void lower_image(int pos, Letter x) {
    emit({MoveKind::LowerImage, pos, x, 0, 0, +1});
  }
  void relator_delete(int pos, int relator, int rotation, int sign) {
    emit({MoveKind::RelatorDelete, pos, {}, relator, rotation, sign});
  }

  // Frees every adjacent inverse pair, leftmost first.
  void cleanup() {
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = 0; i + 1 < path_.size(); ++i)
        if (path_[i + 1] == path_[i].inverse()) {
          delete_pair(static_cast<int>(i));
          again = true;
          break;
        }
    }
  }

  // Lifts every base letter to `target` level, then consolidates rails;
  // afterwards the path is t^p w t^-p with w reduced at level `target`.
  void lift_all_to(long target) {
    for (;;) {
      cleanup();
      int pos = -1;
      long lv = base_level_;
      for (std::size_t i = 0; i < path_.size(); ++i) {
        if (path_[i].gen == t_) {
          lv += path_[i].sign;
          continue;
        }
        if (lv < target) {
          pos = static_cast<int>(i);
          break;
        }
        if (lv > target)
          throw std::logic_error("letter above the lift target");
      }
      if (pos == -1) break;
      bool valley = pos > 0 && pos + 1 < static_cast<int>(path_.size()) &&
                    path_[pos - 1] == Letter(t_, -1) &&
                    path_[pos + 1] == Letter(t_, +1);
      if (valley) {
        lift_valley(pos - 1);
      } else {
        insert_pair(pos, Letter(t_, +1));       // t t^-1 x
        insert_pair(pos + 3, Letter(t_, +1));   // t [t^-1 x t] t^-1
        lift_valley(pos + 1);
      }
    }
    cleanup();
  }

  // Middle word between the rails (all base letters after lift_all_to).
  std::pair<int, Word> middle() const {
    int rail = 0;
    while (rail < static_cast<int>(path_.size()) && path_[rail].gen == t_) ++rail;
    Path mid;
    for (std::size_t i = rail; i < path_.size(); ++i) {
      if (path_[i].gen == t_) break;
      mid.push_back(path_[i]);
    }
    return {rail, Word::from_letters(mid)};
  }

  // Unreduced per-letter expansion chain: phi applied j times to the
  // (possibly inverted) relator without free reduction, so that every
  // image block is literally present for lower_image moves.
  Path expansion(int relator_index, int iterate, int sign) const {
    Word r = p_.relators().relators()[relator_index];
    if (sign < 0) r = r.inverse();
    Path cur = r.letters();
    for (int j = 0; j < iterate; ++j) {
      Path next;
      for (const Letter& l : cur) {
        Path img = image_path(p_.phi(), l);
        next.insert(next.end(), img.begin(), img.end());
      }
      cur = std::move(next);
    }
    return cur;
  }

  // Kills one certificate factor from the left of the middle block.
  void consume_factor(const ConjugacyFactor& f, int rail_offset) {
    Path x = f.conjugator.letters();
    Path block = expansion(f.relator_index, f.iterate, f.sign);
    x.insert(x.end(), block.begin(), block.end());
    Word uinv = f.conjugator.inverse();
    x.insert(x.end(), uinv.letters().begin(), uinv.letters().end());
    // grow the prefix x x^-1 by nested pair insertions
    for (std::size_t i = 0; i < x.size(); ++i)
      insert_pair(rail_offset + static_cast<int>(i), x[i]);
    // descend the relator-iterate block and delete it
    int spos = rail_offset + static_cast<int>(f.conjugator.size());
    descend_and_delete(spos, f);
    cleanup();
  }

  void descend_and_delete(int pos, const ConjugacyFactor& f) {
    for (int j = f.iterate; j > 0; --j) {
      Path prev = expansion(f.relator_index, j - 1, f.sign);
      int cursor = pos;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        lower_image(cursor, prev[i]);
        cursor += 3;
      }
      // merge the [t ... t^-1] junctions: t^-1 y1 t t^-1 y2 t ... -> t^-1 y1 y2 ... t
      for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
        // after i deletions the junction after letter i sits at pos + 2 + i
        delete_pair(pos + 2 + static_cast<int>(i));
      }
      pos += 1;  // step inside the surviving t^-1 ... t wrapper
    }
    relator_delete(pos, f.relator_index, 0, f.sign);
  }

 private:
  const HnnPresentation& p_;
  char t_;
  long base_level_;
  Path path_;
  std::vector<Move> moves_;

  void emit(const Move& mv) {
    if (auto err = apply_move(path_, mv, p_))
      throw std::logic_error("builder emitted an illegal move: " + *err);
    moves_.push_back(mv);
  }
};

struct CorePlan {
  long lift_target;       // level the loop is slid to before filling
  int extra_up_max;       // how many additional upward conjugations to try
  SearchBudget budget;    // atom iterate range for the filling certificates
};

std::variant<DiagramCertificate, SearchStats> contract_core(
    const Word& loop, const Word& base, long level_cap, const CorePlan& plan,
    std::optional<std::pair<long, long>> avoid_D, const HnnPresentation& p) {
  if (exponent_sum(loop, p.stable()) != 0)
    throw ContractError("loop must have zero stable-letter exponent sum");

  MoveBuilder builder(p, base, loop);
  builder.lift_all_to(plan.lift_target);
  auto [rail, w] = builder.middle();

  // find the least number of extra upward conjugations whose image is
  // certified inside the truncated closure
  SearchStats last_stats;
  for (int i = 0; i <= plan.extra_up_max; ++i) {
    if (plan.lift_target + i > level_cap) break;
    Word target = p.phi().apply(w, i);
    std::variant<NormalClosureCertificate, SearchStats> res;
    if (p.relators().empty()) {
      if (target.empty())
        res = NormalClosureCertificate{target, {}};
      else
        res = SearchStats{};
    } else {
      auto oracle = bounded_depth_oracle(p.relators(), p.phi(), 0, plan.budget);
      res = oracle->certify(target);
    }
    if (auto* cert = std::get_if<NormalClosureCertificate>(&res)) {
      builder.lift_all_to(plan.lift_target + i);
      auto [rail2, w2] = builder.middle();
      if (!(w2 == target))
        throw std::logic_error("lifted middle differs from the certified target");
      for (const ConjugacyFactor& f : cert->factors)
        builder.consume_factor(f, rail2);
      builder.cleanup();
      if (!builder.path().empty())
        throw std::logic_error("certificate did not contract the loop");
      DiagramCertificate out;
      out.base = base;
      out.initial = loop.letters();
      out.level_cap = level_cap;
      out.avoid_D = avoid_D;
      out.moves = builder.take_moves();
      return out;
    }
    last_stats = std::get<SearchStats>(res);
  }
  last_stats.budget_exhausted = true;
  return last_stats;
}

}  // namespace

std::variant<DiagramCertificate, SearchStats> trivialize_bounded(
    const Word& loop, const Word& base, long level_cap,
    const SearchBudget& budget, const HnnPresentation& p) {
  if (exponent_sum(loop, p.stable()) != 0)
    throw ContractError("loop must have zero stable-letter exponent sum");
  long lv = level(base, p);
  long peak = lv;
  long cur = lv;
  for (const Letter& l : loop.letters()) {
    if (l.gen == p.stable()) cur += l.sign;
    peak = std::max(peak, cur);
  }
  if (peak > level_cap)
    throw ContractError("loop already exceeds the level cap");
  CorePlan plan{peak, static_cast<int>(level_cap - peak), budget};
  return contract_core(loop, base, level_cap, plan, std::nullopt, p);
}

std::variant<DiagramCertificate, SearchStats> fp_complement_trivialize(
    const Word& loop, const Word& base, long n, long m,
    const SearchBudget& budget, const HnnPresentation& p) {
  if (exponent_sum(loop, p.stable()) != 0)
    throw ContractError("loop must have zero stable-letter exponent sum");

  // precondition: no vertex of the loop lies in D(N,M)
  Word vertex = base;
  for (std::size_t i = 0; i <= loop.size(); ++i) {
    Tri d = in_D(vertex, n, m, p);
    if (d == Tri::True) throw ContractError("loop touches D(N,M)");
    if (d == Tri::Unknown) {
      SearchStats st;
      st.budget_exhausted = false;
      return st;
    }
    if (i < loop.size()) vertex = vertex.concat(Word::from_letters({loop[i]}));
  }

  Classification cls = classify(base, n, m, p);
  if (cls.label == RegionLabel::Unknown) return SearchStats{};
  if (cls.label == RegionLabel::InD)
    throw ContractError("loop touches D(N,M)");

  if (cls.label == RegionLabel::OtherComponent) {
    // slide to level N-M-1 and fill; descents below the window are safe
    CorePlan plan{n - m - 1, 0, budget};
    return contract_core(loop, base, n - m - 1, plan, std::make_pair(n, m), p);
  }

  // SpecialK0: stay at the loop's top level, fill without any descent
  long lv = level(base, p);
  long peak = lv;
  long cur = lv;
  for (const Letter& l : loop.letters()) {
    if (l.gen == p.stable()) cur += l.sign;
    peak = std::max(peak, cur);
  }
  SearchBudget flat = budget;
  flat.i_max = 0;
  CorePlan plan{peak, 0, flat};
  return contract_core(loop, base, peak, plan, std::make_pair(n, m), p);
}

// ------------------------------------------------------------------ JSON

std::string DiagramCertificate::to_json_text() const {
  ordered_json j;
  j["schema"] = "hnnkit-diagram/1";
  j["base"] = base.str();
  j["initial"] = path_str(initial);
  j["level_cap"] = level_cap;
  if (avoid_D) {
    j["avoid_D"] = ordered_json::object();
    j["avoid_D"]["N"] = avoid_D->first;
    j["avoid_D"]["M"] = avoid_D->second;
  } else {
    j["avoid_D"] = nullptr;
  }
  j["moves"] = ordered_json::array();
  for (const Move& mv : moves) {
    ordered_json jm;
    jm["kind"] = to_string(mv.kind);
    jm["pos"] = mv.pos;
    switch (mv.kind) {
      case MoveKind::InsertPair:
      case MoveKind::LiftValley:
      case MoveKind::LowerImage:
        jm["letter"] = std::string(1, mv.letter.to_char());
        break;
      case MoveKind::RelatorDelete:
      case MoveKind::RelatorInsert:
        jm["relator"] = mv.relator;
        jm["rotation"] = mv.rotation;
        jm["sign"] = mv.sign;
        break;
      case MoveKind::DeletePair:
        break;
    }
    j["moves"].push_back(jm);
  }
  return j.dump(2) + "\n";
}

DiagramCertificate DiagramCertificate::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("diagram JSON parse error: ") + e.what());
  }
  if (j.value("schema", std::string()) != "hnnkit-diagram/1")
    throw InputError("unrecognized diagram schema");
  DiagramCertificate cert;
  cert.base = Word::parse(j.at("base").get<std::string>());
  cert.initial = parse_path(j.at("initial").get<std::string>());
  cert.level_cap = j.at("level_cap").get<long>();
  if (j.contains("avoid_D") && !j.at("avoid_D").is_null())
    cert.avoid_D = std::make_pair(j.at("avoid_D").at("N").get<long>(),
                                  j.at("avoid_D").at("M").get<long>());
  for (const auto& jm : j.at("moves")) {
    Move mv;
    mv.kind = move_kind_from_string(jm.at("kind").get<std::string>());
    mv.pos = jm.at("pos").get<int>();
    if (jm.contains("letter")) {
      std::string l = jm.at("letter").get<std::string>();
      if (l.size() != 1) throw InputError("move letter must be one character");
      mv.letter = Letter::from_char(l[0]);
    }
    mv.relator = jm.value("relator", 0);
    mv.rotation = jm.value("rotation", 0);
    mv.sign = jm.value("sign", +1);
    cert.moves.push_back(mv);
  }
  return cert;
}

}  // namespace hnn
