#include "hnn/presentation.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hnn {

using ordered_json = nlohmann::ordered_json;

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "True";
    case Tri::False: return "False";
    default: return "Unknown";
  }
}

namespace {

// A relator-free base with non-injective phi is F(A)/ker(phi^m); words are
// trivial there iff the stabilized image kills them.
class StableKernelOracle : public BaseOracle {
 public:
  StableKernelOracle(Endomorphism phi, int m_hat)
      : phi_(std::move(phi)), m_hat_(m_hat) {}
  OracleResult is_identity(const Word& w) const override {
    Word img = phi_.apply(w, m_hat_);
    if (img.empty()) return {Verdict::Trivial, "phi^m(w) freely trivial"};
    return {Verdict::Nontrivial, "phi^m(w) = " + img.str()};
  }
  bool exact() const override { return true; }
  const Alphabet& alphabet() const override { return phi_.alphabet(); }
  std::string name() const override { return "free"; }

 private:
  Endomorphism phi_;
  int m_hat_;
};

}  // namespace

HnnPresentation HnnPresentation::make(Config cfg) {
  HnnPresentation p;
  if (cfg.alphabet.contains(cfg.stable))
    throw InputError("stable letter collides with a base generator");
  for (const Word& r : cfg.relators.relators())
    for (const Letter& l : r.letters())
      if (!cfg.alphabet.contains(l.gen))
        throw InputError("relator uses a letter outside the base alphabet");
  if (!(cfg.phi.alphabet() == cfg.alphabet))
    throw InputError("phi is not an endomorphism of the base alphabet");

  p.oracle_ = make_base_oracle(cfg.oracle_name, cfg.alphabet, cfg.relators, cfg.phi);

  RankSequence rs = image_rank_sequence(cfg.phi, static_cast<int>(cfg.alphabet.size()) + 1);
  p.m_hat_ = rs.m.value();  // guaranteed within |A|+1 by Hopficity

  bool injective = (p.m_hat_ == 0);
  if (cfg.relators.empty()) {
    if (cfg.oracle_name != "free" && cfg.oracle_name.rfind("bounded:", 0) != 0)
      throw InputError("a relator-free base takes the free or bounded oracle");
    p.mode_ = PinchMode::FreeStable;
    p.pinch_graph_ = SubgroupGraph::image_graph(cfg.phi, p.m_hat_ + 1);
    if (!injective && cfg.oracle_name == "free")
      p.oracle_ = std::make_shared<StableKernelOracle>(cfg.phi, p.m_hat_);
  } else if (cfg.phi_section) {
    p.mode_ = PinchMode::Section;
    for (char g : cfg.alphabet.generators()) {
      auto it = cfg.phi_section->find(g);
      if (it == cfg.phi_section->end())
        throw InputError(std::string("phi_section misses generator '") + g + "'");
      Word probe = cfg.phi.apply(it->second)
                       .concat(Word::from_letters({Letter(g, -1)}));
      OracleResult r = p.oracle_->is_identity(probe);
      if (r.value == Verdict::Nontrivial)
        throw InputError(std::string("phi_section entry for '") + g +
                         "' is not a section: " + r.evidence);
      if (r.value == Verdict::Unknown)
        throw InputError("phi_section cannot be verified with a non-exact oracle");
    }
  } else {
    p.mode_ = PinchMode::BestEffort;
    p.pinch_graph_ = SubgroupGraph::image_graph(cfg.phi, 1);
  }

  p.cfg_ = std::move(cfg);
  return p;
}

Word HnnPresentation::parse_base_word(const std::string& s) const {
  return Word::parse(s, cfg_.alphabet);
}

Word HnnPresentation::parse_word(const std::string& s) const {
  return Word::parse(s, cfg_.alphabet, cfg_.stable);
}

Word HnnPresentation::stable_power(long k) const {
  Path p;
  for (long i = 0; i < (k < 0 ? -k : k); ++i)
    p.push_back(Letter(cfg_.stable, k < 0 ? -1 : +1));
  return Word::from_letters(p);
}

PinchOutcome HnnPresentation::pinch(const Word& w) const {
  switch (mode_) {
    case PinchMode::FreeStable: {
      Word wm = cfg_.phi.apply(w, m_hat_);
      auto u = pinch_graph_->member_preimage(wm);
      if (u) return {Tri::True, *u};
      return {Tri::False, {}};
    }
    case PinchMode::Section: {
      Word u;
      for (const Letter& l : w.letters()) {
        Word s = cfg_.phi_section->at(l.gen);
        u = u.concat(l.sign > 0 ? s : s.inverse());
      }
      return {Tri::True, u};
    }
    case PinchMode::BestEffort: {
      auto u = pinch_graph_->member_preimage(w);
      if (u) return {Tri::True, *u};
      return {Tri::Unknown, {}};
    }
  }
  return {Tri::Unknown, {}};
}

bool HnnPresentation::oracle_matches_base() const {
  if (mode_ == PinchMode::FreeStable) return cfg_.oracle_name == "free";
  return cfg_.depth_bound && *cfg_.depth_bound == 0 && oracle_->exact() &&
         commuting_square() == Tri::True;
}

bool HnnPresentation::has_exact_base_forms() const {
  if (mode_ == PinchMode::FreeStable) return cfg_.oracle_name == "free";
  return oracle_matches_base() &&
         dynamic_cast<const BsOracle*>(oracle_.get()) != nullptr;
}

Word HnnPresentation::base_normal_form(const Word& w) const {
  if (!has_exact_base_forms())
    throw ContractError("presentation does not support exact base forms");
  if (mode_ == PinchMode::FreeStable)
    return m_hat_ == 0 ? w : cfg_.phi.apply(w, m_hat_);
  return dynamic_cast<const BsOracle*>(oracle_.get())->normal_form(w);
}

Tri HnnPresentation::commuting_square() const {
  if (!commute_cache_) {
    Tri out = Tri::True;
    for (const Word& r : cfg_.relators.relators()) {
      OracleResult res = oracle_->is_identity(cfg_.phi.apply(r));
      if (res.value == Verdict::Nontrivial) {
        out = Tri::False;
        break;
      }
      if (res.value == Verdict::Unknown) out = Tri::Unknown;
    }
    commute_cache_ = out;
  }
  return *commute_cache_;
}

// ------------------------------------------------------------------ JSON

namespace {

HnnPresentation from_json_value(const ordered_json& j) {
  HnnPresentation::Config cfg;
  if (!j.is_object()) throw InputError("presentation JSON must be an object");
  std::vector<char> gens;
  for (const auto& g : j.at("generators")) {
    std::string s = g.get<std::string>();
    if (s.size() != 1) throw InputError("generators must be single characters");
    gens.push_back(s[0]);
  }
  cfg.alphabet = Alphabet(gens);
  std::string stable = j.value("stable", std::string("t"));
  if (stable.size() != 1) throw InputError("stable letter must be a single character");
  cfg.stable = stable[0];

  std::vector<Word> rels;
  if (j.contains("relators"))
    for (const auto& r : j.at("relators"))
      rels.push_back(Word::parse(r.get<std::string>(), cfg.alphabet));
  cfg.relators = RelatorSet(rels);

  std::map<char, std::string> table;
  for (const auto& [k, v] : j.at("phi").items()) {
    if (k.size() != 1) throw InputError("phi keys must be single characters");
    table[k[0]] = v.get<std::string>();
  }
  cfg.phi = Endomorphism::parse(cfg.alphabet, table);

  cfg.oracle_name = j.value("base_oracle", std::string("free"));
  if (j.contains("depth_bound") && !j.at("depth_bound").is_null())
    cfg.depth_bound = j.at("depth_bound").get<int>();

  if (j.contains("phi_section") && !j.at("phi_section").is_null()) {
    std::map<char, Word> sec;
    for (const auto& [k, v] : j.at("phi_section").items()) {
      if (k.size() != 1) throw InputError("phi_section keys must be single characters");
      sec.emplace(k[0], Word::parse(v.get<std::string>(), cfg.alphabet));
    }
    cfg.phi_section = std::move(sec);
  }
  return HnnPresentation::make(std::move(cfg));
}

}  // namespace

HnnPresentation HnnPresentation::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("presentation JSON parse error: ") + e.what());
  }
  try {
    return from_json_value(j);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("presentation JSON schema error: ") + e.what());
  }
}

HnnPresentation HnnPresentation::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open presentation file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string HnnPresentation::to_json_text() const {
  ordered_json j;
  j["generators"] = ordered_json::array();
  for (char g : cfg_.alphabet.generators())
    j["generators"].push_back(std::string(1, g));
  j["stable"] = std::string(1, cfg_.stable);
  j["relators"] = ordered_json::array();
  for (const Word& r : cfg_.relators.relators()) j["relators"].push_back(r.str());
  j["phi"] = ordered_json::object();
  for (const auto& [g, w] : cfg_.phi.table()) j["phi"][std::string(1, g)] = w.str();
  j["base_oracle"] = cfg_.oracle_name;
  if (cfg_.depth_bound)
    j["depth_bound"] = *cfg_.depth_bound;
  else
    j["depth_bound"] = nullptr;
  if (cfg_.phi_section) {
    j["phi_section"] = ordered_json::object();
    for (const auto& [g, w] : *cfg_.phi_section)
      j["phi_section"][std::string(1, g)] = w.str();
  }
  return j.dump(2) + "\n";
}

}  // namespace hnn
