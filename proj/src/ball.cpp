#include "hnn/ball.hpp"

#include <queue>
#include <sstream>

#include "json.hpp"

namespace hnn {

using ordered_json = nlohmann::ordered_json;

std::string Ball::key(const CanonicalForm& cf) const {
  return std::to_string(cf.n) + "|" + p_.base_normal_form(cf.middle).str() + "|" +
         std::to_string(cf.m);
}

Ball Ball::build(const HnnPresentation& p, int radius) {
  if (radius < 0) throw ContractError("ball radius must be >= 0");
  if (!p.has_exact_base_forms())
    throw ContractError(
        "unsupported presentation: the base oracle does not provide exact "
        "canonical forms for ball vertices");

  Ball b(p);
  b.radius_ = radius;

  std::vector<char> letters;
  for (char g : p.alphabet().generators()) letters.push_back(g);
  letters.push_back(p.stable());

  auto intern = [&](const CanonicalForm& cf, const Word& witness, int dist) {
    std::string k = b.key(cf);
    auto it = b.index_.find(k);
    if (it != b.index_.end()) return std::pair<int, bool>{it->second, false};
    int id = static_cast<int>(b.vertices_.size());
    b.index_.emplace(k, id);
    b.vertices_.push_back({cf, witness, dist, cf.level()});
    return std::pair<int, bool>{id, true};
  };

  intern(canonical_form(Word(), p), Word(), 0);
  std::queue<int> frontier;
  frontier.push(0);
  while (!frontier.empty()) {
    int id = frontier.front();
    frontier.pop();
    if (b.vertices_[id].dist == radius) continue;
    Word base = b.vertices_[id].form.as_word(p);
    for (char g : letters)
      for (int s : {+1, -1}) {
        Word next = base.concat(Word::from_letters({Letter(g, s)}));
        CanonicalForm cf = canonical_form(next, p);
        auto [nid, fresh] = intern(cf, b.vertices_[id].witness.concat(
                                           Word::from_letters({Letter(g, s)})),
                                   b.vertices_[id].dist + 1);
        if (fresh) frontier.push(nid);
      }
  }

  // Edges: one per (vertex, positive letter) with both endpoints present.
  for (int id = 0; id < static_cast<int>(b.vertices_.size()); ++id) {
    Word base = b.vertices_[id].form.as_word(p);
    for (char g : letters) {
      Word next = base.concat(Word::from_letters({Letter(g, +1)}));
      auto it = b.index_.find(b.key(canonical_form(next, p)));
      if (it != b.index_.end()) b.edges_.push_back({id, g, it->second});
    }
  }

  // Cells whose whole boundary lies in the ball.
  auto trace_boundary = [&](int from, const Word& boundary_word)
      -> std::optional<std::vector<int>> {
    std::vector<int> ids{from};
    Word cur = b.vertices_[from].form.as_word(p);
    for (std::size_t i = 0; i < boundary_word.size(); ++i) {
      cur = cur.concat(Word::from_letters({boundary_word[i]}));
      auto it = b.index_.find(b.key(canonical_form(cur, p)));
      if (it == b.index_.end()) return std::nullopt;
      if (i + 1 < boundary_word.size()) ids.push_back(it->second);
      else if (it->second != from) return std::nullopt;  // boundary must close
    }
    return ids;
  };

  const auto& rels = p.relators().relators();
  for (int id = 0; id < static_cast<int>(b.vertices_.size()); ++id) {
    for (std::size_t r = 0; r < rels.size(); ++r) {
      auto ids = trace_boundary(id, rels[r]);
      if (ids)
        b.cells_.push_back({BallCell::Kind::Relator, static_cast<int>(r), id, *ids});
    }
    const auto& gens = p.alphabet().generators();
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      // boundary a t phi(a)^-1 t^-1, unreduced as a path
      Path bd;
      bd.push_back(Letter(gens[gi], +1));
      bd.push_back(Letter(p.stable(), +1));
      Word img = p.phi().image(gens[gi]);
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it)
        bd.push_back(it->inverse());
      bd.push_back(Letter(p.stable(), -1));
      // trace the unreduced path vertex by vertex
      std::vector<int> ids{id};
      Word cur = b.vertices_[id].form.as_word(p);
      bool ok = true;
      for (std::size_t i = 0; i < bd.size(); ++i) {
        cur = cur.concat(Word::from_letters({bd[i]}));
        auto it = b.index_.find(b.key(canonical_form(cur, p)));
        if (it == b.index_.end()) {
          ok = false;
          break;
        }
        if (i + 1 < bd.size()) ids.push_back(it->second);
      }
      if (ok)
        b.cells_.push_back(
            {BallCell::Kind::Conjugation, static_cast<int>(gi), id, ids});
    }
  }
  return b;
}

std::optional<int> Ball::find(const Word& w) const {
  auto it = index_.find(key(canonical_form(w, p_)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Ball::to_dot(const std::map<int, std::string>& annotations) const {
  std::ostringstream os;
  os << "digraph ball {\n";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    os << "  v" << i << " [label=\""
       << (vertices_[i].witness.empty() ? "1" : vertices_[i].witness.str())
       << " P=" << vertices_[i].level;
    if (auto it = annotations.find(static_cast<int>(i)); it != annotations.end())
      os << " " << it->second;
    os << "\" shape=" << (i == 0 ? "doublecircle" : "circle") << "]\n";
  }
  for (const BallEdge& e : edges_)
    os << "  v" << e.src << " -> v" << e.dst << " [label=\"" << e.label << "\"]\n";
  os << "}\n";
  return os.str();
}

std::string Ball::to_json_text() const {
  ordered_json j;
  j["schema"] = "hnnkit-ball/1";
  j["radius"] = radius_;
  j["presentation"] = ordered_json::parse(p_.to_json_text());
  j["vertices"] = ordered_json::array();
  for (const BallVertex& v : vertices_) {
    ordered_json jv;
    jv["word"] = v.witness.str();
    jv["n"] = v.form.n;
    jv["middle"] = v.form.middle.str();
    jv["m"] = v.form.m;
    jv["level"] = v.level;
    jv["dist"] = v.dist;
    j["vertices"].push_back(jv);
  }
  j["edges"] = ordered_json::array();
  for (const BallEdge& e : edges_) {
    ordered_json je;
    je["src"] = e.src;
    je["label"] = std::string(1, e.label);
    je["dst"] = e.dst;
    j["edges"].push_back(je);
  }
  j["cells"] = ordered_json::array();
  for (const BallCell& c : cells_) {
    ordered_json jc;
    jc["kind"] = c.kind == BallCell::Kind::Relator ? "relator" : "conjugation";
    jc["tag"] = c.tag;
    jc["base"] = c.base;
    jc["boundary"] = c.boundary;
    j["cells"].push_back(jc);
  }
  return j.dump(2) + "\n";
}

Ball Ball::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("ball JSON parse error: ") + e.what());
  }
  if (j.value("schema", std::string()) != "hnnkit-ball/1")
    throw InputError("unrecognized ball schema");
  Ball b(HnnPresentation::from_json_text(j.at("presentation").dump()));
  b.radius_ = j.at("radius").get<int>();
  for (const auto& jv : j.at("vertices")) {
    BallVertex v;
    v.witness = b.p_.parse_word(jv.at("word").get<std::string>());
    v.form.n = jv.at("n").get<long>();
    v.form.middle = b.p_.parse_base_word(jv.at("middle").get<std::string>());
    v.form.m = jv.at("m").get<long>();
    v.level = jv.at("level").get<long>();
    v.dist = jv.at("dist").get<int>();
    b.index_.emplace(b.key(v.form), static_cast<int>(b.vertices_.size()));
    b.vertices_.push_back(v);
  }
  for (const auto& je : j.at("edges")) {
    std::string l = je.at("label").get<std::string>();
    if (l.size() != 1) throw InputError("edge label must be a single character");
    b.edges_.push_back({je.at("src").get<int>(), l[0], je.at("dst").get<int>()});
  }
  for (const auto& jc : j.at("cells")) {
    BallCell c;
    c.kind = jc.at("kind").get<std::string>() == "relator"
                 ? BallCell::Kind::Relator
                 : BallCell::Kind::Conjugation;
    c.tag = jc.at("tag").get<int>();
    c.base = jc.at("base").get<int>();
    c.boundary = jc.at("boundary").get<std::vector<int>>();
    b.cells_.push_back(c);
  }
  return b;
}

std::vector<int> components_minus(const Ball& ball, const std::vector<bool>& removed) {
  int n = static_cast<int>(ball.vertices().size());
  if (static_cast<int>(removed.size()) != n)
    throw ContractError("removed mask must cover every vertex");
  std::vector<std::vector<int>> adj(n);
  for (const BallEdge& e : ball.edges()) {
    if (removed[e.src] || removed[e.dst]) continue;
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  std::vector<int> comp(n, -1);
  for (int v = 0; v < n; ++v) {
    if (removed[v] || comp[v] != -1) continue;
    // v is the least unassigned vertex of its component
    comp[v] = v;
    std::queue<int> q;
    q.push(v);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u])
        if (comp[w] == -1) {
          comp[w] = v;
          q.push(w);
        }
    }
  }
  return comp;
}

}  // namespace hnn
