#include "hnn/stallings.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace hnn {

namespace {

// One traversal step through a flower edge: +1 follows the edge's
// orientation, -1 goes against it.
struct Step {
  int edge;
  int dir;
};

}  // namespace

struct SubgroupGraph::Impl {
  struct FlowerEdge {
    char label;
    int src;
    int dst;
    int loop;         // index into gen_words
    bool last;        // last position of its loop (the non-tree edge)
    int reading_dir;  // +1 if loop reading follows orientation
  };

  std::vector<FlowerEdge> edges;
  std::vector<Word> gen_words;
  std::vector<char> trail;  // one char per loop, or empty
  int n_vertices = 1;

  // Vertex classes, with a proof forest recording why two flower vertices
  // were identified; witnesses expand to flower paths with freely trivial
  // label, which is what makes preimage readback exact.
  mutable std::vector<int> dsu;
  struct Witness {
    Step first;   // from x to c1
    Step second;  // from c2 to y
    int c1, c2;
    long time;
    Witness reversed() const {
      return Witness{{second.edge, -second.dir}, {first.edge, -first.dir}, c2, c1, time};
    }
  };
  std::vector<int> pf_parent;
  std::vector<std::optional<Witness>> pf_link;
  long fold_clock = 0;

  mutable std::vector<int> edsu;

  // Folded views (vertex/edge classes). Core excludes trimmed hair.
  int base_class = 0;
  std::map<std::pair<int, char>, int> out_adj, in_adj;  // core only
  std::vector<int> core_vertices;                       // sorted classes
  std::vector<int> core_edges;                          // sorted edge reps

  // Canonical BFS order of the core and its spanning tree.
  std::map<int, int> bfs_id;               // class -> canonical id
  std::vector<int> bfs_order;              // canonical id -> class
  std::map<int, std::pair<int, Step>> tree_parent;  // class -> {parent class, step}
  std::vector<int> nontree_edges;          // basis order

  int find(int v) const {
    while (dsu[v] != v) {
      dsu[v] = dsu[dsu[v]];
      v = dsu[v];
    }
    return v;
  }
  int efind(int e) const {
    while (edsu[e] != e) {
      edsu[e] = edsu[edsu[e]];
      e = edsu[e];
    }
    return e;
  }

  int entry(const Step& s) const { return s.dir > 0 ? edges[s.edge].src : edges[s.edge].dst; }
  int exit(const Step& s) const { return s.dir > 0 ? edges[s.edge].dst : edges[s.edge].src; }

  void reroot_proof(int x) {
    // Reverse parent pointers along x -> root so x becomes its tree's root.
    int cur = x;
    std::optional<Witness> carry;
    int prev = -1;
    while (cur != -1) {
      int next = pf_parent[cur];
      std::optional<Witness> next_link = pf_link[cur];
      pf_parent[cur] = prev;
      if (prev == -1)
        pf_link[cur] = std::nullopt;
      else
        pf_link[cur] = carry->reversed();  // path cur -> prev
      carry = next_link;
      prev = cur;
      cur = next;
    }
  }

  // Identify vertices x and y, witnessed by the two folded edges.
  void unite(int x, int y, const Witness& w) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return;
    reroot_proof(x);
    pf_parent[x] = y;
    pf_link[x] = w;
    dsu[rx] = ry;
  }

  // Flower path u -> v with freely trivial label; every witness used was
  // recorded strictly before `time_limit`.
  void explain(int u, int v, long time_limit, std::vector<Step>& out) const {
    if (u == v) return;
    std::map<int, int> up;  // ancestor -> distance from u
    for (int cur = u, d = 0; cur != -1; cur = pf_parent[cur]) up[cur] = d++;
    int meet = v;
    while (!up.count(meet)) {
      meet = pf_parent[meet];
      if (meet == -1) throw std::logic_error("explain: vertices not equivalent");
    }
    // u -> meet along parent links (forward orientation of each link)
    for (int cur = u; cur != meet; cur = pf_parent[cur])
      expand(*pf_link[cur], time_limit, out);
    // meet -> v: collect v's chain then emit reversed
    std::vector<int> chain;
    for (int cur = v; cur != meet; cur = pf_parent[cur]) chain.push_back(cur);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      expand(pf_link[*it]->reversed(), time_limit, out);
  }

  void expand(const Witness& w, long time_limit, std::vector<Step>& out) const {
    if (w.time >= time_limit)
      throw std::logic_error("explain: witness order violated");
    out.push_back(w.first);
    explain(w.c1, w.c2, w.time, out);
    out.push_back(w.second);
  }

  // ---- construction -------------------------------------------------

  void build_flower(const std::vector<Word>& gens, const std::vector<char>& tr) {
    gen_words = gens;
    trail = tr;
    n_vertices = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Word& w = gens[i];
      if (w.empty()) continue;
      int prev = 0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        int next = (j + 1 == w.size()) ? 0 : n_vertices++;
        const Letter& l = w[j];
        FlowerEdge e;
        e.label = l.gen;
        e.loop = static_cast<int>(i);
        e.last = (j + 1 == w.size());
        e.reading_dir = l.sign;
        if (l.sign > 0) {
          e.src = prev;
          e.dst = next;
        } else {
          e.src = next;
          e.dst = prev;
        }
        edges.push_back(e);
        prev = next;
      }
    }
    dsu.resize(n_vertices);
    for (int v = 0; v < n_vertices; ++v) dsu[v] = v;
    pf_parent.assign(n_vertices, -1);
    pf_link.assign(n_vertices, std::nullopt);
    edsu.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) edsu[e] = static_cast<int>(e);
  }

  void fold() {
    bool changed = true;
    while (changed) {
      changed = false;
      // (vertex class, label) -> lowest live edge class, per direction
      std::map<std::pair<int, char>, int> out_seen, in_seen;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (efind(static_cast<int>(e)) != static_cast<int>(e)) continue;
        int s = find(edges[e].src), d = find(edges[e].dst);
        char l = edges[e].label;
        if (auto it = out_seen.find({s, l}); it != out_seen.end()) {
          fold_pair(it->second, static_cast<int>(e), /*common_src=*/true);
          changed = true;
          break;
        }
        out_seen[{s, l}] = static_cast<int>(e);
        if (auto it = in_seen.find({d, l}); it != in_seen.end()) {
          fold_pair(it->second, static_cast<int>(e), /*common_src=*/false);
          changed = true;
          break;
        }
        in_seen[{d, l}] = static_cast<int>(e);
      }
    }
  }

  void fold_pair(int e, int f, bool common_src) {
    ++fold_clock;
    if (common_src) {
      int x = edges[e].dst, y = edges[f].dst;
      // x --(e backwards)--> src(e) ~ src(f) --(f forwards)--> y
      Witness w{{e, -1}, {f, +1}, edges[e].src, edges[f].src, fold_clock};
      unite(x, y, w);
    } else {
      int x = edges[e].src, y = edges[f].src;
      Witness w{{e, +1}, {f, -1}, edges[e].dst, edges[f].dst, fold_clock};
      unite(x, y, w);
    }
    edsu[efind(f)] = efind(e);
  }

  void trim_and_index() {
    base_class = find(0);
    std::set<int> verts;
    std::vector<int> live;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (efind(static_cast<int>(e)) == static_cast<int>(e)) {
        live.push_back(static_cast<int>(e));
        verts.insert(find(edges[e].src));
        verts.insert(find(edges[e].dst));
      }
    verts.insert(base_class);

    std::map<int, int> degree;
    for (int e : live) {
      degree[find(edges[e].src)]++;
      degree[find(edges[e].dst)]++;
    }
    std::set<int> dead_edges;
    bool again = true;
    while (again) {
      again = false;
      for (int v : verts) {
        if (v == base_class || degree[v] > 1 || !degree.count(v)) continue;
        for (int e : live) {
          if (dead_edges.count(e)) continue;
          int s = find(edges[e].src), d = find(edges[e].dst);
          if (s == v || d == v) {
            dead_edges.insert(e);
            degree[s]--;
            degree[d]--;
            again = true;
          }
        }
        if (again) break;
      }
    }

    core_edges.clear();
    std::set<int> core_verts;
    core_verts.insert(base_class);
    for (int e : live) {
      if (dead_edges.count(e)) continue;
      core_edges.push_back(e);
      core_verts.insert(find(edges[e].src));
      core_verts.insert(find(edges[e].dst));
    }
    core_vertices.assign(core_verts.begin(), core_verts.end());

    out_adj.clear();
    in_adj.clear();
    for (int e : core_edges) {
      auto ko = std::make_pair(find(edges[e].src), edges[e].label);
      auto ki = std::make_pair(find(edges[e].dst), edges[e].label);
      if (out_adj.count(ko) || in_adj.count(ki))
        throw std::logic_error("graph not folded");
      out_adj[ko] = e;
      in_adj[ki] = e;
    }

    canonical_bfs();
  }

  void canonical_bfs() {
    bfs_id.clear();
    bfs_order.clear();
    tree_parent.clear();
    nontree_edges.clear();

    std::set<char> labels;
    for (int e : core_edges) labels.insert(edges[e].label);

    std::queue<int> q;
    q.push(base_class);
    bfs_id[base_class] = 0;
    bfs_order.push_back(base_class);
    std::set<int> tree_edges;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (char l : labels) {
        for (int dir : {+1, -1}) {
          auto& adj = dir > 0 ? out_adj : in_adj;
          auto it = adj.find({v, l});
          if (it == adj.end()) continue;
          int e = it->second;
          int w = dir > 0 ? find(edges[e].dst) : find(edges[e].src);
          if (!bfs_id.count(w)) {
            bfs_id[w] = static_cast<int>(bfs_order.size());
            bfs_order.push_back(w);
            tree_parent[w] = {v, Step{e, dir}};
            tree_edges.insert(e);
            q.push(w);
          }
        }
      }
    }
    // Basis order: by (bfs id of src, label, bfs id of dst, edge rep).
    std::vector<int> rest;
    for (int e : core_edges)
      if (!tree_edges.count(e)) rest.push_back(e);
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
      auto key = [&](int e) {
        return std::tuple(bfs_id.at(find(edges[e].src)), edges[e].label,
                          bfs_id.at(find(edges[e].dst)), e);
      };
      return key(a) < key(b);
    });
    nontree_edges = rest;
  }

  // ---- queries -------------------------------------------------------

  std::optional<std::vector<Step>> trace(const Word& w) const {
    std::vector<Step> steps;
    int cur = base_class;
    for (const Letter& l : w.letters()) {
      auto& adj = l.sign > 0 ? out_adj : in_adj;
      auto it = adj.find({cur, l.gen});
      if (it == adj.end()) return std::nullopt;
      int e = it->second;
      steps.push_back({e, l.sign});
      cur = l.sign > 0 ? find(edges[e].dst) : find(edges[e].src);
    }
    if (cur != base_class) return std::nullopt;
    return steps;
  }

  Word tree_path_to_base(int vclass) const {
    // Label word of the tree path from vclass back to the base.
    Path letters;
    int cur = vclass;
    while (cur != base_class) {
      auto& [parent, step] = tree_parent.at(cur);
      letters.push_back(Letter(edges[step.edge].label, -step.dir));
      cur = parent;
    }
    return Word::from_letters(letters);
  }
};

SubgroupGraph SubgroupGraph::build(const std::vector<Word>& gens,
                                   const std::vector<char>& trail) {
  if (!trail.empty() && trail.size() != gens.size())
    throw ContractError("trail names must match generator count");
  auto impl = std::make_shared<Impl>();
  impl->build_flower(gens, trail);
  impl->fold();
  impl->trim_and_index();
  return SubgroupGraph{std::move(impl)};
}

SubgroupGraph SubgroupGraph::image_graph(const Endomorphism& phi, int k) {
  std::vector<Word> gens;
  std::vector<char> trail;
  for (char g : phi.alphabet().generators()) {
    gens.push_back(phi.apply(Word::parse(std::string(1, g)), k));
    trail.push_back(g);
  }
  return build(gens, trail);
}

bool SubgroupGraph::member(const Word& w) const { return impl_->trace(w).has_value(); }

std::optional<Word> SubgroupGraph::member_preimage(const Word& w) const {
  const Impl& im = *impl_;
  if (im.trail.empty()) return std::nullopt;
  auto steps = im.trace(w);
  if (!steps) return std::nullopt;

  // Lift the folded trace to a flower path, repairing the joints with
  // trivially labeled connector paths from the fold history.
  std::vector<Step> flower_path;
  int cur = 0;  // flower base vertex
  long now = im.fold_clock + 1;
  for (const Step& s : *steps) {
    Step lifted{im.efind(s.edge), s.dir};
    im.explain(cur, im.entry(lifted), now, flower_path);
    flower_path.push_back(lifted);
    cur = im.exit(lifted);
  }
  im.explain(cur, 0, now, flower_path);

  // Read off the basis letters: one per crossing of a loop's last edge.
  Path out;
  for (const Step& s : flower_path) {
    const auto& e = im.edges[s.edge];
    if (!e.last) continue;
    char t = im.trail[e.loop];
    int sign = (s.dir == e.reading_dir) ? +1 : -1;
    if (!out.empty() && out.back() == Letter(t, -sign))
      out.pop_back();
    else
      out.push_back(Letter(t, sign));
  }
  Word u = Word::from_letters(out);

  // The contract is exact: substituting generator words into u must give
  // back w on the nose.
  Word check;
  for (const Letter& l : u.letters()) {
    int loop = -1;
    for (std::size_t i = 0; i < im.trail.size(); ++i)
      if (im.trail[i] == l.gen) {
        loop = static_cast<int>(i);
        break;
      }
    Word g = im.gen_words[loop];
    check = check.concat(l.sign > 0 ? g : g.inverse());
  }
  if (check != w) throw std::logic_error("preimage readback mismatch");
  return u;
}

std::size_t SubgroupGraph::vertex_count() const { return impl_->core_vertices.size(); }
std::size_t SubgroupGraph::edge_count() const { return impl_->core_edges.size(); }

int SubgroupGraph::rank() const {
  return static_cast<int>(impl_->core_edges.size()) -
         static_cast<int>(impl_->core_vertices.size()) + 1;
}

std::vector<Word> SubgroupGraph::basis() const {
  const Impl& im = *impl_;
  std::vector<Word> out;
  for (int e : im.nontree_edges) {
    Word to_src = im.tree_path_to_base(im.find(im.edges[e].src)).inverse();
    Word mid = Word::parse(std::string(1, im.edges[e].label));
    Word from_dst = im.tree_path_to_base(im.find(im.edges[e].dst));
    out.push_back(to_src.concat(mid).concat(from_dst));
  }
  return out;
}

std::optional<Word> SubgroupGraph::express_in_basis(const Word& w) const {
  const Impl& im = *impl_;
  auto steps = im.trace(w);
  if (!steps) return std::nullopt;
  std::map<int, int> index;
  for (std::size_t i = 0; i < im.nontree_edges.size(); ++i)
    index[im.nontree_edges[i]] = static_cast<int>(i);
  Path out;
  for (const Step& s : *steps) {
    auto it = index.find(s.edge);
    if (it == index.end()) continue;  // tree edge
    out.push_back(Letter(static_cast<char>('a' + it->second), s.dir));
  }
  return Word::from_letters(out);
}

std::string SubgroupGraph::to_dot() const {
  const Impl& im = *impl_;
  std::ostringstream os;
  os << "digraph subgroup {\n";
  for (std::size_t i = 0; i < im.bfs_order.size(); ++i) {
    os << "  v" << i << " [shape=" << (i == 0 ? "doublecircle" : "circle") << "]\n";
  }
  std::vector<std::string> lines;
  for (int e : im.core_edges) {
    std::ostringstream l;
    l << "  v" << im.bfs_id.at(im.find(im.edges[e].src)) << " -> v"
      << im.bfs_id.at(im.find(im.edges[e].dst)) << " [label=\"" << im.edges[e].label
      << "\"]\n";
    lines.push_back(l.str());
  }
  std::sort(lines.begin(), lines.end());
  for (auto& l : lines) os << l;
  os << "}\n";
  return os.str();
}

std::string SubgroupGraph::canonical_encoding() const {
  const Impl& im = *impl_;
  std::vector<std::string> lines;
  for (int e : im.core_edges) {
    std::ostringstream l;
    l << im.bfs_id.at(im.find(im.edges[e].src)) << " " << im.edges[e].label << " "
      << im.bfs_id.at(im.find(im.edges[e].dst));
    lines.push_back(l.str());
  }
  std::sort(lines.begin(), lines.end());
  std::ostringstream os;
  os << im.bfs_order.size() << ";";
  for (auto& l : lines) os << l << ";";
  return os.str();
}

RankSequence image_rank_sequence(const Endomorphism& phi, int i_max) {
  if (i_max < 1) throw ContractError("image_rank_sequence requires i_max >= 1");
  RankSequence rs;
  for (int i = 0; i <= i_max; ++i)
    rs.ranks.push_back(SubgroupGraph::image_graph(phi, i).rank());
  for (int i = 0; i + 1 <= i_max; ++i)
    if (rs.ranks[i] == rs.ranks[i + 1]) {
      rs.m = i;
      break;
    }
  return rs;
}

Monomorphization monomorphize(const Endomorphism& phi, int bound) {
  int n = static_cast<int>(phi.alphabet().size());
  if (bound < 0) bound = n + 1;
  RankSequence rs = image_rank_sequence(phi, bound);
  if (!rs.m)
    throw UnknownOutcome("rank stabilization not witnessed within bound " +
                         std::to_string(bound));
  int m = *rs.m;

  SubgroupGraph g = SubgroupGraph::image_graph(phi, m);
  std::vector<Word> basis_words = g.basis();
  if (basis_words.empty())
    throw InputError("phi has trivial stable image; no free basis exists");

  std::vector<char> b_gens;
  for (std::size_t i = 0; i < basis_words.size(); ++i)
    b_gens.push_back(static_cast<char>('a' + i));
  Alphabet B(b_gens);

  std::map<char, Word> prime_table;
  for (std::size_t i = 0; i < basis_words.size(); ++i) {
    auto img = g.express_in_basis(phi.apply(basis_words[i]));
    if (!img) throw std::logic_error("phi(basis) escaped the stable image");
    prime_table.emplace(b_gens[i], *img);
  }

  std::map<char, Word> rho;
  for (char a : phi.alphabet().generators()) {
    auto img = g.express_in_basis(phi.apply(Word::parse(std::string(1, a)), m));
    if (!img) throw std::logic_error("phi^m(a) escaped the stable image");
    rho.emplace(a, *img);
  }

  Monomorphization out;
  out.m = m;
  out.basis_alphabet = B;
  out.basis_words = std::move(basis_words);
  out.phi_prime = Endomorphism(B, std::move(prime_table));
  out.rho_prime = std::move(rho);
  return out;
}

}  // namespace hnn
