#pragma once

// Finite balls of the Cayley 2-complex: vertices are group elements keyed
// by exact canonical forms, edges are labeled by generators and the stable
// letter, 2-cells fill relator and conjugation boundaries. Serves as the
// independent brute-force oracle for the region classification and the
// homotopy straightness checks.

#include <map>

#include "hnn/canonical.hpp"

namespace hnn {

struct BallVertex {
  CanonicalForm form;
  Word witness;  // some shortest word reaching the vertex
  int dist = 0;
  long level = 0;
};

struct BallEdge {
  int src = 0;
  char label = 0;
  int dst = 0;
};

struct BallCell {
  enum class Kind { Relator, Conjugation };
  Kind kind = Kind::Relator;
  int tag = 0;                 // relator index, or generator index
  int base = 0;                // vertex the boundary is read from
  std::vector<int> boundary;   // vertex ids along the boundary loop
};

class Ball {
 public:
  // BFS to the given radius; requires exact equality (relator-free bases,
  // or depth-0 presentations with a normal-form oracle), otherwise throws
  // ContractError("unsupported presentation ...").
  static Ball build(const HnnPresentation& p, int radius);

  int radius() const { return radius_; }
  const HnnPresentation& presentation() const { return p_; }
  const std::vector<BallVertex>& vertices() const { return vertices_; }
  const std::vector<BallEdge>& edges() const { return edges_; }
  const std::vector<BallCell>& cells() const { return cells_; }

  // Vertex id of the element represented by w, if inside the ball.
  std::optional<int> find(const Word& w) const;

  std::string to_dot(const std::map<int, std::string>& annotations = {}) const;
  std::string to_json_text() const;
  static Ball from_json_text(const std::string& text);

 private:
  explicit Ball(HnnPresentation p) : p_(std::move(p)) {}
  HnnPresentation p_;
  int radius_ = 0;
  std::vector<BallVertex> vertices_;
  std::vector<BallEdge> edges_;
  std::vector<BallCell> cells_;
  std::map<std::string, int> index_;

  std::string key(const CanonicalForm& cf) const;
};

// Connected components of the 1-skeleton after deleting the vertices where
// `removed[id]` is true: result[id] = least vertex id in its component, or
// -1 for removed vertices.
std::vector<int> components_minus(const Ball& ball, const std::vector<bool>& removed);

}  // namespace hnn
