#pragma once

// Folded subgroup graphs of finitely generated subgroups of free groups.
// Decides membership by tracing words through the folded core graph, and,
// for graphs built from the images of an endomorphism, reconstructs an
// explicit preimage from edge provenance recorded during folding.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hnn/word.hpp"

namespace hnn {

class SubgroupGraph {
 public:
  // Folds the bouquet of loops spelling `gens`. When `trail` names are
  // given (one per generator word), every bouquet edge remembers which
  // loop it came from and membership can report a preimage word over the
  // trail alphabet.
  static SubgroupGraph build(const std::vector<Word>& gens,
                             const std::vector<char>& trail = {});

  // Graph of phi^k(F(A)), trails named by the alphabet of phi.
  static SubgroupGraph image_graph(const Endomorphism& phi, int k = 1);

  bool member(const Word& w) const;

  // For trail-built graphs: some u over the trail alphabet with the
  // property that substituting each trail letter by its generator word
  // reproduces w exactly (after free reduction). nullopt if w is not a
  // member or the graph carries no trails.
  std::optional<Word> member_preimage(const Word& w) const;

  std::size_t vertex_count() const;
  std::size_t edge_count() const;
  int rank() const;  // E - V + 1 on the folded core

  // Tree basis of the subgroup: one freely reduced word per non-tree edge
  // of a BFS spanning tree, deterministic order.
  std::vector<Word> basis() const;
  // Expresses a member word in that basis; letters are 'a' + basis index.
  std::optional<Word> express_in_basis(const Word& w) const;

  std::string to_dot() const;
  // Label-deterministic BFS encoding; equal iff graphs are isomorphic
  // respecting base vertex and labels.
  std::string canonical_encoding() const;

 private:
  struct Impl;
  explicit SubgroupGraph(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct RankSequence {
  std::vector<int> ranks;   // ranks[i] = rank of phi^i(F(A))
  std::optional<int> m;     // least index with ranks[m] == ranks[m+1]
};

RankSequence image_rank_sequence(const Endomorphism& phi, int i_max);

struct Monomorphization {
  int m = 0;                      // stabilization index
  Alphabet basis_alphabet;        // B, free basis of phi^m(F(A))
  std::vector<Word> basis_words;  // basis elements as A-words, in order
  Endomorphism phi_prime;         // phi restricted to phi^m(F), in basis B
  std::map<char, Word> rho_prime; // a -> phi^m(a) rewritten as a B-word
};

// Replaces phi by an injective endomorphism of a free basis of its stable
// image; rho_prime extends to the HNN presentation by fixing the stable
// letter. Throws UnknownOutcome if ranks do not stabilize within `bound`
// (with bound >= |A| + 1 stabilization is guaranteed).
Monomorphization monomorphize(const Endomorphism& phi, int bound = -1);

}  // namespace hnn
