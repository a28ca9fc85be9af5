#pragma once

#include <optional>
#include <string>
#include <vector>

#include "towerlab/omega.hpp"
#include "towerlab/tower.hpp"

namespace towerlab {

struct LatticeNode {
  std::string label;
  Int degree;             // power of two
  std::string generator;  // description sufficient to re-derive the node
};

/// Subfield diagram: nodes plus (subfield, superfield) edges, each of
/// relative degree 2 and certified by an exact membership or square
/// test during construction.
struct LatticeGraph {
  std::vector<LatticeNode> nodes;
  std::vector<std::pair<int, int>> edges;
};

/// Square-free D with Q(sqrt(D)) inside the tower field: one value for
/// thin pairs, the three of the Klein level otherwise, each certified
/// by a square-test witness at level 2. Requires the pair verified in
/// Omega to depth >= 2.
std::vector<Int> quadratic_subfields(const Pair& pair, int depth);

LatticeGraph build_lattice(const Pair& pair, int depth);

struct EmbedStep {
  int level = 0;
  bool ok = false;
  std::string witness;  // nested-radical rendering when found
};

/// Attempts to realize the source tower's generators inside the target
/// tower at depth d by iterated witness extraction; stops at the first
/// level with no witness. Failure is data, not an error.
std::vector<EmbedStep> embed_chain(const Pair& source, const Pair& target, int source_depth,
                                   int target_depth);

/// The five exact checks behind the (2,1) subfield diagram.
struct Verify21Report {
  int depth = 0;
  bool sqrt3_not_in_k20 = false;    // (i)
  bool x21_in_k20_sqrt3 = false;    // (ii)
  bool m_strictly_between = false;  // (iii)
  bool m_not_nested = false;        // (iv)
  bool three_per_degree = false;    // (v)
  std::vector<Int> degree2_squarefree;  // generator squares' square-free parts at degree 2
  std::string galois_annotation;
  std::vector<std::string> details;

  bool all_passed() const {
    return sqrt3_not_in_k20 && x21_in_k20_sqrt3 && m_strictly_between && m_not_nested &&
           three_per_degree;
  }
};

Verify21Report verify_21_lattice(int depth);

/// Deterministic DOT rendering: nodes ranked by degree, ordered by
/// (degree, label); solid edges are the certified degree-2 inclusions.
std::string to_dot(const LatticeGraph& graph);

/// {"nodes":[{label,degree,generator}],"edges":[[i,j]]}
std::string lattice_json(const LatticeGraph& graph);

}  // namespace towerlab
