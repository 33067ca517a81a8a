#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galoisforge/algebra.hpp"
#include "galoisforge/caps.hpp"
#include "galoisforge/correspondence.hpp"
#include "galoisforge/kernel.hpp"

// Finite covers of finite graphs: construction from monodromy, deck groups,
// the Galois-cover criteria and intermediate covers.
namespace galoisforge::covers {

// Directed multigraph; loops and parallel edges allowed.
struct Graph
{
  std::size_t vertices = 0;
  std::vector<std::pair<int, int>> edges;

  void validate() const;
  // Component label per vertex (numbered by minimal vertex), ignoring direction.
  std::vector<int> components() const;
  bool connected() const;
};

struct CoverInstance
{
  Graph base;
  Graph total;
  kernel::FinMap proj_v; // total vertices -> base vertices
  kernel::FinMap proj_e; // total edges -> base edges

  // Incidence is preserved and every base edge at proj(v) has exactly one
  // lift leaving (resp. entering) v. Throws InvalidCover.
  void validate() const;
  std::size_t sheets() const;
};

// Total vertex (v, i) is v*n + i and total edge (e, i) is e*n + i, running
// (u, i) -> (v, perm_e(i)) for a base edge e: u -> v. `sheets` is needed only
// when the base has no edges.
CoverInstance cover_from_monodromy(Graph const &base, std::vector<std::vector<int>> const &perms,
                                   std::optional<int> sheets = std::nullopt);

// Inverse of cover_from_monodromy for covers laid out as above.
std::vector<std::vector<int>> recover_monodromy(CoverInstance const &c);

struct DeckGroup
{
  algebra::PermutationGroup vertices;      // action on total vertices
  std::vector<std::vector<int>> edge_perms; // per element, same order
};

// Every automorphism of the total graph over the base, as vertex and edge
// permutations. Throws CapExceeded("perm_group_order") when too many.
DeckGroup deck_group(CoverInstance const &c, Caps const &caps = {});

// Every component of M x_B M maps isomorphically onto M under the first
// projection. Throws ConnectednessRequired when M is disconnected.
bool pullback_trivializes(CoverInstance const &c);

struct CoverVerdict
{
  bool galois_cover = false;    // pullback trivializes
  bool kp_splits = false;       // a deck subgroup splits the kernel pair of proj_v
  bool deck_transitive = false; // on the fiber over base vertex 0
  bool agree = false;
  algebra::FiniteGroup group;
  std::string group_name;
};

// Throws ConnectednessRequired unless base and total are connected.
CoverVerdict cover_galois_verdict(CoverInstance const &c, Caps const &caps = {});

struct IntermediateCovers
{
  galois::SplittingStructure splitting;
  correspondence::CorrespondenceResult correspondence;
  std::vector<CoverInstance> covers; // one per quotient, same order
};

// Throws NotGalois unless the cover is Galois.
IntermediateCovers intermediate_covers(CoverInstance const &c, Caps const &caps = {});

// The quotient graph of M by a vertex quotient compatible with the deck
// action, as a cover of the same base.
CoverInstance quotient_cover(CoverInstance const &c, kernel::FinMap const &q);

std::string to_dot(CoverInstance const &c, std::string const &name = "cover");

} // namespace galoisforge::covers
