#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "galoisforge/algebra.hpp"
#include "galoisforge/caps.hpp"
#include "galoisforge/kernel.hpp"

// Finite groupoids over a fixed object set: action groupoids, congruences
// viewed as groupoids, isomorphisms fixing objects, and wide subgroupoids.
namespace galoisforge::groupoid {

class FiniteGroupoid
{
public:
  // compose(g, f) is called for every pair with tgt(f) == src(g) and must
  // return the arrow g∘f.
  using Composer = std::function<int(int g, int f)>;

  FiniteGroupoid() = default;
  FiniteGroupoid(std::size_t objects, std::vector<int> src, std::vector<int> tgt,
                 std::vector<int> ident, std::vector<int> inv, Composer const &compose,
                 std::vector<std::string> arrow_labels = {});

  kernel::FinSet objects() const
  { return kernel::FinSet(_objects); }

  kernel::FinSet arrows() const
  { return kernel::FinSet(_src.size()); }

  std::size_t object_count() const
  { return _objects; }

  std::size_t arrow_count() const
  { return _src.size(); }

  int src(int a) const
  { return _src[a]; }

  int tgt(int a) const
  { return _tgt[a]; }

  int ident(int x) const
  { return _ident[x]; }

  int inv(int a) const
  { return _inv[a]; }

  // g∘f, or -1 when tgt(f) != src(g).
  int comp(int g, int f) const;

  kernel::FinMap src_map() const;
  kernel::FinMap tgt_map() const;

  // Arrows leaving x, ascending.
  std::vector<int> const &out_arrows(int x) const
  { return _out[x]; }

  std::vector<std::string> const &arrow_labels() const
  { return _labels; }

  // Checks every groupoid axiom exhaustively; throws InvalidGroupoid.
  void validate() const;

  // The groupoid on the same objects with only the given arrows, re-indexed
  // in the given order. Throws InvalidGroupoid if the subset is not closed.
  FiniteGroupoid restrict(std::vector<int> const &arrow_subset) const;

private:
  std::size_t _objects = 0;
  std::vector<int> _src, _tgt, _ident, _inv;
  std::vector<std::vector<int>> _out;
  std::vector<int> _out_pos;
  std::vector<std::vector<int>> _after; // _after[f][k] = out(tgt f)[k] ∘ f
  std::vector<std::string> _labels;
};

// Arrows (g, x) at index g*|M| + x; s(g,x) = x, t(g,x) = g.x and
// (h, g.x)∘(g, x) = (hg, x).
FiniteGroupoid action_groupoid(algebra::GroupAction const &a);

// Arrows (g, x) for x in M and g in the group over pi(x), grouped by base
// point, then group element, then fiber position.
FiniteGroupoid action_groupoid(algebra::BundleAction const &a);

int relative_arrow_index(algebra::BundleAction const &a, int g, int x);

// Arrows are the pairs of the congruence in sorted order; s = first
// projection, t = second, (y,z)∘(x,y) = (x,z).
FiniteGroupoid congruence_as_groupoid(kernel::Congruence const &c);

// Does the arrow bijection phi commute with src, tgt, comp, ident and inv
// while fixing every object?
bool is_iso_over_objects(FiniteGroupoid const &g1, FiniteGroupoid const &g2,
                         std::vector<int> const &phi);

std::optional<std::vector<int>> groupoid_iso_over_objects(FiniteGroupoid const &g1,
                                                          FiniteGroupoid const &g2);

// Wide subgroupoids (all identities, closed under comp and inv), each as a
// sorted arrow list, ordered by size then lexicographically. When `blocks`
// is non-empty (one block id per arrow) only unions of blocks are admitted:
// this models subobjects in categories where the arrow object has more
// structure than its underlying set.
std::vector<std::vector<int>> wide_subgroupoids(FiniteGroupoid const &g, Caps const &caps = {},
                                                std::vector<int> const &blocks = {});

// If `sub` equals H x M for a subgroup H, returns H (sorted).
std::optional<std::vector<int>> is_H_ltimes_M(FiniteGroupoid const &g,
                                              std::vector<int> const &sub,
                                              algebra::GroupAction const &a);

// Fiberwise version: returns the family (H_b) with sub = {(h,x) | h in H_pi(x)}.
std::optional<std::vector<std::vector<int>>> is_H_ltimes_M(FiniteGroupoid const &g,
                                                           std::vector<int> const &sub,
                                                           algebra::BundleAction const &a);

// Objects as nodes, non-identity arrows as directed edges.
std::string to_dot(FiniteGroupoid const &g, std::string const &name = "groupoid");

} // namespace galoisforge::groupoid
