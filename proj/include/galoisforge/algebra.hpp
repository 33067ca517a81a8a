#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "galoisforge/caps.hpp"
#include "galoisforge/kernel.hpp"

// Finite groups given by Cayley tables, their actions on finite sets, and
// group bundles (fiberwise families of groups over a base set).
namespace galoisforge::algebra {

using Table = std::vector<std::vector<int>>;

class FiniteGroup
{
public:
  // The trivial group.
  FiniteGroup();

  int order() const
  { return static_cast<int>(_cayley.size()); }

  int identity() const
  { return _identity; }

  int mul(int a, int b) const
  { return _cayley[a][b]; }

  int inv(int a) const
  { return _inverse[a]; }

  Table const &cayley() const
  { return _cayley; }

  std::vector<int> const &inverses() const
  { return _inverse; }

  int element_order(int g) const;

  friend bool operator==(FiniteGroup const &a, FiniteGroup const &b)
  { return a._cayley == b._cayley; }

private:
  friend FiniteGroup check_group(Table cayley);

  Table _cayley;
  int _identity = 0;
  std::vector<int> _inverse;
};

// Validates closure, associativity, identity and inverses.
FiniteGroup check_group(Table cayley);

FiniteGroup cyclic_group(int n);
FiniteGroup klein_four_group();
FiniteGroup direct_product(FiniteGroup const &a, FiniteGroup const &b);

// act[g][x] = g.x
class GroupAction
{
public:
  GroupAction() = default;
  GroupAction(FiniteGroup group, kernel::FinSet carrier, Table act);

  FiniteGroup const &group() const
  { return _group; }

  kernel::FinSet const &carrier() const
  { return _carrier; }

  Table const &table() const
  { return _act; }

  int apply(int g, int x) const
  { return _act[g][x]; }

  kernel::FinMap as_permutation(int g) const;

  bool is_free() const;
  bool is_transitive() const;

private:
  FiniteGroup _group;
  kernel::FinSet _carrier;
  Table _act;
};

struct GroupBundle
{
  GroupBundle() = default;
  GroupBundle(kernel::FinSet base, std::vector<FiniteGroup> fibers);

  kernel::FinSet base;
  std::vector<FiniteGroup> fibers;
};

// A bundle acting on an arrow pi: M -> B. fiber_actions[b] is an action of
// bundle.fibers[b] on the local indices 0..k-1 of the sorted fiber over b.
class BundleAction
{
public:
  BundleAction() = default;
  BundleAction(GroupBundle bundle, kernel::FinMap pi, std::vector<GroupAction> fiber_actions);

  GroupBundle const &bundle() const
  { return _bundle; }

  kernel::FinMap const &pi() const
  { return _pi; }

  std::vector<GroupAction> const &fiber_actions() const
  { return _actions; }

  std::vector<int> const &fiber(int b) const
  { return _fibers[b]; }

  // g is an element of the group over pi(x).
  int apply(int g, int x) const;

  int local_index(int x) const
  { return _local[x]; }

private:
  GroupBundle _bundle;
  kernel::FinMap _pi;
  std::vector<GroupAction> _actions;
  std::vector<std::vector<int>> _fibers;
  std::vector<int> _local;
};

bool is_subgroup(FiniteGroup const &g, std::vector<int> const &elements);

// Every subgroup as a sorted element set, ordered by size then
// lexicographically.
std::vector<std::vector<int>> subgroups(FiniteGroup const &g, Caps const &caps = {});

// The subgroup re-indexed as a group on 0..k-1 in the order of `elements`.
FiniteGroup subgroup_as_group(FiniteGroup const &g, std::vector<int> const &elements);

// An isomorphism table phi with phi[a*b] = phi[a]*phi[b], if one exists.
std::optional<std::vector<int>> group_iso(FiniteGroup const &g, FiniteGroup const &h);

// Canonical Cayley table: lexicographically least table obtained by
// breadth-first labelling from a generating tuple of minimal length. Equal
// for isomorphic groups and only for them.
Table canonical_form(FiniteGroup const &g);

bool is_abelian(FiniteGroup const &g);

// A short name for the isomorphism type: "1", "Z4", "K4", "S3", "D4", "Q8",
// products of cyclic groups for abelian groups, otherwise "G<order>".
std::string group_name(FiniteGroup const &g);

struct PermutationGroup
{
  FiniteGroup group;
  GroupAction action;
  std::vector<kernel::FinMap> elements; // sorted, identity first
};

// Composition convention: (g*h)(x) = g(h(x)).
PermutationGroup closure_of_permutations(std::vector<kernel::FinMap> const &generators,
                                         std::size_t carrier_size, Caps const &caps = {});

// Every group table on 0..n-1 with identity 0. These are exactly the regular
// permutation groups on n points, row y being the unique element sending 0 to y.
std::vector<Table> regular_group_tables(int n);

// One group per isomorphism type, in canonical form, sorted by table.
std::vector<FiniteGroup> groups_of_order(int n, Caps const &caps = {});

// The direct product of the fibers. Element index is mixed radix with the
// first base point most significant.
FiniteGroup sections(GroupBundle const &bundle, Caps const &caps = {});

// Components of a sections-group element, one per base point.
std::vector<int> section_components(GroupBundle const &bundle, int element);

} // namespace galoisforge::algebra
