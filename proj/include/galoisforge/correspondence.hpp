#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galoisforge/caps.hpp"
#include "galoisforge/galois.hpp"
#include "galoisforge/kernel.hpp"

// The subgroup / intermediate-quotient correspondence for a splitting.
namespace galoisforge::correspondence {

// A finite poset with display labels; leq holds (i, j) when node i <= node j,
// sorted ascending.
struct Lattice
{
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> leq;

  std::size_t size() const
  { return labels.size(); }

  bool le(int i, int j) const;
  bool is_partial_order() const;
  // Covering pairs (i, j): i < j with nothing strictly between.
  std::vector<std::pair<int, int>> hasse() const;
};

// Congruences below KP_pi and the quotients pi factors through, related by
// kernel pair and coequalizer. Nodes are ordered with more classes first and
// ties broken by the restricted growth string of the partition.
struct GaloisConnection
{
  std::vector<kernel::Congruence> congruences;
  std::vector<kernel::FinMap> quotients;
  Lattice rel;  // ordered by inclusion
  Lattice quot; // q <= q' when KP_q' is contained in KP_q
  std::vector<int> kp;    // quotient index -> congruence index
  std::vector<int> coeq;  // congruence index -> quotient index
};

GaloisConnection galois_connection(kernel::FinMap const &pi, Caps const &caps = {});

// A subgroup of the splitting group: one sorted element list for the
// absolute variant, one per base point for the relative variant.
using Subgroup = std::vector<std::vector<int>>;

std::string subgroup_label(Subgroup const &h);
std::string partition_label(kernel::FinMap const &q);

// Every subgroup of the splitting group (fiberwise families when relative),
// ordered by total size then lexicographically.
std::vector<Subgroup> splitting_subgroups(galois::SplittingStructure const &s, Caps const &caps = {});

// The coequalizer of the restricted action and the second projection.
kernel::FinMap quotient_by_subgroup(galois::SplittingStructure const &s, Subgroup const &h);

// The restriction of the action to H, as a splitting of KP_{q_H}.
galois::SplittingStructure restrict_to_subgroup(galois::SplittingStructure const &s,
                                                Subgroup const &h);

struct Hypotheses
{
  bool a = false;
  // A wide subgroupoid not of the form H x M, as sorted arrow indices.
  std::optional<std::vector<int>> certificate;
  std::size_t wide_subgroupoids = 0;
  std::size_t product_form = 0;
  bool b = false;
};

// `blocks` restricts subgroupoids to unions of blocks of arrows (see
// groupoid::wide_subgroupoids); empty means every arrow subset is a subobject.
Hypotheses check_hypotheses(galois::SplittingStructure const &s, Caps const &caps = {},
                            std::vector<int> const &blocks = {});

struct Restriction
{
  galois::SplittingStructure structure;
  bool witness_verified = false;
  bool galois_structure = false;
};

struct CorrespondenceResult
{
  Hypotheses hypotheses;
  // "full" when every subobject quotient is paired, "realizable" when the
  // pairing is restricted to quotients whose kernel pair comes from a
  // subgroup.
  std::string scope;
  std::vector<Subgroup> subgroups;
  Lattice subgroup_lattice;
  std::vector<kernel::FinMap> quotients;
  Lattice quotient_lattice;
  std::size_t candidate_quotients = 0;
  std::vector<std::pair<int, int>> bijection; // (subgroup index, quotient index)
  bool round_trip_subgroups = false;
  bool round_trip_quotients = false;
  bool order_reversal_verified = false;
  std::vector<Restriction> restrictions;
};

struct CorrespondenceOptions
{
  bool require_hypotheses = false;
  std::vector<int> blocks;
};

// Throws HypothesisFailed when require_hypotheses is set and (a) or (b) fails.
CorrespondenceResult full_correspondence(galois::SplittingStructure const &s,
                                         Caps const &caps = {},
                                         CorrespondenceOptions const &options = {});

} // namespace galoisforge::correspondence
