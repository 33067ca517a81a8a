#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galoisforge/algebra.hpp"
#include "galoisforge/caps.hpp"
#include "galoisforge/kernel.hpp"

// Splitting actions of kernel pairs in finite sets (absolute) and in finite
// sets over a base (relative), Galois structures and verdicts.
namespace galoisforge::galois {

enum class Variant
{
  Absolute,
  Relative
};

std::string to_string(Variant v);

struct SplittingStructure
{
  Variant variant = Variant::Absolute;
  kernel::FinMap pi;
  algebra::GroupAction absolute;   // set when variant == Absolute
  algebra::BundleAction relative;  // set when variant == Relative
  // witness[a] = index in kernel_pair(pi).pairs() of the image of arrow a of
  // the action groupoid, i.e. (g, x) |-> (x, g.x).
  std::vector<int> witness;

  // Group names, one per fiber for the relative variant.
  std::vector<std::string> group_names() const;

  // Group element acting at x, given as an element of the group over pi(x).
  int act(int g, int x) const;
  int group_order_at(int x) const;
};

// Builds the witness and checks it is a groupoid isomorphism onto the kernel
// pair; nullopt when the action does not split KP_pi.
std::optional<std::vector<int>> splitting_witness(kernel::FinMap const &pi,
                                                  algebra::GroupAction const &a);
std::optional<std::vector<int>> splitting_witness(algebra::BundleAction const &a);

// One structure per isomorphism class of pairs (G, action), classes ordered
// by canonical group table. Empty when the fibers have different sizes.
std::vector<SplittingStructure> enumerate_splittings_absolute(kernel::FinMap const &pi,
                                                              Caps const &caps = {});

// One structure per tuple of fiberwise group types, in lexicographic order of
// the per-fiber canonical tables.
std::vector<SplittingStructure> enumerate_splittings_relative(kernel::FinMap const &pi,
                                                              Caps const &caps = {});

// Absolute splittings by subgroups of a given permutation group on the total
// space: every subgroup acting freely and transitively on each fiber, one per
// isomorphism class.
std::vector<SplittingStructure> enumerate_splittings_within(kernel::FinMap const &pi,
                                                            algebra::PermutationGroup const &ambient,
                                                            Caps const &caps = {});

// The chain G(*) -> G(B) -> Aut_B(M). For the absolute variant G(*) = G and
// G(B) = maps B -> G; for the relative variant both are the sections group.
struct GlobalElements
{
  algebra::FiniteGroup star;
  algebra::FiniteGroup base;
  std::vector<int> star_to_base;
  std::vector<kernel::FinMap> base_to_aut;
  std::vector<kernel::FinMap> star_to_aut;
  bool star_to_base_injective_hom = false;
  bool base_to_aut_injective_hom = false;
  bool image_in_aut = false;
};

GlobalElements induced_global_elements(SplittingStructure const &s, Caps const &caps = {});

// G(*) -> Aut_B(M) is a group isomorphism onto all of Aut_B(M).
bool is_galois_structure(SplittingStructure const &s, Caps const &caps = {});

// x |-> g(x).x, where g assigns to each x an element of the group over pi(x).
kernel::FinMap end_from_section(SplittingStructure const &s, std::vector<int> const &g);

// Exhaustively checks that g |-> alpha_g is a bijection from G(M) onto the
// maps M -> M over B.
bool end_bijection_holds(SplittingStructure const &s, Caps const &caps = {});

struct CompositionDefects
{
  // Sections (g, h) with alpha_g∘alpha_h != alpha_{gh}, product pointwise.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> example;
  std::size_t defect_count = 0;
  std::size_t pairs_checked = 0;
  // alpha_{gh} = alpha_g∘alpha_h for all g constant on fibers and all h.
  bool base_sections_compatible = false;
};

CompositionDefects composition_defects(SplittingStructure const &s, Caps const &caps = {});

enum class VerdictKind
{
  NotEpi,
  NotNormal,
  NoSplitting,
  MultipleStructures,
  NoGaloisStructure,
  Galois
};

std::string to_string(VerdictKind k);

struct Verdict
{
  VerdictKind kind = VerdictKind::NotEpi;
  std::vector<std::string> group; // names, one entry per fiber when relative
};

struct GaloisReport
{
  kernel::EpiClassification classification;
  std::vector<SplittingStructure> splittings_absolute;
  std::vector<SplittingStructure> splittings_relative;
  std::vector<int> galois_absolute; // indices into splittings_absolute
  std::vector<int> galois_relative;
  Verdict verdict_absolute;
  Verdict verdict_relative;
};

GaloisReport galois_verdict(kernel::FinMap const &pi, Caps const &caps = {});

} // namespace galoisforge::galois
