#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galoisforge/caps.hpp"

// The category of finite sets: objects, arrows, the limits and colimits the
// rest of the library is built from, and the epimorphism taxonomy.
namespace galoisforge::kernel {

// Elements of a finite set are the indices 0..size-1; labels are for display.
struct FinSet
{
  FinSet() = default;
  explicit FinSet(std::size_t n) : size(n) {}
  explicit FinSet(std::vector<std::string> element_labels);

  std::size_t size = 0;
  std::vector<std::string> labels;
};

class FinMap
{
public:
  FinMap() = default;
  FinMap(FinSet dom, FinSet cod, std::vector<int> table);
  FinMap(std::size_t dom, std::size_t cod, std::vector<int> table);

  static FinMap identity(FinSet s);
  static FinMap identity(std::size_t n)
  { return identity(FinSet(n)); }

  FinSet const &dom() const
  { return _dom; }

  FinSet const &cod() const
  { return _cod; }

  std::vector<int> const &table() const
  { return _table; }

  int operator()(int x) const
  { return _table[static_cast<std::size_t>(x)]; }

  bool is_surjective() const;
  bool is_injective() const;
  bool is_bijective() const
  { return is_surjective() && is_injective(); }

  // Preimages of every codomain element, each sorted ascending.
  std::vector<std::vector<int>> fibers() const;

  friend bool operator==(FinMap const &a, FinMap const &b)
  {
    return a._dom.size == b._dom.size && a._cod.size == b._cod.size &&
           a._table == b._table;
  }

private:
  FinSet _dom;
  FinSet _cod;
  std::vector<int> _table;
};

// An equivalence relation on a carrier, stored as its sorted pair list.
class Congruence
{
public:
  Congruence() = default;

  // Validates reflexivity, symmetry and transitivity.
  Congruence(FinSet carrier, std::vector<std::pair<int, int>> pairs);

  // The relation "same label".
  static Congruence from_labels(std::vector<int> const &labels);

  FinSet const &carrier() const
  { return _carrier; }

  std::vector<std::pair<int, int>> const &pairs() const
  { return _pairs; }

  bool contains(int x, int y) const;

  // Index of (x, y) in pairs(), or -1.
  int index_of(int x, int y) const;

  // Canonical class labelling: classes numbered by their minimal element.
  std::vector<int> classes() const;

  bool is_contained_in(Congruence const &other) const;

  friend bool operator==(Congruence const &a, Congruence const &b)
  { return a._carrier.size == b._carrier.size && a._pairs == b._pairs; }

private:
  FinSet _carrier;
  std::vector<std::pair<int, int>> _pairs;
};

FinMap compose(FinMap const &f, FinMap const &g);

struct FiberedProduct
{
  FinSet apex;
  FinMap p1;
  FinMap p2;
  std::vector<std::pair<int, int>> elements;
};

FiberedProduct fibered_product(FinMap const &f, FinMap const &g);

Congruence kernel_pair(FinMap const &pi);

FinMap coequalizer(FinMap const &f, FinMap const &g);

// Quotient map onto the classes of a labelling, classes ordered by their
// minimal element. Two labellings give the same map iff they induce the same
// partition.
FinMap canonical_quotient(std::vector<int> const &labels);

// Quotient of M by the congruence (its coequalizer in finite sets).
FinMap quotient(Congruence const &c);

// The unique c with c∘q = pi, if pi is constant on the classes of q.
std::optional<FinMap> comparison(FinMap const &q, FinMap const &pi);

// True when q and pi are the same quotient of their common domain, i.e. the
// comparison map exists and is a bijection.
bool isomorphic_under(FinMap const &q, FinMap const &pi);

// Canonical partition of the domain into the fibers of f (labels numbered by
// minimal element).
std::vector<int> partition_of(FinMap const &f);

std::vector<FinMap> aut_over_base(FinMap const &pi, Caps const &caps = {});

// |Aut_B(M)| = product of fiber factorials, saturating at the cap + 1.
std::size_t aut_over_base_order(FinMap const &pi, std::size_t saturate_at);

// A generating set of Aut_B(M): adjacent transpositions inside each fiber.
std::vector<FinMap> aut_over_base_generators(FinMap const &pi);

// Orbit partition of a permutation group given by generators on n points.
std::vector<int> orbit_labels(std::size_t n, std::vector<FinMap> const &generators);

// Decides whether pi is the categorical quotient of its domain by the group
// generated by `generators` (all of which must fix pi): the orbit quotient
// must agree with pi, and every invariant map into a test codomain must
// factor uniquely through pi.
bool is_categorical_quotient(FinMap const &pi,
                             std::vector<FinMap> const &generators,
                             Caps const &caps = {});

bool is_normal_epi(FinMap const &pi, Caps const &caps = {});
bool is_strict_epi(FinMap const &pi);

struct EpiClassification
{
  bool epi = false;
  bool regular = false;
  bool effective = false;
  bool strict = false;
  bool normal = false;
};

EpiClassification epi_classification(FinMap const &pi, Caps const &caps = {});

// Restricted growth strings of length n: every set partition exactly once, in
// lexicographic order.
std::vector<std::vector<int>> set_partitions(std::size_t n);

} // namespace galoisforge::kernel
