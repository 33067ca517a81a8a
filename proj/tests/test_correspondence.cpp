#include <doctest.h>

#include "galoisforge/correspondence.hpp"
#include "galoisforge/error.hpp"
#include "oracles.hpp"

using namespace galoisforge;
using namespace galoisforge::correspondence;
using kernel::FinMap;

namespace {

// Orbit partition of H acting through the splitting, computed directly.
std::vector<int> orbit_partition(galois::SplittingStructure const &s, Subgroup const &h)
{
  auto m = static_cast<int>(s.pi.dom().size);
  std::vector<int> label(m, -1);
  int next = 0;
  for (int x = 0; x < m; ++x) {
    if (label[x] >= 0)
      continue;
    auto const &hx = h.size() == 1 ? h[0] : h[s.pi(x)];
    for (int g : hx)
      label[s.act(g, x)] = next;
    ++next;
  }
  return label;
}

bool subset(std::vector<int> const &a, std::vector<int> const &b)
{ return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool subgroup_le(Subgroup const &a, Subgroup const &b)
{
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!subset(a[i], b[i]))
      return false;
  return true;
}

} // namespace

TEST_CASE("lattice helpers")
{
  Lattice l{{"a", "b", "c"}, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
  CHECK(l.is_partial_order());
  CHECK(l.hasse() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  Lattice bad{{"a", "b"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  CHECK_FALSE(bad.is_partial_order());
}

TEST_CASE("galois connection laws on congruences below the kernel pair")
{
  for (auto t : std::vector<std::vector<int>>{{0, 0, 0, 0}, {0, 0, 1, 1, 1}, {0, 1, 0, 1, 2}}) {
    int b = *std::max_element(t.begin(), t.end()) + 1;
    auto gc = galois_connection(FinMap(t.size(), b, t));
    REQUIRE(gc.congruences.size() == gc.quotients.size());
    CHECK(gc.rel.is_partial_order());
    CHECK(gc.quot.is_partial_order());
    for (std::size_t i = 0; i < gc.congruences.size(); ++i) {
      // coeq then kp is the identity on congruences and vice versa
      CHECK(gc.kp[gc.coeq[i]] == static_cast<int>(i));
      CHECK(gc.coeq[gc.kp[i]] == static_cast<int>(i));
      CHECK(kernel::kernel_pair(gc.quotients[gc.coeq[i]]) == gc.congruences[i]);
    }
    // order reversal: R <= R' iff coeq(R') <= coeq(R)
    for (std::size_t i = 0; i < gc.congruences.size(); ++i)
      for (std::size_t j = 0; j < gc.congruences.size(); ++j)
        CHECK(gc.rel.le(static_cast<int>(i), static_cast<int>(j)) ==
              gc.quot.le(gc.coeq[j], gc.coeq[i]));
  }
  CHECK_THROWS_AS(galois_connection(FinMap(1, 2, {0})), NotEpi);
  Caps small;
  small.set_size = 3;
  CHECK_THROWS_AS(galois_connection(FinMap(4, 1, {0, 0, 0, 0}), small), CapExceeded);
}

TEST_CASE("quotients by subgroups are orbit partitions")
{
  for (auto t : std::vector<std::vector<int>>{{0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 1, 0, 1}}) {
    int b = *std::max_element(t.begin(), t.end()) + 1;
    FinMap pi(t.size(), b, t);
    for (auto variants : {galois::enumerate_splittings_absolute(pi), galois::enumerate_splittings_relative(pi)})
      for (auto const &s : variants)
        for (auto const &h : splitting_subgroups(s)) {
          auto q = quotient_by_subgroup(s, h);
          CHECK(kernel::partition_of(q) == kernel::partition_of(kernel::canonical_quotient(orbit_partition(s, h))));
          auto r = restrict_to_subgroup(s, h);
          CHECK(r.witness.size() > 0);
        }
  }
}

TEST_CASE("correspondence on the four point torsors")
{
  FinMap pi(4, 1, {0, 0, 0, 0});
  auto ss = galois::enumerate_splittings_absolute(pi);
  REQUIRE(ss.size() == 2);
  std::vector<std::size_t> expected_sizes{5, 3}; // K4 then Z4
  for (std::size_t k = 0; k < ss.size(); ++k) {
    auto r = full_correspondence(ss[k]);
    CHECK(r.subgroups.size() == expected_sizes[k]);
    CHECK(r.quotients.size() == expected_sizes[k]);
    CHECK(r.bijection.size() == expected_sizes[k]);
    CHECK(r.round_trip_subgroups);
    CHECK(r.round_trip_quotients);
    CHECK(r.order_reversal_verified);
    CHECK(r.scope == "realizable");
    CHECK(r.candidate_quotients == 15);
    CHECK_FALSE(r.hypotheses.a);
    CHECK(r.hypotheses.certificate.has_value());
    CHECK(r.hypotheses.b);
    for (auto const &res : r.restrictions)
      CHECK(res.witness_verified);
    for (auto [i, j] : r.bijection) {
      CHECK(kernel::partition_of(r.quotients[j]) ==
            kernel::partition_of(kernel::canonical_quotient(orbit_partition(ss[k], r.subgroups[i]))));
    }
    for (auto [i, j] : r.bijection)
      for (auto [i2, j2] : r.bijection)
        CHECK(subgroup_le(r.subgroups[i], r.subgroups[i2]) ==
              r.quotient_lattice.le(j2, j));
    CorrespondenceOptions strict;
    strict.require_hypotheses = true;
    CHECK_THROWS_AS(full_correspondence(ss[k], {}, strict), HypothesisFailed);
  }
}

TEST_CASE("sheet blocks make hypothesis (a) hold")
{
  FinMap pi(4, 1, {0, 0, 0, 0});
  auto ss = galois::enumerate_splittings_absolute(pi);
  std::vector<int> blocks(16);
  for (int a = 0; a < 16; ++a)
    blocks[a] = a / 4;
  for (auto const &s : ss) {
    auto h = check_hypotheses(s, {}, blocks);
    CHECK(h.a);
    CHECK(h.b);
    CorrespondenceOptions o;
    o.blocks = blocks;
    o.require_hypotheses = true;
    auto r = full_correspondence(s, {}, o);
    CHECK(r.scope == "full");
  }
}

TEST_CASE("relative correspondence subgroups are fiberwise families")
{
  FinMap pi(4, 2, {0, 0, 1, 1});
  auto rel = galois::enumerate_splittings_relative(pi);
  REQUIRE(rel.size() == 1);
  auto subs = splitting_subgroups(rel[0]);
  CHECK(subs.size() == 4);
  CHECK(subgroup_label(subs.back()).find("{0,1}") != std::string::npos);
  CHECK_THROWS_AS(quotient_by_subgroup(rel[0], Subgroup{{1}, {0}}), NotASubgroup);
}

TEST_CASE("galois connection sizes")
{
  auto three = galois_connection(FinMap(3, 1, {0, 0, 0}));
  CHECK(three.congruences.size() == 5);
  CHECK(three.quotients.size() == 5);
  auto two_pairs = galois_connection(FinMap(4, 2, {0, 0, 1, 1}));
  CHECK(two_pairs.congruences.size() == 4);
}

TEST_CASE("Z2 swap on two points satisfies both hypotheses")
{
  auto ss = galois::enumerate_splittings_absolute(FinMap(2, 1, {0, 0}));
  REQUIRE(ss.size() == 1);
  auto h = check_hypotheses(ss[0]);
  CHECK(h.a);
  CHECK(h.b);
  CHECK(h.wide_subgroupoids == 2);
  CHECK(h.product_form == 2);
  CHECK_FALSE(h.certificate.has_value());
  auto r = full_correspondence(ss[0]);
  CHECK(r.bijection.size() == 2);
}
