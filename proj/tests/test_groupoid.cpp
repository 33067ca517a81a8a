#include <doctest.h>

#include <random>
#include <set>

#include "galoisforge/error.hpp"
#include "galoisforge/groupoid.hpp"
#include "oracles.hpp"

using namespace galoisforge;
using namespace galoisforge::groupoid;
using algebra::cyclic_group;
using algebra::GroupAction;

namespace {

GroupAction regular_action(algebra::FiniteGroup const &g)
{ return GroupAction(g, kernel::FinSet(static_cast<std::size_t>(g.order())), g.cayley()); }

// All wide subgroupoids by subset enumeration (arrow count <= 16).
std::size_t brute_wide_subgroupoids(FiniteGroupoid const &g)
{
  auto n = g.arrow_count();
  std::size_t count = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    auto in = [&](int a) { return (mask >> a) & 1u; };
    bool ok = true;
    for (std::size_t x = 0; x < g.object_count() && ok; ++x)
      ok = in(g.ident(static_cast<int>(x)));
    for (std::size_t a = 0; a < n && ok; ++a) {
      if (!in(static_cast<int>(a)))
        continue;
      ok = in(g.inv(static_cast<int>(a)));
      for (std::size_t b = 0; b < n && ok; ++b) {
        int c = g.comp(static_cast<int>(b), static_cast<int>(a));
        if (in(static_cast<int>(b)) && c >= 0)
          ok = in(c);
      }
    }
    count += ok;
  }
  return count;
}

} // namespace

TEST_CASE("action groupoid layout")
{
  auto a = regular_action(cyclic_group(3));
  auto g = action_groupoid(a);
  g.validate();
  CHECK(g.arrow_count() == 9);
  // arrow (2, 1) = index 2*3 + 1
  CHECK(g.src(7) == 1);
  CHECK(g.tgt(7) == 0);
  CHECK(g.ident(2) == 2);
  CHECK(g.comp(g.inv(7), 7) == g.ident(1));
  CHECK(g.comp(7, 7) == -1);
}

TEST_CASE("validate catches a broken composition")
{
  auto bad = FiniteGroupoid(1, {0, 0}, {0, 0}, {0}, {0, 1}, [](int, int) { return 0; });
  CHECK_THROWS_AS(bad.validate(), InvalidGroupoid);
}

TEST_CASE("free transitive actions give groupoids isomorphic to the full relation")
{
  std::mt19937 rng(11);
  for (int n = 1; n <= 5; ++n) {
    for (auto const &grp : algebra::groups_of_order(n)) {
      // relabel the carrier at random to avoid the identity layout
      std::vector<int> perm = oracle::identity(n);
      std::shuffle(perm.begin(), perm.end(), rng);
      algebra::Table act(n, std::vector<int>(n));
      for (int g = 0; g < n; ++g)
        for (int x = 0; x < n; ++x)
          act[g][perm[x]] = perm[grp.mul(g, x)];
      GroupAction a(grp, kernel::FinSet(n), act);
      auto g = action_groupoid(a);
      auto kp = congruence_as_groupoid(kernel::kernel_pair(kernel::FinMap(n, 1, std::vector<int>(n, 0))));
      auto iso = groupoid_iso_over_objects(g, kp);
      REQUIRE(iso.has_value());
      CHECK(is_iso_over_objects(g, kp, *iso));
    }
  }
}

TEST_CASE("non-free actions are not isomorphic to the kernel pair")
{
  // Z2 acting trivially on one point: two loops vs one
  GroupAction a(cyclic_group(2), kernel::FinSet(1), {{0}, {0}});
  auto g = action_groupoid(a);
  auto kp = congruence_as_groupoid(kernel::Congruence::from_labels({0}));
  CHECK_FALSE(groupoid_iso_over_objects(g, kp).has_value());
  CHECK_THROWS_AS(groupoid_iso_over_objects(g, congruence_as_groupoid(kernel::Congruence::from_labels({0, 0}))),
                  ObjectMismatch);
}

TEST_CASE("wide subgroupoids match subset enumeration")
{
  for (auto labels : std::vector<std::vector<int>>{{0, 0}, {0, 0, 0}, {0, 0, 1, 1}, {0, 1, 0}}) {
    auto g = congruence_as_groupoid(kernel::Congruence::from_labels(labels));
    CHECK(wide_subgroupoids(g).size() == brute_wide_subgroupoids(g));
  }
  auto g4 = action_groupoid(regular_action(cyclic_group(4)));
  auto subs = wide_subgroupoids(g4);
  // wide subgroupoids of the indiscrete groupoid on 4 points = partitions of 4
  CHECK(subs.size() == 15);
  CHECK(std::is_sorted(subs.begin(), subs.end(), [](auto const &a, auto const &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  }));
  Caps small;
  small.groupoid_arrows = 8;
  CHECK_THROWS_AS(wide_subgroupoids(g4, small), CapExceeded);
}

TEST_CASE("blocks restrict subgroupoids to unions of blocks")
{
  auto a = regular_action(cyclic_group(4));
  auto g = action_groupoid(a);
  std::vector<int> blocks(g.arrow_count());
  for (std::size_t i = 0; i < blocks.size(); ++i)
    blocks[i] = static_cast<int>(i) / 4;
  auto subs = wide_subgroupoids(g, {}, blocks);
  CHECK(subs.size() == 3);
  for (auto const &s : subs)
    CHECK(is_H_ltimes_M(g, s, a).has_value());
}

TEST_CASE("H x M recognition")
{
  auto a = regular_action(cyclic_group(4));
  auto g = action_groupoid(a);
  std::vector<int> sub;
  for (int x = 0; x < 4; ++x) {
    sub.push_back(x);
    sub.push_back(2 * 4 + x);
  }
  std::sort(sub.begin(), sub.end());
  auto h = is_H_ltimes_M(g, sub, a);
  REQUIRE(h.has_value());
  CHECK(*h == std::vector<int>{0, 2});
  CHECK_FALSE(is_H_ltimes_M(g, {0, 1, 2, 3, 4}, a).has_value());
}

TEST_CASE("restrict re-indexes and rejects open subsets")
{
  auto g = congruence_as_groupoid(kernel::Congruence::from_labels({0, 0}));
  auto r = g.restrict({0, 3});
  CHECK(r.arrow_count() == 2);
  r.validate();
  CHECK_THROWS_AS(g.restrict({0, 1, 3}), InvalidGroupoid);
}

TEST_CASE("relative action groupoid arrow order")
{
  kernel::FinMap pi(4, 2, {0, 1, 1, 0});
  algebra::GroupBundle b(kernel::FinSet(2), {cyclic_group(2), cyclic_group(2)});
  GroupAction swap(cyclic_group(2), kernel::FinSet(2), {{0, 1}, {1, 0}});
  algebra::BundleAction a(b, pi, {swap, swap});
  auto g = action_groupoid(a);
  g.validate();
  CHECK(g.arrow_count() == 8);
  CHECK(relative_arrow_index(a, 1, 3) == 3);
  CHECK(relative_arrow_index(a, 0, 2) == 5);
  CHECK(g.src(3) == 3);
  CHECK(g.tgt(3) == 0);
}

TEST_CASE("dot output is a digraph")
{
  auto g = congruence_as_groupoid(kernel::Congruence::from_labels({0, 0, 1}));
  auto dot = to_dot(g, "kp");
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("o0 -> o1") != std::string::npos);
}

TEST_CASE("Z4 free transitive action groupoid")
{
  auto a = regular_action(cyclic_group(4));
  auto g = action_groupoid(a);
  CHECK(g.arrow_count() == 16);
  std::set<int> targets;
  for (std::size_t k = 0; k < g.arrow_count(); ++k)
    targets.insert(g.tgt(static_cast<int>(k)));
  CHECK(targets.size() == 4);
  auto subs = wide_subgroupoids(g);
  std::size_t product = 0;
  for (auto const &s : subs)
    product += is_H_ltimes_M(g, s, a).has_value();
  CHECK(product == algebra::subgroups(cyclic_group(4)).size());
}

TEST_CASE("Z2 swap has exactly two wide subgroupoids, both of product form")
{
  auto a = regular_action(cyclic_group(2));
  auto g = action_groupoid(a);
  auto subs = wide_subgroupoids(g);
  CHECK(subs.size() == 2);
  CHECK(brute_wide_subgroupoids(g) == 2);
  for (auto const &s : subs)
    CHECK(is_H_ltimes_M(g, s, a).has_value());
}

TEST_CASE("identities plus a partial set of arrows is not of product form")
{
  auto a = regular_action(cyclic_group(4));
  auto g = action_groupoid(a);
  // all identities, plus (2, x) only for x in {0, 2}
  std::vector<int> sub{0, 1, 2, 3, 8, 10};
  CHECK_FALSE(is_H_ltimes_M(g, sub, a).has_value());
}

TEST_CASE("an action with a kernel has a wide subgroupoid not of product form")
{
  auto k4 = algebra::klein_four_group();
  // K4 acts on two points through the quotient by {0, 1}
  std::vector<std::vector<int>> table;
  for (int g = 0; g < 4; ++g)
    table.push_back(g == 0 || g == 1 ? std::vector<int>{0, 1} : std::vector<int>{1, 0});
  GroupAction a(k4, kernel::FinSet(2), table);
  CHECK_FALSE(a.is_free());
  auto g = action_groupoid(a);
  auto subs = wide_subgroupoids(g);
  CHECK(subs.size() == brute_wide_subgroupoids(g));
  std::size_t non_product = 0;
  for (auto const &s : subs)
    non_product += !is_H_ltimes_M(g, s, a).has_value();
  CHECK(non_product > 0);
  // identities plus the kernel element at point 0 only
  CHECK_FALSE(is_H_ltimes_M(g, {0, 1, 2}, a).has_value());
}
