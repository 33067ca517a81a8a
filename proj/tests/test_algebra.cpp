#include <doctest.h>

#include "galoisforge/algebra.hpp"
#include "galoisforge/error.hpp"
#include "oracles.hpp"

using namespace galoisforge;
using namespace galoisforge::algebra;

namespace {

// Cayley table of a permutation group given by its element list.
Table table_of(std::vector<oracle::Perm> const &elems)
{
  std::map<oracle::Perm, int> idx;
  for (std::size_t i = 0; i < elems.size(); ++i)
    idx[elems[i]] = static_cast<int>(i);
  Table t(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b)
      t[a][b] = idx.at(oracle::mul(elems[a], elems[b]));
  return t;
}

FiniteGroup s3()
{
  auto g = oracle::closure({{1, 2, 0}, {1, 0, 2}}, 3);
  return check_group(table_of({g.begin(), g.end()}));
}

} // namespace

TEST_CASE("check_group rejects non-groups")
{
  CHECK_THROWS_AS(check_group({}), NotAGroup);
  CHECK_THROWS_AS(check_group({{0, 1}, {1, 1}}), NotAGroup);
  CHECK_THROWS_AS(check_group({{0, 1, 2}, {1, 0, 0}, {2, 0, 0}}), NotAGroup);
  auto z3 = cyclic_group(3);
  CHECK(z3.mul(2, 2) == 1);
  CHECK(z3.inv(1) == 2);
  CHECK(z3.element_order(1) == 3);
}

TEST_CASE("group names")
{
  CHECK(group_name(FiniteGroup()) == "1");
  CHECK(group_name(cyclic_group(6)) == "Z6");
  CHECK(group_name(klein_four_group()) == "K4");
  CHECK(group_name(s3()) == "S3");
  CHECK(group_name(direct_product(cyclic_group(2), cyclic_group(4))) == "Z2xZ4");
  CHECK(group_name(direct_product(cyclic_group(2), cyclic_group(3))) == "Z6");
  CHECK_FALSE(is_abelian(s3()));
}

TEST_CASE("group_iso agrees with the brute-force isomorphism test")
{
  auto z4 = oracle::closure({{1, 2, 3, 0}}, 4);
  auto k4 = oracle::closure({{1, 0, 3, 2}, {2, 3, 0, 1}}, 4);
  auto gz4 = check_group(table_of({z4.begin(), z4.end()}));
  auto gk4 = check_group(table_of({k4.begin(), k4.end()}));
  CHECK(oracle::isomorphic(z4, k4) == group_iso(gz4, gk4).has_value());
  CHECK_FALSE(group_iso(gz4, gk4).has_value());
  auto phi = group_iso(gz4, cyclic_group(4));
  REQUIRE(phi.has_value());
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK((*phi)[gz4.mul(a, b)] == cyclic_group(4).mul((*phi)[a], (*phi)[b]));
}

TEST_CASE("canonical form identifies isomorphism classes")
{
  auto k4 = klein_four_group();
  auto c2c2 = direct_product(cyclic_group(2), cyclic_group(2));
  CHECK(canonical_form(k4) == canonical_form(c2c2));
  CHECK(canonical_form(cyclic_group(4)) != canonical_form(k4));
  CHECK(canonical_form(cyclic_group(6)) == canonical_form(direct_product(cyclic_group(2), cyclic_group(3))));
}

TEST_CASE("groups of small order")
{
  std::vector<std::size_t> counts{1, 1, 1, 1, 2, 1, 2, 1, 5};
  for (int n = 1; n <= 8; ++n)
    CHECK(groups_of_order(n).size() == counts[n]);
  Caps small;
  small.fiber_size = 3;
  CHECK_THROWS_AS(groups_of_order(4, small), CapExceeded);
}

TEST_CASE("regular group tables are the regular permutation groups")
{
  // Count regular subgroups of S_n directly.
  for (int n = 1; n <= 5; ++n) {
    auto ref = oracle::regular_subgroups(std::vector<int>(n, 0), 1);
    CHECK(regular_group_tables(n).size() == ref.size());
  }
}

TEST_CASE("subgroups are enumerated completely")
{
  auto subs = subgroups(s3());
  CHECK(subs.size() == 6);
  for (auto const &h : subs)
    CHECK(is_subgroup(s3(), h));
  CHECK(subgroups(cyclic_group(12)).size() == 6);
  CHECK(subgroups(direct_product(cyclic_group(2), klein_four_group())).size() == 16);
  CHECK_THROWS_AS(subgroup_as_group(cyclic_group(4), {0, 1}), NotASubgroup);
}

TEST_CASE("actions are validated")
{
  auto z2 = cyclic_group(2);
  CHECK_THROWS_AS(GroupAction(z2, kernel::FinSet(2), {{0, 1}, {1, 1}}), InvalidAction);
  CHECK_THROWS_AS(GroupAction(z2, kernel::FinSet(2), {{1, 0}, {0, 1}}), InvalidAction);
  GroupAction a(z2, kernel::FinSet(4), {{0, 1, 2, 3}, {1, 0, 3, 2}});
  CHECK(a.is_free());
  CHECK_FALSE(a.is_transitive());
  CHECK(a.as_permutation(1).table() == std::vector<int>{1, 0, 3, 2});
}

TEST_CASE("bundle actions act fiberwise")
{
  kernel::FinMap pi(5, 2, {0, 1, 0, 1, 1});
  GroupBundle bundle(kernel::FinSet(2), {cyclic_group(2), cyclic_group(3)});
  BundleAction a(bundle, pi,
                 {GroupAction(cyclic_group(2), kernel::FinSet(2), {{0, 1}, {1, 0}}),
                  GroupAction(cyclic_group(3), kernel::FinSet(3), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}})});
  CHECK(a.apply(1, 0) == 2);
  CHECK(a.apply(1, 1) == 3);
  CHECK(a.apply(2, 4) == 3);
  CHECK(a.local_index(4) == 2);
  CHECK_THROWS_AS(BundleAction(bundle, pi, {}), InvalidAction);
}

TEST_CASE("sections use mixed radix with the first base point most significant")
{
  GroupBundle b(kernel::FinSet(2), {cyclic_group(2), cyclic_group(3)});
  auto s = sections(b);
  CHECK(s.order() == 6);
  CHECK(section_components(b, 4) == std::vector<int>{1, 1});
  CHECK(group_name(s) == "Z6");
  Caps small;
  small.group_order = 5;
  CHECK_THROWS_AS(sections(b, small), CapExceeded);
}

TEST_CASE("closure of permutations matches the oracle closure")
{
  std::vector<kernel::FinMap> gens{kernel::FinMap(4, 4, {1, 2, 3, 0}), kernel::FinMap(4, 4, {1, 0, 2, 3})};
  auto pg = closure_of_permutations(gens, 4);
  auto ref = oracle::closure({{1, 2, 3, 0}, {1, 0, 2, 3}}, 4);
  REQUIRE(pg.elements.size() == ref.size());
  CHECK(pg.elements.front().table() == oracle::identity(4));
  for (std::size_t a = 0; a < pg.elements.size(); ++a)
    for (std::size_t b = 0; b < pg.elements.size(); ++b)
      CHECK(pg.elements[pg.group.mul(static_cast<int>(a), static_cast<int>(b))].table() ==
            oracle::mul(pg.elements[a].table(), pg.elements[b].table()));
  Caps small;
  small.perm_group_order = 10;
  CHECK_THROWS_AS(closure_of_permutations(gens, 4, small), CapExceeded);
}

TEST_CASE("subgroup counts match subset enumeration")
{
  auto brute = [](FiniteGroup const &g) {
    int n = g.order();
    std::size_t count = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> s;
      for (int a = 0; a < n; ++a)
        if ((mask >> a) & 1u)
          s.push_back(a);
      bool closed = (mask & 1u) != 0;
      for (int a : s)
        for (int b : s)
          closed = closed && ((mask >> g.mul(a, g.inv(b))) & 1u);
      count += closed;
    }
    return count;
  };
  CHECK(subgroups(cyclic_group(4)).size() == 3);
  CHECK(brute(cyclic_group(4)) == 3);
  CHECK(subgroups(klein_four_group()).size() == 5);
  CHECK(brute(klein_four_group()) == 5);
  CHECK(subgroups(s3()).size() == brute(s3()));
}

TEST_CASE("closures of small generator sets")
{
  auto z4 = closure_of_permutations({kernel::FinMap(4, 4, {1, 2, 3, 0})}, 4);
  CHECK(group_name(z4.group) == "Z4");
  auto s = closure_of_permutations({kernel::FinMap(3, 3, {1, 0, 2}), kernel::FinMap(3, 3, {1, 2, 0})}, 3);
  CHECK(s.group.order() == 6);
  CHECK(oracle::closure({{1, 0, 2}, {1, 2, 0}}, 3).size() == 6);
}

TEST_CASE("sections of a Z2 x Z2 bundle form K4")
{
  GroupBundle b(kernel::FinSet(2), {cyclic_group(2), cyclic_group(2)});
  auto s = sections(b);
  CHECK(s.order() == 4);
  CHECK(group_iso(s, klein_four_group()).has_value());
}
