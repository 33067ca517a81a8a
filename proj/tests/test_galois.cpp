#include <doctest.h>

#include <random>
#include <set>

#include "galoisforge/error.hpp"
#include "galoisforge/galois.hpp"
#include "galoisforge/groupoid.hpp"
#include "oracles.hpp"

using namespace galoisforge;
using namespace galoisforge::galois;
using kernel::FinMap;

namespace {

FinMap map_of(std::vector<int> const &t)
{ return FinMap(t.size(), static_cast<std::size_t>(*std::max_element(t.begin(), t.end()) + 1), t); }

bool equinumerous(FinMap const &pi)
{
  auto f = pi.fibers();
  return std::all_of(f.begin(), f.end(), [&](auto const &x) { return x.size() == f[0].size(); });
}

} // namespace

TEST_CASE("splitting witnesses are groupoid isomorphisms onto the kernel pair")
{
  auto pi = map_of({0, 0, 0, 0});
  auto ss = enumerate_splittings_absolute(pi);
  REQUIRE(ss.size() == 2);
  auto kp = groupoid::congruence_as_groupoid(kernel::kernel_pair(pi));
  for (auto const &s : ss) {
    auto g = groupoid::action_groupoid(s.absolute);
    CHECK(groupoid::is_iso_over_objects(g, kp, s.witness));
    for (std::size_t a = 0; a < s.witness.size(); ++a) {
      auto [x, y] = kernel::kernel_pair(pi).pairs()[s.witness[a]];
      CHECK(x == g.src(static_cast<int>(a)));
      CHECK(y == g.tgt(static_cast<int>(a)));
    }
  }
  CHECK(ss[0].group_names() == std::vector<std::string>{"K4"});
  CHECK(ss[1].group_names() == std::vector<std::string>{"Z4"});
}

TEST_CASE("a non-free action is not a splitting")
{
  auto pi = map_of({0, 0});
  algebra::GroupAction trivial(algebra::cyclic_group(2), kernel::FinSet(2), {{0, 1}, {0, 1}});
  CHECK_FALSE(splitting_witness(pi, trivial).has_value());
}

TEST_CASE("absolute splitting counts match the regular-subgroup oracle")
{
  for (int m = 1; m <= 6; ++m)
    for (int b = 1; b <= 3 && b <= m; ++b)
      oracle::for_each_map(m, b, [&](std::vector<int> const &t) {
        if (!oracle::surjective(t, b))
          return;
        FinMap pi(m, b, t);
        auto lib = enumerate_splittings_absolute(pi);
        auto ref = oracle::regular_subgroups(t, b);
        CHECK(lib.empty() == !equinumerous(pi));
        CHECK(lib.size() == oracle::count_iso_types(ref));
      });
}

TEST_CASE("relative splittings are one per tuple of fiber types")
{
  auto pi = map_of({0, 1, 0, 1, 0, 1, 0, 1, 2, 2});
  auto rel = enumerate_splittings_relative(pi);
  // fibers of sizes 4, 4, 2: 2 * 2 * 1 tuples
  CHECK(rel.size() == 4);
  for (auto const &s : rel) {
    CHECK(splitting_witness(s.relative).has_value());
    CHECK(s.group_order_at(8) == 2);
  }
  std::vector<std::vector<std::string>> names;
  for (auto const &s : rel)
    names.push_back(s.group_names());
  CHECK(std::set<std::vector<std::string>>(names.begin(), names.end()).size() == 4);
}

TEST_CASE("splittings within a permutation group")
{
  auto pi = map_of({0, 0, 0, 0});
  auto cyc = algebra::closure_of_permutations({FinMap(4, 4, {1, 2, 3, 0})}, 4);
  auto within = enumerate_splittings_within(pi, cyc);
  REQUIRE(within.size() == 1);
  CHECK(within[0].group_names() == std::vector<std::string>{"Z4"});
  auto full = algebra::closure_of_permutations(kernel::aut_over_base_generators(pi), 4);
  CHECK(enumerate_splittings_within(pi, full).size() == 2);
}

TEST_CASE("global elements chain")
{
  auto pi = map_of({0, 0, 1, 1});
  auto abs = enumerate_splittings_absolute(pi);
  REQUIRE(abs.size() == 1);
  auto ge = induced_global_elements(abs[0]);
  CHECK(ge.star.order() == 2);
  CHECK(ge.base.order() == 4);
  CHECK(ge.star_to_base_injective_hom);
  CHECK(ge.base_to_aut_injective_hom);
  CHECK(ge.image_in_aut);
  CHECK_FALSE(is_galois_structure(abs[0]));

  auto rel = enumerate_splittings_relative(pi);
  REQUIRE(rel.size() == 1);
  CHECK(is_galois_structure(rel[0]));
}

TEST_CASE("single fiber verdicts by size")
{
  std::vector<VerdictKind> expect{VerdictKind::Galois, VerdictKind::Galois, VerdictKind::NoGaloisStructure,
                                  VerdictKind::MultipleStructures, VerdictKind::NoGaloisStructure};
  for (int k = 1; k <= 5; ++k) {
    auto r = galois_verdict(FinMap(k, 1, std::vector<int>(k, 0)));
    CHECK(r.verdict_absolute.kind == expect[k - 1]);
    CHECK(r.verdict_relative.kind == expect[k - 1]);
  }
}

TEST_CASE("verdict precedence")
{
  auto r = galois_verdict(FinMap(2, 3, {0, 1}));
  CHECK(r.verdict_absolute.kind == VerdictKind::NotEpi);
  auto u = galois_verdict(map_of({0, 0, 1}));
  CHECK(u.verdict_absolute.kind == VerdictKind::NoSplitting);
  CHECK(u.verdict_relative.kind == VerdictKind::Galois);
  CHECK(u.verdict_relative.group == std::vector<std::string>{"Z2", "1"});
  CHECK(to_string(VerdictKind::MultipleStructures) == "MultipleStructures");
}

TEST_CASE("end bijection and composition defects")
{
  auto pi = map_of({0, 0, 0});
  auto ss = enumerate_splittings_absolute(pi);
  REQUIRE(ss.size() == 1);
  CHECK(end_bijection_holds(ss[0]));
  auto d = composition_defects(ss[0]);
  CHECK(d.base_sections_compatible);
  // 27 x 27 pairs of sections; brute-force count of defects below
  CHECK(d.pairs_checked == 729);
  std::size_t ref = 0;
  auto act = [&](int g, int x) { return ss[0].act(g, x); };
  auto const &grp = ss[0].absolute.group();
  for (int gi = 0; gi < 27; ++gi)
    for (int hi = 0; hi < 27; ++hi) {
      int g[3] = {gi % 3, gi / 3 % 3, gi / 9}, h[3] = {hi % 3, hi / 3 % 3, hi / 9};
      bool same = true;
      for (int x = 0; x < 3; ++x) {
        int lhs = act(g[act(h[x], x)], act(h[x], x));
        int rhs = act(grp.mul(g[x], h[x]), x);
        same = same && lhs == rhs;
      }
      ref += !same;
    }
  CHECK(d.defect_count == ref);
  CHECK(d.defect_count > 0);
  CHECK(d.example.has_value());
  CHECK_THROWS_AS(end_from_section(ss[0], {0, 0}), FiberMismatch);
}

TEST_CASE("relative splitting of fibers of sizes two and three")
{
  auto pi = map_of({0, 0, 1, 1, 1});
  auto rel = enumerate_splittings_relative(pi);
  REQUIRE(rel.size() == 1);
  CHECK(rel[0].group_names() == std::vector<std::string>{"Z2", "Z3"});
  CHECK(enumerate_splittings_absolute(pi).empty());
  auto r = galois_verdict(pi);
  CHECK(r.verdict_absolute.kind == VerdictKind::NoSplitting);
  // sections have order 6 but Aut_B(M) has order 12
  CHECK(r.verdict_relative.kind == VerdictKind::NoGaloisStructure);
  CHECK(oracle::aut_over_base({0, 0, 1, 1, 1}).size() == 12);
}

TEST_CASE("Z3 on three points reaches only the rotations")
{
  auto pi = map_of({0, 0, 0});
  auto ss = enumerate_splittings_absolute(pi);
  REQUIRE(ss.size() == 1);
  auto ge = induced_global_elements(ss[0]);
  CHECK(ge.image_in_aut);
  std::set<std::vector<int>> image;
  for (auto const &f : ge.star_to_aut)
    image.insert(f.table());
  CHECK(image.size() == 3);
  CHECK(oracle::aut_over_base({0, 0, 0}).size() == 6);
  CHECK_FALSE(is_galois_structure(ss[0]));
}

TEST_CASE("a non-constant section can give a non-bijective endomorphism")
{
  auto pi = map_of({0, 0});
  auto ss = enumerate_splittings_absolute(pi);
  REQUIRE(ss.size() == 1);
  bool some_non_bijective = false;
  for (int g0 = 0; g0 < 2; ++g0)
    for (int g1 = 0; g1 < 2; ++g1)
      some_non_bijective = some_non_bijective || !end_from_section(ss[0], {g0, g1}).is_bijective();
  CHECK(some_non_bijective);
  CHECK(end_bijection_holds(ss[0]));
}
