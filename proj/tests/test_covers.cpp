#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "galoisforge/covers.hpp"
#include "galoisforge/error.hpp"
#include "galoisforge/serialize.hpp"
#include "oracles.hpp"

using namespace galoisforge;
using namespace galoisforge::covers;

namespace {

Graph loop()
{ return Graph{1, {{0, 0}}}; }

Graph wedge()
{ return Graph{1, {{0, 0}, {0, 0}}}; }

CoverInstance load(std::string const &name)
{
  std::ifstream in(std::string(GF_FIXTURES) + "/covers/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return serialize::parse_cover(serialize::parse_text(buf.str()));
}

// Deck transformations counted directly: a vertex map over the base that
// commutes with lifting every edge, found by trying each target for vertex 0
// and propagating along edges.
std::size_t brute_deck_count(CoverInstance const &c)
{
  auto nv = static_cast<int>(c.total.vertices);
  std::size_t count = 0;
  for (int t = 0; t < nv; ++t) {
    if (c.proj_v(t) != c.proj_v(0))
      continue;
    std::vector<int> f(nv, -1);
    f[0] = t;
    bool ok = true, changed = true;
    while (changed && ok) {
      changed = false;
      for (std::size_t e = 0; e < c.total.edges.size() && ok; ++e) {
        auto [u, v] = c.total.edges[e];
        // image edge: the lift of the same base edge starting at f(u)
        auto lift_from = [&](int start, bool forward) {
          for (std::size_t e2 = 0; e2 < c.total.edges.size(); ++e2)
            if (c.proj_e(static_cast<int>(e2)) == c.proj_e(static_cast<int>(e)) &&
                (forward ? c.total.edges[e2].first : c.total.edges[e2].second) == start)
              return forward ? c.total.edges[e2].second : c.total.edges[e2].first;
          return -1;
        };
        if (f[u] >= 0) {
          int w = lift_from(f[u], true);
          if (f[v] < 0) {
            f[v] = w;
            changed = true;
          } else if (f[v] != w) {
            ok = false;
          }
        }
        if (f[v] >= 0 && ok) {
          int w = lift_from(f[v], false);
          if (f[u] < 0) {
            f[u] = w;
            changed = true;
          } else if (f[u] != w) {
            ok = false;
          }
        }
      }
    }
    if (ok && std::find(f.begin(), f.end(), -1) == f.end())
      ++count;
  }
  return count;
}

} // namespace

TEST_CASE("cover from monodromy layout")
{
  auto c = cover_from_monodromy(loop(), {{1, 2, 0}});
  c.validate();
  CHECK(c.sheets() == 3);
  CHECK(c.total.vertices == 3);
  CHECK(c.total.edges[1] == std::pair<int, int>{1, 2});
  CHECK(recover_monodromy(c) == std::vector<std::vector<int>>{{1, 2, 0}});
  CHECK_THROWS_AS(cover_from_monodromy(wedge(), {{1, 0}}), SizeMismatch);
  CHECK_THROWS_AS(cover_from_monodromy(loop(), {{1, 0}, {0, 1}}), SizeMismatch);
}

TEST_CASE("invalid covers are rejected")
{
  auto c = cover_from_monodromy(loop(), {{1, 0}});
  c.proj_e = kernel::FinMap(2, 1, {0, 0});
  c.total.edges[1] = {1, 1};
  CHECK_THROWS_AS(c.validate(), InvalidCover);
  Graph g{2, {{0, 3}}};
  CHECK_THROWS_AS(g.validate(), InvalidGraph);
}

TEST_CASE("deck group sizes match direct search on the corpus")
{
  for (auto const &entry : std::filesystem::directory_iterator(std::string(GF_FIXTURES) + "/covers")) {
    auto c = load(entry.path().filename().string());
    CAPTURE(entry.path().filename().string());
    auto d = deck_group(c);
    CHECK(d.vertices.elements.size() == brute_deck_count(c));
    CHECK(d.edge_perms.size() == d.vertices.elements.size());
  }
}

TEST_CASE("canonical negative: S3 monodromy on three sheets")
{
  auto c = load("s3_wedge.json");
  auto v = cover_galois_verdict(c);
  CHECK_FALSE(v.galois_cover);
  CHECK_FALSE(v.kp_splits);
  CHECK_FALSE(v.deck_transitive);
  CHECK(v.agree);
  CHECK(v.group.order() == 1);
  CHECK_THROWS_AS(intermediate_covers(c), NotGalois);
}

TEST_CASE("K4 on the wedge and its intermediate covers")
{
  auto c = load("k4_wedge.json");
  auto v = cover_galois_verdict(c);
  CHECK(v.galois_cover);
  CHECK(v.group_name == "K4");
  auto ic = intermediate_covers(c);
  CHECK(ic.covers.size() == 5);
  std::vector<std::size_t> sheets;
  for (auto const &q : ic.covers) {
    q.validate();
    sheets.push_back(q.sheets());
  }
  std::sort(sheets.begin(), sheets.end());
  CHECK(sheets == std::vector<std::size_t>{1, 2, 2, 2, 4});
  CHECK(ic.correspondence.scope == "full");
}

TEST_CASE("connectedness is required")
{
  auto c = cover_from_monodromy(loop(), {{0, 1}});
  CHECK_THROWS_AS(pullback_trivializes(c), ConnectednessRequired);
  CHECK_THROWS_AS(cover_galois_verdict(c), ConnectednessRequired);
}

TEST_CASE("quotient cover of Z4 by the order two subgroup")
{
  auto c = cover_from_monodromy(loop(), {{1, 2, 3, 0}});
  auto q = quotient_cover(c, kernel::canonical_quotient({0, 1, 0, 1}));
  q.validate();
  CHECK(q.sheets() == 2);
  CHECK(cover_galois_verdict(q).galois_cover);
}

TEST_CASE("cover dot output")
{
  auto dot = to_dot(cover_from_monodromy(loop(), {{1, 0}}));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("subgraph") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '{') == std::count(dot.begin(), dot.end(), '}'));
}

TEST_CASE("trivial three sheeted cover has the full symmetric deck group")
{
  auto c = cover_from_monodromy(loop(), {{0, 1, 2}});
  CHECK_FALSE(c.total.connected());
  auto d = deck_group(c);
  CHECK(d.vertices.group.order() == 6);
  CHECK(oracle::closure({{1, 0, 2}, {1, 2, 0}}, 3).size() == 6);
}

TEST_CASE("intermediate covers of the Z4 loop")
{
  auto c = load("z4_loop.json");
  auto v = cover_galois_verdict(c);
  CHECK(v.galois_cover);
  CHECK(v.group_name == "Z4");
  auto ic = intermediate_covers(c);
  std::multiset<std::size_t> sheets;
  for (auto const &q : ic.covers)
    sheets.insert(q.sheets());
  CHECK(sheets == std::multiset<std::size_t>{1, 2, 4});
}
