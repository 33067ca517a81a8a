#include "galoisforge/covers.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "disjoint_sets.hpp"
#include "galoisforge/error.hpp"
#include "galoisforge/galois.hpp"

namespace galoisforge::covers {

using kernel::FinMap;
using kernel::FinSet;

void Graph::validate() const
{
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= vertices ||
        static_cast<std::size_t>(v) >= vertices)
      throw InvalidGraph("edge " + std::to_string(e) + " has an endpoint out of range");
  }
}

std::vector<int> Graph::components() const
{
  detail::DisjointSets ds(vertices);
  for (auto [u, v] : edges)
    ds.merge(u, v);
  return ds.labels();
}

bool Graph::connected() const
{
  auto c = components();
  return std::all_of(c.begin(), c.end(), [](int l) { return l == 0; });
}

namespace {

// lift[v * |E_B| + e] = the edge over e leaving (or entering) v, -1 if none.
struct Lifts
{
  std::size_t base_edges = 0;
  std::vector<int> out, in;

  int leaving(int v, int e) const
  { return out[static_cast<std::size_t>(v) * base_edges + e]; }

  int entering(int v, int e) const
  { return in[static_cast<std::size_t>(v) * base_edges + e]; }
};

Lifts lifts_of(CoverInstance const &c)
{
  Lifts l;
  l.base_edges = c.base.edges.size();
  l.out.assign(c.total.vertices * l.base_edges, -1);
  l.in.assign(c.total.vertices * l.base_edges, -1);
  for (std::size_t e = 0; e < c.total.edges.size(); ++e) {
    auto [u, v] = c.total.edges[e];
    int be = c.proj_e(static_cast<int>(e));
    auto &o = l.out[static_cast<std::size_t>(u) * l.base_edges + be];
    auto &i = l.in[static_cast<std::size_t>(v) * l.base_edges + be];
    if (o >= 0 || i >= 0)
      throw InvalidCover("two lifts of base edge " + std::to_string(be) + " at one vertex");
    o = static_cast<int>(e);
    i = static_cast<int>(e);
  }
  return l;
}

} // namespace

void CoverInstance::validate() const
{
  base.validate();
  total.validate();
  if (proj_v.dom().size != total.vertices || proj_v.cod().size != base.vertices)
    throw InvalidCover("vertex projection has the wrong shape");
  if (proj_e.dom().size != total.edges.size() || proj_e.cod().size != base.edges.size())
    throw InvalidCover("edge projection has the wrong shape");
  for (std::size_t e = 0; e < total.edges.size(); ++e) {
    auto [u, v] = total.edges[e];
    auto [bu, bv] = base.edges[proj_e(static_cast<int>(e))];
    if (proj_v(u) != bu || proj_v(v) != bv)
      throw InvalidCover("edge " + std::to_string(e) + " does not lie over its base edge");
  }
  auto l = lifts_of(*this);
  for (std::size_t v = 0; v < total.vertices; ++v) {
    int b = proj_v(static_cast<int>(v));
    for (std::size_t e = 0; e < base.edges.size(); ++e) {
      if (base.edges[e].first == b && l.leaving(static_cast<int>(v), static_cast<int>(e)) < 0)
        throw InvalidCover("base edge " + std::to_string(e) + " has no lift leaving " +
                           std::to_string(v));
      if (base.edges[e].second == b && l.entering(static_cast<int>(v), static_cast<int>(e)) < 0)
        throw InvalidCover("base edge " + std::to_string(e) + " has no lift entering " +
                           std::to_string(v));
    }
  }
}

std::size_t CoverInstance::sheets() const
{ return base.vertices == 0 ? 0 : total.vertices / base.vertices; }

CoverInstance cover_from_monodromy(Graph const &base, std::vector<std::vector<int>> const &perms,
                                   std::optional<int> sheets)
{
  base.validate();
  if (perms.size() != base.edges.size())
    throw SizeMismatch("need one permutation per base edge: " + std::to_string(base.edges.size()) +
                       " edges, " + std::to_string(perms.size()) + " permutations");
  int n = sheets ? *sheets : (perms.empty() ? -1 : static_cast<int>(perms[0].size()));
  if (n < 0)
    throw SizeMismatch("sheet count is needed when the base has no edges");
  for (std::size_t e = 0; e < perms.size(); ++e) {
    if (static_cast<int>(perms[e].size()) != n)
      throw SizeMismatch("permutation " + std::to_string(e) + " acts on " +
                         std::to_string(perms[e].size()) + " points, expected " +
                         std::to_string(n));
    if (!FinMap(perms[e].size(), perms[e].size(), perms[e]).is_bijective())
      throw SizeMismatch("entry " + std::to_string(e) + " is not a permutation");
  }

  CoverInstance c;
  c.base = base;
  c.total.vertices = base.vertices * static_cast<std::size_t>(n);
  std::vector<int> pv(c.total.vertices), pe;
  for (std::size_t v = 0; v < base.vertices; ++v)
    for (int i = 0; i < n; ++i)
      pv[v * n + i] = static_cast<int>(v);
  for (std::size_t e = 0; e < base.edges.size(); ++e) {
    auto [u, v] = base.edges[e];
    for (int i = 0; i < n; ++i) {
      c.total.edges.emplace_back(u * n + i, v * n + perms[e][i]);
      pe.push_back(static_cast<int>(e));
    }
  }
  c.proj_v = FinMap(c.total.vertices, base.vertices, std::move(pv));
  c.proj_e = FinMap(c.total.edges.size(), base.edges.size(), std::move(pe));
  c.validate();
  return c;
}

std::vector<std::vector<int>> recover_monodromy(CoverInstance const &c)
{
  auto n = static_cast<int>(c.sheets());
  std::vector<std::vector<int>> perms(c.base.edges.size(), std::vector<int>(n, -1));
  auto l = lifts_of(c);
  for (std::size_t e = 0; e < c.base.edges.size(); ++e) {
    auto [u, v] = c.base.edges[e];
    for (int i = 0; i < n; ++i) {
      int lift = l.leaving(u * n + i, static_cast<int>(e));
      int w = lift < 0 ? -1 : c.total.edges[lift].second;
      if (w < 0 || w / n != v)
        throw InvalidCover("cover is not in monodromy layout");
      perms[e][i] = w % n;
    }
  }
  return perms;
}

namespace {

// Extends sigma from sigma[root] by lifting along edges; fills tau. Returns
// false on a conflict.
bool propagate(CoverInstance const &c, Lifts const &l, int root, std::vector<int> &sigma,
               std::vector<int> &tau, std::vector<char> &used)
{
  std::deque<int> work{root};
  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    int w = sigma[v];
    for (std::size_t e = 0; e < c.base.edges.size(); ++e) {
      for (int dir = 0; dir < 2; ++dir) {
        int ed = dir == 0 ? l.leaving(v, static_cast<int>(e)) : l.entering(v, static_cast<int>(e));
        if (ed < 0)
          continue;
        int ed2 = dir == 0 ? l.leaving(w, static_cast<int>(e)) : l.entering(w, static_cast<int>(e));
        if (ed2 < 0)
          return false;
        if (tau[ed] >= 0 && tau[ed] != ed2)
          return false;
        tau[ed] = ed2;
        int next = dir == 0 ? c.total.edges[ed].second : c.total.edges[ed].first;
        int image = dir == 0 ? c.total.edges[ed2].second : c.total.edges[ed2].first;
        if (sigma[next] >= 0) {
          if (sigma[next] != image)
            return false;
          continue;
        }
        if (used[image])
          return false;
        sigma[next] = image;
        used[image] = 1;
        work.push_back(next);
      }
    }
  }
  return true;
}

} // namespace

DeckGroup deck_group(CoverInstance const &c, Caps const &caps)
{
  c.validate();
  auto l = lifts_of(c);
  auto comp = c.total.components();
  std::vector<int> roots;
  for (std::size_t v = 0; v < comp.size(); ++v)
    if (comp[v] == static_cast<int>(roots.size()))
      roots.push_back(static_cast<int>(v));
  auto fibers = c.proj_v.fibers();

  std::vector<std::vector<int>> found;
  std::vector<std::vector<int>> found_edges;
  auto nv = c.total.vertices;
  auto ne = c.total.edges.size();

  auto search = [&](auto &&self, std::size_t k, std::vector<int> sigma, std::vector<int> tau,
                    std::vector<char> used) -> void {
    if (k == roots.size()) {
      found.push_back(sigma);
      found_edges.push_back(tau);
      if (found.size() > caps.perm_group_order)
        throw CapExceeded("perm_group_order", static_cast<long long>(caps.perm_group_order),
                          static_cast<long long>(found.size()));
      return;
    }
    int r = roots[k];
    for (int y : fibers[c.proj_v(r)]) {
      if (used[y])
        continue;
      auto s2 = sigma;
      auto t2 = tau;
      auto u2 = used;
      s2[r] = y;
      u2[y] = 1;
      if (propagate(c, l, r, s2, t2, u2))
        self(self, k + 1, std::move(s2), std::move(t2), std::move(u2));
    }
  };
  search(search, 0, std::vector<int>(nv, -1), std::vector<int>(ne, -1), std::vector<char>(nv, 0));

  std::vector<FinMap> gens;
  for (auto const &s : found)
    gens.emplace_back(nv, nv, s);
  DeckGroup d;
  d.vertices = algebra::closure_of_permutations(gens, nv, caps);
  std::map<std::vector<int>, std::vector<int>> edges_of;
  for (std::size_t i = 0; i < found.size(); ++i)
    edges_of[found[i]] = found_edges[i];
  for (auto const &e : d.vertices.elements)
    d.edge_perms.push_back(edges_of.at(e.table()));
  return d;
}

bool pullback_trivializes(CoverInstance const &c)
{
  c.validate();
  if (!c.total.connected())
    throw ConnectednessRequired("total space is not connected");
  // Vertices and edges of M x_B M, first projection to M.
  std::vector<std::pair<int, int>> pv;
  std::map<std::pair<int, int>, int> vindex;
  for (std::size_t v = 0; v < c.total.vertices; ++v)
    for (std::size_t w = 0; w < c.total.vertices; ++w)
      if (c.proj_v(static_cast<int>(v)) == c.proj_v(static_cast<int>(w))) {
        vindex[{static_cast<int>(v), static_cast<int>(w)}] = static_cast<int>(pv.size());
        pv.emplace_back(static_cast<int>(v), static_cast<int>(w));
      }
  Graph p;
  p.vertices = pv.size();
  std::vector<int> edge_first;
  for (std::size_t e = 0; e < c.total.edges.size(); ++e)
    for (std::size_t f = 0; f < c.total.edges.size(); ++f)
      if (c.proj_e(static_cast<int>(e)) == c.proj_e(static_cast<int>(f))) {
        auto [u1, v1] = c.total.edges[e];
        auto [u2, v2] = c.total.edges[f];
        p.edges.emplace_back(vindex.at({u1, u2}), vindex.at({v1, v2}));
        edge_first.push_back(static_cast<int>(e));
      }

  auto comp = p.components();
  int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  for (int k = 0; k < ncomp; ++k) {
    std::vector<int> vhit(c.total.vertices, 0), ehit(c.total.edges.size(), 0);
    for (std::size_t x = 0; x < p.vertices; ++x)
      if (comp[x] == k)
        ++vhit[pv[x].first];
    for (std::size_t e = 0; e < p.edges.size(); ++e)
      if (comp[p.edges[e].first] == k)
        ++ehit[edge_first[e]];
    auto once = [](int n) { return n == 1; };
    if (!std::all_of(vhit.begin(), vhit.end(), once) || !std::all_of(ehit.begin(), ehit.end(), once))
      return false;
  }
  return true;
}

CoverVerdict cover_galois_verdict(CoverInstance const &c, Caps const &caps)
{
  c.validate();
  if (!c.base.connected())
    throw ConnectednessRequired("base is not connected");
  if (!c.total.connected())
    throw ConnectednessRequired("total space is not connected");
  CoverVerdict v;
  v.galois_cover = pullback_trivializes(c);
  auto deck = deck_group(c, caps);
  v.group = deck.vertices.group;
  v.group_name = algebra::group_name(v.group);
  v.kp_splits = !galois::enumerate_splittings_within(c.proj_v, deck.vertices, caps).empty();
  auto fiber = c.proj_v.fibers()[0];
  std::set<int> orbit;
  for (int g = 0; g < deck.vertices.group.order(); ++g)
    orbit.insert(deck.vertices.action.apply(g, fiber[0]));
  v.deck_transitive = orbit.size() == fiber.size();
  v.agree = v.galois_cover == v.kp_splits && v.kp_splits == v.deck_transitive;
  return v;
}

CoverInstance quotient_cover(CoverInstance const &c, FinMap const &q)
{
  if (q.dom().size != c.total.vertices || !kernel::comparison(q, c.proj_v))
    throw InvalidCover("vertex quotient does not lie over the base");
  // Lifts are unique, so an edge class is fixed by its base edge and the
  // class of its source.
  std::map<std::pair<int, int>, int> edge_class;
  CoverInstance out;
  out.base = c.base;
  out.total.vertices = q.cod().size;
  std::vector<int> pe;
  for (std::size_t e = 0; e < c.total.edges.size(); ++e) {
    auto [u, v] = c.total.edges[e];
    std::pair<int, int> key{c.proj_e(static_cast<int>(e)), q(u)};
    auto [it, fresh] = edge_class.emplace(key, static_cast<int>(out.total.edges.size()));
    if (fresh) {
      out.total.edges.emplace_back(q(u), q(v));
      pe.push_back(key.first);
    } else if (out.total.edges[it->second].second != q(v)) {
      throw InvalidCover("vertex quotient is not compatible with the edges");
    }
  }
  out.proj_v = *kernel::comparison(q, c.proj_v);
  out.proj_e = FinMap(out.total.edges.size(), c.base.edges.size(), std::move(pe));
  out.validate();
  return out;
}

IntermediateCovers intermediate_covers(CoverInstance const &c, Caps const &caps)
{
  auto v = cover_galois_verdict(c, caps);
  if (!v.galois_cover)
    throw NotGalois("cover is not Galois");
  auto deck = deck_group(c, caps);
  auto splittings = galois::enumerate_splittings_within(c.proj_v, deck.vertices, caps);
  if (splittings.empty())
    throw NotGalois("no deck subgroup splits the kernel pair");
  IntermediateCovers out;
  out.splitting = splittings.front();
  // Subobjects of the action groupoid are unions of sheets {g} x M.
  auto m = static_cast<int>(c.total.vertices);
  correspondence::CorrespondenceOptions options;
  for (int g = 0; g < out.splitting.absolute.group().order(); ++g)
    for (int x = 0; x < m; ++x)
      options.blocks.push_back(g);
  out.correspondence = correspondence::full_correspondence(out.splitting, caps, options);
  for (auto const &q : out.correspondence.quotients)
    out.covers.push_back(quotient_cover(c, q));
  return out;
}

std::string to_dot(CoverInstance const &c, std::string const &name)
{
  static char const *palette[] = {"red", "blue", "darkgreen", "orange",
                                  "purple", "brown", "magenta", "cyan"};
  auto colour = [](int b) { return palette[b % 8]; };
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  os << "  subgraph cluster_base {\n    label=\"base\";\n";
  for (std::size_t v = 0; v < c.base.vertices; ++v)
    os << "    b" << v << " [label=\"" << v << "\", color=" << colour(static_cast<int>(v))
       << "];\n";
  for (std::size_t e = 0; e < c.base.edges.size(); ++e)
    os << "    b" << c.base.edges[e].first << " -> b" << c.base.edges[e].second << " [label=\"e"
       << e << "\"];\n";
  os << "  }\n  subgraph cluster_total {\n    label=\"total\";\n";
  for (std::size_t v = 0; v < c.total.vertices; ++v)
    os << "    t" << v << " [label=\"" << v << "\", color="
       << colour(c.proj_v(static_cast<int>(v))) << "];\n";
  for (std::size_t e = 0; e < c.total.edges.size(); ++e)
    os << "    t" << c.total.edges[e].first << " -> t" << c.total.edges[e].second
       << " [label=\"e" << c.proj_e(static_cast<int>(e)) << "\"];\n";
  os << "  }\n}\n";
  return os.str();
}

} // namespace galoisforge::covers
