#include "galoisforge/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "galoisforge/error.hpp"

namespace galoisforge::groupoid {

using algebra::BundleAction;
using algebra::GroupAction;
using kernel::FinMap;
using kernel::FinSet;

FiniteGroupoid::FiniteGroupoid(std::size_t objects, std::vector<int> src, std::vector<int> tgt,
                               std::vector<int> ident, std::vector<int> inv,
                               Composer const &compose, std::vector<std::string> arrow_labels)
  : _objects(objects),
    _src(std::move(src)),
    _tgt(std::move(tgt)),
    _ident(std::move(ident)),
    _inv(std::move(inv)),
    _labels(std::move(arrow_labels))
{
  auto n = _src.size();
  if (_tgt.size() != n || _inv.size() != n || _ident.size() != _objects)
    throw InvalidGroupoid("structure maps have inconsistent sizes");
  if (!_labels.empty() && _labels.size() != n)
    throw InvalidGroupoid("one label per arrow required");
  for (std::size_t a = 0; a < n; ++a) {
    if (_src[a] < 0 || _tgt[a] < 0 || static_cast<std::size_t>(_src[a]) >= _objects ||
        static_cast<std::size_t>(_tgt[a]) >= _objects)
      throw InvalidGroupoid("arrow " + std::to_string(a) + " has an endpoint outside the objects");
    if (_inv[a] < 0 || static_cast<std::size_t>(_inv[a]) >= n)
      throw InvalidGroupoid("inverse of arrow " + std::to_string(a) + " out of range");
  }
  for (int i : _ident)
    if (i < 0 || static_cast<std::size_t>(i) >= n)
      throw InvalidGroupoid("identity arrow out of range");

  _out.assign(_objects, {});
  _out_pos.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    _out_pos[a] = static_cast<int>(_out[_src[a]].size());
    _out[_src[a]].push_back(static_cast<int>(a));
  }
  _after.assign(n, {});
  for (std::size_t f = 0; f < n; ++f) {
    auto const &next = _out[_tgt[f]];
    _after[f].resize(next.size());
    for (std::size_t k = 0; k < next.size(); ++k) {
      int c = compose(next[k], static_cast<int>(f));
      if (c < 0 || static_cast<std::size_t>(c) >= n)
        throw InvalidGroupoid("composite out of range");
      _after[f][k] = c;
    }
  }
}

int FiniteGroupoid::comp(int g, int f) const
{
  if (_src[g] != _tgt[f])
    return -1;
  return _after[f][_out_pos[g]];
}

FinMap FiniteGroupoid::src_map() const
{ return FinMap(arrows(), objects(), _src); }

FinMap FiniteGroupoid::tgt_map() const
{ return FinMap(arrows(), objects(), _tgt); }

void FiniteGroupoid::validate() const
{
  auto fail = [](std::string const &why) { throw InvalidGroupoid(why); };
  for (std::size_t x = 0; x < _objects; ++x) {
    int i = _ident[x];
    if (_src[i] != static_cast<int>(x) || _tgt[i] != static_cast<int>(x))
      fail("identity at " + std::to_string(x) + " is not a loop at it");
  }
  auto n = static_cast<int>(_src.size());
  for (int f = 0; f < n; ++f) {
    for (int g : _out[_tgt[f]]) {
      int gf = comp(g, f);
      if (_src[gf] != _src[f] || _tgt[gf] != _tgt[g])
        fail("composite has the wrong endpoints");
    }
    if (comp(_ident[_tgt[f]], f) != f || comp(f, _ident[_src[f]]) != f)
      fail("identity law fails at arrow " + std::to_string(f));
    int fi = _inv[f];
    if (_src[fi] != _tgt[f] || _tgt[fi] != _src[f])
      fail("inverse of arrow " + std::to_string(f) + " has the wrong endpoints");
    if (comp(fi, f) != _ident[_src[f]] || comp(f, fi) != _ident[_tgt[f]])
      fail("inverse law fails at arrow " + std::to_string(f));
  }
  for (int f = 0; f < n; ++f)
    for (int g : _out[_tgt[f]])
      for (int h : _out[_tgt[g]])
        if (comp(h, comp(g, f)) != comp(comp(h, g), f))
          fail("composition is not associative");
}

FiniteGroupoid FiniteGroupoid::restrict(std::vector<int> const &arrow_subset) const
{
  std::vector<int> local(_src.size(), -1);
  for (std::size_t i = 0; i < arrow_subset.size(); ++i)
    local[arrow_subset[i]] = static_cast<int>(i);
  std::vector<int> src, tgt, ident(_objects), inv;
  std::vector<std::string> labels;
  for (int a : arrow_subset) {
    src.push_back(_src[a]);
    tgt.push_back(_tgt[a]);
    if (local[_inv[a]] < 0)
      throw InvalidGroupoid("subset not closed under inverses");
    inv.push_back(local[_inv[a]]);
    if (!_labels.empty())
      labels.push_back(_labels[a]);
  }
  for (std::size_t x = 0; x < _objects; ++x) {
    if (local[_ident[x]] < 0)
      throw InvalidGroupoid("subset misses the identity at " + std::to_string(x));
    ident[x] = local[_ident[x]];
  }
  auto composer = [&](int g, int f) {
    int c = local[comp(arrow_subset[g], arrow_subset[f])];
    if (c < 0)
      throw InvalidGroupoid("subset not closed under composition");
    return c;
  };
  return FiniteGroupoid(_objects, std::move(src), std::move(tgt), std::move(ident),
                        std::move(inv), composer, std::move(labels));
}

FiniteGroupoid action_groupoid(GroupAction const &a)
{
  auto const &grp = a.group();
  int m = static_cast<int>(a.carrier().size);
  int n = grp.order() * m;
  std::vector<int> src(n), tgt(n), inv(n), ident(m);
  std::vector<std::string> labels(n);
  for (int g = 0; g < grp.order(); ++g) {
    for (int x = 0; x < m; ++x) {
      int idx = g * m + x;
      src[idx] = x;
      tgt[idx] = a.apply(g, x);
      inv[idx] = grp.inv(g) * m + a.apply(g, x);
      labels[idx] = "(" + std::to_string(g) + "," + std::to_string(x) + ")";
    }
  }
  for (int x = 0; x < m; ++x)
    ident[x] = grp.identity() * m + x;
  // (h, g.x)∘(g, x) = (hg, x)
  auto composer = [&](int hidx, int gidx) {
    int h = hidx / m, g = gidx / m, x = gidx % m;
    return grp.mul(h, g) * m + x;
  };
  return FiniteGroupoid(static_cast<std::size_t>(m), std::move(src), std::move(tgt),
                        std::move(ident), std::move(inv), composer, std::move(labels));
}

namespace {

std::vector<int> relative_offsets(BundleAction const &a)
{
  auto nb = a.bundle().base.size;
  std::vector<int> offset(nb + 1, 0);
  for (std::size_t b = 0; b < nb; ++b)
    offset[b + 1] = offset[b] + a.bundle().fibers[b].order() *
                                  static_cast<int>(a.fiber(static_cast<int>(b)).size());
  return offset;
}

} // namespace

int relative_arrow_index(BundleAction const &a, int g, int x)
{
  int b = a.pi()(x);
  auto offset = relative_offsets(a);
  return offset[b] + g * static_cast<int>(a.fiber(b).size()) + a.local_index(x);
}

FiniteGroupoid action_groupoid(BundleAction const &a)
{
  auto offset = relative_offsets(a);
  auto m = a.pi().dom().size;
  int n = offset.back();
  std::vector<int> src(n), tgt(n), inv(n), ident(m);
  std::vector<int> arrow_g(n);
  std::vector<std::string> labels(n);
  for (std::size_t b = 0; b < a.bundle().base.size; ++b) {
    auto const &fiber = a.fiber(static_cast<int>(b));
    auto const &grp = a.bundle().fibers[b];
    int k = static_cast<int>(fiber.size());
    for (int g = 0; g < grp.order(); ++g) {
      for (int i = 0; i < k; ++i) {
        int x = fiber[i];
        int idx = offset[b] + g * k + i;
        int y = a.apply(g, x);
        src[idx] = x;
        tgt[idx] = y;
        arrow_g[idx] = g;
        inv[idx] = offset[b] + grp.inv(g) * k + a.local_index(y);
        labels[idx] = "(" + std::to_string(g) + "," + std::to_string(x) + ")";
      }
    }
    for (int i = 0; i < k; ++i)
      ident[fiber[i]] = offset[b] + grp.identity() * k + i;
  }
  auto composer = [&, src_of = src](int hidx, int gidx) {
    int x = src_of[gidx];
    int b = a.pi()(x);
    auto const &grp = a.bundle().fibers[b];
    int k = static_cast<int>(a.fiber(b).size());
    return offset[b] + grp.mul(arrow_g[hidx], arrow_g[gidx]) * k + a.local_index(x);
  };
  return FiniteGroupoid(m, std::move(src), std::move(tgt), std::move(ident), std::move(inv),
                        composer, std::move(labels));
}

FiniteGroupoid congruence_as_groupoid(kernel::Congruence const &c)
{
  auto const &pairs = c.pairs();
  auto n = pairs.size();
  std::vector<int> src(n), tgt(n), inv(n), ident(c.carrier().size);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [x, y] = pairs[i];
    src[i] = x;
    tgt[i] = y;
    inv[i] = c.index_of(y, x);
    labels[i] = "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  }
  for (std::size_t x = 0; x < c.carrier().size; ++x)
    ident[x] = c.index_of(static_cast<int>(x), static_cast<int>(x));
  auto composer = [&](int g, int f) { return c.index_of(pairs[f].first, pairs[g].second); };
  return FiniteGroupoid(c.carrier().size, std::move(src), std::move(tgt), std::move(ident),
                        std::move(inv), composer, std::move(labels));
}

bool is_iso_over_objects(FiniteGroupoid const &g1, FiniteGroupoid const &g2,
                         std::vector<int> const &phi)
{
  if (g1.object_count() != g2.object_count() || g1.arrow_count() != g2.arrow_count() ||
      phi.size() != g1.arrow_count())
    return false;
  auto n = static_cast<int>(g1.arrow_count());
  std::vector<char> hit(n, 0);
  for (int a = 0; a < n; ++a) {
    int b = phi[a];
    if (b < 0 || b >= n || hit[b])
      return false;
    hit[b] = 1;
    if (g2.src(b) != g1.src(a) || g2.tgt(b) != g1.tgt(a))
      return false;
    if (phi[g1.inv(a)] != g2.inv(b))
      return false;
  }
  for (std::size_t x = 0; x < g1.object_count(); ++x)
    if (phi[g1.ident(static_cast<int>(x))] != g2.ident(static_cast<int>(x)))
      return false;
  for (int f = 0; f < n; ++f)
    for (int g : g1.out_arrows(g1.tgt(f)))
      if (phi[g1.comp(g, f)] != g2.comp(phi[g], phi[f]))
        return false;
  return true;
}

namespace {

std::vector<int> object_components(FiniteGroupoid const &g)
{
  std::vector<int> comp(g.object_count(), -1);
  for (std::size_t x = 0; x < g.object_count(); ++x) {
    if (comp[x] >= 0)
      continue;
    comp[x] = static_cast<int>(x);
    for (int a : g.out_arrows(static_cast<int>(x)))
      comp[g.tgt(a)] = static_cast<int>(x);
  }
  return comp;
}

// Vertex group at r as an abstract group, elements indexed by position in
// `loops`.
algebra::FiniteGroup vertex_group(FiniteGroupoid const &g, int r, std::vector<int> &loops)
{
  loops.clear();
  for (int a : g.out_arrows(r))
    if (g.tgt(a) == r)
      loops.push_back(a);
  algebra::Table t(loops.size(), std::vector<int>(loops.size()));
  for (std::size_t i = 0; i < loops.size(); ++i)
    for (std::size_t j = 0; j < loops.size(); ++j) {
      int c = g.comp(loops[i], loops[j]);
      t[i][j] = static_cast<int>(std::find(loops.begin(), loops.end(), c) - loops.begin());
    }
  return algebra::check_group(std::move(t));
}

} // namespace

std::optional<std::vector<int>> groupoid_iso_over_objects(FiniteGroupoid const &g1,
                                                          FiniteGroupoid const &g2)
{
  if (g1.object_count() != g2.object_count())
    throw ObjectMismatch("groupoids have " + std::to_string(g1.object_count()) + " and " +
                         std::to_string(g2.object_count()) + " objects");
  if (g1.arrow_count() != g2.arrow_count())
    return std::nullopt;

  // Groupoids are transitive on components, so the arrow x -> y is the
  // composite of a chosen arrow r -> y, a loop at r, and the inverse of the
  // chosen arrow r -> x. An isomorphism fixing objects is therefore a
  // vertex-group isomorphism at each root plus images of the chosen arrows.
  auto c1 = object_components(g1);
  auto c2 = object_components(g2);
  if (c1 != c2)
    return std::nullopt;

  auto objects = static_cast<int>(g1.object_count());
  std::vector<int> tree1(objects), tree2(objects);
  std::vector<std::vector<int>> loops1(objects), loops2(objects);
  std::vector<std::vector<int>> psi(objects);
  for (int x = 0; x < objects; ++x) {
    int r = c1[x];
    if (r == x) {
      auto v1 = vertex_group(g1, r, loops1[r]);
      auto v2 = vertex_group(g2, r, loops2[r]);
      auto iso = algebra::group_iso(v1, v2);
      if (!iso)
        return std::nullopt;
      psi[r] = *iso;
    }
    auto first_to = [&](FiniteGroupoid const &g) {
      for (int a : g.out_arrows(r))
        if (g.tgt(a) == x)
          return a;
      return -1;
    };
    tree1[x] = first_to(g1);
    tree2[x] = first_to(g2);
    if (tree1[x] < 0 || tree2[x] < 0)
      return std::nullopt;
  }

  std::vector<int> phi(g1.arrow_count());
  for (std::size_t f = 0; f < g1.arrow_count(); ++f) {
    int x = g1.src(static_cast<int>(f)), y = g1.tgt(static_cast<int>(f));
    int r = c1[x];
    int loop = g1.comp(g1.inv(tree1[y]), g1.comp(static_cast<int>(f), tree1[x]));
    auto pos = std::find(loops1[r].begin(), loops1[r].end(), loop) - loops1[r].begin();
    int image_loop = loops2[r][psi[r][pos]];
    phi[f] = g2.comp(tree2[y], g2.comp(image_loop, g2.inv(tree2[x])));
  }
  if (!is_iso_over_objects(g1, g2, phi))
    return std::nullopt;
  return phi;
}

std::vector<std::vector<int>> wide_subgroupoids(FiniteGroupoid const &g, Caps const &caps,
                                                std::vector<int> const &blocks)
{
  auto n = g.arrow_count();
  if (n > caps.groupoid_arrows)
    throw CapExceeded("groupoid_arrows", static_cast<long long>(caps.groupoid_arrows),
                      static_cast<long long>(n));
  if (!blocks.empty() && blocks.size() != n)
    throw InvalidGroupoid("one block id per arrow required");

  std::vector<std::vector<int>> block_members;
  if (!blocks.empty()) {
    int nblocks = *std::max_element(blocks.begin(), blocks.end()) + 1;
    block_members.assign(nblocks, {});
    for (std::size_t a = 0; a < n; ++a)
      block_members[blocks[a]].push_back(static_cast<int>(a));
  }

  auto close = [&](std::vector<char> in, std::vector<int> seeds) {
    std::vector<int> members;
    for (std::size_t a = 0; a < n; ++a)
      if (in[a])
        members.push_back(static_cast<int>(a));
    std::deque<int> work(seeds.begin(), seeds.end());
    auto add = [&](int a) {
      if (!in[a]) {
        in[a] = 1;
        work.push_back(a);
      }
    };
    for (int a : seeds)
      in[a] = 1;
    while (!work.empty()) {
      int a = work.front();
      work.pop_front();
      members.push_back(a);
      add(g.inv(a));
      if (!blocks.empty())
        for (int b : block_members[blocks[a]])
          add(b);
      for (std::size_t i = 0; i < members.size(); ++i) {
        int m = members[i];
        if (g.src(a) == g.tgt(m))
          add(g.comp(a, m));
        if (g.src(m) == g.tgt(a))
          add(g.comp(m, a));
      }
    }
    return in;
  };

  std::vector<int> idents;
  for (std::size_t x = 0; x < g.object_count(); ++x)
    idents.push_back(g.ident(static_cast<int>(x)));
  auto start = close(std::vector<char>(n, 0), idents);

  std::set<std::vector<char>> seen{start};
  std::deque<std::vector<char>> queue{start};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < n; ++a) {
      if (cur[a])
        continue;
      auto next = close(cur, {static_cast<int>(a)});
      if (seen.insert(next).second) {
        if (seen.size() > caps.enumeration_results)
          throw CapExceeded("enumeration_results",
                            static_cast<long long>(caps.enumeration_results),
                            static_cast<long long>(seen.size()));
        queue.push_back(std::move(next));
      }
    }
  }

  std::vector<std::vector<int>> out;
  for (auto const &s : seen) {
    std::vector<int> list;
    for (std::size_t a = 0; a < n; ++a)
      if (s[a])
        list.push_back(static_cast<int>(a));
    out.push_back(std::move(list));
  }
  std::sort(out.begin(), out.end(), [](auto const &a, auto const &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

namespace {

void require_action_groupoid(FiniteGroupoid const &g, GroupAction const &a)
{
  auto m = static_cast<int>(a.carrier().size);
  if (g.object_count() != a.carrier().size ||
      g.arrow_count() != static_cast<std::size_t>(a.group().order() * m))
    throw NotActionGroupoid("arrow set is not labelled by G x M");
  for (int g_ = 0; g_ < a.group().order(); ++g_)
    for (int x = 0; x < m; ++x)
      if (g.src(g_ * m + x) != x || g.tgt(g_ * m + x) != a.apply(g_, x))
        throw NotActionGroupoid("arrow (" + std::to_string(g_) + "," + std::to_string(x) +
                                ") does not match the action");
}

} // namespace

std::optional<std::vector<int>> is_H_ltimes_M(FiniteGroupoid const &g,
                                              std::vector<int> const &sub,
                                              GroupAction const &a)
{
  require_action_groupoid(g, a);
  auto m = static_cast<int>(a.carrier().size);
  if (m == 0)
    return sub.empty() ? std::optional<std::vector<int>>(std::vector<int>{a.group().identity()})
                       : std::nullopt;

  std::vector<char> in(g.arrow_count(), 0);
  for (int s : sub) {
    if (s < 0 || static_cast<std::size_t>(s) >= g.arrow_count())
      return std::nullopt;
    in[s] = 1;
  }
  std::vector<int> h;
  for (int g_ = 0; g_ < a.group().order(); ++g_)
    if (in[g_ * m])
      h.push_back(g_);
  std::size_t count = 0;
  for (int g_ = 0; g_ < a.group().order(); ++g_) {
    bool row = in[g_ * m];
    for (int x = 0; x < m; ++x)
      if (static_cast<bool>(in[g_ * m + x]) != row)
        return std::nullopt;
    count += row ? static_cast<std::size_t>(m) : 0;
  }
  if (count != static_cast<std::size_t>(std::count(in.begin(), in.end(), 1)))
    return std::nullopt;
  if (!algebra::is_subgroup(a.group(), h))
    return std::nullopt;
  return h;
}

std::optional<std::vector<std::vector<int>>> is_H_ltimes_M(FiniteGroupoid const &g,
                                                           std::vector<int> const &sub,
                                                           BundleAction const &a)
{
  auto reference = action_groupoid(a);
  if (g.arrow_count() != reference.arrow_count() || g.object_count() != reference.object_count())
    throw NotActionGroupoid("arrow set is not labelled by the bundle action");
  for (std::size_t k = 0; k < g.arrow_count(); ++k)
    if (g.src(static_cast<int>(k)) != reference.src(static_cast<int>(k)) ||
        g.tgt(static_cast<int>(k)) != reference.tgt(static_cast<int>(k)))
      throw NotActionGroupoid("arrow " + std::to_string(k) + " does not match the action");

  std::vector<char> in(g.arrow_count(), 0);
  for (int s : sub) {
    if (s < 0 || static_cast<std::size_t>(s) >= g.arrow_count())
      return std::nullopt;
    in[s] = 1;
  }
  std::vector<std::vector<int>> family(a.bundle().base.size);
  for (std::size_t b = 0; b < a.bundle().base.size; ++b) {
    auto const &fiber = a.fiber(static_cast<int>(b));
    auto const &grp = a.bundle().fibers[b];
    for (int g_ = 0; g_ < grp.order(); ++g_) {
      bool row = in[relative_arrow_index(a, g_, fiber[0])];
      for (int x : fiber)
        if (static_cast<bool>(in[relative_arrow_index(a, g_, x)]) != row)
          return std::nullopt;
      if (row)
        family[b].push_back(g_);
    }
    if (!algebra::is_subgroup(grp, family[b]))
      return std::nullopt;
  }
  return family;
}

std::string to_dot(FiniteGroupoid const &g, std::string const &name)
{
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (std::size_t x = 0; x < g.object_count(); ++x)
    os << "  o" << x << " [label=\"" << x << "\"];\n";
  std::vector<char> is_ident(g.arrow_count(), 0);
  for (std::size_t x = 0; x < g.object_count(); ++x)
    is_ident[g.ident(static_cast<int>(x))] = 1;
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    if (is_ident[a])
      continue;
    os << "  o" << g.src(static_cast<int>(a)) << " -> o" << g.tgt(static_cast<int>(a));
    if (!g.arrow_labels().empty())
      os << " [label=\"" << g.arrow_labels()[a] << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace galoisforge::groupoid
