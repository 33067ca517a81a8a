#include "galoisforge/algebra.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "galoisforge/error.hpp"

namespace galoisforge::algebra {

using kernel::FinMap;
using kernel::FinSet;

FiniteGroup::FiniteGroup() : _cayley{{0}}, _identity(0), _inverse{0} {}

int FiniteGroup::element_order(int g) const
{
  int k = 1;
  for (int x = g; x != _identity; x = mul(x, g))
    ++k;
  return k;
}

FiniteGroup check_group(Table cayley)
{
  auto n = static_cast<int>(cayley.size());
  if (n == 0)
    throw NotAGroup("empty table");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(cayley[a].size()) != n)
      throw NotAGroup("row " + std::to_string(a) + " has the wrong length");
    for (int b = 0; b < n; ++b)
      if (cayley[a][b] < 0 || cayley[a][b] >= n)
        throw NotAGroup("product " + std::to_string(a) + "*" + std::to_string(b) +
                        " out of range");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]])
          throw NotAGroup("not associative at (" + std::to_string(a) + "," +
                          std::to_string(b) + "," + std::to_string(c) + ")");

  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b)
      ok = cayley[a][b] == b && cayley[b][a] == b;
    if (ok)
      e = a;
  }
  if (e < 0)
    throw NotAGroup("no two-sided identity");

  std::vector<int> inverse(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (cayley[a][b] == e && cayley[b][a] == e) {
        inverse[a] = b;
        break;
      }
    if (inverse[a] < 0)
      throw NotAGroup("element " + std::to_string(a) + " has no inverse");
  }

  FiniteGroup g;
  g._cayley = std::move(cayley);
  g._identity = e;
  g._inverse = std::move(inverse);
  return g;
}

FiniteGroup cyclic_group(int n)
{
  Table t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      t[a][b] = (a + b) % n;
  return check_group(std::move(t));
}

FiniteGroup klein_four_group()
{
  Table t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      t[a][b] = a ^ b;
  return check_group(std::move(t));
}

FiniteGroup direct_product(FiniteGroup const &a, FiniteGroup const &b)
{
  int na = a.order(), nb = b.order();
  Table t(na * nb, std::vector<int>(na * nb));
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y)
      t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return check_group(std::move(t));
}

GroupAction::GroupAction(FiniteGroup group, FinSet carrier, Table act)
  : _group(std::move(group)), _carrier(std::move(carrier)), _act(std::move(act))
{
  auto n = static_cast<int>(_carrier.size);
  if (static_cast<int>(_act.size()) != _group.order())
    throw InvalidAction("action table needs one row per group element");
  for (auto const &row : _act) {
    if (static_cast<int>(row.size()) != n)
      throw InvalidAction("action row has the wrong length");
    for (int y : row)
      if (y < 0 || y >= n)
        throw InvalidAction("action value outside the carrier");
  }
  for (int x = 0; x < n; ++x)
    if (_act[_group.identity()][x] != x)
      throw InvalidAction("identity moves " + std::to_string(x));
  for (int g = 0; g < _group.order(); ++g)
    for (int h = 0; h < _group.order(); ++h)
      for (int x = 0; x < n; ++x)
        if (_act[g][_act[h][x]] != _act[_group.mul(g, h)][x])
          throw InvalidAction("g.(h.x) != (gh).x for g=" + std::to_string(g) +
                              " h=" + std::to_string(h) + " x=" + std::to_string(x));
}

FinMap GroupAction::as_permutation(int g) const
{ return FinMap(_carrier, _carrier, _act[g]); }

bool GroupAction::is_free() const
{
  for (int g = 0; g < _group.order(); ++g) {
    if (g == _group.identity())
      continue;
    for (std::size_t x = 0; x < _carrier.size; ++x)
      if (_act[g][x] == static_cast<int>(x))
        return false;
  }
  return true;
}

bool GroupAction::is_transitive() const
{
  if (_carrier.size == 0)
    return true;
  std::vector<char> hit(_carrier.size, 0);
  for (int g = 0; g < _group.order(); ++g)
    hit[_act[g][0]] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

GroupBundle::GroupBundle(FinSet base_set, std::vector<FiniteGroup> fiber_groups)
  : base(std::move(base_set)), fibers(std::move(fiber_groups))
{
  if (fibers.size() != base.size)
    throw InvalidAction("bundle needs one group per base point");
}

BundleAction::BundleAction(GroupBundle bundle, FinMap pi, std::vector<GroupAction> fiber_actions)
  : _bundle(std::move(bundle)), _pi(std::move(pi)), _actions(std::move(fiber_actions))
{
  if (_pi.cod().size != _bundle.base.size)
    throw InvalidAction("bundle base does not match the codomain of pi");
  if (_actions.size() != _bundle.base.size)
    throw InvalidAction("need one fiber action per base point");
  _fibers = _pi.fibers();
  _local.assign(_pi.dom().size, 0);
  for (std::size_t b = 0; b < _fibers.size(); ++b) {
    if (!(_actions[b].group() == _bundle.fibers[b]))
      throw InvalidAction("fiber action group differs from the bundle fiber at " +
                          std::to_string(b));
    if (_actions[b].carrier().size != _fibers[b].size())
      throw FiberMismatch("fiber action over " + std::to_string(b) +
                          " does not act on the fiber of pi");
    for (std::size_t i = 0; i < _fibers[b].size(); ++i)
      _local[_fibers[b][i]] = static_cast<int>(i);
  }
}

int BundleAction::apply(int g, int x) const
{
  int b = _pi(x);
  return _fibers[b][_actions[b].apply(g, _local[x])];
}

bool is_subgroup(FiniteGroup const &g, std::vector<int> const &elements)
{
  if (elements.empty())
    return false;
  std::vector<char> in(g.order(), 0);
  for (int x : elements) {
    if (x < 0 || x >= g.order())
      return false;
    in[x] = 1;
  }
  if (!in[g.identity()])
    return false;
  for (int a : elements) {
    if (!in[g.inv(a)])
      return false;
    for (int b : elements)
      if (!in[g.mul(a, b)])
        return false;
  }
  return true;
}

namespace {

std::vector<char> closure(FiniteGroup const &g, std::vector<char> in)
{
  std::vector<int> members;
  for (int x = 0; x < g.order(); ++x)
    if (in[x])
      members.push_back(x);
  if (!in[g.identity()]) {
    in[g.identity()] = 1;
    members.push_back(g.identity());
  }
  // Finite group: closure under products alone is a subgroup.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (int p : {g.mul(members[i], members[j]), g.mul(members[j], members[i])}) {
        if (!in[p]) {
          in[p] = 1;
          members.push_back(p);
        }
      }
    }
  }
  return in;
}

std::vector<int> to_list(std::vector<char> const &in)
{
  std::vector<int> out;
  for (std::size_t x = 0; x < in.size(); ++x)
    if (in[x])
      out.push_back(static_cast<int>(x));
  return out;
}

bool size_then_lex(std::vector<int> const &a, std::vector<int> const &b)
{
  if (a.size() != b.size())
    return a.size() < b.size();
  return a < b;
}

} // namespace

std::vector<std::vector<int>> subgroups(FiniteGroup const &g, Caps const &caps)
{
  // Every subgroup is reached from the trivial one by adjoining one element
  // at a time and closing.
  std::set<std::vector<char>> seen;
  std::deque<std::vector<char>> queue;
  std::vector<char> trivial(g.order(), 0);
  trivial[g.identity()] = 1;
  seen.insert(trivial);
  queue.push_back(trivial);
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (int x = 0; x < g.order(); ++x) {
      if (cur[x])
        continue;
      auto next = cur;
      next[x] = 1;
      next = closure(g, std::move(next));
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
  for (auto const &s : seen)
    out.push_back(to_list(s));
  std::sort(out.begin(), out.end(), size_then_lex);
  return out;
}

FiniteGroup subgroup_as_group(FiniteGroup const &g, std::vector<int> const &elements)
{
  if (!is_subgroup(g, elements))
    throw NotASubgroup("element set is not a subgroup");
  std::map<int, int> local;
  for (std::size_t i = 0; i < elements.size(); ++i)
    local[elements[i]] = static_cast<int>(i);
  Table t(elements.size(), std::vector<int>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j)
      t[i][j] = local.at(g.mul(elements[i], elements[j]));
  return check_group(std::move(t));
}

namespace {

// Greedy generating set: the smallest element not yet generated, repeatedly.
std::vector<int> greedy_generators(FiniteGroup const &g)
{
  std::vector<int> gens;
  std::vector<char> in(g.order(), 0);
  in[g.identity()] = 1;
  for (int x = 0; x < g.order(); ++x) {
    if (in[x])
      continue;
    gens.push_back(x);
    in[x] = 1;
    in = closure(g, std::move(in));
  }
  return gens;
}

// Extends phi (defined on the generated part) along right multiplication by
// the generators. Returns false on an inconsistency.
bool extend_homomorphism(FiniteGroup const &g, FiniteGroup const &h,
                         std::vector<int> const &gens, std::vector<int> const &images,
                         std::vector<int> &phi)
{
  std::fill(phi.begin(), phi.end(), -1);
  phi[g.identity()] = h.identity();
  std::deque<int> queue{g.identity()};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int y = g.mul(x, gens[i]);
      int fy = h.mul(phi[x], images[i]);
      if (phi[y] < 0) {
        phi[y] = fy;
        queue.push_back(y);
      } else if (phi[y] != fy) {
        return false;
      }
    }
  }
  return true;
}

} // namespace

std::optional<std::vector<int>> group_iso(FiniteGroup const &g, FiniteGroup const &h)
{
  if (g.order() != h.order())
    return std::nullopt;
  int n = g.order();

  auto order_profile = [](FiniteGroup const &grp) {
    std::vector<int> p;
    for (int x = 0; x < grp.order(); ++x)
      p.push_back(grp.element_order(x));
    return p;
  };
  auto og = order_profile(g);
  auto oh = order_profile(h);
  {
    auto sg = og, sh = oh;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh)
      return std::nullopt;
  }

  auto gens = greedy_generators(g);
  std::vector<int> images(gens.size(), -1);
  std::vector<int> phi(n, -1);
  std::optional<std::vector<int>> found;

  auto rec = [&](auto &&self, std::size_t k) -> void {
    if (found)
      return;
    if (k == gens.size()) {
      if (!extend_homomorphism(g, h, gens, images, phi))
        return;
      std::vector<char> hit(n, 0);
      for (int y : phi) {
        if (y < 0 || hit[y])
          return;
        hit[y] = 1;
      }
      found = phi;
      return;
    }
    for (int y = 0; y < n; ++y) {
      if (oh[y] != og[gens[k]])
        continue;
      images[k] = y;
      // Prune: the assignment so far must extend consistently on the
      // subgroup generated by the first k+1 generators.
      std::vector<int> partial_gens(gens.begin(), gens.begin() + k + 1);
      std::vector<int> partial_images(images.begin(), images.begin() + k + 1);
      if (!extend_homomorphism(g, h, partial_gens, partial_images, phi))
        continue;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return found;
}

Table canonical_form(FiniteGroup const &g)
{
  int n = g.order();
  if (n == 1)
    return {{0}};

  auto label_from = [&](std::vector<int> const &gens, std::vector<int> &label,
                        std::vector<int> &order) {
    std::fill(label.begin(), label.end(), -1);
    order.clear();
    label[g.identity()] = 0;
    order.push_back(g.identity());
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int s : gens) {
        int y = g.mul(order[i], s);
        if (label[y] < 0) {
          label[y] = static_cast<int>(order.size());
          order.push_back(y);
        }
      }
    }
    return static_cast<int>(order.size()) == n;
  };

  std::vector<int> label(n), order;
  Table best;
  Table cand(n, std::vector<int>(n));
  for (std::size_t r = 1; best.empty(); ++r) {
    std::vector<int> tuple(r, 0);
    while (true) {
      if (label_from(tuple, label, order)) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            cand[i][j] = label[g.mul(order[i], order[j])];
        if (best.empty() || cand < best)
          best = cand;
      }
      std::size_t k = 0;
      while (k < r && ++tuple[k] == n) {
        tuple[k] = 0;
        ++k;
      }
      if (k == r)
        break;
    }
  }
  return best;
}

bool is_abelian(FiniteGroup const &g)
{
  for (int a = 0; a < g.order(); ++a)
    for (int b = a + 1; b < g.order(); ++b)
      if (g.mul(a, b) != g.mul(b, a))
        return false;
  return true;
}

std::string group_name(FiniteGroup const &g)
{
  int n = g.order();
  if (n == 1)
    return "1";
  std::vector<int> count(n + 1, 0);
  for (int a = 0; a < n; ++a)
    ++count[g.element_order(a)];
  if (count[n] > 0)
    return "Z" + std::to_string(n);
  if (n == 4)
    return "K4";
  if (!is_abelian(g)) {
    if (n == 6)
      return "S3";
    if (n == 8)
      return count[2] == 1 ? "Q8" : "D4";
    return "G" + std::to_string(n);
  }
  // Abelian: invariant factors read off greedily from the exponent. Exact
  // for the small orders this is used on.
  int exponent = 1;
  for (int k = 1; k <= n; ++k)
    if (count[k] > 0)
      exponent = k;
  std::string name;
  int rest = n;
  std::vector<int> factors;
  while (rest > 1) {
    int f = std::min(exponent, rest);
    while (rest % f != 0)
      --f;
    factors.push_back(f);
    rest /= f;
    exponent = f;
  }
  std::sort(factors.begin(), factors.end());
  for (std::size_t i = 0; i < factors.size(); ++i)
    name += (i ? "xZ" : "Z") + std::to_string(factors[i]);
  return name;
}

PermutationGroup closure_of_permutations(std::vector<FinMap> const &generators,
                                         std::size_t carrier_size, Caps const &caps)
{
  for (auto const &p : generators) {
    if (p.dom().size != carrier_size || p.cod().size != carrier_size || !p.is_bijective())
      throw InvalidAction("generators must be bijections of a common carrier");
  }
  std::vector<int> id(carrier_size);
  for (std::size_t i = 0; i < carrier_size; ++i)
    id[i] = static_cast<int>(i);

  auto compose_tables = [&](std::vector<int> const &a, std::vector<int> const &b) {
    std::vector<int> c(carrier_size);
    for (std::size_t x = 0; x < carrier_size; ++x)
      c[x] = a[b[x]];
    return c;
  };

  std::set<std::vector<int>> seen{id};
  std::deque<std::vector<int>> queue{id};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (auto const &gen : generators) {
      auto next = compose_tables(gen.table(), cur);
      if (seen.insert(next).second) {
        if (seen.size() > caps.perm_group_order)
          throw CapExceeded("perm_group_order", static_cast<long long>(caps.perm_group_order),
                            static_cast<long long>(seen.size()));
        queue.push_back(std::move(next));
      }
    }
  }

  std::vector<std::vector<int>> elems(seen.begin(), seen.end());
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i)
    index[elems[i]] = static_cast<int>(i);

  Table cayley(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      cayley[i][j] = index.at(compose_tables(elems[i], elems[j]));

  PermutationGroup out;
  out.group = check_group(std::move(cayley));
  Table act(elems.begin(), elems.end());
  FinSet carrier(carrier_size);
  out.action = GroupAction(out.group, carrier, act);
  for (auto &e : elems)
    out.elements.emplace_back(carrier, carrier, std::move(e));
  return out;
}

std::vector<Table> regular_group_tables(int n)
{
  std::vector<Table> out;
  if (n <= 0)
    return out;
  // rows[y] is the permutation z -> y*z, empty while unknown.
  Table rows(n);
  rows[0].resize(n);
  for (int z = 0; z < n; ++z)
    rows[0][z] = z;

  auto compatible = [&](Table const &r, std::vector<int> const &row, int y) {
    if (row[0] != y)
      return false;
    for (int z = 0; z < n; ++z) {
      if (y != 0 && row[z] == z)
        return false;
      for (int w = 0; w < n; ++w)
        if (w != y && !r[w].empty() && r[w][z] == row[z])
          return false;
    }
    return true;
  };

  // Close the known rows under composition; false on a contradiction.
  auto close = [&](Table &r) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < n; ++a) {
        if (r[a].empty())
          continue;
        for (int b = 0; b < n; ++b) {
          if (r[b].empty())
            continue;
          std::vector<int> prod(n);
          for (int z = 0; z < n; ++z)
            prod[z] = r[a][r[b][z]];
          int c = prod[0];
          if (r[c].empty()) {
            if (!compatible(r, prod, c))
              return false;
            r[c] = std::move(prod);
            changed = true;
          } else if (r[c] != prod) {
            return false;
          }
        }
      }
    }
    return true;
  };

  auto rec = [&](auto &&self, Table const &r) -> void {
    int y = -1;
    for (int k = 0; k < n && y < 0; ++k)
      if (r[k].empty())
        y = k;
    if (y < 0) {
      out.push_back(r);
      return;
    }
    // Enumerate candidate rows for y respecting Latin columns and no fixed
    // points, then close.
    std::vector<int> row(n, -1);
    std::vector<char> used(n, 0);
    row[0] = y;
    used[y] = 1;
    auto fill = [&](auto &&fself, int z) -> void {
      if (z == n) {
        Table next = r;
        next[y] = row;
        if (close(next))
          self(self, next);
        return;
      }
      for (int v = 0; v < n; ++v) {
        if (used[v] || v == z)
          continue;
        bool clash = false;
        for (int w = 0; w < n && !clash; ++w)
          clash = !r[w].empty() && r[w][z] == v;
        if (clash)
          continue;
        used[v] = 1;
        row[z] = v;
        fself(fself, z + 1);
        used[v] = 0;
      }
    };
    fill(fill, 1);
  };
  if (n == 1) {
    out.push_back(rows);
    return out;
  }
  rec(rec, rows);
  return out;
}

std::vector<FiniteGroup> groups_of_order(int n, Caps const &caps)
{
  if (n < 1)
    return {};
  if (static_cast<std::size_t>(n) > caps.fiber_size)
    throw CapExceeded("fiber_size", static_cast<long long>(caps.fiber_size), n);
  std::set<Table> forms;
  for (auto &t : regular_group_tables(n))
    forms.insert(canonical_form(check_group(std::move(t))));
  std::vector<FiniteGroup> out;
  for (auto const &t : forms)
    out.push_back(check_group(t));
  return out;
}

FiniteGroup sections(GroupBundle const &bundle, Caps const &caps)
{
  std::size_t order = 1;
  for (auto const &f : bundle.fibers) {
    order *= static_cast<std::size_t>(f.order());
    if (order > caps.group_order)
      throw CapExceeded("group_order", static_cast<long long>(caps.group_order),
                        static_cast<long long>(order));
  }
  Table t(order, std::vector<int>(order));
  std::vector<int> a, b;
  for (std::size_t x = 0; x < order; ++x) {
    a = section_components(bundle, static_cast<int>(x));
    for (std::size_t y = 0; y < order; ++y) {
      b = section_components(bundle, static_cast<int>(y));
      int idx = 0;
      for (std::size_t k = 0; k < bundle.fibers.size(); ++k)
        idx = idx * bundle.fibers[k].order() + bundle.fibers[k].mul(a[k], b[k]);
      t[x][y] = idx;
    }
  }
  return check_group(std::move(t));
}

std::vector<int> section_components(GroupBundle const &bundle, int element)
{
  std::vector<int> out(bundle.fibers.size());
  for (std::size_t k = bundle.fibers.size(); k-- > 0;) {
    out[k] = element % bundle.fibers[k].order();
    element /= bundle.fibers[k].order();
  }
  return out;
}

} // namespace galoisforge::algebra
