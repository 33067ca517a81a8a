#include "galoisforge/kernel.hpp"

#include <algorithm>
#include <set>

#include "disjoint_sets.hpp"
#include "galoisforge/error.hpp"

namespace galoisforge::kernel {

FinSet::FinSet(std::vector<std::string> element_labels)
  : size(element_labels.size()), labels(std::move(element_labels))
{
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw InvalidMap("labels must be pairwise distinct");
}

FinMap::FinMap(FinSet dom, FinSet cod, std::vector<int> table)
  : _dom(std::move(dom)), _cod(std::move(cod)), _table(std::move(table))
{
  if (_table.size() != _dom.size)
    throw InvalidMap("table has " + std::to_string(_table.size()) +
                     " entries for a domain of size " + std::to_string(_dom.size));
  for (std::size_t i = 0; i < _table.size(); ++i) {
    if (_table[i] < 0 || static_cast<std::size_t>(_table[i]) >= _cod.size)
      throw InvalidMap("table[" + std::to_string(i) + "] = " + std::to_string(_table[i]) +
                       " outside codomain of size " + std::to_string(_cod.size));
  }
  if (!_dom.labels.empty() && _dom.labels.size() != _dom.size)
    throw InvalidMap("domain labels do not match domain size");
  if (!_cod.labels.empty() && _cod.labels.size() != _cod.size)
    throw InvalidMap("codomain labels do not match codomain size");
}

FinMap::FinMap(std::size_t dom, std::size_t cod, std::vector<int> table)
  : FinMap(FinSet(dom), FinSet(cod), std::move(table))
{}

FinMap FinMap::identity(FinSet s)
{
  std::vector<int> table(s.size);
  for (std::size_t i = 0; i < s.size; ++i)
    table[i] = static_cast<int>(i);
  FinSet copy = s;
  return FinMap(std::move(s), std::move(copy), std::move(table));
}

bool FinMap::is_surjective() const
{
  std::vector<char> hit(_cod.size, 0);
  for (int y : _table)
    hit[y] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool FinMap::is_injective() const
{
  std::vector<char> hit(_cod.size, 0);
  for (int y : _table) {
    if (hit[y])
      return false;
    hit[y] = 1;
  }
  return true;
}

std::vector<std::vector<int>> FinMap::fibers() const
{
  std::vector<std::vector<int>> out(_cod.size);
  for (std::size_t x = 0; x < _table.size(); ++x)
    out[_table[x]].push_back(static_cast<int>(x));
  return out;
}

Congruence::Congruence(FinSet carrier, std::vector<std::pair<int, int>> pairs)
  : _carrier(std::move(carrier)), _pairs(std::move(pairs))
{
  std::sort(_pairs.begin(), _pairs.end());
  _pairs.erase(std::unique(_pairs.begin(), _pairs.end()), _pairs.end());

  auto n = static_cast<int>(_carrier.size);
  for (auto [x, y] : _pairs) {
    if (x < 0 || y < 0 || x >= n || y >= n)
      throw InvalidMap("congruence pair outside carrier");
  }
  for (int x = 0; x < n; ++x) {
    if (!contains(x, x))
      throw InvalidMap("congruence is not reflexive at " + std::to_string(x));
  }
  for (auto [x, y] : _pairs) {
    if (!contains(y, x))
      throw InvalidMap("congruence is not symmetric");
  }
  for (auto [x, y] : _pairs) {
    auto lo = std::lower_bound(_pairs.begin(), _pairs.end(), std::make_pair(y, -1));
    for (auto it = lo; it != _pairs.end() && it->first == y; ++it) {
      if (!contains(x, it->second))
        throw InvalidMap("congruence is not transitive");
    }
  }
}

Congruence Congruence::from_labels(std::vector<int> const &labels)
{
  std::vector<std::pair<int, int>> pairs;
  auto n = static_cast<int>(labels.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (labels[x] == labels[y])
        pairs.emplace_back(x, y);
  Congruence c;
  c._carrier = FinSet(labels.size());
  c._pairs = std::move(pairs);
  return c;
}

bool Congruence::contains(int x, int y) const
{ return std::binary_search(_pairs.begin(), _pairs.end(), std::make_pair(x, y)); }

int Congruence::index_of(int x, int y) const
{
  auto it = std::lower_bound(_pairs.begin(), _pairs.end(), std::make_pair(x, y));
  if (it == _pairs.end() || *it != std::make_pair(x, y))
    return -1;
  return static_cast<int>(it - _pairs.begin());
}

std::vector<int> Congruence::classes() const
{
  detail::DisjointSets ds(_carrier.size);
  for (auto [x, y] : _pairs)
    ds.merge(x, y);
  return ds.labels();
}

bool Congruence::is_contained_in(Congruence const &other) const
{
  return std::includes(other._pairs.begin(), other._pairs.end(), _pairs.begin(),
                       _pairs.end());
}

FinMap compose(FinMap const &f, FinMap const &g)
{
  if (f.cod().size != g.dom().size)
    throw DomainMismatch("cannot compose: codomain of size " +
                         std::to_string(f.cod().size) + " vs domain of size " +
                         std::to_string(g.dom().size));
  std::vector<int> table(f.dom().size);
  for (std::size_t i = 0; i < table.size(); ++i)
    table[i] = g(f(static_cast<int>(i)));
  return FinMap(f.dom(), g.cod(), std::move(table));
}

FiberedProduct fibered_product(FinMap const &f, FinMap const &g)
{
  if (f.cod().size != g.cod().size)
    throw DomainMismatch("fibered product needs a common codomain");
  FiberedProduct out;
  auto nx = static_cast<int>(f.dom().size);
  auto ny = static_cast<int>(g.dom().size);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      if (f(x) == g(y))
        out.elements.emplace_back(x, y);

  std::vector<int> t1, t2;
  for (auto [x, y] : out.elements) {
    t1.push_back(x);
    t2.push_back(y);
  }
  out.apex = FinSet(out.elements.size());
  out.p1 = FinMap(out.apex, f.dom(), std::move(t1));
  out.p2 = FinMap(out.apex, g.dom(), std::move(t2));
  return out;
}

Congruence kernel_pair(FinMap const &pi)
{
  std::vector<std::pair<int, int>> pairs;
  auto n = static_cast<int>(pi.dom().size);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (pi(x) == pi(y))
        pairs.emplace_back(x, y);
  return Congruence(FinSet(pi.dom().size), std::move(pairs));
}

FinMap canonical_quotient(std::vector<int> const &labels)
{
  std::vector<int> table(labels.size());
  std::vector<std::pair<int, int>> seen; // (label, class)
  int next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](auto const &p) { return p.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], next);
      table[i] = next++;
    } else {
      table[i] = it->second;
    }
  }
  return FinMap(labels.size(), static_cast<std::size_t>(next), std::move(table));
}

FinMap coequalizer(FinMap const &f, FinMap const &g)
{
  if (f.dom().size != g.dom().size || f.cod().size != g.cod().size)
    throw DomainMismatch("coequalizer needs a parallel pair");
  detail::DisjointSets ds(f.cod().size);
  for (std::size_t x = 0; x < f.dom().size; ++x)
    ds.merge(f(static_cast<int>(x)), g(static_cast<int>(x)));
  auto q = canonical_quotient(ds.labels());
  return FinMap(f.cod(), q.cod(), q.table());
}

FinMap quotient(Congruence const &c)
{ return canonical_quotient(c.classes()); }

std::optional<FinMap> comparison(FinMap const &q, FinMap const &pi)
{
  if (q.dom().size != pi.dom().size)
    throw DomainMismatch("comparison needs maps out of the same set");
  std::vector<int> table(q.cod().size, -1);
  for (std::size_t x = 0; x < q.dom().size; ++x) {
    int c = q(static_cast<int>(x));
    int b = pi(static_cast<int>(x));
    if (table[c] >= 0 && table[c] != b)
      return std::nullopt;
    table[c] = b;
  }
  // Classes missed by a non-surjective q can go anywhere; use 0 when possible.
  for (auto &t : table) {
    if (t < 0) {
      if (pi.cod().size == 0)
        return std::nullopt;
      t = 0;
    }
  }
  return FinMap(q.cod(), pi.cod(), std::move(table));
}

bool isomorphic_under(FinMap const &q, FinMap const &pi)
{
  if (!q.is_surjective() || !pi.is_surjective())
    return false;
  auto c = comparison(q, pi);
  return c && c->is_bijective();
}

std::vector<int> partition_of(FinMap const &f)
{ return canonical_quotient(f.table()).table(); }

std::size_t aut_over_base_order(FinMap const &pi, std::size_t saturate_at)
{
  std::size_t order = 1;
  for (auto const &fiber : pi.fibers()) {
    for (std::size_t k = 2; k <= fiber.size(); ++k) {
      order *= k;
      if (order > saturate_at)
        return saturate_at + 1;
    }
  }
  return order;
}

std::vector<FinMap> aut_over_base(FinMap const &pi, Caps const &caps)
{
  auto order = aut_over_base_order(pi, caps.perm_group_order);
  if (order > caps.perm_group_order)
    throw CapExceeded("perm_group_order", static_cast<long long>(caps.perm_group_order),
                      static_cast<long long>(order));

  auto n = pi.dom().size;
  std::vector<FinMap> out;
  out.reserve(order);
  std::vector<int> table(n);
  std::vector<char> used(n, 0);

  // Depth-first, smallest candidate first: tables come out in lexicographic
  // order.
  auto rec = [&](auto &&self, std::size_t x) -> void {
    if (x == n) {
      out.emplace_back(pi.dom(), pi.dom(), table);
      return;
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || pi(static_cast<int>(y)) != pi(static_cast<int>(x)))
        continue;
      used[y] = 1;
      table[x] = static_cast<int>(y);
      self(self, x + 1);
      used[y] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<FinMap> aut_over_base_generators(FinMap const &pi)
{
  std::vector<FinMap> out;
  for (auto const &fiber : pi.fibers()) {
    for (std::size_t i = 0; i + 1 < fiber.size(); ++i) {
      auto t = FinMap::identity(pi.dom());
      std::vector<int> table = t.table();
      std::swap(table[fiber[i]], table[fiber[i + 1]]);
      out.emplace_back(pi.dom(), pi.dom(), std::move(table));
    }
  }
  return out;
}

std::vector<int> orbit_labels(std::size_t n, std::vector<FinMap> const &generators)
{
  detail::DisjointSets ds(n);
  for (auto const &g : generators) {
    if (g.dom().size != n || g.cod().size != n)
      throw DomainMismatch("generator does not act on the carrier");
    for (std::size_t x = 0; x < n; ++x)
      ds.merge(static_cast<int>(x), g(static_cast<int>(x)));
  }
  return ds.labels();
}

std::vector<std::vector<int>> set_partitions(std::size_t n)
{
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(n, 0);
  auto rec = [&](auto &&self, std::size_t i, int max_label) -> void {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (int v = 0; v <= max_label + 1; ++v) {
      rgs[i] = v;
      self(self, i + 1, std::max(max_label, v));
    }
  };
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  rgs[0] = 0;
  rec(rec, 1, 0);
  return out;
}

bool is_categorical_quotient(FinMap const &pi, std::vector<FinMap> const &generators,
                             Caps const &caps)
{
  if (!pi.is_surjective())
    throw NotEpi("map is not surjective");
  auto n = pi.dom().size;
  for (auto const &g : generators) {
    if (!(compose(g, pi) == pi))
      throw DomainMismatch("generator does not preserve the fibers of pi");
  }

  auto orbits = orbit_labels(n, generators);
  auto q = canonical_quotient(orbits);
  if (!isomorphic_under(q, pi))
    return false;

  // Universal property. An invariant f: M -> Z is a function of the orbit; up
  // to relabelling Z it is a partition of the orbit set, so enumerating those
  // partitions covers every codomain with |Z| <= |M|. The factorization
  // through a surjective pi is unique whenever it exists.
  auto k = q.cod().size;
  if (k > caps.set_size)
    throw CapExceeded("set_size", static_cast<long long>(caps.set_size),
                      static_cast<long long>(k));
  std::vector<int> rgs(k, 0);
  std::vector<int> f(n);
  std::vector<int> fbar(pi.cod().size);
  bool ok = true;
  auto factors = [&]() {
    std::fill(fbar.begin(), fbar.end(), -1);
    for (std::size_t x = 0; x < n; ++x) {
      int v = rgs[q(static_cast<int>(x))];
      int b = pi(static_cast<int>(x));
      if (fbar[b] >= 0 && fbar[b] != v)
        return false;
      fbar[b] = v;
    }
    return true;
  };
  auto rec = [&](auto &&self, std::size_t i, int max_label) -> void {
    if (!ok)
      return;
    if (i == k) {
      ok = factors();
      return;
    }
    for (int v = 0; v <= max_label + 1; ++v) {
      rgs[i] = v;
      self(self, i + 1, std::max(max_label, v));
    }
  };
  if (k > 0)
    rec(rec, 1, 0);
  else
    ok = factors();
  return ok;
}

bool is_normal_epi(FinMap const &pi, Caps const &caps)
{
  if (!pi.is_surjective())
    throw NotEpi("map is not surjective");
  return is_categorical_quotient(pi, aut_over_base_generators(pi), caps);
}

bool is_strict_epi(FinMap const &pi)
{
  if (!pi.is_surjective())
    throw NotEpi("map is not surjective");
  // pi-compatible maps are exactly the maps constant on kernel-pair classes,
  // so pi is strict iff M / KP_pi -> B is a bijection.
  auto kp = kernel_pair(pi);
  return isomorphic_under(quotient(kp), pi);
}

EpiClassification epi_classification(FinMap const &pi, Caps const &caps)
{
  EpiClassification out;
  out.epi = pi.is_surjective();
  if (!out.epi)
    return out;

  // Regular: pi is the coequalizer of the two projections of M x_B M taken as
  // a bare parallel pair.
  auto fp = fibered_product(pi, pi);
  auto q = coequalizer(fp.p1, fp.p2);
  out.regular = isomorphic_under(q, pi);

  // Effective: the kernel pair congruence is itself the kernel pair of its
  // quotient, and that quotient is pi.
  auto kp = kernel_pair(pi);
  auto qk = quotient(kp);
  out.effective = kernel_pair(qk) == kp && isomorphic_under(qk, pi);

  out.strict = is_strict_epi(pi);
  out.normal = is_normal_epi(pi, caps);
  return out;
}

} // namespace galoisforge::kernel
