#include "galoisforge/correspondence.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "galoisforge/error.hpp"
#include "galoisforge/groupoid.hpp"

namespace galoisforge::correspondence {

using galois::SplittingStructure;
using galois::Variant;
using kernel::Congruence;
using kernel::FinMap;
using kernel::FinSet;

bool Lattice::le(int i, int j) const
{ return std::binary_search(leq.begin(), leq.end(), std::make_pair(i, j)); }

bool Lattice::is_partial_order() const
{
  auto n = static_cast<int>(size());
  for (int i = 0; i < n; ++i)
    if (!le(i, i))
      return false;
  for (auto [i, j] : leq) {
    if (i != j && le(j, i))
      return false;
    for (int k = 0; k < n; ++k)
      if (le(j, k) && !le(i, k))
        return false;
  }
  return true;
}

std::vector<std::pair<int, int>> Lattice::hasse() const
{
  std::vector<std::pair<int, int>> out;
  auto n = static_cast<int>(size());
  for (auto [i, j] : leq) {
    if (i == j)
      continue;
    bool covering = true;
    for (int k = 0; k < n && covering; ++k)
      if (k != i && k != j && le(i, k) && le(k, j))
        covering = false;
    if (covering)
      out.emplace_back(i, j);
  }
  return out;
}

namespace {

template <typename Le>
Lattice make_lattice(std::vector<std::string> labels, Le const &le)
{
  Lattice l;
  l.labels = std::move(labels);
  auto n = static_cast<int>(l.labels.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le(i, j))
        l.leq.emplace_back(i, j);
  return l;
}

// More classes first, then restricted growth string.
bool coarsest_last(std::vector<int> const &a, std::vector<int> const &b)
{
  int ca = a.empty() ? 0 : *std::max_element(a.begin(), a.end()) + 1;
  int cb = b.empty() ? 0 : *std::max_element(b.begin(), b.end()) + 1;
  if (ca != cb)
    return ca > cb;
  return a < b;
}

void sort_congruences(std::vector<Congruence> &cs)
{
  std::sort(cs.begin(), cs.end(), [](Congruence const &a, Congruence const &b) {
    return coarsest_last(a.classes(), b.classes());
  });
}

} // namespace

std::string partition_label(FinMap const &q)
{
  std::ostringstream os;
  for (auto const &f : q.fibers()) {
    os << '{';
    for (std::size_t i = 0; i < f.size(); ++i)
      os << (i ? "," : "") << f[i];
    os << '}';
  }
  return os.str();
}

std::string subgroup_label(Subgroup const &h)
{
  std::ostringstream os;
  for (std::size_t b = 0; b < h.size(); ++b) {
    os << (b ? "|" : "") << '{';
    for (std::size_t i = 0; i < h[b].size(); ++i)
      os << (i ? "," : "") << h[b][i];
    os << '}';
  }
  return os.str();
}

GaloisConnection galois_connection(FinMap const &pi, Caps const &caps)
{
  if (!pi.is_surjective())
    throw NotEpi("map is not surjective");
  auto m = pi.dom().size;
  if (m > caps.set_size)
    throw CapExceeded("set_size", static_cast<long long>(caps.set_size),
                      static_cast<long long>(m));
  auto fibers = pi.fibers();
  std::vector<std::vector<std::vector<int>>> parts;
  std::size_t total = 1;
  for (auto const &f : fibers) {
    parts.push_back(kernel::set_partitions(f.size()));
    total *= parts.back().size();
    if (total > caps.enumeration_results)
      throw CapExceeded("enumeration_results", static_cast<long long>(caps.enumeration_results),
                        static_cast<long long>(total));
  }

  GaloisConnection gc;
  std::vector<std::size_t> pick(fibers.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<int> labels(m, 0);
    int offset = 0;
    for (std::size_t b = 0; b < fibers.size(); ++b) {
      auto const &rgs = parts[b][pick[b]];
      int classes = 0;
      for (std::size_t i = 0; i < fibers[b].size(); ++i) {
        labels[fibers[b][i]] = offset + rgs[i];
        classes = std::max(classes, rgs[i] + 1);
      }
      offset += classes;
    }
    gc.congruences.push_back(Congruence::from_labels(labels));
    for (std::size_t b = fibers.size(); b-- > 0;) {
      if (++pick[b] < parts[b].size())
        break;
      pick[b] = 0;
    }
  }
  sort_congruences(gc.congruences);

  std::map<std::vector<std::pair<int, int>>, int> congruence_index;
  for (std::size_t i = 0; i < gc.congruences.size(); ++i)
    congruence_index[gc.congruences[i].pairs()] = static_cast<int>(i);

  std::vector<std::string> rel_labels, quot_labels;
  for (auto const &c : gc.congruences) {
    gc.quotients.push_back(kernel::quotient(c));
    quot_labels.push_back(partition_label(gc.quotients.back()));
    rel_labels.push_back(quot_labels.back());
  }
  std::map<std::vector<int>, int> quotient_index;
  for (std::size_t i = 0; i < gc.quotients.size(); ++i)
    quotient_index[gc.quotients[i].table()] = static_cast<int>(i);
  for (auto const &q : gc.quotients)
    gc.kp.push_back(congruence_index.at(kernel::kernel_pair(q).pairs()));
  for (auto const &c : gc.congruences)
    gc.coeq.push_back(quotient_index.at(kernel::quotient(c).table()));

  auto const &cs = gc.congruences;
  gc.rel = make_lattice(rel_labels, [&](int i, int j) { return cs[i].is_contained_in(cs[j]); });
  gc.quot = make_lattice(quot_labels, [&](int i, int j) {
    return cs[gc.kp[j]].is_contained_in(cs[gc.kp[i]]);
  });
  return gc;
}

namespace {

algebra::FiniteGroup const &group_over(SplittingStructure const &s, std::size_t component)
{
  return s.variant == Variant::Absolute ? s.absolute.group()
                                        : s.relative.bundle().fibers[component];
}

void require_subgroup(SplittingStructure const &s, Subgroup const &h)
{
  std::size_t expected = s.variant == Variant::Absolute ? 1 : s.pi.cod().size;
  if (h.size() != expected)
    throw NotASubgroup("expected " + std::to_string(expected) + " subgroup components, got " +
                       std::to_string(h.size()));
  for (std::size_t b = 0; b < h.size(); ++b)
    if (!algebra::is_subgroup(group_over(s, b), h[b]))
      throw NotASubgroup("component " + std::to_string(b) + " is not a subgroup");
}

std::vector<int> const &component_at(SplittingStructure const &s, Subgroup const &h, int x)
{ return s.variant == Variant::Absolute ? h[0] : h[s.pi(x)]; }

// Arrow indices of H x M in the action groupoid of s.
std::vector<int> product_arrows(SplittingStructure const &s, Subgroup const &h)
{
  auto m = static_cast<int>(s.pi.dom().size);
  std::vector<int> out;
  for (int x = 0; x < m; ++x)
    for (int g : component_at(s, h, x))
      out.push_back(s.variant == Variant::Absolute
                      ? g * m + x
                      : groupoid::relative_arrow_index(s.relative, g, x));
  std::sort(out.begin(), out.end());
  return out;
}

groupoid::FiniteGroupoid action_groupoid_of(SplittingStructure const &s)
{
  return s.variant == Variant::Absolute ? groupoid::action_groupoid(s.absolute)
                                        : groupoid::action_groupoid(s.relative);
}

std::optional<Subgroup> as_product(SplittingStructure const &s,
                                   groupoid::FiniteGroupoid const &g,
                                   std::vector<int> const &sub)
{
  if (s.variant == Variant::Absolute) {
    auto h = groupoid::is_H_ltimes_M(g, sub, s.absolute);
    if (!h)
      return std::nullopt;
    return Subgroup{*h};
  }
  auto h = groupoid::is_H_ltimes_M(g, sub, s.relative);
  if (!h)
    return std::nullopt;
  return *h;
}

// The congruence on M that a set of arrows maps to under the witness.
Congruence transported(SplittingStructure const &s, Congruence const &kp,
                       std::vector<int> const &arrows)
{
  std::vector<std::pair<int, int>> pairs;
  for (int a : arrows)
    pairs.push_back(kp.pairs()[s.witness[a]]);
  std::sort(pairs.begin(), pairs.end());
  return Congruence(s.pi.dom(), std::move(pairs));
}

bool subgroup_contained(Subgroup const &a, Subgroup const &b)
{
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!std::includes(b[k].begin(), b[k].end(), a[k].begin(), a[k].end()))
      return false;
  return true;
}

std::size_t subgroup_size(Subgroup const &h)
{
  std::size_t n = 0;
  for (auto const &c : h)
    n += c.size();
  return n;
}

} // namespace

std::vector<Subgroup> splitting_subgroups(SplittingStructure const &s, Caps const &caps)
{
  std::vector<Subgroup> out;
  if (s.variant == Variant::Absolute) {
    for (auto &h : algebra::subgroups(s.absolute.group(), caps))
      out.push_back(Subgroup{std::move(h)});
    return out;
  }
  auto const &fibers = s.relative.bundle().fibers;
  std::vector<std::vector<std::vector<int>>> per;
  std::size_t total = 1;
  for (auto const &g : fibers) {
    per.push_back(algebra::subgroups(g, caps));
    total *= per.back().size();
    if (total > caps.enumeration_results)
      throw CapExceeded("enumeration_results", static_cast<long long>(caps.enumeration_results),
                        static_cast<long long>(total));
  }
  std::vector<std::size_t> pick(per.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    Subgroup h;
    for (std::size_t b = 0; b < per.size(); ++b)
      h.push_back(per[b][pick[b]]);
    out.push_back(std::move(h));
    for (std::size_t b = per.size(); b-- > 0;) {
      if (++pick[b] < per[b].size())
        break;
      pick[b] = 0;
    }
  }
  std::stable_sort(out.begin(), out.end(), [](Subgroup const &a, Subgroup const &b) {
    return subgroup_size(a) != subgroup_size(b) ? subgroup_size(a) < subgroup_size(b) : a < b;
  });
  return out;
}

FinMap quotient_by_subgroup(SplittingStructure const &s, Subgroup const &h)
{
  require_subgroup(s, h);
  auto m = static_cast<int>(s.pi.dom().size);
  std::vector<int> act, proj;
  for (int x = 0; x < m; ++x)
    for (int g : component_at(s, h, x)) {
      act.push_back(s.act(g, x));
      proj.push_back(x);
    }
  FinSet pairs(act.size());
  auto q = kernel::coequalizer(FinMap(pairs, s.pi.dom(), std::move(act)),
                               FinMap(pairs, s.pi.dom(), std::move(proj)));
  if (!kernel::comparison(q, s.pi))
    throw Error("InternalError", "pi does not factor through the subgroup quotient");
  return q;
}

SplittingStructure restrict_to_subgroup(SplittingStructure const &s, Subgroup const &h)
{
  auto q = quotient_by_subgroup(s, h);
  auto m = q.dom().size;
  SplittingStructure r;
  r.variant = s.variant;
  r.pi = q;
  if (s.variant == Variant::Absolute) {
    algebra::Table rows;
    for (int g : h[0])
      rows.push_back(s.absolute.table()[g]);
    r.absolute = algebra::GroupAction(algebra::subgroup_as_group(s.absolute.group(), h[0]),
                                      s.pi.dom(), std::move(rows));
    if (auto w = galois::splitting_witness(q, r.absolute))
      r.witness = std::move(*w);
    return r;
  }
  auto qfibers = q.fibers();
  std::vector<int> local(m);
  for (auto const &f : qfibers)
    for (std::size_t i = 0; i < f.size(); ++i)
      local[f[i]] = static_cast<int>(i);
  std::vector<algebra::FiniteGroup> groups;
  std::vector<algebra::GroupAction> actions;
  for (auto const &f : qfibers) {
    int b = s.pi(f[0]);
    auto const &hb = h[b];
    auto grp = algebra::subgroup_as_group(s.relative.bundle().fibers[b], hb);
    algebra::Table rows(hb.size(), std::vector<int>(f.size()));
    for (std::size_t k = 0; k < hb.size(); ++k)
      for (std::size_t i = 0; i < f.size(); ++i)
        rows[k][i] = local[s.relative.apply(hb[k], f[i])];
    groups.push_back(grp);
    actions.emplace_back(grp, FinSet(f.size()), std::move(rows));
  }
  r.relative = algebra::BundleAction(algebra::GroupBundle(q.cod(), std::move(groups)), q,
                                     std::move(actions));
  if (auto w = galois::splitting_witness(r.relative))
    r.witness = std::move(*w);
  return r;
}

Hypotheses check_hypotheses(SplittingStructure const &s, Caps const &caps,
                            std::vector<int> const &blocks)
{
  Hypotheses hyp;
  auto g = action_groupoid_of(s);
  auto subs = groupoid::wide_subgroupoids(g, caps, blocks);
  hyp.wide_subgroupoids = subs.size();
  for (auto const &sub : subs) {
    if (as_product(s, g, sub))
      ++hyp.product_form;
    else if (!hyp.certificate)
      hyp.certificate = sub;
  }
  hyp.a = hyp.product_form == hyp.wide_subgroupoids;

  // The quotient by each subgroup exists as a coequalizer and is effective:
  // its kernel pair is the image of H x M.
  auto kp = kernel::kernel_pair(s.pi);
  hyp.b = true;
  for (auto const &h : splitting_subgroups(s, caps)) {
    auto q = quotient_by_subgroup(s, h);
    if (!(kernel::kernel_pair(q) == transported(s, kp, product_arrows(s, h)))) {
      hyp.b = false;
      break;
    }
  }
  return hyp;
}

CorrespondenceResult full_correspondence(SplittingStructure const &s, Caps const &caps,
                                         CorrespondenceOptions const &options)
{
  auto m = s.pi.dom().size;
  if (m > caps.set_size)
    throw CapExceeded("set_size", static_cast<long long>(caps.set_size), static_cast<long long>(m));
  CorrespondenceResult r;
  r.hypotheses = check_hypotheses(s, caps, options.blocks);
  if (options.require_hypotheses && !(r.hypotheses.a && r.hypotheses.b)) {
    std::string why = !r.hypotheses.a ? "a wide subgroupoid is not of the form H x M"
                                      : "a subgroup quotient is not effective";
    if (r.hypotheses.certificate) {
      why += " (arrows";
      for (int a : *r.hypotheses.certificate)
        why += " " + std::to_string(a);
      why += ")";
    }
    throw HypothesisFailed(why);
  }

  auto g = action_groupoid_of(s);
  auto kp = kernel::kernel_pair(s.pi);

  // Candidate quotients: the kernel pairs that are subobjects of KP_pi, i.e.
  // images of the admissible wide subgroupoids.
  std::vector<Congruence> candidates;
  for (auto const &sub : groupoid::wide_subgroupoids(g, caps, options.blocks))
    candidates.push_back(transported(s, kp, sub));
  sort_congruences(candidates);
  r.candidate_quotients = candidates.size();

  std::vector<int> back(kp.pairs().size(), -1);
  for (std::size_t a = 0; a < s.witness.size(); ++a)
    back[s.witness[a]] = static_cast<int>(a);
  std::vector<Subgroup> h_of_q;
  for (auto const &c : candidates) {
    std::vector<int> arrows;
    for (auto const &p : c.pairs())
      arrows.push_back(back[kp.index_of(p.first, p.second)]);
    std::sort(arrows.begin(), arrows.end());
    if (auto h = as_product(s, g, arrows)) {
      r.quotients.push_back(kernel::quotient(c));
      h_of_q.push_back(std::move(*h));
    }
  }
  r.scope = r.quotients.size() == candidates.size() ? "full" : "realizable";

  r.subgroups = splitting_subgroups(s, caps);
  std::vector<std::string> sub_labels, quot_labels;
  for (auto const &h : r.subgroups)
    sub_labels.push_back(subgroup_label(h));
  for (auto const &q : r.quotients)
    quot_labels.push_back(partition_label(q));
  r.subgroup_lattice = make_lattice(sub_labels, [&](int i, int j) {
    return subgroup_contained(r.subgroups[i], r.subgroups[j]);
  });
  std::vector<Congruence> qkp;
  for (auto const &q : r.quotients)
    qkp.push_back(kernel::kernel_pair(q));
  r.quotient_lattice = make_lattice(quot_labels, [&](int i, int j) {
    return qkp[j].is_contained_in(qkp[i]);
  });

  std::map<std::vector<int>, int> quotient_index;
  for (std::size_t j = 0; j < r.quotients.size(); ++j)
    quotient_index[r.quotients[j].table()] = static_cast<int>(j);

  std::vector<FinMap> q_of_h;
  r.round_trip_subgroups = true;
  std::set<int> hit;
  for (std::size_t i = 0; i < r.subgroups.size(); ++i) {
    auto q = quotient_by_subgroup(s, r.subgroups[i]);
    q_of_h.push_back(q);
    auto it = quotient_index.find(q.table());
    if (it == quotient_index.end() || !(h_of_q[it->second] == r.subgroups[i])) {
      r.round_trip_subgroups = false;
      continue;
    }
    r.bijection.emplace_back(static_cast<int>(i), it->second);
    hit.insert(it->second);
  }
  r.round_trip_subgroups =
    r.round_trip_subgroups && hit.size() == r.subgroups.size() && hit.size() == r.quotients.size();

  r.round_trip_quotients = true;
  for (std::size_t j = 0; j < r.quotients.size(); ++j)
    if (!kernel::isomorphic_under(quotient_by_subgroup(s, h_of_q[j]), r.quotients[j]))
      r.round_trip_quotients = false;

  r.order_reversal_verified = true;
  for (std::size_t i = 0; i < r.subgroups.size(); ++i)
    for (std::size_t k = 0; k < r.subgroups.size(); ++k) {
      bool sub = subgroup_contained(r.subgroups[i], r.subgroups[k]);
      bool finer = kernel::kernel_pair(q_of_h[i]).is_contained_in(kernel::kernel_pair(q_of_h[k]));
      if (sub != finer)
        r.order_reversal_verified = false;
    }

  for (auto const &h : r.subgroups) {
    Restriction res;
    res.structure = restrict_to_subgroup(s, h);
    res.witness_verified = !res.structure.witness.empty() || s.pi.dom().size == 0;
    res.galois_structure = res.witness_verified && galois::is_galois_structure(res.structure, caps);
    r.restrictions.push_back(std::move(res));
  }
  return r;
}

} // namespace galoisforge::correspondence
