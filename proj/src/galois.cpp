#include "galoisforge/galois.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "galoisforge/error.hpp"
#include "galoisforge/groupoid.hpp"

namespace galoisforge::galois {

using algebra::BundleAction;
using algebra::FiniteGroup;
using algebra::GroupAction;
using algebra::GroupBundle;
using algebra::Table;
using kernel::FinMap;
using kernel::FinSet;

std::string to_string(Variant v)
{ return v == Variant::Absolute ? "absolute" : "relative"; }

std::string to_string(VerdictKind k)
{
  switch (k) {
  case VerdictKind::NotEpi: return "NotEpi";
  case VerdictKind::NotNormal: return "NotNormal";
  case VerdictKind::NoSplitting: return "NoSplitting";
  case VerdictKind::MultipleStructures: return "MultipleStructures";
  case VerdictKind::NoGaloisStructure: return "NoGaloisStructure";
  case VerdictKind::Galois: return "Galois";
  }
  return "?";
}

std::vector<std::string> SplittingStructure::group_names() const
{
  if (variant == Variant::Absolute)
    return {algebra::group_name(absolute.group())};
  std::vector<std::string> out;
  for (auto const &g : relative.bundle().fibers)
    out.push_back(algebra::group_name(g));
  return out;
}

int SplittingStructure::act(int g, int x) const
{ return variant == Variant::Absolute ? absolute.apply(g, x) : relative.apply(g, x); }

int SplittingStructure::group_order_at(int x) const
{
  return variant == Variant::Absolute ? absolute.group().order()
                                      : relative.bundle().fibers[pi(x)].order();
}

namespace {

void require_epi(FinMap const &pi)
{
  if (!pi.is_surjective())
    throw NotEpi("map is not surjective");
}

void require_fiber_cap(std::vector<std::vector<int>> const &fibers, Caps const &caps)
{
  for (auto const &f : fibers) {
    if (f.size() > caps.fiber_size)
      throw CapExceeded("fiber_size", static_cast<long long>(caps.fiber_size),
                        static_cast<long long>(f.size()));
    // a splitting group acting regularly on f has order |f|
    if (f.size() > caps.group_order)
      throw CapExceeded("group_order", static_cast<long long>(caps.group_order),
                        static_cast<long long>(f.size()));
  }
}

// Left-regular action of g on the positions 0..n-1 of a fiber, positions
// identified with group elements.
Table regular_table(FiniteGroup const &g)
{ return g.cayley(); }

std::optional<std::vector<int>> finish_witness(groupoid::FiniteGroupoid const &action,
                                               kernel::Congruence const &kp,
                                               std::vector<int> witness)
{
  auto target = groupoid::congruence_as_groupoid(kp);
  if (!groupoid::is_iso_over_objects(action, target, witness))
    return std::nullopt;
  return witness;
}

} // namespace

std::optional<std::vector<int>> splitting_witness(FinMap const &pi, GroupAction const &a)
{
  auto m = static_cast<int>(pi.dom().size);
  if (a.carrier().size != pi.dom().size)
    throw FiberMismatch("action carrier differs from the domain of pi");
  for (int g = 0; g < a.group().order(); ++g)
    for (int x = 0; x < m; ++x)
      if (pi(a.apply(g, x)) != pi(x))
        return std::nullopt;
  auto kp = kernel::kernel_pair(pi);
  auto action = groupoid::action_groupoid(a);
  std::vector<int> witness(action.arrow_count());
  for (int g = 0; g < a.group().order(); ++g)
    for (int x = 0; x < m; ++x)
      witness[g * m + x] = kp.index_of(x, a.apply(g, x));
  return finish_witness(action, kp, std::move(witness));
}

std::optional<std::vector<int>> splitting_witness(BundleAction const &a)
{
  auto kp = kernel::kernel_pair(a.pi());
  auto action = groupoid::action_groupoid(a);
  std::vector<int> witness(action.arrow_count());
  for (std::size_t k = 0; k < action.arrow_count(); ++k)
    witness[k] = kp.index_of(action.src(static_cast<int>(k)), action.tgt(static_cast<int>(k)));
  return finish_witness(action, kp, std::move(witness));
}

std::vector<SplittingStructure> enumerate_splittings_absolute(FinMap const &pi, Caps const &caps)
{
  require_epi(pi);
  auto fibers = pi.fibers();
  require_fiber_cap(fibers, caps);
  auto m = pi.dom().size;
  std::vector<SplittingStructure> out;
  if (m == 0) {
    SplittingStructure s;
    s.variant = Variant::Absolute;
    s.pi = pi;
    s.absolute = GroupAction(FiniteGroup(), FinSet(0), Table(1));
    s.witness = *splitting_witness(pi, s.absolute);
    out.push_back(std::move(s));
    return out;
  }
  auto n = fibers[0].size();
  for (auto const &f : fibers)
    if (f.size() != n)
      return out;

  // Any regular action of G on a fiber is conjugate to the left-regular one
  // by a bijection of that fiber, so one action per group type suffices.
  for (auto const &grp : algebra::groups_of_order(static_cast<int>(n), caps)) {
    Table reg = regular_table(grp);
    Table act(grp.order(), std::vector<int>(m));
    for (int g = 0; g < grp.order(); ++g)
      for (auto const &f : fibers)
        for (std::size_t i = 0; i < n; ++i)
          act[g][f[i]] = f[reg[g][i]];
    SplittingStructure s;
    s.variant = Variant::Absolute;
    s.pi = pi;
    s.absolute = GroupAction(grp, FinSet(m), std::move(act));
    auto w = splitting_witness(pi, s.absolute);
    if (!w)
      throw Error("InternalError", "regular action failed to split the kernel pair");
    s.witness = std::move(*w);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SplittingStructure> enumerate_splittings_relative(FinMap const &pi, Caps const &caps)
{
  require_epi(pi);
  auto fibers = pi.fibers();
  require_fiber_cap(fibers, caps);
  auto nb = fibers.size();

  std::vector<std::vector<FiniteGroup>> choices(nb);
  std::size_t total = 1;
  for (std::size_t b = 0; b < nb; ++b) {
    choices[b] = algebra::groups_of_order(static_cast<int>(fibers[b].size()), caps);
    total *= choices[b].size();
    if (total > caps.enumeration_results)
      throw CapExceeded("enumeration_results", static_cast<long long>(caps.enumeration_results),
                        static_cast<long long>(total));
  }

  std::vector<SplittingStructure> out;
  std::vector<std::size_t> pick(nb, 0);
  for (std::size_t count = 0; count < total; ++count) {
    std::vector<FiniteGroup> groups;
    std::vector<GroupAction> actions;
    for (std::size_t b = 0; b < nb; ++b) {
      auto const &grp = choices[b][pick[b]];
      groups.push_back(grp);
      actions.emplace_back(grp, FinSet(fibers[b].size()), regular_table(grp));
    }
    SplittingStructure s;
    s.variant = Variant::Relative;
    s.pi = pi;
    s.relative = BundleAction(GroupBundle(pi.cod(), std::move(groups)), pi, std::move(actions));
    auto w = splitting_witness(s.relative);
    if (!w)
      throw Error("InternalError", "regular bundle action failed to split the kernel pair");
    s.witness = std::move(*w);
    out.push_back(std::move(s));
    // Odometer with the last base point fastest.
    for (std::size_t b = nb; b-- > 0;) {
      if (++pick[b] < choices[b].size())
        break;
      pick[b] = 0;
    }
  }
  return out;
}

std::vector<SplittingStructure> enumerate_splittings_within(FinMap const &pi,
                                                            algebra::PermutationGroup const &ambient,
                                                            Caps const &caps)
{
  require_epi(pi);
  auto fibers = pi.fibers();
  auto m = pi.dom().size;
  if (ambient.action.carrier().size != m)
    throw FiberMismatch("ambient group does not act on the domain of pi");
  std::vector<SplittingStructure> out;
  if (m == 0)
    return out;
  auto n = fibers[0].size();
  for (auto const &f : fibers)
    if (f.size() != n)
      return out;

  std::set<Table> seen;
  for (auto const &h : algebra::subgroups(ambient.group, caps)) {
    if (h.size() != n)
      continue;
    bool regular = true;
    for (auto const &f : fibers) {
      std::set<int> orbit;
      for (int g : h) {
        int y = ambient.action.apply(g, f[0]);
        if (pi(y) != pi(f[0]))
          regular = false;
        orbit.insert(y);
      }
      if (orbit.size() != n)
        regular = false;
      if (!regular)
        break;
    }
    if (!regular)
      continue;
    auto sub = algebra::subgroup_as_group(ambient.group, h);
    if (!seen.insert(algebra::canonical_form(sub)).second)
      continue;
    Table act;
    for (int g : h)
      act.push_back(ambient.action.table()[g]);
    SplittingStructure s;
    s.variant = Variant::Absolute;
    s.pi = pi;
    s.absolute = GroupAction(sub, FinSet(m), std::move(act));
    auto w = splitting_witness(pi, s.absolute);
    if (!w)
      continue;
    s.witness = std::move(*w);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

bool is_injective_hom(FiniteGroup const &src, std::vector<FinMap> const &image)
{
  std::set<std::vector<int>> distinct;
  for (auto const &f : image)
    distinct.insert(f.table());
  if (distinct.size() != image.size())
    return false;
  for (int a = 0; a < src.order(); ++a)
    for (int b = 0; b < src.order(); ++b)
      // alpha_{ab} = alpha_a ∘ alpha_b, and compose(f, g) = g∘f.
      if (!(image[src.mul(a, b)] == kernel::compose(image[b], image[a])))
        return false;
  return true;
}

bool is_over_base_bijection(FinMap const &f, FinMap const &pi)
{
  if (!f.is_bijective())
    return false;
  for (std::size_t x = 0; x < pi.dom().size; ++x)
    if (pi(f(static_cast<int>(x))) != pi(static_cast<int>(x)))
      return false;
  return true;
}

} // namespace

GlobalElements induced_global_elements(SplittingStructure const &s, Caps const &caps)
{
  GlobalElements ge;
  auto const &pi = s.pi;
  auto m = pi.dom().size;
  auto nb = pi.cod().size;

  GroupBundle bundle;
  if (s.variant == Variant::Absolute) {
    ge.star = s.absolute.group();
    bundle = GroupBundle(pi.cod(), std::vector<FiniteGroup>(nb, ge.star));
    ge.base = algebra::sections(bundle, caps);
    for (int g = 0; g < ge.star.order(); ++g) {
      int idx = 0;
      for (std::size_t b = 0; b < nb; ++b)
        idx = idx * ge.star.order() + g;
      ge.star_to_base.push_back(idx);
    }
  } else {
    bundle = s.relative.bundle();
    ge.base = algebra::sections(bundle, caps);
    ge.star = ge.base;
    for (int g = 0; g < ge.star.order(); ++g)
      ge.star_to_base.push_back(g);
  }

  std::set<int> hit(ge.star_to_base.begin(), ge.star_to_base.end());
  ge.star_to_base_injective_hom = hit.size() == ge.star_to_base.size();
  for (int a = 0; a < ge.star.order() && ge.star_to_base_injective_hom; ++a)
    for (int b = 0; b < ge.star.order(); ++b)
      if (ge.star_to_base[ge.star.mul(a, b)] !=
          ge.base.mul(ge.star_to_base[a], ge.star_to_base[b])) {
        ge.star_to_base_injective_hom = false;
        break;
      }

  for (int e = 0; e < ge.base.order(); ++e) {
    auto c = algebra::section_components(bundle, e);
    std::vector<int> table(m);
    for (std::size_t x = 0; x < m; ++x)
      table[x] = s.act(c[pi(static_cast<int>(x))], static_cast<int>(x));
    ge.base_to_aut.emplace_back(pi.dom(), pi.dom(), std::move(table));
  }
  ge.base_to_aut_injective_hom = is_injective_hom(ge.base, ge.base_to_aut);
  ge.image_in_aut = std::all_of(ge.base_to_aut.begin(), ge.base_to_aut.end(),
                                [&](FinMap const &f) { return is_over_base_bijection(f, pi); });
  for (int g : ge.star_to_base)
    ge.star_to_aut.push_back(ge.base_to_aut[g]);
  return ge;
}

bool is_galois_structure(SplittingStructure const &s, Caps const &caps)
{
  std::size_t star = 1;
  if (s.variant == Variant::Absolute)
    star = static_cast<std::size_t>(s.absolute.group().order());
  else
    for (auto const &g : s.relative.bundle().fibers)
      star *= static_cast<std::size_t>(g.order());
  if (star != kernel::aut_over_base_order(s.pi, caps.perm_group_order))
    return false;
  auto ge = induced_global_elements(s, caps);
  return ge.star_to_base_injective_hom && ge.base_to_aut_injective_hom && ge.image_in_aut;
}

FinMap end_from_section(SplittingStructure const &s, std::vector<int> const &g)
{
  auto m = s.pi.dom().size;
  if (g.size() != m)
    throw FiberMismatch("section needs one group element per point, got " +
                        std::to_string(g.size()) + " for " + std::to_string(m));
  std::vector<int> table(m);
  for (std::size_t x = 0; x < m; ++x) {
    int xi = static_cast<int>(x);
    if (g[x] < 0 || g[x] >= s.group_order_at(xi))
      throw FiberMismatch("section value at " + std::to_string(x) +
                          " is not an element of the group over " + std::to_string(s.pi(xi)));
    table[x] = s.act(g[x], xi);
  }
  return FinMap(s.pi.dom(), s.pi.dom(), std::move(table));
}

namespace {

// All sections of G(M) in odometer order, last point fastest.
std::vector<std::vector<int>> all_sections(SplittingStructure const &s, Caps const &caps)
{
  auto m = s.pi.dom().size;
  std::size_t total = 1;
  for (std::size_t x = 0; x < m; ++x) {
    total *= static_cast<std::size_t>(s.group_order_at(static_cast<int>(x)));
    if (total > caps.enumeration_results)
      throw CapExceeded("enumeration_results", static_cast<long long>(caps.enumeration_results),
                        static_cast<long long>(total));
  }
  std::vector<std::vector<int>> out;
  out.reserve(total);
  std::vector<int> cur(m, 0);
  for (std::size_t k = 0; k < total; ++k) {
    out.push_back(cur);
    for (std::size_t x = m; x-- > 0;) {
      if (++cur[x] < s.group_order_at(static_cast<int>(x)))
        break;
      cur[x] = 0;
    }
  }
  return out;
}

int mul_at(SplittingStructure const &s, int x, int a, int b)
{
  if (s.variant == Variant::Absolute)
    return s.absolute.group().mul(a, b);
  return s.relative.bundle().fibers[s.pi(x)].mul(a, b);
}

} // namespace

bool end_bijection_holds(SplittingStructure const &s, Caps const &caps)
{
  auto const &pi = s.pi;
  std::size_t end_count = 1;
  for (auto const &f : pi.fibers())
    for (std::size_t i = 0; i < f.size(); ++i)
      end_count *= f.size();
  std::set<std::vector<int>> images;
  auto secs = all_sections(s, caps);
  for (auto const &g : secs) {
    auto f = end_from_section(s, g);
    for (std::size_t x = 0; x < pi.dom().size; ++x)
      if (pi(f(static_cast<int>(x))) != pi(static_cast<int>(x)))
        return false;
    images.insert(f.table());
  }
  return images.size() == secs.size() && images.size() == end_count;
}

CompositionDefects composition_defects(SplittingStructure const &s, Caps const &caps)
{
  CompositionDefects out;
  auto secs = all_sections(s, caps);
  auto m = s.pi.dom().size;
  if (secs.size() * secs.size() > caps.enumeration_results)
    throw CapExceeded("enumeration_results", static_cast<long long>(caps.enumeration_results),
                      static_cast<long long>(secs.size() * secs.size()));
  std::vector<FinMap> alpha;
  for (auto const &g : secs)
    alpha.push_back(end_from_section(s, g));

  auto constant_on_fibers = [&](std::vector<int> const &g) {
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        if (s.pi(static_cast<int>(x)) == s.pi(static_cast<int>(y)) && g[x] != g[y])
          return false;
    return true;
  };

  out.base_sections_compatible = true;
  std::vector<int> gh(m);
  for (std::size_t i = 0; i < secs.size(); ++i) {
    bool base_section = constant_on_fibers(secs[i]);
    for (std::size_t j = 0; j < secs.size(); ++j) {
      for (std::size_t x = 0; x < m; ++x)
        gh[x] = mul_at(s, static_cast<int>(x), secs[i][x], secs[j][x]);
      bool ok = end_from_section(s, gh) == kernel::compose(alpha[j], alpha[i]);
      ++out.pairs_checked;
      if (!ok) {
        ++out.defect_count;
        if (!out.example)
          out.example = std::make_pair(secs[i], secs[j]);
        if (base_section)
          out.base_sections_compatible = false;
      }
    }
  }
  return out;
}

namespace {

Verdict decide(std::vector<SplittingStructure> const &splittings, std::vector<int> const &galois)
{
  Verdict v;
  if (splittings.empty())
    v.kind = VerdictKind::NoSplitting;
  else if (galois.size() == 1) {
    v.kind = VerdictKind::Galois;
    v.group = splittings[galois[0]].group_names();
  } else if (galois.size() > 1 || splittings.size() > 1)
    v.kind = VerdictKind::MultipleStructures;
  else
    v.kind = VerdictKind::NoGaloisStructure;
  return v;
}

} // namespace

GaloisReport galois_verdict(FinMap const &pi, Caps const &caps)
{
  GaloisReport r;
  r.classification = kernel::epi_classification(pi, caps);
  if (!r.classification.epi) {
    r.verdict_absolute.kind = r.verdict_relative.kind = VerdictKind::NotEpi;
    return r;
  }
  r.splittings_absolute = enumerate_splittings_absolute(pi, caps);
  r.splittings_relative = enumerate_splittings_relative(pi, caps);
  for (std::size_t i = 0; i < r.splittings_absolute.size(); ++i)
    if (is_galois_structure(r.splittings_absolute[i], caps))
      r.galois_absolute.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < r.splittings_relative.size(); ++i)
    if (is_galois_structure(r.splittings_relative[i], caps))
      r.galois_relative.push_back(static_cast<int>(i));
  if (!r.classification.normal) {
    r.verdict_absolute.kind = r.verdict_relative.kind = VerdictKind::NotNormal;
    return r;
  }
  r.verdict_absolute = decide(r.splittings_absolute, r.galois_absolute);
  r.verdict_relative = decide(r.splittings_relative, r.galois_relative);
  return r;
}

} // namespace galoisforge::galois
