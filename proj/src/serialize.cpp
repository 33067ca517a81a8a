#include "galoisforge/serialize.hpp"

#include <sstream>

#include "galoisforge/error.hpp"

namespace galoisforge::serialize {

using kernel::FinMap;

namespace {

Json const &require(Json const &j, char const *key, std::string const &where)
{
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(where + (where.empty() ? "" : ".") + key + ": missing");
  return j.at(key);
}

std::vector<int> int_array(Json const &j, std::string const &field)
{
  if (!j.is_array())
    throw SchemaError(field + ": expected an array of integers");
  std::vector<int> out;
  for (auto const &v : j) {
    if (!v.is_number_integer())
      throw SchemaError(field + ": expected an array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

int non_negative(Json const &j, std::string const &field)
{
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw SchemaError(field + ": expected a non-negative integer");
  return j.get<int>();
}

// Rethrows library validation errors with the schema field attached.
template <typename F>
auto with_field(std::string const &field, F const &f)
{
  try {
    return f();
  } catch (SchemaError const &) {
    throw;
  } catch (CapExceeded const &) {
    throw;
  } catch (Error const &e) {
    throw SchemaError(field + ": " + e.what());
  }
}

Json pairs_json(std::vector<std::pair<int, int>> const &ps)
{
  Json a = Json::array();
  for (auto [x, y] : ps)
    a.push_back({x, y});
  return a;
}

} // namespace

Json parse_text(std::string const &text)
{
  try {
    return Json::parse(text);
  } catch (nlohmann::json::parse_error const &e) {
    throw ParseError(e.what());
  }
}

FinMap parse_map(Json const &j)
{
  auto table = int_array(require(j, "map", ""), "map");
  int cod = 0;
  for (int v : table) {
    if (v < 0)
      throw SchemaError("map: entries must be non-negative");
    cod = std::max(cod, v + 1);
  }
  if (j.contains("codomain"))
    cod = non_negative(j.at("codomain"), "codomain");
  return with_field("map", [&] { return FinMap(table.size(), static_cast<std::size_t>(cod), table); });
}

covers::Graph parse_graph(Json const &j, std::string const &field)
{
  covers::Graph g;
  g.vertices = static_cast<std::size_t>(non_negative(require(j, "vertices", field), field + ".vertices"));
  auto const &edges = require(j, "edges", field);
  if (!edges.is_array())
    throw SchemaError(field + ".edges: expected an array of [u, v] pairs");
  for (auto const &e : edges) {
    auto uv = int_array(e, field + ".edges");
    if (uv.size() != 2)
      throw SchemaError(field + ".edges: expected an array of [u, v] pairs");
    g.edges.emplace_back(uv[0], uv[1]);
  }
  with_field(field + ".edges", [&] {
    g.validate();
    return 0;
  });
  return g;
}

covers::CoverInstance parse_cover(Json const &j)
{
  auto base = parse_graph(require(j, "base", ""), "base");
  if (j.contains("monodromy")) {
    auto const &m = j.at("monodromy");
    if (!m.is_array())
      throw SchemaError("monodromy: expected an array of permutations");
    std::vector<std::vector<int>> perms;
    for (auto const &p : m)
      perms.push_back(int_array(p, "monodromy"));
    std::optional<int> sheets;
    if (j.contains("sheets"))
      sheets = non_negative(j.at("sheets"), "sheets");
    return with_field("monodromy", [&] { return covers::cover_from_monodromy(base, perms, sheets); });
  }
  covers::CoverInstance c;
  c.base = base;
  c.total = parse_graph(require(j, "total", ""), "total");
  auto pv = int_array(require(j, "proj_v", ""), "proj_v");
  auto pe = int_array(require(j, "proj_e", ""), "proj_e");
  c.proj_v = with_field("proj_v", [&] { return FinMap(c.total.vertices, base.vertices, pv); });
  c.proj_e = with_field("proj_e", [&] { return FinMap(c.total.edges.size(), base.edges.size(), pe); });
  with_field("cover", [&] {
    c.validate();
    return 0;
  });
  return c;
}

fieldext::FieldExtension parse_field(Json const &j, Caps const &caps)
{
  int p = non_negative(require(j, "p", ""), "p");
  int n = non_negative(require(j, "n", ""), "n");
  std::optional<fieldext::Poly> modulus;
  if (j.contains("modulus"))
    modulus = int_array(j.at("modulus"), "modulus");
  return with_field(modulus ? "modulus" : "p", [&] { return fieldext::make_extension(p, n, modulus, caps); });
}

Json to_json(FinMap const &f)
{
  return Json{{"domain", f.dom().size}, {"codomain", f.cod().size}, {"table", f.table()}};
}

Json to_json(kernel::EpiClassification const &c)
{
  return Json{{"epi", c.epi},
              {"regular", c.regular},
              {"effective", c.effective},
              {"strict", c.strict},
              {"normal", c.normal}};
}

Json to_json(algebra::FiniteGroup const &g)
{
  return Json{{"order", g.order()}, {"name", algebra::group_name(g)}, {"cayley", g.cayley()}};
}

Json to_json(groupoid::FiniteGroupoid const &g)
{
  Json arrows = Json::array();
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    Json arrow{{"src", g.src(static_cast<int>(a))},
               {"tgt", g.tgt(static_cast<int>(a))},
               {"inv", g.inv(static_cast<int>(a))}};
    if (!g.arrow_labels().empty())
      arrow["label"] = g.arrow_labels()[a];
    arrows.push_back(arrow);
  }
  std::vector<int> ident;
  for (std::size_t x = 0; x < g.object_count(); ++x)
    ident.push_back(g.ident(static_cast<int>(x)));
  return Json{{"objects", g.object_count()}, {"arrows", arrows}, {"ident", ident}};
}

Json to_json(galois::SplittingStructure const &s)
{
  Json j{{"variant", galois::to_string(s.variant)}, {"groups", s.group_names()}};
  if (s.variant == galois::Variant::Absolute) {
    j["group"] = to_json(s.absolute.group());
    j["action"] = s.absolute.table();
  } else {
    Json fibers = Json::array();
    for (std::size_t b = 0; b < s.relative.bundle().base.size; ++b)
      fibers.push_back(Json{{"base_point", b},
                            {"fiber", s.relative.fiber(static_cast<int>(b))},
                            {"group", to_json(s.relative.bundle().fibers[b])},
                            {"action", s.relative.fiber_actions()[b].table()}});
    j["fibers"] = fibers;
  }
  j["witness"] = s.witness;
  return j;
}

Json to_json(galois::Verdict const &v)
{
  return Json{{"kind", galois::to_string(v.kind)}, {"group", v.group}};
}

Json to_json(galois::GaloisReport const &r)
{
  auto side = [](std::vector<galois::SplittingStructure> const &ss, std::vector<int> const &g,
                 galois::Verdict const &v) {
    Json list = Json::array();
    for (auto const &s : ss)
      list.push_back(to_json(s));
    return Json{{"splitting_classes", ss.size()},
                {"splittings", list},
                {"galois_structures", g},
                {"verdict", to_json(v)}};
  };
  return Json{{"classification", to_json(r.classification)},
              {"absolute", side(r.splittings_absolute, r.galois_absolute, r.verdict_absolute)},
              {"relative", side(r.splittings_relative, r.galois_relative, r.verdict_relative)}};
}

Json to_json(correspondence::Lattice const &l)
{
  return Json{{"nodes", l.labels}, {"hasse", pairs_json(l.hasse())}};
}

Json to_json(correspondence::CorrespondenceResult const &r)
{
  Json hyp{{"a", r.hypotheses.a},
           {"certificate", r.hypotheses.certificate ? Json(*r.hypotheses.certificate) : Json()},
           {"wide_subgroupoids", r.hypotheses.wide_subgroupoids},
           {"product_form", r.hypotheses.product_form},
           {"b", r.hypotheses.b}};
  Json quotients = Json::array();
  for (auto const &q : r.quotients)
    quotients.push_back(Json{{"partition", correspondence::partition_label(q)}, {"table", q.table()}});
  Json restrictions = Json::array();
  for (std::size_t i = 0; i < r.restrictions.size(); ++i)
    restrictions.push_back(Json{{"subgroup", correspondence::subgroup_label(r.subgroups[i])},
                                {"groups", r.restrictions[i].structure.group_names()},
                                {"witness_verified", r.restrictions[i].witness_verified},
                                {"galois_structure", r.restrictions[i].galois_structure}});
  return Json{{"hypotheses", hyp},
              {"scope", r.scope},
              {"subgroup_lattice", to_json(r.subgroup_lattice)},
              {"quotients", quotients},
              {"quotient_lattice", to_json(r.quotient_lattice)},
              {"candidate_quotients", r.candidate_quotients},
              {"bijection", pairs_json(r.bijection)},
              {"round_trip_subgroups", r.round_trip_subgroups},
              {"round_trip_quotients", r.round_trip_quotients},
              {"order_reversal_verified", r.order_reversal_verified},
              {"restrictions", restrictions}};
}

Json to_json(covers::Graph const &g)
{
  return Json{{"vertices", g.vertices}, {"edges", pairs_json(g.edges)}};
}

Json to_json(covers::CoverInstance const &c)
{
  return Json{{"base", to_json(c.base)},
              {"total", to_json(c.total)},
              {"proj_v", c.proj_v.table()},
              {"proj_e", c.proj_e.table()}};
}

Json to_json(covers::CoverVerdict const &v)
{
  return Json{{"galois_cover", v.galois_cover},
              {"kp_splits", v.kp_splits},
              {"deck_transitive", v.deck_transitive},
              {"agree", v.agree},
              {"group", to_json(v.group)}};
}

Json to_json(fieldext::Subfield const &f)
{
  return Json{{"subgroup", f.subgroup},
              {"size", f.elements.size()},
              {"degree", f.degree},
              {"elements", f.elements},
              {"minimal_polynomial", f.minimal_polynomial},
              {"equalizer_agrees", f.equalizer_agrees}};
}

Json to_json(fieldext::FieldCorrespondence const &fc)
{
  Json fields = Json::array();
  for (auto const &f : fc.fields)
    fields.push_back(to_json(f));
  return Json{{"aut_order", fc.aut.group.order()},
              {"subgroup_lattice", to_json(fc.subgroup_lattice)},
              {"field_lattice", to_json(fc.field_lattice)},
              {"fields", fields},
              {"bijection", pairs_json(fc.bijection)},
              {"order_reversal_verified", fc.order_reversal_verified},
              {"matches_divisor_lattice", fc.matches_divisor_lattice},
              {"matches_closure_enumeration", fc.matches_closure_enumeration},
              {"degrees_multiply", fc.degrees_multiply},
              {"hopf",
               Json{{"diagonal_invariants_dim", fc.hopf.diagonal_invariants_dim},
                    {"diagonal_image_is_maps_to_k", fc.hopf.diagonal_image_is_maps_to_k},
                    {"one_sided_invariants_dim", fc.hopf.one_sided_invariants_dim},
                    {"one_sided_image_is_constants", fc.hopf.one_sided_image_is_constants}}}};
}

namespace {

void flatten(Json const &j, std::string const &path, std::ostringstream &os)
{
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
  } else if (j.is_array() && !j.empty() && (j.front().is_structured())) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

std::string quoted(std::string const &s)
{
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::string to_text(Json const &j)
{
  std::ostringstream os;
  flatten(j, "", os);
  return os.str();
}

std::string lattices_to_dot(correspondence::Lattice const &left, std::string const &left_name,
                            correspondence::Lattice const &right, std::string const &right_name,
                            std::vector<std::pair<int, int>> const &pairs, std::string const &name)
{
  std::ostringstream os;
  os << "digraph " << quoted(name) << " {\n  rankdir=BT;\n";
  auto cluster = [&](correspondence::Lattice const &l, std::string const &title, char prefix) {
    os << "  subgraph cluster_" << prefix << " {\n    label=" << quoted(title) << ";\n";
    for (std::size_t i = 0; i < l.size(); ++i)
      os << "    " << prefix << i << " [label=" << quoted(l.labels[i]) << "];\n";
    for (auto [i, j] : l.hasse())
      os << "    " << prefix << i << " -> " << prefix << j << ";\n";
    os << "  }\n";
  };
  cluster(left, left_name, 'l');
  cluster(right, right_name, 'r');
  for (auto [i, j] : pairs)
    os << "  l" << i << " -> r" << j << " [style=dashed, dir=none, constraint=false];\n";
  os << "}\n";
  return os.str();
}

} // namespace galoisforge::serialize
