#include "galoisforge/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "galoisforge/error.hpp"
#include "galoisforge/serialize.hpp"

namespace galoisforge::cli {

using serialize::Json;

Caps parse_caps(std::string const &text, Caps base)
{
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw SchemaError("caps: expected key=value, got '" + item + "'");
    auto key = item.substr(0, eq);
    auto value = item.substr(eq + 1);
    long long v = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(value, &used);
      if (used != value.size())
        throw std::invalid_argument(value);
    } catch (std::exception const &) {
      throw SchemaError("caps." + key + ": '" + value + "' is not an integer");
    }
    if (v <= 0)
      throw SchemaError("caps." + key + ": must be positive");
    auto n = static_cast<std::size_t>(v);
    if (key == "set-size")
      base.set_size = n;
    else if (key == "group-order")
      base.group_order = n;
    else if (key == "fiber-size")
      base.fiber_size = n;
    else if (key == "perm-group-order")
      base.perm_group_order = n;
    else if (key == "groupoid-arrows")
      base.groupoid_arrows = n;
    else if (key == "enumeration-results")
      base.enumeration_results = n;
    else if (key == "field-size")
      base.field_size = n;
    else
      throw SchemaError("caps: unknown key '" + key + "'");
  }
  return base;
}

namespace {

std::string kp_dot(kernel::FinMap const &pi)
{ return groupoid::to_dot(groupoid::congruence_as_groupoid(kernel::kernel_pair(pi)), "kernel_pair"); }

std::string emit(Json const &j, Format format)
{
  return format == Format::Text ? serialize::to_text(j) : j.dump(2) + "\n";
}

std::string classify(Json const &in, Format format, Caps const &caps)
{
  auto pi = serialize::parse_map(in);
  if (format == Format::Dot)
    return kp_dot(pi);
  std::vector<std::size_t> sizes;
  for (auto const &f : pi.fibers())
    sizes.push_back(f.size());
  Json j{{"command", "classify"},
         {"map", serialize::to_json(pi)},
         {"fiber_sizes", sizes},
         {"classification", serialize::to_json(kernel::epi_classification(pi, caps))},
         {"aut_order", kernel::aut_over_base_order(pi, caps.perm_group_order)}};
  return emit(j, format);
}

std::string splittings(Json const &in, Format format, Caps const &caps)
{
  auto pi = serialize::parse_map(in);
  if (format == Format::Dot)
    return kp_dot(pi);
  auto list = [](std::vector<galois::SplittingStructure> const &ss) {
    Json a = Json::array();
    for (auto const &s : ss)
      a.push_back(serialize::to_json(s));
    return a;
  };
  auto abs = galois::enumerate_splittings_absolute(pi, caps);
  auto rel = galois::enumerate_splittings_relative(pi, caps);
  Json j{{"command", "splittings"},
         {"map", serialize::to_json(pi)},
         {"absolute_classes", abs.size()},
         {"absolute", list(abs)},
         {"relative_classes", rel.size()},
         {"relative", list(rel)}};
  return emit(j, format);
}

std::string verdict(Json const &in, Format format, Caps const &caps)
{
  auto pi = serialize::parse_map(in);
  if (format == Format::Dot)
    return kp_dot(pi);
  Json j{{"command", "verdict"}, {"map", serialize::to_json(pi)}};
  j["aut_order"] = kernel::aut_over_base_order(pi, caps.perm_group_order);
  auto report = serialize::to_json(galois::galois_verdict(pi, caps));
  for (auto const &[k, v] : report.items())
    j[k] = v;
  return emit(j, format);
}

std::string correspondence_cmd(Json const &in, Format format, Caps const &caps)
{
  auto pi = serialize::parse_map(in);
  std::string variant = "absolute";
  if (in.contains("variant")) {
    if (!in.at("variant").is_string() ||
        (in.at("variant") != "absolute" && in.at("variant") != "relative"))
      throw SchemaError("variant: expected \"absolute\" or \"relative\"");
    variant = in.at("variant").get<std::string>();
  }
  auto ss = variant == "absolute" ? galois::enumerate_splittings_absolute(pi, caps)
                                  : galois::enumerate_splittings_relative(pi, caps);
  Json list = Json::array();
  std::vector<correspondence::CorrespondenceResult> results;
  for (auto const &s : ss) {
    results.push_back(correspondence::full_correspondence(s, caps));
    Json c{{"groups", s.group_names()}};
    auto body = serialize::to_json(results.back());
    for (auto const &[k, v] : body.items())
      c[k] = v;
    list.push_back(c);
  }
  if (format == Format::Dot) {
    if (results.empty())
      return "digraph \"correspondence\" {\n}\n";
    return serialize::lattices_to_dot(results[0].subgroup_lattice, "subgroups",
                                      results[0].quotient_lattice, "quotients",
                                      results[0].bijection);
  }
  Json j{{"command", "correspondence"},
         {"map", serialize::to_json(pi)},
         {"variant", variant},
         {"correspondences", list}};
  return emit(j, format);
}

std::string cover_cmd(Json const &in, Format format, Caps const &caps)
{
  auto c = serialize::parse_cover(in);
  if (format == Format::Dot)
    return covers::to_dot(c);
  auto v = covers::cover_galois_verdict(c, caps);
  Json j{{"command", "cover"},
         {"sheets", c.sheets()},
         {"cover", serialize::to_json(c)},
         {"galois_cover", v.galois_cover},
         {"kp_splits", v.kp_splits},
         {"deck_transitive", v.deck_transitive},
         {"agree", v.agree},
         {"group", serialize::to_json(v.group)}};
  if (v.galois_cover) {
    auto ic = covers::intermediate_covers(c, caps);
    Json inter = serialize::to_json(ic.correspondence);
    Json cs = Json::array();
    for (auto const &q : ic.covers)
      cs.push_back(Json{{"sheets", q.sheets()}, {"cover", serialize::to_json(q)}});
    inter["covers"] = cs;
    j["intermediate"] = inter;
  } else {
    j["intermediate"] = nullptr;
  }
  return emit(j, format);
}

std::string field_cmd(Json const &in, Format format, Caps const &caps)
{
  auto ext = serialize::parse_field(in, caps);
  auto fc = fieldext::field_correspondence(ext, caps);
  if (format == Format::Dot)
    return serialize::lattices_to_dot(fc.subgroup_lattice, "subgroups", fc.field_lattice,
                                      "fields", fc.bijection);
  auto roots = fieldext::tensor_trivialize(ext);
  auto phi = fieldext::check_phi(ext);
  Json j{{"command", "field"},
         {"p", ext.p()},
         {"n", ext.n()},
         {"modulus", ext.L.modulus()},
         {"size", ext.L.size()},
         {"aut_order", fc.aut.group.order()},
         {"roots", roots},
         {"phi",
          Json{{"multiplicative", phi.multiplicative},
               {"bilinear", phi.bilinear},
               {"matches_evaluation", phi.matches_evaluation},
               {"rank", phi.rank}}},
         {"correspondence", serialize::to_json(fc)}};
  return emit(j, format);
}

} // namespace

std::string render(std::string const &command, std::string const &input, Format format,
                   Caps const &caps)
{
  auto in = serialize::parse_text(input);
  if (command == "classify")
    return classify(in, format, caps);
  if (command == "splittings")
    return splittings(in, format, caps);
  if (command == "verdict")
    return verdict(in, format, caps);
  if (command == "correspondence")
    return correspondence_cmd(in, format, caps);
  if (command == "cover")
    return cover_cmd(in, format, caps);
  if (command == "field")
    return field_cmd(in, format, caps);
  throw SchemaError("command: unknown command '" + command + "'");
}

RunResult run(RunConfig const &config)
{
  RunResult r;
  try {
    std::ifstream file(config.input_path);
    if (!file)
      throw ParseError("input: cannot read '" + config.input_path + "'");
    std::stringstream buf;
    buf << file.rdbuf();
    r.output = render(config.command, buf.str(), config.format, config.caps);
    if (config.out_path) {
      std::ofstream out(*config.out_path, std::ios::binary);
      if (!out)
        throw ParseError("out: cannot write '" + *config.out_path + "'");
      out << r.output;
    }
  } catch (CapExceeded const &e) {
    r.exit_code = 3;
    r.error = e.what();
    r.output.clear();
  } catch (Error const &e) {
    r.exit_code = 2;
    r.error = e.what();
    r.output.clear();
  } catch (std::exception const &e) {
    r.exit_code = 2;
    r.error = std::string("Error: ") + e.what();
    r.output.clear();
  }
  return r;
}

int main_entry(int argc, char **argv)
{
  CLI::App app{"galoisforge: splittings, Galois verdicts and correspondences for finite instances"};
  RunConfig config;
  std::string format = "json";
  std::optional<std::size_t> cap_set_size, cap_group_order;
  std::string out_path;
  app.add_option("--command", config.command, "Analysis to run")
    ->required()
    ->check(CLI::IsMember({"classify", "splittings", "verdict", "correspondence", "cover", "field"}));
  app.add_option("--input", config.input_path, "Instance file (JSON)")->required();
  app.add_option("--out", out_path, "Write the report here instead of standard output");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_option("--cap-set-size", cap_set_size, "Limit on |M| for lattice searches")
    ->check(CLI::PositiveNumber);
  app.add_option("--cap-group-order", cap_group_order, "Limit on group orders")
    ->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (char const *env = std::getenv("GALOISFORGE_CAPS"))
      config.caps = parse_caps(env, config.caps);
  } catch (Error const &e) {
    std::cerr << "error: GALOISFORGE_CAPS: " << e.what() << '\n';
    return 2;
  }
  if (cap_set_size)
    config.caps.set_size = *cap_set_size;
  if (cap_group_order)
    config.caps.group_order = *cap_group_order;
  config.format = format == "text" ? Format::Text : format == "dot" ? Format::Dot : Format::Json;
  if (!out_path.empty())
    config.out_path = out_path;

  auto r = run(config);
  if (r.exit_code != 0) {
    std::cerr << "error: " << r.error << '\n';
    return r.exit_code;
  }
  if (!config.out_path)
    std::cout << r.output;
  return 0;
}

} // namespace galoisforge::cli
