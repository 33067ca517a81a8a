#pragma once

#include <string>

#include <json.hpp>

#include "galoisforge/correspondence.hpp"
#include "galoisforge/covers.hpp"
#include "galoisforge/fieldext.hpp"
#include "galoisforge/galois.hpp"
#include "galoisforge/groupoid.hpp"

// JSON reports (stable key order) and DOT renderings.
namespace galoisforge::serialize {

using Json = nlohmann::ordered_json;

// Input schemas. Each throws SchemaError naming the offending field.
//   map:   {"map": [0,0,1], "codomain": 2}        codomain optional
//   cover: {"base": {"vertices": n, "edges": [[u,v],...]},
//           "monodromy": [[perm],...], "sheets": n} sheets optional
//      or  {"base": ..., "total": ..., "proj_v": [...], "proj_e": [...]}
//   field: {"p": 2, "n": 4, "modulus": [1,1,0,0,1]} modulus optional
kernel::FinMap parse_map(Json const &j);
covers::Graph parse_graph(Json const &j, std::string const &field);
covers::CoverInstance parse_cover(Json const &j);
fieldext::FieldExtension parse_field(Json const &j, Caps const &caps = {});

// Parses text; throws ParseError.
Json parse_text(std::string const &text);

Json to_json(kernel::FinMap const &f);
Json to_json(kernel::EpiClassification const &c);
Json to_json(algebra::FiniteGroup const &g);
Json to_json(groupoid::FiniteGroupoid const &g);
Json to_json(galois::SplittingStructure const &s);
Json to_json(galois::Verdict const &v);
Json to_json(galois::GaloisReport const &r);
Json to_json(correspondence::Lattice const &l);
Json to_json(correspondence::CorrespondenceResult const &r);
Json to_json(covers::Graph const &g);
Json to_json(covers::CoverInstance const &c);
Json to_json(covers::CoverVerdict const &v);
Json to_json(fieldext::Subfield const &f);
Json to_json(fieldext::FieldCorrespondence const &fc);

// One "path: value" line per scalar leaf, in document order.
std::string to_text(Json const &j);

// Two Hasse diagrams in side-by-side clusters, joined by dashed edges.
std::string lattices_to_dot(correspondence::Lattice const &left, std::string const &left_name,
                            correspondence::Lattice const &right, std::string const &right_name,
                            std::vector<std::pair<int, int>> const &pairs,
                            std::string const &name = "correspondence");

} // namespace galoisforge::serialize
