#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "idempotoric/cone.hpp"
#include "idempotoric/eigen_pipeline.hpp"
#include "idempotoric/error.hpp"
#include "idempotoric/finite_semigroup.hpp"
#include "idempotoric/integer.hpp"
#include "idempotoric/monoid.hpp"

namespace idempotoric {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view schema_id = "idempotoric/v1";

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

// Rejects floating-point literals. nlohmann reports integers outside the
// 64-bit range as floats as well; those must be passed as strings.
struct FloatLint : nlohmann::json_sax<Json> {
  std::optional<std::string> offending;

  bool null() override { return true; }
  bool boolean(bool) override { return true; }
  bool number_integer(number_integer_t) override { return true; }
  bool number_unsigned(number_unsigned_t) override { return true; }
  bool number_float(number_float_t, const string_t& literal) override {
    if (!offending) offending = literal;
    return true;
  }
  bool string(string_t&) override { return true; }
  bool binary(binary_t&) override { return true; }
  bool start_object(std::size_t) override { return true; }
  bool key(string_t&) override { return true; }
  bool end_object() override { return true; }
  bool start_array(std::size_t) override { return true; }
  bool end_array() override { return true; }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
    return false;
  }
};

inline std::string describe(const Json& j) {
  std::string s = j.dump();
  return s.size() > 40 ? s.substr(0, 37) + "..." : s;
}

}  // namespace detail

/// Parses a document; malformed JSON and floating-point literals are
/// validation errors.
inline Json parse_document(std::string_view text) {
  detail::FloatLint lint;
  Json::sax_parse(text, &lint, nlohmann::detail::input_format_t::json, false);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (lint.offending) {
    const auto& lit = *lint.offending;
    if (lit.find_first_of(".eE") != std::string::npos)
      throw ValidationError("floating-point literal " + lit + " is not accepted; use exact integers or \"p/q\" strings");
    throw ValidationError("integer literal " + lit + " exceeds 64 bits; pass it as a string");
  }
  return doc;
}

inline Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  throw ValidationError(where + ": expected an integer, got " + detail::describe(j));
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(integer_from_json(j, where));
  throw ValidationError(where + ": expected a rational string \"p/q\" or an integer, got " + detail::describe(j));
}

inline std::size_t count_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ValidationError(where + ": expected a nonnegative integer, got " + detail::describe(j));
  return j.get<std::size_t>();
}

inline const Json& require_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array, got " + detail::describe(j));
  return j;
}

inline const Json& require_field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

inline void allow_only_fields(const Json& obj, std::initializer_list<std::string_view> keys,
                              const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object, got " + detail::describe(obj));
  for (const auto& [k, v] : obj.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw ValidationError(where + ": unknown field \"" + k + "\"");
}

// ---------------------------------------------------------------------------
// Jobs

enum class Mode { eigen, monoid, cone, finite, selftest };
enum class Format { json, dot, text };

inline const std::map<std::string, Mode, std::less<>>& mode_names() {
  static const std::map<std::string, Mode, std::less<>> names{{"eigen", Mode::eigen},
                                                              {"monoid", Mode::monoid},
                                                              {"cone", Mode::cone},
                                                              {"finite", Mode::finite},
                                                              {"selftest", Mode::selftest}};
  return names;
}

inline std::string to_string(Mode m) {
  for (const auto& [name, mode] : mode_names())
    if (mode == m) return name;
  return "?";
}

inline Mode parse_mode(std::string_view s) {
  auto it = mode_names().find(s);
  if (it == mode_names().end()) throw ValidationError("unknown mode \"" + std::string(s) + "\"");
  return it->second;
}

inline Format parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "dot") return Format::dot;
  if (s == "text") return Format::text;
  throw ValidationError("unknown format \"" + std::string(s) + "\"; expected json, dot or text");
}

struct JobOptions {
  std::size_t relation_bound = 3;
  Format format = Format::json;
  bool crosscheck = true;
};

struct JobSpec {
  Mode mode = Mode::eigen;
  Json payload = Json::object();
  JobOptions options;
};

inline JobOptions options_from_json(const Json& j) {
  allow_only_fields(j, {"relation_bound", "format", "crosscheck"}, "options");
  JobOptions o;
  if (j.contains("relation_bound")) {
    o.relation_bound = count_from_json(j["relation_bound"], "options.relation_bound");
    if (o.relation_bound < 1) throw ValidationError("options.relation_bound must be at least 1");
  }
  if (j.contains("format")) {
    if (!j["format"].is_string()) throw ValidationError("options.format must be a string");
    o.format = parse_format(j["format"].get<std::string>());
  }
  if (j.contains("crosscheck")) {
    if (!j["crosscheck"].is_boolean()) throw ValidationError("options.crosscheck must be true or false");
    o.crosscheck = j["crosscheck"].get<bool>();
  }
  return o;
}

/// Accepts a full job document {schema?, mode, payload, options?}. When
/// `mode` is given (a CLI subcommand) the document may also be a bare
/// payload, and a stated mode must agree with it.
inline JobSpec job_from_document(const Json& doc, std::optional<Mode> mode = std::nullopt) {
  if (!doc.is_object()) throw ValidationError("job document must be a JSON object");
  const bool wrapped = doc.contains("payload") || doc.contains("mode");
  JobSpec job;
  if (doc.contains("schema") && doc["schema"] != Json(schema_id))
    throw ValidationError("unsupported schema " + detail::describe(doc["schema"]) + "; expected \"" +
                          std::string(schema_id) + "\"");
  if (!wrapped) {
    if (!mode) throw ValidationError("job document needs \"mode\" and \"payload\"");
    job.mode = *mode;
    job.payload = doc;
    job.payload.erase("schema");
    return job;
  }
  allow_only_fields(doc, {"schema", "mode", "payload", "options"}, "job");
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw ValidationError("job.mode must be a string");
    job.mode = parse_mode(doc["mode"].get<std::string>());
    if (mode && *mode != job.mode)
      throw ValidationError("document mode \"" + to_string(job.mode) + "\" does not match \"" + to_string(*mode) + "\"");
  } else if (mode) {
    job.mode = *mode;
  } else {
    throw ValidationError("job: missing field \"mode\"");
  }
  if (doc.contains("payload")) job.payload = doc["payload"];
  else if (job.mode != Mode::selftest) throw ValidationError("job: missing field \"payload\"");
  if (doc.contains("options")) job.options = options_from_json(doc["options"]);
  return job;
}

inline EigenInput eigen_input_from_json(const Json& payload) {
  allow_only_fields(payload, {"eigenvalues"}, "payload");
  const auto& values = require_array(require_field(payload, "eigenvalues", "payload"), "payload.eigenvalues");
  if (values.empty()) throw ValidationError("payload.eigenvalues is empty");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    out.push_back(rational_from_json(values[i], "payload.eigenvalues[" + std::to_string(i) + "]"));
  return EigenInput::from_values(out);
}

struct GeneratorPayload {
  std::size_t ambient_dim = 0;
  std::vector<IntegerVector> generators;
  std::vector<std::string> labels;
};

inline GeneratorPayload generators_from_json(const Json& payload, bool allow_labels) {
  if (allow_labels) allow_only_fields(payload, {"ambient_dim", "generators", "labels"}, "payload");
  else allow_only_fields(payload, {"ambient_dim", "generators"}, "payload");
  GeneratorPayload out;
  out.ambient_dim = count_from_json(require_field(payload, "ambient_dim", "payload"), "payload.ambient_dim");
  const auto& gens = require_array(require_field(payload, "generators", "payload"), "payload.generators");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = "payload.generators[" + std::to_string(i) + "]";
    const auto& row = require_array(gens[i], where);
    if (row.size() != out.ambient_dim)
      throw ValidationError(where + " has " + std::to_string(row.size()) + " entries, expected ambient_dim = " +
                            std::to_string(out.ambient_dim));
    IntegerVector g;
    for (std::size_t k = 0; k < row.size(); ++k) g.push_back(integer_from_json(row[k], where + "[" + std::to_string(k) + "]"));
    out.generators.push_back(std::move(g));
  }
  if (payload.contains("labels")) {
    const auto& labels = require_array(payload["labels"], "payload.labels");
    for (const auto& l : labels) {
      if (!l.is_string()) throw ValidationError("payload.labels must hold strings");
      out.labels.push_back(l.get<std::string>());
    }
  }
  return out;
}

inline FiniteSemigroup finite_from_json(const Json& payload) {
  allow_only_fields(payload, {"table"}, "payload");
  const auto& rows = require_array(require_field(payload, "table", "payload"), "payload.table");
  CayleyTable table;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = "payload.table[" + std::to_string(i) + "]";
    std::vector<Element> row;
    for (const auto& x : require_array(rows[i], where)) row.push_back(count_from_json(x, where));
    table.push_back(std::move(row));
  }
  return FiniteSemigroup::validate(std::move(table));
}

// ---------------------------------------------------------------------------
// Serialization

/// JSON number when it fits in 64 bits, decimal string otherwise.
inline Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline Json vector_json(std::span<const Integer> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

inline Json vectors_json(const std::vector<IntegerVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(vector_json(v));
  return out;
}

inline Json matrix_json(const IntegerMatrix& m) { return vectors_json(m.row_vectors()); }

inline Json index_set_json(const IndexSet& s) {
  Json out = Json::array();
  for (auto i : s) out.push_back(i);
  return out;
}

inline Json edges_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const auto& [a, b] : edges) out.push_back({a, b});
  return out;
}

inline Json poset_json(const IdempotentPoset& p) {
  Json elements = Json::array();
  for (const auto& e : p.elements)
    elements.push_back({{"index_set", index_set_json(e.index_set)},
                        {"label", idempotent_label(e.index_set)},
                        {"dim", e.face_dim}});
  return {{"elements", elements},
          {"hasse_edges", edges_json(p.hasse_edges)},
          {"smallest", p.smallest},
          {"largest", p.largest}};
}

inline Json face_poset_json(const FacePoset& p) {
  Json faces = Json::array();
  for (const auto& f : p.faces)
    faces.push_back({{"generator_indices", index_set_json(f.generator_indices)},
                     {"dim", f.dim},
                     {"witness", vector_json(f.witness)}});
  return {{"faces", faces}, {"hasse_edges", edges_json(p.hasse_edges)}, {"bottom", p.bottom}, {"top", p.top}};
}

inline Json envelope_json(const ToricEnvelopeReport& r) {
  return {{"envelope_dim", r.envelope_dim},
          {"unit_lattice_basis", matrix_json(r.unit_lattice.basis())},
          {"quotient_rank", r.quotient_rank},
          {"quotient_map", matrix_json(r.quotient_map)},
          {"projected_generators", vectors_json(r.projected_generators)},
          {"idempotent_count", r.envelope_idempotent_poset.elements.size()}};
}

inline Json relation_json(const PrimitiveRelation& rel) {
  auto side = [](const std::map<std::size_t, Integer>& m) {
    Json out = Json::array();
    for (const auto& [i, a] : m) out.push_back({i, integer_json(a)});
    return out;
  };
  return {{"text", rel.to_string()}, {"lhs", side(rel.lhs)}, {"rhs", side(rel.rhs)}};
}

inline Json element_sets_json(const std::vector<ElementSet>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(s);
  return out;
}

// ---------------------------------------------------------------------------
// DOT

namespace detail {

struct DotNode {
  std::string label;
  std::size_t rank;
};

inline std::string dot_graph(const std::string& name, const std::vector<DotNode>& nodes,
                             std::vector<Edge> edges) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out << "  n" << i << " [label=\"" << nodes[i].label << "\"];\n";
  std::map<std::size_t, std::vector<std::size_t>> by_rank;
  for (std::size_t i = 0; i < nodes.size(); ++i) by_rank[nodes[i].rank].push_back(i);
  for (const auto& [rank, members] : by_rank) {
    out << "  { rank=same;";
    for (auto i : members) out << " n" << i << ";";
    out << " }\n";
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace detail

/// Hasse diagram, edges from smaller to larger, one rank per dimension.
/// Index sets are printed 1-based.
inline std::string export_dot(const IdempotentPoset& p) {
  std::vector<detail::DotNode> nodes;
  for (const auto& e : p.elements)
    nodes.push_back({format_index_set(e.index_set, 1) + " dim " + std::to_string(e.face_dim), e.face_dim});
  return detail::dot_graph("idempotents", nodes, p.hasse_edges);
}

inline std::string export_dot(const FacePoset& p) {
  std::vector<detail::DotNode> nodes;
  for (const auto& f : p.faces)
    nodes.push_back({format_index_set(f.generator_indices, 1) + " dim " + std::to_string(f.dim), f.dim});
  return detail::dot_graph("faces", nodes, p.hasse_edges);
}

}  // namespace idempotoric
