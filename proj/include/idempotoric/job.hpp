#pragma once

#include <random>
#include <sstream>
#include <string>

#include "idempotoric/io.hpp"

namespace idempotoric {

struct JobResult {
  std::string output;
  int exit_code = 0;
};

enum ExitCode { exit_ok = 0, exit_validation = 1, exit_invariant = 2 };

inline Json error_document(std::string_view kind, const std::string& message) {
  return {{"schema", schema_id}, {"error", {{"kind", kind}, {"message", message}}}};
}

/// Compares the enumerated faces with the subset-by-subset feasibility test.
/// Up to 12 generators every subset is tested; beyond that only the
/// enumerated faces are confirmed.
inline Json crosscheck_faces(const Cone& cone, const FacePoset& faces) {
  const std::size_t r = cone.generators.size();
  std::set<IndexSet> enumerated;
  for (const auto& f : faces.faces) enumerated.insert(f.generator_indices);
  if (r <= 12) {
    std::set<IndexSet> feasible;
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
      IndexSet s;
      for (std::size_t i = 0; i < r; ++i)
        if (mask >> i & 1) s.push_back(i);
      if (is_face(cone, s).is_face) feasible.insert(std::move(s));
    }
    check_invariant(feasible == enumerated, "face enumeration disagrees with the subset feasibility test");
    return {{"method", "all-subsets"}, {"agrees", true}};
  }
  for (const auto& s : enumerated)
    check_invariant(is_face(cone, s).is_face, "enumerated face " + format_index_set(s) + " fails the feasibility test");
  return {{"method", "enumerated-faces"}, {"agrees", true}};
}

namespace detail {

inline Json idempotent_summary(const IdempotentPoset& p) {
  return {{"smallest_idempotent", idempotent_label(smallest_idempotent(p).index_set)},
          {"largest_idempotent", idempotent_label(largest_idempotent(p).index_set)},
          {"chain_length", maximal_chain_length(p)}};
}

inline Json monoid_part(const WeightMonoid& w) {
  Json labels = Json::array();
  for (const auto& l : w.labels) labels.push_back(l);
  return {{"lattice_rank", w.ambient_rank},
          {"lattice_basis", matrix_json(w.lattice_basis)},
          {"labels", labels},
          {"generators", vectors_json(w.generators)}};
}

inline void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

inline Json run_eigen(const JobSpec& job, IdempotentPoset& poset_out) {
  const auto in = eigen_input_from_json(job.payload);
  const auto table = factor(in);
  const auto w = character_data(table);
  const auto cone = cone_of(w);
  const auto faces = enumerate_faces(cone);
  poset_out = poset_from_faces(faces);
  const auto& poset = poset_out;
  const auto relations = primitive_relations(table, job.options.relation_bound);
  const auto envelope = toric_envelope(w);

  Json values = Json::array(), primes = Json::array(), signs = Json::array(), rels = Json::array();
  for (const auto& v : in.eigenvalues) values.push_back(to_string(v));
  for (const auto& p : table.primes) primes.push_back(p.str());
  for (int s : table.signs) signs.push_back(s);
  for (const auto& rel : relations) rels.push_back(relation_json(rel));

  Json report = {{"schema", schema_id}, {"mode", "eigen"}, {"eigenvalues", values},
                 {"multiplicities", in.multiplicities}, {"primes", primes},
                 {"exponents", matrix_json(table.exponents)}, {"signs", signs}};
  merge(report, monoid_part(w));
  report["relation_bound"] = job.options.relation_bound;
  report["primitive_relations"] = rels;
  report["idempotents"] = poset_json(poset);
  merge(report, idempotent_summary(poset));
  report["envelope"] = envelope_json(envelope);
  report["power_invariance"] = {{"n", 2}, {"holds", power_invariance(in, 2)}};
  check_invariant(report["power_invariance"]["holds"].get<bool>(), "weight monoid changed under squaring");

  if (job.options.crosscheck) {
    bool relations_pass = true;
    for (const auto& e : poset.elements) relations_pass = relations_pass && check_relation_criterion(e.index_set, relations);
    check_invariant(relations_pass, "a face violates a primitive relation");
    const auto lineality = smallest_idempotent_indices(in);
    check_invariant(lineality == smallest_idempotent(poset).index_set,
                    "lineality rows differ from the smallest idempotent");
    report["crosscheck"] = {{"faces", crosscheck_faces(cone, faces)},
                            {"relation_filter", relations_pass},
                            {"smallest_by_lineality", true}};
  }
  return report;
}

inline Json run_monoid(const JobSpec& job, IdempotentPoset& poset_out) {
  const auto g = generators_from_json(job.payload, true);
  const auto w = monoid_from_generators(g.ambient_dim, g.generators, g.labels);
  const auto cone = cone_of(w);
  const auto faces = enumerate_faces(cone);
  poset_out = poset_from_faces(faces);
  Json report = {{"schema", schema_id}, {"mode", "monoid"}, {"ambient_dim", g.ambient_dim}};
  merge(report, monoid_part(w));
  report["idempotents"] = poset_json(poset_out);
  merge(report, idempotent_summary(poset_out));
  report["envelope"] = envelope_json(toric_envelope(w));
  if (job.options.crosscheck) report["crosscheck"] = {{"faces", crosscheck_faces(cone, faces)}};
  return report;
}

inline Json run_cone(const JobSpec& job, FacePoset& faces_out) {
  const auto g = generators_from_json(job.payload, false);
  const auto cone = cone_from_generators(g.ambient_dim, g.generators);
  faces_out = enumerate_faces(cone);
  Json report = {{"schema", schema_id}, {"mode", "cone"}, {"ambient_dim", g.ambient_dim},
                 {"dim", cone.dim}, {"lineality_rank", cone.lineality_rank()},
                 {"lineality_basis", matrix_json(cone.lineality_basis)},
                 {"extreme_rays", vectors_json(cone.extreme_rays)},
                 {"facets", vectors_json(cone.facets)}, {"face_lattice", face_poset_json(faces_out)}};
  if (job.options.crosscheck) report["crosscheck"] = {{"faces", crosscheck_faces(cone, faces_out)}};
  return report;
}

inline Json run_finite(const JobSpec& job) {
  const auto s = finite_from_json(job.payload);
  const auto idem = idempotent_elements(s);
  const auto greens = greens_classes(s);

  std::optional<Element> smallest;
  for (Element e : idem)
    if (std::all_of(idem.begin(), idem.end(), [&](Element f) { return idempotent_leq(s, e, f); })) smallest = e;
  if (s.commutative())
    check_invariant(smallest == smallest_idempotent_commutative(s), "product of idempotents is not the minimum");

  Json powers = Json::array();
  for (Element x = 0; x < s.size(); ++x) {
    const auto ip = index_period(s, x);
    powers.push_back({{"element", x}, {"index", ip.index}, {"period", ip.period},
                      {"idempotent_power", idempotent_power(s, x)}});
  }
  Json criteria = Json::array();
  for (Element e : idem) {
    const auto p = peirce_sets(s, e);
    criteria.push_back({{"idempotent", e},
                        {"central_and_group", check_smallest_criterion(s, e)},
                        {"peirce", {{"eSe", p.fixed}, {"eS_e", p.left_fixed}, {"_eSe", p.right_fixed}, {"_eS_e", p.absorbed}}}});
  }
  return {{"schema", schema_id}, {"mode", "finite"}, {"size", s.size()},
          {"commutative", s.commutative()}, {"idempotents", idem},
          {"smallest_idempotent", smallest ? Json(*smallest) : Json(nullptr)},
          {"greens", {{"L", element_sets_json(greens.L)}, {"R", element_sets_json(greens.R)},
                      {"J", element_sets_json(greens.J)}, {"H", element_sets_json(greens.H)}}},
          {"powers", powers}, {"idempotent_criteria", criteria}};
}

struct SuiteTally {
  std::size_t passed = 0, failed = 0;
  std::vector<std::string> failures;

  template <class F>
  void check(const std::string& name, F&& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      failures.push_back(name + ": " + e.what());
      ++failed;
      return;
    }
    if (ok) ++passed;
    else {
      ++failed;
      failures.push_back(name);
    }
  }
  Json json() const { return {{"passed", passed}, {"failed", failed}, {"failures", failures}}; }
};

inline Json run_selftest(const JobSpec& job) {
  std::mt19937_64 rng(20240601);
  auto uniform = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };

  SuiteTally dual;
  for (int trial = 0; trial < 40; ++trial) {
    const auto dim = static_cast<std::size_t>(uniform(0, 4));
    std::vector<IntegerVector> gens(static_cast<std::size_t>(uniform(0, 6)), IntegerVector(dim));
    for (auto& g : gens)
      for (auto& x : g) x = uniform(-3, 3);
    dual.check("cone #" + std::to_string(trial), [&] {
      const auto w = monoid_from_generators(dim, gens);
      const auto cone = cone_of(w);
      const auto faces = enumerate_faces(cone);
      crosscheck_faces(cone, faces);
      const auto poset = poset_from_faces(faces);
      const auto env = toric_envelope(w);
      return maximal_chain_length(poset) == w.ambient_rank - cone.lineality_rank() &&
             env.envelope_dim == maximal_chain_length(poset);
    });
  }

  SuiteTally eigen;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> values;
    for (auto r = uniform(1, 4); r > 0; --r) {
      Rational v(Integer(uniform(1, 30)), Integer(uniform(1, 30)));
      values.push_back(uniform(0, 1) ? v : Rational(-v));
    }
    eigen.check("eigenvalues #" + std::to_string(trial), [&] {
      const auto in = EigenInput::from_values(values);
      const auto rels = primitive_relations(factor(in), job.options.relation_bound);
      const auto poset = idempotent_set(in);
      bool ok = power_invariance(in, 2) && power_invariance(in, 3);
      for (const auto& e : poset.elements) ok = ok && check_relation_criterion(e.index_set, rels);
      return ok && smallest_idempotent_indices(in) == smallest_idempotent(poset).index_set;
    });
  }

  SuiteTally finite;
  for (const auto& [name, s] : catalogue()) {
    finite.check(name, [&] {
      const auto idem = idempotent_elements(s);
      for (Element e : idem) check_smallest_criterion(s, e);
      for (Element x = 0; x < s.size(); ++x)
        if (!is_idempotent(s, idempotent_power(s, x))) return false;
      if (s.commutative()) smallest_idempotent_commutative(s);
      return true;
    });
  }

  const bool ok = dual.failed == 0 && eigen.failed == 0 && finite.failed == 0;
  return {{"schema", schema_id}, {"mode", "selftest"}, {"passed", ok},
          {"suites", {{"dual_oracle", dual.json()}, {"eigen", eigen.json()}, {"catalogue", finite.json()}}}};
}

inline std::string set_text(const Json& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i].dump();
  return out + "}";
}

inline std::string render_text(const Json& r) {
  std::ostringstream out;
  const std::string mode = r["mode"];
  if (mode == "eigen") {
    out << "eigenvalues:";
    for (const auto& v : r["eigenvalues"]) out << ' ' << v.get<std::string>();
    out << "\nprimes:";
    for (const auto& p : r["primes"]) out << ' ' << p.get<std::string>();
    out << "\n";
  }
  if (mode == "eigen" || mode == "monoid") {
    out << "lattice rank: " << r["lattice_rank"] << "\n";
    if (r.contains("primitive_relations")) {
      out << "primitive relations (bound " << r["relation_bound"] << "):\n";
      for (const auto& rel : r["primitive_relations"]) out << "  " << rel["text"].get<std::string>() << "\n";
    }
    out << "idempotents (" << r["idempotents"]["elements"].size() << "):\n";
    for (const auto& e : r["idempotents"]["elements"])
      out << "  " << e["label"].get<std::string>() << "  dim " << e["dim"] << "\n";
    out << "smallest: " << r["smallest_idempotent"].get<std::string>() << "\n"
        << "largest: " << r["largest_idempotent"].get<std::string>() << "\n"
        << "chain length: " << r["chain_length"] << "\n"
        << "envelope dim: " << r["envelope"]["envelope_dim"] << "\n";
    if (r.contains("power_invariance"))
      out << "power invariance (n=2): " << (r["power_invariance"]["holds"].get<bool>() ? "holds" : "fails") << "\n";
  } else if (mode == "cone") {
    out << "dim: " << r["dim"] << "\nlineality rank: " << r["lineality_rank"] << "\n"
        << "extreme rays: " << r["extreme_rays"].dump() << "\nfacets: " << r["facets"].dump() << "\n"
        << "faces (" << r["face_lattice"]["faces"].size() << "):\n";
    for (const auto& f : r["face_lattice"]["faces"])
      out << "  " << set_text(f["generator_indices"]) << "  dim " << f["dim"] << "  witness " << f["witness"].dump() << "\n";
  } else if (mode == "finite") {
    out << "size: " << r["size"] << (r["commutative"].get<bool>() ? " (commutative)" : "") << "\n"
        << "idempotents: " << set_text(r["idempotents"]) << "\n"
        << "smallest idempotent: " << (r["smallest_idempotent"].is_null() ? "none" : r["smallest_idempotent"].dump()) << "\n";
    for (const char* rel : {"L", "R", "J", "H"}) {
      out << rel << "-classes:";
      for (const auto& c : r["greens"][rel]) out << ' ' << set_text(c);
      out << "\n";
    }
    for (const auto& c : r["idempotent_criteria"])
      out << "idempotent " << c["idempotent"] << ": central with eS a group: "
          << (c["central_and_group"].get<bool>() ? "yes" : "no") << "\n";
  } else if (mode == "selftest") {
    for (const auto& [name, suite] : r["suites"].items())
      out << name << ": " << suite["passed"] << " passed, " << suite["failed"] << " failed\n";
    out << (r["passed"].get<bool>() ? "selftest passed" : "selftest FAILED") << "\n";
  }
  return out.str();
}

}  // namespace detail

/// Runs one job. Validation problems give exit 1, broken internal
/// invariants exit 2; both with an error document as output.
inline JobResult run(const JobSpec& job) {
  try {
    Json report;
    std::optional<IdempotentPoset> poset;
    std::optional<FacePoset> faces;
    switch (job.mode) {
      case Mode::eigen: report = detail::run_eigen(job, poset.emplace()); break;
      case Mode::monoid: report = detail::run_monoid(job, poset.emplace()); break;
      case Mode::cone: report = detail::run_cone(job, faces.emplace()); break;
      case Mode::finite: report = detail::run_finite(job); break;
      case Mode::selftest: report = detail::run_selftest(job); break;
    }
    const int code = job.mode == Mode::selftest && !report["passed"].get<bool>() ? exit_invariant : exit_ok;
    switch (job.options.format) {
      case Format::json: return {report.dump(2) + "\n", code};
      case Format::text: return {detail::render_text(report), code};
      case Format::dot:
        if (poset) return {export_dot(*poset), code};
        if (faces) return {export_dot(*faces), code};
        throw ValidationError("dot output is only available for eigen, monoid and cone jobs");
    }
    return {report.dump(2) + "\n", code};
  } catch (const ValidationError& e) {
    return {error_document("validation", e.what()).dump(2) + "\n", exit_validation};
  } catch (const InvariantViolation& e) {
    return {error_document("invariant", e.what()).dump(2) + "\n", exit_invariant};
  }
}

/// Option overrides coming from the command line.
struct OptionOverrides {
  std::optional<std::size_t> relation_bound;
  std::optional<Format> format;
  bool no_crosscheck = false;
};

/// Parses `text` as a job document (or a bare payload when `mode` is set),
/// applies overrides and runs it.
inline JobResult run_document(std::string_view text, std::optional<Mode> mode, const OptionOverrides& overrides = {}) {
  JobSpec job;
  try {
    job = job_from_document(parse_document(text), mode);
    if (overrides.relation_bound) {
      if (*overrides.relation_bound < 1) throw ValidationError("relation bound must be at least 1");
      job.options.relation_bound = *overrides.relation_bound;
    }
    if (overrides.format) job.options.format = *overrides.format;
    if (overrides.no_crosscheck) job.options.crosscheck = false;
  } catch (const ValidationError& e) {
    return {error_document("validation", e.what()).dump(2) + "\n", exit_validation};
  }
  return run(job);
}

}  // namespace idempotoric
