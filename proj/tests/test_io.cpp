#include <gtest/gtest.h>

#include "idempotoric/job.hpp"
#include "test_support.hpp"

namespace idempotoric {
namespace {

using testing::vecs;

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

Json run_json(std::string_view text, std::optional<Mode> mode = std::nullopt) {
  auto result = run_document(text, mode);
  EXPECT_EQ(result.exit_code, 0) << result.output;
  return parse_document(result.output);
}

TEST(ParseDocument, RejectsFloatsAndMalformedInput) {
  EXPECT_NO_THROW(parse_document(R"({"a": [1, -2, "3/4"]})"));
  EXPECT_THROW(parse_document(R"({"a": 1.0})"), ValidationError);
  EXPECT_THROW(parse_document(R"({"a": 1e3})"), ValidationError);
  EXPECT_THROW(parse_document(R"({"a": 123456789012345678901234567890})"), ValidationError);
  EXPECT_THROW(parse_document(R"({"a": )"), ValidationError);
}

TEST(ParseValues, IntegersAndRationals) {
  EXPECT_EQ(integer_from_json(Json("123456789012345678901234567890"), "x"), Integer("123456789012345678901234567890"));
  EXPECT_EQ(integer_from_json(Json(-7), "x"), -7);
  EXPECT_THROW(integer_from_json(Json("1/2"), "x"), ValidationError);
  EXPECT_EQ(rational_from_json(Json("-6/4"), "x"), Rational(-3, 2));
  EXPECT_EQ(rational_from_json(Json(5), "x"), Rational(5));
  EXPECT_THROW(rational_from_json(Json("1/0"), "x"), ValidationError);
  EXPECT_THROW(rational_from_json(Json(true), "x"), ValidationError);
  EXPECT_EQ(integer_json(Integer(42)), Json(42));
  EXPECT_EQ(integer_json(Integer("99999999999999999999")), Json("99999999999999999999"));
}

TEST(JobFromDocument, ShapesAndErrors) {
  auto job = job_from_document(parse_document(
      R"({"schema":"idempotoric/v1","mode":"cone","payload":{"ambient_dim":1,"generators":[[1]]},
          "options":{"relation_bound":2,"format":"text","crosscheck":false}})"));
  EXPECT_EQ(job.mode, Mode::cone);
  EXPECT_EQ(job.options.relation_bound, 2u);
  EXPECT_EQ(job.options.format, Format::text);
  EXPECT_FALSE(job.options.crosscheck);

  auto bare = job_from_document(parse_document(R"({"eigenvalues":["2"]})"), Mode::eigen);
  EXPECT_EQ(bare.payload, parse_document(R"({"eigenvalues":["2"]})"));

  EXPECT_THROW(job_from_document(parse_document(R"({"eigenvalues":["2"]})")), ValidationError);
  EXPECT_THROW(job_from_document(parse_document(R"({"schema":"v2","mode":"eigen","payload":{}})")), ValidationError);
  EXPECT_THROW(job_from_document(parse_document(R"({"mode":"magic","payload":{}})")), ValidationError);
  EXPECT_THROW(job_from_document(parse_document(R"({"mode":"eigen","payload":{},"extra":1})")), ValidationError);
  EXPECT_THROW(job_from_document(parse_document(R"({"mode":"cone","payload":{}})"), Mode::eigen), ValidationError);
  EXPECT_THROW(job_from_document(parse_document(R"({"mode":"eigen","payload":{},"options":{"relation_bound":0}})")),
               ValidationError);
}

TEST(Run, EigenWorkedInstance) {
  auto r = run_json(R"({"mode":"eigen","payload":{"eigenvalues":["2","3","6"]}})");
  EXPECT_EQ(r["idempotents"]["elements"].size(), 4u);
  EXPECT_EQ(r["chain_length"], 2);
  EXPECT_EQ(r["envelope"]["envelope_dim"], 2);
  EXPECT_EQ(r["lattice_rank"], 2);
  EXPECT_EQ(r["primes"], Json({"2", "3"}));
  EXPECT_EQ(r["primitive_relations"][0]["text"], "t1 t2 = t3");
  EXPECT_EQ(r["smallest_idempotent"], "e_{}");
  EXPECT_EQ(r["largest_idempotent"], "e_{1,2,3}");
  EXPECT_EQ(r["power_invariance"]["holds"], true);
  EXPECT_EQ(r["crosscheck"]["faces"]["agrees"], true);
}

TEST(Run, FiniteAndErrors) {
  auto r = run_json(R"({"mode":"finite","payload":{"table":[[0,0],[0,1]]}})");
  EXPECT_EQ(r["idempotents"], Json({0, 1}));
  EXPECT_EQ(r["smallest_idempotent"], 0);

  auto zero = run_document(R"({"mode":"eigen","payload":{"eigenvalues":["0","2"]}})", std::nullopt);
  EXPECT_EQ(zero.exit_code, 1);
  auto doc = parse_document(zero.output);
  EXPECT_EQ(doc["error"]["kind"], "validation");
  EXPECT_NE(doc["error"]["message"].get<std::string>().find("nonzero spectrum"), std::string::npos);

  auto bad_table = run_document(R"({"table":[[1,0],[0,0]]})", Mode::finite);
  EXPECT_EQ(bad_table.exit_code, 1);
  EXPECT_NE(bad_table.output.find("not associative"), std::string::npos);

  auto bad_dim = run_document(R"({"ambient_dim":2,"generators":[[1]]})", Mode::cone);
  EXPECT_EQ(bad_dim.exit_code, 1);

  auto dot_finite = run_document(R"({"mode":"finite","payload":{"table":[[0]]},"options":{"format":"dot"}})", std::nullopt);
  EXPECT_EQ(dot_finite.exit_code, 1);
}

TEST(Run, MonoidConeAndSelftest) {
  auto m = run_json(R"({"ambient_dim":2,"generators":[[1,0],[0,1],[3,-3]]})", Mode::monoid);
  EXPECT_EQ(m["idempotents"]["elements"].size(), 4u);
  EXPECT_EQ(m["labels"], Json({"g1", "g2", "g3"}));

  auto c = run_json(R"({"ambient_dim":2,"generators":[[1,0],[0,1]]})", Mode::cone);
  EXPECT_EQ(c["face_lattice"]["faces"].size(), 4u);
  EXPECT_EQ(c["facets"], Json({{0, 1}, {1, 0}}));

  auto s = run_json("{}", Mode::selftest);
  EXPECT_EQ(s["passed"], true);
}

TEST(Run, DeterministicAndReparseable) {
  const char* jobs[] = {
      R"({"mode":"eigen","payload":{"eigenvalues":["4","6","9","-1/3","7"]}})",
      R"({"mode":"monoid","payload":{"ambient_dim":3,"generators":[[1,0,0],[0,1,0],[1,1,-1],[-1,0,0]]}})",
      R"({"mode":"cone","payload":{"ambient_dim":3,"generators":[[1,0,1],[0,1,1],[-1,0,1],[0,-1,1]]}})",
      R"({"mode":"finite","payload":{"table":[[0,0,0],[0,1,2],[0,2,1]]}})",
      R"({"mode":"selftest"})",
  };
  for (const char* job : jobs) {
    for (const char* format : {"json", "text", "dot"}) {
      OptionOverrides o;
      o.format = parse_format(format);
      auto a = run_document(job, std::nullopt, o), b = run_document(job, std::nullopt, o);
      EXPECT_EQ(a.output, b.output);
      EXPECT_EQ(a.exit_code, b.exit_code);
      if (std::string(format) == "json") {
        ASSERT_EQ(a.exit_code, 0) << a.output;
        EXPECT_NO_THROW(parse_document(a.output));
      }
    }
  }
}

TEST(Run, OverridesApply) {
  OptionOverrides o;
  o.relation_bound = 1;
  o.no_crosscheck = true;
  auto r = parse_document(run_document(R"({"eigenvalues":["2","3","6"]})", Mode::eigen, o).output);
  EXPECT_EQ(r["relation_bound"], 1);
  EXPECT_FALSE(r.contains("crosscheck"));
  EXPECT_EQ(r["primitive_relations"].size(), 1u);
}

TEST(ExportDot, Examples) {
  auto quadrant = idempotents(monoid_from_generators(2, vecs({{1, 0}, {0, 1}})));
  auto dot = export_dot(quadrant);
  EXPECT_EQ(count(dot, "[label="), 4u);
  EXPECT_EQ(count(dot, " -> "), 4u);
  EXPECT_NE(dot.find("n0 -> n1;"), std::string::npos);
  EXPECT_NE(dot.find("{ rank=same; n1; n2; }"), std::string::npos);

  auto group = idempotents(monoid_from_generators(1, vecs({{1}, {-1}})));
  auto single = export_dot(group);
  EXPECT_EQ(count(single, "[label="), 1u);
  EXPECT_EQ(count(single, " -> "), 0u);

  EXPECT_EQ(count(export_dot(idempotents(monoid_from_generators(1, vecs({{1}})))), " -> "), 1u);

  IdempotentPoset path;
  path.elements = {{{}, 0}, {{0}, 1}, {{0, 1}, 2}};
  path.hasse_edges = {{0, 1}, {1, 2}};
  path.largest = 2;
  auto path_dot = export_dot(path);
  EXPECT_EQ(count(path_dot, "[label="), 3u);
  EXPECT_EQ(count(path_dot, " -> "), 2u);

  auto faces = export_dot(enumerate_faces(cone_from_generators(2, vecs({{1, 0}, {1, 1}}))));
  EXPECT_EQ(count(faces, "[label="), 4u);
  EXPECT_NE(faces.find("digraph faces"), std::string::npos);
}

}  // namespace
}  // namespace idempotoric
