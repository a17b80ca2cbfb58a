#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "idempotoric/job.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw idempotoric::ValidationError("cannot open input file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace idempotoric;
  CLI::App app{"Idempotents of commutative algebraic semigroups with exact arithmetic"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string format;
  std::size_t relation_bound = 0;
  bool no_crosscheck = false;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* opt = sub->add_option("--input,-i", input, "job or payload JSON file, - for stdin");
    if (!needs_input) opt->description("optional job JSON file");
    sub->add_option("--format,-f", format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--relation-bound", relation_bound, "largest |exponent| in enumerated relations (default 3)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--no-crosscheck", no_crosscheck, "skip the independent face check");
  };
  std::map<CLI::App*, std::optional<Mode>> subcommands;
  for (const auto& [name, mode] : mode_names()) {
    auto* sub = app.add_subcommand(name, "run a " + name + " job");
    add_common(sub, mode != Mode::selftest);
    subcommands[sub] = mode;
  }
  auto* run_sub = app.add_subcommand("run", "run a full job document with a \"mode\" field");
  add_common(run_sub, true);
  subcommands[run_sub] = std::nullopt;

  CLI11_PARSE(app, argc, argv);

  OptionOverrides overrides;
  if (relation_bound > 0) overrides.relation_bound = relation_bound;
  if (!format.empty()) overrides.format = parse_format(format);
  overrides.no_crosscheck = no_crosscheck;

  for (const auto& [sub, mode] : subcommands) {
    if (!sub->parsed()) continue;
    std::string text;
    if (mode == Mode::selftest && sub->count("--input") == 0) {
      text = "{}";
    } else {
      try {
        text = read_input(input);
      } catch (const ValidationError& e) {
        std::cout << error_document("validation", e.what()).dump(2) << "\n";
        return exit_validation;
      }
    }
    auto result = run_document(text, mode, overrides);
    std::cout << result.output;
    return result.exit_code;
  }
  return exit_validation;
}
