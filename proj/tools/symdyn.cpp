#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "symdyn/commands.hpp"
#include "symdyn/error.hpp"

namespace {

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_document_text(const std::string& path) {
  if (path.empty() || path == "-") return read_all(std::cin);
  std::ifstream file(path, std::ios::binary);
  if (!file) throw symdyn::Error(symdyn::ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  return read_all(file);
}

int fail(const std::string& kind, const std::string& message, int code) {
  std::cerr << symdyn::error_object(kind, message).dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degree, fiber, lift and class computations for 1-block factor codes"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

  symdyn::CommandOptions options;
  std::map<std::string, std::string> documents;
  std::size_t cap = 0, window = 0, samples = 0;
  std::uint64_t seed = 0;
  std::string y, order, potential, family, vector, kind;
  std::vector<std::string> reps, words;

  const auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("document", documents[name], "Problem document (path, '-' or omitted for stdin)");
    return sub;
  };
  const auto with_y = [&](CLI::App* sub) { sub->add_option("--y", y, "Image cycle word"); };

  CLI::App* degree = add("degree", "Degree certificate");
  degree->add_option("--cap", cap, "Longest image word searched")->check(CLI::PositiveNumber);
  add("finite-to-one", "Diamond test with entropy cross-check");
  with_y(add("fiber", "Fiber points over a periodic image point"));
  with_y(add("lifts", "Ergodic lifts and multiplicities"));
  with_y(add("canonical-lift", "Canonical lift as a rational mixture"));
  with_y(add("classes", "Transition classes and class multiplicities"));
  CLI::App* joining = add("joining", "Degree joining over a periodic image point");
  with_y(joining);
  joining->add_option("--order", order, "Fiber ordering, comma-separated indices");
  CLI::App* class_joining = add("class-joining", "Class degree joining");
  with_y(class_joining);
  class_joining->add_option("--reps", reps, "Representative cycles, one per class")->delimiter(';');
  CLI::App* class_max = add("class-max", "Class-maximal equilibrium measures");
  with_y(class_max);
  class_max->add_option("--potential", potential, "Symbol weights, e.g. a=1,b=0");
  CLI::App* closed = add("closed-form", "Closed-form lifts of Bernoulli measures");
  closed->add_option("--family", family, "difference or sum")->check(CLI::IsMember({"difference", "sum"}));
  closed->add_option("--vector", vector, "Probability vector, e.g. 1/3,2/3");
  closed->add_option("--window", window, "Marginal comparison window (sum family)")->check(CLI::PositiveNumber);
  CLI::App* estimate = add("estimate", "Monte Carlo diagonal mass or genericity");
  estimate->add_option("--kind", kind, "diagonal or genericity")->check(CLI::IsMember({"diagonal", "genericity"}));
  estimate->add_option("--family", family, "difference or sum")->check(CLI::IsMember({"difference", "sum"}));
  estimate->add_option("--vector", vector, "Probability vector");
  estimate->add_option("--window", window, "Window length")->check(CLI::PositiveNumber);
  estimate->add_option("--samples", samples, "Sample count")->check(CLI::PositiveNumber);
  estimate->add_option("--seed", seed, "RNG seed");
  estimate->add_option("--words", words, "Words over Z_N, ';'-separated")->delimiter(';');
  estimate->add_option("--threads", options.threads, "Worker threads")->check(CLI::PositiveNumber);
  add("emit", "Print the canonical form of the document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("InvalidArgument", e.what(), 2);
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  const auto given = [chosen](const std::string& flag) {
    const CLI::Option* opt = chosen->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--cap")) options.cap = cap;
  if (given("--y")) options.y = y;
  if (given("--potential")) options.potential = potential;
  if (given("--family")) options.family = family;
  if (given("--vector")) options.vector = vector;
  if (given("--kind")) options.kind = kind;
  if (given("--window")) options.window = window;
  if (given("--samples")) options.samples = samples;
  if (given("--seed")) options.seed = seed;
  if (given("--reps")) options.reps = reps;
  if (given("--words")) options.words = words;

  try {
    if (given("--order")) {
      std::vector<std::size_t> indices;
      std::stringstream in(order);
      std::string token;
      while (std::getline(in, token, ',')) {
        try {
          indices.push_back(std::stoul(token));
        } catch (const std::exception&) {
          throw symdyn::Error(symdyn::ErrorKind::InvalidArgument, "--order expects comma-separated indices");
        }
      }
      options.order = std::move(indices);
    }
    const bool optional_document = command == "closed-form" || command == "estimate";
    const std::string& path = documents[command];
    std::optional<symdyn::ProblemDocument> document;
    if (!(optional_document && path.empty())) document = symdyn::parse_document(read_document_text(path));
    if (command == "emit") {
      std::cout << symdyn::emit_document(*document);
      return 0;
    }
    const auto report = symdyn::run_command(command, document ? &*document : nullptr, options);
    std::cout << (format == "json" ? report.dump(2) + "\n" : symdyn::render_text(report));
    return 0;
  } catch (const symdyn::Error& e) {
    return fail(std::string(symdyn::to_string(e.kind())), e.what(), 2);
  } catch (const std::exception& e) {
    return fail("Internal", e.what(), 1);
  }
}
