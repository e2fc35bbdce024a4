#include "CLI11.hpp"

#include "lie2kit/corpus.hpp"
#include "lie2kit/driver.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef LIE2KIT_VERSION
#define LIE2KIT_VERSION "dev"
#endif

using namespace lie2kit;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw StructuralError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string &text, const std::string &out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f)
    throw StructuralError("cannot write " + out);
  f << text;
}

std::string default_format() {
  const char *env = std::getenv("LIE2KIT_FORMAT");
  if (env && (std::string(env) == "text" || std::string(env) == "json"))
    return env;
  return "text";
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact checkers and constructions for split Lie 2-algebroids, LA pairs and "
               "degenerate Courant algebroids"};
  app.set_version_flag("--version", LIE2KIT_VERSION);
  app.require_subcommand(1);

  std::uint64_t seed = kDefaultSeed;
  std::string format = default_format(), out;
  auto common = [&](CLI::App *sub) {
    sub->add_option("--seed", seed, "Seed for the random probe sections");
    sub->add_option("--out", out, "Write the output here instead of stdout");
  };

  CLI::App *check = app.add_subcommand("check", "Run a checker on a structure file");
  std::string path, second, mode;
  check->add_option("file", path, "Structure file")->required();
  check->add_option("second", second, "Ambient structure, dirac data or Courant algebroid");
  check->add_option("--mode", mode, "Checker to run (default depends on the kind)");
  check->add_option("--format", format, "Report format (default from LIE2KIT_FORMAT, else text)")
      ->check(CLI::IsMember({"text", "json"}));
  common(check);

  CLI::App *construct = app.add_subcommand("construct", "Build a structure from input files");
  std::string recipe, side = "auto", phi;
  std::vector<std::string> inputs;
  std::optional<int> dim, rank_a;
  bool pair = false;
  construct->add_option("recipe", recipe, "Construction")->required()->check(CLI::IsMember(construct_recipes()));
  construct->add_option("inputs", inputs, "Input structure files");
  construct->add_option("--side", side, "core-courant: which bundle carries the result")
      ->check(CLI::IsMember({"auto", "core", "q"}));
  construct->add_option("--phi", phi, "change-splitting: 'zero' or a splitting file");
  construct->add_option("--dim", dim, "standard: base dimension of the standard Courant algebroid");
  construct->add_option("--rank-a", rank_a, "decompose: rank of the A-block");
  construct->add_flag("--pair", pair, "adjoint: emit the tangent double LA pair");
  common(construct);

  CLI::App *example = app.add_subcommand("example", "Emit a named corpus structure");
  std::string name;
  bool list = false;
  example->add_option("name", name, "Example name");
  example->add_flag("--list", list, "List the example names");
  example->add_option("--out", out, "Write the file here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*check) {
      StructureFile f = load_structure(path);
      std::optional<StructureFile> s;
      std::string bytes = read_file(path);
      if (!second.empty()) {
        s = load_structure(second);
        bytes += read_file(second);
      }
      CheckReport rep = run_check(f, s ? &*s : nullptr, mode, seed);
      std::string kind = kind_of(f.value);
      ReportMeta meta{LIE2KIT_VERSION, "check", resolve_mode(f, s ? &*s : nullptr, mode), kind, digest_hex(bytes), seed};
      emit(format == "json" ? render_json(rep, meta) : render_text(rep, meta), out);
      return rep.pass() ? 0 : kExitFail;
    }
    if (*construct) {
      std::vector<StructureFile> files;
      for (auto &p : inputs)
        files.push_back(load_structure(p));
      ConstructOptions o;
      o.seed = seed;
      o.side = side;
      o.dim = dim;
      o.rank_a = rank_a;
      o.pair = pair;
      if (!phi.empty() && phi != "zero")
        o.phi = load_structure(phi);
      emit(dump_structure(run_construct(recipe, files, o)), out);
      return 0;
    }
    if (list || name.empty()) {
      for (auto &n : example_names())
        std::cout << n << "\n";
      return list ? 0 : kExitError;
    }
    StructureFile f;
    try {
      f = lie2kit::example(name);
    } catch (const std::out_of_range &) {
      std::cerr << "unknown example " << name << "; known examples:\n";
      for (auto &n : example_names())
        std::cerr << "  " << n << "\n";
      return kExitError;
    }
    emit(dump_structure(f), out);
    return 0;
  } catch (const PreconditionError &e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kExitFail;
  } catch (const StructuralError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
