// Writes the example corpus: <dir>/examples/*.json, <dir>/broken/*.json and
// <dir>/broken/MANIFEST (tab-separated name, mode, label, witness).
#include "lie2kit/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace lie2kit;
namespace fs = std::filesystem;

namespace {

void write(const fs::path &p, const std::string &text) {
  std::ofstream f(p, std::ios::binary);
  if (!f)
    throw std::runtime_error("cannot write " + p.string());
  f << text;
}

} // namespace

int main(int argc, char **argv) {
  if (argc != 2) {
    std::cerr << "usage: lie2kit_corpus <data-dir>\n";
    return 2;
  }
  try {
    fs::path root(argv[1]);
    fs::create_directories(root / "examples");
    fs::create_directories(root / "broken");
    for (auto &n : example_names())
      write(root / "examples" / (n + ".json"), dump_structure(example(n)));
    std::string manifest;
    for (auto &b : broken_examples()) {
      write(root / "broken" / (b.name + ".json"), dump_structure(b.file));
      manifest += b.name + "\t" + b.mode + "\t" + b.label + "\t" + b.witness + "\n";
    }
    write(root / "broken" / "MANIFEST", manifest);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
