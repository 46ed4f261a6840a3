#include <filesystem>
#include <iostream>
#include <string>

#include "otx/serialize.hpp"
#include "otx/zoo.hpp"

namespace {

std::string file_name(const otx::Machine& m, const std::string& name) {
  if (name.rfind("ab-variant", 0) == 0) return name + ".json";
  std::string stem = name;
  for (const std::string& tag : {std::string("-sst"), std::string("-2way")})
    if (stem.size() > tag.size() && stem.compare(stem.size() - tag.size(), tag.size(), tag) == 0)
      stem.resize(stem.size() - tag.size());
  if (std::holds_alternative<otx::StreamingTransducer>(m)) return stem + ".sst.json";
  if (std::holds_alternative<otx::TwoWayTransducer>(m)) return stem + ".2dfa.json";
  return stem + ".la.json";
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  for (const auto& [name, machine] : otx::zoo_with_looper()) {
    std::filesystem::path path = dir / file_name(machine, name);
    otx::save_machine(machine, path.string());
    std::cout << path.string() << "\n";
  }
  return 0;
}
