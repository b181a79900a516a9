#include "gpt/fixtures.hpp"

#include "gpt/composites.hpp"

namespace gpt {

namespace {

Model full_model(std::vector<std::string> labels,
                 std::vector<std::vector<std::string>> tests) {
  Model m;
  m.space = TestSpace::make(std::move(labels), std::move(tests));
  m.full = true;
  return m;
}

}  // namespace

std::optional<Model> fixture(const std::string& name) {
  if (name == "firefly")
    return full_model({"a", "x", "b", "y", "c", "z"},
                      {{"a", "x", "b"}, {"b", "y", "c"}, {"c", "z", "a"}});
  if (name == "gbit") return gbit();
  if (name == "square")
    return full_model({"x", "x'", "y", "y'"}, {{"x", "x'"}, {"y", "y'"}});
  if (name == "pyramid")
    return full_model({"u", "x", "v", "y", "w"},
                      {{"u", "x", "v"}, {"v", "y", "w"}});
  if (name == "ds3") {
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> tests;
    for (int i = 1; i <= 3; ++i) {
      std::vector<std::string> row, col;
      for (int j = 1; j <= 3; ++j) {
        std::string cell = std::to_string(i) + std::to_string(j);
        labels.push_back(cell);
        row.push_back(cell);
        col.push_back(std::to_string(j) + std::to_string(i));
      }
      tests.push_back(row);
      tests.push_back(col);
    }
    return full_model(std::move(labels), std::move(tests));
  }
  return std::nullopt;
}

std::vector<std::string> fixture_names() {
  return {"firefly", "gbit", "square", "pyramid", "ds3"};
}

}  // namespace gpt
