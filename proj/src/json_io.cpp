#include "gpt/json_io.hpp"

#include <sstream>

#include "gpt/fixtures.hpp"
#include "gpt/states.hpp"

namespace gpt {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational string, got: " + j.dump());
}

}  // namespace

Vec parse_rational_array(const Json& arr) {
  if (!arr.is_array()) throw ParseError("expected an array of rationals");
  Vec v;
  for (const Json& e : arr) v.push_back(rational_from_json(e));
  return v;
}

Json rational_array(const Vec& v) {
  Json arr = Json::array();
  for (const Rational& q : v) arr.push_back(to_string(q));
  return arr;
}

Json matrix_rows(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(rational_array(m.row(i)));
  return rows;
}

Mat parse_matrix_rows(const Json& rows) {
  if (!rows.is_array() || rows.empty())
    throw ParseError("expected a non-empty array of rows");
  std::vector<Vec> parsed;
  for (const Json& r : rows) parsed.push_back(parse_rational_array(r));
  for (const Vec& r : parsed)
    if (r.size() != parsed.front().size())
      throw ParseError("ragged matrix rows");
  return Mat::from_rows(parsed);
}

Model load_model_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("model document must be an object");
  if (!doc.contains("outcomes") || !doc.contains("tests"))
    throw ParseError("model document needs \"outcomes\" and \"tests\"");

  std::vector<std::string> labels;
  for (const Json& o : doc.at("outcomes")) {
    if (!o.is_string()) throw ParseError("outcome labels must be strings");
    labels.push_back(o.get<std::string>());
  }
  std::vector<std::vector<std::string>> tests;
  for (const Json& t : doc.at("tests")) {
    std::vector<std::string> test;
    for (const Json& o : t) {
      if (!o.is_string()) throw ParseError("test members must be strings");
      test.push_back(o.get<std::string>());
    }
    tests.push_back(std::move(test));
  }

  Model model;
  model.space = TestSpace::make(std::move(labels), std::move(tests));
  model.full = true;
  if (doc.contains("states") && !doc.at("states").is_string()) {
    model.full = false;
    for (const Json& s : doc.at("states")) {
      Vec v = parse_rational_array(s);
      if (v.size() != model.space.outcome_count() ||
          !is_weight(model.space, v))
        throw NotAWeightError("listed state is not a probability weight");
      model.generators.push_back(std::move(v));
    }
    if (model.generators.empty())
      throw NotAWeightError("generated model lists no states");
  } else if (doc.contains("states") &&
             doc.at("states").get<std::string>() != "full") {
    throw ParseError("\"states\" must be \"full\" or an array of vectors");
  }
  return model;
}

Model load_model(const std::string& bytes) {
  Json doc;
  try {
    doc = Json::parse(bytes);
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("malformed JSON: ") + err.what());
  }
  return load_model_json(doc);
}

Json model_document(const Model& model) {
  Json doc;
  Json outcomes = Json::array();
  for (const Outcome& o : model.space.outcomes()) outcomes.push_back(o.id);
  doc["outcomes"] = outcomes;
  Json tests = Json::array();
  for (const OutcomeSet& t : model.space.tests()) {
    Json test = Json::array();
    for (int x : t) test.push_back(model.space.label(x));
    tests.push_back(test);
  }
  doc["tests"] = tests;
  if (model.full) {
    doc["states"] = "full";
  } else {
    Json states = Json::array();
    for (const Vec& g : model.generators) states.push_back(rational_array(g));
    doc["states"] = states;
  }
  return doc;
}

namespace {

Model model_from_ref(const Json& j) {
  if (j.is_string()) {
    auto fx = fixture(j.get<std::string>());
    if (!fx) throw ParseError("unknown fixture name: " + j.get<std::string>());
    return *fx;
  }
  return load_model_json(j);
}

}  // namespace

JointWeightDoc load_joint_weight(const std::string& bytes) {
  Json doc;
  try {
    doc = Json::parse(bytes);
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("malformed JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("A") || !doc.contains("B") ||
      !doc.contains("table"))
    throw ParseError("joint weight document needs \"A\", \"B\", \"table\"");
  JointWeightDoc out{model_from_ref(doc.at("A")), model_from_ref(doc.at("B")),
                     parse_matrix_rows(doc.at("table"))};
  return out;
}

Json joint_weight_document(const Model& a, const Model& b, const Mat& table) {
  Json doc;
  doc["A"] = model_document(a);
  doc["B"] = model_document(b);
  doc["table"] = matrix_rows(table);
  return doc;
}

Json logic_document(const Orthoalgebra& l) {
  Json doc;
  doc["elements"] = l.names;
  doc["zero"] = l.names[l.zero];
  doc["one"] = l.names[l.one];
  Json perp = Json::array();
  Json oplus = Json::array();
  for (int p = 0; p < l.size(); ++p)
    for (int q = p; q < l.size(); ++q)
      if (l.perp[p][q]) {
        perp.push_back(Json::array({l.names[p], l.names[q]}));
        oplus.push_back(
            Json::array({l.names[p], l.names[q], l.names[l.oplus[p][q]]}));
      }
  doc["perp"] = perp;
  doc["oplus"] = oplus;
  Json comp = Json::array();
  for (int p = 0; p < l.size(); ++p) comp.push_back(l.names[l.ocomp[p]]);
  doc["ocomp"] = comp;
  return doc;
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace gpt
