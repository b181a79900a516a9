#pragma once

#include <string>

#include <json.hpp>

#include "gpt/composites.hpp"
#include "gpt/logic.hpp"

namespace gpt {

using Json = nlohmann::ordered_json;

/// Parses the model document
///   {"outcomes": [...], "tests": [[...],...], "states": "full" | [[q,...]]}
/// Rational entries are "p/q" or integer strings. State vectors follow the
/// canonical (sorted-label) outcome order. Listed states are validated as
/// probability weights.
Model load_model(const std::string& bytes);
Model load_model_json(const Json& doc);

Json model_document(const Model& model);

Json rational_array(const Vec& v);
Vec parse_rational_array(const Json& arr);

Json matrix_rows(const Mat& m);
Mat parse_matrix_rows(const Json& rows);

/// Joint-weight document: {"A": <model|fixture-name>, "B": ..., "table": [[..]]}
struct JointWeightDoc {
  Model a;
  Model b;
  Mat table;
};
JointWeightDoc load_joint_weight(const std::string& bytes);
Json joint_weight_document(const Model& a, const Model& b, const Mat& table);

Json logic_document(const Orthoalgebra& l);

/// FNV-1a 64-bit content digest, hex-encoded; used in CLI reports.
std::string digest(const std::string& bytes);

}  // namespace gpt
