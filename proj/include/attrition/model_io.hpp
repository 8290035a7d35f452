#pragma once

#include <variant>

#include "json.hpp"

#include "attrition/adaboost.hpp"
#include "attrition/forest.hpp"
#include "attrition/svm.hpp"

namespace attrition {

/// Current on-disk model format. Serialized models carry this as
/// "format_version" together with a "model" kind tag.
inline constexpr int model_format_version = 1;

nlohmann::json adaboost_to_json(const AdaBoostModel& model);
nlohmann::json forest_to_json(const ForestModel& model);
nlohmann::json svm_to_json(const SvmModel& model);

AdaBoostModel adaboost_from_json(const nlohmann::json& j);
ForestModel forest_from_json(const nlohmann::json& j);
SvmModel svm_from_json(const nlohmann::json& j);

using AnyModel = std::variant<AdaBoostModel, ForestModel, SvmModel>;

nlohmann::json model_to_json(const AnyModel& model);

/// Dispatches on the "model" tag. Throws with a "model_io:" message on a
/// missing/unknown tag, a format_version mismatch, or malformed fields.
AnyModel model_from_json(const nlohmann::json& j);

}  // namespace attrition
