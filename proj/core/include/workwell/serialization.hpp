#pragma once

#include <nlohmann/json.hpp>

#include "workwell/domain.hpp"

namespace workwell {

// Canonical JSON forms of the domain types. Field names are the schema;
// scenario files and reports use exactly these.
void to_json(nlohmann::json& j, const EmployeeProfile& p);
void from_json(const nlohmann::json& j, EmployeeProfile& p);

void to_json(nlohmann::json& j, const BiometricSample& s);
void from_json(const nlohmann::json& j, BiometricSample& s);

void to_json(nlohmann::json& j, const TaskInstance& t);
void from_json(const nlohmann::json& j, TaskInstance& t);

} // namespace workwell
