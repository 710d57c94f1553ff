#pragma once

#include <json.hpp>

#include "memgov/auction.hpp"
#include "memgov/maintenance.hpp"
#include "memgov/reflect.hpp"
#include "memgov/store.hpp"

// Body schemas for the /v1 service API and the CLI's structured output.
// Ordered JSON keeps every rendering byte-deterministic.
namespace memgov::wire {

using ordered_json = nlohmann::ordered_json;

ordered_json record_to_json(const MemoryRecord& rec, bool include_embedding = false);
ordered_json bundle_to_json(const auction::ContextBundle& bundle, const MemoryStore& store);
ordered_json reflect_to_json(const reflect::ReflectReport& report);
ordered_json maintenance_to_json(const lifecycle::MaintenanceReport& report);

}  // namespace memgov::wire
