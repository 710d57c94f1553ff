#pragma once

#include <string>
#include <vector>

#include "memgov/config.hpp"
#include "memgov/store.hpp"
#include "memgov/types.hpp"

namespace memgov::lifecycle {

struct ConsolidatedGroup {
    std::vector<MemoryId> sources;  // ascending
    MemoryId new_id = 0;
};

struct MaintenanceReport {
    std::vector<MemoryId> deleted;                 // pruned this pass, ascending
    std::vector<ConsolidatedGroup> consolidated;   // group per new semantic record
    std::size_t kept = 0;
    double entropy_ratio_observed = 1.0;
    bool triggered = false;
    std::vector<MemoryId> purged_tombstones;       // stale tombstones physically removed
};

// The background hygiene pass. When the entropy probe over the live episodic
// log fires, every live episodic record is classified by current
// retrievability: below delete_below it is pruned, inside
// [delete_below, consolidate_upto] it joins a consolidation group that is
// summarized into one new Semantic record (provenance in derived_from), and
// above consolidate_upto it is kept untouched. Semantic records are never
// deleted here. The pass is all-or-nothing: adapter failures abort before any
// mutation is applied.
//
// Stale tombstones from earlier passes are physically removed, except those
// still referenced (transitively) from a live record's provenance — dropping
// such a parent would break later forget cascades through it.
MaintenanceReport run_maintenance(MemoryStore& store, double now_s,
                                  adapters::Summarizer& summarizer,
                                  const GovernanceConfig& cfg);

// Pure classification rule shared with tests.
enum class RetentionAction { Delete, Consolidate, Keep };
RetentionAction classify_retention(double retrievability, double delete_below,
                                   double consolidate_upto);

// Audit document: one action per line (DELETE id / CONSOLIDATE id -> new_id /
// PURGE id / KEPT n).
std::string audit_text(const MaintenanceReport& report);

}  // namespace memgov::lifecycle
