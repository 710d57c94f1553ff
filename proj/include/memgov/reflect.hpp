#pragma once

#include <string>
#include <vector>

#include "memgov/config.hpp"
#include "memgov/store.hpp"
#include "memgov/types.hpp"

namespace memgov::reflect {

struct MemoryUpdate {
    MemoryId id = 0;
    bool used = false;
    double overlap = 0.0;
    double trust_before = 0.0;
    double trust_after = 0.0;
    double gain = 0.0;
    double stability_before = 0.0;
    double stability_after = 0.0;
};

struct ReflectReport {
    std::vector<MemoryId> used;
    std::vector<MemoryId> unused;
    std::vector<MemoryUpdate> updates;  // one per retrieved id, input order
};

// The feedback loop: for each retrieved memory, usage detection produces a
// binary measurement z which drives one Kalman trust step. Used memories also
// get review credit — stability grows by the desirable-difficulty rule at the
// current retrievability and the forgetting curve restarts (last_review =
// now). Unused memories take the trust penalty but keep their FSRS state.
ReflectReport run_reflect(MemoryStore& store, const std::string& answer,
                          const std::vector<MemoryId>& retrieved, double now_s,
                          const GovernanceConfig& cfg);

}  // namespace memgov::reflect
