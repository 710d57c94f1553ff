#pragma once

#include <string>
#include <vector>

#include "memgov/adapters.hpp"
#include "memgov/config.hpp"
#include "memgov/store.hpp"
#include "memgov/types.hpp"

namespace memgov::governance {

struct ConflictVerdict {
    MemoryId winner = 0;
    MemoryId loser = 0;
    double winner_score = 0.0;
    double loser_score = 0.0;
};

// Authority tier for a source tag (config-backed, not a paper constant).
double source_authority(SourceKind kind, const GovernanceConfig& cfg);

// Adjudicates two contradicting records: each scores
// authority(source) * e^(-age_days / tau) and the higher score wins; exact
// ties go to the newer record. The loser is marked superseded-by(winner),
// which removes it from retrieval while keeping it in provenance.
ConflictVerdict resolve_conflict(MemoryStore& store, MemoryId newer, MemoryId older, double now_s,
                                 const GovernanceConfig& cfg);

// Right-to-be-forgotten: tombstones the root plus the forward transitive
// closure over derived_from edges (every record that lists the root, or any
// purged record, as a parent), and drops co-occurrence state touching the
// purge set. Returns the purge set ascending. Idempotent.
std::vector<MemoryId> forget_cascade(MemoryStore& store, MemoryId root);

struct AdmitDecision {
    bool admitted = false;
    std::string reason;  // empty on admit
};

// Write-path guard. The guard adapter decides; an unreachable guard fails
// closed (Reject with GuardUnavailable) because this path exists to stop
// persistent poisoning.
AdmitDecision admit_write(const std::string& content, adapters::Guard& guard);

// Minimal detector for the harness: same subject/verb slots, different
// object. Conflict *detection* proper is out of band (adapter-driven).
bool trivial_conflict(const std::string& a, const std::string& b);

}  // namespace memgov::governance
