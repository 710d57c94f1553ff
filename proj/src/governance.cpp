#include "memgov/governance.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "memgov/error.hpp"
#include "memgov/text.hpp"

namespace memgov::governance {

double source_authority(SourceKind kind, const GovernanceConfig& cfg) {
    switch (kind) {
        case SourceKind::User: return cfg.auth_user;
        case SourceKind::Agent: return cfg.auth_agent;
        case SourceKind::External: return cfg.auth_external;
    }
    return cfg.auth_external;
}

namespace {

double conflict_score(const MemoryRecord& rec, double now_s, const GovernanceConfig& cfg) {
    double age_days = (now_s - rec.created_at_s) / 86400.0;
    if (age_days < 0.0) age_days = 0.0;
    return source_authority(rec.source.kind, cfg) * std::exp(-age_days / cfg.conflict_tau_days);
}

}  // namespace

ConflictVerdict resolve_conflict(MemoryStore& store, MemoryId newer, MemoryId older, double now_s,
                                 const GovernanceConfig& cfg) {
    if (newer == older) {
        throw Error(Errc::SameRecord, "cannot adjudicate a record against itself", newer);
    }
    const MemoryRecord& a = store.get_memory(newer);
    const MemoryRecord& b = store.get_memory(older);

    double score_a = conflict_score(a, now_s, cfg);
    double score_b = conflict_score(b, now_s, cfg);

    ConflictVerdict verdict;
    bool a_wins;
    if (score_a != score_b) {
        a_wins = score_a > score_b;
    } else {
        // Exact tie: the newer record wins.
        a_wins = a.created_at_s >= b.created_at_s;
    }
    verdict.winner = a_wins ? newer : older;
    verdict.loser = a_wins ? older : newer;
    verdict.winner_score = a_wins ? score_a : score_b;
    verdict.loser_score = a_wins ? score_b : score_a;

    store.record_mut(verdict.loser).superseded_by = verdict.winner;
    return verdict;
}

std::vector<MemoryId> forget_cascade(MemoryStore& store, MemoryId root) {
    if (!store.peek(root)) {
        throw Error(Errc::NotFound, "memory " + std::to_string(root) + " not found", root);
    }

    // Forward closure over derived_from: children list their parents, so
    // re-scan the store until the purge set stops growing.
    std::set<MemoryId> purged = {root};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [id, rec] : store.records()) {
            if (purged.count(id)) continue;
            for (MemoryId parent : rec.derived_from) {
                if (purged.count(parent)) {
                    purged.insert(id);
                    grew = true;
                    break;
                }
            }
        }
    }

    std::vector<MemoryId> out(purged.begin(), purged.end());
    for (MemoryId id : out) {
        store.record_mut(id).deleted = true;
        store.cooccurrence().erase(id);
    }
    return out;
}

AdmitDecision admit_write(const std::string& content, adapters::Guard& guard) {
    std::optional<bool> allowed;
    try {
        allowed = guard.allows(content);
    } catch (const std::exception&) {
        allowed = std::nullopt;
    }
    if (!allowed) {
        return {false, "GuardUnavailable"};
    }
    if (!*allowed) {
        return {false, "content matched the write-path deny list"};
    }
    return {true, ""};
}

bool trivial_conflict(const std::string& a, const std::string& b) {
    static const std::set<std::string> kCopulas = {"is",    "are",   "was",   "were", "lives",
                                                   "lived", "moved", "works", "worked"};
    auto split = [](const std::string& s) -> std::optional<std::pair<std::string, std::string>> {
        std::vector<std::string> tokens = text::tokenize(s);
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (kCopulas.count(tokens[i])) {
                std::string subject;
                for (std::size_t j = 0; j < i; ++j) subject += tokens[j] + " ";
                std::string object;
                for (std::size_t j = i + 1; j < tokens.size(); ++j) object += tokens[j] + " ";
                if (subject.empty() || object.empty()) return std::nullopt;
                return std::pair{subject + tokens[i], object};
            }
        }
        return std::nullopt;
    };
    auto slot_a = split(a);
    auto slot_b = split(b);
    if (!slot_a || !slot_b) return false;
    return slot_a->first == slot_b->first && slot_a->second != slot_b->second;
}

}  // namespace memgov::governance
