#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace memgov {

// Opaque per-store identifier. Monotonic, never reused after deletion.
using MemoryId = std::uint64_t;

enum class MemoryKind { Episodic, Semantic };

enum class SourceKind { User, Agent, External };

struct SourceTag {
    SourceKind kind = SourceKind::User;
    std::string label;  // optional free-text origin

    bool operator==(const SourceTag&) const = default;
};

// Forgetting-curve state. Stability is measured in days; last_review is
// seconds since epoch (virtual clock). Elapsed time t is derived at the
// policy boundary as (now - last_review) / 86400.
struct FsrsState {
    double stability_days = 1.0;
    double difficulty = 5.0;  // 1..10
    double last_review_s = 0.0;

    bool operator==(const FsrsState&) const = default;
};

// Kalman trust state: trust estimate plus error covariance.
struct UtilityState {
    double trust = 0.5;
    double covariance = 1.0;

    bool operator==(const UtilityState&) const = default;
};

struct MemoryRecord {
    MemoryId id = 0;
    std::string content;
    MemoryKind kind = MemoryKind::Episodic;
    double created_at_s = 0.0;
    FsrsState fsrs;
    UtilityState utility;
    std::vector<double> embedding;  // unit L2 norm, fixed dimension
    SourceTag source;
    std::vector<MemoryId> derived_from;  // provenance parents
    bool deleted = false;                // tombstone
    std::optional<MemoryId> superseded_by;

    bool live() const { return !deleted; }
    // Suppressed losers stay in provenance but never re-enter retrieval.
    bool retrievable() const { return !deleted && !superseded_by.has_value(); }

    bool operator==(const MemoryRecord&) const = default;
};

const char* to_string(MemoryKind k);
const char* to_string(SourceKind k);
std::optional<MemoryKind> parse_memory_kind(const std::string& s);
std::optional<SourceKind> parse_source_kind(const std::string& s);

// Directed co-retrieval statistics: Count(A) per memory and Count(A∩B) per
// unordered pair. pair_count(A,B) == pair_count(B,A) <= min(Count(A), Count(B))
// holds by construction. Ordered maps keep snapshot output deterministic.
class CoOccurrenceGraph {
public:
    // One retrieval event over a set of ids (deduplicated internally).
    void record_co_retrieval(const std::vector<MemoryId>& ids);

    std::uint64_t retrieval_count(MemoryId id) const;
    std::uint64_t pair_count(MemoryId a, MemoryId b) const;

    // P(b | a) = pair_count(a,b) / retrieval_count(a); 0 when Count(a) == 0.
    double conditional(MemoryId b, MemoryId a) const;

    // All ids b with conditional(b, a) strictly above threshold, ascending.
    std::vector<MemoryId> strong_associates(MemoryId a, double threshold) const;

    // Drops every count and edge touching id (forget cascade cleanup).
    void erase(MemoryId id);

    bool empty() const { return counts_.empty() && pairs_.empty(); }
    const std::map<MemoryId, std::uint64_t>& counts() const { return counts_; }
    const std::map<std::pair<MemoryId, MemoryId>, std::uint64_t>& pairs() const { return pairs_; }

    void set_count(MemoryId id, std::uint64_t n);                    // snapshot load
    void set_pair(MemoryId a, MemoryId b, std::uint64_t n);          // snapshot load

    bool operator==(const CoOccurrenceGraph&) const = default;

private:
    std::map<MemoryId, std::uint64_t> counts_;
    std::map<std::pair<MemoryId, MemoryId>, std::uint64_t> pairs_;  // key: (min,max)
};

}  // namespace memgov
