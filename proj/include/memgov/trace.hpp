#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "memgov/config.hpp"
#include "memgov/types.hpp"

namespace memgov::trace {

// One line-delimited trace event. Grammar (v1):
//   TRACE v1
//   INGEST   [at=<days>] [source=User|Agent|External] [kind=Episodic|Semantic] content="..."
//   QUERY    [at=<days>] [expect="a|b|c"] text="..."
//   FEEDBACK [at=<days>] answer="..."
//   ADVANCE  days=<days>
//   MAINTAIN [at=<days>]
//   FORGET   [at=<days>] ref=<id>|@<k>     (@k = id returned by the k-th INGEST)
// '#' opens a comment line; `at` values must be non-decreasing.
struct TraceEvent {
    enum class Kind { Ingest, Query, Feedback, Advance, Maintain, Forget };
    Kind kind = Kind::Ingest;
    std::size_t line = 0;
    std::optional<double> at_days;

    std::string content;                       // Ingest
    SourceTag source;                          // Ingest
    MemoryKind memory_kind = MemoryKind::Episodic;

    std::string text;                          // Query
    std::vector<std::string> expect_contains;  // Query

    std::string answer;                        // Feedback
    double days = 0.0;                         // Advance
    std::string ref;                           // Forget
};

std::vector<TraceEvent> parse_trace(std::istream& in);
std::vector<TraceEvent> parse_trace_file(const std::filesystem::path& path);

// Counters reported by a replay. The harness reports policy activity, not
// benchmark accuracy.
struct SimulationReport {
    std::size_t queries_total = 0;
    std::size_t queries_with_expectations = 0;
    std::size_t queries_satisfied = 0;
    std::size_t memories_ingested = 0;
    std::size_t guard_rejects = 0;
    std::size_t memories_pruned = 0;
    std::size_t memories_consolidated = 0;  // source records folded into summaries
    std::size_t memories_forgotten = 0;
    std::size_t gate_drops = 0;
    std::size_t hebbian_pulls = 0;
    std::size_t budget_reasoning = 0;
    std::size_t budget_recall = 0;
    std::size_t maintenance_runs = 0;
    std::size_t maintenance_triggered = 0;
    std::size_t final_store_size = 0;  // live records
    double final_clock_days = 0.0;

    std::string to_json() const;  // canonical, byte-deterministic
};

// Replays a trace against a fresh engine under the virtual clock. Advance
// moves time without sleeping; a Query with expectations is satisfied when
// every expected string appears in some admitted memory's content.
SimulationReport run_simulation(const std::filesystem::path& trace_path,
                                const GovernanceConfig& cfg);

}  // namespace memgov::trace
