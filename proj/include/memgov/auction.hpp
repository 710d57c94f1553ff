#pragma once

#include <optional>
#include <string>
#include <vector>

#include "memgov/adapters.hpp"
#include "memgov/config.hpp"
#include "memgov/intent.hpp"
#include "memgov/store.hpp"
#include "memgov/types.hpp"

namespace memgov::auction {

// Score = max(sim,0) * R^lambda * (1 + beta * U). Negative similarity clamps
// to zero; with lambda = 0 the score is age-blind.
double auction_score(double sim, double retrievability, double trust, ScoringParams params);

struct Candidate {
    MemoryId id = 0;
    double sim = 0.0;
    double score = 0.0;
};

// Drops candidates whose entailment against the query is strictly below the
// threshold, preserving order. Adapter failure fails open (no drops): the
// gate is a filter, not a source. dropped, when non-null, receives the count.
std::vector<Candidate> veto_gate(const std::string& query, std::vector<Candidate> candidates,
                                 const MemoryStore& store, adapters::Entailer& entailer,
                                 double threshold, std::size_t* dropped = nullptr);

// One-hop Hebbian expansion: for each selected id A, every retrievable B with
// pair(A,B)/Count(A) strictly above the threshold joins the result (appended
// in deterministic order, deduplicated). Appended ids do not expand further.
std::vector<MemoryId> hebbian_expand(const CoOccurrenceGraph& graph,
                                     const std::vector<MemoryId>& selected,
                                     const MemoryStore& store, double threshold);

enum class BudgetMode { Reasoning, Recall };

struct BudgetPlan {
    long total_window = 0;
    long generation_reserve = 0;
    long context_allowance = 0;
    BudgetMode mode = BudgetMode::Recall;
    double avg_top5 = 0.0;
};

// Mean of the top-5 scores (all of them when fewer, 0 when empty) strictly
// above the gate selects the large reasoning reserve; otherwise the recall
// reserve maximizes room for memories.
BudgetPlan allocate_budget(const std::vector<double>& scores_desc, long total_window,
                           const GovernanceConfig& cfg);

enum class AdmittedVia { Auction, Hebbian };

struct AdmittedEntry {
    MemoryId id = 0;
    double score = 0.0;
    AdmittedVia via = AdmittedVia::Auction;
};

struct ContextBundle {
    QueryIntent intent = QueryIntent::Fact;
    std::vector<std::string> sub_queries;
    std::vector<AdmittedEntry> admitted;
    BudgetPlan budget;
    std::size_t gate_drops = 0;
    std::size_t hebbian_pulls = 0;
};

// The full read path, in fixed order: classify -> decompose -> per-sub-query
// nearest neighbors -> union (max sim per memory) -> auction scoring -> sort
// -> veto gate -> Hebbian expansion -> budget -> greedy admission by token
// estimate -> co-retrieval bookkeeping over the final admitted set.
ContextBundle retrieve_context(MemoryStore& store, const std::string& query, double now_s,
                               const adapters::AdapterSuite& adapters,
                               const GovernanceConfig& cfg,
                               std::optional<QueryIntent> intent_override = std::nullopt);

}  // namespace memgov::auction
