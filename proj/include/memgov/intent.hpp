#pragma once

#include <string>
#include <vector>

#include "memgov/adapters.hpp"
#include "memgov/config.hpp"

namespace memgov::auction {

enum class QueryIntent { Fact, Temporal, Reasoning, MultiHop };

const char* to_string(QueryIntent intent);
std::optional<QueryIntent> parse_intent(const std::string& s);

struct ScoringParams {
    double lambda = 0.0;  // decay penalty exponent
    double beta = 0.0;    // utility boost
};

// Per-intent parameters: Fact (0,0), Reasoning (1,0), MultiHop (0.5,1.5),
// Temporal (temporal.lambda, 0).
ScoringParams params_for(QueryIntent intent, const GovernanceConfig& cfg);

// Deterministic rule cascade, first match wins:
//   1. two or more interrogative words, or a coordinating chain ("and then",
//      "of that") -> MultiHop
//   2. temporal markers (when/before/after/date/ago, month names) -> Temporal
//   3. causal or comparative markers (why/how/compare/should/because) -> Reasoning
//   4. otherwise Fact
QueryIntent classify_intent(const std::string& query);

// MultiHop queries go through the decomposer adapter and must come back as
// two or more sub-queries; everything else passes through as [query]. Adapter
// failure degrades to [query] with a warning — decomposition never fails the
// read path.
std::vector<std::string> decompose_query(const std::string& query, QueryIntent intent,
                                         adapters::Decomposer& decomposer);

}  // namespace memgov::auction
