#include "memgov/intent.hpp"

#include <set>

#include "memgov/error.hpp"
#include "memgov/log.hpp"
#include "memgov/text.hpp"

namespace memgov::auction {

const char* to_string(QueryIntent intent) {
    switch (intent) {
        case QueryIntent::Fact: return "Fact";
        case QueryIntent::Temporal: return "Temporal";
        case QueryIntent::Reasoning: return "Reasoning";
        case QueryIntent::MultiHop: return "MultiHop";
    }
    return "Fact";
}

std::optional<QueryIntent> parse_intent(const std::string& s) {
    if (s == "Fact" || s == "fact") return QueryIntent::Fact;
    if (s == "Temporal" || s == "temporal") return QueryIntent::Temporal;
    if (s == "Reasoning" || s == "reasoning") return QueryIntent::Reasoning;
    if (s == "MultiHop" || s == "multihop" || s == "multi-hop") return QueryIntent::MultiHop;
    return std::nullopt;
}

ScoringParams params_for(QueryIntent intent, const GovernanceConfig& cfg) {
    switch (intent) {
        case QueryIntent::Fact: return {0.0, 0.0};
        case QueryIntent::Reasoning: return {1.0, 0.0};
        case QueryIntent::MultiHop: return {0.5, 1.5};
        case QueryIntent::Temporal: return {cfg.temporal_lambda, 0.0};
    }
    return {0.0, 0.0};
}

namespace {

const std::set<std::string> kInterrogatives = {"what", "where", "when", "who",
                                               "whom", "which", "why", "how"};
const std::set<std::string> kTemporalMarkers = {
    "when", "before",  "after",    "date",    "ago",      "january", "february",
    "march", "april",  "may",      "june",    "july",     "august",  "september",
    "october", "november", "december"};
const std::set<std::string> kReasoningMarkers = {"why",      "how",     "compare", "compares",
                                                 "compared", "comparison", "should", "because"};

bool has_bigram(const std::vector<std::string>& tokens, const char* first, const char* second) {
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (tokens[i] == first && tokens[i + 1] == second) return true;
    }
    return false;
}

}  // namespace

QueryIntent classify_intent(const std::string& query) {
    std::vector<std::string> tokens = text::tokenize(query);
    if (tokens.empty()) {
        throw Error(Errc::EmptyQuery, "query has no tokens");
    }

    std::size_t interrogatives = 0;
    for (const auto& tok : tokens) {
        if (kInterrogatives.count(tok)) ++interrogatives;
    }
    if (interrogatives >= 2 || has_bigram(tokens, "and", "then") || has_bigram(tokens, "of", "that")) {
        return QueryIntent::MultiHop;
    }
    for (const auto& tok : tokens) {
        if (kTemporalMarkers.count(tok)) return QueryIntent::Temporal;
    }
    for (const auto& tok : tokens) {
        if (kReasoningMarkers.count(tok)) return QueryIntent::Reasoning;
    }
    return QueryIntent::Fact;
}

std::vector<std::string> decompose_query(const std::string& query, QueryIntent intent,
                                         adapters::Decomposer& decomposer) {
    if (intent != QueryIntent::MultiHop) {
        return {query};
    }
    std::optional<std::vector<std::string>> subs;
    try {
        subs = decomposer.decompose(query);
    } catch (const std::exception& e) {
        warn(std::string("decomposer failed: ") + e.what());
        subs = std::nullopt;
    }
    if (!subs || subs->size() < 2) {
        warn("decomposer degraded; retrieving with the whole query");
        return {query};
    }
    return *subs;
}

}  // namespace memgov::auction
