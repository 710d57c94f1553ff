#include <doctest.h>

#include "memgov/adapters.hpp"
#include "memgov/error.hpp"
#include "memgov/intent.hpp"

using namespace memgov;
using auction::QueryIntent;

namespace {

struct FailingDecomposer final : adapters::Decomposer {
    std::optional<std::vector<std::string>> decompose(const std::string&) override {
        return std::nullopt;
    }
};

}  // namespace

TEST_CASE("plain lookups classify as Fact") {
    CHECK(auction::classify_intent("What is the capital of Japan?") == QueryIntent::Fact);
    CHECK(auction::classify_intent("Name of the user's employer") == QueryIntent::Fact);
}

TEST_CASE("two interrogative clauses or a coordinating chain classify as MultiHop") {
    CHECK(auction::classify_intent("Where is Tokyo and what is the capital of that country?") ==
          QueryIntent::MultiHop);
    CHECK(auction::classify_intent("Find the recipe and then the shopping list") ==
          QueryIntent::MultiHop);
    CHECK(auction::classify_intent("The author of that book") == QueryIntent::MultiHop);
}

TEST_CASE("temporal markers classify as Temporal") {
    CHECK(auction::classify_intent("When did the user move?") == QueryIntent::Temporal);
    CHECK(auction::classify_intent("Events before the meeting") == QueryIntent::Temporal);
    CHECK(auction::classify_intent("The trip in March") == QueryIntent::Temporal);
    CHECK(auction::classify_intent("Two days ago someone called") == QueryIntent::Temporal);
}

TEST_CASE("causal and comparative markers classify as Reasoning") {
    CHECK(auction::classify_intent("Why did the user leave?") == QueryIntent::Reasoning);
    CHECK(auction::classify_intent("Compare the two apartments") == QueryIntent::Reasoning);
    CHECK(auction::classify_intent("Should the user accept the offer?") == QueryIntent::Reasoning);
}

TEST_CASE("the cascade is first-match-wins") {
    // Two interrogatives beat the temporal marker.
    CHECK(auction::classify_intent("When did it start and when did it end?") ==
          QueryIntent::MultiHop);
    // A temporal marker beats a reasoning marker later in the query.
    CHECK(auction::classify_intent("Before deciding, should we wait?") == QueryIntent::Temporal);
}

TEST_CASE("empty queries are rejected") {
    CHECK_THROWS_AS(auction::classify_intent(""), Error);
    CHECK_THROWS_AS(auction::classify_intent("  !!!  "), Error);
}

TEST_CASE("per-intent scoring parameters") {
    GovernanceConfig cfg;
    CHECK(auction::params_for(QueryIntent::Fact, cfg).lambda == 0.0);
    CHECK(auction::params_for(QueryIntent::Fact, cfg).beta == 0.0);
    CHECK(auction::params_for(QueryIntent::Reasoning, cfg).lambda == 1.0);
    CHECK(auction::params_for(QueryIntent::Reasoning, cfg).beta == 0.0);
    CHECK(auction::params_for(QueryIntent::MultiHop, cfg).lambda == 0.5);
    CHECK(auction::params_for(QueryIntent::MultiHop, cfg).beta == 1.5);
    CHECK(auction::params_for(QueryIntent::Temporal, cfg).lambda == 0.5);
    CHECK(auction::params_for(QueryIntent::Temporal, cfg).beta == 0.0);

    cfg.temporal_lambda = 0.25;
    CHECK(auction::params_for(QueryIntent::Temporal, cfg).lambda == 0.25);
}

TEST_CASE("non-multihop queries pass through decomposition unchanged") {
    auto suite = adapters::make_mock_suite(16);
    auto subs = auction::decompose_query("What is the capital of Japan?", QueryIntent::Fact,
                                         *suite.decomposer);
    REQUIRE(subs == std::vector<std::string>{"What is the capital of Japan?"});
}

TEST_CASE("the coordinated Tokyo question decomposes into two sub-queries") {
    auto suite = adapters::make_mock_suite(16);
    auto subs = auction::decompose_query("Where is Tokyo and what is the capital of that country?",
                                         QueryIntent::MultiHop, *suite.decomposer);
    REQUIRE(subs.size() == 2);
    CHECK(subs[0] == "Where is Tokyo?");
    CHECK(subs[1] == "Capital of that country?");
}

TEST_CASE("a failing decomposer degrades to the whole query") {
    FailingDecomposer failing;
    auto subs = auction::decompose_query("Where is Tokyo and what is the capital of that country?",
                                         QueryIntent::MultiHop, failing);
    REQUIRE(subs.size() == 1);
}

TEST_CASE("intent names round-trip") {
    for (auto intent : {QueryIntent::Fact, QueryIntent::Temporal, QueryIntent::Reasoning,
                        QueryIntent::MultiHop}) {
        auto parsed = auction::parse_intent(auction::to_string(intent));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == intent);
    }
    CHECK_FALSE(auction::parse_intent("nonsense").has_value());
}
