#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "memgov/adapters.hpp"
#include "memgov/store.hpp"

namespace memgov {

// Every policy constant, one named key each. Values are config-first: the
// documented defaults reproduce the shipped behavior, and the fingerprint
// hash covers every key so snapshots refuse to load under a different policy
// regime.
struct GovernanceConfig {
    // forgetting curve
    double fsrs_factor = 19.0 / 9.0;           // fsrs.factor
    double fsrs_w8 = 0.5;                      // fsrs.w8
    double fsrs_difficulty_exponent = 1.5;     // fsrs.difficulty_exponent
    double fsrs_s0 = 1.0;                      // fsrs.S0 (days)
    double fsrs_d0 = 5.0;                      // fsrs.D0
    // lifecycle
    double entropy_threshold = 0.4;            // entropy.threshold
    double delete_below = 0.3;                 // lifecycle.delete_below
    double consolidate_upto = 0.7;             // lifecycle.consolidate_upto
    double consolidation_cosine = 0.6;         // lifecycle.consolidation_cosine
    // trust tracking
    double kalman_q = 0.05;                    // kalman.Q
    double kalman_r = 0.1;                     // kalman.R
    double utility_u0 = 0.5;                   // utility.U0
    double utility_p0 = 1.0;                   // utility.P0
    double usage_threshold = 0.3;              // usage.threshold
    // retrieval auction
    double gate_threshold = 0.1;               // gate.threshold
    bool gate_filter_hebbian = false;          // gate.filter_hebbian
    double hebbian_threshold = 0.7;            // hebbian.threshold
    long budget_total_window = 8192;           // budget.total_window
    long budget_reasoning_reserve = 2048;      // budget.reasoning_reserve
    long budget_recall_reserve = 300;          // budget.recall_reserve
    double budget_avg_gate = 0.4;              // budget.avg_gate
    double budget_token_factor = 1.3;          // budget.token_factor
    double temporal_lambda = 0.5;              // temporal.lambda
    long auction_fanout = 20;                  // auction.fanout
    // governance
    double auth_user = 1.0;                    // auth.user
    double auth_agent = 0.7;                   // auth.agent
    double auth_external = 0.5;                // auth.external
    double conflict_tau_days = 30.0;           // conflict.tau_days
    // adapters / store
    long embedding_dim = 512;                  // embedding.dim
    std::string adapter_endpoint;              // adapter.endpoint ("" = mocks)
    long adapter_retries = 2;                  // adapter.retries
    long adapter_timeout_ms = 10000;           // adapter.timeout_ms
    long adapter_backoff_ms = 100;             // adapter.backoff_ms

    // Throws DomainError naming the offending key when a value leaves its
    // documented domain.
    void validate() const;

    // FNV-1a over the canonical key=value rendering of every key.
    std::string fingerprint() const;

    std::string value_string(const std::string& key) const;
    void set_from_string(const std::string& key, const std::string& value);

    // Canonical flat key-value rendering (the config file format).
    std::string render() const;

    StoreOptions store_options() const;
    adapters::RemoteOptions remote_options() const;
    adapters::AdapterSuite make_adapters() const;

    bool operator==(const GovernanceConfig&) const = default;
};

// Which module consumes a key. Exactly one owner per key; the audit test
// walks this table.
struct ConfigKeyInfo {
    const char* key;
    const char* owner;
};

const std::vector<ConfigKeyInfo>& config_key_registry();

// Parses a flat key-value file ('#' comments, 'key = value' lines). Unknown
// keys are rejected (ConfigMismatch), duplicates are rejected (ParseError),
// and the result is validated before returning.
GovernanceConfig load_config(const std::filesystem::path& path);

}  // namespace memgov
