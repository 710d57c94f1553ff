#include "memgov/config.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "memgov/error.hpp"
#include "memgov/text.hpp"

namespace memgov {

namespace {

std::string render_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "bad numeric value for " + key + ": '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "bad integer value for " + key + ": '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw Error(Errc::ParseError, "bad boolean value for " + key + ": '" + value + "'");
}

}  // namespace

const std::vector<ConfigKeyInfo>& config_key_registry() {
    static const std::vector<ConfigKeyInfo> kRegistry = {
        {"fsrs.factor", "lifecycle-engine"},
        {"fsrs.w8", "lifecycle-engine"},
        {"fsrs.difficulty_exponent", "lifecycle-engine"},
        {"fsrs.S0", "core-model"},
        {"fsrs.D0", "core-model"},
        {"entropy.threshold", "lifecycle-engine"},
        {"lifecycle.delete_below", "lifecycle-engine"},
        {"lifecycle.consolidate_upto", "lifecycle-engine"},
        {"lifecycle.consolidation_cosine", "lifecycle-engine"},
        {"kalman.Q", "utility-engine"},
        {"kalman.R", "utility-engine"},
        {"utility.U0", "core-model"},
        {"utility.P0", "core-model"},
        {"usage.threshold", "utility-engine"},
        {"gate.threshold", "retrieval-auction"},
        {"gate.filter_hebbian", "retrieval-auction"},
        {"hebbian.threshold", "retrieval-auction"},
        {"budget.total_window", "retrieval-auction"},
        {"budget.reasoning_reserve", "retrieval-auction"},
        {"budget.recall_reserve", "retrieval-auction"},
        {"budget.avg_gate", "retrieval-auction"},
        {"budget.token_factor", "retrieval-auction"},
        {"temporal.lambda", "retrieval-auction"},
        {"auction.fanout", "retrieval-auction"},
        {"auth.user", "governance"},
        {"auth.agent", "governance"},
        {"auth.external", "governance"},
        {"conflict.tau_days", "governance"},
        {"embedding.dim", "core-model"},
        {"adapter.endpoint", "model-adapters"},
        {"adapter.retries", "model-adapters"},
        {"adapter.timeout_ms", "model-adapters"},
        {"adapter.backoff_ms", "model-adapters"},
    };
    return kRegistry;
}

std::string GovernanceConfig::value_string(const std::string& key) const {
    if (key == "fsrs.factor") return render_double(fsrs_factor);
    if (key == "fsrs.w8") return render_double(fsrs_w8);
    if (key == "fsrs.difficulty_exponent") return render_double(fsrs_difficulty_exponent);
    if (key == "fsrs.S0") return render_double(fsrs_s0);
    if (key == "fsrs.D0") return render_double(fsrs_d0);
    if (key == "entropy.threshold") return render_double(entropy_threshold);
    if (key == "lifecycle.delete_below") return render_double(delete_below);
    if (key == "lifecycle.consolidate_upto") return render_double(consolidate_upto);
    if (key == "lifecycle.consolidation_cosine") return render_double(consolidation_cosine);
    if (key == "kalman.Q") return render_double(kalman_q);
    if (key == "kalman.R") return render_double(kalman_r);
    if (key == "utility.U0") return render_double(utility_u0);
    if (key == "utility.P0") return render_double(utility_p0);
    if (key == "usage.threshold") return render_double(usage_threshold);
    if (key == "gate.threshold") return render_double(gate_threshold);
    if (key == "gate.filter_hebbian") return gate_filter_hebbian ? "true" : "false";
    if (key == "hebbian.threshold") return render_double(hebbian_threshold);
    if (key == "budget.total_window") return std::to_string(budget_total_window);
    if (key == "budget.reasoning_reserve") return std::to_string(budget_reasoning_reserve);
    if (key == "budget.recall_reserve") return std::to_string(budget_recall_reserve);
    if (key == "budget.avg_gate") return render_double(budget_avg_gate);
    if (key == "budget.token_factor") return render_double(budget_token_factor);
    if (key == "temporal.lambda") return render_double(temporal_lambda);
    if (key == "auction.fanout") return std::to_string(auction_fanout);
    if (key == "auth.user") return render_double(auth_user);
    if (key == "auth.agent") return render_double(auth_agent);
    if (key == "auth.external") return render_double(auth_external);
    if (key == "conflict.tau_days") return render_double(conflict_tau_days);
    if (key == "embedding.dim") return std::to_string(embedding_dim);
    if (key == "adapter.endpoint") return adapter_endpoint;
    if (key == "adapter.retries") return std::to_string(adapter_retries);
    if (key == "adapter.timeout_ms") return std::to_string(adapter_timeout_ms);
    if (key == "adapter.backoff_ms") return std::to_string(adapter_backoff_ms);
    throw Error(Errc::ConfigMismatch, "unknown config key: " + key);
}

void GovernanceConfig::set_from_string(const std::string& key, const std::string& value) {
    if (key == "fsrs.factor") fsrs_factor = parse_double(key, value);
    else if (key == "fsrs.w8") fsrs_w8 = parse_double(key, value);
    else if (key == "fsrs.difficulty_exponent") fsrs_difficulty_exponent = parse_double(key, value);
    else if (key == "fsrs.S0") fsrs_s0 = parse_double(key, value);
    else if (key == "fsrs.D0") fsrs_d0 = parse_double(key, value);
    else if (key == "entropy.threshold") entropy_threshold = parse_double(key, value);
    else if (key == "lifecycle.delete_below") delete_below = parse_double(key, value);
    else if (key == "lifecycle.consolidate_upto") consolidate_upto = parse_double(key, value);
    else if (key == "lifecycle.consolidation_cosine") consolidation_cosine = parse_double(key, value);
    else if (key == "kalman.Q") kalman_q = parse_double(key, value);
    else if (key == "kalman.R") kalman_r = parse_double(key, value);
    else if (key == "utility.U0") utility_u0 = parse_double(key, value);
    else if (key == "utility.P0") utility_p0 = parse_double(key, value);
    else if (key == "usage.threshold") usage_threshold = parse_double(key, value);
    else if (key == "gate.threshold") gate_threshold = parse_double(key, value);
    else if (key == "gate.filter_hebbian") gate_filter_hebbian = parse_bool(key, value);
    else if (key == "hebbian.threshold") hebbian_threshold = parse_double(key, value);
    else if (key == "budget.total_window") budget_total_window = parse_long(key, value);
    else if (key == "budget.reasoning_reserve") budget_reasoning_reserve = parse_long(key, value);
    else if (key == "budget.recall_reserve") budget_recall_reserve = parse_long(key, value);
    else if (key == "budget.avg_gate") budget_avg_gate = parse_double(key, value);
    else if (key == "budget.token_factor") budget_token_factor = parse_double(key, value);
    else if (key == "temporal.lambda") temporal_lambda = parse_double(key, value);
    else if (key == "auction.fanout") auction_fanout = parse_long(key, value);
    else if (key == "auth.user") auth_user = parse_double(key, value);
    else if (key == "auth.agent") auth_agent = parse_double(key, value);
    else if (key == "auth.external") auth_external = parse_double(key, value);
    else if (key == "conflict.tau_days") conflict_tau_days = parse_double(key, value);
    else if (key == "embedding.dim") embedding_dim = parse_long(key, value);
    else if (key == "adapter.endpoint") adapter_endpoint = value;
    else if (key == "adapter.retries") adapter_retries = parse_long(key, value);
    else if (key == "adapter.timeout_ms") adapter_timeout_ms = parse_long(key, value);
    else if (key == "adapter.backoff_ms") adapter_backoff_ms = parse_long(key, value);
    else throw Error(Errc::ConfigMismatch, "unknown config key: " + key);
}

void GovernanceConfig::validate() const {
    auto fail = [](const std::string& key, const std::string& why) {
        throw Error(Errc::DomainError, key + " " + why);
    };
    if (!(fsrs_factor > 0.0)) fail("fsrs.factor", "must be positive");
    if (!(fsrs_w8 >= 0.0)) fail("fsrs.w8", "must be non-negative");
    if (!(fsrs_difficulty_exponent > 0.0)) fail("fsrs.difficulty_exponent", "must be positive");
    if (!(fsrs_s0 > 0.0)) fail("fsrs.S0", "must be positive");
    if (!(fsrs_d0 >= 1.0 && fsrs_d0 <= 10.0)) fail("fsrs.D0", "must be in [1,10]");
    if (!(entropy_threshold > 0.0 && entropy_threshold <= 1.0)) fail("entropy.threshold", "must be in (0,1]");
    if (!(delete_below >= 0.0 && delete_below <= 1.0)) fail("lifecycle.delete_below", "must be in [0,1]");
    if (!(consolidate_upto >= delete_below && consolidate_upto <= 1.0)) {
        fail("lifecycle.consolidate_upto", "must be in [delete_below,1]");
    }
    if (!(consolidation_cosine >= -1.0 && consolidation_cosine <= 1.0)) {
        fail("lifecycle.consolidation_cosine", "must be in [-1,1]");
    }
    if (!(kalman_q > 0.0)) fail("kalman.Q", "must be positive");
    if (!(kalman_r > 0.0)) fail("kalman.R", "must be positive");
    if (!(utility_u0 >= 0.0 && utility_u0 <= 1.0)) fail("utility.U0", "must be in [0,1]");
    if (!(utility_p0 > 0.0)) fail("utility.P0", "must be positive");
    if (!(usage_threshold >= 0.0 && usage_threshold <= 1.0)) fail("usage.threshold", "must be in [0,1]");
    if (!(gate_threshold >= 0.0 && gate_threshold <= 1.0)) fail("gate.threshold", "must be in [0,1]");
    if (!(hebbian_threshold >= 0.0 && hebbian_threshold <= 1.0)) fail("hebbian.threshold", "must be in [0,1]");
    if (!(budget_total_window > 2048)) fail("budget.total_window", "must exceed 2048");
    if (!(budget_reasoning_reserve > 0)) fail("budget.reasoning_reserve", "must be positive");
    if (!(budget_recall_reserve > 0)) fail("budget.recall_reserve", "must be positive");
    if (!(budget_avg_gate >= 0.0)) fail("budget.avg_gate", "must be non-negative");
    if (!(budget_token_factor > 0.0)) fail("budget.token_factor", "must be positive");
    if (!(temporal_lambda >= 0.0)) fail("temporal.lambda", "must be non-negative");
    if (!(auction_fanout > 0)) fail("auction.fanout", "must be positive");
    if (!(auth_user >= 0.0)) fail("auth.user", "must be non-negative");
    if (!(auth_agent >= 0.0)) fail("auth.agent", "must be non-negative");
    if (!(auth_external >= 0.0)) fail("auth.external", "must be non-negative");
    if (!(conflict_tau_days > 0.0)) fail("conflict.tau_days", "must be positive");
    if (!(embedding_dim > 0)) fail("embedding.dim", "must be positive");
    if (!(adapter_retries >= 0)) fail("adapter.retries", "must be non-negative");
    if (!(adapter_timeout_ms > 0)) fail("adapter.timeout_ms", "must be positive");
    if (!(adapter_backoff_ms >= 0)) fail("adapter.backoff_ms", "must be non-negative");
}

std::string GovernanceConfig::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    mix("memgov-config-v1\n");
    for (const auto& info : config_key_registry()) {
        mix(info.key);
        mix("=");
        mix(value_string(info.key));
        mix("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string GovernanceConfig::render() const {
    std::ostringstream out;
    out << "# memgov configuration (flat key-value, one policy constant per key)\n";
    for (const auto& info : config_key_registry()) {
        out << info.key << " = " << value_string(info.key) << "\n";
    }
    return out.str();
}

StoreOptions GovernanceConfig::store_options() const {
    StoreOptions opts;
    opts.embedding_dim = static_cast<std::size_t>(embedding_dim);
    opts.initial_stability_days = fsrs_s0;
    opts.initial_difficulty = fsrs_d0;
    opts.initial_trust = utility_u0;
    opts.initial_covariance = utility_p0;
    return opts;
}

adapters::RemoteOptions GovernanceConfig::remote_options() const {
    adapters::RemoteOptions opts;
    opts.endpoint = adapter_endpoint;
    opts.retries = static_cast<int>(adapter_retries);
    opts.timeout_ms = static_cast<int>(adapter_timeout_ms);
    opts.backoff_ms = static_cast<int>(adapter_backoff_ms);
    return opts;
}

adapters::AdapterSuite GovernanceConfig::make_adapters() const {
    if (adapter_endpoint.empty()) {
        return adapters::make_mock_suite(static_cast<std::size_t>(embedding_dim));
    }
    return adapters::make_remote_suite(remote_options(), static_cast<std::size_t>(embedding_dim));
}

GovernanceConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::IoFailure, "cannot open config " + path.string());
    }
    GovernanceConfig cfg;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = text::trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::ParseError, "config line " + std::to_string(line_no) + ": expected key = value",
                        line_no);
        }
        std::string key = text::trim(t.substr(0, eq));
        std::string value = text::trim(t.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw Error(Errc::ParseError, "config line " + std::to_string(line_no) + ": duplicate key " + key,
                        line_no);
        }
        cfg.set_from_string(key, value);
    }
    cfg.validate();
    return cfg;
}

}  // namespace memgov
