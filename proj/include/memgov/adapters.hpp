#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace memgov::adapters {

// Every model-shaped capability sits behind one of these interfaces. Calls
// return nullopt on availability failures (timeouts, transport errors); each
// call site applies its own documented degradation. Invalid input is a hard
// error and throws instead.
class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::optional<std::vector<double>> embed(const std::string& text) = 0;
    virtual std::size_t dimension() const = 0;
};

class Entailer {
public:
    virtual ~Entailer() = default;
    virtual std::optional<double> entailment(const std::string& query, const std::string& memory) = 0;
};

class Summarizer {
public:
    virtual ~Summarizer() = default;
    virtual std::optional<std::string> summarize(const std::vector<std::string>& contents) = 0;
};

class Decomposer {
public:
    virtual ~Decomposer() = default;
    virtual std::optional<std::vector<std::string>> decompose(const std::string& query) = 0;
};

class Guard {
public:
    virtual ~Guard() = default;
    // true = content is safe to persist. nullopt = guard unreachable.
    virtual std::optional<bool> allows(const std::string& content) = 0;
};

struct AdapterSuite {
    std::shared_ptr<Embedder> embedder;
    std::shared_ptr<Entailer> entailer;
    std::shared_ptr<Summarizer> summarizer;
    std::shared_ptr<Decomposer> decomposer;
    std::shared_ptr<Guard> guard;
};

// --- deterministic mocks -------------------------------------------------

// Signed feature hashing of content words into `dim` bins, L2-normalized.
// Pure function of the text: identical output across processes.
std::vector<double> mock_embed(const std::string& text, std::size_t dim);

// |content-words(query) ∩ content-words(memory)| / |content-words(query)|.
double mock_entailment(const std::string& query, const std::string& memory);

// Deduplicated input union joined by "; ", prefixed "CONSOLIDATED:".
std::string mock_summarize(const std::vector<std::string>& contents);

// Clause splitter: breaks on " and " / " and then " / "?" boundaries and
// strips interrogative scaffolding from trailing clauses.
std::vector<std::string> mock_decompose(const std::string& query);

// Deny-list regex guard over the built-in injection markers.
bool mock_guard_allows(const std::string& content);
const std::vector<std::string>& injection_markers();

AdapterSuite make_mock_suite(std::size_t embedding_dim);

// --- remote clients -------------------------------------------------------

struct RemoteOptions {
    std::string endpoint;      // e.g. "localhost:9100"
    int retries = 2;           // retry attempts after the first try
    int timeout_ms = 10000;
    int backoff_ms = 100;      // doubles per retry
};

// Wire protocol v1: POST /v1/adapter with
//   {"schema":"v1","role":...,"inputs":[...],"params":{...}}
// expecting {"schema":"v1","outputs":[...],"model_id":...}.
// Returns nullopt (AdapterUnavailable) after exhausting retries; malformed
// bodies also map to nullopt after logging.
class RemoteAdapterClient {
public:
    explicit RemoteAdapterClient(RemoteOptions opts);
    std::optional<std::string> call_raw(const std::string& role,
                                        const std::vector<std::string>& inputs,
                                        const std::string& params_json);

    const RemoteOptions& options() const { return opts_; }

private:
    RemoteOptions opts_;
};

AdapterSuite make_remote_suite(const RemoteOptions& opts, std::size_t embedding_dim);

}  // namespace memgov::adapters
