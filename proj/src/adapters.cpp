#include "memgov/adapters.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <regex>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "memgov/error.hpp"
#include "memgov/log.hpp"
#include "memgov/text.hpp"

namespace memgov::adapters {

namespace {

// FNV-1a 64-bit. std::hash is implementation-defined, so embeddings would not
// be reproducible across toolchains with it.
std::uint64_t fnv1a(const std::string& s, std::uint64_t seed = 0xcbf29ce484222325ULL) {
    std::uint64_t h = seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::vector<double> mock_embed(const std::string& text, std::size_t dim) {
    std::vector<std::string> words = text::content_words(text);
    if (words.empty()) {
        // All-stopword content still deserves a stable embedding.
        words = text::tokenize(text);
    }
    if (words.empty()) {
        throw Error(Errc::EmptyText, "no embeddable tokens");
    }
    std::vector<double> vec(dim, 0.0);
    for (const auto& w : words) {
        std::uint64_t h = fnv1a(w);
        std::size_t bin = static_cast<std::size_t>(h % dim);
        double sign = (h >> 63) ? 1.0 : -1.0;
        vec[bin] += sign;
    }
    double norm_sq = 0.0;
    for (double v : vec) norm_sq += v * v;
    if (norm_sq > 0.0) {
        double inv = 1.0 / std::sqrt(norm_sq);
        for (double& v : vec) v *= inv;
    }
    return vec;
}

double mock_entailment(const std::string& query, const std::string& memory) {
    std::set<std::string> q_words;
    for (auto& w : text::content_words(query)) q_words.insert(std::move(w));
    if (q_words.empty()) return 0.0;
    std::set<std::string> m_words;
    for (auto& w : text::content_words(memory)) m_words.insert(std::move(w));
    std::size_t shared = 0;
    for (const auto& w : q_words) shared += m_words.count(w);
    return static_cast<double>(shared) / static_cast<double>(q_words.size());
}

std::string mock_summarize(const std::vector<std::string>& contents) {
    std::string out = "CONSOLIDATED:";
    std::set<std::string> seen;
    bool first = true;
    for (const auto& raw : contents) {
        std::string item = text::trim(raw);
        if (item.empty() || !seen.insert(item).second) continue;
        out += first ? " " : "; ";
        out += item;
        first = false;
    }
    return out;
}

namespace {

const std::set<std::string> kInterrogatives = {"what", "who", "where", "when", "why", "how", "which"};
const std::set<std::string> kCopulas = {"is", "are", "was", "were", "do", "does", "did"};
const std::set<std::string> kArticles = {"the", "a", "an"};

std::string finish_clause(std::string clause, bool strip_scaffold) {
    clause = text::trim(clause);
    while (!clause.empty() && (clause.back() == '?' || clause.back() == '.' || clause.back() == ',')) {
        clause.pop_back();
        clause = text::trim(clause);
    }
    if (clause.empty()) return clause;
    if (strip_scaffold) {
        auto next_word = [&clause]() {
            std::size_t sp = clause.find(' ');
            std::string w = text::lowercase(sp == std::string::npos ? clause : clause.substr(0, sp));
            return std::pair{w, sp};
        };
        auto drop = [&clause](std::size_t sp) {
            clause = sp == std::string::npos ? std::string() : text::trim(clause.substr(sp + 1));
        };
        auto [w1, sp1] = next_word();
        if (kInterrogatives.count(w1) && sp1 != std::string::npos) {
            drop(sp1);
            auto [w2, sp2] = next_word();
            if (kCopulas.count(w2) && sp2 != std::string::npos) {
                drop(sp2);
                auto [w3, sp3] = next_word();
                if (kArticles.count(w3) && sp3 != std::string::npos) drop(sp3);
            }
        }
    }
    if (clause.empty()) return clause;
    clause[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(clause[0])));
    clause += '?';
    return clause;
}

}  // namespace

std::vector<std::string> mock_decompose(const std::string& query) {
    // Break on question-mark boundaries first, then on coordinating "and".
    std::vector<std::string> rough;
    std::string cur;
    for (char c : query) {
        cur.push_back(c);
        if (c == '?') {
            rough.push_back(cur);
            cur.clear();
        }
    }
    if (!text::trim(cur).empty()) rough.push_back(cur);

    std::vector<std::string> clauses;
    for (const auto& piece : rough) {
        std::string low = text::lowercase(piece);
        std::size_t start = 0;
        while (true) {
            std::size_t at = low.find(" and ", start);
            if (at == std::string::npos) {
                clauses.push_back(piece.substr(start));
                break;
            }
            clauses.push_back(piece.substr(start, at - start));
            start = at + 5;
            if (low.compare(start, 5, "then ") == 0) start += 5;
        }
    }

    std::vector<std::string> out;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        std::string done = finish_clause(clauses[i], /*strip_scaffold=*/i > 0);
        if (!done.empty()) out.push_back(std::move(done));
    }
    if (out.empty()) out.push_back(text::trim(query));
    return out;
}

const std::vector<std::string>& injection_markers() {
    static const std::vector<std::string> kMarkers = {
        "ignore previous instructions",
        "ignore all previous instructions",
        "disregard previous instructions",
        "forget your previous instructions",
        "system prompt:",
        "you are now in developer mode",
        "do anything now",
        "begin new instructions",
        "jailbreak",
    };
    return kMarkers;
}

namespace {

const std::vector<std::regex>& deny_patterns() {
    static const std::vector<std::regex> kPatterns = [] {
        std::vector<std::regex> out;
        auto icase = std::regex::icase | std::regex::ECMAScript;
        out.emplace_back(R"((ignore|disregard|forget)\s+(all\s+)?(your\s+)?previous\s+instructions)", icase);
        out.emplace_back(R"(system\s+prompt\s*:)", icase);
        out.emplace_back(R"(you\s+are\s+now\s+in\s+developer\s+mode)", icase);
        out.emplace_back(R"(do\s+anything\s+now)", icase);
        out.emplace_back(R"(begin\s+new\s+instructions)", icase);
        out.emplace_back(R"(jailbreak)", icase);
        return out;
    }();
    return kPatterns;
}

}  // namespace

bool mock_guard_allows(const std::string& content) {
    for (const auto& pat : deny_patterns()) {
        if (std::regex_search(content, pat)) return false;
    }
    return true;
}

namespace {

class MockEmbedder final : public Embedder {
public:
    explicit MockEmbedder(std::size_t dim) : dim_(dim) {}
    std::optional<std::vector<double>> embed(const std::string& t) override { return mock_embed(t, dim_); }
    std::size_t dimension() const override { return dim_; }

private:
    std::size_t dim_;
};

class MockEntailer final : public Entailer {
public:
    std::optional<double> entailment(const std::string& q, const std::string& m) override {
        return mock_entailment(q, m);
    }
};

class MockSummarizer final : public Summarizer {
public:
    std::optional<std::string> summarize(const std::vector<std::string>& c) override {
        return mock_summarize(c);
    }
};

class MockDecomposer final : public Decomposer {
public:
    std::optional<std::vector<std::string>> decompose(const std::string& q) override {
        return mock_decompose(q);
    }
};

class MockGuard final : public Guard {
public:
    std::optional<bool> allows(const std::string& c) override { return mock_guard_allows(c); }
};

}  // namespace

AdapterSuite make_mock_suite(std::size_t embedding_dim) {
    AdapterSuite suite;
    suite.embedder = std::make_shared<MockEmbedder>(embedding_dim);
    suite.entailer = std::make_shared<MockEntailer>();
    suite.summarizer = std::make_shared<MockSummarizer>();
    suite.decomposer = std::make_shared<MockDecomposer>();
    suite.guard = std::make_shared<MockGuard>();
    return suite;
}

// --- remote clients -------------------------------------------------------

RemoteAdapterClient::RemoteAdapterClient(RemoteOptions opts) : opts_(std::move(opts)) {}

std::optional<std::string> RemoteAdapterClient::call_raw(const std::string& role,
                                                         const std::vector<std::string>& inputs,
                                                         const std::string& params_json) {
    nlohmann::json body;
    body["schema"] = "v1";
    body["role"] = role;
    body["inputs"] = inputs;
    body["params"] = params_json.empty() ? nlohmann::json::object()
                                         : nlohmann::json::parse(params_json, nullptr, false);
    std::string payload = body.dump();

    int attempts = opts_.retries + 1;
    int backoff = opts_.backoff_ms;
    for (int i = 0; i < attempts; ++i) {
        if (i > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
            backoff *= 2;
        }
        httplib::Client client(opts_.endpoint);
        client.set_connection_timeout(0, opts_.timeout_ms * 1000);
        client.set_read_timeout(opts_.timeout_ms / 1000, (opts_.timeout_ms % 1000) * 1000);
        auto res = client.Post("/v1/adapter", payload, "application/json");
        if (res && res->status == 200) return res->body;
    }
    warn("adapter '" + role + "' unavailable after " + std::to_string(attempts) + " attempts");
    return std::nullopt;
}

namespace {

std::optional<nlohmann::json> parse_outputs(const std::string& body, const char* role) {
    auto doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.contains("outputs") || !doc["outputs"].is_array()) {
        warn(std::string("adapter '") + role + "' returned a malformed response");
        return std::nullopt;
    }
    return doc["outputs"];
}

class RemoteEmbedder final : public Embedder {
public:
    RemoteEmbedder(std::shared_ptr<RemoteAdapterClient> c, std::size_t dim)
        : client_(std::move(c)), dim_(dim) {}

    std::optional<std::vector<double>> embed(const std::string& t) override {
        if (text::trim(t).empty()) throw Error(Errc::EmptyText, "no embeddable tokens");
        auto body = client_->call_raw("embedder", {t}, "");
        if (!body) return std::nullopt;
        auto outputs = parse_outputs(*body, "embedder");
        if (!outputs || outputs->empty() || !(*outputs)[0].is_array()) return std::nullopt;
        std::vector<double> vec = (*outputs)[0].get<std::vector<double>>();
        if (vec.size() != dim_) {
            warn("embedder returned wrong dimension");
            return std::nullopt;
        }
        return vec;
    }
    std::size_t dimension() const override { return dim_; }

private:
    std::shared_ptr<RemoteAdapterClient> client_;
    std::size_t dim_;
};

class RemoteEntailer final : public Entailer {
public:
    explicit RemoteEntailer(std::shared_ptr<RemoteAdapterClient> c) : client_(std::move(c)) {}
    std::optional<double> entailment(const std::string& q, const std::string& m) override {
        auto body = client_->call_raw("entailer", {q, m}, "");
        if (!body) return std::nullopt;
        auto outputs = parse_outputs(*body, "entailer");
        if (!outputs || outputs->empty() || !(*outputs)[0].is_number()) return std::nullopt;
        return (*outputs)[0].get<double>();
    }

private:
    std::shared_ptr<RemoteAdapterClient> client_;
};

class RemoteSummarizer final : public Summarizer {
public:
    explicit RemoteSummarizer(std::shared_ptr<RemoteAdapterClient> c) : client_(std::move(c)) {}
    std::optional<std::string> summarize(const std::vector<std::string>& contents) override {
        auto body = client_->call_raw("summarizer", contents, "");
        if (!body) return std::nullopt;
        auto outputs = parse_outputs(*body, "summarizer");
        if (!outputs || outputs->empty() || !(*outputs)[0].is_string()) return std::nullopt;
        return (*outputs)[0].get<std::string>();
    }

private:
    std::shared_ptr<RemoteAdapterClient> client_;
};

class RemoteDecomposer final : public Decomposer {
public:
    explicit RemoteDecomposer(std::shared_ptr<RemoteAdapterClient> c) : client_(std::move(c)) {}
    std::optional<std::vector<std::string>> decompose(const std::string& q) override {
        auto body = client_->call_raw("decomposer", {q}, "");
        if (!body) return std::nullopt;
        auto outputs = parse_outputs(*body, "decomposer");
        if (!outputs) return std::nullopt;
        std::vector<std::string> subs;
        for (const auto& item : *outputs) {
            if (!item.is_string()) return std::nullopt;
            subs.push_back(item.get<std::string>());
        }
        if (subs.empty()) return std::nullopt;
        return subs;
    }

private:
    std::shared_ptr<RemoteAdapterClient> client_;
};

class RemoteGuard final : public Guard {
public:
    explicit RemoteGuard(std::shared_ptr<RemoteAdapterClient> c) : client_(std::move(c)) {}
    std::optional<bool> allows(const std::string& content) override {
        auto body = client_->call_raw("guard", {content}, "");
        if (!body) return std::nullopt;
        auto outputs = parse_outputs(*body, "guard");
        if (!outputs || outputs->empty() || !(*outputs)[0].is_boolean()) return std::nullopt;
        return (*outputs)[0].get<bool>();
    }

private:
    std::shared_ptr<RemoteAdapterClient> client_;
};

}  // namespace

AdapterSuite make_remote_suite(const RemoteOptions& opts, std::size_t embedding_dim) {
    auto client = std::make_shared<RemoteAdapterClient>(opts);
    AdapterSuite suite;
    suite.embedder = std::make_shared<RemoteEmbedder>(client, embedding_dim);
    suite.entailer = std::make_shared<RemoteEntailer>(client);
    suite.summarizer = std::make_shared<RemoteSummarizer>(client);
    suite.decomposer = std::make_shared<RemoteDecomposer>(client);
    suite.guard = std::make_shared<RemoteGuard>(client);
    return suite;
}

}  // namespace memgov::adapters
