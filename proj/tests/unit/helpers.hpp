#pragma once

// Shared fixtures and independent oracles for the unit suites. Oracles here
// must not call the implementation path they check.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "memgov/config.hpp"
#include "memgov/engine.hpp"
#include "memgov/fsrs.hpp"
#include "memgov/store.hpp"

namespace testutil {

using namespace memgov;

inline GovernanceConfig small_config(long dim = 32) {
    GovernanceConfig cfg;
    cfg.embedding_dim = dim;
    return cfg;
}

inline MemoryStore make_store(const GovernanceConfig& cfg) {
    auto suite = adapters::make_mock_suite(static_cast<std::size_t>(cfg.embedding_dim));
    return MemoryStore(cfg.store_options(), suite.embedder);
}

inline std::vector<double> random_unit_vector(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(dim);
    double norm_sq = 0.0;
    for (double& x : v) {
        x = normal(rng);
        norm_sq += x * x;
    }
    double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) x *= inv;
    return v;
}

// Inserts a fully controlled record (bypasses the embedder).
inline MemoryId put_record(MemoryStore& store, std::vector<double> embedding,
                           const std::string& content, MemoryKind kind = MemoryKind::Episodic,
                           double now_s = 0.0, SourceKind source = SourceKind::User,
                           std::vector<MemoryId> parents = {}) {
    MemoryRecord rec;
    rec.content = content;
    rec.kind = kind;
    rec.created_at_s = now_s;
    rec.fsrs.last_review_s = now_s;
    rec.embedding = std::move(embedding);
    rec.source.kind = source;
    rec.derived_from = std::move(parents);
    return store.insert_record(std::move(rec));
}

// Independent exhaustive scan: full cosine (with explicit normalization) over
// every retrievable record, sorted by similarity then id.
struct OracleHit {
    MemoryId id;
    double similarity;
};

inline std::vector<OracleHit> exhaustive_cosine_scan(const MemoryStore& store,
                                                     const std::vector<double>& query,
                                                     std::size_t k) {
    std::vector<OracleHit> hits;
    for (const auto& [id, rec] : store.records()) {
        if (rec.deleted || rec.superseded_by.has_value()) continue;
        double dot = 0.0, na = 0.0, nq = 0.0;
        for (std::size_t i = 0; i < query.size(); ++i) {
            dot += rec.embedding[i] * query[i];
            na += rec.embedding[i] * rec.embedding[i];
            nq += query[i] * query[i];
        }
        double denom = std::sqrt(na) * std::sqrt(nq);
        hits.push_back({id, denom > 0.0 ? dot / denom : 0.0});
    }
    std::stable_sort(hits.begin(), hits.end(), [](const OracleHit& a, const OracleHit& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.id < b.id;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

// Sets last_review so the record's retrievability at `now_s` lands within eps
// of `target`, nudged to the requested side of the boundary.
enum class Side { AtOrAbove, AtOrBelow };

inline void engineer_retrievability(MemoryStore& store, MemoryId id, double target, double now_s,
                                    Side side, double factor = fsrs::kDecayFactor) {
    MemoryRecord& rec = store.record_mut(id);
    double elapsed_days = fsrs::elapsed_for_retrievability(rec.fsrs.stability_days, target, factor);
    double last_review = now_s - elapsed_days * 86400.0;
    auto r_of = [&](double lr) {
        return fsrs::retrievability(rec.fsrs.stability_days, (now_s - lr) / 86400.0, factor);
    };
    // Retrievability is increasing in last_review; nudge by ulps until we sit
    // on the requested side.
    for (int i = 0; i < 256; ++i) {
        double r = r_of(last_review);
        if (side == Side::AtOrAbove && r >= target) break;
        if (side == Side::AtOrBelow && r <= target) break;
        last_review = side == Side::AtOrAbove
                          ? std::nextafter(last_review, std::numeric_limits<double>::infinity())
                          : std::nextafter(last_review, -std::numeric_limits<double>::infinity());
    }
    rec.fsrs.last_review_s = last_review;
}

// Independent provenance closure: all records whose ancestry (transitive
// derived_from) includes `root`, plus root itself.
inline std::set<MemoryId> closure_oracle(const MemoryStore& store, MemoryId root) {
    std::set<MemoryId> out = {root};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [id, rec] : store.records()) {
            if (out.count(id)) continue;
            for (MemoryId parent : rec.derived_from) {
                if (out.count(parent)) {
                    out.insert(id);
                    grew = true;
                    break;
                }
            }
        }
    }
    return out;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("memgov-test-" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::filesystem::path file(const std::string& name) const { return path / name; }
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void spit(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
}

}  // namespace testutil
