#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "memgov/adapters.hpp"
#include "memgov/types.hpp"

namespace memgov {

struct StoreOptions {
    std::size_t embedding_dim = 512;
    double initial_stability_days = 1.0;   // S0
    double initial_difficulty = 5.0;       // D0
    double initial_trust = 0.5;            // U0
    double initial_covariance = 1.0;       // P0
};

struct Neighbor {
    MemoryId id = 0;
    double similarity = 0.0;
};

// The governed memory store: id-ordered records, the co-occurrence graph and
// line-delimited snapshot persistence. Retrieval is an exact brute-force
// cosine scan; there is no approximate index at desk scale.
//
// Concurrency contract: single writer / multi reader. The store itself is a
// plain value; callers (the engine) serialize mutations externally.
class MemoryStore {
public:
    MemoryStore(StoreOptions options, std::shared_ptr<adapters::Embedder> embedder);

    // Embeds and stores new content with configured initial FSRS/utility
    // state. Parents must exist and be live.
    MemoryId insert_memory(const std::string& content, MemoryKind kind, SourceTag source,
                           const std::vector<MemoryId>& derived_from, double now_s);

    // Inserts a fully formed record (consolidation output, snapshot load).
    MemoryId insert_record(MemoryRecord record);

    const MemoryRecord& get_memory(MemoryId id) const;  // NotFound / Tombstoned
    const MemoryRecord* peek(MemoryId id) const;        // nullptr if never issued
    MemoryRecord& record_mut(MemoryId id);              // NotFound if never issued

    // Top-k retrievable records by cosine similarity, descending; ties break
    // toward the smaller id. Tombstoned and superseded records never appear.
    std::vector<Neighbor> nearest_neighbors(std::span<const double> query, std::size_t k) const;

    void tombstone(MemoryId id);
    void remove_physical(MemoryId id);

    CoOccurrenceGraph& cooccurrence() { return graph_; }
    const CoOccurrenceGraph& cooccurrence() const { return graph_; }

    const std::map<MemoryId, MemoryRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    std::size_t live_count() const;
    bool was_issued(MemoryId id) const { return id > 0 && id < next_id_; }
    MemoryId next_id() const { return next_id_; }

    const StoreOptions& options() const { return options_; }
    adapters::Embedder& embedder() const { return *embedder_; }
    std::shared_ptr<adapters::Embedder> embedder_ptr() const { return embedder_; }

    // Serializes the full state (records including tombstones, co-occurrence
    // graph, config fingerprint) as one structured record per line. Output is
    // byte-deterministic for identical state. Returns records written.
    std::size_t save_snapshot(const std::filesystem::path& path, const std::string& fingerprint,
                              const std::string& extra_json = "") const;

    // Inverse of save_snapshot. The fingerprint must match the current
    // configuration. extra_json_out, when non-null, receives the extra
    // payload stored by save_snapshot (empty if none).
    static MemoryStore load_snapshot(const std::filesystem::path& path,
                                     const std::string& expected_fingerprint,
                                     StoreOptions options,
                                     std::shared_ptr<adapters::Embedder> embedder,
                                     std::string* extra_json_out = nullptr);

    bool same_state(const MemoryStore& other) const;

private:
    StoreOptions options_;
    std::shared_ptr<adapters::Embedder> embedder_;
    std::map<MemoryId, MemoryRecord> records_;
    CoOccurrenceGraph graph_;
    MemoryId next_id_ = 1;
};

}  // namespace memgov
