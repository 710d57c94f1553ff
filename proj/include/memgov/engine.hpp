#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "memgov/auction.hpp"
#include "memgov/config.hpp"
#include "memgov/governance.hpp"
#include "memgov/maintenance.hpp"
#include "memgov/reflect.hpp"
#include "memgov/store.hpp"

namespace memgov {

// One governed memory engine: store + adapters + policy constants + virtual
// clock. The service, the CLI and the replay harness all operate through this
// type, so there is exactly one code path per operation.
//
// Locking follows the single-writer/multi-reader contract: reads
// (get, neighbors) take the shared slot, every mutating operation takes the
// exclusive slot. retrieve_context mutates the co-occurrence graph at
// pipeline end and therefore runs as a writer.
class Engine {
public:
    explicit Engine(GovernanceConfig cfg);
    Engine(GovernanceConfig cfg, adapters::AdapterSuite suite);

    struct IngestResult {
        bool admitted = false;
        std::string reason;
        MemoryId id = 0;
    };

    // Write path: guard first, then insert. A rejected write never mutates
    // the store.
    IngestResult ingest(const std::string& content, SourceTag source,
                        MemoryKind kind = MemoryKind::Episodic,
                        const std::vector<MemoryId>& derived_from = {});

    MemoryRecord get(MemoryId id) const;
    auction::ContextBundle query(const std::string& text,
                                 std::optional<auction::QueryIntent> intent_override = std::nullopt);

    // Reflect path. Without explicit ids, applies to the admitted set of the
    // most recent query (ids that died in between are skipped).
    reflect::ReflectReport feedback(const std::string& answer,
                                    std::optional<std::vector<MemoryId>> retrieved = std::nullopt);

    lifecycle::MaintenanceReport maintain();
    std::vector<MemoryId> forget(MemoryId root);
    governance::ConflictVerdict adjudicate(MemoryId newer, MemoryId older);

    // Virtual clock (seconds since epoch). Trace replay and the CLI drive it
    // explicitly; the service can sync it to the wall clock.
    double now_seconds() const;
    double now_days() const;
    void advance_days(double days);
    void set_clock_days(double days);  // NonMonotoneClock when moving backwards
    void sync_wall_clock();

    std::vector<MemoryId> last_retrieved() const;

    const GovernanceConfig& config() const { return cfg_; }
    const adapters::AdapterSuite& adapter_suite() const { return suite_; }
    const MemoryStore& store() const { return store_; }
    MemoryStore& store_mut() { return store_; }

    void save(const std::filesystem::path& path) const;
    static Engine load(const std::filesystem::path& path, GovernanceConfig cfg);
    static Engine load(const std::filesystem::path& path, GovernanceConfig cfg,
                       adapters::AdapterSuite suite);

private:
    GovernanceConfig cfg_;
    adapters::AdapterSuite suite_;
    MemoryStore store_;
    double clock_s_ = 0.0;
    std::vector<MemoryId> last_retrieved_;
    // Owned indirectly so the engine stays movable.
    mutable std::unique_ptr<std::shared_mutex> mutex_ = std::make_unique<std::shared_mutex>();
};

}  // namespace memgov
