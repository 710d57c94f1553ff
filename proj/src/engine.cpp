#include "memgov/engine.hpp"

#include <chrono>
#include <mutex>

#include <json.hpp>

#include "memgov/error.hpp"

namespace memgov {

using ordered_json = nlohmann::ordered_json;

Engine::Engine(GovernanceConfig cfg) : Engine(cfg, cfg.make_adapters()) {}

Engine::Engine(GovernanceConfig cfg, adapters::AdapterSuite suite)
    : cfg_(std::move(cfg)), suite_(std::move(suite)), store_(cfg_.store_options(), suite_.embedder) {
    cfg_.validate();
}

Engine::IngestResult Engine::ingest(const std::string& content, SourceTag source,
                                    MemoryKind kind, const std::vector<MemoryId>& derived_from) {
    std::unique_lock lock(*mutex_);
    auto decision = governance::admit_write(content, *suite_.guard);
    if (!decision.admitted) {
        return {false, decision.reason, 0};
    }
    MemoryId id = store_.insert_memory(content, kind, std::move(source), derived_from, clock_s_);
    return {true, "", id};
}

MemoryRecord Engine::get(MemoryId id) const {
    std::shared_lock lock(*mutex_);
    return store_.get_memory(id);
}

auction::ContextBundle Engine::query(const std::string& text,
                                     std::optional<auction::QueryIntent> intent_override) {
    std::unique_lock lock(*mutex_);
    auto bundle = auction::retrieve_context(store_, text, clock_s_, suite_, cfg_, intent_override);
    last_retrieved_.clear();
    for (const auto& entry : bundle.admitted) last_retrieved_.push_back(entry.id);
    return bundle;
}

reflect::ReflectReport Engine::feedback(const std::string& answer,
                                        std::optional<std::vector<MemoryId>> retrieved) {
    std::unique_lock lock(*mutex_);
    std::vector<MemoryId> ids;
    if (retrieved) {
        ids = std::move(*retrieved);
    } else {
        // The implicit reflect loop tolerates ids that died since the query.
        for (MemoryId id : last_retrieved_) {
            const MemoryRecord* rec = store_.peek(id);
            if (rec && rec->live()) ids.push_back(id);
        }
    }
    return reflect::run_reflect(store_, answer, ids, clock_s_, cfg_);
}

lifecycle::MaintenanceReport Engine::maintain() {
    std::unique_lock lock(*mutex_);
    return lifecycle::run_maintenance(store_, clock_s_, *suite_.summarizer, cfg_);
}

std::vector<MemoryId> Engine::forget(MemoryId root) {
    std::unique_lock lock(*mutex_);
    return governance::forget_cascade(store_, root);
}

governance::ConflictVerdict Engine::adjudicate(MemoryId newer, MemoryId older) {
    std::unique_lock lock(*mutex_);
    return governance::resolve_conflict(store_, newer, older, clock_s_, cfg_);
}

double Engine::now_seconds() const {
    std::shared_lock lock(*mutex_);
    return clock_s_;
}

double Engine::now_days() const { return now_seconds() / 86400.0; }

void Engine::advance_days(double days) {
    if (days < 0.0) {
        throw Error(Errc::NonMonotoneClock, "cannot advance by a negative interval");
    }
    std::unique_lock lock(*mutex_);
    clock_s_ += days * 86400.0;
}

void Engine::set_clock_days(double days) {
    std::unique_lock lock(*mutex_);
    double target = days * 86400.0;
    if (target < clock_s_) {
        throw Error(Errc::NonMonotoneClock, "clock would move backwards");
    }
    clock_s_ = target;
}

void Engine::sync_wall_clock() {
    std::unique_lock lock(*mutex_);
    double wall = std::chrono::duration<double>(
                      std::chrono::system_clock::now().time_since_epoch())
                      .count();
    if (wall > clock_s_) clock_s_ = wall;
}

std::vector<MemoryId> Engine::last_retrieved() const {
    std::shared_lock lock(*mutex_);
    return last_retrieved_;
}

void Engine::save(const std::filesystem::path& path) const {
    std::shared_lock lock(*mutex_);
    ordered_json extra;
    extra["clock_s"] = clock_s_;
    extra["last_retrieved"] = last_retrieved_;
    store_.save_snapshot(path, cfg_.fingerprint(), extra.dump());
}

Engine Engine::load(const std::filesystem::path& path, GovernanceConfig cfg) {
    auto suite = cfg.make_adapters();
    return load(path, std::move(cfg), std::move(suite));
}

Engine Engine::load(const std::filesystem::path& path, GovernanceConfig cfg,
                    adapters::AdapterSuite suite) {
    Engine engine(std::move(cfg), std::move(suite));
    std::string extra;
    engine.store_ = MemoryStore::load_snapshot(path, engine.cfg_.fingerprint(),
                                               engine.cfg_.store_options(),
                                               engine.suite_.embedder, &extra);
    if (!extra.empty()) {
        auto doc = ordered_json::parse(extra, nullptr, false);
        if (!doc.is_discarded()) {
            engine.clock_s_ = doc.value("clock_s", 0.0);
            if (doc.contains("last_retrieved") && doc["last_retrieved"].is_array()) {
                engine.last_retrieved_ = doc["last_retrieved"].get<std::vector<MemoryId>>();
            }
        }
    }
    return engine;
}

}  // namespace memgov
