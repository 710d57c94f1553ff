#include "memgov/maintenance.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "memgov/entropy.hpp"
#include "memgov/error.hpp"
#include "memgov/fsrs.hpp"

namespace memgov::lifecycle {

RetentionAction classify_retention(double retrievability, double delete_below,
                                   double consolidate_upto) {
    if (retrievability < delete_below) return RetentionAction::Delete;
    if (retrievability <= consolidate_upto) return RetentionAction::Consolidate;
    return RetentionAction::Keep;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

// Tombstones that still anchor a live record's provenance chain must survive
// physical removal or later cascades through them would dead-end.
std::set<MemoryId> provenance_anchors(const MemoryStore& store) {
    std::set<MemoryId> anchors;
    std::vector<MemoryId> frontier;
    for (const auto& [id, rec] : store.records()) {
        if (rec.live()) frontier.push_back(id);
    }
    while (!frontier.empty()) {
        MemoryId id = frontier.back();
        frontier.pop_back();
        const MemoryRecord* rec = store.peek(id);
        if (!rec) continue;
        for (MemoryId parent : rec->derived_from) {
            if (anchors.insert(parent).second) frontier.push_back(parent);
        }
    }
    return anchors;
}

}  // namespace

MaintenanceReport run_maintenance(MemoryStore& store, double now_s,
                                  adapters::Summarizer& summarizer,
                                  const GovernanceConfig& cfg) {
    MaintenanceReport report;

    std::vector<const MemoryRecord*> episodic;
    std::vector<std::string> contents;
    for (const auto& [id, rec] : store.records()) {
        if (rec.live() && rec.kind == MemoryKind::Episodic) {
            episodic.push_back(&rec);
            contents.push_back(rec.content);
        }
    }
    if (episodic.empty()) {
        return report;  // nothing to probe, nothing to do
    }

    EntropyProbe probe = entropy_ratio(contents, cfg.entropy_threshold);
    report.entropy_ratio_observed = probe.ratio;
    report.triggered = probe.triggered;
    if (!probe.triggered) {
        return report;
    }

    // Stage 1: classify. No mutation yet.
    std::vector<MemoryId> to_delete;
    std::vector<const MemoryRecord*> band;
    for (const MemoryRecord* rec : episodic) {
        double elapsed_days = (now_s - rec->fsrs.last_review_s) / 86400.0;
        if (elapsed_days < 0.0) elapsed_days = 0.0;
        double r = fsrs::retrievability(rec->fsrs.stability_days, elapsed_days, cfg.fsrs_factor);
        switch (classify_retention(r, cfg.delete_below, cfg.consolidate_upto)) {
            case RetentionAction::Delete: to_delete.push_back(rec->id); break;
            case RetentionAction::Consolidate: band.push_back(rec); break;
            case RetentionAction::Keep: ++report.kept; break;
        }
    }

    // Stage 2: greedy grouping of the consolidation band by cosine against
    // each group's seed, in id order. Singletons are summarized alone.
    struct Staged {
        std::vector<MemoryId> sources;
        const MemoryRecord* seed;
        std::vector<std::string> texts;
        std::string summary;
        std::vector<double> embedding;
        double max_stability = 0.0;
    };
    std::vector<Staged> groups;
    for (const MemoryRecord* rec : band) {
        Staged* home = nullptr;
        for (Staged& g : groups) {
            if (dot(g.seed->embedding, rec->embedding) >= cfg.consolidation_cosine) {
                home = &g;
                break;
            }
        }
        if (!home) {
            groups.push_back({});
            home = &groups.back();
            home->seed = rec;
        }
        home->sources.push_back(rec->id);
        home->texts.push_back(rec->content);
        home->max_stability = std::max(home->max_stability, rec->fsrs.stability_days);
    }

    // Stage 3: adapter calls. Failure here aborts with the store untouched.
    for (Staged& g : groups) {
        auto summary = summarizer.summarize(g.texts);
        if (!summary) {
            throw Error(Errc::AdapterUnavailable, "summarizer unavailable; maintenance aborted");
        }
        g.summary = std::move(*summary);
        auto embedding = store.embedder().embed(g.summary);
        if (!embedding) {
            throw Error(Errc::AdapterUnavailable, "embedder unavailable; maintenance aborted");
        }
        g.embedding = std::move(*embedding);
    }

    // Stage 4: commit. In-memory map operations only.
    std::set<MemoryId> anchors = provenance_anchors(store);
    std::vector<MemoryId> stale;
    for (const auto& [id, rec] : store.records()) {
        if (rec.deleted && !anchors.count(id)) stale.push_back(id);
    }

    for (const Staged& g : groups) {
        MemoryRecord rec;
        rec.content = g.summary;
        rec.kind = MemoryKind::Semantic;
        rec.created_at_s = now_s;
        // Consolidated facts inherit the strongest source trace.
        rec.fsrs.stability_days = g.max_stability;
        rec.fsrs.difficulty = cfg.fsrs_d0;
        rec.fsrs.last_review_s = now_s;
        rec.utility.trust = cfg.utility_u0;
        rec.utility.covariance = cfg.utility_p0;
        rec.embedding = g.embedding;
        rec.source = {SourceKind::Agent, "consolidation"};
        rec.derived_from = g.sources;
        MemoryId new_id = store.insert_record(std::move(rec));
        report.consolidated.push_back({g.sources, new_id});
        for (MemoryId src : g.sources) store.tombstone(src);
    }

    for (MemoryId id : to_delete) {
        store.tombstone(id);
        if (!anchors.count(id)) {
            store.remove_physical(id);
            store.cooccurrence().erase(id);
        }
    }
    report.deleted = to_delete;

    for (MemoryId id : stale) {
        store.remove_physical(id);
        store.cooccurrence().erase(id);
    }
    report.purged_tombstones = stale;

    return report;
}

std::string audit_text(const MaintenanceReport& report) {
    std::ostringstream out;
    out << "TRIGGERED " << (report.triggered ? "yes" : "no")
        << " ratio=" << report.entropy_ratio_observed << "\n";
    for (MemoryId id : report.deleted) {
        out << "DELETE " << id << "\n";
    }
    for (const auto& group : report.consolidated) {
        for (MemoryId src : group.sources) {
            out << "CONSOLIDATE " << src << " -> " << group.new_id << "\n";
        }
    }
    for (MemoryId id : report.purged_tombstones) {
        out << "PURGE " << id << "\n";
    }
    out << "KEPT " << report.kept << "\n";
    return out.str();
}

}  // namespace memgov::lifecycle
