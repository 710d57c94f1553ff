#include "memgov/wire.hpp"

namespace memgov::wire {

ordered_json record_to_json(const MemoryRecord& rec, bool include_embedding) {
    ordered_json j;
    j["id"] = rec.id;
    j["content"] = rec.content;
    j["kind"] = to_string(rec.kind);
    j["created_at_s"] = rec.created_at_s;
    j["stability_days"] = rec.fsrs.stability_days;
    j["difficulty"] = rec.fsrs.difficulty;
    j["last_review_s"] = rec.fsrs.last_review_s;
    j["trust"] = rec.utility.trust;
    j["covariance"] = rec.utility.covariance;
    j["source"] = to_string(rec.source.kind);
    j["source_label"] = rec.source.label;
    j["derived_from"] = rec.derived_from;
    j["deleted"] = rec.deleted;
    if (rec.superseded_by) j["superseded_by"] = *rec.superseded_by;
    if (include_embedding) j["embedding"] = rec.embedding;
    return j;
}

ordered_json bundle_to_json(const auction::ContextBundle& bundle, const MemoryStore& store) {
    ordered_json j;
    j["schema"] = "v1";
    j["intent"] = auction::to_string(bundle.intent);
    j["sub_queries"] = bundle.sub_queries;
    j["admitted"] = ordered_json::array();
    for (const auto& entry : bundle.admitted) {
        ordered_json e;
        e["id"] = entry.id;
        e["score"] = entry.score;
        e["via"] = entry.via == auction::AdmittedVia::Auction ? "Auction" : "Hebbian";
        e["content"] = store.get_memory(entry.id).content;
        j["admitted"].push_back(std::move(e));
    }
    j["budget"]["total_window"] = bundle.budget.total_window;
    j["budget"]["generation_reserve"] = bundle.budget.generation_reserve;
    j["budget"]["context_allowance"] = bundle.budget.context_allowance;
    j["budget"]["mode"] = bundle.budget.mode == auction::BudgetMode::Reasoning ? "Reasoning" : "Recall";
    j["budget"]["avg_top5"] = bundle.budget.avg_top5;
    j["gate_drops"] = bundle.gate_drops;
    j["hebbian_pulls"] = bundle.hebbian_pulls;
    return j;
}

ordered_json reflect_to_json(const reflect::ReflectReport& report) {
    ordered_json j;
    j["schema"] = "v1";
    j["used"] = report.used;
    j["unused"] = report.unused;
    j["updates"] = ordered_json::array();
    for (const auto& u : report.updates) {
        ordered_json e;
        e["id"] = u.id;
        e["used"] = u.used;
        e["overlap"] = u.overlap;
        e["trust_before"] = u.trust_before;
        e["trust_after"] = u.trust_after;
        e["gain"] = u.gain;
        e["stability_before"] = u.stability_before;
        e["stability_after"] = u.stability_after;
        j["updates"].push_back(std::move(e));
    }
    return j;
}

ordered_json maintenance_to_json(const lifecycle::MaintenanceReport& report) {
    ordered_json j;
    j["schema"] = "v1";
    j["triggered"] = report.triggered;
    j["entropy_ratio"] = report.entropy_ratio_observed;
    j["deleted"] = report.deleted;
    j["consolidated"] = ordered_json::array();
    for (const auto& group : report.consolidated) {
        ordered_json e;
        e["sources"] = group.sources;
        e["new_id"] = group.new_id;
        j["consolidated"].push_back(std::move(e));
    }
    j["kept"] = report.kept;
    j["purged_tombstones"] = report.purged_tombstones;
    return j;
}

}  // namespace memgov::wire
