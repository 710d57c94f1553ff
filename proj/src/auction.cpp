#include "memgov/auction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "memgov/error.hpp"
#include "memgov/fsrs.hpp"
#include "memgov/log.hpp"
#include "memgov/text.hpp"

namespace memgov::auction {

double auction_score(double sim, double retrievability, double trust, ScoringParams params) {
    if (std::isnan(sim) || !(sim >= -1.0 && sim <= 1.0)) {
        throw Error(Errc::DomainError, "similarity outside [-1,1]");
    }
    if (!(retrievability > 0.0 && retrievability <= 1.0)) {
        throw Error(Errc::DomainError, "retrievability outside (0,1]");
    }
    if (!(trust >= 0.0 && trust <= 1.0)) {
        throw Error(Errc::DomainError, "trust outside [0,1]");
    }
    if (!(params.lambda >= 0.0) || !(params.beta >= 0.0)) {
        throw Error(Errc::DomainError, "scoring parameters must be non-negative");
    }
    double clamped = sim > 0.0 ? sim : 0.0;
    double decay = params.lambda == 0.0 ? 1.0 : std::pow(retrievability, params.lambda);
    return clamped * decay * (1.0 + params.beta * trust);
}

std::vector<Candidate> veto_gate(const std::string& query, std::vector<Candidate> candidates,
                                 const MemoryStore& store, adapters::Entailer& entailer,
                                 double threshold, std::size_t* dropped) {
    if (dropped) *dropped = 0;
    std::vector<Candidate> survivors;
    survivors.reserve(candidates.size());
    for (const Candidate& cand : candidates) {
        std::optional<double> entailment;
        try {
            entailment = entailer.entailment(query, store.get_memory(cand.id).content);
        } catch (const Error& e) {
            if (e.code() == Errc::NotFound || e.code() == Errc::Tombstoned) throw;
            entailment = std::nullopt;
        } catch (const std::exception&) {
            entailment = std::nullopt;
        }
        if (!entailment) {
            warn("entailment adapter unavailable; veto gate failing open");
            if (dropped) *dropped = 0;
            return candidates;
        }
        if (*entailment < threshold) {
            if (dropped) ++*dropped;
            continue;
        }
        survivors.push_back(cand);
    }
    return survivors;
}

std::vector<MemoryId> hebbian_expand(const CoOccurrenceGraph& graph,
                                     const std::vector<MemoryId>& selected,
                                     const MemoryStore& store, double threshold) {
    std::vector<MemoryId> out = selected;
    std::set<MemoryId> seen(selected.begin(), selected.end());
    // One hop only: iterate the original selection, not the appended tail.
    for (MemoryId a : selected) {
        for (MemoryId b : graph.strong_associates(a, threshold)) {
            if (seen.count(b)) continue;
            const MemoryRecord* rec = store.peek(b);
            if (!rec || !rec->retrievable()) continue;
            out.push_back(b);
            seen.insert(b);
        }
    }
    return out;
}

BudgetPlan allocate_budget(const std::vector<double>& scores_desc, long total_window,
                           const GovernanceConfig& cfg) {
    if (total_window <= cfg.budget_reasoning_reserve) {
        throw Error(Errc::WindowTooSmall,
                    "total window " + std::to_string(total_window) + " too small");
    }
    double sum = 0.0;
    std::size_t n = std::min<std::size_t>(5, scores_desc.size());
    for (std::size_t i = 0; i < n; ++i) sum += scores_desc[i];
    double avg = n == 0 ? 0.0 : sum / static_cast<double>(n);

    BudgetPlan plan;
    plan.total_window = total_window;
    plan.avg_top5 = avg;
    if (avg > cfg.budget_avg_gate) {
        plan.mode = BudgetMode::Reasoning;
        plan.generation_reserve = cfg.budget_reasoning_reserve;
    } else {
        plan.mode = BudgetMode::Recall;
        plan.generation_reserve = cfg.budget_recall_reserve;
    }
    plan.context_allowance = total_window - plan.generation_reserve;
    return plan;
}

ContextBundle retrieve_context(MemoryStore& store, const std::string& query, double now_s,
                               const adapters::AdapterSuite& adapters,
                               const GovernanceConfig& cfg,
                               std::optional<QueryIntent> intent_override) {
    if (text::trim(query).empty()) {
        throw Error(Errc::EmptyQuery, "query is empty");
    }

    ContextBundle bundle;
    bundle.intent = intent_override ? *intent_override : classify_intent(query);
    bundle.sub_queries = decompose_query(query, bundle.intent, *adapters.decomposer);
    ScoringParams params = params_for(bundle.intent, cfg);

    // Candidate generation: union over sub-queries, max similarity per memory.
    std::map<MemoryId, double> best_sim;
    for (const std::string& sub : bundle.sub_queries) {
        std::vector<double> qvec;
        try {
            auto maybe = adapters.embedder->embed(sub);
            if (!maybe) {
                warn("embedder unavailable for sub-query; skipping it");
                continue;
            }
            qvec = std::move(*maybe);
        } catch (const Error& e) {
            if (e.code() == Errc::EmptyText) continue;  // punctuation-only sub-query
            throw;
        }
        for (const Neighbor& nb :
             store.nearest_neighbors(qvec, static_cast<std::size_t>(cfg.auction_fanout))) {
            auto [it, inserted] = best_sim.try_emplace(nb.id, nb.similarity);
            if (!inserted && nb.similarity > it->second) it->second = nb.similarity;
        }
    }

    // Auction scoring at `now`.
    std::vector<Candidate> candidates;
    candidates.reserve(best_sim.size());
    for (const auto& [id, sim] : best_sim) {
        const MemoryRecord& rec = store.get_memory(id);
        double elapsed_days = (now_s - rec.fsrs.last_review_s) / 86400.0;
        if (elapsed_days < 0.0) elapsed_days = 0.0;
        double r = fsrs::retrievability(rec.fsrs.stability_days, elapsed_days, cfg.fsrs_factor);
        candidates.push_back({id, sim, auction_score(sim, r, rec.utility.trust, params)});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });

    candidates = veto_gate(query, std::move(candidates), store, *adapters.entailer,
                           cfg.gate_threshold, &bundle.gate_drops);

    // Budget over the post-gate scores.
    std::vector<double> scores;
    scores.reserve(candidates.size());
    for (const Candidate& c : candidates) scores.push_back(c.score);
    bundle.budget = allocate_budget(scores, cfg.budget_total_window, cfg);

    // Hebbian expansion, one hop, appended after the auction ranking.
    std::vector<MemoryId> ranked;
    ranked.reserve(candidates.size());
    for (const Candidate& c : candidates) ranked.push_back(c.id);
    std::vector<MemoryId> expanded =
        hebbian_expand(store.cooccurrence(), ranked, store, cfg.hebbian_threshold);

    std::vector<AdmittedEntry> ordered;
    ordered.reserve(expanded.size());
    for (std::size_t i = 0; i < expanded.size(); ++i) {
        AdmittedEntry entry;
        entry.id = expanded[i];
        if (i < ranked.size()) {
            entry.via = AdmittedVia::Auction;
            entry.score = candidates[i].score;
        } else {
            entry.via = AdmittedVia::Hebbian;
            // Associative pulls carry their own auction score for the audit
            // trail, computed against the primary query embedding when the
            // memory never surfaced as a vector candidate.
            const MemoryRecord& rec = store.get_memory(entry.id);
            double elapsed_days = (now_s - rec.fsrs.last_review_s) / 86400.0;
            if (elapsed_days < 0.0) elapsed_days = 0.0;
            double r = fsrs::retrievability(rec.fsrs.stability_days, elapsed_days, cfg.fsrs_factor);
            auto it = best_sim.find(entry.id);
            double sim = it == best_sim.end() ? 0.0 : it->second;
            entry.score = auction_score(sim, r, rec.utility.trust, params);
        }
        ordered.push_back(entry);
    }

    if (cfg.gate_filter_hebbian) {
        std::vector<AdmittedEntry> gated;
        for (const AdmittedEntry& entry : ordered) {
            if (entry.via == AdmittedVia::Auction) {
                gated.push_back(entry);
                continue;
            }
            auto entailment =
                adapters.entailer->entailment(query, store.get_memory(entry.id).content);
            if (!entailment) {
                warn("entailment adapter unavailable; veto gate failing open");
                gated.push_back(entry);
            } else if (*entailment >= cfg.gate_threshold) {
                gated.push_back(entry);
            } else {
                ++bundle.gate_drops;
            }
        }
        ordered = std::move(gated);
    }

    // Greedy admission until the token allowance is exhausted.
    long used_tokens = 0;
    for (const AdmittedEntry& entry : ordered) {
        long cost = static_cast<long>(
            text::estimate_tokens(store.get_memory(entry.id).content, cfg.budget_token_factor));
        if (used_tokens + cost > bundle.budget.context_allowance) break;
        used_tokens += cost;
        bundle.admitted.push_back(entry);
        if (entry.via == AdmittedVia::Hebbian) ++bundle.hebbian_pulls;
    }

    // Co-retrieval bookkeeping over the final admitted set.
    std::vector<MemoryId> admitted_ids;
    admitted_ids.reserve(bundle.admitted.size());
    for (const AdmittedEntry& entry : bundle.admitted) admitted_ids.push_back(entry.id);
    if (!admitted_ids.empty()) {
        store.cooccurrence().record_co_retrieval(admitted_ids);
    }
    return bundle;
}

}  // namespace memgov::auction
