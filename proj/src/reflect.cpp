#include "memgov/reflect.hpp"

#include "memgov/error.hpp"
#include "memgov/fsrs.hpp"
#include "memgov/kalman.hpp"
#include "memgov/usage.hpp"

namespace memgov::reflect {

ReflectReport run_reflect(MemoryStore& store, const std::string& answer,
                          const std::vector<MemoryId>& retrieved, double now_s,
                          const GovernanceConfig& cfg) {
    // Validate the whole batch first so a bad id cannot leave a half-applied
    // report behind.
    for (MemoryId id : retrieved) {
        (void)store.get_memory(id);
    }

    ReflectReport report;
    for (MemoryId id : retrieved) {
        MemoryRecord& rec = store.record_mut(id);
        auto usage = usage::detect_usage(answer, rec.content, cfg.usage_threshold);

        MemoryUpdate update;
        update.id = id;
        update.used = usage.used;
        update.overlap = usage.overlap;
        update.trust_before = rec.utility.trust;
        update.stability_before = rec.fsrs.stability_days;

        double z = usage.used ? 1.0 : 0.0;
        auto step = kalman::step(rec.utility, z, cfg.kalman_q, cfg.kalman_r);
        rec.utility = step.state;
        update.gain = step.gain;
        update.trust_after = rec.utility.trust;

        if (usage.used) {
            double elapsed_days = (now_s - rec.fsrs.last_review_s) / 86400.0;
            if (elapsed_days < 0.0) elapsed_days = 0.0;
            double r = fsrs::retrievability(rec.fsrs.stability_days, elapsed_days, cfg.fsrs_factor);
            rec.fsrs.stability_days =
                fsrs::update_stability(rec.fsrs.stability_days, rec.fsrs.difficulty, r,
                                       cfg.fsrs_w8, cfg.fsrs_difficulty_exponent);
            rec.fsrs.last_review_s = now_s;
            report.used.push_back(id);
        } else {
            report.unused.push_back(id);
        }
        update.stability_after = rec.fsrs.stability_days;
        report.updates.push_back(update);
    }
    return report;
}

}  // namespace memgov::reflect
