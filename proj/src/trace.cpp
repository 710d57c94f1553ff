#include "memgov/trace.hpp"

#include <fstream>
#include <map>

#include <json.hpp>

#include "memgov/engine.hpp"
#include "memgov/error.hpp"
#include "memgov/text.hpp"

namespace memgov::trace {

namespace {

// Splits "KEY=VALUE KEY=\"quoted value\" ..." respecting \" and \\ escapes.
std::map<std::string, std::string> parse_fields(const std::string& rest, std::size_t line_no) {
    std::map<std::string, std::string> out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) ++i;
    };
    skip_ws();
    while (i < rest.size()) {
        std::size_t eq = rest.find('=', i);
        if (eq == std::string::npos) {
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected key=value",
                        line_no);
        }
        std::string key = rest.substr(i, eq - i);
        i = eq + 1;
        std::string value;
        if (i < rest.size() && rest[i] == '"') {
            ++i;
            bool closed = false;
            while (i < rest.size()) {
                char c = rest[i++];
                if (c == '\\' && i < rest.size()) {
                    char esc = rest[i++];
                    if (esc == 'n') value.push_back('\n');
                    else value.push_back(esc);  // \" and \\ and anything else literal
                } else if (c == '"') {
                    closed = true;
                    break;
                } else {
                    value.push_back(c);
                }
            }
            if (!closed) {
                throw Error(Errc::ParseError,
                            "line " + std::to_string(line_no) + ": unterminated string", line_no);
            }
        } else {
            while (i < rest.size() && rest[i] != ' ' && rest[i] != '\t') value.push_back(rest[i++]);
        }
        if (out.count(key)) {
            throw Error(Errc::ParseError,
                        "line " + std::to_string(line_no) + ": duplicate field " + key, line_no);
        }
        out.emplace(std::move(key), std::move(value));
        skip_ws();
    }
    return out;
}

double parse_days(const std::string& value, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": bad number '" + value + "'",
                    line_no);
    }
}

std::vector<std::string> split_pipe(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t at = s.find('|', start);
        if (at == std::string::npos) {
            if (start < s.size()) out.push_back(s.substr(start));
            break;
        }
        if (at > start) out.push_back(s.substr(start, at - start));
        start = at + 1;
    }
    return out;
}

}  // namespace

std::vector<TraceEvent> parse_trace(std::istream& in) {
    std::vector<TraceEvent> events;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    double last_at = 0.0;

    while (std::getline(in, line)) {
        ++line_no;
        std::string t = text::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!saw_header) {
            if (t != "TRACE v1") {
                throw Error(Errc::ParseError,
                            "line " + std::to_string(line_no) + ": expected 'TRACE v1' header",
                            line_no);
            }
            saw_header = true;
            continue;
        }

        std::size_t sp = t.find(' ');
        std::string verb = sp == std::string::npos ? t : t.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : t.substr(sp + 1);
        auto fields = parse_fields(rest, line_no);

        auto take = [&](const char* key) -> std::optional<std::string> {
            auto it = fields.find(key);
            if (it == fields.end()) return std::nullopt;
            std::string v = it->second;
            fields.erase(it);
            return v;
        };
        auto require = [&](const char* key) {
            auto v = take(key);
            if (!v) {
                throw Error(Errc::ParseError,
                            "line " + std::to_string(line_no) + ": missing field " + key, line_no);
            }
            return *v;
        };

        TraceEvent ev;
        ev.line = line_no;
        if (auto at = take("at")) {
            ev.at_days = parse_days(*at, line_no);
            if (*ev.at_days < last_at) {
                throw Error(Errc::NonMonotoneClock,
                            "line " + std::to_string(line_no) + ": timestamp moves backwards",
                            line_no);
            }
            last_at = *ev.at_days;
        }

        if (verb == "INGEST") {
            ev.kind = TraceEvent::Kind::Ingest;
            ev.content = require("content");
            if (auto src = take("source")) {
                auto parsed = parse_source_kind(*src);
                if (!parsed) {
                    throw Error(Errc::ParseError,
                                "line " + std::to_string(line_no) + ": bad source " + *src, line_no);
                }
                ev.source.kind = *parsed;
            }
            if (auto kind = take("kind")) {
                auto parsed = parse_memory_kind(*kind);
                if (!parsed) {
                    throw Error(Errc::ParseError,
                                "line " + std::to_string(line_no) + ": bad kind " + *kind, line_no);
                }
                ev.memory_kind = *parsed;
            }
        } else if (verb == "QUERY") {
            ev.kind = TraceEvent::Kind::Query;
            ev.text = require("text");
            if (auto expect = take("expect")) ev.expect_contains = split_pipe(*expect);
        } else if (verb == "FEEDBACK") {
            ev.kind = TraceEvent::Kind::Feedback;
            ev.answer = require("answer");
        } else if (verb == "ADVANCE") {
            ev.kind = TraceEvent::Kind::Advance;
            ev.days = parse_days(require("days"), line_no);
            if (ev.days < 0.0) {
                throw Error(Errc::NonMonotoneClock,
                            "line " + std::to_string(line_no) + ": negative advance", line_no);
            }
        } else if (verb == "MAINTAIN") {
            ev.kind = TraceEvent::Kind::Maintain;
        } else if (verb == "FORGET") {
            ev.kind = TraceEvent::Kind::Forget;
            ev.ref = require("ref");
        } else {
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": unknown verb " + verb,
                        line_no);
        }

        if (!fields.empty()) {
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": unexpected field " +
                                              fields.begin()->first,
                        line_no);
        }
        events.push_back(std::move(ev));
    }
    if (!saw_header) {
        throw Error(Errc::ParseError, "missing 'TRACE v1' header", 1);
    }
    return events;
}

std::vector<TraceEvent> parse_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::IoFailure, "cannot open trace " + path.string());
    }
    return parse_trace(in);
}

std::string SimulationReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "memgov-report-v1";
    j["queries_total"] = queries_total;
    j["queries_with_expectations"] = queries_with_expectations;
    j["queries_satisfied"] = queries_satisfied;
    j["memories_ingested"] = memories_ingested;
    j["guard_rejects"] = guard_rejects;
    j["memories_pruned"] = memories_pruned;
    j["memories_consolidated"] = memories_consolidated;
    j["memories_forgotten"] = memories_forgotten;
    j["counters"]["gate_drops"] = gate_drops;
    j["counters"]["hebbian_pulls"] = hebbian_pulls;
    j["counters"]["budget_reasoning"] = budget_reasoning;
    j["counters"]["budget_recall"] = budget_recall;
    j["counters"]["maintenance_runs"] = maintenance_runs;
    j["counters"]["maintenance_triggered"] = maintenance_triggered;
    j["final_store_size"] = final_store_size;
    j["final_clock_days"] = final_clock_days;
    return j.dump(2) + "\n";
}

SimulationReport run_simulation(const std::filesystem::path& trace_path,
                                const GovernanceConfig& cfg) {
    std::vector<TraceEvent> events = parse_trace_file(trace_path);
    Engine engine(cfg);
    SimulationReport report;
    std::vector<MemoryId> ingest_ids;  // @k references, 1-based

    auto resolve_ref = [&](const std::string& ref, std::size_t line_no) -> MemoryId {
        if (!ref.empty() && ref[0] == '@') {
            std::size_t k = 0;
            try {
                k = std::stoul(ref.substr(1));
            } catch (const std::exception&) {
                k = 0;
            }
            if (k == 0 || k > ingest_ids.size()) {
                throw Error(Errc::ParseError,
                            "line " + std::to_string(line_no) + ": bad ingest reference " + ref,
                            line_no);
            }
            return ingest_ids[k - 1];
        }
        try {
            return static_cast<MemoryId>(std::stoull(ref));
        } catch (const std::exception&) {
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": bad id " + ref,
                        line_no);
        }
    };

    for (const TraceEvent& ev : events) {
        if (ev.at_days) engine.set_clock_days(*ev.at_days);
        switch (ev.kind) {
            case TraceEvent::Kind::Ingest: {
                auto result = engine.ingest(ev.content, ev.source, ev.memory_kind);
                if (result.admitted) {
                    ++report.memories_ingested;
                    ingest_ids.push_back(result.id);
                } else {
                    ++report.guard_rejects;
                    ingest_ids.push_back(0);  // keep @k numbering aligned
                }
                break;
            }
            case TraceEvent::Kind::Query: {
                auto bundle = engine.query(ev.text);
                ++report.queries_total;
                report.gate_drops += bundle.gate_drops;
                report.hebbian_pulls += bundle.hebbian_pulls;
                if (bundle.budget.mode == auction::BudgetMode::Reasoning) ++report.budget_reasoning;
                else ++report.budget_recall;
                if (!ev.expect_contains.empty()) {
                    ++report.queries_with_expectations;
                    bool all_found = true;
                    for (const std::string& expected : ev.expect_contains) {
                        bool found = false;
                        for (const auto& entry : bundle.admitted) {
                            if (engine.store().get_memory(entry.id).content.find(expected) !=
                                std::string::npos) {
                                found = true;
                                break;
                            }
                        }
                        if (!found) {
                            all_found = false;
                            break;
                        }
                    }
                    if (all_found) ++report.queries_satisfied;
                }
                break;
            }
            case TraceEvent::Kind::Feedback:
                engine.feedback(ev.answer);
                break;
            case TraceEvent::Kind::Advance:
                engine.advance_days(ev.days);
                break;
            case TraceEvent::Kind::Maintain: {
                auto m = engine.maintain();
                ++report.maintenance_runs;
                if (m.triggered) ++report.maintenance_triggered;
                report.memories_pruned += m.deleted.size();
                for (const auto& group : m.consolidated) {
                    report.memories_consolidated += group.sources.size();
                }
                break;
            }
            case TraceEvent::Kind::Forget: {
                MemoryId root = resolve_ref(ev.ref, ev.line);
                report.memories_forgotten += engine.forget(root).size();
                break;
            }
        }
    }

    report.final_store_size = engine.store().live_count();
    report.final_clock_days = engine.now_days();
    return report;
}

}  // namespace memgov::trace
