// memgov — governed-memory engine CLI.
//
// Subcommands: ingest, query, feedback, gc, forget, simulate, serve,
// config check. Exit status: 0 success, 1 validation error, 2 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "memgov/engine.hpp"
#include "memgov/error.hpp"
#include "memgov/service.hpp"
#include "memgov/trace.hpp"
#include "memgov/wire.hpp"

namespace {

using memgov::Engine;
using memgov::Errc;
using memgov::Error;
using memgov::GovernanceConfig;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::EmptyContent:
        case Errc::EmptyQuery:
        case Errc::UnknownParent:
        case Errc::NotFound:
        case Errc::Tombstoned:
        case Errc::DimensionMismatch:
        case Errc::DomainError:
        case Errc::ParseError:
        case Errc::NonMonotoneClock:
        case Errc::SameRecord:
        case Errc::WindowTooSmall:
        case Errc::ConfigMismatch:
            return 1;
        default:
            return 2;
    }
}

struct CliOptions {
    std::string config_path;
    std::string store_path = "memgov.snapshot";
    std::string format = "text";
    std::optional<double> now_days;
};

GovernanceConfig load_cfg(const CliOptions& opts) {
    if (opts.config_path.empty()) {
        GovernanceConfig cfg;
        cfg.validate();
        return cfg;
    }
    return memgov::load_config(opts.config_path);
}

Engine open_engine(const CliOptions& opts, const GovernanceConfig& cfg) {
    Engine engine = std::filesystem::exists(opts.store_path)
                        ? Engine::load(opts.store_path, cfg)
                        : Engine(cfg);
    if (opts.now_days) engine.set_clock_days(*opts.now_days);
    return engine;
}

bool structured(const CliOptions& opts) { return opts.format == "structured"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoFailure, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<memgov::MemoryId> parse_id_list(const std::string& csv) {
    std::vector<memgov::MemoryId> ids;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        ids.push_back(static_cast<memgov::MemoryId>(std::stoull(item)));
    }
    return ids;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memgov — governed agent-memory engine"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    CliOptions opts;
    app.add_option("--config", opts.config_path, "config file (flat key-value)");
    app.add_option("--store", opts.store_path, "snapshot path")->capture_default_str();
    app.add_option("--format", opts.format, "output format: text|structured")
        ->check(CLI::IsMember({"text", "structured"}));
    double now_days_flag = -1.0;
    auto* now_opt = app.add_option("--now", now_days_flag, "virtual clock, days since epoch");

    // ingest
    std::string ingest_file;
    std::string ingest_source = "User";
    std::string ingest_kind = "Episodic";
    auto* cmd_ingest = app.add_subcommand("ingest", "ingest one memory per line from a file");
    cmd_ingest->add_option("file", ingest_file, "input file")->required();
    cmd_ingest->add_option("--source", ingest_source, "User|Agent|External");
    cmd_ingest->add_option("--kind", ingest_kind, "Episodic|Semantic");

    // query
    std::string query_text;
    std::string intent_override;
    auto* cmd_query = app.add_subcommand("query", "run the retrieval auction");
    cmd_query->add_option("text", query_text, "query text")->required();
    cmd_query->add_option("--intent", intent_override, "override intent: Fact|Temporal|Reasoning|MultiHop");

    // feedback
    std::string answer_file;
    std::string feedback_ids;
    auto* cmd_feedback = app.add_subcommand("feedback", "reflect an answer back onto retrieved memories");
    cmd_feedback->add_option("answer-file", answer_file, "file holding the generated answer")->required();
    cmd_feedback->add_option("--ids", feedback_ids, "comma-separated memory ids (default: last query)");

    // gc
    auto* cmd_gc = app.add_subcommand("gc", "run background maintenance");

    // forget
    memgov::MemoryId forget_id = 0;
    auto* cmd_forget = app.add_subcommand("forget", "right-to-be-forgotten cascade");
    cmd_forget->add_option("id", forget_id, "root memory id")->required();

    // simulate
    std::string trace_path;
    std::string report_path;
    auto* cmd_simulate = app.add_subcommand("simulate", "replay a trace against a fresh engine");
    cmd_simulate->add_option("trace", trace_path, "trace file")->required();
    cmd_simulate->add_option("--report", report_path, "write the report here instead of stdout");

    // serve
    std::string host = "127.0.0.1";
    int port = 8490;
    bool virtual_clock = false;
    auto* cmd_serve = app.add_subcommand("serve", "run the HTTP service");
    cmd_serve->add_option("--host", host, "bind host")->capture_default_str();
    cmd_serve->add_option("--port", port, "bind port")->capture_default_str();
    cmd_serve->add_flag("--virtual-clock", virtual_clock, "do not sync the engine clock to wall time");

    // config check
    auto* cmd_config = app.add_subcommand("config", "configuration tools");
    auto* cmd_config_check = cmd_config->add_subcommand("check", "validate the config and print its fingerprint");

    CLI11_PARSE(app, argc, argv);
    if (now_opt->count() > 0) opts.now_days = now_days_flag;

    try {
        GovernanceConfig cfg = load_cfg(opts);

        if (*cmd_ingest) {
            Engine engine = open_engine(opts, cfg);
            auto source = memgov::parse_source_kind(ingest_source);
            auto kind = memgov::parse_memory_kind(ingest_kind);
            if (!source) throw Error(Errc::ParseError, "bad --source " + ingest_source);
            if (!kind) throw Error(Errc::ParseError, "bad --kind " + ingest_kind);

            std::ifstream in(ingest_file);
            if (!in) throw Error(Errc::IoFailure, "cannot open " + ingest_file);
            std::size_t admitted = 0, rejected = 0;
            std::string line;
            nlohmann::ordered_json results = nlohmann::ordered_json::array();
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                auto result = engine.ingest(line, {*source, ""}, *kind);
                if (result.admitted) {
                    ++admitted;
                    if (structured(opts)) {
                        results.push_back({{"id", result.id}, {"admitted", true}});
                    } else {
                        std::cout << "ADMIT " << result.id << "\n";
                    }
                } else {
                    ++rejected;
                    if (structured(opts)) {
                        results.push_back({{"admitted", false}, {"reason", result.reason}});
                    } else {
                        std::cout << "REJECT (" << result.reason << ")\n";
                    }
                }
            }
            engine.save(opts.store_path);
            if (structured(opts)) {
                nlohmann::ordered_json out;
                out["admitted"] = admitted;
                out["rejected"] = rejected;
                out["results"] = results;
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "ingested " << admitted << ", rejected " << rejected << "\n";
            }
            return 0;
        }

        if (*cmd_query) {
            Engine engine = open_engine(opts, cfg);
            std::optional<memgov::auction::QueryIntent> intent;
            if (!intent_override.empty()) {
                intent = memgov::auction::parse_intent(intent_override);
                if (!intent) throw Error(Errc::ParseError, "bad --intent " + intent_override);
            }
            auto bundle = engine.query(query_text, intent);
            engine.save(opts.store_path);  // co-retrieval counts changed
            if (structured(opts)) {
                std::cout << memgov::wire::bundle_to_json(bundle, engine.store()).dump(2) << "\n";
            } else {
                std::cout << "intent: " << memgov::auction::to_string(bundle.intent) << "\n";
                for (const auto& sub : bundle.sub_queries) std::cout << "sub-query: " << sub << "\n";
                for (const auto& entry : bundle.admitted) {
                    std::cout << (entry.via == memgov::auction::AdmittedVia::Auction ? "AUCTION" : "HEBBIAN")
                              << " " << entry.id << " score=" << entry.score << " | "
                              << engine.store().get_memory(entry.id).content << "\n";
                }
                std::cout << "budget: mode="
                          << (bundle.budget.mode == memgov::auction::BudgetMode::Reasoning ? "Reasoning"
                                                                                           : "Recall")
                          << " reserve=" << bundle.budget.generation_reserve
                          << " allowance=" << bundle.budget.context_allowance << "\n";
            }
            return 0;
        }

        if (*cmd_feedback) {
            Engine engine = open_engine(opts, cfg);
            std::string answer = read_file(answer_file);
            std::optional<std::vector<memgov::MemoryId>> ids;
            if (!feedback_ids.empty()) ids = parse_id_list(feedback_ids);
            auto report = engine.feedback(answer, ids);
            engine.save(opts.store_path);
            if (structured(opts)) {
                std::cout << memgov::wire::reflect_to_json(report).dump(2) << "\n";
            } else {
                for (const auto& u : report.updates) {
                    std::cout << (u.used ? "USED " : "UNUSED ") << u.id << " overlap=" << u.overlap
                              << " U " << u.trust_before << " -> " << u.trust_after << " S "
                              << u.stability_before << " -> " << u.stability_after << "\n";
                }
            }
            return 0;
        }

        if (*cmd_gc) {
            Engine engine = open_engine(opts, cfg);
            auto report = engine.maintain();
            engine.save(opts.store_path);
            if (structured(opts)) {
                std::cout << memgov::wire::maintenance_to_json(report).dump(2) << "\n";
            } else {
                std::cout << memgov::lifecycle::audit_text(report);
            }
            return 0;
        }

        if (*cmd_forget) {
            Engine engine = open_engine(opts, cfg);
            auto purged = engine.forget(forget_id);
            engine.save(opts.store_path);
            if (structured(opts)) {
                nlohmann::ordered_json out;
                out["purged"] = purged;
                std::cout << out.dump(2) << "\n";
            } else {
                for (auto id : purged) std::cout << "PURGED " << id << "\n";
            }
            return 0;
        }

        if (*cmd_simulate) {
            auto report = memgov::trace::run_simulation(trace_path, cfg);
            std::string json = report.to_json();
            if (!report_path.empty()) {
                std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
                if (!out) throw Error(Errc::IoFailure, "cannot write " + report_path);
                out << json;
            } else {
                std::cout << json;
            }
            return 0;
        }

        if (*cmd_serve) {
            Engine engine = open_engine(opts, cfg);
            memgov::service::Service svc(engine, !virtual_clock);
            std::cout << "listening on " << host << ":" << port << "\n";
            if (!svc.serve_blocking(host, port)) {
                throw Error(Errc::IoFailure, "cannot listen on " + host + ":" + std::to_string(port));
            }
            return 0;
        }

        if (*cmd_config_check) {
            std::cout << "fingerprint " << cfg.fingerprint() << "\n";
            return 0;
        }
        if (*cmd_config) {
            std::cout << cfg.render();
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
