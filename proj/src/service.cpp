#include "memgov/service.hpp"

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "memgov/error.hpp"
#include "memgov/wire.hpp"

namespace memgov::service {

using ordered_json = nlohmann::ordered_json;

namespace {

void reply_json(httplib::Response& res, int status, const ordered_json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& error,
                 const std::string& message) {
    ordered_json j;
    j["error"] = error;
    j["message"] = message;
    reply_json(res, status, j);
}

int status_for(const Error& e) {
    switch (e.code()) {
        case Errc::NotFound: return 404;
        case Errc::Tombstoned: return 410;
        case Errc::GuardUnavailable: return 403;
        case Errc::EmptyContent:
        case Errc::EmptyQuery:
        case Errc::UnknownParent:
        case Errc::DimensionMismatch:
        case Errc::DomainError:
        case Errc::ParseError:
        case Errc::NonMonotoneClock:
        case Errc::SameRecord:
        case Errc::WindowTooSmall:
            return 400;
        default: return 500;
    }
}

// Wraps a handler with the shared error mapping.
template <typename Fn>
auto guarded(Fn fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
        try {
            fn(req, res);
        } catch (const Error& e) {
            reply_error(res, status_for(e), errc_name(e.code()), e.what());
        } catch (const std::exception& e) {
            reply_error(res, 500, "Internal", e.what());
        }
    };
}

ordered_json parse_body(const httplib::Request& req) {
    auto body = ordered_json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
        throw Error(Errc::ParseError, "request body is not a JSON object");
    }
    return body;
}

MemoryId parse_id(const std::string& s) {
    try {
        return static_cast<MemoryId>(std::stoull(s));
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "bad id '" + s + "'");
    }
}

}  // namespace

struct Service::Impl {
    Engine& engine;
    bool wall_clock;
    httplib::Server server;
    std::thread listener;
    int port = 0;

    Impl(Engine& eng, bool wall) : engine(eng), wall_clock(wall) { wire_routes(); }

    void tick() {
        if (wall_clock) engine.sync_wall_clock();
    }

    void wire_routes() {
        server.Post("/v1/memories", guarded([this](const httplib::Request& req, httplib::Response& res) {
            tick();
            auto body = parse_body(req);
            if (!body.contains("content") || !body["content"].is_string()) {
                throw Error(Errc::ParseError, "missing 'content'");
            }
            SourceTag source;
            if (body.contains("source")) {
                auto parsed = parse_source_kind(body["source"].get<std::string>());
                if (!parsed) throw Error(Errc::ParseError, "bad 'source'");
                source.kind = *parsed;
            }
            if (body.contains("source_label")) source.label = body["source_label"].get<std::string>();
            MemoryKind kind = MemoryKind::Episodic;
            if (body.contains("kind")) {
                auto parsed = parse_memory_kind(body["kind"].get<std::string>());
                if (!parsed) throw Error(Errc::ParseError, "bad 'kind'");
                kind = *parsed;
            }
            std::vector<MemoryId> parents;
            if (body.contains("derived_from")) {
                parents = body["derived_from"].get<std::vector<MemoryId>>();
            }
            auto result = engine.ingest(body["content"].get<std::string>(), source, kind, parents);
            if (!result.admitted) {
                reply_error(res, 403, result.reason == "GuardUnavailable" ? "GuardUnavailable" : "Rejected",
                            result.reason);
                return;
            }
            ordered_json out;
            out["id"] = result.id;
            reply_json(res, 201, out);
        }));

        server.Get(R"(/v1/memories/(\d+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
            tick();
            MemoryRecord rec = engine.get(parse_id(req.matches[1]));
            reply_json(res, 200, wire::record_to_json(rec));
        }));

        server.Delete(R"(/v1/memories/(\d+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
            tick();
            MemoryId id = parse_id(req.matches[1]);
            bool cascade = req.has_param("cascade") && req.get_param_value("cascade") == "true";
            ordered_json out;
            if (cascade) {
                out["purged"] = engine.forget(id);
            } else {
                // Plain delete: tombstone just this record.
                if (!engine.store().peek(id)) {
                    throw Error(Errc::NotFound, "memory " + std::to_string(id) + " not found", id);
                }
                engine.store_mut().tombstone(id);
                engine.store_mut().cooccurrence().erase(id);
                out["purged"] = std::vector<MemoryId>{id};
            }
            reply_json(res, 200, out);
        }));

        server.Post("/v1/query", guarded([this](const httplib::Request& req, httplib::Response& res) {
            tick();
            auto body = parse_body(req);
            if (!body.contains("text") || !body["text"].is_string()) {
                throw Error(Errc::ParseError, "missing 'text'");
            }
            std::optional<auction::QueryIntent> intent;
            if (body.contains("intent")) {
                intent = auction::parse_intent(body["intent"].get<std::string>());
                if (!intent) throw Error(Errc::ParseError, "bad 'intent'");
            }
            auto bundle = engine.query(body["text"].get<std::string>(), intent);
            reply_json(res, 200, wire::bundle_to_json(bundle, engine.store()));
        }));

        server.Post("/v1/feedback", guarded([this](const httplib::Request& req, httplib::Response& res) {
            tick();
            auto body = parse_body(req);
            if (!body.contains("answer") || !body["answer"].is_string()) {
                throw Error(Errc::ParseError, "missing 'answer'");
            }
            std::optional<std::vector<MemoryId>> retrieved;
            if (body.contains("retrieved")) {
                retrieved = body["retrieved"].get<std::vector<MemoryId>>();
            }
            auto report = engine.feedback(body["answer"].get<std::string>(), retrieved);
            reply_json(res, 200, wire::reflect_to_json(report));
        }));

        server.Post("/v1/maintenance", guarded([this](const httplib::Request&, httplib::Response& res) {
            tick();
            reply_json(res, 200, wire::maintenance_to_json(engine.maintain()));
        }));

        server.Post("/v1/adjudicate", guarded([this](const httplib::Request& req, httplib::Response& res) {
            tick();
            auto body = parse_body(req);
            if (!body.contains("newer") || !body.contains("older")) {
                throw Error(Errc::ParseError, "missing 'newer'/'older'");
            }
            auto verdict = engine.adjudicate(body["newer"].get<MemoryId>(), body["older"].get<MemoryId>());
            ordered_json out;
            out["winner"] = verdict.winner;
            out["loser"] = verdict.loser;
            out["winner_score"] = verdict.winner_score;
            out["loser_score"] = verdict.loser_score;
            reply_json(res, 200, out);
        }));

        server.Get("/v1/health", guarded([this](const httplib::Request&, httplib::Response& res) {
            ordered_json out;
            out["status"] = "ok";
            out["records"] = engine.store().live_count();
            out["clock_days"] = engine.now_days();
            reply_json(res, 200, out);
        }));

        server.Get("/v1/config", guarded([this](const httplib::Request&, httplib::Response& res) {
            ordered_json out;
            out["fingerprint"] = engine.config().fingerprint();
            for (const auto& info : config_key_registry()) {
                out["keys"][info.key] = engine.config().value_string(info.key);
            }
            reply_json(res, 200, out);
        }));
    }
};

Service::Service(Engine& engine, bool wall_clock)
    : impl_(std::make_unique<Impl>(engine, wall_clock)) {}

Service::~Service() { stop(); }

int Service::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
        if (bound <= 0) throw Error(Errc::IoFailure, "cannot bind " + host);
    } else {
        if (!impl_->server.bind_to_port(host, port)) {
            throw Error(Errc::IoFailure, "cannot bind " + host + ":" + std::to_string(port));
        }
    }
    impl_->port = bound;
    impl_->listener = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound;
}

void Service::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->listener.joinable()) impl_->listener.join();
}

bool Service::serve_blocking(const std::string& host, int port) {
    return impl_->server.listen(host, port);
}

}  // namespace memgov::service
