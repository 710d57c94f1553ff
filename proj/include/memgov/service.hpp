#pragma once

#include <memory>
#include <string>

#include "memgov/engine.hpp"

namespace memgov::service {

// HTTP front end over one engine. Endpoints (bodies are JSON, versioned /v1):
//   POST   /v1/memories                  guard -> insert
//   GET    /v1/memories/{id}
//   DELETE /v1/memories/{id}[?cascade=true]
//   POST   /v1/query                     {"text": ..., "intent"?: ...}
//   POST   /v1/feedback                  {"answer": ..., "retrieved"?: [ids]}
//   POST   /v1/maintenance
//   POST   /v1/adjudicate                {"newer": id, "older": id}
//   GET    /v1/health
//   GET    /v1/config
// Error mapping: NotFound -> 404, Tombstoned -> 410, validation -> 400,
// guard rejection or GuardUnavailable -> 403, internal -> 500.
class Service {
public:
    // wall_clock: sync the engine clock to system time before each request.
    explicit Service(Engine& engine, bool wall_clock = true);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    // Starts a background listener. port 0 picks a free port; the bound port
    // is returned. Throws IoFailure when binding fails.
    int start(const std::string& host, int port);
    void stop();

    // Foreground listener for the CLI `serve` subcommand.
    bool serve_blocking(const std::string& host, int port);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace memgov::service
