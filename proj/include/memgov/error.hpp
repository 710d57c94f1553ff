#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace memgov {

enum class Errc {
    EmptyContent,
    UnknownParent,
    NotFound,
    Tombstoned,
    DimensionMismatch,
    IoFailure,
    ConfigMismatch,
    CorruptRecord,
    NonPositiveStability,
    DomainError,
    EmptyCorpus,
    EmptyQuery,
    WindowTooSmall,
    SameRecord,
    EmptyText,
    AdapterUnavailable,
    MalformedResponse,
    GuardUnavailable,
    ParseError,
    NonMonotoneClock,
};

const char* errc_name(Errc code);

// Single exception type for every typed failure in the engine. `detail` carries
// the record id or line number when one is relevant (0 otherwise).
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message, std::uint64_t detail = 0)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code),
          detail_(detail) {}

    Errc code() const { return code_; }
    std::uint64_t detail() const { return detail_; }

private:
    Errc code_;
    std::uint64_t detail_;
};

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::EmptyContent: return "EmptyContent";
        case Errc::UnknownParent: return "UnknownParent";
        case Errc::NotFound: return "NotFound";
        case Errc::Tombstoned: return "Tombstoned";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::IoFailure: return "IoFailure";
        case Errc::ConfigMismatch: return "ConfigMismatch";
        case Errc::CorruptRecord: return "CorruptRecord";
        case Errc::NonPositiveStability: return "NonPositiveStability";
        case Errc::DomainError: return "DomainError";
        case Errc::EmptyCorpus: return "EmptyCorpus";
        case Errc::EmptyQuery: return "EmptyQuery";
        case Errc::WindowTooSmall: return "WindowTooSmall";
        case Errc::SameRecord: return "SameRecord";
        case Errc::EmptyText: return "EmptyText";
        case Errc::AdapterUnavailable: return "AdapterUnavailable";
        case Errc::MalformedResponse: return "MalformedResponse";
        case Errc::GuardUnavailable: return "GuardUnavailable";
        case Errc::ParseError: return "ParseError";
        case Errc::NonMonotoneClock: return "NonMonotoneClock";
    }
    return "UnknownError";
}

}  // namespace memgov
