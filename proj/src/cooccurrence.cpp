#include "memgov/types.hpp"

#include <algorithm>

namespace memgov {

const char* to_string(MemoryKind k) {
    return k == MemoryKind::Episodic ? "Episodic" : "Semantic";
}

const char* to_string(SourceKind k) {
    switch (k) {
        case SourceKind::User: return "User";
        case SourceKind::Agent: return "Agent";
        case SourceKind::External: return "External";
    }
    return "User";
}

std::optional<MemoryKind> parse_memory_kind(const std::string& s) {
    if (s == "Episodic" || s == "episodic") return MemoryKind::Episodic;
    if (s == "Semantic" || s == "semantic") return MemoryKind::Semantic;
    return std::nullopt;
}

std::optional<SourceKind> parse_source_kind(const std::string& s) {
    if (s == "User" || s == "user") return SourceKind::User;
    if (s == "Agent" || s == "agent") return SourceKind::Agent;
    if (s == "External" || s == "external") return SourceKind::External;
    return std::nullopt;
}

namespace {

std::pair<MemoryId, MemoryId> norm_pair(MemoryId a, MemoryId b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace

void CoOccurrenceGraph::record_co_retrieval(const std::vector<MemoryId>& ids) {
    std::vector<MemoryId> uniq = ids;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    if (uniq.empty()) return;
    for (MemoryId id : uniq) ++counts_[id];
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        for (std::size_t j = i + 1; j < uniq.size(); ++j) {
            ++pairs_[norm_pair(uniq[i], uniq[j])];
        }
    }
}

std::uint64_t CoOccurrenceGraph::retrieval_count(MemoryId id) const {
    auto it = counts_.find(id);
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t CoOccurrenceGraph::pair_count(MemoryId a, MemoryId b) const {
    if (a == b) return 0;
    auto it = pairs_.find(norm_pair(a, b));
    return it == pairs_.end() ? 0 : it->second;
}

double CoOccurrenceGraph::conditional(MemoryId b, MemoryId a) const {
    std::uint64_t ca = retrieval_count(a);
    if (ca == 0) return 0.0;
    return static_cast<double>(pair_count(a, b)) / static_cast<double>(ca);
}

std::vector<MemoryId> CoOccurrenceGraph::strong_associates(MemoryId a, double threshold) const {
    std::vector<MemoryId> out;
    std::uint64_t ca = retrieval_count(a);
    if (ca == 0) return out;
    for (const auto& [key, n] : pairs_) {
        MemoryId other;
        if (key.first == a) other = key.second;
        else if (key.second == a) other = key.first;
        else continue;
        if (static_cast<double>(n) / static_cast<double>(ca) > threshold) out.push_back(other);
    }
    return out;  // map iteration already yields ascending ids
}

void CoOccurrenceGraph::erase(MemoryId id) {
    counts_.erase(id);
    for (auto it = pairs_.begin(); it != pairs_.end();) {
        if (it->first.first == id || it->first.second == id) it = pairs_.erase(it);
        else ++it;
    }
}

void CoOccurrenceGraph::set_count(MemoryId id, std::uint64_t n) {
    if (n == 0) counts_.erase(id);
    else counts_[id] = n;
}

void CoOccurrenceGraph::set_pair(MemoryId a, MemoryId b, std::uint64_t n) {
    if (a == b) return;
    if (n == 0) pairs_.erase(norm_pair(a, b));
    else pairs_[norm_pair(a, b)] = n;
}

}  // namespace memgov
