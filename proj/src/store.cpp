#include "memgov/store.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "memgov/error.hpp"
#include "memgov/kernels.hpp"
#include "memgov/text.hpp"

namespace memgov {

using ordered_json = nlohmann::ordered_json;

MemoryStore::MemoryStore(StoreOptions options, std::shared_ptr<adapters::Embedder> embedder)
    : options_(options), embedder_(std::move(embedder)) {}

MemoryId MemoryStore::insert_memory(const std::string& content, MemoryKind kind, SourceTag source,
                                    const std::vector<MemoryId>& derived_from, double now_s) {
    if (text::trim(content).empty()) {
        throw Error(Errc::EmptyContent, "content is empty after trimming");
    }
    for (MemoryId parent : derived_from) {
        auto it = records_.find(parent);
        if (it == records_.end() || it->second.deleted) {
            throw Error(Errc::UnknownParent, "parent " + std::to_string(parent) + " unknown or tombstoned",
                        parent);
        }
    }

    std::vector<double> embedding;
    try {
        auto maybe = embedder_->embed(content);
        if (!maybe) {
            throw Error(Errc::AdapterUnavailable, "embedder unavailable on write path");
        }
        embedding = std::move(*maybe);
    } catch (const Error& e) {
        if (e.code() == Errc::EmptyText) {
            throw Error(Errc::EmptyContent, "content has no embeddable tokens");
        }
        throw;
    }
    if (embedding.size() != options_.embedding_dim) {
        throw Error(Errc::DimensionMismatch, "embedder produced wrong dimension");
    }

    MemoryRecord rec;
    rec.id = next_id_++;
    rec.content = content;
    rec.kind = kind;
    rec.created_at_s = now_s;
    rec.fsrs.stability_days = options_.initial_stability_days;
    rec.fsrs.difficulty = options_.initial_difficulty;
    rec.fsrs.last_review_s = now_s;
    rec.utility.trust = options_.initial_trust;
    rec.utility.covariance = options_.initial_covariance;
    rec.embedding = std::move(embedding);
    rec.source = std::move(source);
    rec.derived_from = derived_from;
    MemoryId id = rec.id;
    records_.emplace(id, std::move(rec));
    return id;
}

MemoryId MemoryStore::insert_record(MemoryRecord record) {
    if (record.embedding.size() != options_.embedding_dim) {
        throw Error(Errc::DimensionMismatch, "record embedding has wrong dimension");
    }
    if (record.id == 0) record.id = next_id_;
    next_id_ = std::max(next_id_, record.id + 1);
    MemoryId id = record.id;
    records_.insert_or_assign(id, std::move(record));
    return id;
}

const MemoryRecord& MemoryStore::get_memory(MemoryId id) const {
    auto it = records_.find(id);
    if (it == records_.end()) {
        throw Error(Errc::NotFound, "memory " + std::to_string(id) + " not found", id);
    }
    if (it->second.deleted) {
        throw Error(Errc::Tombstoned, "memory " + std::to_string(id) + " is tombstoned", id);
    }
    return it->second;
}

const MemoryRecord* MemoryStore::peek(MemoryId id) const {
    auto it = records_.find(id);
    return it == records_.end() ? nullptr : &it->second;
}

MemoryRecord& MemoryStore::record_mut(MemoryId id) {
    auto it = records_.find(id);
    if (it == records_.end()) {
        throw Error(Errc::NotFound, "memory " + std::to_string(id) + " not found", id);
    }
    return it->second;
}

std::vector<Neighbor> MemoryStore::nearest_neighbors(std::span<const double> query,
                                                     std::size_t k) const {
    if (query.size() != options_.embedding_dim) {
        throw Error(Errc::DimensionMismatch, "query dimension " + std::to_string(query.size()) +
                                                 " != " + std::to_string(options_.embedding_dim));
    }
    if (k == 0) {
        throw Error(Errc::DomainError, "k must be positive");
    }

    std::vector<MemoryId> ids;
    std::vector<const double*> embeddings;
    ids.reserve(records_.size());
    embeddings.reserve(records_.size());
    for (const auto& [id, rec] : records_) {
        if (!rec.retrievable()) continue;
        ids.push_back(id);
        embeddings.push_back(rec.embedding.data());
    }

    std::vector<double> sims(ids.size());
    kernels::cosine_scores(embeddings, options_.embedding_dim, query, sims);
    for (double& s : sims) {
        // Unit-vector dots can overshoot the cosine range by an ulp.
        if (s > 1.0) s = 1.0;
        else if (s < -1.0) s = -1.0;
    }

    std::vector<std::size_t> order(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sims[a] != sims[b]) return sims[a] > sims[b];
        return ids[a] < ids[b];
    });

    std::size_t take = std::min(k, order.size());
    std::vector<Neighbor> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        out.push_back({ids[order[i]], sims[order[i]]});
    }
    return out;
}

void MemoryStore::tombstone(MemoryId id) {
    record_mut(id).deleted = true;
}

void MemoryStore::remove_physical(MemoryId id) {
    records_.erase(id);
}

std::size_t MemoryStore::live_count() const {
    std::size_t n = 0;
    for (const auto& [id, rec] : records_) {
        if (rec.live()) ++n;
    }
    return n;
}

namespace {

constexpr const char* kFormatTag = "memgov-snapshot-v1";

ordered_json record_to_json(const MemoryRecord& rec) {
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
    j["embedding"] = rec.embedding;
    j["source"] = to_string(rec.source.kind);
    j["source_label"] = rec.source.label;
    j["derived_from"] = rec.derived_from;
    j["deleted"] = rec.deleted;
    if (rec.superseded_by) j["superseded_by"] = *rec.superseded_by;
    else j["superseded_by"] = nullptr;
    return j;
}

MemoryRecord record_from_json(const ordered_json& j) {
    MemoryRecord rec;
    rec.id = j.at("id").get<MemoryId>();
    rec.content = j.at("content").get<std::string>();
    auto kind = parse_memory_kind(j.at("kind").get<std::string>());
    if (!kind) throw std::runtime_error("bad kind");
    rec.kind = *kind;
    rec.created_at_s = j.at("created_at_s").get<double>();
    rec.fsrs.stability_days = j.at("stability_days").get<double>();
    rec.fsrs.difficulty = j.at("difficulty").get<double>();
    rec.fsrs.last_review_s = j.at("last_review_s").get<double>();
    rec.utility.trust = j.at("trust").get<double>();
    rec.utility.covariance = j.at("covariance").get<double>();
    rec.embedding = j.at("embedding").get<std::vector<double>>();
    auto source = parse_source_kind(j.at("source").get<std::string>());
    if (!source) throw std::runtime_error("bad source");
    rec.source.kind = *source;
    rec.source.label = j.at("source_label").get<std::string>();
    rec.derived_from = j.at("derived_from").get<std::vector<MemoryId>>();
    rec.deleted = j.at("deleted").get<bool>();
    if (!j.at("superseded_by").is_null()) rec.superseded_by = j.at("superseded_by").get<MemoryId>();
    return rec;
}

}  // namespace

std::size_t MemoryStore::save_snapshot(const std::filesystem::path& path,
                                       const std::string& fingerprint,
                                       const std::string& extra_json) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(Errc::IoFailure, "cannot open " + path.string() + " for writing");
    }

    ordered_json header;
    header["format"] = kFormatTag;
    header["fingerprint"] = fingerprint;
    header["embedding_dim"] = options_.embedding_dim;
    header["records"] = records_.size();
    header["next_id"] = next_id_;
    out << header.dump() << "\n";

    for (const auto& [id, rec] : records_) {
        out << record_to_json(rec).dump() << "\n";
    }

    ordered_json graph;
    graph["cooc_counts"] = ordered_json::array();
    for (const auto& [id, n] : graph_.counts()) {
        graph["cooc_counts"].push_back({id, n});
    }
    graph["cooc_pairs"] = ordered_json::array();
    for (const auto& [key, n] : graph_.pairs()) {
        graph["cooc_pairs"].push_back({key.first, key.second, n});
    }
    out << graph.dump() << "\n";

    ordered_json extra;
    extra["extra"] = extra_json.empty() ? ordered_json(nullptr)
                                        : ordered_json::parse(extra_json, nullptr, false);
    out << extra.dump() << "\n";

    ordered_json end;
    end["end"] = true;
    out << end.dump() << "\n";

    out.flush();
    if (!out) {
        throw Error(Errc::IoFailure, "write failed for " + path.string());
    }
    return records_.size();
}

MemoryStore MemoryStore::load_snapshot(const std::filesystem::path& path,
                                       const std::string& expected_fingerprint,
                                       StoreOptions options,
                                       std::shared_ptr<adapters::Embedder> embedder,
                                       std::string* extra_json_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::IoFailure, "cannot open " + path.string());
    }

    std::size_t line_no = 0;
    auto next_line = [&](std::string& line) {
        if (!std::getline(in, line)) {
            throw Error(Errc::CorruptRecord, "unexpected end of snapshot at line " +
                                                 std::to_string(line_no + 1),
                        line_no + 1);
        }
        ++line_no;
    };
    auto parse_line = [&](const std::string& line) {
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw Error(Errc::CorruptRecord, "malformed snapshot line " + std::to_string(line_no),
                        line_no);
        }
        return j;
    };

    std::string line;
    next_line(line);
    ordered_json header = parse_line(line);
    if (!header.contains("format") || header["format"] != kFormatTag) {
        throw Error(Errc::CorruptRecord, "missing or unknown format tag", line_no);
    }
    std::string fingerprint = header.value("fingerprint", "");
    if (fingerprint != expected_fingerprint) {
        throw Error(Errc::ConfigMismatch,
                    "snapshot fingerprint " + fingerprint + " != current " + expected_fingerprint);
    }
    std::size_t dim = header.value("embedding_dim", std::size_t{0});
    if (dim != options.embedding_dim) {
        throw Error(Errc::ConfigMismatch, "snapshot embedding dimension mismatch");
    }

    MemoryStore store(options, std::move(embedder));
    std::size_t count = header.value("records", std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        next_line(line);
        ordered_json j = parse_line(line);
        try {
            MemoryRecord rec = record_from_json(j);
            if (rec.embedding.size() != options.embedding_dim) {
                throw std::runtime_error("bad embedding size");
            }
            store.insert_record(std::move(rec));
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw Error(Errc::CorruptRecord, "bad record at line " + std::to_string(line_no),
                        line_no);
        }
    }

    next_line(line);
    ordered_json graph = parse_line(line);
    try {
        for (const auto& entry : graph.at("cooc_counts")) {
            store.graph_.set_count(entry.at(0).get<MemoryId>(), entry.at(1).get<std::uint64_t>());
        }
        for (const auto& entry : graph.at("cooc_pairs")) {
            store.graph_.set_pair(entry.at(0).get<MemoryId>(), entry.at(1).get<MemoryId>(),
                                  entry.at(2).get<std::uint64_t>());
        }
    } catch (const std::exception&) {
        throw Error(Errc::CorruptRecord, "bad graph at line " + std::to_string(line_no), line_no);
    }

    next_line(line);
    ordered_json extra = parse_line(line);
    if (extra_json_out) {
        *extra_json_out = extra.contains("extra") && !extra["extra"].is_null()
                              ? extra["extra"].dump()
                              : std::string();
    }

    next_line(line);
    ordered_json end = parse_line(line);
    if (!end.contains("end")) {
        throw Error(Errc::CorruptRecord, "missing snapshot terminator", line_no);
    }

    store.next_id_ = std::max<MemoryId>(header.value("next_id", MemoryId{1}), store.next_id_);
    return store;
}

bool MemoryStore::same_state(const MemoryStore& other) const {
    return records_ == other.records_ && graph_ == other.graph_ && next_id_ == other.next_id_;
}

}  // namespace memgov
