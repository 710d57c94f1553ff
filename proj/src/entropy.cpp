#include "memgov/entropy.hpp"

#include <zlib.h>

#include "memgov/error.hpp"

namespace memgov::lifecycle {

std::size_t deflate_size(const std::string& data) {
    uLong bound = compressBound(static_cast<uLong>(data.size()));
    std::vector<Bytef> buf(bound);
    uLongf out_len = bound;
    int rc = compress2(buf.data(), &out_len, reinterpret_cast<const Bytef*>(data.data()),
                       static_cast<uLong>(data.size()), Z_DEFAULT_COMPRESSION);
    if (rc != Z_OK) {
        throw Error(Errc::IoFailure, "deflate failed");
    }
    return static_cast<std::size_t>(out_len);
}

EntropyProbe entropy_ratio(const std::vector<std::string>& contents, double threshold) {
    std::string joined;
    for (const auto& c : contents) {
        if (!joined.empty()) joined += '\n';
        joined += c;
    }
    if (joined.empty()) {
        throw Error(Errc::EmptyCorpus, "no content to probe");
    }
    EntropyProbe probe;
    probe.ratio = static_cast<double>(deflate_size(joined)) / static_cast<double>(joined.size());
    probe.triggered = probe.ratio < threshold;
    return probe;
}

}  // namespace memgov::lifecycle
