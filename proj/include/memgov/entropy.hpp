#pragma once

#include <string>
#include <vector>

namespace memgov::lifecycle {

struct EntropyProbe {
    double ratio = 1.0;   // compressed bytes / raw bytes
    bool triggered = false;
};

// DEFLATE the newline-joined UTF-8 concatenation at default level and compare
// sizes. Trigger fires on ratio strictly below the threshold. The exact ratio
// is codec-dependent, so callers should treat it as a band, not a constant.
EntropyProbe entropy_ratio(const std::vector<std::string>& contents, double threshold);

// Raw compressed size of a single buffer (exposed for tests and tooling).
std::size_t deflate_size(const std::string& data);

}  // namespace memgov::lifecycle
