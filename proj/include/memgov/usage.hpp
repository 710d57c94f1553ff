#pragma once

#include <string>

namespace memgov::usage {

struct UsageResult {
    bool used = false;
    double overlap = 0.0;  // fraction of the memory's content words found in the answer
};

// Word-overlap usage heuristic: lowercase, strip punctuation, drop stopwords
// from the memory side, then measure |content-words(memory) ∩ words(answer)|
// / |content-words(memory)|. An empty memory content-word set yields overlap
// 0 and used=false.
UsageResult detect_usage(const std::string& answer, const std::string& memory_content,
                         double threshold);

}  // namespace memgov::usage
