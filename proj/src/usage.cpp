#include "memgov/usage.hpp"

#include <set>

#include "memgov/text.hpp"

namespace memgov::usage {

UsageResult detect_usage(const std::string& answer, const std::string& memory_content,
                         double threshold) {
    std::set<std::string> memory_words;
    for (auto& w : text::content_words(memory_content)) memory_words.insert(std::move(w));
    if (memory_words.empty()) {
        return {false, 0.0};
    }
    std::set<std::string> answer_words;
    for (auto& w : text::tokenize(answer)) answer_words.insert(std::move(w));

    std::size_t shared = 0;
    for (const auto& w : memory_words) shared += answer_words.count(w);
    double overlap = static_cast<double>(shared) / static_cast<double>(memory_words.size());
    return {overlap >= threshold, overlap};
}

}  // namespace memgov::usage
