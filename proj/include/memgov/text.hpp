#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

namespace memgov::text {

// Lowercase a copy (ASCII only; bytes >= 0x80 pass through untouched).
std::string lowercase(const std::string& s);

// Trim ASCII whitespace from both ends.
std::string trim(const std::string& s);

// Lowercases and splits on every non-alphanumeric byte. Multi-byte UTF-8
// sequences count as word characters so non-ASCII content stays intact.
std::vector<std::string> tokenize(const std::string& s);

// The pinned stopword list. Fixed so overlap scores are reproducible across
// builds; "may" is deliberately absent to keep month names intact.
const std::unordered_set<std::string>& stopwords();

bool is_stopword(const std::string& token);

// tokenize() minus stopwords, duplicates preserved.
std::vector<std::string> content_words(const std::string& s);

// Whitespace-token count scaled by a safety factor, rounded up.
std::size_t estimate_tokens(const std::string& s, double factor);

}  // namespace memgov::text
