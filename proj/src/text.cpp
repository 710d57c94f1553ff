#include "memgov/text.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace memgov::text {

std::string lowercase(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (uc < 0x80) c = static_cast<char>(std::tolower(uc));
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

namespace {

bool word_byte(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : s) {
        if (word_byte(c)) {
            cur.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> kList = {
        "a", "an", "the", "and", "or", "but", "nor", "so", "yet",
        "if", "then", "else", "as", "at", "by", "for", "from", "in",
        "into", "of", "off", "on", "onto", "out", "over", "to", "under",
        "up", "with", "within", "without", "is", "are", "was", "were",
        "be", "been", "being", "am", "do", "does", "did", "done",
        "have", "has", "had", "having", "he", "she", "it", "they",
        "them", "him", "her", "his", "hers", "its", "their", "theirs",
        "we", "us", "our", "ours", "you", "your", "yours", "i", "me",
        "my", "mine", "this", "that", "these", "those", "there", "here",
        "not", "no", "what", "which", "who", "whom", "whose", "when",
        "where", "why", "how", "all", "any", "both", "each", "few",
        "more", "most", "other", "some", "such", "than", "too", "very",
        "just", "about", "again", "once", "only", "own", "same", "s",
        "t", "can", "will", "would", "shall", "should", "could", "might",
        "must",
    };
    return kList;
}

bool is_stopword(const std::string& token) {
    return stopwords().count(token) > 0;
}

std::vector<std::string> content_words(const std::string& s) {
    std::vector<std::string> out;
    for (auto& tok : tokenize(s)) {
        if (!is_stopword(tok)) out.push_back(std::move(tok));
    }
    return out;
}

std::size_t estimate_tokens(const std::string& s, double factor) {
    std::istringstream iss(s);
    std::size_t n = 0;
    std::string w;
    while (iss >> w) ++n;
    return static_cast<std::size_t>(std::ceil(static_cast<double>(n) * factor));
}

}  // namespace memgov::text
