#include <doctest.h>

#include "memgov/text.hpp"

using namespace memgov;

TEST_CASE("tokenize lowercases and splits on punctuation") {
    auto toks = text::tokenize("He lives in Tokyo.");
    REQUIRE(toks == std::vector<std::string>{"he", "lives", "in", "tokyo"});
    CHECK(text::tokenize("").empty());
    CHECK(text::tokenize("!!! ???").empty());
    CHECK(text::tokenize("a-b_c") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("stopword list pins the fixtures") {
    CHECK(text::is_stopword("to"));
    CHECK(text::is_stopword("in"));
    CHECK(text::is_stopword("the"));
    CHECK(text::is_stopword("should"));
    // month names never count as stopwords ("may" is deliberately excluded)
    CHECK_FALSE(text::is_stopword("may"));
    CHECK_FALSE(text::is_stopword("march"));
    CHECK_FALSE(text::is_stopword("user"));
    CHECK_FALSE(text::is_stopword("moved"));
    CHECK_FALSE(text::is_stopword("tokyo"));
}

TEST_CASE("content_words drops stopwords, keeps order and duplicates") {
    auto words = text::content_words("user moved to Tokyo in March");
    REQUIRE(words == std::vector<std::string>{"user", "moved", "tokyo", "march"});
    CHECK(text::content_words("the of and").empty());
    CHECK(text::content_words("echo echo") == std::vector<std::string>{"echo", "echo"});
}

TEST_CASE("estimate_tokens applies the safety factor and rounds up") {
    CHECK(text::estimate_tokens("one two three", 1.3) == 4);  // ceil(3.9)
    CHECK(text::estimate_tokens("", 1.3) == 0);
    CHECK(text::estimate_tokens("word", 1.0) == 1);
    CHECK(text::estimate_tokens("a  b\t c \n d", 1.0) == 4);
}

TEST_CASE("trim") {
    CHECK(text::trim("  x  ") == "x");
    CHECK(text::trim("\t\n") == "");
    CHECK(text::trim("x") == "x");
}
