#include <random>
#include <stdexcept>

#include "alignkit/pas.hpp"
#include "doctest.h"

using namespace align;

TEST_CASE("pas prompt embeds the user prompt between constant byte runs") {
    PasRequest req;
    req.user_prompt = "How do I tune a guitar?";
    const std::string built = build_pas_prompt(req);
    const auto pos = built.find(req.user_prompt);
    REQUIRE(pos != std::string::npos);
    const std::string prefix = built.substr(0, pos);
    const std::string suffix = built.substr(pos + req.user_prompt.size());

    CHECK(prefix.rfind("## Background\n", 0) == 0);
    CHECK(prefix.find("Only supplement user prompts, do not directly answer them") !=
          std::string::npos);
    CHECK(prefix.find("## Task") != std::string::npos);
    CHECK(prefix.find("<User prompt>:") != std::string::npos);
    CHECK(suffix.find("<Complementary information>:") != std::string::npos);

    // every byte outside the slot is identical across prompts
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        std::string p(1 + rng() % 40, 'x');
        for (auto& c : p) c = static_cast<char>('a' + rng() % 26);
        PasRequest r2;
        r2.user_prompt = p;
        const std::string b2 = build_pas_prompt(r2);
        CHECK(b2 == prefix + p + suffix);
    }

    CHECK_THROWS_AS(build_pas_prompt({}), std::invalid_argument);
}

TEST_CASE("word count") {
    CHECK(pas_word_count("") == 0);
    CHECK(pas_word_count("one") == 1);
    CHECK(pas_word_count("two words") == 2);
    CHECK(pas_word_count("  leading and   trailing  ") == 3);
    CHECK(pas_word_count("line\nbreaks\tcount") == 3);
    // unsegmented text: ceil(codepoints / 2); these are 5 three-byte codepoints
    CHECK(pas_word_count("\xe4\xbd\xa0\xe5\xa5\xbd\xe4\xb8\x96\xe7\x95\x8c\xe5\x95\x8a") == 3);
    // plain ASCII without whitespace stays at the token count
    CHECK(pas_word_count("abcd") == 1);
}

TEST_CASE("supplement verdict boundaries") {
    auto words = [](int n) {
        std::string s;
        for (int i = 0; i < n; ++i) s += (i ? " w" : "w");
        return s;
    };
    CHECK(validate_supplement(words(30)).verdict == SupplementVerdict::Ok);
    CHECK(validate_supplement(words(30)).word_count == 30);
    CHECK(validate_supplement(words(31)).verdict == SupplementVerdict::Warning);
    CHECK(validate_supplement(words(45)).verdict == SupplementVerdict::Warning);
    CHECK(validate_supplement(words(46)).verdict == SupplementVerdict::Violation);
    CHECK(validate_supplement("").verdict == SupplementVerdict::Ok);
}

TEST_CASE("answer markers force a violation") {
    const std::vector<std::string> markers{"The answer is", "Answer:"};
    CHECK(validate_supplement("the answer is 42", 30, 45, markers).verdict ==
          SupplementVerdict::Violation);
    CHECK(validate_supplement("ANSWER: done", 30, 45, markers).verdict ==
          SupplementVerdict::Violation);
    CHECK(validate_supplement("consider edge cases first", 30, 45, markers).verdict ==
          SupplementVerdict::Ok);
    // marker only triggers at the start
    CHECK(validate_supplement("note the answer is not needed here", 30, 45, markers)
              .verdict == SupplementVerdict::Ok);
}

TEST_CASE("augment joins prompt and supplement with one blank line") {
    StubCompletionClient client("Clarify tuning standard and string order.");
    auto res = augment(client, "How do I tune a guitar?");
    CHECK(res.supplement == "Clarify tuning standard and string order.");
    CHECK(res.augmented_prompt ==
          "How do I tune a guitar?\n\nClarify tuning standard and string order.");
    CHECK(res.check.verdict == SupplementVerdict::Ok);
    CHECK(res.check.word_count == 6);
}

TEST_CASE("augment wraps client failures") {
    class FailingClient : public CompletionClient {
    public:
        std::string complete(const std::string&) override {
            throw std::runtime_error("backend down");
        }
    };
    FailingClient client;
    CHECK_THROWS_WITH_AS(augment(client, "prompt"),
                         doctest::Contains("backend down"), std::runtime_error);
}
