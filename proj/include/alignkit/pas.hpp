#pragma once
// Prompt Augmentation System client: bit-exact request construction,
// supplement length/intent validation, and augmented-prompt assembly over
// a pluggable completion source.

#include <string>
#include <vector>

namespace align {

struct PasRequest {
    std::string user_prompt;
    std::string template_version = "v1";
};

enum class SupplementVerdict { Ok, Warning, Violation };

struct SupplementCheck {
    SupplementVerdict verdict = SupplementVerdict::Ok;
    int word_count = 0;
};

struct PasResult {
    std::string supplement;
    std::string augmented_prompt;  // user prompt + blank line + supplement
    SupplementCheck check;
};

// Completion-source contract; tests ship a fixed-output stub.
class CompletionClient {
public:
    virtual ~CompletionClient() = default;
    virtual std::string complete(const std::string& prompt) = 0;
};

class StubCompletionClient : public CompletionClient {
public:
    explicit StubCompletionClient(std::string supplement)
        : supplement_(std::move(supplement)) {}
    std::string complete(const std::string&) override { return supplement_; }

private:
    std::string supplement_;
};

// The documented request template with `{prompt}` substituted; every
// byte outside the substitution slot is constant across inputs.
std::string build_pas_prompt(const PasRequest& req);

// Whitespace token count; text without any whitespace (e.g. unsegmented
// CJK) is counted as ceil(codepoints / 2).
int pas_word_count(const std::string& text);

// ok if count <= soft_limit, warning if <= hard_limit, violation above
// or when the text opens with a denylisted answer marker.
SupplementCheck validate_supplement(const std::string& text, int soft_limit = 30,
                                    int hard_limit = 45,
                                    const std::vector<std::string>& answer_markers = {});

PasResult augment(CompletionClient& client, const std::string& user_prompt,
                  int soft_limit = 30, int hard_limit = 45,
                  const std::vector<std::string>& answer_markers = {});

}  // namespace align
