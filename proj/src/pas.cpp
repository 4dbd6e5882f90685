#include "alignkit/pas.hpp"

#include <cctype>
#include <stdexcept>

namespace align {
namespace {

constexpr const char* kTemplatePrefix =
    "## Background\n"
    "\n"
    "You are an expert in enhancing user prompts, proficient in providing detailed "
    "supplements. When identifying areas in user prompts needing further elaboration, "
    "you offer precise additions to help the user understand the core intent of their "
    "question more deeply. Focus on providing general methods and strategies, not "
    "specific details.\n"
    "\n"
    "Note: Only supplement user prompts, do not directly answer them; keep "
    "supplementary content to around 30 words, and try not to exceed 30 words.\n"
    "\n"
    "## Task\n"
    "\n"
    "<User prompt>:\n"
    "\n";

constexpr const char* kTemplateSuffix =
    "\n"
    "\n"
    "<Complementary information>:\n";

bool starts_with_ci(const std::string& text, const std::string& marker) {
    if (marker.empty() || text.size() < marker.size()) return false;
    for (std::size_t i = 0; i < marker.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(text[i])) !=
            std::tolower(static_cast<unsigned char>(marker[i])))
            return false;
    return true;
}

}  // namespace

std::string build_pas_prompt(const PasRequest& req) {
    if (req.user_prompt.empty()) throw std::invalid_argument("empty user prompt");
    return std::string(kTemplatePrefix) + req.user_prompt + kTemplateSuffix;
}

int pas_word_count(const std::string& text) {
    int words = 0;
    bool in_word = false;
    bool saw_space = false;
    bool multibyte = false;
    int codepoints = 0;
    for (unsigned char c : text) {
        if ((c & 0xC0) != 0x80) ++codepoints;
        if (c >= 0x80) multibyte = true;
        const bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r';
        if (ws) {
            saw_space = saw_space || in_word;  // interior whitespace only
            in_word = false;
        } else {
            if (!in_word) ++words;
            in_word = true;
        }
    }
    if (multibyte && !saw_space && codepoints > 0)
        return (codepoints + 1) / 2;  // unsegmented text: chars/2 proxy
    return words;
}

SupplementCheck validate_supplement(const std::string& text, int soft_limit,
                                    int hard_limit,
                                    const std::vector<std::string>& answer_markers) {
    SupplementCheck check;
    check.word_count = pas_word_count(text);
    for (const auto& m : answer_markers) {
        if (starts_with_ci(text, m)) {
            check.verdict = SupplementVerdict::Violation;
            return check;
        }
    }
    if (check.word_count <= soft_limit)
        check.verdict = SupplementVerdict::Ok;
    else if (check.word_count <= hard_limit)
        check.verdict = SupplementVerdict::Warning;
    else
        check.verdict = SupplementVerdict::Violation;
    return check;
}

PasResult augment(CompletionClient& client, const std::string& user_prompt,
                  int soft_limit, int hard_limit,
                  const std::vector<std::string>& answer_markers) {
    PasRequest req;
    req.user_prompt = user_prompt;
    const std::string pas_prompt = build_pas_prompt(req);
    PasResult res;
    try {
        res.supplement = client.complete(pas_prompt);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("completion client failed: ") + e.what());
    }
    res.check = validate_supplement(res.supplement, soft_limit, hard_limit, answer_markers);
    res.augmented_prompt = user_prompt + "\n\n" + res.supplement;
    return res;
}

}  // namespace align
