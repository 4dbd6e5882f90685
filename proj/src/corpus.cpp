#include "alignkit/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace align {
namespace {

const std::set<std::string> kDifficulties = {"easy", "intermediate", "difficult"};
const std::set<std::string> kConstraintLevels = {"unconstrained", "simple", "strong"};

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_known_prompt_key(const std::string& k) {
    return k == "id" || k == "text" || k == "labels" || k == "quality" || k == "embedding";
}

}  // namespace

PromptRecord prompt_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::runtime_error("record is not an object");
    PromptRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.text = j.at("text").get<std::string>();
    if (rec.id.empty()) throw std::runtime_error("empty id");
    if (rec.text.empty()) throw std::runtime_error("empty text");
    if (j.contains("labels")) {
        const auto& l = j.at("labels");
        PromptLabels labels;
        labels.ability = l.value("ability", "");
        labels.domain = l.value("domain", "");
        labels.language = l.value("language", "");
        labels.difficulty = l.value("difficulty", "");
        labels.constraint_level = l.value("constraint_level", "");
        if (l.contains("attributes"))
            labels.attributes = l.at("attributes").get<std::vector<std::string>>();
        rec.labels = std::move(labels);
    }
    if (j.contains("quality")) rec.quality = j.at("quality").get<double>();
    if (j.contains("embedding"))
        rec.embedding = j.at("embedding").get<std::vector<double>>();
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!is_known_prompt_key(it.key())) rec.extra[it.key()] = it.value();
    return rec;
}

nlohmann::json prompt_to_json(const PromptRecord& rec) {
    nlohmann::json j = rec.extra;
    j["id"] = rec.id;
    j["text"] = rec.text;
    if (rec.labels) {
        nlohmann::json l;
        l["ability"] = rec.labels->ability;
        l["attributes"] = rec.labels->attributes;
        l["domain"] = rec.labels->domain;
        l["language"] = rec.labels->language;
        l["difficulty"] = rec.labels->difficulty;
        l["constraint_level"] = rec.labels->constraint_level;
        j["labels"] = std::move(l);
    }
    if (rec.quality) j["quality"] = *rec.quality;
    if (rec.embedding) j["embedding"] = *rec.embedding;
    return j;
}

void write_prompts(std::ostream& out, const std::vector<PromptRecord>& recs) {
    for (const auto& r : recs) out << prompt_to_json(r).dump() << "\n";
}

IngestResult ingest_prompts(std::istream& in) {
    IngestResult res;
    std::unordered_set<std::string> seen;
    std::optional<std::size_t> embed_dim;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        PromptRecord rec;
        try {
            rec = prompt_from_json(nlohmann::json::parse(line));
        } catch (const std::exception& e) {
            res.rejections.push_back({lineno, e.what()});
            continue;
        }
        if (!seen.insert(rec.id).second)
            throw std::runtime_error("duplicate prompt id: " + rec.id);
        if (rec.embedding) {
            if (!embed_dim) embed_dim = rec.embedding->size();
            if (rec.embedding->size() != *embed_dim) {
                std::ostringstream os;
                os << "embedding dimension " << rec.embedding->size()
                   << " differs from corpus dimension " << *embed_dim;
                res.rejections.push_back({lineno, os.str()});
                seen.erase(rec.id);
                continue;
            }
        }
        res.records.push_back(std::move(rec));
    }
    return res;
}

IngestResult ingest_prompts_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return ingest_prompts(f);
}

std::vector<std::string> validate_labels(const PromptRecord& rec) {
    std::vector<std::string> out;
    if (!rec.labels) return out;
    const auto& l = *rec.labels;
    auto need_tag = [&](const std::string& v, const char* field) {
        if (trimmed(v).empty()) out.push_back(std::string(field) + ": empty tag");
    };
    need_tag(l.ability, "ability");
    need_tag(l.domain, "domain");
    need_tag(l.language, "language");
    for (const auto& a : l.attributes) need_tag(a, "attributes");
    if (!kDifficulties.count(l.difficulty))
        out.push_back("difficulty: '" + l.difficulty + "' not in {easy, intermediate, difficult}");
    if (!kConstraintLevels.count(l.constraint_level))
        out.push_back("constraint_level: '" + l.constraint_level +
                      "' not in {unconstrained, simple, strong}");
    return out;
}

JudgedSample judged_from_json(const nlohmann::json& j) {
    JudgedSample s;
    s.id = j.value("id", "");
    if (j.contains("per_constraint"))
        s.per_constraint = j.at("per_constraint").get<std::vector<bool>>();
    if (j.contains("priority")) {
        s.priority = j.at("priority").get<std::vector<int>>();
        if (s.priority->size() != s.per_constraint.size())
            throw std::runtime_error("priority length differs from per_constraint for id " + s.id);
    }
    s.passed = j.value("passed", false);
    if (j.contains("gsb")) s.gsb = j.at("gsb").get<std::string>();
    if (j.contains("split")) s.split = j.at("split").get<std::string>();
    if (j.contains("score")) s.score = j.at("score").get<double>();
    return s;
}

std::vector<JudgedSample> ingest_judged(std::istream& in) {
    std::vector<JudgedSample> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trimmed(line).empty()) continue;
        try {
            out.push_back(judged_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<JudgedSample> ingest_judged_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return ingest_judged(f);
}

}  // namespace align
