#pragma once
// Canonical data model and ingestion for prompts, responses and judged
// samples. All record files are UTF-8, line-delimited JSON.

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace align {

struct PromptLabels {
    std::string ability;
    std::vector<std::string> attributes;
    std::string domain;
    std::string language;
    std::string difficulty;        // easy | intermediate | difficult
    std::string constraint_level;  // unconstrained | simple | strong
};

struct PromptRecord {
    std::string id;
    std::string text;
    std::optional<PromptLabels> labels;
    std::optional<double> quality;  // in [0,1]
    std::optional<std::vector<double>> embedding;
    // Unknown fields are kept verbatim and re-emitted on serialization.
    nlohmann::json extra = nlohmann::json::object();
};

struct SamplingParams {
    double temperature = 1.0;
    double top_p = 0.99;
    int top_k = 50;
};

struct ResponseRecord {
    std::string text;
    std::string source;  // model identifier
    SamplingParams sampling;
};

struct JudgedSample {
    std::string id;
    std::vector<bool> per_constraint;
    std::optional<std::vector<int>> priority;  // aligned with per_constraint
    bool passed = false;
    std::optional<std::string> gsb;    // good | same | bad
    std::optional<std::string> split;  // error_correction | response_maintenance
    std::optional<double> score;       // in [0,1]
};

struct IngestRejection {
    std::size_t line = 0;  // 1-based
    std::string reason;
};

struct IngestResult {
    std::vector<PromptRecord> records;
    std::vector<IngestRejection> rejections;
};

// Parses line-delimited prompt records. Malformed lines are recorded as
// rejections (carrying the line number); a duplicate id aborts with an
// error naming the id. If any record declares an embedding, the first one
// seen fixes the corpus embedding dimension.
IngestResult ingest_prompts(std::istream& in);
IngestResult ingest_prompts_file(const std::string& path);

// Returns one human-readable violation per broken PromptLabels invariant;
// empty iff the labels (when present) are valid.
std::vector<std::string> validate_labels(const PromptRecord& rec);

PromptRecord prompt_from_json(const nlohmann::json& j);
nlohmann::json prompt_to_json(const PromptRecord& rec);
void write_prompts(std::ostream& out, const std::vector<PromptRecord>& recs);

JudgedSample judged_from_json(const nlohmann::json& j);
std::vector<JudgedSample> ingest_judged(std::istream& in);
std::vector<JudgedSample> ingest_judged_file(const std::string& path);

}  // namespace align
