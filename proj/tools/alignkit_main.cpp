// alignkit: one binary, one subcommand per pipeline. Every run writes a
// report carrying the tool name, seed, config and input digests.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "alignkit/ckpt.hpp"
#include "alignkit/corpus.hpp"
#include "alignkit/diversity.hpp"
#include "alignkit/merge.hpp"
#include "alignkit/metrics.hpp"
#include "alignkit/packing.hpp"
#include "alignkit/pas.hpp"
#include "alignkit/prefdata.hpp"
#include "alignkit/report.hpp"
#include "alignkit/rlhf.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

std::vector<json> read_jsonl(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::vector<json> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(json::parse(line));
        } catch (const json::parse_error& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

json read_json(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return json::parse(f);
}

void emit(const std::string& out, const std::string& tool, std::uint64_t seed,
          const json& config, const std::vector<std::string>& inputs, json results) {
    json rep = align::make_report(tool, seed, config, inputs);
    rep["results"] = std::move(results);
    align::write_json_file(out, rep);
}

struct CorpusEmbeddings {
    std::vector<align::PromptRecord> records;
    std::vector<std::vector<double>> embeddings;
};

CorpusEmbeddings load_embedded_corpus(const std::string& path) {
    auto ingest = align::ingest_prompts_file(path);
    if (!ingest.rejections.empty())
        throw std::runtime_error(path + ": rejected line " +
                                 std::to_string(ingest.rejections.front().line) + ": " +
                                 ingest.rejections.front().reason);
    CorpusEmbeddings ce;
    ce.records = std::move(ingest.records);
    for (const auto& r : ce.records) {
        if (!r.embedding)
            throw std::runtime_error("record '" + r.id + "' has no embedding");
        ce.embeddings.push_back(*r.embedding);
    }
    return ce;
}

align::Projection load_projection(const std::string& path) {
    json j = read_json(path);
    align::Projection p;
    p.out_dim = j.at("out_dim").get<std::size_t>();
    p.in_dim = j.at("in_dim").get<std::size_t>();
    p.matrix = j.at("matrix").get<std::vector<double>>();
    if (j.contains("margin")) p.margin = j["margin"].get<double>();
    if (p.matrix.size() != p.out_dim * p.in_dim)
        throw std::runtime_error(path + ": matrix size does not match dimensions");
    return p;
}

json projection_to_json(const align::Projection& p) {
    return json{{"out_dim", p.out_dim},
                {"in_dim", p.in_dim},
                {"matrix", p.matrix},
                {"margin", p.margin}};
}

int run_pack(const std::string& in, const std::string& out, std::int64_t capacity,
             bool with_util, std::uint64_t seed) {
    std::vector<align::SeqLen> lengths;
    for (const auto& j : read_jsonl(in))
        lengths.push_back({j.at("id").get<std::string>(), j.at("tokens").get<std::int64_t>()});
    auto plan = align::plan_packs(lengths, capacity);
    json packs = json::array();
    for (const auto& p : plan.packs) {
        json ids = json::array(), offs = json::array();
        for (const auto& s : p.seqs) ids.push_back(s.id);
        for (auto o : p.offsets) offs.push_back(o);
        packs.push_back(json{{"ids", ids}, {"offsets", offs}});
    }
    json results{{"capacity", plan.capacity}, {"num_packs", plan.packs.size()}, {"packs", packs}};
    if (with_util) {
        auto u = align::utilization(plan);
        results["utilization"] = {{"packed", u.packed}, {"padded_baseline", u.padded_baseline}};
    }
    emit(out, "pack", seed, json{{"capacity", capacity}, {"report", with_util}}, {in}, results);
    return 0;
}

int run_plan_ckpt(const std::string& out, int layers, double acts, int hidden,
                  bool curve, std::uint64_t seed) {
    align::CheckpointConfig cfg{layers, acts, hidden};
    auto plan = align::optimal_k(cfg, curve);
    json results{{"k", plan.k}, {"memory_units", plan.memory_units}};
    if (curve) {
        json c = json::array();
        for (const auto& [k, m] : plan.curve) c.push_back(json{{"k", k}, {"memory", m}});
        results["curve"] = c;
    }
    emit(out, "plan-ckpt", seed,
         json{{"layers", layers}, {"acts_per_layer", acts}, {"hidden", hidden}, {"curve", curve}},
         {}, results);
    return 0;
}

int run_dedup(const std::string& in, const std::string& proj_path, const std::string& out,
              std::vector<double> thresholds, std::size_t budget, std::uint64_t seed) {
    auto ce = load_embedded_corpus(in);
    align::Projection proj = proj_path.empty()
        ? align::identity_projection(ce.embeddings.empty() ? 0 : ce.embeddings[0].size())
        : load_projection(proj_path);
    auto kept = align::layered_select(ce.embeddings, proj, thresholds, budget);
    json ids = json::array();
    for (auto i : kept) ids.push_back(ce.records[i].id);
    std::vector<std::string> inputs{in};
    if (!proj_path.empty()) inputs.push_back(proj_path);
    emit(out, "dedup", seed,
         json{{"thresholds", thresholds}, {"budget", budget}, {"projection", proj_path}},
         inputs, json{{"kept", ids}, {"kept_count", kept.size()}});
    return 0;
}

int run_mine_triplets(const std::string& in, const std::string& out, int k_coarse,
                      int k_fine, double sim_hi, double sim_lo, int cap,
                      std::uint64_t seed) {
    auto ce = load_embedded_corpus(in);
    auto assign = align::cluster(ce.embeddings, k_coarse, k_fine, seed);
    std::vector<std::vector<std::string>> tokens;
    for (const auto& r : ce.records) tokens.push_back(align::tokenize(r.text));
    auto triplets = align::mine_triplets(tokens, assign, sim_hi, sim_lo, cap, seed);
    json arr = json::array();
    for (const auto& t : triplets)
        arr.push_back(json{{"anchor", ce.records[t.anchor].id},
                           {"positive", ce.records[t.positive].id},
                           {"negative", ce.records[t.negative].id}});
    emit(out, "mine-triplets", seed,
         json{{"k_coarse", k_coarse}, {"k_fine", k_fine}, {"sim_hi", sim_hi},
              {"sim_lo", sim_lo}, {"cap", cap}},
         {in}, json{{"triplets", arr}, {"count", triplets.size()}});
    return 0;
}

int run_train_embed(const std::string& in, const std::string& out,
                    const std::string& proj_out, int k_coarse, int k_fine,
                    double sim_hi, double sim_lo, int cap, std::size_t out_dim,
                    double margin, double step, int epochs, std::uint64_t seed) {
    auto ce = load_embedded_corpus(in);
    auto assign = align::cluster(ce.embeddings, k_coarse, k_fine, seed);
    std::vector<std::vector<std::string>> tokens;
    for (const auto& r : ce.records) tokens.push_back(align::tokenize(r.text));
    auto triplets = align::mine_triplets(tokens, assign, sim_hi, sim_lo, cap, seed);
    if (triplets.empty()) throw std::runtime_error("no triplets mined; nothing to train on");
    if (out_dim == 0) out_dim = ce.embeddings[0].size();
    auto trained = align::train_projection(triplets, ce.embeddings, out_dim, margin,
                                           step, epochs, seed);
    if (!proj_out.empty())
        align::write_json_file(proj_out, projection_to_json(trained.projection));
    const double acc = align::triplet_accuracy(trained.projection, triplets, ce.embeddings);
    emit(out, "train-embed", seed,
         json{{"k_coarse", k_coarse}, {"k_fine", k_fine}, {"sim_hi", sim_hi},
              {"sim_lo", sim_lo}, {"cap", cap}, {"out_dim", out_dim},
              {"margin", margin}, {"step", step}, {"epochs", epochs},
              {"projection_out", proj_out}},
         {in},
         json{{"triplet_count", triplets.size()}, {"final_loss", trained.final_loss},
              {"train_accuracy", acc}});
    return 0;
}

int run_quality_pairs(const std::string& in, const std::string& out, int anchors,
                      std::uint64_t seed) {
    json j = read_json(in);
    std::map<std::string, std::vector<std::string>> buckets;
    for (const auto& [name, ids] : j.items())
        buckets[name] = ids.get<std::vector<std::string>>();
    auto pairs = align::quality_anchor_pairs(buckets, anchors, seed);
    json arr = json::array();
    for (const auto& [cand, anchor] : pairs)
        arr.push_back(json{{"candidate", cand}, {"anchor", anchor}});
    emit(out, "quality-pairs", seed, json{{"anchors_per_bucket", anchors}}, {in},
         json{{"pairs", arr}, {"count", pairs.size()}});
    return 0;
}

int run_quality_agg(const std::string& in, const std::string& out, std::uint64_t seed) {
    std::vector<std::pair<std::string, align::Outcome>> judgments;
    for (const auto& j : read_jsonl(in)) {
        const std::string o = j.at("outcome").get<std::string>();
        align::Outcome outcome;
        if (o == "win") outcome = align::Outcome::Win;
        else if (o == "tie") outcome = align::Outcome::Tie;
        else if (o == "loss") outcome = align::Outcome::Loss;
        else throw std::runtime_error("unknown outcome '" + o + "'");
        judgments.emplace_back(j.at("candidate").get<std::string>(), outcome);
    }
    auto scores = align::aggregate_quality(judgments);
    json sj = json::object();
    for (const auto& [cand, s] : scores) sj[cand] = s;
    emit(out, "quality-agg", seed, json::object(), {in}, json{{"scores", sj}});
    return 0;
}

int run_pref_filter(const std::string& in, const std::string& out, double threshold,
                    std::uint64_t seed) {
    json groups = json::array();
    std::size_t before = 0, after = 0;
    for (const auto& j : read_jsonl(in)) {
        auto g = align::response_group_from_json(j);
        before += g.responses.size();
        auto filtered = align::filter_similar_responses(g, threshold);
        after += filtered.responses.size();
        groups.push_back(align::response_group_to_json(filtered));
    }
    emit(out, "pref-filter", seed, json{{"threshold", threshold}}, {in},
         json{{"groups", groups}, {"responses_in", before}, {"responses_out", after}});
    return 0;
}

int run_pref_assemble(const std::string& in, const std::string& out, bool all_pairs,
                      std::uint64_t seed) {
    json records = json::array();
    for (const auto& j : read_jsonl(in)) {
        auto g = align::annotated_group_from_json(j);
        for (const auto& r : align::assemble_preferences(g, all_pairs))
            records.push_back(align::preference_to_json(r));
    }
    emit(out, "pref-assemble", seed, json{{"all_pairs", all_pairs}}, {in},
         json{{"preferences", records}, {"count", records.size()}});
    return 0;
}

int run_grad_check(const std::string& out, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(-3.0, 3.0), ua(0.0, 2.0), uh(-1.0, 1.0);
    const double h = 1e-6;
    double max_err = 0.0;
    for (int t = 0; t < trials; ++t) {
        align::RewardPair p;
        p.r_w = ur(rng);
        p.r_l = ur(rng);
        p.rhat_w = uh(rng);
        p.rhat_l = uh(rng);
        p.alpha = ua(rng);
        auto res = align::reward_loss(p);
        auto at = [&](double rw, double rl) {
            align::RewardPair q = p;
            q.r_w = rw;
            q.r_l = rl;
            return align::reward_loss(q).loss;
        };
        const double fd_w = (at(p.r_w + h, p.r_l) - at(p.r_w - h, p.r_l)) / (2 * h);
        const double fd_l = (at(p.r_w, p.r_l + h) - at(p.r_w, p.r_l - h)) / (2 * h);
        max_err = std::max({max_err, std::abs(res.d_rw - fd_w), std::abs(res.d_rl - fd_l)});
    }
    const bool pass = max_err < 1e-5;
    emit(out, "grad-check", seed, json{{"trials", trials}, {"step", h}}, {},
         json{{"max_abs_error", max_err}, {"pass", pass}});
    return pass ? 0 : 1;
}

int run_kl(const std::string& in, const std::string& out, int k, std::uint64_t seed) {
    json values = json::array();
    for (const auto& j : read_jsonl(in)) {
        auto pol = j.at("policy").get<std::vector<double>>();
        auto ref = j.at("ref").get<std::vector<double>>();
        values.push_back(align::topk_kl(pol, ref, k));
    }
    emit(out, "kl", seed, json{{"k", k}}, {in},
         json{{"kl", values}, {"rows", values.size()}});
    return 0;
}

int run_grpo_adv(const std::string& in, const std::string& out, std::uint64_t seed) {
    json groups = json::array();
    for (const auto& j : read_jsonl(in))
        groups.push_back(align::grpo_advantages(j.get<std::vector<double>>()));
    emit(out, "grpo-adv", seed, json::object(), {in}, json{{"advantages", groups}});
    return 0;
}

int run_merge(const std::string& method, const std::string& base,
              const std::vector<std::string>& ins, const std::string& out,
              const std::string& report, double lambda,
              const std::vector<double>& weights, std::uint64_t seed) {
    std::vector<align::WeightMap> maps;
    for (const auto& p : ins) maps.push_back(align::load_weight_map(p));
    align::WeightMap merged;
    if (method == "linear") {
        std::vector<double> w = weights;
        if (w.empty()) w.assign(maps.size(), 1.0);
        merged = align::linear_merge(maps, w);
    } else if (method == "task-arith") {
        if (base.empty()) throw std::runtime_error("task-arith requires --base");
        merged = align::task_arithmetic(align::load_weight_map(base), maps, lambda);
    } else if (method == "stock") {
        if (base.empty()) throw std::runtime_error("stock requires --base");
        merged = align::model_stock(align::load_weight_map(base), maps);
    } else {
        throw std::runtime_error("unknown merge method '" + method + "'");
    }
    align::save_weight_map(merged, out);
    if (!report.empty()) {
        std::vector<std::string> inputs = ins;
        if (!base.empty()) inputs.push_back(base);
        emit(report, "merge", seed,
             json{{"method", method}, {"lambda", lambda}, {"weights", weights},
                  {"base", base}, {"out", out}},
             inputs,
             json{{"tensors", merged.tensors.size()},
                  {"output_digest", align::digest_file(out)}});
    }
    return 0;
}

int run_metrics(const std::string& kind, const std::string& in, const std::string& out,
                std::uint64_t seed) {
    auto samples = align::ingest_judged_file(in);
    json results;
    if (kind == "pass") {
        auto r = align::pass_rate(samples);
        results = {{"value", r.value}, {"numerator", r.numerator}, {"denominator", r.denominator}};
    } else if (kind == "gsb") {
        auto r = align::gsb_delta(samples);
        results = {{"value", r.value}, {"breakdown", r.breakdown}};
    } else if (kind == "constraints") {
        auto m = align::constraint_metrics(samples);
        results = {{"csr", m.csr}, {"isr", m.isr}, {"psr", m.psr}};
    } else if (kind == "fb") {
        auto r = align::fb_split_scores(samples);
        results = {{"error_correction", r.error_correction},
                   {"response_maintenance", r.response_maintenance},
                   {"average", r.average}};
    } else {
        throw std::runtime_error("unknown metrics kind '" + kind + "'");
    }
    emit(out, "metrics", seed, json{{"kind", kind}}, {in}, results);
    return 0;
}

int run_pas(const std::string& prompt, const std::string& supplement,
            const std::string& out, std::uint64_t seed) {
    align::StubCompletionClient client(supplement);
    auto res = align::augment(client, prompt);
    const char* verdict = res.check.verdict == align::SupplementVerdict::Ok ? "ok"
                          : res.check.verdict == align::SupplementVerdict::Warning
                              ? "warning"
                              : "violation";
    emit(out, "pas", seed, json{{"prompt", prompt}, {"supplement", supplement}}, {},
         json{{"supplement", res.supplement},
              {"augmented_prompt", res.augmented_prompt},
              {"word_count", res.check.word_count},
              {"verdict", verdict}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alignment data and training toolkit"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "global RNG seed")->capture_default_str();

    // pack
    std::string pack_in, pack_out;
    std::int64_t pack_capacity = 0;
    bool pack_report = false;
    auto* pack = app.add_subcommand("pack", "first-fit-decreasing sample packing");
    pack->add_option("--in", pack_in)->required();
    pack->add_option("--out", pack_out)->required();
    pack->add_option("--capacity", pack_capacity)->required();
    pack->add_flag("--report", pack_report, "include utilization numbers");

    // plan-ckpt
    std::string ckpt_out;
    int ckpt_layers = 1, ckpt_hidden = 1;
    double ckpt_acts = 1.0;
    bool ckpt_curve = false;
    auto* ckpt = app.add_subcommand("plan-ckpt", "gradient checkpointing span");
    ckpt->add_option("--out", ckpt_out)->required();
    ckpt->add_option("--layers", ckpt_layers)->required();
    ckpt->add_option("--acts-per-layer", ckpt_acts)->required();
    ckpt->add_option("--hidden", ckpt_hidden)->capture_default_str();
    ckpt->add_flag("--curve", ckpt_curve);

    // dedup
    std::string dedup_in, dedup_out, dedup_proj;
    std::vector<double> dedup_thresholds;
    std::size_t dedup_budget = 0;
    auto* dedup = app.add_subcommand("dedup", "layered near-duplicate selection");
    dedup->add_option("--in", dedup_in)->required();
    dedup->add_option("--out", dedup_out)->required();
    dedup->add_option("--proj", dedup_proj, "projection file (identity if absent)");
    dedup->add_option("--thresholds", dedup_thresholds)->required()->delimiter(',');
    dedup->add_option("--budget", dedup_budget)->required();

    // mine-triplets
    std::string mt_in, mt_out;
    int mt_kc = 2, mt_kf = 2, mt_cap = 100;
    double mt_hi = 0.6, mt_lo = 0.2;
    auto* mt = app.add_subcommand("mine-triplets", "hard positive/negative mining");
    mt->add_option("--in", mt_in)->required();
    mt->add_option("--out", mt_out)->required();
    mt->add_option("--k-coarse", mt_kc)->capture_default_str();
    mt->add_option("--k-fine", mt_kf)->capture_default_str();
    mt->add_option("--sim-hi", mt_hi)->capture_default_str();
    mt->add_option("--sim-lo", mt_lo)->capture_default_str();
    mt->add_option("--cap", mt_cap)->capture_default_str();

    // train-embed
    std::string te_in, te_out, te_proj_out;
    int te_kc = 2, te_kf = 2, te_cap = 100, te_epochs = 200;
    double te_hi = 0.6, te_lo = 0.2, te_margin = 1.0, te_step = 0.01;
    std::size_t te_out_dim = 0;
    auto* te = app.add_subcommand("train-embed", "triplet-loss projection training");
    te->add_option("--in", te_in)->required();
    te->add_option("--out", te_out)->required();
    te->add_option("--proj-out", te_proj_out, "projection file destination");
    te->add_option("--k-coarse", te_kc)->capture_default_str();
    te->add_option("--k-fine", te_kf)->capture_default_str();
    te->add_option("--sim-hi", te_hi)->capture_default_str();
    te->add_option("--sim-lo", te_lo)->capture_default_str();
    te->add_option("--cap", te_cap)->capture_default_str();
    te->add_option("--out-dim", te_out_dim, "0 keeps the input dimension");
    te->add_option("--margin", te_margin)->capture_default_str();
    te->add_option("--step", te_step)->capture_default_str();
    te->add_option("--epochs", te_epochs)->capture_default_str();

    // quality-pairs
    std::string qp_in, qp_out;
    int qp_anchors = 3;
    auto* qp = app.add_subcommand("quality-pairs", "anchor comparison pairs per bucket");
    qp->add_option("--in", qp_in)->required();
    qp->add_option("--out", qp_out)->required();
    qp->add_option("--anchors", qp_anchors)->capture_default_str();

    // quality-agg
    std::string qa_in, qa_out;
    auto* qa = app.add_subcommand("quality-agg", "aggregate win/tie/loss judgments");
    qa->add_option("--in", qa_in)->required();
    qa->add_option("--out", qa_out)->required();

    // pref-filter
    std::string pf_in, pf_out;
    double pf_threshold = 0.9;
    auto* pf = app.add_subcommand("pref-filter", "ROUGE-L near-duplicate response filter");
    pf->add_option("--in", pf_in)->required();
    pf->add_option("--out", pf_out)->required();
    pf->add_option("--threshold", pf_threshold)->capture_default_str();

    // pref-assemble
    std::string pa_in, pa_out;
    bool pa_all = false;
    auto* pa = app.add_subcommand("pref-assemble", "preference records from rankings");
    pa->add_option("--in", pa_in)->required();
    pa->add_option("--out", pa_out)->required();
    pa->add_flag("--all-pairs", pa_all);

    // grad-check
    std::string gc_out;
    int gc_trials = 1000;
    auto* gc = app.add_subcommand("grad-check", "finite-difference gradient audit");
    gc->add_option("--out", gc_out)->required();
    gc->add_option("--trials", gc_trials)->capture_default_str();

    // kl
    std::string kl_in, kl_out;
    int kl_k = align::kDefaultTopK;
    auto* kl = app.add_subcommand("kl", "top-K restricted KL over logit rows");
    kl->add_option("--in", kl_in)->required();
    kl->add_option("--out", kl_out)->required();
    kl->add_option("--k", kl_k)->capture_default_str();

    // grpo-adv
    std::string ga_in, ga_out;
    auto* ga = app.add_subcommand("grpo-adv", "group-normalized advantages");
    ga->add_option("--in", ga_in)->required();
    ga->add_option("--out", ga_out)->required();

    // merge
    std::string mg_method, mg_base, mg_out, mg_report;
    std::vector<std::string> mg_in;
    std::vector<double> mg_weights;
    double mg_lambda = 1.0;
    auto* mg = app.add_subcommand("merge", "weight-map merging");
    mg->add_option("--method", mg_method)->required()
        ->check(CLI::IsMember({"linear", "task-arith", "stock"}));
    mg->add_option("--base", mg_base);
    mg->add_option("--in", mg_in)->required()->delimiter(',');
    mg->add_option("--out", mg_out)->required();
    mg->add_option("--report", mg_report, "report file destination");
    mg->add_option("--lambda", mg_lambda)->capture_default_str();
    mg->add_option("--weights", mg_weights)->delimiter(',');

    // metrics
    std::string me_kind, me_in, me_out;
    auto* me = app.add_subcommand("metrics", "evaluation aggregations");
    me->add_option("--kind", me_kind)->required()
        ->check(CLI::IsMember({"pass", "gsb", "constraints", "fb"}));
    me->add_option("--in", me_in)->required();
    me->add_option("--out", me_out)->required();

    // pas
    std::string ps_prompt, ps_out;
    std::string ps_supplement = "Consider definitions, constraints and edge cases.";
    auto* ps = app.add_subcommand("pas", "prompt augmentation via the stub client");
    ps->add_option("--prompt", ps_prompt)->required();
    ps->add_option("--out", ps_out)->required();
    ps->add_option("--supplement", ps_supplement, "stub client output")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*pack) return run_pack(pack_in, pack_out, pack_capacity, pack_report, seed);
        if (*ckpt)
            return run_plan_ckpt(ckpt_out, ckpt_layers, ckpt_acts, ckpt_hidden, ckpt_curve, seed);
        if (*dedup)
            return run_dedup(dedup_in, dedup_proj, dedup_out, dedup_thresholds, dedup_budget, seed);
        if (*mt) return run_mine_triplets(mt_in, mt_out, mt_kc, mt_kf, mt_hi, mt_lo, mt_cap, seed);
        if (*te)
            return run_train_embed(te_in, te_out, te_proj_out, te_kc, te_kf, te_hi, te_lo,
                                   te_cap, te_out_dim, te_margin, te_step, te_epochs, seed);
        if (*qp) return run_quality_pairs(qp_in, qp_out, qp_anchors, seed);
        if (*qa) return run_quality_agg(qa_in, qa_out, seed);
        if (*pf) return run_pref_filter(pf_in, pf_out, pf_threshold, seed);
        if (*pa) return run_pref_assemble(pa_in, pa_out, pa_all, seed);
        if (*gc) return run_grad_check(gc_out, gc_trials, seed);
        if (*kl) return run_kl(kl_in, kl_out, kl_k, seed);
        if (*ga) return run_grpo_adv(ga_in, ga_out, seed);
        if (*mg)
            return run_merge(mg_method, mg_base, mg_in, mg_out, mg_report, mg_lambda,
                             mg_weights, seed);
        if (*me) return run_metrics(me_kind, me_in, me_out, seed);
        if (*ps) return run_pas(ps_prompt, ps_supplement, ps_out, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
