#include "alignkit/merge.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace align {
namespace {

std::int64_t shape_elems(const std::vector<std::int64_t>& shape) {
    std::int64_t n = 1;
    for (auto d : shape) n *= d;
    return n;
}

std::string blob_path_for(const std::string& manifest_path) {
    return manifest_path + ".bin";
}

}  // namespace

void check_aligned(const std::vector<const WeightMap*>& maps) {
    if (maps.empty()) return;
    const WeightMap& ref = *maps[0];
    for (std::size_t m = 1; m < maps.size(); ++m) {
        const WeightMap& other = *maps[m];
        for (const auto& [name, t] : ref.tensors) {
            auto it = other.tensors.find(name);
            if (it == other.tensors.end())
                throw std::invalid_argument("misaligned maps: tensor '" + name +
                                            "' missing from map " + std::to_string(m));
            if (it->second.shape != t.shape)
                throw std::invalid_argument("misaligned maps: tensor '" + name +
                                            "' has a different shape in map " +
                                            std::to_string(m));
        }
        for (const auto& [name, t] : other.tensors)
            if (!ref.tensors.count(name))
                throw std::invalid_argument("misaligned maps: extra tensor '" + name +
                                            "' in map " + std::to_string(m));
    }
}

WeightMap linear_merge(const std::vector<WeightMap>& maps,
                       const std::vector<double>& weights) {
    if (maps.size() < 2) throw std::invalid_argument("need >= 2 maps");
    if (weights.size() != maps.size())
        throw std::invalid_argument("weights count differs from maps count");
    const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(wsum > 0)) throw std::invalid_argument("weight sum must be > 0");
    std::vector<const WeightMap*> ptrs;
    for (const auto& m : maps) ptrs.push_back(&m);
    check_aligned(ptrs);

    WeightMap out;
    out.metadata = maps[0].metadata;
    for (const auto& [name, ref] : maps[0].tensors) {
        Tensor t;
        t.shape = ref.shape;
        t.data.resize(ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            double acc = 0.0;
            for (std::size_t m = 0; m < maps.size(); ++m)
                acc += (weights[m] / wsum) *
                       static_cast<double>(maps[m].tensors.at(name).data[i]);
            t.data[i] = static_cast<float>(acc);
        }
        out.tensors.emplace(name, std::move(t));
    }
    return out;
}

WeightMap task_arithmetic(const WeightMap& base, const std::vector<WeightMap>& maps,
                          double lambda) {
    if (maps.empty()) throw std::invalid_argument("need >= 1 fine-tuned map");
    std::vector<const WeightMap*> ptrs{&base};
    for (const auto& m : maps) ptrs.push_back(&m);
    check_aligned(ptrs);

    WeightMap out;
    out.metadata = base.metadata;
    for (const auto& [name, bt] : base.tensors) {
        Tensor t;
        t.shape = bt.shape;
        t.data.resize(bt.size());
        for (std::size_t i = 0; i < bt.size(); ++i) {
            const double b = bt.data[i];
            double delta = 0.0;
            for (const auto& m : maps)
                delta += static_cast<double>(m.tensors.at(name).data[i]) - b;
            t.data[i] = static_cast<float>(b + lambda * delta);
        }
        out.tensors.emplace(name, std::move(t));
    }
    return out;
}

WeightMap model_stock(const WeightMap& base, const std::vector<WeightMap>& maps) {
    const std::size_t n = maps.size();
    if (n < 2) throw std::invalid_argument("model_stock needs >= 2 fine-tuned maps");
    std::vector<const WeightMap*> ptrs{&base};
    for (const auto& m : maps) ptrs.push_back(&m);
    check_aligned(ptrs);

    WeightMap out;
    out.metadata = base.metadata;
    for (const auto& [name, bt] : base.tensors) {
        const std::size_t sz = bt.size();
        std::vector<std::vector<double>> task(n, std::vector<double>(sz));
        std::vector<double> norm(n, 0.0);
        bool degenerate = false;
        for (std::size_t m = 0; m < n; ++m) {
            const auto& mt = maps[m].tensors.at(name);
            for (std::size_t i = 0; i < sz; ++i) {
                task[m][i] = static_cast<double>(mt.data[i]) -
                             static_cast<double>(bt.data[i]);
                norm[m] += task[m][i] * task[m][i];
            }
            norm[m] = std::sqrt(norm[m]);
            if (norm[m] == 0.0) degenerate = true;
        }

        double t_ratio = 1.0;  // forced when any task vector vanishes
        if (!degenerate) {
            double cos_sum = 0.0;
            std::size_t pairs = 0;
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a + 1; b < n; ++b) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < sz; ++i) dot += task[a][i] * task[b][i];
                    cos_sum += dot / (norm[a] * norm[b]);
                    ++pairs;
                }
            }
            const double cos = cos_sum / static_cast<double>(pairs);
            const double denom = 1.0 + (static_cast<double>(n) - 1.0) * cos;
            t_ratio = denom != 0.0 ? static_cast<double>(n) * cos / denom : 1.0;
            t_ratio = std::clamp(t_ratio, 0.0, 1.0);
        }

        Tensor t;
        t.shape = bt.shape;
        t.data.resize(sz);
        for (std::size_t i = 0; i < sz; ++i) {
            double avg = 0.0;
            for (std::size_t m = 0; m < n; ++m)
                avg += static_cast<double>(maps[m].tensors.at(name).data[i]);
            avg /= static_cast<double>(n);
            t.data[i] = static_cast<float>(t_ratio * avg +
                                           (1.0 - t_ratio) * static_cast<double>(bt.data[i]));
        }
        out.tensors.emplace(name, std::move(t));
    }
    return out;
}

std::map<std::string, TensorDiff> diff_report(const WeightMap& a, const WeightMap& b) {
    check_aligned({&a, &b});
    std::map<std::string, TensorDiff> out;
    for (const auto& [name, ta] : a.tensors) {
        const auto& tb = b.tensors.at(name);
        TensorDiff d;
        double sum = 0.0;
        for (std::size_t i = 0; i < ta.size(); ++i) {
            const double ad = std::abs(static_cast<double>(ta.data[i]) -
                                       static_cast<double>(tb.data[i]));
            d.max_abs = std::max(d.max_abs, ad);
            sum += ad;
        }
        d.mean_abs = ta.size() ? sum / ta.size() : 0.0;
        out.emplace(name, d);
    }
    return out;
}

void save_weight_map(const WeightMap& map, const std::string& path) {
    const std::string blob_path = blob_path_for(path);
    std::ofstream blob(blob_path, std::ios::binary);
    if (!blob) throw std::runtime_error("cannot write " + blob_path);

    nlohmann::json manifest;
    manifest["version"] = 1;
    manifest["dtype"] = "f32";
    manifest["byte_order"] = "little";
    manifest["metadata"] = map.metadata;
    manifest["tensors"] = nlohmann::json::array();
    std::uint64_t offset = 0;
    for (const auto& [name, t] : map.tensors) {
        if (static_cast<std::int64_t>(t.data.size()) != shape_elems(t.shape))
            throw std::runtime_error("tensor '" + name + "' data does not match shape");
        const std::uint64_t nbytes = t.data.size() * sizeof(float);
        blob.write(reinterpret_cast<const char*>(t.data.data()),
                   static_cast<std::streamsize>(nbytes));
        manifest["tensors"].push_back({{"name", name},
                                       {"shape", t.shape},
                                       {"offset", offset},
                                       {"nbytes", nbytes}});
        offset += nbytes;
    }
    if (!blob) throw std::runtime_error("write failed: " + blob_path);
    blob.close();

    std::ofstream mf(path);
    if (!mf) throw std::runtime_error("cannot write " + path);
    mf << manifest.dump(2) << "\n";
}

WeightMap load_weight_map(const std::string& path) {
    std::ifstream mf(path);
    if (!mf) throw std::runtime_error("cannot open " + path);
    nlohmann::json manifest = nlohmann::json::parse(mf);
    if (manifest.value("dtype", "") != "f32")
        throw std::runtime_error("unsupported dtype in " + path);

    std::ifstream blob(blob_path_for(path), std::ios::binary);
    if (!blob) throw std::runtime_error("cannot open " + blob_path_for(path));

    WeightMap map;
    if (manifest.contains("metadata"))
        map.metadata = manifest["metadata"].get<std::map<std::string, std::string>>();
    for (const auto& tj : manifest.at("tensors")) {
        Tensor t;
        t.shape = tj.at("shape").get<std::vector<std::int64_t>>();
        const std::uint64_t nbytes = tj.at("nbytes").get<std::uint64_t>();
        if (nbytes != shape_elems(t.shape) * sizeof(float))
            throw std::runtime_error("manifest byte length does not match shape");
        t.data.resize(nbytes / sizeof(float));
        blob.seekg(static_cast<std::streamoff>(tj.at("offset").get<std::uint64_t>()));
        blob.read(reinterpret_cast<char*>(t.data.data()),
                  static_cast<std::streamsize>(nbytes));
        if (!blob) throw std::runtime_error("blob read failed for tensor " +
                                            tj.at("name").get<std::string>());
        map.tensors.emplace(tj.at("name").get<std::string>(), std::move(t));
    }
    return map;
}

}  // namespace align
