#pragma once
// Model merging over named weight maps: Linear, Task Arithmetic and
// Model Stock, plus a manifest+blob container with bit-exact round trip.
// Stored precision is f32; all merge arithmetic runs in f64.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace align {

struct Tensor {
    std::vector<std::int64_t> shape;
    std::vector<float> data;  // row-major

    std::size_t size() const { return data.size(); }
};

struct WeightMap {
    std::map<std::string, Tensor> tensors;
    std::map<std::string, std::string> metadata;
};

// Throws naming the first offending tensor unless all maps share the
// same names and shapes.
void check_aligned(const std::vector<const WeightMap*>& maps);

// Per-tensor combination with weights normalized to sum 1.
WeightMap linear_merge(const std::vector<WeightMap>& maps,
                       const std::vector<double>& weights);

// base + lambda * sum_i (map_i - base), per tensor.
WeightMap task_arithmetic(const WeightMap& base, const std::vector<WeightMap>& maps,
                          double lambda);

// Per tensor: task vectors v_i = map_i - base; cos = mean pairwise cosine;
// t = N*cos / (1 + (N-1)*cos) clamped to [0,1] (t = 1 when any v_i is
// zero); result = t*mean(map_i) + (1-t)*base.
WeightMap model_stock(const WeightMap& base, const std::vector<WeightMap>& maps);

struct TensorDiff {
    double max_abs = 0.0;
    double mean_abs = 0.0;
};

std::map<std::string, TensorDiff> diff_report(const WeightMap& a, const WeightMap& b);

// Container: `path` is a JSON manifest (tensor name -> shape, dtype=f32,
// byte offset and length into the blob); the blob lives at `path` + ".bin"
// as raw little-endian f32.
void save_weight_map(const WeightMap& map, const std::string& path);
WeightMap load_weight_map(const std::string& path);

}  // namespace align
