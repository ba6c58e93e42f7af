#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "microdiff/rng.hpp"

namespace microdiff::nn {

// Channel-major activation tensor over a 2D/3D spatial grid (x-fastest),
// v[c * nsp + s].
struct Tensor {
  int ch = 1;
  int dims = 2;
  std::array<int, 3> sp{1, 1, 1};
  std::vector<double> v;

  Tensor() = default;
  Tensor(int ch_, int dims_, std::array<int, 3> sp_)
      : ch(ch_), dims(dims_), sp(sp_),
        v(static_cast<std::size_t>(ch_) * sp_[0] * sp_[1] * sp_[2], 0.0) {}
  int nsp() const { return sp[0] * sp[1] * sp[2]; }
};

// Network shape descriptor. Channel widths grow per level; the last level
// is the bottleneck. Spatial extents must be divisible by 2^(levels-1).
struct Architecture {
  int dims = 2;
  int in_channels = 1;
  std::vector<int> widths = {16, 32, 64};
  int blocks_per_level = 2;
  int emb_dim = 64;
  int num_labels = 0;  // real labels; index num_labels is the reserved null label
  int norm_groups = 8;
  bool attention = false;
  bool circular_pad = true;
};

// ---- layer descriptors (parameter slices into the flat vector) ----

struct ConvLayer {
  int cin = 0, cout = 0, k = 3, stride = 1, dims = 2;
  bool circular = true;
  std::size_t w_off = 0, b_off = 0;
  int kvol() const;
  std::size_t w_size() const { return static_cast<std::size_t>(cout) * cin * kvol(); }
};

struct NormLayer {
  int ch = 0, groups = 1;
  std::size_t g_off = 0, b_off = 0;
};

struct DenseLayer {
  int in = 0, out = 0;
  std::size_t w_off = 0, b_off = 0;
};

// ---- per-evaluation caches ----

struct ConvCache {
  Tensor x;
};
struct NormCache {
  Tensor x;
  std::vector<double> mean, istd;
};
struct ActCache {
  Tensor x;
};

struct ResBlockLayers {
  NormLayer gn1;
  ConvLayer conv1;
  DenseLayer temb_proj;
  NormLayer gn2;
  ConvLayer conv2;
  ConvLayer shortcut;  // 1x1, present only when cin != cout
  bool has_shortcut = false;
};

struct ResBlockCache {
  NormCache n1, n2;
  ActCache a1, a2;
  ConvCache c1, c2, sc;
};

struct AttnLayers {
  NormLayer norm;
  DenseLayer wq, wk, wv, wp;  // 1x1 projections over channels
  int ch = 0;
};

struct AttnCache {
  NormCache n;
  Tensor xn, q, k, v, o;
  std::vector<double> attn;  // n x n row-softmax matrix
};

struct EvalCache;  // defined in nn.cpp

// Standard sinusoidal position embedding: [sin(t w_j), cos(t w_j)] pairs,
// w_j geometric from 1 down to 1/10000. dim must be even and >= 2.
std::vector<double> sinusoidal_embedding(int t, int dim);

// Encoder/decoder noise-prediction network with residual blocks,
// group-norm + SiLU conv stacks, time/label embedding injection, nearest
// upsampling and concatenation skips. Gradients are computed by
// hand-written reverse passes; see the finite-difference tests.
class UNet {
 public:
  UNet(const Architecture& arch, std::uint64_t init_seed);
  UNet(const UNet&);
  UNet& operator=(const UNet&);
  UNet(UNet&&) noexcept;
  UNet& operator=(UNet&&) noexcept;
  ~UNet();

  const Architecture& arch() const { return arch_; }
  std::size_t param_count() const { return params_.size(); }
  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }

  int null_label() const { return arch_.num_labels; }

  // label must be in [0, num_labels]; num_labels selects the null row.
  Tensor forward(const Tensor& x, int t, int label) const;
  // forward keeping intermediate state for a following backward().
  Tensor forward(const Tensor& x, int t, int label, EvalCache& cache) const;
  // Accumulates parameter gradients into grad (size param_count()).
  void backward(const Tensor& dy, const EvalCache& cache, std::vector<double>& grad) const;

  EvalCache* new_cache() const;
  void free_cache(EvalCache*) const;

 private:
  void build_layers();
  void init_params(std::uint64_t seed);
  void check_input(const Tensor& x, int label) const;

  Architecture arch_;
  std::vector<double> params_;

  DenseLayer time_fc1_, time_fc2_;
  std::size_t label_off_ = 0;  // (num_labels+1) x emb_dim table
  ConvLayer stem_;
  std::vector<std::vector<ResBlockLayers>> enc_;  // per level
  std::vector<ConvLayer> down_;
  AttnLayers attn_;
  std::vector<ConvLayer> up_conv_;                // per decoder level
  std::vector<std::vector<ResBlockLayers>> dec_;  // first block concat-fed
  NormLayer head_norm_;
  ConvLayer head_conv_;
};

}  // namespace microdiff::nn
