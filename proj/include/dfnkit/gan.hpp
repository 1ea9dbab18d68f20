#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dfnkit/dfn.hpp"
#include "dfnkit/matrix.hpp"
#include "dfnkit/rng.hpp"

namespace dfnkit {

enum class Activation { Relu, Tanh, Identity };

struct DenseLayer {
  Matrix weights;            // out x in
  std::vector<double> bias;  // length out
  Activation activation = Activation::Identity;
};

// Plain fully connected network. Layers chain: layer i's input dim equals
// layer i-1's output dim.
struct DenseNet {
  std::vector<DenseLayer> layers;
  std::size_t input_dim() const { return layers.front().weights.cols(); }
  std::size_t output_dim() const { return layers.back().weights.rows(); }
};

// Orthogonally initialized network (zero biases). The last activation in
// `acts` belongs to the output layer.
DenseNet make_dense_net(const std::vector<std::size_t>& dims,
                        const std::vector<Activation>& acts, Rng& rng);

struct ForwardTape {
  std::vector<Matrix> inputs;  // per-layer input batches
  std::vector<Matrix> pre;     // per-layer pre-activations
};

// Batch forward: x is batch x input_dim, the result batch x output_dim.
// Relu uses subgradient 0 at exactly 0.
Matrix net_forward(const DenseNet& net, const Matrix& x, ForwardTape* tape = nullptr);

struct NetGradients {
  std::vector<Matrix> dw;
  std::vector<std::vector<double>> db;
  Matrix dx;
};

NetGradients net_backward(const DenseNet& net, const ForwardTape& tape, const Matrix& dy);

// Standard-normal latent draw; components with |z_i| > alpha are redrawn
// (up to 1000 attempts, then clamped). alpha == 0 disables truncation.
std::vector<double> sample_z(std::size_t dim, double alpha, Rng& rng);

struct HingeLosses {
  double d_loss = 0.0;
  double g_loss = 0.0;
};

// d_loss = mean(max(0, 1 - d_real)) + mean(max(0, 1 + d_fake));
// g_loss = -mean(d_fake).
HingeLosses hinge_losses(const std::vector<double>& d_real,
                         const std::vector<double>& d_fake);

// Synthetic spectrogram-like corpus: each sample is a side x side sum of 2-4
// oriented Gabor blobs, scaled so the peak magnitude is 1.
std::vector<Matrix> synth_dataset(std::size_t n, std::size_t side, std::uint64_t seed);

enum class OrthoReg { Off, V1, V2 };

struct GanConfig {
  std::size_t z_dim = 16;
  std::size_t sample_side = 16;
  std::size_t batch = 64;
  double lr_d = 2e-4;
  double lr_g = 3e-5;
  double adam_beta1 = 0.0;
  double adam_beta2 = 0.9;
  double dfn_weight = 0.1;
  DfnMethod dfn_method = DfnMethod::Exact;
  double truncation_alpha = 0.0;  // 0 = off
  bool spectral_clamp_on_d = true;
  std::optional<double> sigma_clamp;  // nullopt = stop-gradient second sigma
  OrthoReg ortho_reg = OrthoReg::Off;
  double ortho_beta = 1e-4;
  std::size_t max_iters = 2000;
  std::uint64_t seed = 0;
  std::vector<std::size_t> hidden_g = {96, 192};
  std::vector<std::size_t> hidden_d = {96, 48};
};

struct TraceRow {
  std::size_t iter = 0;
  double d_loss = 0.0;
  double g_loss = 0.0;
  double diff_dfn = 0.0;
  double sigma0_d = 0.0;
  double wall_ms = 0.0;  // measured; the only column excluded from
                         // reproducibility comparisons
};

struct TrainTrace {
  std::vector<TraceRow> rows;
  bool diverged = false;  // true when the last row is a divergence marker
};

struct TrainResult {
  TrainTrace trace;
  DenseNet generator;
  DenseNet discriminator;
};

// Alternating Adam training (one D step, one G step per iteration) with the
// difference-DFN penalty on the generator. Deterministic given (cfg, data)
// up to the wall_ms column. On a non-finite loss the trace is truncated
// with a terminal marker row and `diverged` is set.
TrainResult train(const GanConfig& cfg, const std::vector<Matrix>& data);

// First iteration where the least-squares slope of diff_dfn over `window`
// rows exceeds slope_thresh for 3 consecutive windows; nullopt if never.
std::optional<std::size_t> detect_collapse(const TrainTrace& trace,
                                           std::size_t window = 50,
                                           double slope_thresh = 0.5);

// ||mu_a - mu_b||^2 + Tr(Sa + Sb - 2 (Sa Sb)^{1/2}); the square root comes
// from eigendecompositions of the symmetrized product. Eigenvalues below
// -1e-8 (relative) raise NonPsd; small negatives are clamped.
double frechet_gaussian(const std::vector<std::vector<double>>& feats_a,
                        const std::vector<std::vector<double>>& feats_b);

// Flatten + fixed seeded random projection to out_dim features.
std::vector<std::vector<double>> project_features(const std::vector<Matrix>& samples,
                                                  std::size_t out_dim = 32,
                                                  std::uint64_t seed = 0);

// Trace CSV: header iter,d_loss,g_loss,diff_dfn,sigma0_d,wall_ms.
void write_trace_csv(const std::string& path, const TrainTrace& trace);
TrainTrace read_trace_csv(const std::string& path);

// Generator checkpoint: magic "GANW", u32 layer count, then per layer
// u32 rows, u32 cols, f64 weights row-major, f64 bias. Hidden layers load
// as Relu with a Tanh output layer.
void write_generator_checkpoint(const std::string& path, const DenseNet& net);
DenseNet read_generator_checkpoint(const std::string& path);

// JSON round-trip for GanConfig (CLI --config).
GanConfig gan_config_from_json_file(const std::string& path);
std::string gan_config_to_json(const GanConfig& cfg);

}  // namespace dfnkit
