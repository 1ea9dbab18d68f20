#include "dfnkit/dfn.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dfnkit {
namespace {

double eig_energy(const SchurForm& f) {
  double s = 0.0;
  for (const auto& l : f.eigenvalues) s += std::norm(l);
  return s;
}

Matrix crop_square(const Matrix& x) {
  const std::size_t n = std::min(x.rows(), x.cols());
  if (n == x.rows() && n == x.cols()) return x;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = x(i, j);
  return out;
}

}  // namespace

const char* dfn_method_name(DfnMethod m) {
  return m == DfnMethod::Exact ? "exact" : "fast_goe";
}

DfnReport dfn_exact(const Matrix& x) {
  ensure_square(x, "dfn_exact");
  ensure_finite(x, "dfn_exact");
  SchurForm f = real_schur(x);
  DfnReport r;
  r.method = DfnMethod::Exact;
  r.frob_sq = x.frob_norm_sq();
  r.eig_sq_sum = eig_energy(f);
  double raw = r.frob_sq - r.eig_sq_sum;
  r.clamped = raw < 0.0;
  r.value = r.clamped ? 0.0 : raw;
  return r;
}

Matrix build_goe_surrogate(const Matrix& x, int phase_row, int phase_col) {
  Matrix sq = crop_square(x);
  if (sq.rows() < 2)
    throw Error(Errc::TooSmall, "build_goe_surrogate: needs a square block >= 2");
  Matrix rho = downsample2(sq, phase_row, phase_col);
  const std::size_t k = rho.rows();
  Matrix u(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) u(i, j) = 0.5 * (rho(i, j) + rho(j, i));
  return u;
}

DfnReport dfn_fast(const Matrix& x, const GoeConfig& cfg) {
  if (std::min(x.rows(), x.cols()) < 4)
    throw Error(Errc::TooSmall, "dfn_fast: needs n >= 4");
  ensure_finite(x, "dfn_fast");
  if (cfg.num_phase_offsets != 1 && cfg.num_phase_offsets != 4)
    throw Error(Errc::InvalidArgument, "dfn_fast: num_phase_offsets must be 1 or 4");

  const std::size_t k = std::min(x.rows(), x.cols()) / 2;

  // Ensemble constant in log space: (k/2) log 2 + sum_{i=1..k} log nu(i/2).
  double log_c = 0.5 * static_cast<double>(k) * std::log(2.0);
  for (std::size_t i = 1; i <= k; ++i) {
    double arg = 0.5 * static_cast<double>(i);
    log_c += cfg.log_nu ? cfg.log_nu(arg) : std::lgamma(arg);
  }

  // Mean of det(U) over the pooling phases, accumulated as sign * exp(log).
  static constexpr int kPhases[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  double mean_det = 0.0;
  double max_log = -std::numeric_limits<double>::infinity();
  struct Term {
    int sign;
    double log_abs;
  };
  Term terms[4];
  const int np = cfg.num_phase_offsets;
  for (int p = 0; p < np; ++p) {
    Matrix u = build_goe_surrogate(x, kPhases[p][0], kPhases[p][1]);
    LogDet d = log_det(u);
    terms[p] = {d.sign, d.log_abs};
    if (d.sign != 0) max_log = std::max(max_log, d.log_abs);
  }

  DfnReport r;
  r.method = DfnMethod::FastGoe;
  r.frob_sq = x.frob_norm_sq();

  double surrogate;
  if (max_log == -std::numeric_limits<double>::infinity()) {
    surrogate = 0.0;  // all determinants exactly zero
  } else {
    // Scaled accumulation relative to the largest term keeps exp() in range.
    for (int p = 0; p < np; ++p)
      if (terms[p].sign != 0)
        mean_det += terms[p].sign * std::exp(terms[p].log_abs - max_log);
    mean_det /= np;
    double log_scaled = log_c + max_log;
    if (mean_det != 0.0) log_scaled += std::log(std::abs(mean_det));
    if (log_scaled > std::log(std::numeric_limits<double>::max()))
      throw Error(Errc::Overflow,
                  "dfn_fast: scaled determinant out of range (k=" + std::to_string(k) +
                      ", log10 magnitude=" + std::to_string(log_scaled / std::log(10.0)) + ")");
    surrogate = (mean_det == 0.0) ? 0.0
                                  : std::copysign(std::exp(log_scaled), mean_det);
  }

  r.eig_sq_sum = surrogate;
  double raw = r.frob_sq - surrogate;
  if (cfg.clamp_nonneg && raw < 0.0) {
    r.value = 0.0;
    r.clamped = true;
  } else {
    r.value = raw;
  }
  return r;
}

double difference_dfn(const std::vector<Matrix>& gen_batch,
                      const std::vector<Matrix>& real_batch, DfnMethod method) {
  if (gen_batch.empty() || real_batch.empty())
    throw Error(Errc::EmptyBatch, "difference_dfn: both batches must be nonempty");
  const std::size_t n = gen_batch.front().rows();
  auto check = [&](const Matrix& m) {
    if (!m.square() || m.rows() != n)
      throw Error(Errc::DimensionMismatch,
                  "difference_dfn: all matrices must be square with equal dimension");
  };
  auto batch_mean = [&](const std::vector<Matrix>& batch) {
    double sum = 0.0;  // fixed left-to-right order
    for (const Matrix& m : batch) {
      check(m);
      sum += (method == DfnMethod::Exact) ? dfn_exact(m).value : dfn_fast(m).value;
    }
    return sum / static_cast<double>(batch.size());
  };
  return std::abs(batch_mean(gen_batch) - batch_mean(real_batch));
}

double interpolation_error_bound(double second_deriv_bound, double node_gap) {
  if (!(second_deriv_bound >= 0.0) || !std::isfinite(second_deriv_bound))
    throw Error(Errc::InvalidArgument, "interpolation_error_bound: bound must be >= 0");
  if (!(node_gap > 0.0) || !std::isfinite(node_gap))
    throw Error(Errc::InvalidArgument, "interpolation_error_bound: node gap must be > 0");
  return second_deriv_bound / 8.0 * node_gap * node_gap;
}

}  // namespace dfnkit
