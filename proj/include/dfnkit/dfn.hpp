#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dfnkit/linalg.hpp"
#include "dfnkit/matrix.hpp"

namespace dfnkit {

enum class DfnMethod { Exact, FastGoe };

// Departure-from-normality report. `value` is Delta^2 >= 0; the exact path
// sets eig_sq_sum to sum |lambda_i|^2, the fast path stores the raw
// determinant-based surrogate there.
struct DfnReport {
  double value = 0.0;
  double frob_sq = 0.0;
  double eig_sq_sum = 0.0;
  DfnMethod method = DfnMethod::Exact;
  bool clamped = false;
};

struct GoeConfig {
  int num_phase_offsets = 4;  // 1 or 4 distinct 2x2-pooling phases
  std::uint64_t seed = 0;     // reserved for randomized estimator extensions
  bool clamp_nonneg = true;
  // Scalar function in the ensemble constant; defaults to the Gamma function
  // (swap in an alternative to compare normalizations).
  std::function<double(double)> log_nu;  // returns log nu(x)
};

// Exact Delta^2(x) = max(0, ||x||_F^2 - sum |lambda_i|^2), eigenvalues from
// the real Schur form.
DfnReport dfn_exact(const Matrix& x);

// Symmetrized half-size pooling surrogate: (rho + rho^T)/2 with
// rho = downsample2(x, phases). Non-square inputs are cropped (not padded)
// to the leading square block first.
Matrix build_goe_surrogate(const Matrix& x, int phase_row, int phase_col);

// Determinant surrogate for the eigenvalue energy: the mean of det(U) over
// the configured pooling phases, scaled by the ensemble constant
// 2^{k/2} * prod_{i=1..k} nu(i/2). Combined in log space; throws Overflow
// when the scaled surrogate leaves the finite double range.
DfnReport dfn_fast(const Matrix& x, const GoeConfig& cfg = {});

// |mean_g Delta^2 - mean_r Delta^2| with a fixed left-to-right reduction.
double difference_dfn(const std::vector<Matrix>& gen_batch,
                      const std::vector<Matrix>& real_batch, DfnMethod method);

// Linear-interpolation error bound (M/8) * h^2 for |g''| <= M on the node
// interval of width h.
double interpolation_error_bound(double second_deriv_bound, double node_gap);

const char* dfn_method_name(DfnMethod m);

}  // namespace dfnkit
