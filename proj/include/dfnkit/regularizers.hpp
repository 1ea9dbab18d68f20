#pragma once

#include <cstddef>
#include <optional>

#include "dfnkit/matrix.hpp"

namespace dfnkit {

struct PenaltyResult {
  double value = 0.0;
  Matrix gradient;
};

// Singular-value clamp: theta - max(0, sigma0 - sigma_c) u0 v0^T with the
// leading triplet from power iteration. sigma_clamp == nullopt selects the
// stop-gradient-second-singular-value variant (sigma_c = sigma1, obtained by
// deflating the rank-1 top component and re-running power iteration).
Matrix spectral_clamp_update(const Matrix& theta,
                             std::optional<double> sigma_clamp,
                             std::size_t power_iters = 30);

// beta * ||theta^T theta - I||_F^2, gradient 4 beta theta (theta^T theta - I).
PenaltyResult orthogonal_penalty_v1(const Matrix& theta, double beta);

// Off-diagonal Gram energy: beta * ||theta^T theta o (1 - I)||_F^2,
// gradient 4 beta theta (theta^T theta o (1 - I)).
PenaltyResult orthogonal_penalty_v2(const Matrix& theta, double beta);

enum class GradMode { Analytic, FiniteDiff };

// Value Delta^2(sample) and its gradient. The analytic path differentiates
// ||X||_F^2 - sum |lambda_i|^2 through the eigenvalues (right/left
// eigenvectors from inverse iteration seeded by the Schur vectors) and
// requires a simple spectrum: min eigenvalue gap >= 1e-6 * ||X||_F, else
// DegenerateSpectrum is thrown and the caller should fall back to
// FiniteDiff. The finite-difference path is the correctness oracle.
PenaltyResult dfn_penalty_gradient(const Matrix& sample, GradMode mode,
                                   double fd_step = 1e-5);

}  // namespace dfnkit
