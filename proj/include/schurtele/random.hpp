#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace schurtele {

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream); streams separate branch
/// selection from per-round outcome sampling.
Rng stream_rng(std::uint64_t seed, std::uint64_t stream);

/// Haar-distributed element of U(dim): QR of a complex Ginibre matrix with
/// the phases of R's diagonal moved into Q.
Eigen::MatrixXcd sample_haar_unitary(int dim, Rng& rng);

}  // namespace schurtele
