#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "schurtele/estimation.hpp"
#include "schurtele/random.hpp"

namespace schurtele {

/// Anti-copy family A on the open box (0, π) × (−π, π).
PureStateModel qubit_full_model();

/// Complex conjugate of qubit_full_model().
PureStateModel qubit_conjugate_model();

/// (cos θ₁, sin θ₁ cos θ₂, sin θ₁ sin θ₂): every amplitude real.
PureStateModel real_amplitude_model();

/// (cos θ/2, sin θ/2) on (0, π).
PureStateModel qubit_polar_model();

/// (e^{−iθ/2}, e^{iθ/2})/√2 on (0, π).
PureStateModel qubit_phase_model();

/// exp(−iHθ)|ψ₀⟩ with Haar-random |ψ₀⟩ and a random Hermitian H, on (−3, 3).
PureStateModel random_qubit_model(Rng& rng, int param_dim = 1);

/// "qubit-full", "qubit-conjugate", "real-amplitude", "qubit-polar",
/// "qubit-phase". Throws std::invalid_argument on an unknown name.
PureStateModel model_by_name(const std::string& name);

std::vector<std::string> model_names();

/// One-parameter model tabulated on a θ-grid, read from JSON:
///   {"name": "...", "dims": [2], "grid": [θ_0, …],
///    "amplitudes": [[[re, im], …], …]}
/// Amplitudes are interpolated by Catmull–Rom splines and renormalized;
/// derivatives come from finite differences.
PureStateModel tabulated_model_from_json(const std::string& text);
PureStateModel load_tabulated_model(const std::filesystem::path& path);

}  // namespace schurtele
