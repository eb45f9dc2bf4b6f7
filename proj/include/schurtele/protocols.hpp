#pragma once

#include <Eigen/Dense>

#include "schurtele/locc_runtime.hpp"
#include "schurtele/teleport.hpp"

namespace schurtele {

/// Self-teleportation as two LOCC rounds on |φ⟩^⊗n.
///   Alice: "fail" (1 − P_good) or the continuous family "povm" of Kraus rows
///          A_U, U Haar-distributed, announcing {U_λ} as payload.
///   Bob:   after "povm", "reconstruct" (embedding ∘ recovery) or the
///          complementary "off-support"; after "fail", "idle".
/// Shares its random streams with run_teleport, so equal seeds give equal
/// outcomes whenever the "povm" branch is taken.
LoccProtocol teleport_protocol(const TeleportPlan& plan);

/// Alice measures in `basis_a`, Bob in `basis_b`, no communication.
LoccProtocol product_measurement_protocol(const Eigen::MatrixXcd& basis_a, const Eigen::MatrixXcd& basis_b);

/// Alice measures Z; Bob measures in a basis rotated by an angle that depends
/// on her outcome.
LoccProtocol adaptive_qubit_protocol(double angle_after_0, double angle_after_1);

}  // namespace schurtele
