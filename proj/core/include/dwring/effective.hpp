#pragma once

// Projection of inter-ring bonds onto the product of two ground doublets and
// reduction to the isotropic form c 1 + j_eff S_a . S_b.
//
// Product basis order is {up up, up down, down up, down down}, identified with
// the two-qubit basis {00, 01, 10, 11}.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "dwring/doublet.hpp"
#include "dwring/hamiltonian.hpp"

namespace dwring {

struct EffectiveHamiltonian {
    double identity_coefficient = 0.0;
    double j_eff = 0.0;
    /// Frobenius norm of what the Heisenberg form leaves unexplained.
    double anisotropy_residual = 0.0;
    Eigen::Matrix4cd matrix = Eigen::Matrix4cd::Zero();
};

/// Matrix of sum_bonds J_r S_ia . S_jb on the product doublet basis. Bonds must
/// join ring 0 (doublet_a) and ring 1 (doublet_b), in either orientation.
Eigen::Matrix4cd project_coupling(const Doublet& doublet_a, const Doublet& doublet_b,
                                  std::span<const InterRingBond> bonds);

/// The two-qubit matrix of S_a . S_b: diag(1/4, -1/4, -1/4, 1/4) plus 1/2 on (01, 10).
Eigen::Matrix4cd heisenberg_template();

/// Least-squares fit M ~ c 1 + j S_a . S_b. Throws ContractViolation when M is
/// not Hermitian to 1e-10.
EffectiveHamiltonian fit_heisenberg(const Eigen::Matrix4cd& matrix);

/// E_triplet - E_singlet of a Hermitian 4x4 two-qubit matrix, from its
/// eigendecomposition. The triplet energy is the mean of the three eigenvalues
/// not belonging to the eigenvector with the largest singlet weight.
double singlet_triplet_splitting(const Eigen::Matrix4cd& matrix);

struct EffectiveOptions {
    DoubletOptions doublet;
    /// max(J_r)/min(gap) above this raises the validity warning.
    double validity_threshold = 0.25;
};

struct PairCoupling {
    EffectiveHamiltonian projected;
    double ground_energy_a = 0.0;
    double ground_energy_b = 0.0;
    double gap_a = 0.0;
    double gap_b = 0.0;
    /// ground_energy_a + ground_energy_b + projected.identity_coefficient.
    double identity_total = 0.0;
    /// E_t - E_s of the projected matrix; equals j_eff for an isotropic matrix.
    double splitting = 0.0;
    double validity_ratio = 0.0;
    bool validity_warning = false;
};

/// Doublets of both rings, projection of the bonds, Heisenberg fit.
PairCoupling effective_exchange_numeric(const RingSpec& ring_a, const RingSpec& ring_b,
                                        std::span<const InterRingBond> bonds,
                                        const EffectiveOptions& options = {});

/// Same, for doublets that are already known (scans reuse a fixed ring).
PairCoupling effective_exchange(const Doublet& doublet_a, const Doublet& doublet_b,
                                std::span<const InterRingBond> bonds,
                                const EffectiveOptions& options = {});

struct DensityProductCheck {
    double lhs = 0.0;   // numeric j_eff
    double rhs = 0.0;   // 4 J_r <S^z_ia> <S^z_jb> on the up states
    double diff = 0.0;
};

/// Spin-density product law for a single bond. Throws
/// UnsupportedConfigurationError unless exactly one bond is given.
DensityProductCheck density_product_check(const Doublet& doublet_a, const Doublet& doublet_b,
                                          std::span<const InterRingBond> bonds);
DensityProductCheck density_product_check(const RingSpec& ring_a, const RingSpec& ring_b,
                                          std::span<const InterRingBond> bonds,
                                          const EffectiveOptions& options = {});

}  // namespace dwring
