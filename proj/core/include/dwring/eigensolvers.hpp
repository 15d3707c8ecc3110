#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dwring/basis.hpp"
#include "dwring/hamiltonian.hpp"

namespace dwring {

struct SpectrumResult {
    std::vector<double> eigenvalues;         // ascending
    std::vector<StateVector> eigenvectors;   // empty unless requested
    SectorPtr sector;
};

enum class SolverKind { automatic, dense, lanczos };

struct SolverSettings {
    SolverKind kind = SolverKind::automatic;
    /// Largest sector the dense solver accepts.
    std::size_t dense_threshold = 16384;
    /// `automatic` switches to Lanczos above this dimension.
    std::size_t auto_dense_limit = 1024;
    double lanczos_tol = 1e-9;
    int lanczos_max_iter = 20000;
    std::uint64_t seed = 1;
    int threads = 1;
};

/// Full eigendecomposition. Throws UseLanczosError above `dense_threshold`.
SpectrumResult dense_spectrum(const HamiltonianApplier& h, bool vectors = true,
                              std::size_t dense_threshold = 16384);

/// Lowest k eigenpairs by Lanczos with full reorthogonalization. Converged pairs
/// are locked and the iteration restarts in their orthogonal complement until k
/// pairs are found, which also recovers degenerate copies a single Krylov
/// sequence cannot see. Each eigenvalue satisfies residual <= tol. `max_iter`
/// bounds the total number of matrix-vector products. Deterministic for a fixed
/// seed; throws ConvergenceError with the best estimates otherwise.
SpectrumResult lanczos_lowest(const HamiltonianApplier& h, int k, double tol, int max_iter,
                              std::uint64_t seed, bool vectors = true, int threads = 1);

/// Lowest k eigenpairs with the solver chosen by `settings`.
SpectrumResult lowest_eigenpairs(const HamiltonianApplier& h, int k, const SolverSettings& settings,
                                 bool vectors = true);

/// Multiplies by a unit phase so the first component of largest modulus is real
/// and positive. Makes solver output reproducible.
void fix_phase(StateVector& v);

struct Level {
    double energy = 0.0;
    int degeneracy = 0;
};

/// Distinct energy levels of constant + sum_b J_b S_i.S_j on n_sites spins,
/// collected from every sector with S_z >= 0 (negative sectors mirror them).
/// Eigenvalues closer than rel_merge_tol * 2 * norm_bound are one level. Only
/// levels whose multiplicity is fully resolved by the `per_sector` lowest
/// eigenvalues of each sector are returned.
std::vector<Level> lowest_levels(std::span<const Bond> bonds, int n_sites, double constant,
                                 int per_sector, const SolverSettings& settings,
                                 double rel_merge_tol = 1e-9);

/// The `count` lowest eigenvalues over the full Hilbert space, repeated by
/// multiplicity.
std::vector<double> lowest_states(std::span<const Bond> bonds, int n_sites, double constant,
                                  int count, const SolverSettings& settings);

}  // namespace dwring
