#pragma once

// Multi-triangle systems: a ferromagnetic qubit triangle, an odd qubit ring
// with an effective domain wall, and an effective spin-1 chain.
//
// Every triangle carries the cosine profile (j0, j1, phase_m). Triangles are
// the rings of the underlying SystemSpec and the qubits of the effective model.

#include <map>
#include <string>
#include <vector>

#include "dwring/effective.hpp"
#include "dwring/eigensolvers.hpp"
#include "dwring/hamiltonian.hpp"

namespace dwring {

enum class CompositeKind { fm_triangle, qubit_ring, spin1_chain };

std::string to_string(CompositeKind kind);
CompositeKind composite_kind_from_string(const std::string& name);

struct CompositeSpec {
    CompositeKind kind = CompositeKind::fm_triangle;
    int n_triangles = 0;
    double j0 = 1.0;
    double j1 = 1.0;
    std::vector<double> phases;
    std::vector<InterRingBond> bonds;
    bool periodic = true;
    /// Builder arguments (j_r, delta_phi, j_r33, j_r21), echoed in output.
    std::map<std::string, double> params;

    /// Throws std::invalid_argument / AfmViolationError / std::out_of_range on
    /// inconsistent sizes, non-positive strengths or bad indices.
    void validate() const;
    /// Full spin system. Throws AfmViolationError when a triangle profile has a
    /// non-positive bond.
    SystemSpec to_system() const;
};

/// Three triangles at phase pi/3, site 2 of triangle m bonded to site 1 of m+1.
CompositeSpec build_fm_triangle(double j0, double j1, double j_r);

/// Odd ring of triangles with phases (p1, p1, p2, p1, p2, ...), p1 = delta_phi,
/// p2 = 2 pi/3 - delta_phi, and 3-1 bonds between neighbours. The repeated p1
/// pair sits at triangles 1 and 2, which leaves triangle 1 as the isolated qubit
/// at delta_phi = 0. Throws RangeError for delta_phi outside [0, pi/3] and
/// std::invalid_argument for an even or too small ring.
CompositeSpec build_qubit_ring(int n_triangles, double delta_phi, double j0, double j1, double j_r);

/// Even chain with phases alternating pi/3, pi; 3-3 bonds (j_r33) from triangle
/// 2m-1 to 2m and 2-1 bonds (j_r21) from 2m to 2m+1.
CompositeSpec build_spin1_chain(int n_triangles, double j0, double j1, double j_r33, double j_r21,
                                bool periodic);

/// Qubit model: closed-form pair couplings between the triangles plus the
/// constant sum of triangle ground energies, -(3 n / 4)(j0 + j1).
struct EffectiveModel {
    int n_qubits = 0;
    std::vector<Bond> bonds;   // bit_i, bit_j are triangle indices from 0
    double constant = 0.0;
};

EffectiveModel effective_model(const CompositeSpec& spec);

/// The effective model as an operator on one S_z sector of n_triangles qubits.
HamiltonianApplier effective_chain_hamiltonian(const CompositeSpec& spec, int s_z_twice);

struct PairReport {
    int ring_a = 0;
    int ring_b = 0;
    double closed_form = 0.0;
    double numeric = 0.0;
    double anisotropy_residual = 0.0;
};

/// Closed-form and numerically projected coupling of every bonded triangle
/// pair, each pair treated in isolation. Pairs follow first appearance in the bonds.
std::vector<PairReport> pair_couplings(const CompositeSpec& spec, const EffectiveOptions& options = {});

struct GapComparison {
    double e_gap_full = 0.0;
    double e_gap_eff = 0.0;
    double delta_e_gap = 0.0;
    double ground_energy_full = 0.0;
    double ground_energy_eff = 0.0;
    int ground_degeneracy_full = 0;
    int ground_degeneracy_eff = 0;
    std::map<std::string, double> ratio_inputs;
};

/// Lowest gap of the full spin system against that of the effective model.
/// `per_sector` eigenvalues are taken from every S_z >= 0 sector; levels
/// closer than rel_merge_tol * spectral scale are merged.
GapComparison gap_comparison(const CompositeSpec& spec, const SolverSettings& settings = {},
                             int per_sector = 4, double rel_merge_tol = 1e-9);

}  // namespace dwring
