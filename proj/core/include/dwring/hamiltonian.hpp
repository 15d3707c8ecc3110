#pragma once

// Matrix-free Heisenberg Hamiltonians on fixed-S_z sectors of one or more rings.

#include <span>
#include <vector>

#include "dwring/basis.hpp"
#include "dwring/profiles.hpp"

namespace dwring {

struct RingSpec {
    ExchangeProfile profile;

    int n_sites() const noexcept { return static_cast<int>(profile.size()); }
};

/// J_r S_{site_a, ring_a} . S_{site_b, ring_b}. Rings are indexed from 0 (their
/// position in SystemSpec::rings), sites from 1 within each ring.
struct InterRingBond {
    int ring_a = 0;
    int site_a = 1;
    int ring_b = 1;
    int site_b = 1;
    double strength = 0.0;
};

struct SystemSpec {
    std::vector<RingSpec> rings;
    std::vector<InterRingBond> bonds;

    int total_sites() const noexcept;
    /// Global bit position of site 1 of `ring`.
    int offset(int ring) const;
    /// Throws std::out_of_range / std::invalid_argument / AfmViolationError on
    /// bad ring or site indices, self-bonds, or non-positive strengths.
    void validate() const;
};

/// One S_i . S_j term on global 0-based bit positions. Any sign is allowed here;
/// effective qubit models carry ferromagnetic (negative) couplings.
struct Bond {
    int bit_i = 0;
    int bit_j = 1;
    double coupling = 0.0;
};

/// Intra-ring bonds followed by inter-ring bonds, in global bit positions.
std::vector<Bond> system_bonds(const SystemSpec& spec);

/// Real symmetric operator constant * 1 + sum_b J_b S_i . S_j restricted to one sector.
class HamiltonianApplier {
public:
    HamiltonianApplier(SectorPtr sector, std::vector<Bond> bonds, double constant = 0.0);

    const SectorBasis& sector() const noexcept { return *sector_; }
    const SectorPtr& sector_ptr() const noexcept { return sector_; }
    std::size_t dimension() const noexcept { return sector_->size(); }
    std::span<const Bond> bonds() const noexcept { return bonds_; }
    double constant() const noexcept { return constant_; }

    /// out = H in. Every output entry is accumulated in a fixed order, so the
    /// result is bit-identical for any thread count.
    void apply(std::span<const double> in, std::span<double> out, int threads = 1) const;
    StateVector apply(const StateVector& v, int threads = 1) const;

    /// Upper bound on the spectral radius: |constant| + sum_b 3|J_b|/4.
    double norm_bound() const noexcept;

private:
    SectorPtr sector_;
    std::vector<Bond> bonds_;
    double constant_;
};

/// Throws InvalidSectorError when the sector does not exist for the system size.
HamiltonianApplier build_hamiltonian(const SystemSpec& spec, int s_z_twice);

/// Convenience for a single ring.
HamiltonianApplier build_ring_hamiltonian(const RingSpec& ring, int s_z_twice);

}  // namespace dwring
