#pragma once

#include "dwring/basis.hpp"
#include "dwring/eigensolvers.hpp"
#include "dwring/hamiltonian.hpp"

namespace dwring {

/// (S, S_z) = (1/2, +-1/2) ground pair of one odd ring.
///
/// Only the S_z = +1/2 sector is diagonalized; the partner is generated as
/// down = S_tot^- up. With that choice the pair transforms like a standard
/// spin-1/2, which is what makes projected couplings come out in plain
/// Heisenberg form.
struct Doublet {
    StateVector up;
    StateVector down;
    double energy = 0.0;
    /// Distance from the doublet to the next level of the ring.
    double gap_to_next = 0.0;
};

struct DoubletOptions {
    SolverSettings solver;
    /// Ground splitting below this fraction of the spectral width counts as degenerate.
    double degeneracy_rel_tol = 1e-10;
};

/// Throws std::invalid_argument for an even ring and DegenerateGroundError when
/// the S_z = +1/2 ground state is not unique.
Doublet ground_doublet(const RingSpec& ring, const DoubletOptions& options = {});

}  // namespace dwring
