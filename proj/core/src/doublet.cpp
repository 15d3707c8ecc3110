#include "dwring/doublet.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "dwring/error.hpp"

namespace dwring {

Doublet ground_doublet(const RingSpec& ring, const DoubletOptions& options) {
    if (ring.n_sites() % 2 == 0) {
        throw std::invalid_argument(
            fmt::format("a {}-site ring has no spin-1/2 ground doublet", ring.n_sites()));
    }
    const HamiltonianApplier h = build_ring_hamiltonian(ring, 1);

    std::vector<double> values;
    StateVector up(h.sector_ptr());
    double width = 0.0;
    if (h.dimension() <= options.solver.dense_threshold &&
        options.solver.kind != SolverKind::lanczos) {
        SpectrumResult full = dense_spectrum(h, true, options.solver.dense_threshold);
        width = full.eigenvalues.back() - full.eigenvalues.front();
        values = full.eigenvalues;
        up = std::move(full.eigenvectors.front());
    } else {
        SpectrumResult low = lowest_eigenpairs(h, 2, options.solver, true);
        width = 2.0 * h.norm_bound();
        values = low.eigenvalues;
        up = std::move(low.eigenvectors.front());
    }
    if (values.size() < 2) {
        throw DegenerateGroundError("ring sector has a single state; no gap is defined");
    }
    const double splitting = values[1] - values[0];
    if (splitting < options.degeneracy_rel_tol * width) {
        throw DegenerateGroundError(fmt::format(
            "ground state of the S_z = +1/2 sector is degenerate (splitting {:.3e})", splitting));
    }

    StateVector down = lowering(up);
    down = down.normalized();
    return Doublet{std::move(up), std::move(down), values[0], splitting};
}

}  // namespace dwring
