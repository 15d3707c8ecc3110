#include "dwring/effective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "dwring/error.hpp"

namespace dwring {

namespace {

// Single-ring matrix elements of one site operator within the doublet.
struct SiteElements {
    double sz_up = 0.0;         // <up|S^z|up>
    double sz_down = 0.0;       // <down|S^z|down>
    Amplitude plus{};           // <up|S^+|down>
};

SiteElements site_elements(const Doublet& d, int site) {
    SiteElements e;
    e.sz_up = spin_z_expectation(d.up, site);
    e.sz_down = spin_z_expectation(d.down, site);
    e.plus = inner(d.up, site_raising(d.down, site));
    return e;
}

struct OrientedBond {
    int site_a;
    int site_b;
    double strength;
};

OrientedBond orient(const InterRingBond& b) {
    if (b.ring_a == 0 && b.ring_b == 1) return {b.site_a, b.site_b, b.strength};
    if (b.ring_a == 1 && b.ring_b == 0) return {b.site_b, b.site_a, b.strength};
    throw std::out_of_range(
        fmt::format("bond between rings {} and {} does not join the pair (0, 1)", b.ring_a, b.ring_b));
}

}  // namespace

Eigen::Matrix4cd project_coupling(const Doublet& doublet_a, const Doublet& doublet_b,
                                  std::span<const InterRingBond> bonds) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    for (const auto& raw : bonds) {
        const OrientedBond b = orient(raw);
        const SiteElements ea = site_elements(doublet_a, b.site_a);
        const SiteElements eb = site_elements(doublet_b, b.site_b);

        // Per-ring 2x2 operators in the {up, down} basis.
        Eigen::Matrix2cd sz_a, sp_a, sz_b, sp_b;
        sz_a << ea.sz_up, 0.0, 0.0, ea.sz_down;
        sp_a << 0.0, ea.plus, 0.0, 0.0;
        sz_b << eb.sz_up, 0.0, 0.0, eb.sz_down;
        sp_b << 0.0, eb.plus, 0.0, 0.0;
        const Eigen::Matrix2cd sm_a = sp_a.adjoint();
        const Eigen::Matrix2cd sm_b = sp_b.adjoint();

        for (int p = 0; p < 4; ++p) {
            for (int q = 0; q < 4; ++q) {
                const int pa = p / 2, pb = p % 2, qa = q / 2, qb = q % 2;
                const Amplitude zz = sz_a(pa, qa) * sz_b(pb, qb);
                const Amplitude flip = sp_a(pa, qa) * sm_b(pb, qb) + sm_a(pa, qa) * sp_b(pb, qb);
                m(p, q) += b.strength * (zz + 0.5 * flip);
            }
        }
    }
    return m;
}

Eigen::Matrix4cd heisenberg_template() {
    Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
    t(0, 0) = 0.25;
    t(1, 1) = -0.25;
    t(2, 2) = -0.25;
    t(3, 3) = 0.25;
    t(1, 2) = 0.5;
    t(2, 1) = 0.5;
    return t;
}

EffectiveHamiltonian fit_heisenberg(const Eigen::Matrix4cd& matrix) {
    const double asymmetry = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (asymmetry > 1e-10) {
        throw ContractViolation(fmt::format("projected matrix is not Hermitian ({:.3e})", asymmetry));
    }
    const Eigen::Matrix4cd t = heisenberg_template();
    EffectiveHamiltonian out;
    out.matrix = matrix;
    out.identity_coefficient = matrix.trace().real() / 4.0;
    // The template is traceless, so the fits for c and j decouple; <T,T>_F = 3/4.
    out.j_eff = (t.adjoint() * matrix).trace().real() / 0.75;
    const Eigen::Matrix4cd rest =
        matrix - out.identity_coefficient * Eigen::Matrix4cd::Identity() - out.j_eff * t;
    out.anisotropy_residual = rest.norm();
    return out;
}

double singlet_triplet_splitting(const Eigen::Matrix4cd& matrix) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(matrix);
    Eigen::Vector4cd singlet = Eigen::Vector4cd::Zero();
    singlet(1) = 1.0 / std::sqrt(2.0);
    singlet(2) = -1.0 / std::sqrt(2.0);
    int s = 0;
    double best = -1.0;
    for (int i = 0; i < 4; ++i) {
        const double w = std::norm(singlet.dot(solver.eigenvectors().col(i)));
        if (w > best) {
            best = w;
            s = i;
        }
    }
    double triplet = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (i != s) triplet += solver.eigenvalues()(i);
    }
    return triplet / 3.0 - solver.eigenvalues()(s);
}

PairCoupling effective_exchange(const Doublet& doublet_a, const Doublet& doublet_b,
                                std::span<const InterRingBond> bonds, const EffectiveOptions& options) {
    PairCoupling out;
    const Eigen::Matrix4cd m = project_coupling(doublet_a, doublet_b, bonds);
    out.projected = fit_heisenberg(m);
    out.ground_energy_a = doublet_a.energy;
    out.ground_energy_b = doublet_b.energy;
    out.gap_a = doublet_a.gap_to_next;
    out.gap_b = doublet_b.gap_to_next;
    out.identity_total = doublet_a.energy + doublet_b.energy + out.projected.identity_coefficient;
    out.splitting = singlet_triplet_splitting(m);

    double max_strength = 0.0;
    for (const auto& b : bonds) max_strength = std::max(max_strength, b.strength);
    out.validity_ratio = max_strength / std::min(out.gap_a, out.gap_b);
    out.validity_warning = out.validity_ratio > options.validity_threshold;
    return out;
}

PairCoupling effective_exchange_numeric(const RingSpec& ring_a, const RingSpec& ring_b,
                                        std::span<const InterRingBond> bonds,
                                        const EffectiveOptions& options) {
    SystemSpec{{ring_a, ring_b}, {bonds.begin(), bonds.end()}}.validate();
    const Doublet a = ground_doublet(ring_a, options.doublet);
    const Doublet b = ground_doublet(ring_b, options.doublet);
    return effective_exchange(a, b, bonds, options);
}

DensityProductCheck density_product_check(const Doublet& doublet_a, const Doublet& doublet_b,
                                          std::span<const InterRingBond> bonds) {
    if (bonds.size() != 1) {
        throw UnsupportedConfigurationError(fmt::format(
            "the spin-density product law is stated per bond; got {} bonds", bonds.size()));
    }
    const OrientedBond b = orient(bonds.front());
    DensityProductCheck out;
    out.lhs = fit_heisenberg(project_coupling(doublet_a, doublet_b, bonds)).j_eff;
    out.rhs = 4.0 * b.strength * spin_z_expectation(doublet_a.up, b.site_a) *
              spin_z_expectation(doublet_b.up, b.site_b);
    out.diff = std::abs(out.lhs - out.rhs);
    return out;
}

DensityProductCheck density_product_check(const RingSpec& ring_a, const RingSpec& ring_b,
                                          std::span<const InterRingBond> bonds,
                                          const EffectiveOptions& options) {
    if (bonds.size() != 1) {
        throw UnsupportedConfigurationError(fmt::format(
            "the spin-density product law is stated per bond; got {} bonds", bonds.size()));
    }
    SystemSpec{{ring_a, ring_b}, {bonds.begin(), bonds.end()}}.validate();
    return density_product_check(ground_doublet(ring_a, options.doublet),
                                 ground_doublet(ring_b, options.doublet), bonds);
}

}  // namespace dwring
