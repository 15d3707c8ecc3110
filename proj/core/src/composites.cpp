#include "dwring/composites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

#include "dwring/error.hpp"
#include "dwring/profiles.hpp"
#include "dwring/triangle.hpp"

namespace dwring {

namespace {

constexpr double kPi = std::numbers::pi;

InterRingBond bond(int ring_a, int site_a, int ring_b, int site_b, double strength) {
    return InterRingBond{ring_a, site_a, ring_b, site_b, strength};
}

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw AfmViolationError(fmt::format("{} must be positive, got {}", name, value));
    }
}

}  // namespace

std::string to_string(CompositeKind kind) {
    switch (kind) {
        case CompositeKind::fm_triangle: return "fm_triangle";
        case CompositeKind::qubit_ring: return "qubit_ring";
        case CompositeKind::spin1_chain: return "spin1_chain";
    }
    return "unknown";
}

CompositeKind composite_kind_from_string(const std::string& name) {
    if (name == "fm_triangle") return CompositeKind::fm_triangle;
    if (name == "qubit_ring") return CompositeKind::qubit_ring;
    if (name == "spin1_chain") return CompositeKind::spin1_chain;
    throw std::invalid_argument(fmt::format("unknown composite kind '{}'", name));
}

void CompositeSpec::validate() const {
    if (n_triangles < 2) {
        throw std::invalid_argument(fmt::format("a composite needs at least two triangles, got {}", n_triangles));
    }
    if (phases.size() != static_cast<std::size_t>(n_triangles)) {
        throw std::invalid_argument(
            fmt::format("{} phases given for {} triangles", phases.size(), n_triangles));
    }
    if (!(j1 > 0.0)) throw RangeError("modulation amplitude j1 must be positive");
    for (const auto& b : bonds) {
        if (b.ring_a < 0 || b.ring_a >= n_triangles || b.ring_b < 0 || b.ring_b >= n_triangles) {
            throw std::out_of_range(fmt::format("bond joins triangles {} and {} of {}", b.ring_a + 1,
                                                b.ring_b + 1, n_triangles));
        }
        if (b.ring_a == b.ring_b) throw std::invalid_argument("bond within a single triangle");
        if (b.site_a < 1 || b.site_a > 3 || b.site_b < 1 || b.site_b > 3) {
            throw std::out_of_range(fmt::format("triangle sites {} and {} outside 1..3", b.site_a, b.site_b));
        }
        require_positive(b.strength, "inter-triangle bond strength");
    }
}

SystemSpec CompositeSpec::to_system() const {
    validate();
    SystemSpec system;
    system.rings.reserve(phases.size());
    for (double phase : phases) system.rings.push_back(RingSpec{cosine_profile(j0, j1, phase)});
    system.bonds = bonds;
    return system;
}

CompositeSpec build_fm_triangle(double j0, double j1, double j_r) {
    if (!(j1 > 0.0)) throw RangeError("modulation amplitude j1 must be positive");
    require_positive(j_r, "j_r");
    CompositeSpec spec;
    spec.kind = CompositeKind::fm_triangle;
    spec.n_triangles = 3;
    spec.j0 = j0;
    spec.j1 = j1;
    spec.phases.assign(3, kPi / 3.0);
    for (int m = 0; m < 3; ++m) spec.bonds.push_back(bond(m, 2, (m + 1) % 3, 1, j_r));
    spec.periodic = true;
    spec.params = {{"j_r", j_r}};
    return spec;
}

CompositeSpec build_qubit_ring(int n_triangles, double delta_phi, double j0, double j1, double j_r) {
    if (n_triangles < 3 || n_triangles % 2 == 0) {
        throw std::invalid_argument(
            fmt::format("qubit ring needs an odd number of triangles >= 3, got {}", n_triangles));
    }
    if (!(delta_phi >= 0.0 && delta_phi <= kPi / 3.0)) {
        throw RangeError(fmt::format("delta_phi = {} outside [0, pi/3]", delta_phi));
    }
    if (!(j1 > 0.0)) throw RangeError("modulation amplitude j1 must be positive");
    require_positive(j_r, "j_r");
    const double p1 = delta_phi;
    const double p2 = 2.0 * kPi / 3.0 - delta_phi;
    CompositeSpec spec;
    spec.kind = CompositeKind::qubit_ring;
    spec.n_triangles = n_triangles;
    spec.j0 = j0;
    spec.j1 = j1;
    spec.phases.push_back(p1);
    for (int m = 1; m < n_triangles; ++m) spec.phases.push_back(m % 2 == 1 ? p1 : p2);
    for (int m = 0; m < n_triangles; ++m) spec.bonds.push_back(bond(m, 3, (m + 1) % n_triangles, 1, j_r));
    spec.periodic = true;
    spec.params = {{"delta_phi", delta_phi}, {"j_r", j_r}};
    return spec;
}

CompositeSpec build_spin1_chain(int n_triangles, double j0, double j1, double j_r33, double j_r21,
                                bool periodic) {
    if (n_triangles < 2 || n_triangles % 2 != 0) {
        throw std::invalid_argument(
            fmt::format("spin-1 chain needs an even number of triangles, got {}", n_triangles));
    }
    if (!(j1 > 0.0)) throw RangeError("modulation amplitude j1 must be positive");
    require_positive(j_r33, "j_r33");
    require_positive(j_r21, "j_r21");
    CompositeSpec spec;
    spec.kind = CompositeKind::spin1_chain;
    spec.n_triangles = n_triangles;
    spec.j0 = j0;
    spec.j1 = j1;
    for (int m = 0; m < n_triangles; ++m) spec.phases.push_back(m % 2 == 0 ? kPi / 3.0 : kPi);
    for (int m = 0; m + 1 < n_triangles; m += 2) {
        spec.bonds.push_back(bond(m, 3, m + 1, 3, j_r33));
        if (m + 2 < n_triangles) {
            spec.bonds.push_back(bond(m + 1, 2, m + 2, 1, j_r21));
        } else if (periodic) {
            spec.bonds.push_back(bond(m + 1, 2, 0, 1, j_r21));
        }
    }
    spec.periodic = periodic;
    spec.params = {{"j_r33", j_r33}, {"j_r21", j_r21}};
    return spec;
}

EffectiveModel effective_model(const CompositeSpec& spec) {
    spec.validate();
    EffectiveModel model;
    model.n_qubits = spec.n_triangles;
    model.constant = -0.75 * spec.n_triangles * (spec.j0 + spec.j1);
    for (const auto& b : spec.bonds) {
        const double j = jeff_closed_form(b.site_a, b.site_b, b.strength, spec.phases[b.ring_a],
                                          spec.phases[b.ring_b]);
        model.bonds.push_back(Bond{b.ring_a, b.ring_b, j});
    }
    return model;
}

HamiltonianApplier effective_chain_hamiltonian(const CompositeSpec& spec, int s_z_twice) {
    EffectiveModel model = effective_model(spec);
    return HamiltonianApplier(sector_basis(model.n_qubits, s_z_twice), std::move(model.bonds),
                              model.constant);
}

std::vector<PairReport> pair_couplings(const CompositeSpec& spec, const EffectiveOptions& options) {
    const SystemSpec system = spec.to_system();
    std::vector<std::optional<Doublet>> doublets(system.rings.size());
    auto doublet = [&](int ring) -> const Doublet& {
        auto& d = doublets[static_cast<std::size_t>(ring)];
        if (!d) d = ground_doublet(system.rings[static_cast<std::size_t>(ring)], options.doublet);
        return *d;
    };

    std::vector<std::pair<int, int>> pairs;
    for (const auto& b : spec.bonds) {
        const std::pair<int, int> key{std::min(b.ring_a, b.ring_b), std::max(b.ring_a, b.ring_b)};
        if (std::find(pairs.begin(), pairs.end(), key) == pairs.end()) pairs.push_back(key);
    }

    std::vector<PairReport> out;
    for (const auto& [ra, rb] : pairs) {
        PairReport report;
        report.ring_a = ra;
        report.ring_b = rb;
        std::vector<InterRingBond> local;
        for (const auto& b : spec.bonds) {
            if (std::min(b.ring_a, b.ring_b) != ra || std::max(b.ring_a, b.ring_b) != rb) continue;
            report.closed_form += jeff_closed_form(b.site_a, b.site_b, b.strength, spec.phases[b.ring_a],
                                                   spec.phases[b.ring_b]);
            local.push_back(bond(b.ring_a == ra ? 0 : 1, b.site_a, b.ring_b == ra ? 0 : 1, b.site_b,
                                 b.strength));
        }
        const PairCoupling numeric = effective_exchange(doublet(ra), doublet(rb), local, options);
        report.numeric = numeric.projected.j_eff;
        report.anisotropy_residual = numeric.projected.anisotropy_residual;
        out.push_back(report);
    }
    return out;
}

namespace {

struct GapData {
    double ground = 0.0;
    double gap = 0.0;
    int degeneracy = 0;
};

GapData lowest_gap(std::span<const Bond> bonds, int n_sites, double constant,
                   const SolverSettings& settings, int per_sector, double rel_merge_tol) {
    const auto levels = lowest_levels(bonds, n_sites, constant, per_sector, settings, rel_merge_tol);
    if (levels.size() < 2) {
        throw ConvergenceError(
            fmt::format("only {} resolved level(s); raise the per-sector eigenvalue count", levels.size()),
            {}, {});
    }
    return GapData{levels[0].energy, levels[1].energy - levels[0].energy, levels[0].degeneracy};
}

}  // namespace

GapComparison gap_comparison(const CompositeSpec& spec, const SolverSettings& settings, int per_sector,
                             double rel_merge_tol) {
    const SystemSpec system = spec.to_system();
    const std::vector<Bond> full_bonds = system_bonds(system);
    const GapData full = lowest_gap(full_bonds, system.total_sites(), 0.0, settings, per_sector, rel_merge_tol);

    const EffectiveModel model = effective_model(spec);
    const GapData eff = lowest_gap(model.bonds, model.n_qubits, model.constant, settings, per_sector, rel_merge_tol);

    GapComparison out;
    out.e_gap_full = full.gap;
    out.e_gap_eff = eff.gap;
    out.delta_e_gap = std::abs(full.gap - eff.gap);
    out.ground_energy_full = full.ground;
    out.ground_energy_eff = eff.ground;
    out.ground_degeneracy_full = full.degeneracy;
    out.ground_degeneracy_eff = eff.degeneracy;
    out.ratio_inputs = spec.params;
    if (spec.kind == CompositeKind::spin1_chain && spec.params.count("j_r33") && spec.params.count("j_r21")) {
        out.ratio_inputs["ratio_jeff"] = spec.params.at("j_r33") / (2.0 * spec.params.at("j_r21"));
    }
    return out;
}

}  // namespace dwring
