#include "dwring/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "dwring/error.hpp"
#include "dwring/parallel.hpp"

namespace dwring {

int SystemSpec::total_sites() const noexcept {
    int n = 0;
    for (const auto& r : rings) n += r.n_sites();
    return n;
}

int SystemSpec::offset(int ring) const {
    if (ring < 0 || ring >= static_cast<int>(rings.size())) {
        throw std::out_of_range(fmt::format("ring index {} outside 0..{}", ring, rings.size() - 1));
    }
    int off = 0;
    for (int r = 0; r < ring; ++r) off += rings[static_cast<std::size_t>(r)].n_sites();
    return off;
}

void SystemSpec::validate() const {
    if (rings.empty()) throw std::invalid_argument("system has no rings");
    for (const auto& b : bonds) {
        offset(b.ring_a);  // range checks
        offset(b.ring_b);
        const int na = rings[static_cast<std::size_t>(b.ring_a)].n_sites();
        const int nb = rings[static_cast<std::size_t>(b.ring_b)].n_sites();
        if (b.ring_a == b.ring_b) {
            throw std::invalid_argument("inter-ring bond must join two different rings");
        }
        if (b.site_a < 1 || b.site_a > na || b.site_b < 1 || b.site_b > nb) {
            throw std::out_of_range(fmt::format("bond sites ({}, {}) outside their rings",
                                                b.site_a, b.site_b));
        }
        if (!(b.strength > 0.0)) {
            throw AfmViolationError(
                fmt::format("inter-ring coupling {} is not strictly positive", b.strength));
        }
    }
}

std::vector<Bond> system_bonds(const SystemSpec& spec) {
    spec.validate();
    std::vector<Bond> out;
    int off = 0;
    for (const auto& ring : spec.rings) {
        const int n = ring.n_sites();
        for (int k = 0; k < n; ++k) {
            out.push_back({off + k, off + (k + 1) % n, ring.profile.couplings()[static_cast<std::size_t>(k)]});
        }
        off += n;
    }
    for (const auto& b : spec.bonds) {
        out.push_back({spec.offset(b.ring_a) + b.site_a - 1, spec.offset(b.ring_b) + b.site_b - 1,
                       b.strength});
    }
    return out;
}

HamiltonianApplier::HamiltonianApplier(SectorPtr sector, std::vector<Bond> bonds, double constant)
    : sector_(std::move(sector)), bonds_(std::move(bonds)), constant_(constant) {
    for (const auto& b : bonds_) {
        if (b.bit_i == b.bit_j || b.bit_i < 0 || b.bit_j < 0 || b.bit_i >= sector_->n_sites() ||
            b.bit_j >= sector_->n_sites()) {
            throw std::out_of_range(
                fmt::format("bond ({}, {}) invalid for {} sites", b.bit_i, b.bit_j, sector_->n_sites()));
        }
    }
}

double HamiltonianApplier::norm_bound() const noexcept {
    double s = std::abs(constant_);
    for (const auto& b : bonds_) s += 0.75 * std::abs(b.coupling);
    return s;
}

namespace {

template <typename T>
void apply_range(const SectorBasis& basis, std::span<const Bond> bonds, double constant,
                 std::span<const T> in, std::span<T> out, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        const Mask m = basis.state(i);
        T acc = constant * in[i];
        for (const auto& b : bonds) {
            const Mask bi = Mask{1} << b.bit_i;
            const Mask bj = Mask{1} << b.bit_j;
            const bool parallel = ((m & bi) != 0) == ((m & bj) != 0);
            if (parallel) {
                acc += 0.25 * b.coupling * in[i];
            } else {
                acc -= 0.25 * b.coupling * in[i];
                acc += 0.5 * b.coupling * in[basis.rank(m ^ (bi | bj))];
            }
        }
        out[i] = acc;
    }
}

template <typename T>
void apply_parallel(const SectorBasis& basis, std::span<const Bond> bonds, double constant,
                    std::span<const T> in, std::span<T> out, int threads) {
    const std::size_t n = basis.size();
    if (in.size() != n || out.size() != n) {
        throw std::invalid_argument("vector length does not match the sector dimension");
    }
    constexpr std::size_t kMinChunk = 1024;
    const std::size_t chunks =
        std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)),
                                                       n / kMinChunk));
    if (chunks == 1) {
        apply_range<T>(basis, bonds, constant, in, out, 0, n);
        return;
    }
    const std::size_t step = (n + chunks - 1) / chunks;
    parallel_for(chunks, threads, [&](std::size_t c) {
        apply_range<T>(basis, bonds, constant, in, out, c * step, std::min(n, (c + 1) * step));
    });
}

}  // namespace

void HamiltonianApplier::apply(std::span<const double> in, std::span<double> out, int threads) const {
    apply_parallel<double>(*sector_, bonds_, constant_, in, out, threads);
}

StateVector HamiltonianApplier::apply(const StateVector& v, int threads) const {
    if (!v.sector().same_sector(*sector_)) {
        throw InvalidSectorError("state vector is not in the Hamiltonian's sector");
    }
    StateVector out(sector_);
    apply_parallel<Amplitude>(*sector_, bonds_, constant_, v.amplitudes(), out.amplitudes(), threads);
    return out;
}

HamiltonianApplier build_hamiltonian(const SystemSpec& spec, int s_z_twice) {
    auto bonds = system_bonds(spec);
    return HamiltonianApplier(sector_basis(spec.total_sites(), s_z_twice), std::move(bonds));
}

HamiltonianApplier build_ring_hamiltonian(const RingSpec& ring, int s_z_twice) {
    return build_hamiltonian(SystemSpec{{ring}, {}}, s_z_twice);
}

}  // namespace dwring
