#include "dwring/basis.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "dwring/error.hpp"

namespace dwring {

namespace {

constexpr double kNormTolerance = 1e-12;

Mask site_bit(int site) { return Mask{1} << (site - 1); }

void check_site(const SectorBasis& sector, int site) {
    if (site < 1 || site > sector.n_sites()) {
        throw std::out_of_range(
            fmt::format("site {} outside 1..{}", site, sector.n_sites()));
    }
}

void require_same_sector(const StateVector& a, const StateVector& b) {
    if (!a.sector().same_sector(b.sector())) {
        throw InvalidSectorError("state vectors belong to different sectors");
    }
}

// Next larger integer with the same popcount (Gosper's hack).
Mask next_combination(Mask x) {
    const Mask smallest = x & (~x + 1);
    const Mask ripple = x + smallest;
    return ripple | (((x ^ ripple) >> 2) / smallest);
}

}  // namespace

SectorBasis::SectorBasis(int n_sites, int s_z_twice) : n_sites_(n_sites), s_z_twice_(s_z_twice) {
    if (n_sites < 1 || n_sites > kMaxSites) {
        throw InvalidSectorError(fmt::format("n_sites = {} outside 1..{}", n_sites, kMaxSites));
    }
    if (std::abs(s_z_twice) > n_sites || (n_sites - s_z_twice) % 2 != 0) {
        throw InvalidSectorError(
            fmt::format("no sector with 2*S_z = {} for {} sites", s_z_twice, n_sites));
    }
    n_down_ = (n_sites - s_z_twice) / 2;

    binomial_.assign(n_sites + 1, std::vector<std::uint64_t>(n_sites + 1, 0));
    for (int p = 0; p <= n_sites; ++p) {
        binomial_[p][0] = 1;
        for (int t = 1; t <= p; ++t) {
            binomial_[p][t] = binomial_[p - 1][t - 1] + (t <= p - 1 ? binomial_[p - 1][t] : 0);
        }
    }

    const std::uint64_t count = binomial_[n_sites][n_down_];
    states_.reserve(count);
    if (n_down_ == 0) {
        states_.push_back(0);
        return;
    }
    Mask m = (Mask{1} << n_down_) - 1;
    for (std::uint64_t i = 0; i < count; ++i) {
        states_.push_back(m);
        if (i + 1 < count) m = next_combination(m);
    }
}

std::size_t SectorBasis::rank(Mask mask) const noexcept {
    // Ascending numeric order of fixed-popcount masks is colex order, whose
    // rank is sum_t C(position_t, t + 1) over the set bits.
    std::size_t r = 0;
    int t = 0;
    while (mask != 0) {
        const int p = std::countr_zero(mask);
        ++t;
        r += binomial_[p][t];
        mask &= mask - 1;
    }
    return r;
}

std::optional<std::size_t> SectorBasis::index_of(Mask mask) const noexcept {
    if (n_sites_ < 64 && (mask >> n_sites_) != 0) return std::nullopt;
    if (std::popcount(mask) != n_down_) return std::nullopt;
    return rank(mask);
}

SectorPtr sector_basis(int n_sites, int s_z_twice) {
    return std::make_shared<const SectorBasis>(n_sites, s_z_twice);
}

// ---------------------------------------------------------------------------

StateVector::StateVector(SectorPtr sector)
    : sector_(std::move(sector)), amplitudes_(sector_->size(), Amplitude{}) {}

StateVector::StateVector(SectorPtr sector, std::vector<Amplitude> amplitudes)
    : sector_(std::move(sector)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != sector_->size()) {
        throw std::invalid_argument(fmt::format("{} amplitudes for a sector of dimension {}",
                                                amplitudes_.size(), sector_->size()));
    }
}

StateVector StateVector::basis_state(SectorPtr sector, Mask mask) {
    const auto idx = sector->index_of(mask);
    if (!idx) {
        throw InvalidSectorError(fmt::format("ket {} is not in the sector",
                                             ket_string(mask, sector->n_sites())));
    }
    StateVector v(std::move(sector));
    v[*idx] = 1.0;
    return v;
}

double StateVector::norm() const noexcept {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return std::sqrt(s);
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw ContractViolation("cannot normalize the zero vector");
    StateVector out = *this;
    out *= 1.0 / n;
    return out;
}

StateVector& StateVector::operator+=(const StateVector& other) {
    require_same_sector(*this, other);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] += other.amplitudes_[i];
    return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
    require_same_sector(*this, other);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] -= other.amplitudes_[i];
    return *this;
}

StateVector& StateVector::operator*=(Amplitude factor) noexcept {
    for (auto& a : amplitudes_) a *= factor;
    return *this;
}

StateVector operator+(StateVector lhs, const StateVector& rhs) { return lhs += rhs; }
StateVector operator-(StateVector lhs, const StateVector& rhs) { return lhs -= rhs; }
StateVector operator*(Amplitude factor, StateVector v) { return v *= factor; }

Amplitude inner(const StateVector& bra, const StateVector& ket) {
    require_same_sector(bra, ket);
    Amplitude s{};
    for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
    return s;
}

// ---------------------------------------------------------------------------

StateVector apply_bond(double coupling, int site_i, int site_j, const StateVector& v) {
    const SectorBasis& basis = v.sector();
    check_site(basis, site_i);
    check_site(basis, site_j);
    if (site_i == site_j) throw std::invalid_argument("bond sites must be distinct");

    const Mask bi = site_bit(site_i);
    const Mask bj = site_bit(site_j);
    const Mask both = bi | bj;
    StateVector out(v.sector_ptr());
    for (std::size_t n = 0; n < basis.size(); ++n) {
        const Amplitude a = v[n];
        if (a == Amplitude{}) continue;
        const Mask m = basis.state(n);
        const bool parallel = ((m & bi) != 0) == ((m & bj) != 0);
        if (parallel) {
            out[n] += 0.25 * coupling * a;
        } else {
            out[n] -= 0.25 * coupling * a;
            out[basis.rank(m ^ both)] += 0.5 * coupling * a;
        }
    }
    return out;
}

double spin_z_expectation(const StateVector& v, int site) {
    const SectorBasis& basis = v.sector();
    check_site(basis, site);
    const double nrm = v.norm();
    if (std::abs(nrm - 1.0) > kNormTolerance) {
        throw ContractViolation(fmt::format("spin density needs a normalized state (norm {})", nrm));
    }
    const Mask bit = site_bit(site);
    double s = 0.0;
    for (std::size_t n = 0; n < basis.size(); ++n) {
        const double p = std::norm(v[n]);
        s += (basis.state(n) & bit) ? -0.5 * p : 0.5 * p;
    }
    return s;
}

StateVector translate(const StateVector& v, int shift) {
    const SectorBasis& basis = v.sector();
    const int n = basis.n_sites();
    const int s = ((shift % n) + n) % n;
    if (s == 0) return v;
    const Mask full = (n == 64) ? ~Mask{0} : ((Mask{1} << n) - 1);
    StateVector out(v.sector_ptr());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Mask m = basis.state(i);
        const Mask rotated = ((m << s) | (m >> (n - s))) & full;
        out[basis.rank(rotated)] = v[i];
    }
    return out;
}

namespace {

// Returns S^- v, or an empty optional when the lower sector does not exist.
std::optional<StateVector> lower_if_possible(const StateVector& v) {
    const SectorBasis& basis = v.sector();
    const int target = basis.s_z_twice() - 2;
    if (target < -basis.n_sites()) return std::nullopt;
    StateVector out(sector_basis(basis.n_sites(), target));
    const SectorBasis& lower = out.sector();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Amplitude a = v[i];
        if (a == Amplitude{}) continue;
        const Mask m = basis.state(i);
        for (int p = 0; p < basis.n_sites(); ++p) {
            const Mask bit = Mask{1} << p;
            if ((m & bit) == 0) out[lower.rank(m | bit)] += a;
        }
    }
    return out;
}

}  // namespace

double total_spin_squared(const StateVector& v) {
    // S^2 = S^+ S^- + S_z^2 - S_z, and <v|S^+ S^-|v> = |S^- v|^2.
    const double sz = 0.5 * v.sector().s_z_twice();
    double n2 = 0.0;
    for (const auto& a : v.amplitudes()) n2 += std::norm(a);
    double lowered = 0.0;
    if (auto w = lower_if_possible(v)) {
        for (const auto& a : w->amplitudes()) lowered += std::norm(a);
    }
    return lowered + (sz * sz - sz) * n2;
}

StateVector lowering(const StateVector& v) {
    auto w = lower_if_possible(v);
    if (!w) {
        throw InvalidSectorError(fmt::format("sector underflow: no sector below 2*S_z = {}",
                                             v.sector().s_z_twice()));
    }
    return std::move(*w);
}

StateVector site_lowering(const StateVector& v, int site) {
    const SectorBasis& basis = v.sector();
    check_site(basis, site);
    const int target = basis.s_z_twice() - 2;
    if (target < -basis.n_sites()) {
        throw InvalidSectorError("sector underflow in site lowering");
    }
    StateVector out(sector_basis(basis.n_sites(), target));
    const Mask bit = site_bit(site);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Mask m = basis.state(i);
        if ((m & bit) == 0) out[out.sector().rank(m | bit)] += v[i];
    }
    return out;
}

StateVector site_raising(const StateVector& v, int site) {
    const SectorBasis& basis = v.sector();
    check_site(basis, site);
    const int target = basis.s_z_twice() + 2;
    if (target > basis.n_sites()) {
        throw InvalidSectorError("sector overflow in site raising");
    }
    StateVector out(sector_basis(basis.n_sites(), target));
    const Mask bit = site_bit(site);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Mask m = basis.state(i);
        if ((m & bit) != 0) out[out.sector().rank(m & ~bit)] += v[i];
    }
    return out;
}

std::string ket_string(Mask mask, int n_sites) {
    std::string s(static_cast<std::size_t>(n_sites), '0');
    for (int k = 0; k < n_sites; ++k) {
        if (mask & (Mask{1} << k)) s[static_cast<std::size_t>(k)] = '1';
    }
    return s;
}

Mask parse_ket(std::string_view ket) {
    if (ket.size() > static_cast<std::size_t>(SectorBasis::kMaxSites)) {
        throw std::invalid_argument("ket longer than the supported site count");
    }
    Mask m = 0;
    for (std::size_t k = 0; k < ket.size(); ++k) {
        if (ket[k] == '1') {
            m |= Mask{1} << k;
        } else if (ket[k] != '0') {
            throw std::invalid_argument(fmt::format("invalid ket character '{}'", ket[k]));
        }
    }
    return m;
}

}  // namespace dwring
