#pragma once

// Fixed-S_z bitmask bases and elementary spin-1/2 operator actions.
//
// Bit convention: bit (k-1) of a mask is set when site k is |1> (s_z = -1/2).
// Sites are numbered from 1 in every public function of this header. Printed
// kets put site 1 leftmost, so the mask 0b001 prints as "100".

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dwring {

using Mask = std::uint64_t;
using Amplitude = std::complex<double>;

class SectorBasis {
public:
    /// Enumerates every n_sites-bit mask with (n_sites - s_z_twice)/2 set bits,
    /// ascending by mask value. Throws InvalidSectorError on parity or range mismatch.
    SectorBasis(int n_sites, int s_z_twice);

    int n_sites() const noexcept { return n_sites_; }
    int s_z_twice() const noexcept { return s_z_twice_; }
    int n_down() const noexcept { return n_down_; }
    std::size_t size() const noexcept { return states_.size(); }

    std::span<const Mask> states() const noexcept { return states_; }
    Mask state(std::size_t index) const { return states_[index]; }

    /// Position of `mask` in the ordered basis, or nullopt when the mask is
    /// not a member of this sector.
    std::optional<std::size_t> index_of(Mask mask) const noexcept;

    /// Combinadic rank of a mask already known to belong to the sector.
    std::size_t rank(Mask mask) const noexcept;

    bool same_sector(const SectorBasis& other) const noexcept {
        return n_sites_ == other.n_sites_ && s_z_twice_ == other.s_z_twice_;
    }

    static constexpr int kMaxSites = 40;

private:
    int n_sites_;
    int s_z_twice_;
    int n_down_;
    std::vector<Mask> states_;
    // binomial_[p][t] = C(p, t), used for ranking.
    std::vector<std::vector<std::uint64_t>> binomial_;
};

using SectorPtr = std::shared_ptr<const SectorBasis>;

/// Builds a shareable, immutable sector basis.
SectorPtr sector_basis(int n_sites, int s_z_twice);

/// Complex amplitudes over one sector, in basis order.
class StateVector {
public:
    explicit StateVector(SectorPtr sector);
    StateVector(SectorPtr sector, std::vector<Amplitude> amplitudes);

    /// Unit vector on a single basis mask. Throws InvalidSectorError if the
    /// mask is not in the sector.
    static StateVector basis_state(SectorPtr sector, Mask mask);

    const SectorBasis& sector() const noexcept { return *sector_; }
    const SectorPtr& sector_ptr() const noexcept { return sector_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }

    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }
    const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }
    Amplitude& operator[](std::size_t i) { return amplitudes_[i]; }

    double norm() const noexcept;
    StateVector normalized() const;

    StateVector& operator+=(const StateVector& other);
    StateVector& operator-=(const StateVector& other);
    StateVector& operator*=(Amplitude factor) noexcept;

private:
    SectorPtr sector_;
    std::vector<Amplitude> amplitudes_;
};

StateVector operator+(StateVector lhs, const StateVector& rhs);
StateVector operator-(StateVector lhs, const StateVector& rhs);
StateVector operator*(Amplitude factor, StateVector v);

/// <bra|ket>. Both vectors must live in the same sector.
Amplitude inner(const StateVector& bra, const StateVector& ket);

/// J (S_i . S_j) v. Sector is preserved.
StateVector apply_bond(double coupling, int site_i, int site_j, const StateVector& v);

/// <v|S_site^z|v> for normalized v. Throws ContractViolation when |norm - 1| > 1e-12.
double spin_z_expectation(const StateVector& v, int site);

/// Cyclic relabeling k -> k + shift (mod n_sites).
StateVector translate(const StateVector& v, int shift);

/// <v|S_tot^2|v>.
double total_spin_squared(const StateVector& v);

/// S_tot^- v, landing in sector s_z_twice - 2. Throws InvalidSectorError when
/// that sector does not exist.
StateVector lowering(const StateVector& v);

/// Single-site ladder operators S_site^- and S_site^+.
StateVector site_lowering(const StateVector& v, int site);
StateVector site_raising(const StateVector& v, int site);

/// Site-1-leftmost bitstring, e.g. mask 0b001 on three sites -> "100".
std::string ket_string(Mask mask, int n_sites);

/// Inverse of ket_string. Characters must be '0' or '1'.
Mask parse_ket(std::string_view ket);

}  // namespace dwring
