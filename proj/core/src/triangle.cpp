#include "dwring/triangle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "dwring/error.hpp"

namespace dwring {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_triangle_site(int site) {
    if (site < 1 || site > 3) {
        throw std::out_of_range(fmt::format("triangle site {} outside 1..3", site));
    }
}

}  // namespace

StateVector triangle_chiral_state(Pseudospin sigma, int chirality) {
    if (chirality != 1 && chirality != -1) {
        throw std::invalid_argument("chirality must be +1 or -1");
    }
    const bool up = sigma == Pseudospin::up;
    auto sector = sector_basis(3, up ? 1 : -1);
    // Kets in the order they appear: |001>,|010>,|100> for up; |110>,|101>,|011> for down.
    const char* kets_up[3] = {"001", "010", "100"};
    const char* kets_down[3] = {"110", "101", "011"};
    StateVector v(sector);
    for (int n = 0; n < 3; ++n) {
        const Mask m = parse_ket(up ? kets_up[n] : kets_down[n]);
        v[*sector->index_of(m)] = std::polar(1.0 / std::sqrt(3.0), chirality * kTwoPi * n / 3.0);
    }
    return v;
}

TriangleEigensystem triangle_eigensystem(double j0, double j1, double phase) {
    if (j1 < 0.0) throw RangeError("modulation amplitude j1 must be positive");
    if (j1 == 0.0) {
        throw DegenerateGroundError("uniform triangle (j1 = 0) has a fourfold degenerate ground state");
    }
    const Amplitude e_phase = std::polar(1.0, phase);
    const double r = 1.0 / std::sqrt(2.0);
    auto combine = [&](Pseudospin s, double sign) {
        StateVector plus = triangle_chiral_state(s, 1);
        StateVector minus = triangle_chiral_state(s, -1);
        minus *= sign * e_phase;
        plus += minus;
        plus *= r;
        return plus;
    };
    TriangleEigensystem out{
        -0.75 * (j0 + j1),
        -0.75 * (j0 - j1),
        1.5 * j1,
        combine(Pseudospin::up, -1.0),
        combine(Pseudospin::up, +1.0),
        combine(Pseudospin::down, -1.0),
        combine(Pseudospin::down, +1.0),
    };
    return out;
}

double triangle_spin_density(double phase, int site) {
    check_triangle_site(site);
    return (1.0 + 2.0 * std::cos(phase - kTwoPi * site / 3.0)) / 6.0;
}

double jeff_closed_form(int site_a, int site_b, double j_r, double phase_a, double phase_b) {
    return 4.0 * j_r * triangle_spin_density(phase_a, site_a) * triangle_spin_density(phase_b, site_b);
}

double ground_overlap(double phase_a, double phase_b) {
    return std::abs(std::cos(0.5 * (phase_a - phase_b)));
}

}  // namespace dwring
