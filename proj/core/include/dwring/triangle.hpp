#pragma once

// Closed-form three-spin ring with the cosine exchange profile
// J_k = j0 + j1 cos(2 pi (k-1)/3 - phase).

#include "dwring/basis.hpp"

namespace dwring {

enum class Pseudospin { up, down };

/// Uniform-ring chirality eigenstates |sigma +-> of the S = 1/2 doublets,
/// with the |001> (resp. |110>) coefficient real and positive.
StateVector triangle_chiral_state(Pseudospin sigma, int chirality);

struct TriangleEigensystem {
    double e_ground = 0.0;
    double e_excited = 0.0;
    double gap = 0.0;
    StateVector up_ground;     // (|up +> - e^{i phase}|up ->)/sqrt 2
    StateVector up_excited;    // (|up +> + e^{i phase}|up ->)/sqrt 2
    StateVector down_ground;
    StateVector down_excited;
};

/// Throws DegenerateGroundError when j1 == 0 and RangeError when j1 < 0.
TriangleEigensystem triangle_eigensystem(double j0, double j1, double phase);

/// Ground-state spin density rho_k(phase) = [1 + 2 cos(phase - 2 pi k/3)] / 6,
/// k in 1..3, of the |up g_phase> state. Independent of j0 and j1.
double triangle_spin_density(double phase, int site);

/// Effective exchange 4 j_r rho_{site_a}(phase_a) rho_{site_b}(phase_b) between two
/// triangle qubits joined by one bond j_r S_{site_a} . S_{site_b}. Positive is AFM.
double jeff_closed_form(int site_a, int site_b, double j_r, double phase_a, double phase_b);

/// |<sigma(phase_a)|sigma(phase_b)>| = |cos((phase_a - phase_b)/2)|.
double ground_overlap(double phase_a, double phase_b);

}  // namespace dwring
