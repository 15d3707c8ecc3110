#pragma once

// JSON text forms of the library's value types. Parse failures raise
// std::invalid_argument with the offending field named.
//
//   profile   {"kind": "two_value", "params": {"j": 1, "a": 0.2}, "couplings": [...]}
//   system    {"rings": [{"profile": {...}}, ...],
//              "bonds": [{"ring_a": 0, "site_a": 3, "ring_b": 1, "site_b": 3, "strength": 0.1}]}
//   composite {"kind": "spin1_chain", "n_triangles": 4, "j0": 10, "j1": 8, "phases": [...],
//              "bonds": [...], "periodic": true, "params": {...}}
//   state     {"n_sites": 3, "s_z_twice": 1, "amplitudes": [[re, im], ...]}

#include <string>

#include "dwring/basis.hpp"
#include "dwring/composites.hpp"
#include "dwring/hamiltonian.hpp"
#include "dwring/profiles.hpp"

namespace dwring {

std::string profile_to_json(const ExchangeProfile& profile);
/// Generated kinds are rebuilt from "params"; when "couplings" is present as
/// well it must agree with the regenerated values to 1e-12.
ExchangeProfile profile_from_json(const std::string& text);

std::string system_to_json(const SystemSpec& system);
SystemSpec system_from_json(const std::string& text);

/// A composite may also be given by builder arguments only:
/// {"kind": "spin1_chain", "n_triangles": 4, "j0": 10, "j1": 8,
///  "params": {"j_r33": 1, "j_r21": 0.5}, "periodic": true}.
std::string composite_to_json(const CompositeSpec& spec);
CompositeSpec composite_from_json(const std::string& text);

std::string state_to_json(const StateVector& state);
StateVector state_from_json(const std::string& text);

/// Rows "index,eigenvalue" with 17 significant digits and a header line.
std::string spectrum_to_csv(std::span<const double> eigenvalues);

}  // namespace dwring
