#include "dwring/serialization.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "dwring/error.hpp"

namespace dwring {

namespace {

using nlohmann::json;

json parse(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(fmt::format("{} is not valid JSON: {}", what, e.what()));
    }
}

template <class T>
T get(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key)) {
        throw std::invalid_argument(fmt::format("{}: missing field '{}'", where, key));
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument(fmt::format("{}: field '{}' has the wrong type", where, key));
    }
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where) {
    if (!j.is_object()) throw std::invalid_argument(fmt::format("{}: expected an object", where));
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) throw std::invalid_argument(fmt::format("{}: unknown field '{}'", where, key));
    }
}

json profile_json(const ExchangeProfile& p) {
    json out;
    out["kind"] = to_string(p.provenance().kind);
    out["params"] = json::object();
    for (const auto& [k, v] : p.provenance().params) out["params"][k] = v;
    out["couplings"] = std::vector<double>(p.couplings().begin(), p.couplings().end());
    return out;
}

ExchangeProfile profile_value(const json& j) {
    reject_unknown(j, {"kind", "params", "couplings"}, "profile");
    const ProfileKind kind = profile_kind_from_string(get<std::string>(j, "kind", "profile"));
    std::vector<double> couplings;
    if (j.contains("couplings")) couplings = get<std::vector<double>>(j, "couplings", "profile");

    if (kind == ProfileKind::explicit_list) {
        if (!j.contains("couplings")) throw std::invalid_argument("explicit profile needs 'couplings'");
        return ExchangeProfile(std::move(couplings));
    }
    const auto params = j.contains("params") ? get<std::map<std::string, double>>(j, "params", "profile")
                                             : std::map<std::string, double>{};
    ExchangeProfile generated = generate_profile(kind, params);
    if (!couplings.empty()) {
        bool agree = couplings.size() == generated.size();
        for (std::size_t k = 0; agree && k < couplings.size(); ++k) {
            const double ref = generated.couplings()[k];
            agree = std::abs(couplings[k] - ref) <= 1e-12 * std::max(1.0, std::abs(ref));
        }
        if (!agree) {
            throw std::invalid_argument("profile 'couplings' disagree with the values generated from 'params'");
        }
    }
    return generated;
}

json bond_json(const InterRingBond& b) {
    return json{{"ring_a", b.ring_a}, {"site_a", b.site_a}, {"ring_b", b.ring_b},
                {"site_b", b.site_b}, {"strength", b.strength}};
}

InterRingBond bond_value(const json& j) {
    reject_unknown(j, {"ring_a", "site_a", "ring_b", "site_b", "strength"}, "bond");
    InterRingBond b;
    b.ring_a = get<int>(j, "ring_a", "bond");
    b.site_a = get<int>(j, "site_a", "bond");
    b.ring_b = get<int>(j, "ring_b", "bond");
    b.site_b = get<int>(j, "site_b", "bond");
    b.strength = get<double>(j, "strength", "bond");
    return b;
}

std::vector<InterRingBond> bonds_value(const json& j, const char* key, const char* where) {
    std::vector<InterRingBond> bonds;
    if (!j.contains(key)) return bonds;
    const json& list = j.at(key);
    if (!list.is_array()) throw std::invalid_argument(fmt::format("{}: '{}' must be an array", where, key));
    for (const auto& b : list) bonds.push_back(bond_value(b));
    return bonds;
}

}  // namespace

std::string profile_to_json(const ExchangeProfile& profile) { return profile_json(profile).dump(); }

ExchangeProfile profile_from_json(const std::string& text) { return profile_value(parse(text, "profile")); }

std::string system_to_json(const SystemSpec& system) {
    json out;
    out["rings"] = json::array();
    for (const auto& r : system.rings) out["rings"].push_back(json{{"profile", profile_json(r.profile)}});
    out["bonds"] = json::array();
    for (const auto& b : system.bonds) out["bonds"].push_back(bond_json(b));
    return out.dump();
}

SystemSpec system_from_json(const std::string& text) {
    const json j = parse(text, "system");
    reject_unknown(j, {"rings", "bonds"}, "system");
    SystemSpec system;
    const json rings = get<json>(j, "rings", "system");
    if (!rings.is_array() || rings.empty()) throw std::invalid_argument("system: 'rings' must be a nonempty array");
    for (const auto& r : rings) {
        reject_unknown(r, {"profile", "n_sites"}, "ring");
        ExchangeProfile p = profile_value(get<json>(r, "profile", "ring"));
        if (r.contains("n_sites") && get<int>(r, "n_sites", "ring") != static_cast<int>(p.size())) {
            throw std::invalid_argument("ring: 'n_sites' disagrees with the profile length");
        }
        system.rings.push_back(RingSpec{std::move(p)});
    }
    system.bonds = bonds_value(j, "bonds", "system");
    system.validate();
    return system;
}

std::string composite_to_json(const CompositeSpec& spec) {
    json out;
    out["kind"] = to_string(spec.kind);
    out["n_triangles"] = spec.n_triangles;
    out["j0"] = spec.j0;
    out["j1"] = spec.j1;
    out["phases"] = spec.phases;
    out["bonds"] = json::array();
    for (const auto& b : spec.bonds) out["bonds"].push_back(bond_json(b));
    out["periodic"] = spec.periodic;
    out["params"] = json::object();
    for (const auto& [k, v] : spec.params) out["params"][k] = v;
    return out.dump();
}

CompositeSpec composite_from_json(const std::string& text) {
    const json j = parse(text, "composite");
    reject_unknown(j, {"kind", "n_triangles", "j0", "j1", "phases", "bonds", "periodic", "params"}, "composite");
    const CompositeKind kind = composite_kind_from_string(get<std::string>(j, "kind", "composite"));
    const int n = get<int>(j, "n_triangles", "composite");
    const double j0 = get<double>(j, "j0", "composite");
    const double j1 = get<double>(j, "j1", "composite");
    const bool periodic = j.contains("periodic") ? get<bool>(j, "periodic", "composite") : true;
    const auto params = j.contains("params") ? get<std::map<std::string, double>>(j, "params", "composite")
                                             : std::map<std::string, double>{};

    if (j.contains("phases")) {
        CompositeSpec spec;
        spec.kind = kind;
        spec.n_triangles = n;
        spec.j0 = j0;
        spec.j1 = j1;
        spec.phases = get<std::vector<double>>(j, "phases", "composite");
        spec.bonds = bonds_value(j, "bonds", "composite");
        spec.periodic = periodic;
        spec.params = params;
        spec.validate();
        return spec;
    }
    if (j.contains("bonds")) throw std::invalid_argument("composite: 'bonds' given without 'phases'");

    auto param = [&](const char* key) {
        const auto it = params.find(key);
        if (it == params.end()) throw std::invalid_argument(fmt::format("composite: params need '{}'", key));
        return it->second;
    };
    switch (kind) {
        case CompositeKind::fm_triangle:
            if (n != 3) throw std::invalid_argument("composite: fm_triangle has exactly 3 triangles");
            return build_fm_triangle(j0, j1, param("j_r"));
        case CompositeKind::qubit_ring:
            return build_qubit_ring(n, param("delta_phi"), j0, j1, param("j_r"));
        case CompositeKind::spin1_chain:
            return build_spin1_chain(n, j0, j1, param("j_r33"), param("j_r21"), periodic);
    }
    throw std::invalid_argument("composite: unknown kind");
}

std::string state_to_json(const StateVector& state) {
    json amps = json::array();
    for (const auto& a : state.amplitudes()) amps.push_back(json::array({a.real(), a.imag()}));
    return json{{"n_sites", state.sector().n_sites()},
                {"s_z_twice", state.sector().s_z_twice()},
                {"amplitudes", amps}}
        .dump();
}

StateVector state_from_json(const std::string& text) {
    const json j = parse(text, "state");
    reject_unknown(j, {"n_sites", "s_z_twice", "amplitudes"}, "state");
    auto sector = sector_basis(get<int>(j, "n_sites", "state"), get<int>(j, "s_z_twice", "state"));
    const auto pairs = get<std::vector<std::array<double, 2>>>(j, "amplitudes", "state");
    if (pairs.size() != sector->size()) {
        throw std::invalid_argument(
            fmt::format("state: {} amplitudes for a sector of dimension {}", pairs.size(), sector->size()));
    }
    std::vector<Amplitude> amps;
    amps.reserve(pairs.size());
    for (const auto& p : pairs) amps.emplace_back(p[0], p[1]);
    return StateVector(std::move(sector), std::move(amps));
}

std::string spectrum_to_csv(std::span<const double> eigenvalues) {
    std::string out = "index,eigenvalue\n";
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        out += fmt::format("{},{:.17g}\n", i, eigenvalues[i]);
    }
    return out;
}

}  // namespace dwring
