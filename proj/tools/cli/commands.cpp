#include "commands.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include <dwring/composites.hpp>
#include <dwring/effective.hpp>
#include <dwring/eigensolvers.hpp>
#include <dwring/error.hpp>
#include <dwring/parallel.hpp>
#include <dwring/serialization.hpp>
#include <dwring/triangle.hpp>

#ifndef DWRING_VERSION
#define DWRING_VERSION "unknown"
#endif

namespace dwring::cli {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_options(const json& options, const std::set<std::string>& allowed, Command command) {
    for (const auto& [key, value] : options.items()) {
        if (!allowed.count(key)) {
            throw ConfigError(fmt::format("options: '{}' is not an option of {}", key, to_string(command)));
        }
    }
}

template <class T>
T option(const json& options, const char* key, T fallback) {
    if (!options.contains(key)) return fallback;
    try {
        return options.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(fmt::format("options: '{}' has the wrong type", key));
    }
}

SolverSettings solver_settings(const RunConfig& config, int threads) {
    SolverSettings s;
    const std::string kind = option<std::string>(config.options, "solver", "auto");
    if (kind == "auto") {
        s.kind = SolverKind::automatic;
    } else if (kind == "dense") {
        s.kind = SolverKind::dense;
    } else if (kind == "lanczos") {
        s.kind = SolverKind::lanczos;
    } else {
        throw ConfigError(fmt::format("options: solver '{}' is not auto, dense or lanczos", kind));
    }
    s.lanczos_tol = config.tolerances.lanczos_tol;
    s.lanczos_max_iter = config.tolerances.lanczos_max_iter;
    s.seed = config.seed;
    s.threads = threads;
    return s;
}

EffectiveOptions effective_options(const RunConfig& config, int threads) {
    EffectiveOptions o;
    o.doublet.solver = solver_settings(config, threads);
    o.doublet.degeneracy_rel_tol = config.tolerances.degeneracy_rel_tol;
    o.validity_threshold = config.tolerances.validity_threshold;
    return o;
}

SystemSpec system_input(const json& input) {
    if (input.contains("rings")) return system_from_json(input.dump());
    return SystemSpec{{RingSpec{profile_from_json(input.dump())}}, {}};
}

/// Phase of a three-site cosine ring, including any cyclic shift of its labels.
std::optional<double> cosine_phase(const ExchangeProfile& p) {
    const auto& prov = p.provenance();
    if (prov.kind != ProfileKind::cosine || p.size() != 3) return std::nullopt;
    double phase = prov.params.at("phase");
    if (const auto it = prov.params.find("shift"); it != prov.params.end()) {
        phase += 2.0 * std::numbers::pi * it->second / 3.0;
    }
    return phase;
}

struct PointResult {
    std::vector<std::vector<double>> rows;
    int warnings = 0;
};

// -- profile ------------------------------------------------------------------

std::vector<std::string> profile_columns() { return {"k", "J_k"}; }

PointResult profile_point(const json& input) {
    const ExchangeProfile p = profile_from_json(input.dump());
    PointResult r;
    for (std::size_t k = 0; k < p.size(); ++k) r.rows.push_back({double(k + 1), p.couplings()[k]});
    return r;
}

// -- spectrum -----------------------------------------------------------------

std::vector<std::string> spectrum_columns(const RunConfig& config) {
    const int k = option<int>(config.options, "k", 8);
    if (k < 1) throw ConfigError("options: k must be >= 1");
    std::vector<std::string> cols;
    for (int i = 0; i < k; ++i) cols.push_back(fmt::format("e{}", i));
    return cols;
}

PointResult spectrum_point(const RunConfig& config, const json& input, int threads) {
    const int k = option<int>(config.options, "k", 8);
    const SystemSpec system = system_input(input);
    system.validate();
    const SolverSettings settings = solver_settings(config, threads);
    std::vector<double> values;
    if (config.options.contains("sector")) {
        const HamiltonianApplier h = build_hamiltonian(system, option<int>(config.options, "sector", 0));
        const int want = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(k), h.dimension()));
        values = lowest_eigenpairs(h, want, settings, false).eigenvalues;
    } else {
        values = lowest_states(system_bonds(system), system.total_sites(), 0.0, k, settings);
    }
    values.resize(static_cast<std::size_t>(k), kNaN);
    return PointResult{{values}, 0};
}

// -- effective-exchange ---------------------------------------------------------

std::vector<std::string> effective_columns() {
    return {"j_eff",      "c",           "residual",        "validity_ratio", "splitting",
            "closed_form", "density_product", "density_a",  "density_b"};
}

PointResult effective_point(const RunConfig& config, const json& input, int threads) {
    const SystemSpec system = system_from_json(input.dump());
    if (system.rings.size() != 2) {
        throw ConfigError(fmt::format("effective-exchange needs exactly two rings, got {}", system.rings.size()));
    }
    if (system.bonds.empty()) throw ConfigError("effective-exchange needs at least one bond");
    const EffectiveOptions opts = effective_options(config, threads);
    const Doublet da = ground_doublet(system.rings[0], opts.doublet);
    const Doublet db = ground_doublet(system.rings[1], opts.doublet);
    const PairCoupling pc = effective_exchange(da, db, system.bonds, opts);

    const auto pa = cosine_phase(system.rings[0].profile);
    const auto pb = cosine_phase(system.rings[1].profile);
    double closed = kNaN;
    if (pa && pb) {
        closed = 0.0;
        for (const auto& b : system.bonds) {
            const bool forward = b.ring_a == 0;
            closed += jeff_closed_form(forward ? b.site_a : b.site_b, forward ? b.site_b : b.site_a, b.strength,
                                       *pa, *pb);
        }
    }
    const double density = system.bonds.size() == 1 ? density_product_check(da, db, system.bonds).rhs : kNaN;
    const auto& first = system.bonds.front();
    const int site_a = first.ring_a == 0 ? first.site_a : first.site_b;
    const int site_b = first.ring_a == 0 ? first.site_b : first.site_a;

    PointResult r;
    r.rows.push_back({pc.projected.j_eff, pc.identity_total, pc.projected.anisotropy_residual, pc.validity_ratio,
                      pc.splitting, closed, density, spin_z_expectation(da.up, site_a),
                      spin_z_expectation(db.up, site_b)});
    r.warnings = pc.validity_warning ? 1 : 0;
    return r;
}

// -- composite ------------------------------------------------------------------

std::string composite_analysis(const RunConfig& config) {
    const CompositeSpec spec = composite_from_json(config.input.dump());
    const std::string fallback = spec.kind == CompositeKind::spin1_chain ? "gap" : "couplings";
    const std::string analysis = option<std::string>(config.options, "analysis", fallback);
    if (analysis != "gap" && analysis != "couplings") {
        throw ConfigError(fmt::format("options: analysis '{}' is not couplings or gap", analysis));
    }
    return analysis;
}

std::vector<std::string> composite_columns(const std::string& analysis) {
    if (analysis == "gap") {
        return {"ratio_jeff",        "e_gap_full",        "e_gap_eff",
                "delta_e_gap",       "ground_energy_full", "ground_energy_eff",
                "ground_degeneracy_full", "ground_degeneracy_eff"};
    }
    return {"triangle_a", "triangle_b", "closed_form", "numeric", "residual"};
}

PointResult composite_point(const RunConfig& config, const std::string& analysis, const json& input,
                            int threads) {
    const CompositeSpec spec = composite_from_json(input.dump());
    PointResult r;
    if (analysis == "gap") {
        const int per_sector = option<int>(config.options, "per_sector", 4);
        if (per_sector < 2) throw ConfigError("options: per_sector must be >= 2");
        const GapComparison g = gap_comparison(spec, solver_settings(config, threads), per_sector,
                                               config.tolerances.level_merge_rel);
        const auto it = g.ratio_inputs.find("ratio_jeff");
        r.rows.push_back({it == g.ratio_inputs.end() ? kNaN : it->second, g.e_gap_full, g.e_gap_eff,
                          g.delta_e_gap, g.ground_energy_full, g.ground_energy_eff,
                          double(g.ground_degeneracy_full), double(g.ground_degeneracy_eff)});
        return r;
    }
    if (option<bool>(config.options, "numeric", true)) {
        for (const auto& p : pair_couplings(spec, effective_options(config, threads))) {
            r.rows.push_back({double(p.ring_a + 1), double(p.ring_b + 1), p.closed_form, p.numeric,
                              p.anisotropy_residual});
        }
    } else {
        const EffectiveModel model = effective_model(spec);
        for (const auto& b : model.bonds) {
            r.rows.push_back({double(b.bit_i + 1), double(b.bit_j + 1), b.coupling, kNaN, kNaN});
        }
    }
    return r;
}

// -- grid -----------------------------------------------------------------------

std::vector<std::vector<double>> grid_points(const RunConfig& config) {
    std::vector<std::vector<double>> points{{}};
    for (const auto& axis : config.grid) {
        std::vector<std::vector<double>> next;
        for (const auto& prefix : points) {
            for (double v : axis.values) {
                auto p = prefix;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        }
        points = std::move(next);
    }
    return points;
}

json apply_point(const RunConfig& config, const std::vector<double>& point) {
    json input = config.input;
    for (std::size_t a = 0; a < config.grid.size(); ++a) {
        const json::json_pointer ptr(config.grid[a].pointer);
        if (!input.contains(ptr.parent_pointer())) {
            throw ConfigError(fmt::format("grid: parameter {} does not address the input", config.grid[a].pointer));
        }
        input[ptr] = point[a];
    }
    return input;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    return fmt::format("{:.17g}", v);
}

}  // namespace

Table run_command(const RunConfig& config) {
    Table table;
    for (const auto& axis : config.grid) table.columns.push_back(axis.name);

    std::string analysis;
    std::vector<std::string> cols;
    switch (config.command) {
        case Command::profile:
            check_options(config.options, {}, config.command);
            cols = profile_columns();
            break;
        case Command::spectrum:
            check_options(config.options, {"k", "sector", "solver"}, config.command);
            cols = spectrum_columns(config);
            break;
        case Command::effective_exchange:
            check_options(config.options, {"solver"}, config.command);
            cols = effective_columns();
            break;
        case Command::composite:
            check_options(config.options, {"analysis", "numeric", "solver", "per_sector"}, config.command);
            analysis = composite_analysis(config);
            cols = composite_columns(analysis);
            break;
    }
    table.columns.insert(table.columns.end(), cols.begin(), cols.end());

    const auto points = grid_points(config);
    const int inner_threads = points.size() == 1 ? config.threads : 1;
    std::vector<PointResult> results(points.size());
    parallel_for(points.size(), config.threads, [&](std::size_t i) {
        const json input = apply_point(config, points[i]);
        switch (config.command) {
            case Command::profile: results[i] = profile_point(input); break;
            case Command::spectrum: results[i] = spectrum_point(config, input, inner_threads); break;
            case Command::effective_exchange: results[i] = effective_point(config, input, inner_threads); break;
            case Command::composite: results[i] = composite_point(config, analysis, input, inner_threads); break;
        }
    });

    int warnings = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (auto& row : results[i].rows) {
            std::vector<double> full = points[i];
            full.insert(full.end(), row.begin(), row.end());
            table.rows.push_back(std::move(full));
        }
        warnings += results[i].warnings;
    }
    if (config.command == Command::effective_exchange) {
        table.notes.push_back(fmt::format("validity_threshold: {}", format_number(config.tolerances.validity_threshold)));
        if (warnings > 0) {
            table.notes.push_back(fmt::format(
                "warning: J_r/gap exceeds the validity threshold at {} of {} point(s)", warnings, points.size()));
        }
    }
    return table;
}

std::string render(const RunConfig& config, const Table& table) {
    if (config.format == "json") {
        json rows = json::array();
        for (const auto& row : table.rows) {
            json r = json::array();
            for (double v : row) {
                if (std::isnan(v)) {
                    r.push_back(nullptr);
                } else {
                    r.push_back(v);
                }
            }
            rows.push_back(std::move(r));
        }
        json doc{{"metadata", {{"tool", "dwring"}, {"version", DWRING_VERSION}, {"config", config.echo()},
                               {"notes", table.notes}}},
                 {"columns", table.columns},
                 {"rows", rows}};
        return doc.dump(1) + "\n";
    }
    std::string out;
    out += fmt::format("# dwring {}\n", DWRING_VERSION);
    out += fmt::format("# command: {}\n", to_string(config.command));
    out += fmt::format("# seed: {}\n", config.seed);
    out += fmt::format("# tolerances: {}\n", config.echo().at("tolerances").dump());
    out += fmt::format("# config: {}\n", config.echo().dump());
    for (const auto& note : table.notes) out += fmt::format("# {}\n", note);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out += (c ? "," : "") + table.columns[c];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += (c ? "," : "") + format_number(row[c]);
        }
        out += "\n";
    }
    return out;
}

}  // namespace dwring::cli
