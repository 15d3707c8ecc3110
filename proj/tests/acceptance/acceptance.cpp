// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <dwring/composites.hpp>
#include <dwring/doublet.hpp>
#include <dwring/effective.hpp>
#include <dwring/eigensolvers.hpp>
#include <dwring/parallel.hpp>
#include <dwring/profiles.hpp>
#include <dwring/triangle.hpp>

#include "oracle.hpp"

using namespace dwring;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt_double(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Largest anisotropy_residual / J_r seen by criteria 2-5.
double g_isotropy_worst = 0.0;
int g_isotropy_count = 0;

void record_isotropy(double residual, double j_r) {
    g_isotropy_worst = std::max(g_isotropy_worst, residual / j_r);
    ++g_isotropy_count;
}

std::vector<InterRingBond> single(int sa, int sb, double jr) { return {InterRingBond{0, sa, 1, sb, jr}}; }

RingSpec triangle(double phase, double j0 = 1.0, double j1 = 0.9) { return RingSpec{cosine_profile(j0, j1, phase)}; }

std::vector<double> cosine(double j0, double j1, double phi) {
    std::vector<double> j(3);
    for (int k = 0; k < 3; ++k) j[k] = j0 + j1 * std::cos(2 * kPi * k / 3 - phi);
    return j;
}

std::vector<double> grid(int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = 2 * kPi * i / n;
    return g;
}

Outcome triangle_analytics() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> j0d(0.5, 3.0), frac(0.05, 0.95), ph(0.0, 2 * kPi);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const double j0 = j0d(rng), j1 = frac(rng) * j0, phi = ph(rng);
        const auto w = oracle::eigenvalues(oracle::heisenberg(oracle::ring_bonds(cosine(j0, j1, phi)), 3));
        const double eg = -0.75 * (j0 + j1), ee = -0.75 * (j0 - j1);
        worst = std::max({worst, std::abs(w[0] - eg), std::abs(w[1] - eg), std::abs(w[2] - ee),
                          std::abs(w[3] - ee), std::abs((w[2] - w[0]) - 1.5 * j1)});
        const auto sys = triangle_eigensystem(j0, j1, phi);
        worst = std::max({worst, std::abs(sys.e_ground - eg), std::abs(sys.e_excited - ee),
                          std::abs(sys.gap - 1.5 * j1)});
    }
    double drift = 0.0;
    const auto ref = triangle_eigensystem(1.0, 0.7, 0.0);
    const auto ref_w = oracle::eigenvalues(oracle::heisenberg(oracle::ring_bonds(cosine(1, 0.7, 0)), 3));
    for (double phi : grid(64)) {
        const auto w = oracle::eigenvalues(oracle::heisenberg(oracle::ring_bonds(cosine(1, 0.7, phi)), 3));
        for (std::size_t k = 0; k < w.size(); ++k) drift = std::max(drift, std::abs(w[k] - ref_w[k]));
        const auto sys = triangle_eigensystem(1.0, 0.7, phi);
        drift = std::max({drift, std::abs(sys.e_ground - ref.e_ground), std::abs(sys.e_excited - ref.e_excited)});
    }
    return {worst < 1e-10 && drift < 1e-10,
            "max formula error " + fmt_double("%.2e", worst) + ", phase drift " + fmt_double("%.2e", drift)};
}

Outcome closed_form_equivalence() {
    const double jr = 0.1;
    const auto phases = grid(32);
    std::vector<Doublet> doublets;
    for (double p : phases) doublets.push_back(ground_doublet(triangle(p)));
    double worst = 0.0;
    const int pairs[3][2] = {{3, 3}, {2, 1}, {3, 1}};
    for (const auto& p : pairs) {
        for (std::size_t a = 0; a < phases.size(); ++a) {
            for (std::size_t b = 0; b < phases.size(); ++b) {
                const PairCoupling pc = effective_exchange(doublets[a], doublets[b], single(p[0], p[1], jr));
                const double cf = jeff_closed_form(p[0], p[1], jr, phases[a], phases[b]);
                worst = std::max(worst, std::abs(pc.projected.j_eff - cf));
                record_isotropy(pc.projected.anisotropy_residual, jr);
            }
        }
    }
    return {worst < 1e-9, "3 x 32 x 32 points, max |numeric - closed form| " + fmt_double("%.2e", worst)};
}

Outcome paper_values() {
    const double jr = 0.37;
    const double e1 = std::abs(jeff_closed_form(2, 1, jr, kPi / 3, kPi / 3) + 2 * jr / 9);
    const double e2 = std::abs(jeff_closed_form(2, 1, jr, kPi, kPi / 3) - 4 * jr / 9);
    // Numeric counterparts on safe profiles.
    const PairCoupling n1 = effective_exchange_numeric(triangle(kPi / 3), triangle(kPi / 3), single(2, 1, jr));
    const PairCoupling n2 = effective_exchange_numeric(triangle(kPi), triangle(kPi / 3), single(2, 1, jr));
    record_isotropy(n1.projected.anisotropy_residual, jr);
    record_isotropy(n2.projected.anisotropy_residual, jr);
    const double n_err = std::max(std::abs(n1.projected.j_eff + 2 * jr / 9), std::abs(n2.projected.j_eff - 4 * jr / 9));

    auto f = [](double x) { return jeff_closed_form(3, 3, 1.0, x, 0.0); };
    std::vector<double> roots;
    const int n = 600;
    for (int i = 0; i < n; ++i) {
        double lo = 2 * kPi * i / n, hi = 2 * kPi * (i + 1) / n;
        double flo = f(lo);
        if ((flo > 0) == (f(hi) > 0)) continue;
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            if ((f(mid) > 0) == (flo > 0)) lo = mid;
            else hi = mid;
        }
        roots.push_back(0.5 * (lo + hi));
    }
    const bool roots_ok = roots.size() == 2 && std::abs(roots[0] - 2 * kPi / 3) < 1e-8 &&
                          std::abs(roots[1] - 4 * kPi / 3) < 1e-8;
    std::string r;
    for (double x : roots) r += fmt_double(" %.10f", x);
    return {e1 < 1e-15 && e2 < 1e-15 && n_err < 1e-9 && roots_ok,
            "closed form err " + fmt_double("%.1e", std::max(e1, e2)) + ", numeric err " + fmt_double("%.1e", n_err) +
                ", roots" + r};
}

Outcome five_ring() {
    const RingSpec ring{two_value_profile(1.0, 0.2)};
    const PairCoupling pc = effective_exchange_numeric(ring, ring, single(3, 3, 0.1));
    record_isotropy(pc.projected.anisotropy_residual, 0.1);

    // Coupled 10-spin check of the projected splitting.
    const SystemSpec sys{{ring, ring}, single(3, 3, 0.1)};
    const auto levels = lowest_levels(system_bonds(sys), 10, 0.0, 4, {});
    const double full_split = levels.size() >= 2 && levels[0].degeneracy == 1 ? levels[1].energy - levels[0].energy : NAN;
    const double bound = 2 * 0.1 * 0.1 / std::min(pc.gap_a, pc.gap_b);
    const bool ok = std::abs(pc.identity_total + 3.037) <= 1e-3 && std::abs(pc.projected.j_eff - 0.096) <= 1e-3 &&
                    std::abs(full_split - pc.projected.j_eff) < bound;
    return {ok, "constant " + fmt_double("%.6f", pc.identity_total) + ", j_eff " + fmt_double("%.6f", pc.projected.j_eff) +
                    ", coupled splitting " + fmt_double("%.6f", full_split)};
}

struct StaggeredScan {
    std::vector<double> delta_k, j_eff, j_eff_shifted, density_diff, validity, residual;
};

StaggeredScan staggered_scan(int threads) {
    const int n = 100;
    StaggeredScan s;
    s.delta_k.resize(n);
    s.j_eff.resize(n);
    s.j_eff_shifted.resize(n);
    s.density_diff.resize(n);
    s.validity.resize(n);
    s.residual.resize(n);
    const Doublet fixed = ground_doublet(RingSpec{staggered_profile({1, 0.1, 2, 50, 0.0, 5})});
    const auto bonds = single(3, 3, 0.1);
    parallel_for(n, threads, [&](std::size_t i) {
        const double dk = 10.0 * static_cast<double>(i) / n;
        s.delta_k[i] = dk;
        const Doublet a = ground_doublet(RingSpec{staggered_profile({1, 0.1, 2, 50, dk, 5})});
        const Doublet shifted = ground_doublet(RingSpec{staggered_profile({1, 0.1, 2, 50, dk + 10.0, 5})});
        const PairCoupling pc = effective_exchange(a, fixed, bonds);
        s.j_eff[i] = pc.projected.j_eff;
        s.j_eff_shifted[i] = effective_exchange(shifted, fixed, bonds).projected.j_eff;
        s.density_diff[i] = density_product_check(a, fixed, bonds).diff;
        s.validity[i] = pc.validity_ratio;
        s.residual[i] = pc.projected.anisotropy_residual;
    });
    return s;
}

Outcome staggered() {
    const StaggeredScan s = staggered_scan(1);
    double period = 0.0, density = 0.0, ratio = 0.0;
    for (std::size_t i = 0; i < s.delta_k.size(); ++i) {
        period = std::max(period, std::abs(s.j_eff[i] - s.j_eff_shifted[i]));
        density = std::max(density, s.density_diff[i]);
        ratio = std::max(ratio, s.validity[i]);
        record_isotropy(s.residual[i], 0.1);
    }
    return {period < 1e-9 && density < 1e-9 && std::abs(ratio - 0.153) <= 0.005,
            "100 points, periodicity err " + fmt_double("%.1e", period) + ", density law err " +
                fmt_double("%.1e", density) + ", max validity ratio " + fmt_double("%.6f", ratio)};
}

Outcome isotropy() {
    return {g_isotropy_count > 0 && g_isotropy_worst < 1e-9,
            std::to_string(g_isotropy_count) + " configurations, max residual/J_r " + fmt_double("%.2e", g_isotropy_worst)};
}

Outcome perturbative() {
    const double gap = 1.5;
    double worst_ratio = 0.0;
    bool ok = true;
    for (double jr : {0.01, 0.05, 0.1}) {
        for (double pa : {0.3, 1.9, 2.6, 4.0, 5.5}) {
            const RingSpec a = triangle(pa, 1.0, 1.0), b = triangle(0.0, 1.0, 1.0);
            const PairCoupling pc = effective_exchange_numeric(a, b, single(3, 3, jr));
            const SystemSpec sys{{a, b}, single(3, 3, jr)};
            const auto levels = lowest_levels(system_bonds(sys), 6, 0.0, 8, {});
            if (levels.size() < 2) return {false, "fewer than two levels"};
            // Singlet and triplet are the two lowest levels, in either order.
            const bool singlet_low = levels[0].degeneracy == 1;
            const bool shape = singlet_low ? levels[1].degeneracy == 3 : levels[0].degeneracy == 3 && levels[1].degeneracy == 1;
            const double split = singlet_low ? levels[1].energy - levels[0].energy : levels[0].energy - levels[1].energy;
            const double err = std::abs(split - pc.projected.j_eff);
            ok = ok && shape && err < 2 * jr * jr / gap;
            worst_ratio = std::max(worst_ratio, err / (2 * jr * jr / gap));
        }
    }
    return {ok, "15 configurations, max |split - j_eff| / (2 J_r^2/gap) " + fmt_double("%.3f", worst_ratio)};
}

Outcome fm_triangle() {
    const double jr = 0.09;
    const CompositeSpec closed = build_fm_triangle(1.0, 1.0, jr);
    double err = 0.0;
    for (const auto& b : effective_model(closed).bonds) err = std::max(err, std::abs(b.coupling + 2 * jr / 9));
    // Numeric projection needs strictly positive intra-ring couplings.
    const CompositeSpec numeric = build_fm_triangle(1.0, 0.9, jr);
    for (const auto& p : pair_couplings(numeric)) err = std::max(err, std::abs(p.numeric + 2 * jr / 9));
    const EffectiveModel m = effective_model(closed);
    const auto levels = lowest_levels(m.bonds, 3, m.constant, 4, {});
    const int deg = levels.empty() ? 0 : levels[0].degeneracy;
    return {err < 1e-9 && deg == 4, "max coupling err " + fmt_double("%.1e", err) + ", ground degeneracy " + std::to_string(deg)};
}

std::vector<GapComparison> chain_scan(const SolverSettings& settings) {
    std::vector<GapComparison> out;
    for (double j21 : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) out.push_back(gap_comparison(build_spin1_chain(4, 10, 8, 1, j21, true), settings));
    return out;
}

Outcome spin1_chain() {
    SolverSettings dense, lanczos;
    dense.kind = SolverKind::dense;
    lanczos.kind = SolverKind::lanczos;
    lanczos.lanczos_tol = 1e-11;
    const auto d = chain_scan(dense);
    const auto l = chain_scan(lanczos);
    bool ok = true;
    double agree = 0.0;
    std::string deltas;
    // The grid runs from large to small J_r33/J_r21, so delta increases along it.
    for (std::size_t i = 0; i < d.size(); ++i) {
        ok = ok && d[i].e_gap_full > 0 && d[i].ground_degeneracy_full == 1;
        if (i > 0) ok = ok && d[i].delta_e_gap > d[i - 1].delta_e_gap;
        agree = std::max({agree, std::abs(d[i].e_gap_full - l[i].e_gap_full), std::abs(d[i].e_gap_eff - l[i].e_gap_eff)});
        deltas += fmt_double(" %.5f", d[i].delta_e_gap);
    }
    ok = ok && agree < 1e-8;
    return {ok, "delta_E_gap" + deltas + ", Lanczos vs dense " + fmt_double("%.1e", agree)};
}

Outcome overlap_law() {
    const auto phases = grid(32);
    std::vector<StateVector> states;
    for (double p : phases) states.push_back(triangle_eigensystem(1.0, 0.9, p).up_ground);
    double worst = 0.0;
    for (std::size_t a = 0; a < phases.size(); ++a) {
        for (std::size_t b = 0; b < phases.size(); ++b) {
            const double law = std::abs(std::cos((phases[a] - phases[b]) / 2));
            worst = std::max({worst, std::abs(std::abs(inner(states[a], states[b])) - law),
                              std::abs(ground_overlap(phases[a], phases[b]) - law)});
        }
    }
    int violations = 0;
    const Doublet ref = ground_doublet(triangle(0.0));
    for (int i = 0; i < 720; ++i) {
        const double pa = 2 * kPi * (i + 0.5) / 720;
        const double o = ground_overlap(pa, 0.0);
        const double cf = jeff_closed_form(3, 3, 1.0, pa, 0.0);
        if ((o >= 0.5 && cf < 0) || (o <= 0.5 && cf > 0)) ++violations;
        if (i % 10 == 0) {
            const double nj = effective_exchange(ground_doublet(triangle(pa)), ref, single(3, 3, 1.0)).projected.j_eff;
            if ((o > 0.5 + 1e-9 && nj <= 0) || (o < 0.5 - 1e-9 && nj >= 0)) ++violations;
        }
    }
    return {worst < 1e-12 && violations == 0,
            "max overlap err " + fmt_double("%.1e", worst) + ", sign violations " + std::to_string(violations)};
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return INFINITY;
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

Outcome determinism() {
    double worst = 0.0;
    const StaggeredScan s1 = staggered_scan(1), s4 = staggered_scan(4);
    worst = std::max({worst, max_diff(s1.j_eff, s4.j_eff), max_diff(s1.validity, s4.validity),
                      max_diff(s1.density_diff, s4.density_diff)});

    auto chain = [](int threads) {
        SolverSettings s;
        s.kind = SolverKind::lanczos;
        s.seed = 11;
        s.threads = threads;
        std::vector<double> v;
        for (const auto& g : chain_scan(s)) {
            v.insert(v.end(), {g.e_gap_full, g.e_gap_eff, g.ground_energy_full, g.ground_energy_eff});
        }
        return v;
    };
    worst = std::max(worst, max_diff(chain(1), chain(4)));

    auto five = [](int threads) {
        EffectiveOptions o;
        o.doublet.solver.kind = SolverKind::lanczos;
        o.doublet.solver.threads = threads;
        const RingSpec ring{two_value_profile(1.0, 0.2)};
        const PairCoupling pc = effective_exchange_numeric(ring, ring, single(3, 3, 0.1), o);
        return std::vector<double>{pc.identity_total, pc.projected.j_eff, pc.projected.anisotropy_residual};
    };
    worst = std::max(worst, max_diff(five(1), five(4)));
    return {worst <= 1e-12, "threads 1 vs 4, max change " + fmt_double("%.1e", worst)};
}

struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds, 0 for none
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "triangle analytics", 1.0, triangle_analytics},
        {2, "closed-form equivalence", 10.0, closed_form_equivalence},
        {3, "reference values and zeros", 0.0, paper_values},
        {4, "five-ring regression", 5.0, five_ring},
        {5, "staggered five-ring scan", 30.0, staggered},
        {6, "isotropy", 0.0, isotropy},
        {7, "perturbative consistency", 0.0, perturbative},
        {8, "FM triangle", 1.0, fm_triangle},
        {9, "spin-1 chain", 300.0, spin1_chain},
        {10, "ground-overlap law", 0.0, overlap_law},
        {11, "determinism", 0.0, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit > 0 && secs > c.time_limit) {
            o.pass = false;
            o.detail += ", over time limit " + fmt_double("%.0f s", c.time_limit);
        }
        if (!o.pass) ++failures;
        std::printf("%s  %2d  %-28s %s  [%.3f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
