#include "dwring/eigensolvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "dwring/error.hpp"

namespace dwring {

void fix_phase(StateVector& v) {
    double largest = 0.0;
    for (const auto& a : v.amplitudes()) largest = std::max(largest, std::abs(a));
    if (largest == 0.0) return;
    // Ties within numerical noise resolve to the lowest basis index.
    for (const auto& a : v.amplitudes()) {
        if (std::abs(a) >= largest * (1.0 - 1e-8)) {
            v *= std::conj(a) / std::abs(a);
            return;
        }
    }
}

namespace {

StateVector to_state(const SectorPtr& sector, const double* data) {
    std::vector<Amplitude> amps(sector->size());
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = data[i];
    StateVector v(sector, std::move(amps));
    fix_phase(v);
    return v;
}

Eigen::MatrixXd dense_matrix(const HamiltonianApplier& h) {
    const SectorBasis& basis = h.sector();
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Mask s = basis.state(static_cast<std::size_t>(i));
        m(i, i) += h.constant();
        for (const auto& b : h.bonds()) {
            const Mask bi = Mask{1} << b.bit_i;
            const Mask bj = Mask{1} << b.bit_j;
            if (((s & bi) != 0) == ((s & bj) != 0)) {
                m(i, i) += 0.25 * b.coupling;
            } else {
                m(i, i) -= 0.25 * b.coupling;
                m(static_cast<Eigen::Index>(basis.rank(s ^ (bi | bj))), i) += 0.5 * b.coupling;
            }
        }
    }
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Two passes of classical Gram-Schmidt against each basis.
void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& locked,
                   const std::vector<std::vector<double>>& krylov) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : locked) axpy(-dot(q, w), q, w);
        for (const auto& q : krylov) axpy(-dot(q, w), q, w);
    }
}

struct RitzSet {
    std::vector<double> values;
    std::vector<double> residuals;
    std::vector<std::vector<double>> vectors;
    bool exhausted = false;
};

class LanczosRun {
public:
    LanczosRun(const HamiltonianApplier& h, int threads, double tol, int max_iter)
        : h_(h), threads_(threads), tol_(tol), max_iter_(max_iter),
          breakdown_(1e-13 * std::max(1.0, h.norm_bound())) {}

    int matvecs() const { return matvecs_; }

    // Krylov sequence started from `start` in the complement of `locked`.
    // Returns the `want` lowest Ritz pairs (fewer if the space is smaller).
    RitzSet run(std::vector<double> start, const std::vector<std::vector<double>>& locked, int want) {
        const std::size_t n = h_.dimension();
        const std::size_t capacity = n - locked.size();
        std::vector<std::vector<double>> q;
        std::vector<double> alpha;
        std::vector<double> beta;

        orthogonalize(start, locked, q);
        double nrm = norm2(start);
        if (nrm < breakdown_) return RitzSet{{}, {}, {}, true};
        for (auto& x : start) x /= nrm;
        q.push_back(std::move(start));

        std::vector<double> w(n);
        RitzSet best;
        while (true) {
            if (matvecs_ >= max_iter_) {
                throw ConvergenceError(
                    fmt::format("Lanczos did not converge within {} matrix-vector products",
                                max_iter_),
                    best.values, best.residuals);
            }
            h_.apply(q.back(), w, threads_);
            ++matvecs_;
            const std::size_t j = q.size() - 1;
            const double a = dot(q.back(), w);
            alpha.push_back(a);
            axpy(-a, q.back(), w);
            if (j > 0) axpy(-beta.back(), q[j - 1], w);
            orthogonalize(w, locked, q);
            const double b = norm2(w);

            const bool exhausted = b < breakdown_ || q.size() == capacity;
            const std::size_t m = q.size();
            const bool check = exhausted || (static_cast<int>(m) >= want && (m % 4 == 0 || m < 16));
            if (check) {
                best = ritz(q, alpha, beta, exhausted ? 0.0 : b, want);
                best.exhausted = exhausted;
                const bool converged =
                    static_cast<int>(best.values.size()) == want &&
                    std::all_of(best.residuals.begin(), best.residuals.end(),
                                [&](double r) { return r <= tol_; });
                if (exhausted || converged) return best;
            }
            beta.push_back(b);
            for (auto& x : w) x /= b;
            q.push_back(w);
        }
    }

private:
    RitzSet ritz(const std::vector<std::vector<double>>& q, const std::vector<double>& alpha,
                 const std::vector<double>& beta, double last_beta, int want) const {
        const auto m = static_cast<Eigen::Index>(alpha.size());
        Eigen::VectorXd diag(m);
        Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
        for (Eigen::Index i = 0; i < m; ++i) diag(i) = alpha[static_cast<std::size_t>(i)];
        for (Eigen::Index i = 0; i + 1 < m; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        if (m == 1) {
            tri.compute(Eigen::MatrixXd::Constant(1, 1, diag(0)));
        } else {
            tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        }
        const int count = std::min<int>(want, static_cast<int>(m));
        RitzSet out;
        for (int i = 0; i < count; ++i) {
            out.values.push_back(tri.eigenvalues()(i));
            out.residuals.push_back(std::abs(last_beta * tri.eigenvectors()(m - 1, i)));
            std::vector<double> y(h_.dimension(), 0.0);
            for (Eigen::Index r = 0; r < m; ++r) {
                axpy(tri.eigenvectors()(r, i), q[static_cast<std::size_t>(r)], y);
            }
            const double ny = norm2(y);
            for (auto& x : y) x /= ny;
            out.vectors.push_back(std::move(y));
        }
        return out;
    }

    const HamiltonianApplier& h_;
    int threads_;
    double tol_;
    int max_iter_;
    double breakdown_;
    int matvecs_ = 0;
};

}  // namespace

SpectrumResult dense_spectrum(const HamiltonianApplier& h, bool vectors, std::size_t dense_threshold) {
    if (h.dimension() > dense_threshold) {
        throw UseLanczosError(fmt::format("sector dimension {} exceeds the dense threshold {}",
                                          h.dimension(), dense_threshold));
    }
    const Eigen::MatrixXd m = dense_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("dense eigensolver failed", {}, {});
    }
    SpectrumResult out;
    out.sector = h.sector_ptr();
    out.eigenvalues.assign(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
    if (vectors) {
        for (Eigen::Index i = 0; i < m.cols(); ++i) {
            out.eigenvectors.push_back(to_state(h.sector_ptr(), solver.eigenvectors().col(i).data()));
        }
    }
    return out;
}

SpectrumResult lanczos_lowest(const HamiltonianApplier& h, int k, double tol, int max_iter,
                              std::uint64_t seed, bool vectors, int threads) {
    const std::size_t n = h.dimension();
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument(fmt::format("cannot request {} eigenvalues of a {}-dimensional sector", k, n));
    }
    if (!(tol > 0.0)) throw std::invalid_argument("Lanczos tolerance must be positive");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    auto random_vector = [&] {
        std::vector<double> v(n);
        for (auto& x : v) x = uniform(rng);
        return v;
    };

    LanczosRun lanczos(h, threads, tol, max_iter);
    std::vector<std::vector<double>> locked;
    std::vector<double> locked_values;
    auto lock = [&](double value, std::vector<double> vec) {
        const auto pos = std::upper_bound(locked_values.begin(), locked_values.end(), value) -
                         locked_values.begin();
        locked_values.insert(locked_values.begin() + pos, value);
        locked.insert(locked.begin() + pos, std::move(vec));
    };

    std::vector<double> start = random_vector();
    while (static_cast<int>(locked.size()) < k) {
        const int want = k - static_cast<int>(locked.size());
        RitzSet ritz = lanczos.run(start, locked, want);
        if (ritz.values.empty()) break;  // complement exhausted
        int accepted = 0;
        for (std::size_t i = 0; i < ritz.values.size(); ++i) {
            if (ritz.residuals[i] > tol) break;
            lock(ritz.values[i], std::move(ritz.vectors[i]));
            ++accepted;
        }
        if (accepted == 0) {
            start = ritz.vectors.front();  // explicit restart from the best Ritz vector
        } else {
            start = random_vector();
        }
    }

    // A single Krylov sequence sees one vector per degenerate eigenspace; probe
    // the complement for anything lower than what has been locked.
    while (locked.size() < n) {
        RitzSet probe = lanczos.run(random_vector(), locked, 1);
        while (!probe.values.empty() && probe.residuals[0] > tol) {
            probe = lanczos.run(probe.vectors.front(), locked, 1);
        }
        if (probe.values.empty() || probe.values[0] >= locked_values.back() - tol) break;
        lock(probe.values[0], std::move(probe.vectors[0]));
        locked_values.pop_back();
        locked.pop_back();
    }

    SpectrumResult out;
    out.sector = h.sector_ptr();
    out.eigenvalues.assign(locked_values.begin(), locked_values.begin() + k);
    if (vectors) {
        for (int i = 0; i < k; ++i) {
            out.eigenvectors.push_back(to_state(h.sector_ptr(), locked[static_cast<std::size_t>(i)].data()));
        }
    }
    return out;
}

SpectrumResult lowest_eigenpairs(const HamiltonianApplier& h, int k, const SolverSettings& settings,
                                 bool vectors) {
    const std::size_t n = h.dimension();
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument(fmt::format("cannot request {} eigenvalues of a {}-dimensional sector", k, n));
    }
    bool use_dense = false;
    switch (settings.kind) {
        case SolverKind::dense: use_dense = true; break;
        case SolverKind::lanczos: use_dense = false; break;
        case SolverKind::automatic:
            use_dense = n <= settings.auto_dense_limit || static_cast<std::size_t>(k) * 4 >= n;
            break;
    }
    if (use_dense) {
        SpectrumResult full = dense_spectrum(h, vectors, settings.dense_threshold);
        full.eigenvalues.resize(static_cast<std::size_t>(k));
        if (vectors) full.eigenvectors.erase(full.eigenvectors.begin() + k, full.eigenvectors.end());
        return full;
    }
    return lanczos_lowest(h, k, settings.lanczos_tol, settings.lanczos_max_iter, settings.seed,
                          vectors, settings.threads);
}

namespace {

struct SectorEnergies {
    std::vector<double> values;
    int weight;      // 2 for S_z > 0 (mirrored sector), 1 for S_z = 0
    bool truncated;  // fewer values than the sector dimension
};

std::vector<SectorEnergies> scan_sectors(std::span<const Bond> bonds, int n_sites, double constant,
                                         int per_sector, const SolverSettings& settings) {
    std::vector<SectorEnergies> out;
    const std::vector<Bond> bond_list(bonds.begin(), bonds.end());
    for (int twice = n_sites % 2; twice <= n_sites; twice += 2) {
        HamiltonianApplier h(sector_basis(n_sites, twice), bond_list, constant);
        const int k = std::min<int>(per_sector, static_cast<int>(h.dimension()));
        SpectrumResult r = lowest_eigenpairs(h, k, settings, false);
        out.push_back({std::move(r.eigenvalues), twice == 0 ? 1 : 2,
                       static_cast<std::size_t>(k) < h.dimension()});
    }
    return out;
}

}  // namespace

std::vector<Level> lowest_levels(std::span<const Bond> bonds, int n_sites, double constant,
                                 int per_sector, const SolverSettings& settings,
                                 double rel_merge_tol) {
    double scale = std::abs(constant);
    for (const auto& b : bonds) scale += 0.75 * std::abs(b.coupling);
    const double tol = rel_merge_tol * 2.0 * std::max(scale, 1e-300);

    const auto sectors = scan_sectors(bonds, n_sites, constant, per_sector, settings);
    double cutoff = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, int>> all;
    for (const auto& s : sectors) {
        for (double e : s.values) all.emplace_back(e, s.weight);
        if (s.truncated && !s.values.empty()) cutoff = std::min(cutoff, s.values.back() - tol);
    }
    std::sort(all.begin(), all.end());

    std::vector<Level> levels;
    for (const auto& [e, w] : all) {
        if (!levels.empty() && e - levels.back().energy <= tol) {
            levels.back().degeneracy += w;
        } else {
            levels.push_back({e, w});
        }
    }
    std::erase_if(levels, [&](const Level& l) { return !(l.energy < cutoff); });
    return levels;
}

std::vector<double> lowest_states(std::span<const Bond> bonds, int n_sites, double constant,
                                  int count, const SolverSettings& settings) {
    const auto sectors = scan_sectors(bonds, n_sites, constant, count, settings);
    std::vector<double> all;
    for (const auto& s : sectors) {
        for (double e : s.values) {
            for (int w = 0; w < s.weight; ++w) all.push_back(e);
        }
    }
    std::sort(all.begin(), all.end());
    if (static_cast<int>(all.size()) > count) all.resize(static_cast<std::size_t>(count));
    return all;
}

}  // namespace dwring
