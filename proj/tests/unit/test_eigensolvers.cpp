#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <dwring/eigensolvers.hpp>
#include <dwring/error.hpp>

#include "oracle.hpp"

using namespace dwring;

namespace {

std::vector<Bond> random_bonds(int n, int count, std::uint64_t seed, bool mixed_sign) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> site(0, n - 1);
    std::uniform_real_distribution<double> c(mixed_sign ? -1.0 : 0.1, 1.0);
    std::vector<Bond> out;
    while (static_cast<int>(out.size()) < count) {
        const int i = site(rng), j = site(rng);
        if (i != j) out.push_back(Bond{i, j, c(rng)});
    }
    return out;
}

oracle::BondList to_oracle(const std::vector<Bond>& bonds) {
    oracle::BondList out;
    for (const auto& b : bonds) out.emplace_back(b.bit_i + 1, b.bit_j + 1, b.coupling);
    return out;
}

std::vector<Bond> uniform_ring(int n, double j) {
    std::vector<Bond> out;
    for (int k = 0; k < n; ++k) out.push_back(Bond{k, (k + 1) % n, j});
    return out;
}

}  // namespace

TEST(DenseSpectrum, MatchesOracle) {
    const int n = 8;
    const auto bonds = random_bonds(n, 14, 4, true);
    const oracle::Matrix h = oracle::heisenberg(to_oracle(bonds), n);
    for (int sz : {0, 2, 6}) {
        const HamiltonianApplier app(sector_basis(n, sz), bonds, 0.3);
        const SpectrumResult r = dense_spectrum(app);
        const auto ref = oracle::sector_eigenvalues(h, n, sz);
        ASSERT_EQ(r.eigenvalues.size(), ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(r.eigenvalues[i], ref[i] + 0.3, 1e-12);
        for (std::size_t i = 0; i < r.eigenvectors.size(); ++i) {
            const StateVector hv = app.apply(r.eigenvectors[i]);
            EXPECT_LT((hv - Amplitude(r.eigenvalues[i]) * r.eigenvectors[i]).norm(), 1e-11);
        }
    }
}

TEST(DenseSpectrum, ThresholdAndValuesOnly) {
    const HamiltonianApplier app(sector_basis(10, 0), uniform_ring(10, 1.0));
    EXPECT_THROW(dense_spectrum(app, true, 100), UseLanczosError);
    EXPECT_TRUE(dense_spectrum(app, false).eigenvectors.empty());
}

TEST(Lanczos, AgreesWithDenseIncludingDegeneracies) {
    // The uniform 10-ring has many degenerate levels in S_z = 0.
    const HamiltonianApplier app(sector_basis(10, 0), uniform_ring(10, 1.0));
    const auto dense = dense_spectrum(app, false).eigenvalues;
    const SpectrumResult lz = lanczos_lowest(app, 8, 1e-10, 20000, 7);
    ASSERT_EQ(lz.eigenvalues.size(), 8u);
    for (int i = 0; i < 8; ++i) EXPECT_NEAR(lz.eigenvalues[i], dense[i], 1e-8) << i;
    for (int i = 0; i < 8; ++i) {
        const StateVector hv = app.apply(lz.eigenvectors[i]);
        EXPECT_LT((hv - Amplitude(lz.eigenvalues[i]) * lz.eigenvectors[i]).norm(), 1e-8);
        for (int j = 0; j < i; ++j) EXPECT_LT(std::abs(inner(lz.eigenvectors[i], lz.eigenvectors[j])), 1e-8);
    }
}

TEST(Lanczos, RandomSystems) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto bonds = random_bonds(11, 20, seed, seed % 2 == 0);
        const HamiltonianApplier app(sector_basis(11, 1), bonds);
        const auto dense = dense_spectrum(app, false).eigenvalues;
        const auto lz = lanczos_lowest(app, 4, 1e-10, 20000, seed, false).eigenvalues;
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(lz[i], dense[i], 1e-8) << seed << " " << i;
    }
}

TEST(Lanczos, DeterministicForSeedAndThreads) {
    const HamiltonianApplier app(sector_basis(12, 0), random_bonds(12, 24, 3, false));
    const auto a = lanczos_lowest(app, 3, 1e-10, 20000, 42, true, 1);
    const auto b = lanczos_lowest(app, 3, 1e-10, 20000, 42, true, 4);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    for (int i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < a.eigenvectors[i].size(); ++k) {
            EXPECT_EQ(a.eigenvectors[i][k], b.eigenvectors[i][k]);
        }
    }
}

TEST(Lanczos, ReportsNonConvergence) {
    const HamiltonianApplier app(sector_basis(12, 0), random_bonds(12, 24, 3, false));
    try {
        lanczos_lowest(app, 2, 1e-12, 5, 1);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_FALSE(e.estimates().empty());
        EXPECT_EQ(e.estimates().size(), e.residuals().size());
    }
    EXPECT_THROW(lanczos_lowest(app, 0, 1e-9, 100, 1), std::invalid_argument);
    EXPECT_THROW(lanczos_lowest(app, 2, 0.0, 100, 1), std::invalid_argument);
}

TEST(Lanczos, SmallSectors) {
    const HamiltonianApplier app(sector_basis(4, 2), uniform_ring(4, 1.0));
    const auto dense = dense_spectrum(app, false).eigenvalues;
    const auto lz = lanczos_lowest(app, 4, 1e-10, 1000, 1, false).eigenvalues;
    ASSERT_EQ(lz.size(), 4u);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(lz[i], dense[i], 1e-10);
    const HamiltonianApplier one(sector_basis(4, 4), uniform_ring(4, 1.0));
    EXPECT_NEAR(lanczos_lowest(one, 1, 1e-10, 10, 1, false).eigenvalues[0], 1.0, 1e-14);
}

TEST(LowestEigenpairs, SolverSelection) {
    const HamiltonianApplier app(sector_basis(10, 0), uniform_ring(10, 1.0));
    SolverSettings s;
    s.kind = SolverKind::dense;
    const auto d = lowest_eigenpairs(app, 3, s).eigenvalues;
    s.kind = SolverKind::lanczos;
    const auto l = lowest_eigenpairs(app, 3, s).eigenvalues;
    s.kind = SolverKind::automatic;
    const auto a = lowest_eigenpairs(app, 3, s).eigenvalues;
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(d[i], l[i], 1e-8);
        EXPECT_NEAR(d[i], a[i], 1e-8);
    }
}

TEST(FixPhase, LargestComponentRealPositive) {
    auto sector = sector_basis(3, 1);
    StateVector v(sector, {Amplitude(0.1, 0.2), Amplitude(0, -0.9), Amplitude(0.3, 0)});
    fix_phase(v);
    EXPECT_NEAR(v[1].imag(), 0.0, 1e-16);
    EXPECT_GT(v[1].real(), 0.0);
    EXPECT_NEAR(v.norm(), std::sqrt(0.01 + 0.04 + 0.81 + 0.09), 1e-15);
}

TEST(LowestLevels, DimerAndTriangle) {
    const auto dimer = lowest_levels(std::vector<Bond>{Bond{0, 1, 1.0}}, 2, 0.0, 2, {});
    ASSERT_EQ(dimer.size(), 2u);
    EXPECT_NEAR(dimer[0].energy, -0.75, 1e-14);
    EXPECT_EQ(dimer[0].degeneracy, 1);
    EXPECT_NEAR(dimer[1].energy, 0.25, 1e-14);
    EXPECT_EQ(dimer[1].degeneracy, 3);

    // Uniform FM triangle: S = 3/2 quartet below two S = 1/2 doublets.
    const auto fm = lowest_levels(uniform_ring(3, -1.0), 3, 0.0, 3, {});
    ASSERT_GE(fm.size(), 2u);
    EXPECT_NEAR(fm[0].energy, -0.75, 1e-14);
    EXPECT_EQ(fm[0].degeneracy, 4);
    EXPECT_NEAR(fm[1].energy, 0.75, 1e-14);
    EXPECT_EQ(fm[1].degeneracy, 4);
}

TEST(LowestLevels, MatchesOracleMultiplicities) {
    const int n = 8;
    const auto bonds = random_bonds(n, 12, 17, false);
    const auto levels = lowest_levels(bonds, n, 0.0, 6, {});
    const auto all = oracle::eigenvalues(oracle::heisenberg(to_oracle(bonds), n));
    ASSERT_FALSE(levels.empty());
    std::size_t pos = 0;
    for (const auto& l : levels) {
        int count = 0;
        while (pos < all.size() && std::abs(all[pos] - l.energy) < 1e-8) {
            ++count;
            ++pos;
        }
        EXPECT_EQ(count, l.degeneracy) << l.energy;
    }
    const auto states = lowest_states(bonds, n, 0.0, 10, {});
    ASSERT_EQ(states.size(), 10u);
    for (int i = 0; i < 10; ++i) EXPECT_NEAR(states[i], all[i], 1e-10);
}
