#include <gtest/gtest.h>

#include <numbers>

#include <dwring/error.hpp>
#include <dwring/serialization.hpp>
#include <dwring/triangle.hpp>

using namespace dwring;

TEST(ProfileJson, RoundTrip) {
    const std::vector<ExchangeProfile> profiles = {
        cosine_profile(1, 0.5, 0.3), two_value_profile(1, 0.2), staggered_profile({1, 0.1, 2, 50, 1.5, 5}),
        rotate_profile(two_value_profile(1, 0.2), 3), ExchangeProfile({0.4, 0.5, 0.6, 0.7})};
    for (const auto& p : profiles) {
        const ExchangeProfile back = profile_from_json(profile_to_json(p));
        EXPECT_EQ(back, p);
        EXPECT_EQ(back.provenance().kind, p.provenance().kind);
        EXPECT_EQ(back.provenance().params, p.provenance().params);
    }
}

TEST(ProfileJson, ParamsOnlyAndConsistency) {
    EXPECT_EQ(profile_from_json(R"({"kind":"two_value","params":{"j":1,"a":0.2}})"), two_value_profile(1, 0.2));
    EXPECT_THROW(profile_from_json(R"({"kind":"two_value","params":{"j":1,"a":0.2},"couplings":[1,1,1,1,1]})"),
                 std::invalid_argument);
    EXPECT_THROW(profile_from_json(R"({"kind":"explicit"})"), std::invalid_argument);
    EXPECT_THROW(profile_from_json(R"({"kind":"cosine","params":{"j0":1,"j1":0.5,"phase":0},"extra":1})"),
                 std::invalid_argument);
    EXPECT_THROW(profile_from_json("{not json"), std::invalid_argument);
    EXPECT_THROW(profile_from_json(R"({"kind":"explicit","couplings":[1,-1]})"), AfmViolationError);
}

TEST(SystemJson, RoundTrip) {
    const RingSpec a{two_value_profile(1, 0.2)};
    const RingSpec b{cosine_profile(1, 0.7, 1.0)};
    const SystemSpec s{{a, b}, {InterRingBond{0, 3, 1, 2, 0.1}, InterRingBond{1, 1, 0, 5, 0.05}}};
    const SystemSpec back = system_from_json(system_to_json(s));
    ASSERT_EQ(back.rings.size(), 2u);
    EXPECT_EQ(back.rings[0].profile, a.profile);
    EXPECT_EQ(back.rings[1].profile, b.profile);
    ASSERT_EQ(back.bonds.size(), 2u);
    EXPECT_EQ(back.bonds[1].site_b, 5);
    EXPECT_DOUBLE_EQ(back.bonds[1].strength, 0.05);
    EXPECT_THROW(system_from_json(R"({"rings":[]})"), std::invalid_argument);
    EXPECT_THROW(system_from_json(
                     R"({"rings":[{"n_sites":4,"profile":{"kind":"two_value","params":{"j":1,"a":0.2}}}]})"),
                 std::invalid_argument);
}

TEST(CompositeJson, RoundTripAndBuilderForm) {
    const CompositeSpec s = build_spin1_chain(4, 10, 8, 1, 0.3, true);
    const CompositeSpec back = composite_from_json(composite_to_json(s));
    EXPECT_EQ(back.kind, s.kind);
    EXPECT_EQ(back.phases, s.phases);
    EXPECT_EQ(back.bonds.size(), s.bonds.size());
    EXPECT_EQ(back.params, s.params);

    const CompositeSpec built = composite_from_json(
        R"({"kind":"qubit_ring","n_triangles":9,"j0":1,"j1":0.9,"params":{"delta_phi":0.2,"j_r":0.1}})");
    EXPECT_EQ(built.phases, build_qubit_ring(9, 0.2, 1, 0.9, 0.1).phases);
    EXPECT_THROW(composite_from_json(R"({"kind":"fm_triangle","n_triangles":3,"j0":1,"j1":0.9,"params":{}})"),
                 std::invalid_argument);
    EXPECT_THROW(composite_from_json(R"({"kind":"fm_triangle","n_triangles":4,"j0":1,"j1":0.9,"params":{"j_r":1}})"),
                 std::invalid_argument);
}

TEST(StateJson, RoundTrip) {
    const StateVector v = triangle_eigensystem(1, 0.5, 0.8).up_ground;
    const StateVector back = state_from_json(state_to_json(v));
    ASSERT_TRUE(back.sector().same_sector(v.sector()));
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(back[i], v[i]);
    EXPECT_THROW(state_from_json(R"({"n_sites":3,"s_z_twice":1,"amplitudes":[[1,0]]})"), std::invalid_argument);
}

TEST(SpectrumCsv, SeventeenDigits) {
    const std::vector<double> w{-1.0 / 3, 2.5};
    EXPECT_EQ(spectrum_to_csv(w), "index,eigenvalue\n0,-0.33333333333333331\n1,2.5\n");
}
