#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rbody/symmetry.hpp"

using namespace rbody;

namespace {

const std::vector<InvolutionName> kFour{InvolutionName::phi_1x, InvolutionName::phi_1y, InvolutionName::psi_1x,
                                        InvolutionName::psi_1y};

// Harmonic pair x'' = -x, y'' = -4y on a single body: reversed by (x, y, vx, vy) -> (x, -y, -vx, vy).
struct Oscillator2 {
    void operator()(double, std::span<const double> s, std::span<double> d) const {
        d[0] = s[2];
        d[1] = s[3];
        d[2] = -s[0];
        d[3] = -4.0 * s[1];
    }
};

}  // namespace

TEST(Involutions, AreInvolutions) {
    const auto states = random_trial_states(10, 5, 17);
    for (auto name : {InvolutionName::phi_1x, InvolutionName::phi_1y, InvolutionName::psi_1x, InvolutionName::psi_1y,
                      InvolutionName::phi_2y, InvolutionName::psi_2y}) {
        const LinearInvolution r = build(name);
        for (const SystemState& s : states) EXPECT_EQ(state_distance(r.apply(r.apply(s)), s), 0.0);
        const Eigen::MatrixXi d = r.dense();
        EXPECT_EQ(d * d, Eigen::MatrixXi::Identity(20, 20));
        EXPECT_EQ(parse_involution(to_string(name)), name);
    }
    EXPECT_THROW(parse_involution("Phi3z"), ValidationError);
}

TEST(Involutions, ReverseTheFlowOnRestrictedStates) {
    const auto trials = random_restricted_states(100, 2024);
    ASSERT_EQ(trials.size(), 100u);
    for (const SystemState& s : trials) {
        EXPECT_GE(min_pairwise_distance(s), 0.1);
        EXPECT_EQ(s.positions[2], -s.positions[0]);
        EXPECT_EQ(s.velocities[3], -s.velocities[1]);
    }
    for (auto name : kFour) {
        for (double alpha : {1.0, 2.0, 3.0}) {
            EXPECT_LE(reversing_check(build(name), PotentialLaw(alpha), trials), 1e-13) << to_string(name);
        }
    }
    EXPECT_LE(reversing_check(build(InvolutionName::phi_2y), PotentialLaw::gravitational(), trials), 1e-13);
    EXPECT_LE(reversing_check(build(InvolutionName::psi_2y), PotentialLaw::gravitational(), trials), 1e-13);
}

TEST(Involutions, MixedMapsFailOffTheSymmetricSubspace) {
    // Psi maps flip primaries 1 and 2 differently, which needs q3 = -q1 and q4 = -q2.
    const auto trials = random_trial_states(20, 5, 99);
    EXPECT_GT(reversing_check(build(InvolutionName::psi_1x), PotentialLaw::gravitational(), trials), 1e-3);
    EXPECT_LE(reversing_check(build(InvolutionName::phi_1x), PotentialLaw::gravitational(), trials), 1e-13);
}

TEST(Involutions, NonReversingMapIsRejected) {
    // Plain reflection without the velocity sign flip is a symmetry, not a reversor.
    const auto trials = random_restricted_states(20, 5);
    const std::vector<Mat2> k(5, kK);
    const LinearInvolution reflection("reflect", {0, 1, 2, 3, 4}, k, k);
    EXPECT_GT(reversing_check(reflection, PotentialLaw::gravitational(), trials), 1e-3);
}

TEST(Involutions, ConstructionValidation) {
    const std::vector<Mat2> k(3, kK);
    EXPECT_THROW(LinearInvolution::reversing("bad", {1, 2, 0}, k), DomainError);
    EXPECT_THROW(LinearInvolution::reversing("bad", {0, 1}, k), DomainError);
    const Mat2 rot = exp_j(std::numbers::pi / 2);
    EXPECT_THROW(LinearInvolution::reversing("bad", {0, 1, 2}, {rot, rot, rot}), DomainError);
}

TEST(ComposeOrder, ProductsOfBuiltInMaps) {
    const auto p1x = build(InvolutionName::phi_1x);
    const auto p1y = build(InvolutionName::phi_1y);
    const auto s1x = build(InvolutionName::psi_1x);
    const auto s1y = build(InvolutionName::psi_1y);
    EXPECT_EQ(compose_order(p1x, p1y, 8), 2);
    EXPECT_EQ(compose_order(s1x, s1y, 8), 2);
    EXPECT_EQ(compose_order(p1x, p1x, 8), 1);
    EXPECT_EQ(compose_order(p1x, build(InvolutionName::phi_2y), 8), 2);
    EXPECT_EQ(compose_order(s1x, build(InvolutionName::psi_2y), 8), 2);

    const Eigen::MatrixXi g = p1y.dense() * p1x.dense();
    EXPECT_EQ(g * g, Eigen::MatrixXi::Identity(20, 20));
    EXPECT_NE(g, Eigen::MatrixXi::Identity(20, 20));
    const Eigen::MatrixXi h = s1y.dense() * s1x.dense();
    EXPECT_EQ(h * h, Eigen::MatrixXi::Identity(20, 20));
}

TEST(ComposeOrder, NoFiniteOrderWithinBound) {
    const Mat2 rot = exp_j(std::numbers::pi / 2);
    // Two reflections whose product is a quarter turn on the satellite: order 4.
    const LinearInvolution a = LinearInvolution::reversing("a", {0}, {kK});
    const LinearInvolution b = LinearInvolution::reversing("b", {0}, {rot * kK});
    EXPECT_EQ(compose_order(a, b, 8), 4);
    EXPECT_FALSE(compose_order(a, b, 3).has_value());
    EXPECT_THROW(compose_order(a, build(InvolutionName::phi_1x), 4), DomainError);
}

TEST(FixedPoints, ResidualAndDetection) {
    SystemState s;
    s.positions = {{1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {-1.0, 0.0}, {3.0, 0.0}};
    s.velocities = {{0.0, 0.5}, {0.0, 0.5}, {0.0, -0.5}, {0.0, -0.5}, {0.0, 0.2}};
    EXPECT_EQ(fixed_point_residual(s, build(InvolutionName::phi_1x)), 0.0);
    EXPECT_GT(fixed_point_residual(s, build(InvolutionName::phi_1y)), 1.0);

    SystemState t = s;
    t.positions[1] = {0.5, 0.0};
    t.positions[0] = {0.5, 0.0};
    t.positions[4] = {0.0, 2.0};
    t.velocities[4] = {0.7, 0.0};
    const auto found = find_fixing_involution(t.flat(), 4, 1e-12);
    ASSERT_TRUE(found.has_value());
    EXPECT_LE(fixed_point_residual(t, *found), 1e-12);
    EXPECT_EQ(found->velocity_blocks()[4], kK);

    const auto generic = random_trial_states(1, 5, 1).front();
    EXPECT_FALSE(find_fixing_involution(generic.flat(), 4, 1e-6).has_value());
    EXPECT_THROW(find_fixing_involution(std::vector<double>(7), 1, 1e-6), DomainError);
}

TEST(ExtendOrbit, MatchesDirectIntegration) {
    // Start on {y = 0, vx = 0}; both modes are back on that set at t = pi.
    const LinearInvolution r = LinearInvolution::reversing("R", {0}, {kK});
    const LinearInvolution r_hat = r;
    const std::vector<double> y0{0.8, 0.0, 0.0, 0.6};
    const double half = std::numbers::pi;
    const Trajectory seg = propagate_flat(Oscillator2{}, y0, 0.0, half, {});
    const SymmetricOrbit orbit = extend_orbit(seg, r, r_hat);
    EXPECT_EQ(orbit.order(), 1);
    EXPECT_NEAR(orbit.period(), 2 * half, 1e-15);
    const Trajectory full = propagate_flat(Oscillator2{}, y0, 0.0, 2 * half, {});
    for (double t : {0.3, 1.9, 3.5, 5.0, 6.2}) {
        const auto a = orbit.flat_at(t);
        const auto b = full.flat_at(t);
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a[i], b[i], 1e-10) << t;
    }
    const auto wrapped = orbit.flat_at(2 * half + 0.3);
    const auto base = orbit.flat_at(0.3);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(wrapped[i], base[i], 1e-12);
}

TEST(ExtendOrbit, RejectsEndpointsOffTheFixedSets) {
    const LinearInvolution r = LinearInvolution::reversing("R", {0}, {kK});
    const std::vector<double> y0{0.8, 0.0, 0.0, 0.6};
    const Trajectory seg = propagate_flat(Oscillator2{}, y0, 0.0, 1.0, {});
    try {
        extend_orbit(seg, r, r);
        FAIL() << "expected NotFixedError";
    } catch (const NotFixedError& e) {
        EXPECT_GT(e.residual, 1e-3);
    }
    const std::vector<double> off{0.8, 0.1, 0.0, 0.6};
    EXPECT_THROW(extend_orbit(propagate_flat(Oscillator2{}, off, 0.0, std::numbers::pi, {}), r, r), NotFixedError);
}
