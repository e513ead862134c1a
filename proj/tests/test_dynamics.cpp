#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rbody/dynamics.hpp"
#include "rbody/configs.hpp"

using namespace rbody;

namespace {

// Potential energy V = -sum_{i<j} m_i m_j phi(|q_i - q_j|) evaluated independently of the library.
double potential_energy(const std::vector<Vec2>& q, const std::vector<double>& m, double alpha) {
    double v = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            const double r = std::hypot(q[i].x - q[j].x, q[i].y - q[j].y);
            const double phi = alpha == 1.0 ? -std::log(r) : std::pow(r, 1.0 - alpha) / (alpha - 1.0);
            v -= m[i] * m[j] * phi;
        }
    }
    return v;
}

SystemState random_state(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    SystemState s;
    for (std::size_t i = 0; i < n; ++i) {
        s.positions.push_back({u(rng), u(rng)});
        s.velocities.push_back({0.5 * u(rng), 0.5 * u(rng)});
    }
    return s;
}

}  // namespace

TEST(PotentialLaw, RejectsExponentBelowOne) {
    EXPECT_THROW(PotentialLaw(0.5), DomainError);
    EXPECT_THROW(PotentialLaw(std::nan("")), DomainError);
    EXPECT_NO_THROW(PotentialLaw(1.0));
}

TEST(PotentialLaw, KernelValues) {
    EXPECT_DOUBLE_EQ(PotentialLaw::gravitational().potential(2.0), 0.5);
    EXPECT_DOUBLE_EQ(PotentialLaw(3.0).potential(2.0), 0.125);
    EXPECT_DOUBLE_EQ(PotentialLaw::logarithmic().potential(std::exp(1.0)), -1.0);
    EXPECT_THROW(PotentialLaw::gravitational().potential(0.0), DomainError);
    EXPECT_THROW(PotentialLaw::gravitational().potential(-1.0), DomainError);
}

TEST(PotentialLaw, ForceIsMinusDerivativeOfKernel) {
    for (double alpha : {1.0, 1.5, 2.0, 3.0}) {
        const PotentialLaw law(alpha);
        for (double lambda : {0.3, 1.0, 2.7}) {
            const double h = 1e-6;
            const double dphi = (law.potential(lambda + h) - law.potential(lambda - h)) / (2 * h);
            EXPECT_NEAR(-dphi, lambda * law.force_factor(lambda), 1e-7 * (1 + std::fabs(dphi))) << alpha;
        }
    }
}

TEST(MassVector, Validation) {
    EXPECT_THROW(MassVector({}), DomainError);
    EXPECT_THROW(MassVector({1.0, -1.0}), DomainError);
    EXPECT_THROW(MassVector({0.0, 0.0}), DomainError);
    const MassVector m{1.0, 2.0, 0.0};
    EXPECT_DOUBLE_EQ(m.total(), 3.0);
    EXPECT_EQ(m.size(), 3u);
}

TEST(SystemState, FlatRoundTripAndLayout) {
    SystemState s;
    s.t = 1.5;
    s.positions = {{1, 2}, {3, 4}};
    s.velocities = {{5, 6}, {7, 8}};
    const auto y = s.flat();
    EXPECT_EQ(y, (std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8}));
    const SystemState back = SystemState::from_flat(1.5, y);
    EXPECT_EQ(back.positions, s.positions);
    EXPECT_EQ(back.velocities, s.velocities);
    EXPECT_THROW(SystemState::from_flat(0.0, std::vector<double>(6)), DomainError);
}

TEST(Accelerations, TwoBodyClosedForm) {
    SystemState s;
    s.positions = {{0, 0}, {2, 0}};
    s.velocities = {{0, 0}, {0, 0}};
    const auto a = accelerations(s, MassVector{1.0, 3.0}, PotentialLaw::gravitational());
    EXPECT_NEAR(a[0].x, 3.0 / 4.0, 1e-15);
    EXPECT_NEAR(a[1].x, -1.0 / 4.0, 1e-15);
    EXPECT_EQ(a[0].y, 0.0);
}

TEST(Accelerations, MatchFiniteDifferenceGradientOfPotential) {
    std::mt19937_64 rng(7);
    const std::vector<double> m{1.0, 0.7, 1.3, 2.0};
    for (double alpha : {1.0, 2.0, 3.0}) {
        const SystemState s = random_state(rng, 4);
        const auto acc = accelerations(s, MassVector(m), PotentialLaw(alpha));
        for (std::size_t i = 0; i < 4; ++i) {
            for (int c = 0; c < 2; ++c) {
                auto qp = s.positions, qm = s.positions;
                const double h = 1e-6;
                (c == 0 ? qp[i].x : qp[i].y) += h;
                (c == 0 ? qm[i].x : qm[i].y) -= h;
                const double grad = (potential_energy(qp, m, alpha) - potential_energy(qm, m, alpha)) / (2 * h);
                const double expected = -grad / m[i];
                EXPECT_NEAR(c == 0 ? acc[i].x : acc[i].y, expected, 1e-6 * (1 + std::fabs(expected)));
            }
        }
    }
}

TEST(Accelerations, MomentumBalance) {
    std::mt19937_64 rng(11);
    const MassVector m{1.0, 2.0, 0.5, 1.5, 0.0};
    for (int trial = 0; trial < 20; ++trial) {
        const SystemState s = random_state(rng, 5);
        const auto a = accelerations(s, m, PotentialLaw(2.0));
        Vec2 total;
        for (std::size_t i = 0; i < 5; ++i) total += m[i] * a[i];
        EXPECT_LT(max_abs(total), 1e-10);
    }
}

TEST(Accelerations, MasslessBodyFeelsButDoesNotPull) {
    SystemState s;
    s.positions = {{0, 0}, {1, 0}};
    s.velocities = {{0, 0}, {0, 0}};
    const auto a = accelerations(s, MassVector{1.0, 0.0}, PotentialLaw::gravitational());
    EXPECT_EQ(a[0].x, 0.0);
    EXPECT_NEAR(a[1].x, -1.0, 1e-15);
}

TEST(Accelerations, CollisionIsReported) {
    SystemState s;
    s.positions = {{0, 0}, {1e-9, 0}};
    s.velocities = {{0, 0}, {0, 0}};
    try {
        accelerations(s, MassVector{1.0, 1.0}, PotentialLaw::gravitational());
        FAIL() << "expected a collision";
    } catch (const CollisionError& e) {
        EXPECT_EQ(e.first, 0u);
        EXPECT_EQ(e.second, 1u);
        EXPECT_LT(e.distance, 1e-6);
    }
}

TEST(Conserved, SuperEightMomentumAndCentre) {
    const ChoreographyIC ic = super_eight_isosceles();
    const auto c = conserved_quantities(ic.state, ic.masses(), PotentialLaw::gravitational());
    EXPECT_LT(max_abs(c.linear_momentum), 1e-15);
    EXPECT_LT(max_abs(c.center_of_mass), 1e-15);
    double l = 0.0;
    for (std::size_t i = 0; i < 4; ++i) l += cross(ic.state.positions[i], ic.state.velocities[i]);
    EXPECT_NEAR(c.angular_momentum, l, 1e-15);
}

TEST(Conserved, MasslessBodiesIgnored) {
    SystemState s;
    s.positions = {{1, 0}, {-1, 0}, {0.5, 0.5}};
    s.velocities = {{0, 1}, {0, -1}, {3, 3}};
    const auto with = conserved_quantities(s, MassVector{1.0, 1.0, 0.0}, PotentialLaw::gravitational());
    EXPECT_NEAR(with.energy, 1.0 - 0.5, 1e-15);
    EXPECT_NEAR(with.angular_momentum, 2.0, 1e-15);
}

TEST(NBodyField, FlatLayout) {
    const NBodyField f(MassVector{1.0, 1.0}, PotentialLaw::gravitational());
    std::vector<double> y{-1, 0, 1, 0, 0, -0.5, 0, 0.5};
    std::vector<double> dy(8);
    f(0.0, y, dy);
    EXPECT_EQ(dy[0], 0.0);
    EXPECT_EQ(dy[1], -0.5);
    EXPECT_NEAR(dy[4], 0.25, 1e-15);
    EXPECT_NEAR(dy[6], -0.25, 1e-15);
}

TEST(MinPairwiseDistance, Basic) {
    SystemState s;
    s.positions = {{0, 0}, {3, 4}, {0, 1}};
    s.velocities.resize(3);
    EXPECT_DOUBLE_EQ(min_pairwise_distance(s), 1.0);
}
