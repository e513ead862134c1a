#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "rbody/configs.hpp"
#include "rbody/integrate.hpp"

using namespace rbody;

namespace {

constexpr double kPi = std::numbers::pi;

// x'' = -x with x(0) = 1, x'(0) = 0: x = cos t.
struct Oscillator {
    void operator()(double, std::span<const double> y, std::span<double> dy) const {
        dy[0] = y[1];
        dy[1] = -y[0];
    }
};

// Unit circular Kepler orbit about a fixed unit mass: period 2 pi.
struct Kepler {
    void operator()(double, std::span<const double> y, std::span<double> dy) const {
        const double r3 = std::pow(std::hypot(y[0], y[1]), 3);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = -y[0] / r3;
        dy[3] = -y[1] / r3;
    }
};

}  // namespace

TEST(Propagate, OscillatorEndpointAndDenseOutput) {
    const std::vector<double> y0{1.0, 0.0};
    const Trajectory tr = propagate_flat(Oscillator{}, y0, 0.0, 10.0, {});
    EXPECT_DOUBLE_EQ(tr.end_time(), 10.0);
    EXPECT_NEAR(tr.final_flat()[0], std::cos(10.0), 1e-11);
    EXPECT_NEAR(tr.final_flat()[1], -std::sin(10.0), 1e-11);
    for (double t : {0.1, 1.234, 5.5, 9.99}) {
        const auto y = tr.flat_at(t);
        EXPECT_NEAR(y[0], std::cos(t), 1e-11) << t;
        EXPECT_NEAR(y[1], -std::sin(t), 1e-11) << t;
    }
}

TEST(Propagate, KeplerCircleClosesAfterOnePeriod) {
    const std::vector<double> y0{1.0, 0.0, 0.0, 1.0};
    const Trajectory tr = propagate_flat(Kepler{}, y0, 0.0, 2 * kPi, {});
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(tr.final_flat()[i], y0[i], 1e-10);
    const auto mid = tr.flat_at(kPi / 3);
    EXPECT_NEAR(mid[0], std::cos(kPi / 3), 1e-12);
    EXPECT_NEAR(mid[1], std::sin(kPi / 3), 1e-12);
}

TEST(Propagate, BackwardRunRetracesForwardRun) {
    const std::vector<double> y0{1.0, 0.0, 0.0, 1.2};
    const Trajectory fwd = propagate_flat(Kepler{}, y0, 0.0, 3.0, {});
    const auto y1 = fwd.final_flat();
    const Trajectory bwd = propagate_flat(Kepler{}, std::vector<double>(y1.begin(), y1.end()), 3.0, 0.0, {});
    EXPECT_LT(bwd.direction(), 0.0);
    EXPECT_DOUBLE_EQ(bwd.end_time(), 0.0);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(bwd.final_flat()[i], y0[i], 1e-9);
    const auto a = fwd.flat_at(1.7);
    const auto b = bwd.flat_at(1.7);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
    const auto ts = bwd.times();
    EXPECT_GT(ts.front(), ts.back());
}

TEST(Propagate, ExactAtStoredTimes) {
    const std::vector<double> y0{1.0, 0.0};
    const Trajectory tr = propagate_flat(Oscillator{}, y0, 0.0, 2.0, {});
    const auto ts = tr.times();
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const auto y = tr.flat_at(ts[k]);
        const auto s = tr.stored_state(k);
        EXPECT_EQ(y[0], s[0]);
        EXPECT_EQ(y[1], s[1]);
    }
}

TEST(Propagate, OutOfSpanAndSparseMode) {
    const std::vector<double> y0{1.0, 0.0};
    const Trajectory tr = propagate_flat(Oscillator{}, y0, 0.0, 2.0, {});
    EXPECT_FALSE(tr.contains(2.5));
    EXPECT_THROW(tr.flat_at(2.5), OutOfSpanError);
    EXPECT_THROW(tr.flat_at(-0.1), OutOfSpanError);

    IntegratorConfig sparse;
    sparse.dense = false;
    const Trajectory end_only = propagate_flat(Oscillator{}, y0, 0.0, 2.0, sparse);
    EXPECT_FALSE(end_only.has_dense_output());
    EXPECT_EQ(end_only.times().size(), 2u);
    EXPECT_NEAR(end_only.final_flat()[0], std::cos(2.0), 1e-11);
    EXPECT_THROW(end_only.flat_at(1.0), OutOfSpanError);
}

TEST(Propagate, InvalidArguments) {
    const std::vector<double> y0{1.0, 0.0};
    EXPECT_THROW(propagate_flat(Oscillator{}, y0, 0.0, 0.0, {}), DomainError);
    IntegratorConfig bad;
    bad.rel_tol = 0.0;
    EXPECT_THROW(propagate_flat(Oscillator{}, y0, 0.0, 1.0, bad), DomainError);
}

TEST(Propagate, MaxStepHonoured) {
    const std::vector<double> y0{1.0, 0.0};
    IntegratorConfig cfg;
    cfg.max_step = 0.05;
    const Trajectory tr = propagate_flat(Oscillator{}, y0, 0.0, 1.0, cfg);
    const auto ts = tr.times();
    for (std::size_t k = 1; k < ts.size(); ++k) EXPECT_LE(ts[k] - ts[k - 1], 0.05 + 1e-15);
}

TEST(Propagate, FiniteTimeBlowUpUnderflows) {
    // y' = y^2, y(0) = 1 blows up at t = 1.
    auto blowup = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; };
    const std::vector<double> y0{1.0};
    EXPECT_THROW(propagate_flat(blowup, y0, 0.0, 2.0, {}), StepUnderflowError);
}

TEST(Propagate, HeadOnCollisionAborts) {
    SystemState s;
    s.positions = {{-1.0, 0.0}, {1.0, 0.0}};
    s.velocities = {{0.0, 0.0}, {0.0, 0.0}};
    EXPECT_THROW(propagate(MassVector{1.0, 1.0}, PotentialLaw::gravitational(), s, 5.0, {}), CollisionError);
}

TEST(Propagate, SuperEightEnergyAndMomentumDrift) {
    const ChoreographyIC ic = super_eight_isosceles();
    const PotentialLaw law = PotentialLaw::gravitational();
    const Trajectory tr = propagate(ic.masses(), law, ic.state, ic.period, {});
    const auto c0 = conserved_quantities(ic.state, ic.masses(), law);
    const auto c1 = conserved_quantities(tr.final_state(), ic.masses(), law);
    EXPECT_NEAR(c1.energy, c0.energy, 1e-11);
    EXPECT_NEAR(c1.angular_momentum, c0.angular_momentum, 1e-11);
    EXPECT_LT(max_abs(c1.linear_momentum - c0.linear_momentum), 1e-12);
}

TEST(Propagate, SuperEightClosureWithinBudget) {
    const ChoreographyIC ic = super_eight_isosceles();
    const auto start = std::chrono::steady_clock::now();
    const Trajectory tr = propagate(ic.masses(), PotentialLaw::gravitational(), ic.state, ic.period, {});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LE(state_distance(tr.final_state(), ic.state), 1e-8);
    EXPECT_LE(seconds, 5.0);
}

TEST(Propagate, TighterToleranceConverges) {
    const std::vector<double> y0{1.0, 0.0, 0.0, 1.3};
    IntegratorConfig loose;
    loose.rel_tol = 1e-6;
    loose.abs_tol = 1e-8;
    const auto coarse = propagate_flat(Kepler{}, y0, 0.0, 6.0, loose);
    const auto fine = propagate_flat(Kepler{}, y0, 0.0, 6.0, {});
    IntegratorConfig finer;
    finer.rel_tol = 1e-13;
    finer.abs_tol = 1e-15;
    const auto ref = propagate_flat(Kepler{}, y0, 0.0, 6.0, finer);
    double e_coarse = 0.0, e_fine = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        e_coarse = std::max(e_coarse, std::fabs(coarse.final_flat()[i] - ref.final_flat()[i]));
        e_fine = std::max(e_fine, std::fabs(fine.final_flat()[i] - ref.final_flat()[i]));
    }
    EXPECT_LT(e_fine, e_coarse);
    EXPECT_LT(e_fine, 1e-10);
    EXPECT_GT(fine.step_count(), coarse.step_count());
}
