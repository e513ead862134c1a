#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rbody/shooting.hpp"

using namespace rbody;

namespace {

constexpr double kPi = std::numbers::pi;

const Table1Row& row(int index) { return table1_rows().at(static_cast<std::size_t>(index - 1)); }

}  // namespace

TEST(Problem, HalfPeriodLattice) {
    EXPECT_EQ(quarter_count_of(2 * kPi), 8);
    EXPECT_EQ(quarter_count_of(4.5 * kPi), 18);
    EXPECT_EQ(quarter_count_of(kPi / 4), 1);
    EXPECT_THROW(quarter_count_of(1.0), ValidationError);
    EXPECT_THROW(quarter_count_of(-kPi), ValidationError);
    EXPECT_THROW(quarter_count_of(0.0), ValidationError);

    ShootingProblem p;
    EXPECT_NEAR(p.t0(), 2 * kPi, 1e-15);
    EXPECT_NEAR(p.period(), 8 * kPi, 1e-14);
    EXPECT_EQ(p.combination(), SymmetryCombination::first);
    p.quarter_count = 10;
    EXPECT_EQ(p.combination(), SymmetryCombination::second);
    p.quarter_count = 9;
    EXPECT_EQ(p.combination(), SymmetryCombination::other);
    p.quarter_count = 0;
    EXPECT_THROW(p.validate(), ValidationError);
}

TEST(Problem, Parsing) {
    EXPECT_EQ(parse_target("x"), TargetCrossing::x_perpendicular);
    EXPECT_EQ(parse_target(to_string(TargetCrossing::y_perpendicular)), TargetCrossing::y_perpendicular);
    EXPECT_THROW(parse_target("z"), ValidationError);
    EXPECT_EQ(parse_orbit_class("moon"), OrbitClass::moon);
    EXPECT_THROW(parse_orbit_class("planet"), ValidationError);
}

TEST(Residual, VanishesAtPublishedRowOne) {
    const ShootingProblem pb = table1_problem(row(1));
    EXPECT_LE(residual(pb, row(1).a, row(1).b).norm(), 1e-9);
    ShootingProblem x = pb;
    x.target = TargetCrossing::x_perpendicular;
    EXPECT_GT(residual(x, row(1).a, row(1).b).norm(), 1.0);
}

TEST(Residual, InitialStateIsFixedByFamilyInvolution) {
    for (auto family : {ChoreographyFamily::isosceles, ChoreographyFamily::orthogonal}) {
        const SystemState s = shooting_initial_state(family, 3.0, 0.7);
        EXPECT_EQ(fixed_point_residual(s, family_involution(family)), 0.0);
    }
}

TEST(Residual, TimeReversalGivesSameResidual) {
    // u(-T0) = Phi1x u(T0): q5x and v5y agree, q5y and v5x flip sign.
    const ShootingProblem pb = table1_problem(row(1));
    const double a = 4.05, b = 1.03;
    const ResidualEvaluation fwd = evaluate_residual(pb, a, b);
    const Trajectory back = propagate(restricted_masses(), PotentialLaw::gravitational(),
                                      shooting_initial_state(pb.family, a, b), -pb.t0(), {});
    const SystemState end = back.final_state();
    EXPECT_NEAR(end.positions[kSatellite].x, fwd.value[0], 1e-8);
    EXPECT_NEAR(end.velocities[kSatellite].y, fwd.value[1], 1e-8);
    EXPECT_NEAR(end.positions[kSatellite].y, -fwd.gamma, 1e-8);
    EXPECT_NEAR(end.velocities[kSatellite].x, -fwd.delta, 1e-8);
}

TEST(Newton, SyntheticProblems) {
    const NewtonResult ok = newton_solve(
        [](const Eigen::Vector2d& x) { return Eigen::Vector2d(x[0] * x[0] - 2.0, x[1] - x[0]); },
        Eigen::Vector2d(1.0, 0.0), {});
    EXPECT_NEAR(ok.x[0], std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(ok.x[1], std::sqrt(2.0), 1e-10);
    EXPECT_EQ(ok.history.size(), static_cast<std::size_t>(ok.iterations) + 1);

    EXPECT_THROW(newton_solve([](const Eigen::Vector2d& x) { return Eigen::Vector2d(x[0] + x[1], x[0] + x[1] - 1.0); },
                              Eigen::Vector2d(0.0, 0.0), {}),
                 SingularJacobianError);
    EXPECT_THROW(newton_solve([](const Eigen::Vector2d& x) { return Eigen::Vector2d(x[0] * x[0] + 1.0, x[1]); },
                              Eigen::Vector2d(0.5, 0.0), {}),
                 ConvergenceError);
    NewtonConfig bad;
    bad.tolerance = 0.0;
    EXPECT_THROW(newton_solve([](const Eigen::Vector2d& x) { return x; }, Eigen::Vector2d(1.0, 1.0), bad),
                 ValidationError);
}

TEST(Newton, ConvergenceIsQuadratic) {
    const ShootingProblem pb = table1_problem(row(1));
    const NewtonResult nr = newton_solve([&](const Eigen::Vector2d& x) { return residual(pb, x[0], x[1]); },
                                         kepler_guess(pb, OrbitClass::comet), {});
    const auto& h = nr.history;
    ASSERT_GE(h.size(), 4u);
    double best = 0.0;
    for (std::size_t k = 2; k < h.size(); ++k) {
        if (h[k] < 1e-13) continue;
        best = std::max(best, std::log(h[k] / h[k - 1]) / std::log(h[k - 1] / h[k - 2]));
    }
    EXPECT_GE(best, 1.8);
}

TEST(Solve, RowOneFromAnalyticSeed) {
    const ShootingProblem pb = table1_problem(row(1));
    const Eigen::Vector2d seed = kepler_guess(pb, OrbitClass::comet);
    EXPECT_NEAR(seed[0], 4.0, 1e-12);
    EXPECT_NEAR(seed[1], 1.0, 1e-12);
    EXPECT_GT(residual(pb, seed[0], seed[1]).norm(), 1e-2);
    const OrbitRecord rec = solve(pb, seed);
    EXPECT_LE(rec.iterations, 8);
    EXPECT_NEAR(rec.a, row(1).a, 1e-9);
    EXPECT_NEAR(rec.b, row(1).b, 1e-9);
    EXPECT_LE(rec.closure_residual, 1e-6);
    EXPECT_LE(rec.symmetry_residual, 1e-6);
    EXPECT_EQ(rec.classification, OrbitClass::comet);
    EXPECT_EQ(rec.end_involution, "Phi1y");
    EXPECT_NEAR(rec.period, 8 * kPi, 1e-13);
    EXPECT_GT(rec.geometry.min_primary_distance, 1.0);
    EXPECT_EQ(rec.residual_history.front(), residual(pb, seed[0], seed[1]).norm());
}

TEST(Solve, MoonRowFromRelativeCircularSeed) {
    const ShootingProblem pb = table1_problem(row(6));
    const Eigen::Vector2d seed = kepler_guess(pb, OrbitClass::moon);
    const CircularSeed s = moon_seed(kPi / 2, 1.0, kMoonWindings, PotentialLaw::gravitational());
    const ChoreographyIC ic = super_eight_orthogonal();
    EXPECT_NEAR(seed[0], ic.state.positions[0].x + s.radius, 1e-15);
    EXPECT_NEAR(seed[1], ic.state.velocities[0].y + s.speed, 1e-15);
    const OrbitRecord rec = solve(pb, seed);
    EXPECT_NEAR(rec.a, row(6).a, 1e-9);
    EXPECT_NEAR(rec.b, row(6).b, 1e-9);
    EXPECT_EQ(rec.classification, OrbitClass::moon);
    EXPECT_EQ(rec.end_involution, "Psi2y");
    EXPECT_LE(rec.closure_residual, 1e-6);
    EXPECT_LE(rec.symmetry_residual, 1e-6);
}

TEST(Solve, ReconstructedOrbitIsPeriodic) {
    const ShootingProblem pb = table1_problem(row(2));
    const ReconstructedOrbit orbit(pb, row(2).a, row(2).b);
    EXPECT_LE(orbit.closure_residual(), 1e-6);
    EXPECT_LE(std::hypot(orbit.a() - row(2).a, orbit.b() - row(2).b), 1e-6);
    const auto u = orbit.full_state(1.3);
    const auto w = orbit.full_state(1.3 + orbit.period());
    ASSERT_EQ(u.size(), 20u);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(u[i], w[i], 1e-9);
}

TEST(Table1, AllRowsFromSeeds) {
    const auto results = reproduce_table1();
    ASSERT_EQ(results.size(), 6u);
    for (const Table1Result& r : results) {
        EXPECT_TRUE(r.matches(1e-9)) << "row " << r.row.index << ": " << r.failure << " error " << r.error;
        EXPECT_LE(r.seconds, 60.0);
        ASSERT_TRUE(r.record.has_value());
        EXPECT_EQ(r.record->classification, r.row.kind) << r.row.index;
    }
    EXPECT_THROW(reproduce_table1({.rows = {7}}), ValidationError);
}

TEST(Sweep, WarmStartAndScaling) {
    const auto kepler = sweep({16, 8, 12, 8}, SeedStrategy::kepler, ChoreographyFamily::isosceles,
                              TargetCrossing::y_perpendicular);
    ASSERT_EQ(kepler.size(), 3u);
    EXPECT_EQ(kepler[0].quarter_count, 8);
    EXPECT_EQ(kepler[2].quarter_count, 16);
    const auto warm = sweep({8, 12, 16}, SeedStrategy::warm_start, ChoreographyFamily::isosceles,
                            TargetCrossing::y_perpendicular);
    std::vector<OrbitRecord> records;
    for (std::size_t i = 0; i < 3; ++i) {
        ASSERT_TRUE(kepler[i].record.has_value()) << kepler[i].failure;
        ASSERT_TRUE(warm[i].record.has_value()) << warm[i].failure;
        EXPECT_NEAR(kepler[i].record->a, warm[i].record->a, 1e-9);
        records.push_back(*warm[i].record);
    }
    // Warm seed for T0 = 3 pi: previous solution rescaled by (12 / 8)^(2/3) and (12 / 8)^(-1/3).
    EXPECT_NEAR(warm[1].seed[0], warm[0].record->a * std::pow(1.5, 2.0 / 3.0), 1e-14);
    EXPECT_NEAR(warm[1].seed[1], warm[0].record->b * std::pow(1.5, -1.0 / 3.0), 1e-14);
    EXPECT_NEAR(records[1].a, row(3).a, 1e-9);
    EXPECT_LE(kepler_scaling_deviation(records), 0.1);
    EXPECT_THROW(kepler_scaling_deviation(std::span<const OrbitRecord>(records.data(), 1)), DomainError);
}

TEST(Sweep, EmptyAndInvalidCounts) {
    EXPECT_TRUE(sweep({}, SeedStrategy::kepler, ChoreographyFamily::isosceles, TargetCrossing::y_perpendicular).empty());
    const auto items = sweep({0}, SeedStrategy::kepler, ChoreographyFamily::isosceles, TargetCrossing::y_perpendicular);
    ASSERT_EQ(items.size(), 1u);
    EXPECT_FALSE(items[0].record.has_value());
    EXPECT_FALSE(items[0].failure.empty());
}

TEST(Sweep, OffTableHalfPeriod) {
    // T0 = 9 pi / 2 lies between rows 4 and 5.
    const ShootingProblem pb{ChoreographyFamily::isosceles, 18, TargetCrossing::y_perpendicular, {}};
    const OrbitRecord rec = solve(pb, kepler_guess(pb, OrbitClass::comet));
    EXPECT_EQ(rec.classification, OrbitClass::comet);
    EXPECT_GT(rec.a, row(5).a);
    EXPECT_LE(rec.closure_residual, 1e-6);
    EXPECT_LE(rec.symmetry_residual, 1e-6);
}

TEST(Classify, SyntheticGeometries) {
    OrbitGeometry g;
    g.primary_extent = 1.4;
    g.min_inter_primary = 0.3;
    g.min_center_distance = 3.0;
    g.max_distance_to = {5.0, 5.0, 5.0, 5.0};
    EXPECT_EQ(classify(g), OrbitClass::comet);
    g.min_center_distance = 1.0;
    EXPECT_EQ(classify(g), OrbitClass::other);
    g.max_distance_to = {5.0, 0.1, 5.0, 5.0};
    EXPECT_EQ(classify(g), OrbitClass::moon);
}
