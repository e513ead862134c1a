// Solves one symmetric satellite orbit from its analytic seed and prints the
// Newton history plus a coarse trace of the satellite.
// Usage: demo_table1_orbit [row 1..6]

#include <cstdio>
#include <cstdlib>

#include "rbody/shooting.hpp"

int main(int argc, char** argv) {
    using namespace rbody;
    const int index = argc > 1 ? std::atoi(argv[1]) : 1;
    if (index < 1 || index > 6) {
        std::fprintf(stderr, "row must be 1..6\n");
        return 1;
    }
    const Table1Row& row = table1_rows()[static_cast<std::size_t>(index - 1)];
    const ShootingProblem problem = table1_problem(row);
    const Eigen::Vector2d seed = kepler_guess(problem, row.kind);

    try {
        const OrbitRecord rec = solve(problem, seed);
        std::printf("T0 = %d pi/4, seed (%.6f, %.6f)\n", row.quarter_count, seed[0], seed[1]);
        for (std::size_t k = 0; k < rec.residual_history.size(); ++k) {
            std::printf("  iterate %zu  |r| = %.3e\n", k, rec.residual_history[k]);
        }
        std::printf("a = %.15f  (published %.15f)\nb = %.15f  (published %.15f)\n", rec.a, row.a, rec.b, row.b);
        std::printf("%s, closure %.2e, symmetry %.2e, end map %s\n", to_string(rec.classification).c_str(),
                    rec.closure_residual, rec.symmetry_residual, rec.end_involution.c_str());

        const ReconstructedOrbit orbit(problem, rec.a, rec.b);
        for (int k = 0; k <= 16; ++k) {
            const double t = orbit.period() * k / 16;
            const auto y = orbit.satellite_at(t);
            std::printf("  t = %9.4f  q5 = (%10.6f, %10.6f)\n", t, y[0], y[1]);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "row %d failed: %s\n", index, e.what());
        return 2;
    }
    return 0;
}
