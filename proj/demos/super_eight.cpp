// Integrates the four-body super-eight for one period and prints positions,
// energy drift and the closure error. Usage: demo_super_eight [samples]

#include <cstdio>
#include <cstdlib>

#include "rbody/configs.hpp"

int main(int argc, char** argv) {
    using namespace rbody;
    const int samples = argc > 1 ? std::atoi(argv[1]) : 16;
    if (samples < 1) {
        std::fprintf(stderr, "samples must be positive\n");
        return 1;
    }

    const ChoreographyIC ic = super_eight_isosceles();
    const PotentialLaw law = PotentialLaw::gravitational();
    const Trajectory traj = propagate(ic.masses(), law, ic.state, ic.period, {});
    const double e0 = conserved_quantities(ic.state, ic.masses(), law).energy;

    std::printf("%8s %12s %12s %12s %12s %12s\n", "t", "q1x", "q1y", "q2x", "q2y", "dE");
    for (int k = 0; k <= samples; ++k) {
        const double t = ic.period * k / samples;
        const SystemState s = sample(traj, t);
        const double de = conserved_quantities(s, ic.masses(), law).energy - e0;
        std::printf("%8.4f %12.8f %12.8f %12.8f %12.8f %12.3e\n", t, s.positions[0].x, s.positions[0].y,
                    s.positions[1].x, s.positions[1].y, de);
    }
    std::printf("steps %zu, closure error %.3e\n", traj.step_count(), state_distance(traj.final_state(), ic.state));
    return 0;
}
