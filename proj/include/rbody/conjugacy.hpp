#pragma once

// Rotating-frame integrations mapped back to the inertial frame and compared
// with direct integration of the satellite under the same primaries.

#include <algorithm>
#include <cmath>
#include <vector>

#include "rbody/configs.hpp"
#include "rbody/frames.hpp"
#include "rbody/integrate.hpp"

namespace rbody {

namespace detail {

inline double state_gap(const FrameState& s, std::span<const double> y) {
    return std::max({std::fabs(s.position.x - y[0]), std::fabs(s.position.y - y[1]), std::fabs(s.velocity.x - y[2]),
                     std::fabs(s.velocity.y - y[3])});
}

}  // namespace detail

/// Max inertial-state gap over `samples + 1` points of one rotating period tau in [0, 2 pi].
/// `start` is the inertial satellite state at t = 0.
template <PrimaryEphemeris E>
double comet_conjugacy_residual(const CometFrame& frame, const E& ephemeris, const MassVector& masses,
                                const FrameState& start, int samples = 64, const IntegratorConfig& config = {}) {
    IntegratorConfig cfg = config;
    cfg.dense = true;
    const FrameState rs = inertial_to_comet_state(start, frame);
    const std::vector<double> x0{rs.position.x, rs.position.y, rs.velocity.x, rs.velocity.y};
    const Trajectory rot = propagate_flat(CometRotatingField<E>(frame, ephemeris, masses, cfg.collision_radius), x0, 0.0,
                                          kTwoPi, cfg);
    const std::vector<double> q0{start.position.x, start.position.y, start.velocity.x, start.velocity.y};
    const Trajectory direct = propagate_flat(RestrictedField<E>(ephemeris, masses, frame.law(), cfg.collision_radius),
                                             q0, 0.0, kTwoPi / frame.nu(), cfg);
    double gap = 0.0;
    for (int k = 0; k <= samples; ++k) {
        const double tau = kTwoPi * k / samples;
        const auto x = rot.flat_at(tau);
        const FrameState s = comet_state_to_inertial({{x[0], x[1]}, {x[2], x[3]}, tau}, frame);
        gap = std::max(gap, detail::state_gap(s, direct.flat_at(tau / frame.nu())));
    }
    return gap;
}

/// Same comparison for the moon equation about body 1 of a relative equilibrium;
/// `x0`, `x0_dot` are the rotating-frame position and tau-velocity at tau = 0.
inline double moon_conjugacy_residual(const MoonFrame& frame, const CentralConfiguration& cc, const Vec2& x0,
                                      const Vec2& x0_dot, int samples = 64, const IntegratorConfig& config = {}) {
    IntegratorConfig cfg = config;
    cfg.dense = true;
    const std::vector<double> y0{x0.x, x0.y, x0_dot.x, x0_dot.y};
    const Trajectory rot =
        propagate_flat(MoonRotatingField(frame, cc, cfg.collision_radius), y0, 0.0, kTwoPi, cfg);
    const RelativeEquilibriumEphemeris eph{cc.points};
    const Vec2 v1 = apply_j(cc.points[0]);
    const FrameState start = moon_state_to_inertial({x0, x0_dot, 0.0}, frame, cc.points[0], v1);
    const std::vector<double> q0{start.position.x, start.position.y, start.velocity.x, start.velocity.y};
    const Trajectory direct = propagate_flat(RestrictedField(eph, cc.masses, frame.law(), cfg.collision_radius), q0,
                                             0.0, kTwoPi / frame.nu(), cfg);
    double gap = 0.0;
    for (int k = 0; k <= samples; ++k) {
        const double tau = kTwoPi * k / samples;
        const double t = tau / frame.nu();
        const auto x = rot.flat_at(tau);
        const Mat2 rot_t = exp_j(t);
        const FrameState s = moon_state_to_inertial({{x[0], x[1]}, {x[2], x[3]}, tau}, frame, rot_t * cc.points[0],
                                                    rot_t * apply_j(cc.points[0]));
        gap = std::max(gap, detail::state_gap(s, direct.flat_at(t)));
    }
    return gap;
}

}  // namespace rbody
