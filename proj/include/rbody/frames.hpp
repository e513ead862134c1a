#pragma once

// Comet and moon coordinates, their rotating-frame equations of motion,
// the size of the perturbation gradient, and circular-orbit seeds.
//
// Comet:  q(t) = eps^-1 e^{J w tau / nu} x(tau),         t = tau / nu
// Moon:   q(t) = q_1(t) + eps e^{J w tau / nu} x(tau),   t = tau / nu
// Both turn the satellite equation into (c d/dtau + J)^2 x = F with c = nu / w.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rbody/configs.hpp"
#include "rbody/dynamics.hpp"
#include "rbody/errors.hpp"
#include "rbody/integrate.hpp"
#include "rbody/vec2.hpp"

namespace rbody {

/// Returns primary positions at inertial time t.
template <class E>
concept PrimaryEphemeris = requires(const E& e, double t) {
    { e(t) } -> std::convertible_to<std::vector<Vec2>>;
};

class CometFrame {
public:
    CometFrame(int p, int q, PotentialLaw law) : p_(p), q_(q), law_(law) {
        if (p < 1 || q < 1) throw DomainError("comet frame needs positive integers p, q");
    }

    int p() const { return p_; }
    int q() const { return q_; }
    const PotentialLaw& law() const { return law_; }
    double omega() const { return static_cast<double>(p_) / q_; }
    double nu() const { return 1.0 / q_; }
    double epsilon() const { return std::pow(omega(), 2.0 / (law_.alpha() + 1.0)); }
    /// nu / omega = 1 / p.
    double speed_ratio() const { return 1.0 / p_; }

private:
    int p_;
    int q_;
    PotentialLaw law_;
};

class MoonFrame {
public:
    MoonFrame(int r, int q, PotentialLaw law) : r_(r), q_(q), law_(law) {
        if (r < 1 || q < 1 || r == q) throw DomainError("moon frame needs positive integers r != q");
    }

    int r() const { return r_; }
    int q() const { return q_; }
    const PotentialLaw& law() const { return law_; }
    double omega() const { return static_cast<double>(r_) / q_; }
    double nu() const { return omega() - 1.0; }
    double epsilon() const { return std::pow(omega(), -2.0 / (law_.alpha() + 1.0)); }
    double speed_ratio() const { return nu() / omega(); }

private:
    int r_;
    int q_;
    PotentialLaw law_;
};

struct FramePoint {
    Vec2 position;
    double time = 0.0;
};

/// Phase point in inertial (q, q_dot, t) or rotating (x, x', tau) coordinates.
struct FrameState {
    Vec2 position;
    Vec2 velocity;
    double time = 0.0;
};

inline FramePoint comet_to_inertial(const Vec2& x, double tau, const CometFrame& f) {
    const double t = tau / f.nu();
    return {exp_j(f.omega() * t) * x / f.epsilon(), t};
}

inline FramePoint inertial_to_comet(const Vec2& q, double t, const CometFrame& f) {
    return {f.epsilon() * (exp_j(-f.omega() * t) * q), t * f.nu()};
}

/// q_dot = eps^-1 w e^{J w t} (J x + (nu / w) x').
inline FrameState comet_state_to_inertial(const FrameState& s, const CometFrame& f) {
    const double t = s.time / f.nu();
    const Mat2 rot = exp_j(f.omega() * t);
    const double eps = f.epsilon();
    return {rot * s.position / eps,
            (f.omega() / eps) * (rot * (apply_j(s.position) + f.speed_ratio() * s.velocity)), t};
}

inline FrameState inertial_to_comet_state(const FrameState& s, const CometFrame& f) {
    const Mat2 back = exp_j(-f.omega() * s.time);
    const double eps = f.epsilon();
    const Vec2 x = eps * (back * s.position);
    const Vec2 xp = (eps * (back * s.velocity) / f.omega() - apply_j(x)) / f.speed_ratio();
    return {x, xp, s.time * f.nu()};
}

/// Moon coordinates relative to body 1, whose inertial position/velocity are given.
inline FrameState moon_state_to_inertial(const FrameState& s, const MoonFrame& f, const Vec2& q1, const Vec2& v1) {
    const double t = s.time / f.nu();
    const Mat2 rot = exp_j(f.omega() * t);
    const double eps = f.epsilon();
    return {q1 + eps * (rot * s.position),
            v1 + eps * f.omega() * (rot * (apply_j(s.position) + f.speed_ratio() * s.velocity)), t};
}

inline FrameState inertial_to_moon_state(const FrameState& s, const MoonFrame& f, const Vec2& q1, const Vec2& v1) {
    const Mat2 back = exp_j(-f.omega() * s.time);
    const double eps = f.epsilon();
    const Vec2 x = (back * (s.position - q1)) / eps;
    const Vec2 xp = ((back * (s.velocity - v1)) / (eps * f.omega()) - apply_j(x)) / f.speed_ratio();
    return {x, xp, s.time * f.nu()};
}

namespace detail {

// x'' from (c d/dtau + J)^2 x = force:  c^2 x'' + 2 c J x' - x = force.
inline Vec2 rotating_acceleration(const Vec2& x, const Vec2& xp, const Vec2& force, double c) {
    return (force + x - 2.0 * c * apply_j(xp)) / (c * c);
}

inline Vec2 kernel(const Vec2& d, const PotentialLaw& law, double guard, double tau, std::size_t body) {
    const double r = norm(d);
    if (!(r >= guard)) throw CollisionError(tau, body, body, r);
    return law.force_factor(r) * d;
}

}  // namespace detail

/// Rotated primaries x_j(tau) = e^{-J w tau / nu} q_j(tau / nu).
template <PrimaryEphemeris E>
std::vector<Vec2> comet_rotated_primaries(const E& ephemeris, double tau, const CometFrame& f) {
    const double t = tau / f.nu();
    const Mat2 back = exp_j(-f.omega() * t);
    std::vector<Vec2> out = ephemeris(t);
    for (Vec2& p : out) p = back * p;
    return out;
}

/// x'' of the comet equation given the rotated primaries.
inline Vec2 comet_rotating_rhs(const Vec2& x, const Vec2& xp, const CometFrame& f, std::span<const Vec2> rotated,
                               const MassVector& masses, double guard = kDefaultCollisionRadius, double tau = 0.0) {
    detail::check_masses(rotated.size(), masses);
    const double eps = f.epsilon();
    Vec2 force;
    for (std::size_t j = 0; j < rotated.size(); ++j) {
        if (masses[j] == 0.0) continue;
        force -= masses[j] * detail::kernel(x - eps * rotated[j], f.law(), guard, tau, j);
    }
    return detail::rotating_acceleration(x, xp, force, f.speed_ratio());
}

/// Rotated relative-equilibrium primaries x_j(tau) = e^{-J (w - 1) tau / nu} a_j.
inline std::vector<Vec2> moon_rotated_primaries(const CentralConfiguration& cc, double tau, const MoonFrame& f) {
    const Mat2 back = exp_j(-(f.omega() - 1.0) * tau / f.nu());
    std::vector<Vec2> out;
    out.reserve(cc.points.size());
    for (const Vec2& a : cc.points) out.push_back(back * a);
    return out;
}

/// x'' of the moon equation about body 1 (m_1 = 1) of a relative equilibrium.
inline Vec2 moon_rotating_rhs(const Vec2& x, const Vec2& xp, double tau, const MoonFrame& f,
                              const CentralConfiguration& cc, double guard = kDefaultCollisionRadius) {
    const auto rotated = moon_rotated_primaries(cc, tau, f);
    const double eps = f.epsilon();
    const PotentialLaw& law = f.law();
    Vec2 force = -detail::kernel(x, law, guard, tau, 0) * cc.masses[0];
    Vec2 bracket;
    for (std::size_t j = 1; j < rotated.size(); ++j) {
        if (cc.masses[j] == 0.0) continue;
        const Vec2 d = rotated[0] - rotated[j];
        bracket += cc.masses[j] * (detail::kernel(d + eps * x, law, guard, tau, j) - detail::kernel(d, law, guard, tau, j));
    }
    force -= std::pow(eps, law.alpha()) * bracket;
    return detail::rotating_acceleration(x, xp, force, f.speed_ratio());
}

/// Flat 4-dimensional field (x, x') in tau for the comet equation.
template <PrimaryEphemeris E>
class CometRotatingField {
public:
    CometRotatingField(CometFrame frame, E ephemeris, MassVector masses, double guard = kDefaultCollisionRadius)
        : frame_(frame), ephemeris_(std::move(ephemeris)), masses_(std::move(masses)), guard_(guard) {}

    void operator()(double tau, std::span<const double> y, std::span<double> dy) const {
        const auto rotated = comet_rotated_primaries(ephemeris_, tau, frame_);
        const Vec2 acc = comet_rotating_rhs({y[0], y[1]}, {y[2], y[3]}, frame_, rotated, masses_, guard_, tau);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = acc.x;
        dy[3] = acc.y;
    }

private:
    CometFrame frame_;
    E ephemeris_;
    MassVector masses_;
    double guard_;
};

class MoonRotatingField {
public:
    MoonRotatingField(MoonFrame frame, CentralConfiguration cc, double guard = kDefaultCollisionRadius)
        : frame_(frame), cc_(std::move(cc)), guard_(guard) {}

    void operator()(double tau, std::span<const double> y, std::span<double> dy) const {
        const Vec2 acc = moon_rotating_rhs({y[0], y[1]}, {y[2], y[3]}, tau, frame_, cc_, guard_);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = acc.x;
        dy[3] = acc.y;
    }

private:
    MoonFrame frame_;
    CentralConfiguration cc_;
    double guard_;
};

/// Massless satellite (q, q_dot) in the inertial frame, driven by prescribed primaries.
template <PrimaryEphemeris E>
class RestrictedField {
public:
    RestrictedField(E ephemeris, MassVector masses, PotentialLaw law, double guard = kDefaultCollisionRadius)
        : ephemeris_(std::move(ephemeris)), masses_(std::move(masses)), law_(law), guard_(guard) {}

    void operator()(double t, std::span<const double> y, std::span<double> dy) const {
        const std::vector<Vec2> prim = ephemeris_(t);
        detail::check_masses(prim.size(), masses_);
        const Vec2 q{y[0], y[1]};
        Vec2 acc;
        for (std::size_t j = 0; j < prim.size(); ++j) {
            if (masses_[j] == 0.0) continue;
            const Vec2 d = q - prim[j];
            const double r = norm(d);
            if (!(r >= guard_)) throw CollisionError(t, j, prim.size(), r);
            acc -= masses_[j] * law_.force_factor(r) * d;
        }
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = acc.x;
        dy[3] = acc.y;
    }

    const E& ephemeris() const { return ephemeris_; }

private:
    E ephemeris_;
    MassVector masses_;
    PotentialLaw law_;
    double guard_;
};

/// Relative equilibrium q_j(t) = e^{tJ} a_j as an ephemeris.
struct RelativeEquilibriumEphemeris {
    std::vector<Vec2> points;
    std::vector<Vec2> operator()(double t) const {
        const Mat2 rot = exp_j(t);
        std::vector<Vec2> out;
        out.reserve(points.size());
        for (const Vec2& a : points) out.push_back(rot * a);
        return out;
    }
};

enum class PerturbationKind { comet, moon };

inline std::string to_string(PerturbationKind k) { return k == PerturbationKind::comet ? "comet" : "moon"; }

/// grad_x h for the comet: sum_j m_j [x / |x|^(a+1) - (x - eps x_j) / |x - eps x_j|^(a+1)].
inline Vec2 comet_gradient_h(const Vec2& x, double eps, std::span<const Vec2> primaries, const MassVector& masses,
                             const PotentialLaw& law) {
    Vec2 g;
    const Vec2 base = law.force_factor(norm(x)) * x;
    for (std::size_t j = 0; j < primaries.size(); ++j) {
        const Vec2 d = x - eps * primaries[j];
        g += masses[j] * (base - law.force_factor(norm(d)) * d);
    }
    return g;
}

/// grad_x h for the moon: eps^a sum_{j >= 2} m_j [grad phi(d_j + eps x) - grad phi(d_j)], d_j = x_1 - x_j.
/// The bracket is formed before scaling so that small eps keeps its relative accuracy.
inline Vec2 moon_gradient_h(const Vec2& x, double eps, std::span<const Vec2> primaries, const MassVector& masses,
                            const PotentialLaw& law) {
    Vec2 bracket;
    for (std::size_t j = 1; j < primaries.size(); ++j) {
        const Vec2 d = primaries[0] - primaries[j];
        const Vec2 shifted = d + eps * x;
        bracket += masses[j] * (law.force_factor(norm(d)) * d - law.force_factor(norm(shifted)) * shifted);
    }
    return std::pow(eps, law.alpha()) * bracket;
}

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> eps;
    std::vector<double> gradient_norms;
};

inline SlopeFit fit_loglog(std::vector<double> eps, std::vector<double> values) {
    const std::size_t n = eps.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(eps[i]);
        my += std::log(values[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(eps[i]) - mx;
        sxy += dx * (std::log(values[i]) - my);
        sxx += dx * dx;
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx, std::move(eps), std::move(values)};
}

/// Least-squares slope of log max|grad_x h| against log eps. The maximum runs
/// over satellite angles theta (x = e^{J theta} x0) and over the primary
/// phases in `primary_snapshots`.
inline SlopeFit perturbation_order(PerturbationKind kind, const PotentialLaw& law, std::span<const double> eps_grid,
                                   std::span<const std::vector<Vec2>> primary_snapshots, const MassVector& masses,
                                   int angles = 64) {
    if (eps_grid.size() < 3) throw GridError("perturbation fit needs at least three eps values");
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        if (!(eps_grid[i] > 0.0)) throw GridError("eps values must be positive");
        if (i > 0 && !(eps_grid[i] < eps_grid[i - 1])) throw GridError("eps grid must be decreasing");
    }
    if (std::log10(eps_grid.front() / eps_grid.back()) < 1.5) throw GridError("eps grid spans fewer than 1.5 decades");
    if (primary_snapshots.empty()) throw GridError("no primary snapshots");

    std::vector<double> eps(eps_grid.begin(), eps_grid.end());
    std::vector<double> norms;
    for (double e : eps) {
        double worst = 0.0;
        for (const auto& prim : primary_snapshots) {
            for (int k = 0; k < angles; ++k) {
                const Vec2 x = rotate_j(kTwoPi * k / angles, Vec2{1.0, 0.0});
                const Vec2 g = kind == PerturbationKind::comet ? comet_gradient_h(x, e, prim, masses, law)
                                                               : moon_gradient_h(x, e, prim, masses, law);
                worst = std::max(worst, max_abs(g));
            }
        }
        norms.push_back(worst);
    }
    return fit_loglog(std::move(eps), std::move(norms));
}

/// Default fit window: nine log-spaced values from 1e-2 down to 1e-4.
inline std::vector<double> default_eps_grid(int count = 9) {
    std::vector<double> g;
    for (int i = 0; i < count; ++i) g.push_back(std::pow(10.0, -2.0 - 2.0 * i / (count - 1)));
    return g;
}

/// Comet: super-eight primaries at 32 phases of one period. Moon: Maxwell n = 4
/// about its central body, rotated through 32 angles.
inline SlopeFit perturbation_order(PerturbationKind kind, const PotentialLaw& law,
                                   std::span<const double> eps_grid, const IntegratorConfig& config = {}) {
    std::vector<std::vector<Vec2>> snaps;
    constexpr int kPhases = 32;
    if (kind == PerturbationKind::comet) {
        const ChoreographyIC ic = super_eight_isosceles();
        const Trajectory traj = propagate(ic.masses(), PotentialLaw::gravitational(), ic.state, ic.period, config);
        for (int k = 0; k < kPhases; ++k) snaps.push_back(sample(traj, ic.period * k / kPhases).positions);
        return perturbation_order(kind, law, eps_grid, snaps, ic.masses());
    }
    const CentralConfiguration cc = maxwell_configuration(4, law);
    const RelativeEquilibriumEphemeris eph{cc.points};
    for (int k = 0; k < kPhases; ++k) snaps.push_back(eph(kTwoPi * k / kPhases));
    return perturbation_order(kind, law, eps_grid, snaps, cc.masses);
}

struct CircularSeed {
    double radius = 0.0;
    double speed = 0.0;
};

/// Speed of a circular orbit of the given radius about a point mass: v^2 = M r^(1 - alpha).
inline double circular_speed(double radius, double mass, const PotentialLaw& law) {
    if (!(radius > 0.0) || !(mass > 0.0)) throw DomainError("circular orbit needs positive radius and mass");
    return std::sqrt(mass * std::pow(radius, 1.0 - law.alpha()));
}

/// Radius of the circular orbit with the given period: w^2 r^(alpha + 1) = M.
inline double circular_radius(double period, double mass, const PotentialLaw& law) {
    if (!(period > 0.0) || !(mass > 0.0)) throw DomainError("circular orbit needs positive period and mass");
    const double ratio = period / kTwoPi;
    return std::pow(mass * ratio * ratio, 1.0 / (law.alpha() + 1.0));
}

/// Circular Kepler orbit about the total mass whose period is the full orbit period 4 T0.
inline CircularSeed comet_seed(double t0, double total_mass, const PotentialLaw& law) {
    if (!(t0 > 0.0)) throw DomainError("T0 must be positive");
    const double a = circular_radius(4.0 * t0, total_mass, law);
    return {a, circular_speed(a, total_mass, law)};
}

/// Circular orbit about one primary completing `windings` relative turns in 4 T0.
inline CircularSeed moon_seed(double t0, double primary_mass, int windings, const PotentialLaw& law) {
    if (!(t0 > 0.0)) throw DomainError("T0 must be positive");
    if (windings < 1) throw DomainError("windings must be positive");
    const double d = circular_radius(4.0 * t0 / windings, primary_mass, law);
    return {d, circular_speed(d, primary_mass, law)};
}

}  // namespace rbody
