#pragma once

// Reference configurations: the super-eight choreography at its two kinds of
// reversible configurations, choreography checks, and central configurations.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "rbody/dynamics.hpp"
#include "rbody/errors.hpp"
#include "rbody/integrate.hpp"
#include "rbody/vec2.hpp"

namespace rbody {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kQuarterPeriod = std::numbers::pi / 4.0;

/// Body permutation, zero-based: perm[i] is the image of body i.
using Permutation = std::vector<std::size_t>;

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return p;
}

inline void validate_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (std::size_t v : p) {
        if (v >= p.size() || seen[v]) throw DomainError("not a permutation");
        seen[v] = true;
    }
}

enum class ChoreographyFamily { isosceles, orthogonal };

inline std::string to_string(ChoreographyFamily f) {
    return f == ChoreographyFamily::isosceles ? "isosceles" : "orthogonal";
}

inline ChoreographyFamily parse_family(const std::string& s) {
    if (s == "isosceles") return ChoreographyFamily::isosceles;
    if (s == "orthogonal") return ChoreographyFamily::orthogonal;
    throw ValidationError("unknown start family '" + s + "'");
}

struct ChoreographyIC {
    SystemState state;
    ChoreographyFamily family = ChoreographyFamily::isosceles;
    double period = kTwoPi;
    double quarter_period = kQuarterPeriod;
    int polygon_order = 2;
    Permutation sigma{2, 3, 0, 1};

    MassVector masses() const { return MassVector(std::vector<double>(state.size(), 1.0)); }
};

/// Super-eight at t = 0: bodies at the vertices of two isosceles triangles.
inline ChoreographyIC super_eight_isosceles() {
    const Vec2 q1{0.939977120285667, -0.327721385645527};
    const Vec2 v1{1.122200245052303, -0.117392625737923};
    const Vec2 q2 = kK * q1;
    const Vec2 v2 = -(kK * v1);
    ChoreographyIC ic;
    ic.family = ChoreographyFamily::isosceles;
    ic.state.positions = {q1, q2, -q1, -q2};
    ic.state.velocities = {v1, v2, -v1, -v2};
    return ic;
}

/// Super-eight at the orthogonal configuration, as published.
inline ChoreographyIC super_eight_orthogonal() {
    const Vec2 q1{1.382856843618412, 0.0};
    const Vec2 q2{0.0, 0.157029922281204};
    const Vec2 v1{0.0, 0.584872630814899};
    const Vec2 v2{1.871935245878693, 0.0};
    ChoreographyIC ic;
    ic.family = ChoreographyFamily::orthogonal;
    ic.state.positions = {q1, q2, -q1, -q2};
    ic.state.velocities = {v1, v2, -v1, -v2};
    return ic;
}

/// The isosceles data reaches the published orthogonal data a quarter period
/// later only after exchanging the labels of bodies 2 and 4.
inline const Permutation& orthogonal_relabeling() {
    static const Permutation p{0, 3, 2, 1};
    return p;
}

inline SystemState relabel(const SystemState& s, const Permutation& p) {
    if (p.size() != s.size()) throw DomainError("permutation size does not match the state");
    SystemState out = s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        out.positions[i] = s.positions[p[i]];
        out.velocities[i] = s.velocities[p[i]];
    }
    return out;
}

/// Max-norm residual of q_j(t + 2 pi q / (m p)) = e^{2 pi J / m} q_sigma(j)(t)
/// over `grid` uniformly spaced t. `positions_at(t)` returns the body positions.
template <class Sampler>
double check_polygon_symmetry(const Sampler& positions_at, double t_begin, double t_end, int m,
                              const Permutation& sigma, int p, int q, int grid = 64) {
    if (m < 1 || p < 1 || q < 0) throw DomainError("polygon symmetry needs m >= 1, p >= 1, q >= 0");
    if (grid < 1) throw DomainError("grid must be positive");
    validate_permutation(sigma);
    const double shift = kTwoPi * q / (static_cast<double>(m) * p);
    if (t_begin + shift > t_end) throw OutOfSpanError("trajectory too short for the requested time shift");
    const Mat2 rot = exp_j(kTwoPi / m);
    const double span = t_end - shift - t_begin;
    double worst = 0.0;
    for (int k = 0; k < grid; ++k) {
        const double t = t_begin + span * k / grid;
        const std::vector<Vec2> now = positions_at(t);
        const std::vector<Vec2> later = positions_at(t + shift);
        if (now.size() != sigma.size()) throw DomainError("permutation size does not match the body count");
        for (std::size_t j = 0; j < sigma.size(); ++j) {
            worst = std::max(worst, max_abs(later[j] - rot * now[sigma[j]]));
        }
    }
    return worst;
}

inline double check_polygon_symmetry(const Trajectory& traj, int m, const Permutation& sigma, int p, int q,
                                     int grid = 64) {
    const double a = std::min(traj.start_time(), traj.end_time());
    const double b = std::max(traj.start_time(), traj.end_time());
    return check_polygon_symmetry([&](double t) { return sample(traj, t).positions; }, a, b, m, sigma, p, q, grid);
}

struct ChoreographyReport {
    double period_residual = 0.0;
    /// Distance of the state one quarter period away to the other published configuration.
    double quarter_residual = 0.0;
    /// Same distance without the 2 <-> 4 relabeling.
    double quarter_residual_literal = 0.0;
    double symmetry_residual = 0.0;
};

/// Integrates the choreography over one period and measures closure, the
/// quarter-period cross-check and the point symmetry q_j = -q_sigma(j).
inline ChoreographyReport verify_choreography(const ChoreographyIC& ic, const IntegratorConfig& config,
                                              int grid = 64) {
    const MassVector masses = ic.masses();
    const PotentialLaw law = PotentialLaw::gravitational();
    const Trajectory traj = propagate(masses, law, ic.state, ic.state.t + ic.period, config);
    ChoreographyReport r;
    r.period_residual = state_distance(traj.final_state(), ic.state);

    SystemState quarter;
    SystemState expected;
    if (ic.family == ChoreographyFamily::isosceles) {
        quarter = sample(traj, ic.state.t + ic.quarter_period);
        expected = super_eight_orthogonal().state;
    } else {
        quarter = sample(traj, ic.state.t + ic.period - ic.quarter_period);
        expected = super_eight_isosceles().state;
    }
    r.quarter_residual_literal = state_distance(quarter, expected);
    r.quarter_residual = state_distance(relabel(quarter, orthogonal_relabeling()), expected);
    r.symmetry_residual = check_polygon_symmetry(traj, ic.polygon_order, ic.sigma, 1, 0, grid);
    return r;
}

struct CentralConfiguration {
    std::vector<Vec2> points;
    MassVector masses;
    PotentialLaw law;
    double residual = 0.0;
    int iterations = 0;
};

namespace detail {

// r_j = a_j - sum_k m_k (a_j - a_k) / |a_j - a_k|^(alpha + 1)
inline Eigen::VectorXd central_residual(const std::vector<Vec2>& a, const MassVector& m, const PotentialLaw& law,
                                        double guard) {
    const std::size_t n = a.size();
    Eigen::VectorXd r(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec2 s = a[j];
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j || m[k] == 0.0) continue;
            const Vec2 d = a[j] - a[k];
            const double dist = norm(d);
            if (!(dist >= guard)) throw CollisionError(0.0, std::min(j, k), std::max(j, k), dist);
            s -= m[k] * law.force_factor(dist) * d;
        }
        r[2 * j] = s.x;
        r[2 * j + 1] = s.y;
    }
    return r;
}

// Rows: 2n force-balance residuals, then a_2y = 0, then the two components
// of sum m_j a_j = 0.
inline Eigen::VectorXd gauged_residual(const std::vector<Vec2>& a, const MassVector& m, const PotentialLaw& law,
                                       double guard) {
    const std::size_t n = a.size();
    Eigen::VectorXd r(2 * n + 3);
    r.head(2 * n) = central_residual(a, m, law, guard);
    r[2 * n] = a[1].y;
    Vec2 c;
    for (std::size_t j = 0; j < n; ++j) c += m[j] * a[j];
    r[2 * n + 1] = c.x;
    r[2 * n + 2] = c.y;
    return r;
}

inline Eigen::MatrixXd gauged_jacobian(const std::vector<Vec2>& a, const MassVector& m, const PotentialLaw& law) {
    const std::size_t n = a.size();
    const double alpha = law.alpha();
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(2 * n + 3), static_cast<Eigen::Index>(2 * n));
    for (std::size_t j = 0; j < n; ++j) {
        jac(2 * j, 2 * j) += 1.0;
        jac(2 * j + 1, 2 * j + 1) += 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j || m[k] == 0.0) continue;
            const Vec2 d = a[j] - a[k];
            const double dist = norm(d);
            const double f = law.force_factor(dist);
            const double g = (alpha + 1.0) / (dist * dist);
            // d/dd [d f(|d|)] = f (I - (alpha + 1) d d^T / |d|^2)
            const double gxx = f * (1.0 - g * d.x * d.x);
            const double gxy = -f * g * d.x * d.y;
            const double gyy = f * (1.0 - g * d.y * d.y);
            const double w = m[k];
            jac(2 * j, 2 * j) -= w * gxx;
            jac(2 * j, 2 * j + 1) -= w * gxy;
            jac(2 * j + 1, 2 * j) -= w * gxy;
            jac(2 * j + 1, 2 * j + 1) -= w * gyy;
            jac(2 * j, 2 * k) += w * gxx;
            jac(2 * j, 2 * k + 1) += w * gxy;
            jac(2 * j + 1, 2 * k) += w * gxy;
            jac(2 * j + 1, 2 * k + 1) += w * gyy;
        }
    }
    jac(2 * n, 3) = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        jac(2 * n + 1, 2 * j) = m[j];
        jac(2 * n + 2, 2 * j + 1) = m[j];
    }
    return jac;
}

}  // namespace detail

/// Max-norm residual of the central-configuration equations.
inline double central_configuration_residual(const std::vector<Vec2>& points, const MassVector& masses,
                                             const PotentialLaw& law) {
    detail::check_masses(points.size(), masses);
    return detail::central_residual(points, masses, law, 0.0).lpNorm<Eigen::Infinity>();
}

/// Solves a_j = sum_{k != j} m_k (a_j - a_k) / |a_j - a_k|^(alpha + 1) by
/// damped Gauss-Newton. Gauge: a_2 on the x-axis, weighted centroid at 0.
inline CentralConfiguration solve_central_configuration(std::vector<Vec2> guess, const MassVector& masses,
                                                        const PotentialLaw& law, double tol = 1e-12,
                                                        int max_iterations = 50) {
    const std::size_t n = guess.size();
    if (n < 2) throw DomainError("central configuration needs at least two points");
    detail::check_masses(n, masses);
    const double guard = kDefaultCollisionRadius;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            if (norm(guess[j] - guess[k]) < guard) throw CollisionError(0.0, j, k, norm(guess[j] - guess[k]));
        }
    }

    std::vector<Vec2> a = std::move(guess);
    Eigen::VectorXd r = detail::gauged_residual(a, masses, law, guard);
    double merit = r.norm();
    int it = 0;
    for (; it < max_iterations; ++it) {
        if (r.lpNorm<Eigen::Infinity>() <= 0.1 * tol) break;
        const Eigen::MatrixXd jac = detail::gauged_jacobian(a, masses, law);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(jac);
        if (qr.rank() < static_cast<Eigen::Index>(2 * n)) {
            throw SingularJacobianError("central-configuration Jacobian is rank deficient");
        }
        const Eigen::VectorXd step = qr.solve(-r);
        double lambda = 1.0;
        bool improved = false;
        for (int halving = 0; halving <= 20; ++halving, lambda *= 0.5) {
            std::vector<Vec2> trial = a;
            for (std::size_t j = 0; j < n; ++j) trial[j] += lambda * Vec2{step[2 * j], step[2 * j + 1]};
            Eigen::VectorXd rt;
            try {
                rt = detail::gauged_residual(trial, masses, law, guard);
            } catch (const CollisionError&) {
                continue;
            }
            if (rt.norm() < merit) {
                a = std::move(trial);
                r = std::move(rt);
                merit = r.norm();
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }

    CentralConfiguration cc{a, masses, law, r.head(2 * n).lpNorm<Eigen::Infinity>(), it};
    const double gauge = r.tail(3).lpNorm<Eigen::Infinity>();
    if (!(cc.residual <= tol) || !(gauge <= tol)) {
        throw ConvergenceError("central configuration did not converge (residual " + std::to_string(cc.residual) +
                               ")");
    }
    return cc;
}

/// Central mass 1 at the origin plus n - 1 unit masses on a regular polygon,
/// numbered counter-clockwise from the positive x-axis.
inline CentralConfiguration maxwell_configuration(int n, const PotentialLaw& law) {
    if (n < 3) throw DomainError("Maxwell configuration needs n >= 3");
    const int ring = n - 1;
    std::vector<Vec2> guess(static_cast<std::size_t>(n));
    // Ring radius from the radial force balance.
    double sum = 0.0;
    for (int k = 1; k < ring; ++k) sum += std::pow(std::sin(std::numbers::pi * k / ring), 1.0 - law.alpha());
    const double radius = std::pow(1.0 + std::pow(2.0, -law.alpha()) * sum, 1.0 / (law.alpha() + 1.0));
    for (int k = 0; k < ring; ++k) {
        const double angle = kTwoPi * k / ring;
        guess[static_cast<std::size_t>(k + 1)] = {radius * std::cos(angle), radius * std::sin(angle)};
    }
    return solve_central_configuration(std::move(guess), MassVector(std::vector<double>(static_cast<std::size_t>(n), 1.0)),
                                       law);
}

/// The ring rotation sigma = (2 3 ... n) used by the Maxwell symmetry check.
inline Permutation maxwell_ring_permutation(int n) {
    Permutation p = identity_permutation(static_cast<std::size_t>(n));
    for (int k = 1; k < n; ++k) p[static_cast<std::size_t>(k)] = static_cast<std::size_t>(k == n - 1 ? 1 : k + 1);
    return p;
}

/// Initial state of the relative equilibrium q_j(t) = e^{tJ} a_j.
inline SystemState relative_equilibrium_state(const CentralConfiguration& cc, double t0 = 0.0) {
    SystemState s;
    s.t = t0;
    const Mat2 rot = exp_j(t0);
    for (const Vec2& a : cc.points) {
        s.positions.push_back(rot * a);
        s.velocities.push_back(apply_j(rot * a));
    }
    return s;
}

/// Max-norm gap between the relative equilibrium and its direct integration after one turn.
inline double relative_equilibrium_closure(const CentralConfiguration& cc, const IntegratorConfig& config = {}) {
    const SystemState s0 = relative_equilibrium_state(cc);
    const Trajectory traj = propagate(cc.masses, cc.law, s0, kTwoPi, config);
    return state_distance(traj.final_state(), s0);
}

}  // namespace rbody
