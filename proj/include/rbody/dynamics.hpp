#pragma once

// Point-mass planar dynamics under the homogeneous force law
//   a_i = -sum_{j != i} m_j (q_i - q_j) / |q_i - q_j|^(alpha + 1).
// Bodies with zero mass feel every force but exert none, so the restricted
// problem is the full system with the satellite's mass set to zero.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "rbody/errors.hpp"
#include "rbody/vec2.hpp"

namespace rbody {

inline constexpr double kDefaultCollisionRadius = 1e-6;

/// Homogeneous potential phi_alpha; alpha = 2 is Newtonian gravity and
/// alpha = 1 the logarithmic potential.
class PotentialLaw {
public:
    constexpr PotentialLaw() = default;
    explicit PotentialLaw(double alpha) : alpha_(alpha) {
        if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
            throw DomainError("potential exponent must satisfy alpha >= 1");
        }
    }

    static PotentialLaw gravitational() { return PotentialLaw(2.0); }
    static PotentialLaw logarithmic() { return PotentialLaw(1.0); }

    constexpr double alpha() const { return alpha_; }
    constexpr bool is_logarithmic() const { return alpha_ == 1.0; }

    /// phi_alpha(lambda) = lambda^(1 - alpha) / (alpha - 1), or -log(lambda) at alpha = 1.
    double potential(double lambda) const {
        if (!(lambda > 0.0)) throw DomainError("potential kernel needs lambda > 0");
        if (is_logarithmic()) return -std::log(lambda);
        return std::pow(lambda, 1.0 - alpha_) / (alpha_ - 1.0);
    }

    /// lambda^-(alpha + 1), the factor multiplying the separation vector in the force.
    double force_factor(double lambda) const {
        if (alpha_ == 2.0) return 1.0 / (lambda * lambda * lambda);
        if (alpha_ == 1.0) return 1.0 / (lambda * lambda);
        return std::pow(lambda, -(alpha_ + 1.0));
    }

    /// Force of a unit mass at the origin on a point at d: -d / |d|^(alpha + 1).
    Vec2 pull(const Vec2& d) const { return -force_factor(norm(d)) * d; }

    friend constexpr bool operator==(const PotentialLaw&, const PotentialLaw&) = default;

private:
    double alpha_ = 2.0;
};

/// Returns phi_alpha(lambda).
inline double potential_value(double lambda, const PotentialLaw& law) { return law.potential(lambda); }

class MassVector {
public:
    MassVector() = default;
    MassVector(std::initializer_list<double> masses) : MassVector(std::vector<double>(masses)) {}
    explicit MassVector(std::vector<double> masses) : masses_(std::move(masses)) {
        bool any_positive = false;
        for (double m : masses_) {
            if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("masses must be finite and nonnegative");
            any_positive = any_positive || m > 0.0;
        }
        if (!any_positive) throw DomainError("at least one mass must be positive");
    }

    std::size_t size() const { return masses_.size(); }
    double operator[](std::size_t i) const { return masses_[i]; }
    std::span<const double> values() const { return masses_; }
    double total() const {
        double m = 0.0;
        for (double x : masses_) m += x;
        return m;
    }

private:
    std::vector<double> masses_;
};

/// Time plus planar positions and velocities of N bodies.
///
/// The flat layout used by the integrator is the one of u(t):
/// (q_1x, q_1y, ..., q_Nx, q_Ny, v_1x, v_1y, ..., v_Nx, v_Ny).
struct SystemState {
    double t = 0.0;
    std::vector<Vec2> positions;
    std::vector<Vec2> velocities;

    std::size_t size() const { return positions.size(); }

    void validate() const {
        if (positions.empty()) throw DomainError("state needs at least one body");
        if (positions.size() != velocities.size()) throw DomainError("positions and velocities differ in length");
        if (!std::isfinite(t)) throw DomainError("state time is not finite");
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if (!std::isfinite(positions[i].x) || !std::isfinite(positions[i].y) ||
                !std::isfinite(velocities[i].x) || !std::isfinite(velocities[i].y)) {
                throw DomainError("state has non-finite components");
            }
        }
    }

    std::vector<double> flat() const {
        const std::size_t n = size();
        std::vector<double> y(4 * n);
        for (std::size_t i = 0; i < n; ++i) {
            y[2 * i] = positions[i].x;
            y[2 * i + 1] = positions[i].y;
            y[2 * n + 2 * i] = velocities[i].x;
            y[2 * n + 2 * i + 1] = velocities[i].y;
        }
        return y;
    }

    static SystemState from_flat(double t, std::span<const double> y) {
        if (y.size() % 4 != 0) throw DomainError("flat state length must be a multiple of 4");
        const std::size_t n = y.size() / 4;
        SystemState s;
        s.t = t;
        s.positions.resize(n);
        s.velocities.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            s.positions[i] = {y[2 * i], y[2 * i + 1]};
            s.velocities[i] = {y[2 * n + 2 * i], y[2 * n + 2 * i + 1]};
        }
        return s;
    }
};

/// Max-norm distance between two states of equal size (time ignored).
inline double state_distance(const SystemState& a, const SystemState& b) {
    if (a.size() != b.size()) throw DomainError("states differ in body count");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max({d, max_abs(a.positions[i] - b.positions[i]), max_abs(a.velocities[i] - b.velocities[i])});
    }
    return d;
}

namespace detail {

inline void check_masses(std::size_t n, const MassVector& masses) {
    if (masses.size() != n) throw DomainError("mass vector length does not match the state");
}

// Writes accelerations for the positions packed as (x1, y1, x2, y2, ...).
// Summation runs over j in ascending order and skips massless sources, so
// appending massless bodies leaves the other accelerations bit-identical.
inline void accelerations_flat(double t, std::span<const double> q, std::span<double> acc,
                               const MassVector& masses, const PotentialLaw& law, double guard) {
    const std::size_t n = q.size() / 2;
    for (std::size_t i = 0; i < n; ++i) {
        double ax = 0.0;
        double ay = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || masses[j] == 0.0) continue;
            const double dx = q[2 * i] - q[2 * j];
            const double dy = q[2 * i + 1] - q[2 * j + 1];
            const double r = std::sqrt(dx * dx + dy * dy);
            if (!(r >= guard)) throw CollisionError(t, std::min(i, j), std::max(i, j), r);
            const double f = masses[j] * law.force_factor(r);
            ax -= f * dx;
            ay -= f * dy;
        }
        acc[2 * i] = ax;
        acc[2 * i + 1] = ay;
    }
}

}  // namespace detail

/// Accelerations of every body; throws CollisionError if an interacting pair
/// is closer than `guard`.
inline std::vector<Vec2> accelerations(const SystemState& state, const MassVector& masses, const PotentialLaw& law,
                                       double guard = kDefaultCollisionRadius) {
    detail::check_masses(state.size(), masses);
    const std::size_t n = state.size();
    std::vector<double> q(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        q[2 * i] = state.positions[i].x;
        q[2 * i + 1] = state.positions[i].y;
    }
    std::vector<double> acc(2 * n);
    detail::accelerations_flat(state.t, q, acc, masses, law, guard);
    std::vector<Vec2> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {acc[2 * i], acc[2 * i + 1]};
    return out;
}

struct ConservedQuantities {
    double energy = 0.0;
    double angular_momentum = 0.0;
    Vec2 linear_momentum;
    Vec2 center_of_mass;
};

/// First integrals of the massive subsystem; massless bodies are ignored.
inline ConservedQuantities conserved_quantities(const SystemState& state, const MassVector& masses,
                                                const PotentialLaw& law, double guard = kDefaultCollisionRadius) {
    detail::check_masses(state.size(), masses);
    ConservedQuantities c;
    double total = 0.0;
    const std::size_t n = state.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double m = masses[i];
        if (m == 0.0) continue;
        const Vec2& q = state.positions[i];
        const Vec2& v = state.velocities[i];
        c.energy += 0.5 * m * norm2(v);
        c.angular_momentum += m * cross(q, v);
        c.linear_momentum += m * v;
        c.center_of_mass += m * q;
        total += m;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (masses[j] == 0.0) continue;
            const double r = norm(q - state.positions[j]);
            if (!(r >= guard)) throw CollisionError(state.t, i, j, r);
            c.energy -= m * masses[j] * law.potential(r);
        }
    }
    c.center_of_mass = c.center_of_mass / total;
    return c;
}

/// Smallest separation over all pairs, massless bodies included.
inline double min_pairwise_distance(const SystemState& state) {
    if (state.size() < 2) throw DomainError("need at least two bodies");
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.size(); ++i) {
        for (std::size_t j = i + 1; j < state.size(); ++j) d = std::min(d, norm(state.positions[i] - state.positions[j]));
    }
    return d;
}

inline double min_pairwise_distance(const SystemState& state, const MassVector& masses) {
    detail::check_masses(state.size(), masses);
    return min_pairwise_distance(state);
}

/// Right-hand side u' = F(u) of the N-body system in the flat layout.
class NBodyField {
public:
    NBodyField(MassVector masses, PotentialLaw law, double guard = kDefaultCollisionRadius)
        : masses_(std::move(masses)), law_(law), guard_(guard) {}

    void operator()(double t, std::span<const double> y, std::span<double> dydt) const {
        const std::size_t n = masses_.size();
        if (y.size() != 4 * n) throw DomainError("state length does not match the mass vector");
        std::copy(y.begin() + 2 * n, y.end(), dydt.begin());
        detail::accelerations_flat(t, y.first(2 * n), dydt.subspan(2 * n), masses_, law_, guard_);
    }

    const MassVector& masses() const { return masses_; }
    const PotentialLaw& law() const { return law_; }
    double guard() const { return guard_; }

private:
    MassVector masses_;
    PotentialLaw law_;
    double guard_;
};

}  // namespace rbody
