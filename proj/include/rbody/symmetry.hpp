#pragma once

// Reversing symmetries of the (restricted) five-body problem as block maps
//   q_i -> P_i q_perm(i),   v_i -> V_i v_perm(i),   V_i = -P_i,
// and the reconstruction of a full orbit from a segment joining two fixed-point sets.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rbody/configs.hpp"
#include "rbody/dynamics.hpp"
#include "rbody/errors.hpp"
#include "rbody/integrate.hpp"
#include "rbody/vec2.hpp"

namespace rbody {

class LinearInvolution {
public:
    LinearInvolution(std::string name, Permutation perm, std::vector<Mat2> position_blocks,
                     std::vector<Mat2> velocity_blocks)
        : name_(std::move(name)), perm_(std::move(perm)), pos_(std::move(position_blocks)),
          vel_(std::move(velocity_blocks)) {
        const std::size_t n = perm_.size();
        if (n == 0 || pos_.size() != n || vel_.size() != n) throw DomainError("involution blocks do not match the body count");
        validate_permutation(perm_);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = perm_[i];
            if (perm_[j] != i) throw DomainError("permutation of an involution must square to the identity");
            if (!(pos_[i] * pos_[j] == Mat2::identity()) || !(vel_[i] * vel_[j] == Mat2::identity())) {
                throw DomainError("blocks do not compose to the identity");
            }
            if (!(pos_[i] * pos_[i].transpose() == Mat2::identity()) ||
                !(vel_[i] * vel_[i].transpose() == Mat2::identity())) {
                throw DomainError("involution blocks must be orthogonal");
            }
        }
    }

    /// Reversing map with V_i = -P_i.
    static LinearInvolution reversing(std::string name, Permutation perm, std::vector<Mat2> position_blocks) {
        std::vector<Mat2> vel;
        vel.reserve(position_blocks.size());
        for (const Mat2& p : position_blocks) vel.push_back(-p);
        return LinearInvolution(std::move(name), std::move(perm), std::move(position_blocks), std::move(vel));
    }

    const std::string& name() const { return name_; }
    std::size_t size() const { return perm_.size(); }
    const Permutation& permutation() const { return perm_; }
    const std::vector<Mat2>& position_blocks() const { return pos_; }
    const std::vector<Mat2>& velocity_blocks() const { return vel_; }

    SystemState apply(const SystemState& s) const {
        check_size(s.size());
        SystemState out = s;
        for (std::size_t i = 0; i < size(); ++i) {
            out.positions[i] = pos_[i] * s.positions[perm_[i]];
            out.velocities[i] = vel_[i] * s.velocities[perm_[i]];
        }
        return out;
    }

    /// Same action on a flat vector (positions block, then velocities block).
    std::vector<double> apply_flat(std::span<const double> y) const {
        const std::size_t n = size();
        if (y.size() != 4 * n) throw DomainError("flat state length does not match the involution");
        std::vector<double> out(y.size());
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = perm_[i];
            const Vec2 q = pos_[i] * Vec2{y[2 * j], y[2 * j + 1]};
            const Vec2 v = vel_[i] * Vec2{y[2 * n + 2 * j], y[2 * n + 2 * j + 1]};
            out[2 * i] = q.x;
            out[2 * i + 1] = q.y;
            out[2 * n + 2 * i] = v.x;
            out[2 * n + 2 * i + 1] = v.y;
        }
        return out;
    }

    /// Dense 4N x 4N integer matrix in the flat layout.
    Eigen::MatrixXi dense() const {
        const auto n = static_cast<Eigen::Index>(size());
        Eigen::MatrixXi m = Eigen::MatrixXi::Zero(4 * n, 4 * n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto j = static_cast<Eigen::Index>(perm_[static_cast<std::size_t>(i)]);
            const Mat2& p = pos_[static_cast<std::size_t>(i)];
            const Mat2& v = vel_[static_cast<std::size_t>(i)];
            m(2 * i, 2 * j) = static_cast<int>(p.a);
            m(2 * i, 2 * j + 1) = static_cast<int>(p.b);
            m(2 * i + 1, 2 * j) = static_cast<int>(p.c);
            m(2 * i + 1, 2 * j + 1) = static_cast<int>(p.d);
            m(2 * n + 2 * i, 2 * n + 2 * j) = static_cast<int>(v.a);
            m(2 * n + 2 * i, 2 * n + 2 * j + 1) = static_cast<int>(v.b);
            m(2 * n + 2 * i + 1, 2 * n + 2 * j) = static_cast<int>(v.c);
            m(2 * n + 2 * i + 1, 2 * n + 2 * j + 1) = static_cast<int>(v.d);
        }
        return m;
    }

    /// Restriction to the first `count` bodies, which must be closed under the permutation.
    LinearInvolution restricted(std::size_t count) const {
        if (count == 0 || count > size()) throw DomainError("invalid restriction size");
        Permutation p(perm_.begin(), perm_.begin() + static_cast<std::ptrdiff_t>(count));
        for (std::size_t v : p) {
            if (v >= count) throw DomainError("restriction is not closed under the permutation");
        }
        return LinearInvolution(name_ + "|" + std::to_string(count), std::move(p),
                                {pos_.begin(), pos_.begin() + static_cast<std::ptrdiff_t>(count)},
                                {vel_.begin(), vel_.begin() + static_cast<std::ptrdiff_t>(count)});
    }

    /// The action on the four primaries.
    LinearInvolution primaries() const { return restricted(4); }

private:
    void check_size(std::size_t n) const {
        if (n != size()) throw DomainError("state size does not match the involution");
    }

    std::string name_;
    Permutation perm_;
    std::vector<Mat2> pos_;
    std::vector<Mat2> vel_;
};

enum class InvolutionName { phi_1x, phi_1y, psi_1x, psi_1y, phi_2y, psi_2y };

inline std::string to_string(InvolutionName n) {
    switch (n) {
        case InvolutionName::phi_1x: return "Phi1x";
        case InvolutionName::phi_1y: return "Phi1y";
        case InvolutionName::psi_1x: return "Psi1x";
        case InvolutionName::psi_1y: return "Psi1y";
        case InvolutionName::phi_2y: return "Phi2y";
        case InvolutionName::psi_2y: return "Psi2y";
    }
    return "?";
}

/// Built-in reversing symmetries of the equal-mass four primaries plus a satellite.
///
/// Phi maps swap bodies 1<->2 and 3<->4, Psi maps fix every body; the x/y
/// suffix selects K or -K on the satellite. Phi2y and Psi2y negate every block
/// of Phi1x and Psi1x and are the maps whose fixed sets the primaries cross at
/// odd multiples of pi/2.
inline LinearInvolution build(InvolutionName name) {
    const Mat2 k = kK;
    const Mat2 mk = -kK;
    switch (name) {
        case InvolutionName::phi_1x:
            return LinearInvolution::reversing("Phi1x", {1, 0, 3, 2, 4}, {k, k, k, k, k});
        case InvolutionName::phi_1y:
            return LinearInvolution::reversing("Phi1y", {1, 0, 3, 2, 4}, {k, k, k, k, mk});
        case InvolutionName::psi_1x:
            return LinearInvolution::reversing("Psi1x", {0, 1, 2, 3, 4}, {k, mk, k, mk, k});
        case InvolutionName::psi_1y:
            return LinearInvolution::reversing("Psi1y", {0, 1, 2, 3, 4}, {k, mk, k, mk, mk});
        case InvolutionName::phi_2y:
            return LinearInvolution::reversing("Phi2y", {1, 0, 3, 2, 4}, {mk, mk, mk, mk, mk});
        case InvolutionName::psi_2y:
            return LinearInvolution::reversing("Psi2y", {0, 1, 2, 3, 4}, {mk, k, mk, k, mk});
    }
    throw DomainError("unknown involution");
}

inline InvolutionName parse_involution(const std::string& s) {
    for (auto n : {InvolutionName::phi_1x, InvolutionName::phi_1y, InvolutionName::psi_1x, InvolutionName::psi_1y,
                   InvolutionName::phi_2y, InvolutionName::psi_2y}) {
        if (to_string(n) == s) return n;
    }
    throw ValidationError("unknown involution '" + s + "'");
}

/// ||u - R u||_inf; zero exactly on Fix(R).
inline double fixed_point_residual(const SystemState& state, const LinearInvolution& r) {
    return state_distance(state, r.apply(state));
}

inline double fixed_point_residual(std::span<const double> y, const LinearInvolution& r) {
    const auto ry = r.apply_flat(y);
    double d = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) d = std::max(d, std::fabs(y[i] - ry[i]));
    return d;
}

/// Random collision-free states with positions in [-2, 2]^2 and velocities in [-1, 1]^2.
inline std::vector<SystemState> random_trial_states(std::size_t count, std::size_t bodies, std::uint64_t seed,
                                                    double min_separation = 0.1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(-2.0, 2.0);
    std::uniform_real_distribution<double> vel(-1.0, 1.0);
    std::vector<SystemState> out;
    out.reserve(count);
    while (out.size() < count) {
        SystemState s;
        for (std::size_t i = 0; i < bodies; ++i) {
            s.positions.push_back({pos(rng), pos(rng)});
            s.velocities.push_back({vel(rng), vel(rng)});
        }
        if (bodies < 2 || min_pairwise_distance(s) >= min_separation) out.push_back(std::move(s));
    }
    return out;
}

/// Random restricted five-body states whose primaries have the point symmetry
/// of the super-eight (q3 = -q1, q4 = -q2, v3 = -v1, v4 = -v2); the satellite is free.
/// The mixed K / -K maps are reversing only on this invariant subspace.
inline std::vector<SystemState> random_restricted_states(std::size_t count, std::uint64_t seed,
                                                         double min_separation = 0.1) {
    std::vector<SystemState> out = random_trial_states(count, 5, seed, min_separation);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> pos(-2.0, 2.0);
    std::uniform_real_distribution<double> vel(-1.0, 1.0);
    for (SystemState& s : out) {
        for (;;) {
            s.positions[2] = -s.positions[0];
            s.positions[3] = -s.positions[1];
            s.velocities[2] = -s.velocities[0];
            s.velocities[3] = -s.velocities[1];
            if (min_pairwise_distance(s) >= min_separation) break;
            s.positions[0] = {pos(rng), pos(rng)};
            s.positions[1] = {pos(rng), pos(rng)};
            s.velocities[0] = {vel(rng), vel(rng)};
            s.velocities[1] = {vel(rng), vel(rng)};
        }
    }
    return out;
}

/// max over trials of ||R F(u) + F(R u)||_inf; zero certifies that R reverses the flow.
inline double reversing_check(const LinearInvolution& r, const PotentialLaw& law, std::span<const SystemState> trials,
                              const MassVector& masses = MassVector{1.0, 1.0, 1.0, 1.0, 0.0}) {
    const NBodyField field(masses, law);
    double worst = 0.0;
    std::vector<double> f(4 * masses.size());
    std::vector<double> g(4 * masses.size());
    for (const SystemState& u : trials) {
        const auto y = u.flat();
        field(u.t, y, f);
        const auto ry = r.apply_flat(y);
        field(u.t, ry, g);
        const auto rf = r.apply_flat(f);
        for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::fabs(rf[i] + g[i]));
    }
    return worst;
}

/// Smallest M <= max_order with (R_hat R)^M = id, computed on the dense integer matrices.
inline std::optional<int> compose_order(const LinearInvolution& r, const LinearInvolution& r_hat, int max_order) {
    if (r.size() != r_hat.size()) throw DomainError("involutions act on different body counts");
    const Eigen::MatrixXi g = r_hat.dense() * r.dense();
    const Eigen::MatrixXi id = Eigen::MatrixXi::Identity(g.rows(), g.cols());
    Eigen::MatrixXi power = g;
    for (int m = 1; m <= max_order; ++m) {
        if (power == id) return m;
        power = g * power;
    }
    return std::nullopt;
}

/// All reversing maps of the form P_i in {K, -K}, V_i = -P_i, whose permutation
/// exchanges only the first `movable` bodies (equal masses), ordered by how well they fix `y`.
inline std::optional<LinearInvolution> find_fixing_involution(std::span<const double> y, std::size_t movable,
                                                              double tol) {
    if (y.size() % 4 != 0) throw DomainError("flat state length must be a multiple of 4");
    const std::size_t n = y.size() / 4;
    if (movable > n) throw DomainError("movable body count exceeds the state size");

    std::vector<Permutation> perms;
    std::function<void(Permutation&, std::size_t)> rec = [&](Permutation& p, std::size_t i) {
        if (i == movable) {
            perms.push_back(p);
            return;
        }
        if (p[i] != i) {
            rec(p, i + 1);
            return;
        }
        rec(p, i + 1);
        for (std::size_t j = i + 1; j < movable; ++j) {
            if (p[j] != j) continue;
            p[i] = j;
            p[j] = i;
            rec(p, i + 1);
            p[i] = i;
            p[j] = j;
        }
    };
    Permutation base = identity_permutation(n);
    rec(base, 0);

    std::optional<LinearInvolution> best;
    double best_residual = tol;
    for (const Permutation& perm : perms) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<Mat2> blocks(n);
            bool consistent = true;
            for (std::size_t i = 0; i < n; ++i) {
                const bool neg = (mask >> i) & 1u;
                const bool neg_partner = (mask >> perm[i]) & 1u;
                if (neg != neg_partner) consistent = false;
                blocks[i] = neg ? -kK : kK;
            }
            if (!consistent) continue;
            auto cand = LinearInvolution::reversing("detected", perm, blocks);
            const double res = fixed_point_residual(y, cand);
            if (res <= best_residual) {
                best_residual = res;
                best = std::move(cand);
            }
        }
    }
    return best;
}

/// Full orbit assembled from a segment u on [t0, t0 + T0] with u(t0) in Fix(R)
/// and u(t0 + T0) in Fix(R_hat):
///   u(t0 + 2k T0 + s) = (R_hat R)^k u(t0 + s),  u(t0 + s) = R_hat u(t0 + 2 T0 - s).
class SymmetricOrbit {
public:
    SymmetricOrbit(Trajectory half, LinearInvolution r, LinearInvolution r_hat, int order)
        : half_(std::move(half)), r_(std::move(r)), r_hat_(std::move(r_hat)), order_(order) {}

    double start_time() const { return half_.start_time(); }
    double half_period() const { return half_.end_time() - half_.start_time(); }
    double period() const { return 2.0 * order_ * half_period(); }
    double end_time() const { return start_time() + period(); }
    int order() const { return order_; }
    const Trajectory& segment() const { return half_; }
    const LinearInvolution& start_involution() const { return r_; }
    const LinearInvolution& end_involution() const { return r_hat_; }

    /// Valid for every real t; the orbit is periodic.
    std::vector<double> flat_at(double t) const {
        const double t0 = half_period();
        const double rel = t - start_time();
        double k = std::floor(rel / (2.0 * t0));
        double s = rel - 2.0 * t0 * k;
        if (s < 0.0) s = 0.0;
        std::vector<double> u;
        if (s <= t0) {
            u = half_.flat_at(start_time() + s);
        } else {
            u = r_hat_.apply_flat(half_.flat_at(start_time() + std::max(0.0, 2.0 * t0 - s)));
        }
        long steps = static_cast<long>(k) % order_;
        if (steps < 0) steps += order_;
        for (long i = 0; i < steps; ++i) u = r_hat_.apply_flat(r_.apply_flat(u));
        return u;
    }

    SystemState state_at(double t) const { return SystemState::from_flat(t, flat_at(t)); }

private:
    Trajectory half_;
    LinearInvolution r_;
    LinearInvolution r_hat_;
    int order_;
};

inline SystemState sample(const SymmetricOrbit& orbit, double t) { return orbit.state_at(t); }

/// Checks the endpoint fixed-point conditions and assembles the full period 2 M T0.
inline SymmetricOrbit extend_orbit(Trajectory half, const LinearInvolution& r, const LinearInvolution& r_hat,
                                   double tol = 1e-9, int max_order = 64) {
    if (!half.has_dense_output()) throw DomainError("segment needs dense output");
    if (!(half.end_time() > half.start_time())) throw DomainError("segment must run forward in time");
    const double res0 = fixed_point_residual(half.stored_state(0), r);
    if (res0 > tol) throw NotFixedError("segment start is not fixed by " + r.name(), res0);
    const double res1 = fixed_point_residual(half.final_flat(), r_hat);
    if (res1 > tol) throw NotFixedError("segment end is not fixed by " + r_hat.name(), res1);
    const auto order = compose_order(r, r_hat, max_order);
    if (!order) throw DomainError("composition of the involutions has no finite order");
    return SymmetricOrbit(std::move(half), r, r_hat, *order);
}

}  // namespace rbody
