#pragma once

// Two-unknown shooting for symmetric satellite orbits of the restricted
// 5-body problem with super-eight primaries.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "rbody/configs.hpp"
#include "rbody/dynamics.hpp"
#include "rbody/ephemeris.hpp"
#include "rbody/errors.hpp"
#include "rbody/frames.hpp"
#include "rbody/integrate.hpp"
#include "rbody/symmetry.hpp"

namespace rbody {

inline constexpr std::size_t kSatellite = 4;

/// Components forced to zero at t = T0: (q5y, v5x) or (q5x, v5y).
enum class TargetCrossing { x_perpendicular, y_perpendicular };

inline std::string to_string(TargetCrossing t) {
    return t == TargetCrossing::x_perpendicular ? "x-perp" : "y-perp";
}

inline TargetCrossing parse_target(const std::string& s) {
    if (s == "x-perp" || s == "x") return TargetCrossing::x_perpendicular;
    if (s == "y-perp" || s == "y") return TargetCrossing::y_perpendicular;
    throw ValidationError("unknown target crossing '" + s + "'");
}

/// Which reversible combination a half-period belongs to: T0 = 4m pi/4 or (4m + 2) pi/4.
enum class SymmetryCombination { first, second, other };

inline std::string to_string(SymmetryCombination c) {
    switch (c) {
        case SymmetryCombination::first: return "first";
        case SymmetryCombination::second: return "second";
        case SymmetryCombination::other: return "other";
    }
    return "?";
}

struct ShootingProblem {
    ChoreographyFamily family = ChoreographyFamily::isosceles;
    int quarter_count = 8;  // T0 = quarter_count * pi / 4
    TargetCrossing target = TargetCrossing::y_perpendicular;
    IntegratorConfig integrator{};

    double t0() const { return quarter_count * kQuarterPeriod; }
    double period() const { return 4.0 * t0(); }

    SymmetryCombination combination() const {
        if (quarter_count % 4 == 0) return SymmetryCombination::first;
        if (quarter_count % 4 == 2) return SymmetryCombination::second;
        return SymmetryCombination::other;
    }

    void validate() const {
        if (quarter_count < 1) throw ValidationError("T0 must be a positive multiple of pi/4");
        integrator.validate();
    }
};

/// Converts a half-period to its count of pi/4 units; rejects values off that lattice.
inline int quarter_count_of(double t0) {
    const double k = std::round(t0 / kQuarterPeriod);
    if (!(t0 > 0.0) || k < 1.0 || std::fabs(t0 - k * kQuarterPeriod) > 1e-9 * std::max(1.0, t0)) {
        throw ValidationError("T0 must be a positive multiple of pi/4");
    }
    return static_cast<int>(k);
}

inline LinearInvolution family_involution(ChoreographyFamily family) {
    return build(family == ChoreographyFamily::isosceles ? InvolutionName::phi_1x : InvolutionName::psi_1x);
}

/// Primaries at t = 0 plus the satellite (a, 0) with velocity (0, b).
inline SystemState shooting_initial_state(ChoreographyFamily family, double a, double b) {
    SystemState s = (family == ChoreographyFamily::isosceles ? super_eight_isosceles() : super_eight_orthogonal()).state;
    s.positions.push_back({a, 0.0});
    s.velocities.push_back({0.0, b});
    return s;
}

inline MassVector restricted_masses() { return MassVector{1.0, 1.0, 1.0, 1.0, 0.0}; }

struct ResidualEvaluation {
    Eigen::Vector2d value;
    double gamma = 0.0;  // free components at T0, logged only
    double delta = 0.0;
};

namespace detail {

// Satellite (q, v) at T0 in 4-vector form -> constrained and free components.
inline ResidualEvaluation split_target(const Vec2& q, const Vec2& v, TargetCrossing target) {
    if (target == TargetCrossing::x_perpendicular) return {Eigen::Vector2d(q.y, v.x), q.x, v.y};
    return {Eigen::Vector2d(q.x, v.y), q.y, v.x};
}

}  // namespace detail

/// Integrates the full 5-body system with a massless fifth body to T0.
inline ResidualEvaluation evaluate_residual(const ShootingProblem& problem, double a, double b) {
    IntegratorConfig cfg = problem.integrator;
    cfg.dense = false;
    const SystemState s0 = shooting_initial_state(problem.family, a, b);
    const Trajectory traj = propagate(restricted_masses(), PotentialLaw::gravitational(), s0, problem.t0(), cfg);
    const SystemState end = traj.final_state();
    return detail::split_target(end.positions[kSatellite], end.velocities[kSatellite], problem.target);
}

inline Eigen::Vector2d residual(const ShootingProblem& problem, double a, double b) {
    return evaluate_residual(problem, a, b).value;
}

struct NewtonConfig {
    double tolerance = 1e-10;
    int max_iterations = 20;
    int max_halvings = 15;
    double min_step = 1e-14;
    double fd_step = 1e-7;
    double central_switch = 1e-6;  // central differences once ||r|| drops below this

    void validate() const {
        if (!(tolerance > 0.0) || !(fd_step > 0.0) || !(min_step > 0.0) || !(central_switch > 0.0)) {
            throw ValidationError("Newton tolerances must be positive");
        }
        if (max_iterations < 1 || max_halvings < 0) throw ValidationError("Newton iteration limits must be positive");
    }
};

struct NewtonResult {
    Eigen::Vector2d x;
    double residual_norm = 0.0;
    int iterations = 0;
    std::vector<double> history;  // ||r|| per iterate, starting at the guess
};

using ResidualFunction = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

/// Damped Newton with a finite-difference Jacobian and a monotone halving line search.
inline NewtonResult newton_solve(const ResidualFunction& f, Eigen::Vector2d x, const NewtonConfig& cfg) {
    cfg.validate();
    NewtonResult out;
    Eigen::Vector2d r = f(x);
    if (!r.allFinite()) throw ConvergenceError("residual is not finite at the initial guess");
    double rn = r.norm();
    out.history.push_back(rn);

    for (int it = 0; it < cfg.max_iterations; ++it) {
        if (rn <= cfg.tolerance) break;
        Eigen::Matrix2d jac;
        const bool central = rn < cfg.central_switch;
        for (int k = 0; k < 2; ++k) {
            const double h = cfg.fd_step * std::max(1.0, std::fabs(x[k]));
            Eigen::Vector2d xp = x;
            xp[k] += h;
            if (central) {
                Eigen::Vector2d xm = x;
                xm[k] -= h;
                jac.col(k) = (f(xp) - f(xm)) / (2.0 * h);
            } else {
                jac.col(k) = (f(xp) - r) / h;
            }
        }
        const double det = jac.determinant();
        if (!std::isfinite(det) || std::fabs(det) <= 1e-14 * jac.squaredNorm()) {
            throw SingularJacobianError("shooting Jacobian is singular");
        }
        const Eigen::Vector2d step = -jac.partialPivLu().solve(r);

        double lambda = 1.0;
        bool accepted = false;
        for (int h = 0; h <= cfg.max_halvings; ++h, lambda *= 0.5) {
            if (lambda * step.norm() < cfg.min_step) break;
            const Eigen::Vector2d trial = x + lambda * step;
            Eigen::Vector2d rt;
            try {
                rt = f(trial);
            } catch (const CollisionError&) {
                continue;
            }
            if (rt.allFinite() && rt.norm() < rn) {
                x = trial;
                r = rt;
                rn = rt.norm();
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            throw ConvergenceError("line search failed at ||r|| = " + std::to_string(rn));
        }
        out.iterations = it + 1;
        out.history.push_back(rn);
    }
    if (!(rn <= cfg.tolerance)) {
        throw ConvergenceError("no convergence after " + std::to_string(cfg.max_iterations) +
                               " iterations, ||r|| = " + std::to_string(rn));
    }
    out.x = x;
    out.residual_norm = rn;
    return out;
}

enum class OrbitClass { comet, moon, other };

inline std::string to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::comet: return "comet";
        case OrbitClass::moon: return "moon";
        case OrbitClass::other: return "other";
    }
    return "?";
}

inline OrbitClass parse_orbit_class(const std::string& s) {
    for (auto c : {OrbitClass::comet, OrbitClass::moon, OrbitClass::other}) {
        if (to_string(c) == s) return c;
    }
    throw ValidationError("unknown orbit class '" + s + "'");
}

/// Sampled geometry of a full period, kept on the record for re-classification.
struct OrbitGeometry {
    double min_primary_distance = 0.0;     // min over t and j of |q5 - qj|
    double min_center_distance = 0.0;      // min over t of |q5|, the centre of mass being the origin
    double mean_radius = 0.0;              // mean over t of |q5|
    double primary_extent = 0.0;           // max over t and j of |qj|
    double min_inter_primary = 0.0;        // min over t of min |qi - qj|
    std::vector<double> max_distance_to;   // max over t of |q5 - qj|, per primary
    double comet_factor = 2.0;
    double moon_factor = 0.5;
};

struct OrbitRecord {
    ShootingProblem problem;
    double a = 0.0;
    double b = 0.0;
    double residual_norm = 0.0;
    int iterations = 0;
    std::vector<double> residual_history;
    double gamma = 0.0;
    double delta = 0.0;
    double period = 0.0;
    double closure_residual = std::numeric_limits<double>::quiet_NaN();
    double symmetry_residual = std::numeric_limits<double>::quiet_NaN();
    std::string end_involution;
    OrbitClass classification = OrbitClass::other;
    OrbitGeometry geometry;
    std::vector<std::string> notes;

    double min_primary_distance() const { return geometry.min_primary_distance; }
    double mean_radius() const { return geometry.mean_radius; }
};

/// Comet: the satellite never comes closer to the centre than comet_factor times the
/// primaries' extent. Moon: it stays within moon_factor times the closest primary
/// approach of one fixed primary.
inline OrbitClass classify(const OrbitGeometry& g) {
    if (g.min_center_distance > g.comet_factor * g.primary_extent) return OrbitClass::comet;
    const double radius = g.moon_factor * g.min_inter_primary;
    for (double d : g.max_distance_to) {
        if (d < radius) return OrbitClass::moon;
    }
    return OrbitClass::other;
}

inline OrbitClass classify(const OrbitRecord& record) { return classify(record.geometry); }

struct VerificationConfig {
    int symmetry_grid = 64;
    int geometry_samples = 2048;
    double fixed_tolerance = 1e-8;
};

namespace detail {

inline std::vector<double> join_state(const SystemState& primaries, std::span<const double> satellite) {
    SystemState s = primaries;
    s.positions.push_back({satellite[0], satellite[1]});
    s.velocities.push_back({satellite[2], satellite[3]});
    return s.flat();
}

inline double max_diff(std::span<const double> x, std::span<const double> y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::fabs(x[i] - y[i]));
    return d;
}

inline double wrap_time(double t, double period) {
    double w = std::fmod(t, period);
    if (w < 0.0) w += period;
    return w;
}

inline Eigen::Vector2d restricted_residual(const RestrictedField<ChoreographyEphemeris>& field,
                                           const ShootingProblem& problem, double a, double b) {
    IntegratorConfig cfg = problem.integrator;
    cfg.dense = false;
    const std::vector<double> y0{a, 0.0, 0.0, b};
    const Trajectory traj = propagate_flat(field, y0, 0.0, problem.t0(), cfg);
    const auto y = traj.final_flat();
    return split_target({y[0], y[1]}, {y[2], y[3]}, problem.target).value;
}

}  // namespace detail

/// Full period of a converged orbit in the exactly periodic primary model:
/// (a, b) re-polished against the symmetric super-eight ephemeris, then the
/// satellite integrated densely over 4 T0.
class ReconstructedOrbit {
public:
    ReconstructedOrbit(const ShootingProblem& problem, double a, double b, const NewtonConfig& newton = {})
        : problem_(problem), field_(make_field(problem)) {
        const NewtonResult polished = newton_solve(
            [&](const Eigen::Vector2d& x) { return detail::restricted_residual(field_, problem_, x[0], x[1]); },
            Eigen::Vector2d(a, b), newton);
        a_ = polished.x[0];
        b_ = polished.x[1];
        IntegratorConfig cfg = problem_.integrator;
        cfg.dense = true;
        satellite_.emplace(propagate_flat(field_, initial(), 0.0, period(), cfg));
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double period() const { return problem_.period(); }
    std::vector<double> initial() const { return {a_, 0.0, 0.0, b_}; }
    const ChoreographyEphemeris& ephemeris() const { return field_.ephemeris(); }
    const Trajectory& satellite() const { return *satellite_; }

    /// Satellite (q, v) at any t, by periodicity.
    std::vector<double> satellite_at(double t) const { return satellite_->flat_at(detail::wrap_time(t, period())); }

    /// Five-body flat state, satellite last.
    std::vector<double> full_state(double t) const {
        const double w = detail::wrap_time(t, period());
        return detail::join_state(ephemeris().state(w), satellite_->flat_at(w));
    }

    double closure_residual() const { return detail::max_diff(satellite_->final_flat(), initial()); }

private:
    static RestrictedField<ChoreographyEphemeris> make_field(const ShootingProblem& pb) {
        IntegratorConfig cfg = pb.integrator;
        cfg.dense = true;
        return {ChoreographyEphemeris(pb.family, cfg), MassVector{1.0, 1.0, 1.0, 1.0}, PotentialLaw::gravitational(),
                cfg.collision_radius};
    }

    ShootingProblem problem_;
    RestrictedField<ChoreographyEphemeris> field_;
    double a_ = 0.0;
    double b_ = 0.0;
    std::optional<Trajectory> satellite_;
};

/// Closure, the symmetry relations u(t) = R u(-t) and u(t) = R_hat u(2 T0 - t),
/// and the sampled geometry, all in the reconstructed model.
inline void verify_record(OrbitRecord& rec, const NewtonConfig& newton = {}, const VerificationConfig& vc = {}) {
    const ShootingProblem& pb = rec.problem;
    const ReconstructedOrbit orbit(pb, rec.a, rec.b, newton);
    std::ostringstream note;
    note << std::scientific << std::setprecision(2)
         << "verification model (a, b) shift: " << std::hypot(orbit.a() - rec.a, orbit.b() - rec.b);
    rec.notes.push_back(note.str());
    rec.closure_residual = orbit.closure_residual();
    const double period = pb.period();
    auto full_state = [&](double t) { return orbit.full_state(t); };
    const ChoreographyEphemeris& eph = orbit.ephemeris();

    const LinearInvolution r = family_involution(pb.family);
    const auto end = full_state(pb.t0());
    std::optional<LinearInvolution> r_hat;
    for (auto n : {InvolutionName::phi_1x, InvolutionName::phi_1y, InvolutionName::psi_1x, InvolutionName::psi_1y,
                   InvolutionName::phi_2y, InvolutionName::psi_2y}) {
        if (!r_hat && fixed_point_residual(end, build(n)) <= vc.fixed_tolerance) r_hat = build(n);
    }
    if (!r_hat) r_hat = find_fixing_involution(end, 4, vc.fixed_tolerance);
    if (!r_hat) throw NotFixedError("orbit endpoint lies in no fixed set", 1.0);
    rec.end_involution = r_hat->name();

    double sym = 0.0;
    for (int k = 0; k < vc.symmetry_grid; ++k) {
        const double t = period * k / vc.symmetry_grid;
        const auto u = full_state(t);
        sym = std::max(sym, detail::max_diff(u, r.apply_flat(full_state(-t))));
        sym = std::max(sym, detail::max_diff(u, r_hat->apply_flat(full_state(2.0 * pb.t0() - t))));
    }
    rec.symmetry_residual = sym;

    OrbitGeometry g;
    g.min_primary_distance = std::numeric_limits<double>::infinity();
    g.min_center_distance = std::numeric_limits<double>::infinity();
    g.min_inter_primary = std::numeric_limits<double>::infinity();
    g.max_distance_to.assign(4, 0.0);
    double radius_sum = 0.0;
    for (int k = 0; k < vc.geometry_samples; ++k) {
        const double t = period * k / vc.geometry_samples;
        const std::vector<Vec2> prim = eph(t);
        const auto y = orbit.satellite_at(t);
        const Vec2 q{y[0], y[1]};
        g.min_center_distance = std::min(g.min_center_distance, norm(q));
        radius_sum += norm(q);
        for (std::size_t j = 0; j < prim.size(); ++j) {
            const double d = norm(q - prim[j]);
            g.min_primary_distance = std::min(g.min_primary_distance, d);
            g.max_distance_to[j] = std::max(g.max_distance_to[j], d);
            g.primary_extent = std::max(g.primary_extent, norm(prim[j]));
            for (std::size_t i = j + 1; i < prim.size(); ++i) {
                g.min_inter_primary = std::min(g.min_inter_primary, norm(prim[i] - prim[j]));
            }
        }
    }
    g.mean_radius = radius_sum / vc.geometry_samples;
    rec.geometry = g;
    rec.classification = classify(g);
}

/// Newton solve from `guess` followed by the full-period verification.
inline OrbitRecord solve(const ShootingProblem& problem, Eigen::Vector2d guess, const NewtonConfig& newton = {},
                         const VerificationConfig& vc = {}) {
    problem.validate();
    const NewtonResult nr = newton_solve(
        [&](const Eigen::Vector2d& x) { return residual(problem, x[0], x[1]); }, guess, newton);
    OrbitRecord rec;
    rec.problem = problem;
    rec.a = nr.x[0];
    rec.b = nr.x[1];
    rec.residual_norm = nr.residual_norm;
    rec.iterations = nr.iterations;
    rec.residual_history = nr.history;
    const ResidualEvaluation ev = evaluate_residual(problem, rec.a, rec.b);
    rec.gamma = ev.gamma;
    rec.delta = ev.delta;
    rec.period = problem.period();
    rec.notes.push_back("symmetry combination: " + to_string(problem.combination()));
    verify_record(rec, newton, vc);
    return rec;
}

/// Relative circular orbit about body 1 that winds this many times per full period.
inline constexpr int kMoonWindings = 39;

/// Kepler circle about the total primary mass (comets) or about body 1 (moons).
inline Eigen::Vector2d kepler_guess(const ShootingProblem& problem, OrbitClass kind) {
    const PotentialLaw law = PotentialLaw::gravitational();
    if (kind == OrbitClass::moon) {
        const ChoreographyIC ic =
            problem.family == ChoreographyFamily::isosceles ? super_eight_isosceles() : super_eight_orthogonal();
        const Vec2 q1 = ic.state.positions[0];
        const Vec2 v1 = ic.state.velocities[0];
        if (std::fabs(q1.y) > 1e-12 || std::fabs(v1.x) > 1e-12) {
            throw DomainError("moon seed needs body 1 on the x-axis moving vertically");
        }
        const CircularSeed s = moon_seed(problem.t0(), 1.0, kMoonWindings, law);
        return {q1.x + s.radius, v1.y + s.speed};
    }
    const CircularSeed s = comet_seed(problem.t0(), 4.0, law);
    return {s.radius, s.speed};
}

struct Table1Row {
    int index = 0;
    ChoreographyFamily family = ChoreographyFamily::isosceles;
    int quarter_count = 0;
    OrbitClass kind = OrbitClass::comet;
    double a = 0.0;
    double b = 0.0;
};

inline const std::vector<Table1Row>& table1_rows() {
    static const std::vector<Table1Row> rows{
        {1, ChoreographyFamily::isosceles, 8, OrbitClass::comet, 4.116104103490420, 1.044999754887220},
        {2, ChoreographyFamily::isosceles, 10, OrbitClass::comet, 4.742060123223827, 0.958945634262276},
        {3, ChoreographyFamily::isosceles, 12, OrbitClass::comet, 5.330615961036938, 0.896037359621114},
        {4, ChoreographyFamily::isosceles, 14, OrbitClass::comet, 5.889293694917488, 0.847128753375993},
        {5, ChoreographyFamily::isosceles, 16, OrbitClass::comet, 6.423300718815878, 0.807515201172657},
        {6, ChoreographyFamily::orthogonal, 2, OrbitClass::moon, 1.469992697921058, 3.966907060848269},
    };
    return rows;
}

inline ShootingProblem table1_problem(const Table1Row& row, const IntegratorConfig& integrator = {}) {
    return {row.family, row.quarter_count, TargetCrossing::y_perpendicular, integrator};
}

struct Table1Result {
    Table1Row row;
    Eigen::Vector2d seed;
    std::optional<OrbitRecord> record;
    std::string failure;
    double error = std::numeric_limits<double>::infinity();  // max(|a - a_pub|, |b - b_pub|)
    double seconds = 0.0;

    bool matches(double tol) const { return record.has_value() && error <= tol; }
};

struct Table1Config {
    IntegratorConfig integrator{};
    NewtonConfig newton{};
    VerificationConfig verification{};
    std::vector<int> rows{1, 2, 3, 4, 5, 6};
};

/// Solves the selected rows from their analytic seeds; a failing row does not stop the run.
inline std::vector<Table1Result> reproduce_table1(const Table1Config& config = {}) {
    std::vector<Table1Result> out;
    for (int index : config.rows) {
        const auto& rows = table1_rows();
        const auto it = std::find_if(rows.begin(), rows.end(), [&](const Table1Row& r) { return r.index == index; });
        if (it == rows.end()) throw ValidationError("Table 1 has rows 1 to 6");
        Table1Result res;
        res.row = *it;
        const ShootingProblem problem = table1_problem(*it, config.integrator);
        res.seed = kepler_guess(problem, it->kind);
        const auto start = std::chrono::steady_clock::now();
        try {
            OrbitRecord rec = solve(problem, res.seed, config.newton, config.verification);
            res.error = std::max(std::fabs(rec.a - it->a), std::fabs(rec.b - it->b));
            res.record = std::move(rec);
        } catch (const Error& e) {
            res.failure = e.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(res));
    }
    return out;
}

enum class SeedStrategy { kepler, warm_start };

struct SweepItem {
    int quarter_count = 0;
    Eigen::Vector2d seed;
    std::optional<OrbitRecord> record;
    std::string failure;
};

/// Solves each T0 in increasing order. Warm starts rescale the previous solution by the
/// Kepler law a ~ T^(2/3), b ~ T^(-1/3); the first item and items after a failure use the Kepler guess.
inline std::vector<SweepItem> sweep(std::vector<int> quarter_counts, SeedStrategy seeding, ChoreographyFamily family,
                                    TargetCrossing target, OrbitClass kind = OrbitClass::comet,
                                    const IntegratorConfig& integrator = {}, const NewtonConfig& newton = {},
                                    const VerificationConfig& vc = {}) {
    std::sort(quarter_counts.begin(), quarter_counts.end());
    quarter_counts.erase(std::unique(quarter_counts.begin(), quarter_counts.end()), quarter_counts.end());
    std::vector<SweepItem> out;
    std::optional<OrbitRecord> previous;
    for (int k : quarter_counts) {
        const ShootingProblem problem{family, k, target, integrator};
        SweepItem item;
        item.quarter_count = k;
        try {
            problem.validate();
            item.seed = kepler_guess(problem, kind);
            if (seeding == SeedStrategy::warm_start && previous) {
                const double ratio = static_cast<double>(k) / previous->problem.quarter_count;
                item.seed = {previous->a * std::pow(ratio, 2.0 / 3.0), previous->b * std::pow(ratio, -1.0 / 3.0)};
            }
            item.record = solve(problem, item.seed, newton, vc);
        } catch (const Error& e) {
            item.failure = e.what();
        }
        previous = item.record;
        out.push_back(std::move(item));
    }
    return out;
}

/// Largest relative deviation of mean_radius / period^(2/3) from its average over the comet records.
inline double kepler_scaling_deviation(std::span<const OrbitRecord> records) {
    std::vector<double> ratios;
    for (const OrbitRecord& r : records) {
        if (r.classification == OrbitClass::comet) ratios.push_back(r.mean_radius() / std::pow(r.period, 2.0 / 3.0));
    }
    if (ratios.size() < 2) throw DomainError("scaling check needs at least two comet records");
    double mean = 0.0;
    for (double x : ratios) mean += x;
    mean /= static_cast<double>(ratios.size());
    double dev = 0.0;
    for (double x : ratios) dev = std::max(dev, std::fabs(x - mean) / mean);
    return dev;
}

}  // namespace rbody
