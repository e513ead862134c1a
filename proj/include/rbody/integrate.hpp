#pragma once

// Adaptive Dormand-Prince 8(5,3) propagation with 7th-order dense output.
// Step-size control mirrors the classic DOP853 driver: mixed 5th/3rd-order
// error estimate in an RMS norm, safety 0.9, growth clamped to [0.2, 10].

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "rbody/detail/dop853_tableau.hpp"
#include "rbody/dynamics.hpp"
#include "rbody/errors.hpp"

namespace rbody {

struct IntegratorConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double max_step = std::numeric_limits<double>::infinity();
    double collision_radius = kDefaultCollisionRadius;
    /// Keep interpolation data; endpoint-only runs (shooting residuals) skip it.
    bool dense = true;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0) || !(collision_radius >= 0.0)) {
            throw DomainError("integrator tolerances and max_step must be positive");
        }
    }
};

/// Right-hand side u' = F(t, u) in flat form.
template <class F>
concept VectorField = requires(const F& f, double t, std::span<const double> y, std::span<double> dy) {
    { f(t, y, dy) };
};

/// Accepted steps of one propagation plus the dense-output polynomials.
///
/// Steps are stored in the forward parameter s = |t - t0|; times() reports
/// physical times, which decrease for a backward run.
class Trajectory {
public:
    Trajectory() = default;

    std::size_t dimension() const { return dim_; }
    std::size_t step_count() const { return s_.empty() ? 0 : s_.size() - 1; }
    double start_time() const { return t0_; }
    double end_time() const { return to_time(s_.back()); }
    double direction() const { return dir_; }
    bool has_dense_output() const { return dense_; }

    std::vector<double> times() const {
        std::vector<double> out(s_.size());
        std::transform(s_.begin(), s_.end(), out.begin(), [this](double s) { return to_time(s); });
        return out;
    }

    std::span<const double> stored_state(std::size_t k) const { return {states_.data() + k * dim_, dim_}; }
    std::span<const double> final_flat() const { return stored_state(s_.size() - 1); }
    SystemState final_state() const { return SystemState::from_flat(end_time(), final_flat()); }

    bool contains(double t) const {
        const double lo = std::min(t0_, end_time());
        const double hi = std::max(t0_, end_time());
        return t >= lo && t <= hi;
    }

    /// Solution at physical time t in the flat layout.
    std::vector<double> flat_at(double t) const {
        if (s_.empty()) throw OutOfSpanError("empty trajectory");
        if (!contains(t)) throw OutOfSpanError("time " + std::to_string(t) + " outside the trajectory span");
        const double s = std::min(std::max(dir_ * (t - t0_), 0.0), s_.back());
        auto it = std::lower_bound(s_.begin(), s_.end(), s);
        std::size_t k = static_cast<std::size_t>(it - s_.begin());
        if (it != s_.end() && *it == s) {
            auto st = stored_state(k);
            return {st.begin(), st.end()};
        }
        if (!dense_) throw OutOfSpanError("trajectory was propagated without dense output");
        const std::size_t step = k - 1;
        const double x = (s - s_[step]) / (s_[step + 1] - s_[step]);
        const double* f = coeffs_.data() + step * kPower * dim_;
        std::vector<double> y(dim_, 0.0);
        for (int i = kPower - 1; i >= 0; --i) {
            const double w = ((kPower - 1 - i) % 2 == 0) ? x : 1.0 - x;
            for (std::size_t c = 0; c < dim_; ++c) y[c] = (y[c] + f[i * dim_ + c]) * w;
        }
        auto y0 = stored_state(step);
        for (std::size_t c = 0; c < dim_; ++c) y[c] += y0[c];
        return y;
    }

private:
    static constexpr int kPower = detail::dop853::kInterpolatorPower;

    double to_time(double s) const { return t0_ + dir_ * s; }

    template <VectorField F>
    friend Trajectory propagate_flat(const F&, std::span<const double>, double, double, const IntegratorConfig&);

    std::size_t dim_ = 0;
    double t0_ = 0.0;
    double dir_ = 1.0;
    bool dense_ = true;
    std::vector<double> s_;
    std::vector<double> states_;
    std::vector<double> coeffs_;
};

namespace detail {

inline double rms_norm(std::span<const double> v, std::span<const double> scale) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double z = v[i] / scale[i];
        acc += z * z;
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace detail

/// Integrates y' = field(t, y) from (t0, y0) to t_end, landing exactly on t_end.
/// A backward run (t_end < t0) integrates the negated field in s = t0 - t.
template <VectorField F>
Trajectory propagate_flat(const F& field, std::span<const double> y0, double t0, double t_end,
                          const IntegratorConfig& config) {
    namespace tab = detail::dop853;
    config.validate();
    if (!std::isfinite(t0) || !std::isfinite(t_end) || t_end == t0) {
        throw DomainError("propagation needs finite t_end different from the start time");
    }
    const std::size_t n = y0.size();
    if (n == 0) throw DomainError("empty state");

    const double dir = t_end > t0 ? 1.0 : -1.0;
    const double s_end = std::fabs(t_end - t0);
    auto rhs = [&](double s, std::span<const double> y, std::span<double> dy) {
        field(t0 + dir * s, y, dy);
        if (dir < 0.0) {
            for (double& v : dy) v = -v;
        }
    };

    Trajectory traj;
    traj.dim_ = n;
    traj.t0_ = t0;
    traj.dir_ = dir;
    traj.dense_ = config.dense;
    traj.s_.push_back(0.0);
    traj.states_.assign(y0.begin(), y0.end());

    const double rtol = config.rel_tol;
    const double atol = config.abs_tol;
    const double max_step = config.max_step;

    std::vector<double> y(y0.begin(), y0.end());
    std::vector<double> f(n);
    rhs(0.0, y, f);

    std::vector<double> scale(n), tmp(n), f1(n);

    // Initial step selection for an order-7 error estimator.
    double h_abs;
    {
        for (std::size_t i = 0; i < n; ++i) scale[i] = atol + std::fabs(y[i]) * rtol;
        const double d0 = detail::rms_norm(y, scale);
        const double d1 = detail::rms_norm(f, scale);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, s_end);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h0 * f[i];
        rhs(h0, tmp, f1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = f1[i] - f[i];
        const double d2 = detail::rms_norm(tmp, scale) / h0;
        const double h1 = (d1 <= 1e-15 && d2 <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                                        : std::pow(0.01 / std::max(d1, d2), 1.0 / 8.0);
        h_abs = std::min({100.0 * h0, h1, s_end});
    }

    constexpr double kSafety = 0.9;
    constexpr double kMinFactor = 0.2;
    constexpr double kMaxFactor = 10.0;
    constexpr double kErrorExponent = -1.0 / 8.0;

    std::vector<double> k(static_cast<std::size_t>(tab::kStagesExtended) * n);
    auto stage = [&](int i) { return std::span<double>(k.data() + static_cast<std::size_t>(i) * n, n); };
    std::vector<double> y_new(n), f_new(n);

    double s = 0.0;
    while (s < s_end) {
        const double min_step = 10.0 * (std::nextafter(s, std::numeric_limits<double>::infinity()) - s);
        if (h_abs > max_step) h_abs = max_step;
        else if (h_abs < min_step) h_abs = min_step;
        bool rejected = false;
        double h = 0.0;
        for (;;) {
            if (h_abs < min_step) throw StepUnderflowError(t0 + dir * s, h_abs);
            double s_new = s + h_abs;
            if (s_new > s_end) s_new = s_end;
            h = s_new - s;

            std::copy(f.begin(), f.end(), stage(0).begin());
            for (int st = 1; st < tab::kStages; ++st) {
                for (std::size_t c = 0; c < n; ++c) {
                    double acc = 0.0;
                    for (int j = 0; j < st; ++j) acc += k[j * n + c] * tab::A[st][j];
                    tmp[c] = y[c] + h * acc;
                }
                rhs(s + tab::C[st] * h, tmp, stage(st));
            }
            for (std::size_t c = 0; c < n; ++c) {
                double acc = 0.0;
                for (int j = 0; j < tab::kStages; ++j) acc += k[j * n + c] * tab::A[tab::kStages][j];
                y_new[c] = y[c] + h * acc;
            }
            rhs(s + h, y_new, f_new);
            std::copy(f_new.begin(), f_new.end(), stage(tab::kStages).begin());

            double e5 = 0.0;
            double e3 = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                const double sc = atol + std::max(std::fabs(y[c]), std::fabs(y_new[c])) * rtol;
                double a5 = 0.0;
                double a3 = 0.0;
                for (int j = 0; j <= tab::kStages; ++j) {
                    a5 += k[j * n + c] * tab::E5[j];
                    a3 += k[j * n + c] * tab::E3[j];
                }
                e5 += (a5 / sc) * (a5 / sc);
                e3 += (a3 / sc) * (a3 / sc);
            }
            double error_norm = 0.0;
            if (e5 != 0.0 || e3 != 0.0) {
                error_norm = h * e5 / std::sqrt((e5 + 0.01 * e3) * static_cast<double>(n));
            }

            if (error_norm < 1.0) {
                double factor = error_norm == 0.0 ? kMaxFactor
                                                  : std::min(kMaxFactor, kSafety * std::pow(error_norm, kErrorExponent));
                if (rejected) factor = std::min(1.0, factor);
                h_abs = h * factor;
                break;
            }
            h_abs = h * std::max(kMinFactor, kSafety * std::pow(error_norm, kErrorExponent));
            rejected = true;
        }

        if (config.dense) {
            for (int st = tab::kStages + 1; st < tab::kStagesExtended; ++st) {
                for (std::size_t c = 0; c < n; ++c) {
                    double acc = 0.0;
                    for (int j = 0; j < st; ++j) acc += k[j * n + c] * tab::A[st][j];
                    tmp[c] = y[c] + h * acc;
                }
                rhs(s + tab::C[st] * h, tmp, stage(st));
            }
            const std::size_t base = traj.coeffs_.size();
            traj.coeffs_.resize(base + static_cast<std::size_t>(tab::kInterpolatorPower) * n);
            double* out = traj.coeffs_.data() + base;
            for (std::size_t c = 0; c < n; ++c) {
                const double dy = y_new[c] - y[c];
                out[c] = dy;
                out[n + c] = h * f[c] - dy;
                out[2 * n + c] = 2.0 * dy - h * (f_new[c] + f[c]);
                for (int r = 0; r < tab::kInterpolatorPower - 3; ++r) {
                    double acc = 0.0;
                    for (int j = 0; j < tab::kStagesExtended; ++j) acc += tab::D[r][j] * k[j * n + c];
                    out[(3 + r) * n + c] = h * acc;
                }
            }
        }

        s = (s + h >= s_end) ? s_end : s + h;
        y.swap(y_new);
        f.swap(f_new);
        if (config.dense || s == s_end) {
            traj.s_.push_back(s);
            traj.states_.insert(traj.states_.end(), y.begin(), y.end());
        }
    }
    return traj;
}

/// Propagates an N-body state under `field` from state0.t to t_end.
template <VectorField F>
Trajectory propagate(const F& field, const SystemState& state0, double t_end, const IntegratorConfig& config) {
    state0.validate();
    const auto y0 = state0.flat();
    return propagate_flat(field, y0, state0.t, t_end, config);
}

/// Gravitational-type N-body propagation with the collision guard taken from the config.
inline Trajectory propagate(const MassVector& masses, const PotentialLaw& law, const SystemState& state0,
                            double t_end, const IntegratorConfig& config) {
    return propagate(NBodyField(masses, law, config.collision_radius), state0, t_end, config);
}

inline SystemState sample(const Trajectory& traj, double t) { return SystemState::from_flat(t, traj.flat_at(t)); }

}  // namespace rbody
