#pragma once

// Kepler action in rotating coordinates on sampled loops, the Fourier blocks
// of its Hessian at the circular orbit, and the cyclic-subspace restriction.

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "rbody/dynamics.hpp"
#include "rbody/errors.hpp"
#include "rbody/vec2.hpp"

namespace rbody {

inline constexpr int kDefaultLoopSamples = 256;

/// Uniform samples x(tau_k), tau_k = 2 pi k / M, of a 2 pi-periodic planar path.
class LoopSamples {
public:
    explicit LoopSamples(std::vector<Vec2> samples) : x_(std::move(samples)) {
        if (x_.size() < 64 || x_.size() % 2 != 0) throw GridError("loops need an even number M >= 64 of samples");
    }

    /// Samples f(tau) on the uniform grid.
    static LoopSamples from_function(const std::function<Vec2(double)>& f, int m = kDefaultLoopSamples) {
        std::vector<Vec2> s(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) s[static_cast<std::size_t>(k)] = f(2.0 * std::numbers::pi * k / m);
        return LoopSamples(std::move(s));
    }

    std::size_t size() const { return x_.size(); }
    const std::vector<Vec2>& values() const { return x_; }
    const Vec2& operator[](std::size_t k) const { return x_[k]; }

    /// Mean mode xi.
    Vec2 mean() const {
        Vec2 m;
        for (const Vec2& v : x_) m += v;
        return m / static_cast<double>(x_.size());
    }

    /// Zero-mean part eta = x - xi.
    LoopSamples oscillation() const {
        const Vec2 m = mean();
        std::vector<Vec2> out(x_);
        for (Vec2& v : out) v -= m;
        return LoopSamples(std::move(out));
    }

    double mean_radius() const { return norm(mean()); }
    double mean_angle() const {
        const Vec2 m = mean();
        return std::atan2(m.y, m.x);
    }

    double min_norm() const {
        double r = std::numeric_limits<double>::infinity();
        for (const Vec2& v : x_) r = std::min(r, norm(v));
        return r;
    }

    friend LoopSamples operator+(const LoopSamples& a, const LoopSamples& b) {
        if (a.size() != b.size()) throw GridError("loops sampled on different grids");
        std::vector<Vec2> out(a.x_);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += b.x_[k];
        return LoopSamples(std::move(out));
    }

    friend LoopSamples operator*(double s, const LoopSamples& a) {
        std::vector<Vec2> out(a.x_);
        for (Vec2& v : out) v *= s;
        return LoopSamples(std::move(out));
    }

private:
    std::vector<Vec2> x_;
};

namespace detail {

using Spectrum = std::vector<std::complex<double>>;

// Fourier coefficients of each coordinate, unnormalized (Eigen's forward transform).
inline void loop_spectrum(const LoopSamples& loop, Spectrum& xs, Spectrum& ys) {
    const std::size_t m = loop.size();
    Spectrum in_x(m), in_y(m);
    for (std::size_t k = 0; k < m; ++k) {
        in_x[k] = loop[k].x;
        in_y[k] = loop[k].y;
    }
    Eigen::FFT<double> fft;
    fft.fwd(xs, in_x);
    fft.fwd(ys, in_y);
}

inline LoopSamples loop_from_spectrum(const Spectrum& xs, const Spectrum& ys) {
    Eigen::FFT<double> fft;
    Spectrum out_x, out_y;
    fft.inv(out_x, xs);
    fft.inv(out_y, ys);
    std::vector<Vec2> s(xs.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = {out_x[k].real(), out_y[k].real()};
    return LoopSamples(std::move(s));
}

// Signed mode number of FFT bin k on an M-point grid.
inline long mode_of_bin(std::size_t k, std::size_t m) {
    return k <= m / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(m);
}

}  // namespace detail

/// Spectral derivative d/dtau; the Nyquist mode is dropped.
inline LoopSamples spectral_derivative(const LoopSamples& loop) {
    detail::Spectrum xs, ys;
    detail::loop_spectrum(loop, xs, ys);
    const std::size_t m = loop.size();
    for (std::size_t k = 0; k < m; ++k) {
        const long l = detail::mode_of_bin(k, m);
        const std::complex<double> factor =
            (k == m / 2) ? std::complex<double>(0.0) : std::complex<double>(0.0, static_cast<double>(l));
        xs[k] *= factor;
        ys[k] *= factor;
    }
    return detail::loop_from_spectrum(xs, ys);
}

/// Trapezoid rule for int_0^{2 pi} 0.5 |(d/dtau / p + J) x|^2 + phi(|x|) dtau.
inline double kepler_action(const LoopSamples& loop, int p, const PotentialLaw& law) {
    if (p < 1) throw DomainError("p must be a positive integer");
    if (!(loop.min_norm() > 0.0)) throw DomainError("loop passes through the origin");
    const LoopSamples dx = spectral_derivative(loop);
    double sum = 0.0;
    for (std::size_t k = 0; k < loop.size(); ++k) {
        const Vec2 w = dx[k] / static_cast<double>(p) + apply_j(loop[k]);
        sum += 0.5 * norm2(w) + law.potential(norm(loop[k]));
    }
    return 2.0 * std::numbers::pi * sum / static_cast<double>(loop.size());
}

/// Quadratic form of the action at the circular orbit:
///   0.5 int (a + 1) r^2 + |(d/p + J) eta|^2 - |eta|^2 + (a + 1) (u_theta . eta)^2.
inline double kepler_quadratic_form(double theta, double r, const LoopSamples& eta, int p, const PotentialLaw& law) {
    const double a1 = law.alpha() + 1.0;
    const Vec2 u{std::cos(theta), std::sin(theta)};
    const LoopSamples de = spectral_derivative(eta);
    double sum = 0.0;
    for (std::size_t k = 0; k < eta.size(); ++k) {
        const Vec2 w = de[k] / static_cast<double>(p) + apply_j(eta[k]);
        const double c = dot(u, eta[k]);
        sum += a1 * r * r + norm2(w) - norm2(eta[k]) + a1 * c * c;
    }
    return 0.5 * 2.0 * std::numbers::pi * sum / static_cast<double>(eta.size());
}

/// |A0(theta, 1 + r, eta) - A0(theta, 1, 0) - Q(r, eta; theta)| for a zero-mean eta.
inline double expansion_residual(double theta, double r, const LoopSamples& eta, int p, const PotentialLaw& law) {
    if (max_abs(eta.mean()) > 1e-12) throw DomainError("eta must have zero mean");
    const Vec2 u{std::cos(theta), std::sin(theta)};
    std::vector<Vec2> base(eta.size(), u);
    std::vector<Vec2> pert(eta.size());
    for (std::size_t k = 0; k < eta.size(); ++k) pert[k] = (1.0 + r) * u + eta[k];
    const double a0 = kepler_action(LoopSamples(std::move(base)), p, law);
    const double a = kepler_action(LoopSamples(std::move(pert)), p, law);
    return std::fabs(a - a0 - kepler_quadratic_form(theta, r, eta, p, law));
}

/// Keeps the Fourier modes l = 0 mod m p, the loops fixed by the shift tau -> tau - 2 pi / (m p).
inline LoopSamples symmetric_projector(const LoopSamples& loop, int m, int p) {
    if (m < 1 || p < 1) throw DomainError("projector needs m >= 1 and p >= 1");
    const std::size_t order = static_cast<std::size_t>(m) * static_cast<std::size_t>(p);
    if (loop.size() % order != 0) throw GridError("sample count must be divisible by m p");
    detail::Spectrum xs, ys;
    detail::loop_spectrum(loop, xs, ys);
    for (std::size_t k = 0; k < loop.size(); ++k) {
        if (detail::mode_of_bin(k, loop.size()) % static_cast<long>(order) != 0) {
            xs[k] = 0.0;
            ys[k] = 0.0;
        }
    }
    return detail::loop_from_spectrum(xs, ys);
}

struct HessianBlock {
    long l = 0;
    double theta = 0.0;
    double alpha = 2.0;
    int p = 1;
    Eigen::Matrix2cd matrix;
};

/// Fourier block A_l of the eta-Hessian at the circular orbit e^{J theta} x0.
inline HessianBlock hessian_block(long l, double theta, int p, const PotentialLaw& law) {
    if (l == 0) throw DomainError("mode l = 0 belongs to the radial sector (Hessian alpha + 1)");
    if (p < 1) throw DomainError("p must be a positive integer");
    const double lp = static_cast<double>(l) / p;
    const double a1 = law.alpha() + 1.0;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    using cd = std::complex<double>;
    Eigen::Matrix2cd a;
    a(0, 0) = cd(lp * lp + a1 * c * c, 0.0);
    a(0, 1) = cd(a1 * s * c, -2.0 * lp);
    a(1, 0) = cd(a1 * s * c, 2.0 * lp);
    a(1, 1) = cd(lp * lp + a1 * s * s, 0.0);
    a /= static_cast<double>(l) * static_cast<double>(l) + 1.0;
    return {l, theta, law.alpha(), p, a};
}

struct EigenPair {
    double minus = 0.0;
    double plus = 0.0;
};

/// Closed-form eigenvalues of A_l.
inline EigenPair hessian_eigenvalues(long l, int p, const PotentialLaw& law) {
    if (l == 0) throw DomainError("mode l = 0 belongs to the radial sector");
    if (p < 1) throw DomainError("p must be a positive integer");
    const double lp2 = std::pow(static_cast<double>(l) / p, 2);
    const double a1 = law.alpha() + 1.0;
    const double scale = 1.0 / (static_cast<double>(l) * static_cast<double>(l) + 1.0);
    const double root = 0.5 * std::sqrt(a1 * a1 + 16.0 * lp2);
    return {scale * (0.5 * a1 + lp2 - root), scale * (0.5 * a1 + lp2 + root)};
}

/// A_l is singular iff (l / p)^2 = 3 - alpha, checked to 1e-12.
inline bool is_degenerate_mode(long l, int p, const PotentialLaw& law) {
    const double lp2 = std::pow(static_cast<double>(l) / p, 2);
    return std::fabs(lp2 - (3.0 - law.alpha())) <= 1e-12;
}

struct ModeSpectrum {
    long l = 0;
    EigenPair eigenvalues;
    bool degenerate = false;
};

struct NondegeneracyMargin {
    double min_abs_eigenvalue = std::numeric_limits<double>::infinity();
    std::vector<long> degenerate_modes;
    std::vector<ModeSpectrum> modes;
};

namespace detail {

inline NondegeneracyMargin scan_modes(int p, const PotentialLaw& law, long l_max, long step) {
    NondegeneracyMargin out;
    for (long l = -l_max; l <= l_max; ++l) {
        if (l == 0 || l % step != 0) continue;
        const EigenPair ev = hessian_eigenvalues(l, p, law);
        const bool deg = is_degenerate_mode(l, p, law);
        out.modes.push_back({l, ev, deg});
        if (deg) out.degenerate_modes.push_back(l);
        out.min_abs_eigenvalue = std::min({out.min_abs_eigenvalue, std::fabs(ev.minus), std::fabs(ev.plus)});
    }
    return out;
}

}  // namespace detail

/// Smallest |lambda| over 1 <= |l| <= l_max and the modes where A_l is singular.
inline NondegeneracyMargin nondegeneracy_margin(int p, const PotentialLaw& law, long l_max) {
    if (p < 1) throw DomainError("p must be a positive integer");
    if (l_max < p) throw DomainError("l_max must be at least p");
    return detail::scan_modes(p, law, l_max, 1);
}

/// Smallest |lambda| over the nonzero modes l = 0 mod m p with |l| <= l_max.
inline double restricted_invertibility(int p, int m, long l_max, const PotentialLaw& law = PotentialLaw::gravitational()) {
    if (p < 1 || m < 1) throw DomainError("p and m must be positive");
    const long step = static_cast<long>(m) * p;
    if (l_max < step) throw DomainError("l_max must reach the first retained mode m p");
    return detail::scan_modes(p, law, l_max, step).min_abs_eigenvalue;
}

}  // namespace rbody
