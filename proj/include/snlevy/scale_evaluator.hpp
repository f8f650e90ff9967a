#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "snlevy/detail/quadrature.hpp"
#include "snlevy/laplace_inversion.hpp"
#include "snlevy/levy_model.hpp"

namespace snlevy {

enum class ScaleBackend { closed_form_brownian, partial_fraction, numerical_inversion };

inline const char* to_string(ScaleBackend b) {
    switch (b) {
        case ScaleBackend::closed_form_brownian: return "closed_form_brownian";
        case ScaleBackend::partial_fraction: return "partial_fraction";
        case ScaleBackend::numerical_inversion: return "numerical_inversion";
    }
    return "?";
}

namespace detail {

using Complex = std::complex<double>;

// exp(w) - 1 without cancellation near 0
inline Complex cexpm1(Complex w) {
    if (std::abs(w) < 1e-4)
        return w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0)));
    return std::exp(w) - 1.0;
}

// (exp(a x) - 1) / a, the antiderivative kernel of an exponential term
inline Complex exp_integral(Complex a, double x) {
    if (a == 0.0) return Complex(x, 0.0);
    return cexpm1(a * x) / a;
}

// Roots of a real polynomial (ascending coefficients) via the companion
// matrix, the standard route for clearing psi(theta) = q to a polynomial.
inline std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
    int n = static_cast<int>(coeffs.size()) - 1;
    while (n > 0 && coeffs[static_cast<std::size_t>(n)] == 0.0) --n;
    if (n < 1) throw std::invalid_argument("polynomial_roots: degree must be >= 1");
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    const double lead = coeffs[static_cast<std::size_t>(n)];
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;
        if (i > 0) companion(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<Complex> roots(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return roots;
}

}  // namespace detail

// Prepared evaluator of W^(q), W^(q)', Wbar^(q) and Z^(q) for a fixed
// (model, q). Construction picks among three backends:
//
//   closed_form_brownian  Brownian motion with drift, the sinh form;
//   partial_fraction      rational psi cleared to a polynomial, W as a sum of
//                         exponentials with coefficients 1/psi'(zeta_j);
//   numerical_inversion   tilted Bromwich inversion of 1/(psi(.) - q),
//                         the fallback and the independent cross-check.
//
// Immutable after construction; evaluation is pure and thread-safe.
class ScaleEvaluator {
public:
    static ScaleEvaluator make(const LevyModel& model, double q) {
        check_common(model, q);
        if (!model.has_jumps()) return make_brownian(model, q);
        if (auto pf = try_make_partial_fraction(model, q)) return std::move(*pf);
        return make_inversion(model, q);
    }

    static ScaleEvaluator make_with_backend(const LevyModel& model, double q, ScaleBackend b) {
        check_common(model, q);
        switch (b) {
            case ScaleBackend::closed_form_brownian:
                if (model.has_jumps())
                    throw std::invalid_argument("closed-form backend requires a jump-free model");
                return make_brownian(model, q);
            case ScaleBackend::partial_fraction: {
                auto pf = try_make_partial_fraction(model, q);
                if (!pf)
                    throw std::runtime_error(
                        "partial-fraction construction failed (near-multiple root)");
                return std::move(*pf);
            }
            case ScaleBackend::numerical_inversion: return make_inversion(model, q);
        }
        throw std::invalid_argument("unknown backend");
    }

    const LevyModel& model() const { return model_; }
    double q() const { return q_; }
    double phi_q() const { return phi_q_; }
    ScaleBackend backend() const { return backend_; }

    // W^(q)(0+) and W^(q)'(0+) per the initial-value table: (1/d, ...) for
    // bounded variation, (0, 2/sigma^2) otherwise.
    double w_at_zero() const { return w0_; }
    double w_prime_at_zero() const { return wp0_; }

    double w(double x) const {
        if (x < 0.0) return 0.0;
        if (x == 0.0) return w0_;
        switch (backend_) {
            case ScaleBackend::numerical_inversion: return invert_w(x);
            default: {
                if (degenerate_) return 2.0 * x / sigma2_;
                detail::Complex s{};
                for (std::size_t j = 0; j < roots_.size(); ++j)
                    s += coeffs_[j] * std::exp(roots_[j] * x);
                return s.real();
            }
        }
    }

    double w_prime(double x) const {
        if (x < 0.0) return 0.0;
        if (x == 0.0) return wp0_;
        switch (backend_) {
            case ScaleBackend::numerical_inversion: return invert_w_prime(x);
            default: {
                if (degenerate_) return 2.0 / sigma2_;
                detail::Complex s{};
                for (std::size_t j = 0; j < roots_.size(); ++j)
                    s += coeffs_[j] * roots_[j] * std::exp(roots_[j] * x);
                return s.real();
            }
        }
    }

    double w_bar(double x) const {
        if (x <= 0.0) return 0.0;
        switch (backend_) {
            case ScaleBackend::numerical_inversion: return invert_w_bar(x);
            default: {
                if (degenerate_) return x * x / sigma2_;
                detail::Complex s{};
                for (std::size_t j = 0; j < roots_.size(); ++j)
                    s += coeffs_[j] * detail::exp_integral(roots_[j], x);
                return s.real();
            }
        }
    }

    double z(double x) const {
        if (q_ == 0.0 || x <= 0.0) return 1.0;
        return 1.0 + q_ * w_bar(x);
    }

    // int_0^x exp(-r t) W(t) dt, exact for the exponential-sum backends
    double laplace_partial(double r, double x) const {
        if (x <= 0.0) return 0.0;
        // the inversion backend's w carries ~1e-9 noise; keep the quadrature
        // tolerance above it so the subdivision terminates
        if (backend_ == ScaleBackend::numerical_inversion)
            return detail::integrate([this, r](double t) { return std::exp(-r * t) * w(t); }, 0.0,
                                     x, 1e-9);
        if (degenerate_)
            return detail::integrate([this, r](double t) { return std::exp(-r * t) * w(t); }, 0.0,
                                     x, 1e-12);
        detail::Complex s{};
        for (std::size_t j = 0; j < roots_.size(); ++j)
            s += coeffs_[j] * detail::exp_integral(roots_[j] - r, x);
        return s.real();
    }

    // int_0^inf exp(-r t) W(x+t) dt for r > Phi(q)
    double laplace_shifted(double r, double x) const {
        if (!(r > phi_q_)) throw std::domain_error("laplace_shifted: requires r > Phi(q)");
        if (x < 0.0) throw std::domain_error("laplace_shifted: requires x >= 0");
        switch (backend_) {
            case ScaleBackend::numerical_inversion: return shifted_by_quadrature(r, x);
            default: {
                if (degenerate_) return (2.0 / sigma2_) * (x / r + 1.0 / (r * r));
                detail::Complex s{};
                for (std::size_t j = 0; j < roots_.size(); ++j)
                    s += coeffs_[j] * std::exp(roots_[j] * x) / (r - roots_[j]);
                return s.real();
            }
        }
    }

    // int_0^inf exp(-r t) (W(x+t) - W(x)) dt; every term is nonnegative, so
    // this form avoids the cancellation the textbook expression suffers at
    // large r.
    double laplace_increment(double r, double x) const {
        if (!(r > phi_q_) || r <= 0.0)
            throw std::domain_error("laplace_increment: requires r > max(0, Phi(q))");
        if (x < 0.0) throw std::domain_error("laplace_increment: requires x >= 0");
        switch (backend_) {
            case ScaleBackend::numerical_inversion: return shifted_by_quadrature(r, x) - w(x) / r;
            default: {
                if (degenerate_) return (2.0 / sigma2_) / (r * r);
                detail::Complex s{};
                for (std::size_t j = 0; j < roots_.size(); ++j)
                    s += coeffs_[j] * std::exp(roots_[j] * x) * roots_[j] / (r * (r - roots_[j]));
                return s.real();
            }
        }
    }

    // Exponential-sum representation W(x) = Re sum_j c_j exp(zeta_j x), x >= 0.
    // Available for both closed-form backends; the occupation module leans on
    // it for cancellation-free Theorem-2 algebra.
    bool has_exp_sum() const { return !roots_.empty(); }
    const std::vector<detail::Complex>& exp_roots() const { return roots_; }
    const std::vector<detail::Complex>& exp_coeffs() const { return coeffs_; }

private:
    ScaleEvaluator(LevyModel model, double q) : model_(std::move(model)), q_(q) {}

    static void check_common(const LevyModel& model, double q) {
        if (q < 0.0) throw std::domain_error("scale function: q must be >= 0");
        if (model.is_monotone())
            throw std::domain_error("scale function: model must have non-monotone paths");
    }

    void fill_initial_values() {
        if (model_.sigma() > 0.0) {
            w0_ = 0.0;
            wp0_ = 2.0 / (model_.sigma() * model_.sigma());
        } else {
            w0_ = 1.0 / model_.gamma();
            wp0_ = (model_.jump_rate() + q_) / (model_.gamma() * model_.gamma());
        }
    }

    static ScaleEvaluator make_brownian(const LevyModel& model, double q) {
        ScaleEvaluator ev(model, q);
        ev.backend_ = ScaleBackend::closed_form_brownian;
        ev.sigma2_ = model.sigma() * model.sigma();
        const double m = model.gamma();
        const double delta = std::sqrt(m * m + 2.0 * q * ev.sigma2_);
        ev.phi_q_ = (delta - m) / ev.sigma2_;
        ev.fill_initial_values();
        if (delta == 0.0) {
            ev.degenerate_ = true;  // q = 0, zero drift: W(x) = 2x / sigma^2
        } else {
            ev.roots_ = {detail::Complex((delta - m) / ev.sigma2_, 0.0),
                         detail::Complex(-(delta + m) / ev.sigma2_, 0.0)};
            ev.coeffs_ = {detail::Complex(1.0 / delta, 0.0), detail::Complex(-1.0 / delta, 0.0)};
        }
        return ev;
    }

    static std::optional<ScaleEvaluator> try_make_partial_fraction(const LevyModel& model,
                                                                   double q) {
        // clear psi(theta) - q to a polynomial:
        //   (gamma theta + sigma^2/2 theta^2 - (beta + q)) D(theta) + beta N(theta)
        detail::Poly lin;
        const double beta = model.jump_rate();
        if (model.sigma() > 0.0)
            lin = {-(beta + q), model.gamma(), 0.5 * model.sigma() * model.sigma()};
        else
            lin = {-(beta + q), model.gamma()};
        detail::Poly den = model.has_jumps() ? model.claim().transform_denominator() : detail::Poly{1.0};
        detail::Poly p = detail::poly_mul(lin, den);
        if (model.has_jumps())
            detail::poly_add_scaled(p, model.claim().transform_numerator(), beta);

        std::vector<detail::Complex> roots = detail::polynomial_roots(p);

        // polish on psi itself and snap real/zero roots
        const double ftol = 1e-13 * std::max(1.0, std::abs(q));
        for (auto& zeta : roots) {
            for (int it = 0; it < 8; ++it) {
                detail::Complex f = detail::psi_at(model, zeta) - q;
                if (std::abs(f) <= ftol) break;
                detail::Complex d = detail::psi_prime_at(model, zeta);
                if (std::abs(d) < 1e-14) break;
                zeta -= f / d;
            }
            if (std::abs(zeta.imag()) <= 1e-9 * (1.0 + std::abs(zeta.real())))
                zeta = detail::Complex(zeta.real(), 0.0);
            if (std::abs(zeta) <= 1e-12) zeta = detail::Complex(0.0, 0.0);
        }

        // residual and simple-root validation
        for (const auto& zeta : roots) {
            if (std::abs(detail::psi_at(model, zeta) - q) > 1e-10 * std::max(1.0, std::abs(q)))
                return std::nullopt;
            if (std::abs(detail::psi_prime_at(model, zeta)) <= 1e-8) return std::nullopt;
        }

        ScaleEvaluator ev(model, q);
        ev.backend_ = ScaleBackend::partial_fraction;
        ev.sigma2_ = model.sigma() * model.sigma();
        ev.phi_q_ = model.phi(q);
        ev.fill_initial_values();

        // exactly one root coincides with Phi(q); pin it to the real solver's value
        std::size_t nearest = 0;
        double best = std::abs(roots[0] - ev.phi_q_);
        for (std::size_t j = 1; j < roots.size(); ++j) {
            double d = std::abs(roots[j] - ev.phi_q_);
            if (d < best) {
                best = d;
                nearest = j;
            }
        }
        if (best > 1e-6 * std::max(1.0, ev.phi_q_)) return std::nullopt;
        roots[nearest] = detail::Complex(ev.phi_q_, 0.0);
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (j != nearest && std::abs(roots[j] - roots[nearest]) <= 1e-8) return std::nullopt;

        std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
            if (a.real() != b.real()) return a.real() > b.real();
            return a.imag() > b.imag();
        });

        ev.roots_ = std::move(roots);
        ev.coeffs_.resize(ev.roots_.size());
        for (std::size_t j = 0; j < ev.roots_.size(); ++j)
            ev.coeffs_[j] = 1.0 / detail::psi_prime_at(model, ev.roots_[j]);
        return ev;
    }

    static ScaleEvaluator make_inversion(const LevyModel& model, double q) {
        ScaleEvaluator ev(model, q);
        ev.backend_ = ScaleBackend::numerical_inversion;
        ev.sigma2_ = model.sigma() * model.sigma();
        ev.phi_q_ = model.phi(q);
        ev.fill_initial_values();
        return ev;
    }

    // Inversion happens on the tilted function exp(-Phi(q) x) W(x), which is
    // bounded and increasing; the plain transform target grows like
    // exp(Phi(q) x) and would wreck the Euler sum.
    double invert_w(double x) const {
        const double phi = phi_q_;
        auto transform = [this, phi](detail::Complex s) {
            return 1.0 / (detail::psi_at(model_, s + phi) - q_);
        };
        return std::exp(phi * x) * invert_laplace_euler(transform, x);
    }

    double invert_w_prime(double x) const {
        const double phi = phi_q_;
        const double w0 = w0_;
        auto transform = [this, phi, w0](detail::Complex s) {
            detail::Complex u = s + phi;
            return u / (detail::psi_at(model_, u) - q_) - w0;
        };
        return std::exp(phi * x) * invert_laplace_euler(transform, x);
    }

    // int e^{-ux} Wbar(x) dx = 1/(u (psi(u) - q)); inverted directly rather
    // than integrating the (noisy) inverted w
    double invert_w_bar(double x) const {
        const double phi = phi_q_;
        auto transform = [this, phi](detail::Complex s) {
            detail::Complex u = s + phi;
            return 1.0 / (u * (detail::psi_at(model_, u) - q_));
        };
        return std::exp(phi * x) * invert_laplace_euler(transform, x);
    }

    double shifted_by_quadrature(double r, double x) const {
        const double gap = r - phi_q_;
        const double zcut = 34.5 / gap;  // exp(-gap zcut) ~ 1e-15
        double head = detail::integrate(
            [this, r](double t) { return std::exp(-r * t) * w(t); }, x, x + zcut, 1e-9);
        // beyond the cut, exp(-Phi x) W(x) has flattened to 1/psi'(Phi)
        double wp_phi = detail::psi_prime_at(model_, phi_q_);
        double tail = 0.0;
        if (wp_phi > 0.0)
            tail = std::exp(phi_q_ * (x + zcut) - r * (x + zcut)) / (wp_phi * gap);
        return std::exp(r * x) * (head + tail);
    }

    LevyModel model_;
    double q_ = 0.0;
    double phi_q_ = 0.0;
    double sigma2_ = 0.0;
    double w0_ = 0.0;
    double wp0_ = 0.0;
    bool degenerate_ = false;  // q = 0 and zero drift in the Brownian backend
    ScaleBackend backend_ = ScaleBackend::numerical_inversion;
    std::vector<detail::Complex> roots_;
    std::vector<detail::Complex> coeffs_;
};

}  // namespace snlevy
