#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace snlevy {

namespace detail {

// Dense polynomial helpers, coefficients in ascending degree order.
// Degrees stay small here (one per claim rate plus two), so no cleverness.
using Poly = std::vector<double>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline void poly_add_scaled(Poly& a, const Poly& b, double s) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
}

}  // namespace detail

// Parametric laws of the (positive) jump size C; the process jumps by -C.
// All three have rational Laplace transforms E[exp(-theta C)] = N(theta)/D(theta),
// which is what makes the partial-fraction scale-function backend exact.
struct ExponentialClaim {
    double rate;  // mu > 0, mean 1/mu
};

struct HyperExponentialClaim {
    std::vector<double> weights;  // p_i > 0, sum to 1
    std::vector<double> rates;    // mu_i > 0, pairwise distinct
};

struct ErlangClaim {
    int shape;    // k >= 1
    double rate;  // mu > 0
};

class ClaimDistribution {
public:
    using Variant = std::variant<ExponentialClaim, HyperExponentialClaim, ErlangClaim>;

    ClaimDistribution(ExponentialClaim c) : v_(c) { validate(); }
    ClaimDistribution(HyperExponentialClaim c) : v_(std::move(c)) { validate(); }
    ClaimDistribution(ErlangClaim c) : v_(c) { validate(); }

    static ClaimDistribution exponential(double mu) { return ClaimDistribution(ExponentialClaim{mu}); }
    static ClaimDistribution hyper_exponential(std::vector<double> weights, std::vector<double> rates) {
        return ClaimDistribution(HyperExponentialClaim{std::move(weights), std::move(rates)});
    }
    static ClaimDistribution erlang(int shape, double mu) { return ClaimDistribution(ErlangClaim{shape, mu}); }

    const Variant& variant() const { return v_; }

    // E[exp(-theta C)]; rational in theta with poles at -mu_i. T is double or
    // std::complex<double>; real arguments must stay right of -min_rate().
    template <class T>
    T laplace(T theta) const {
        return std::visit(
            [&](const auto& c) -> T {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    return c.rate / (c.rate + theta);
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    T s{};
                    for (std::size_t i = 0; i < c.rates.size(); ++i)
                        s += c.weights[i] * c.rates[i] / (c.rates[i] + theta);
                    return s;
                } else {
                    T base = c.rate / (c.rate + theta);
                    T out{1.0};
                    for (int i = 0; i < c.shape; ++i) out *= base;
                    return out;
                }
            },
            v_);
    }

    // E[exp(-theta C)] - 1 without cancellation: the difference is formed
    // term by term as -theta/(mu + theta) factors, so psi stays accurate down
    // to theta near 0 where the raw subtraction would lose digits.
    template <class T>
    T laplace_m1(T theta) const {
        return std::visit(
            [&](const auto& c) -> T {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    return -theta / (c.rate + theta);
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    T s{};
                    for (std::size_t i = 0; i < c.rates.size(); ++i)
                        s += c.weights[i] / (c.rates[i] + theta);
                    return -theta * s;
                } else {
                    // a^k - 1 = (a - 1)(a^{k-1} + ... + 1) with a = mu/(mu+theta)
                    T a = c.rate / (c.rate + theta);
                    T geom{1.0};
                    T pow_a{1.0};
                    for (int j = 1; j < c.shape; ++j) {
                        pow_a *= a;
                        geom += pow_a;
                    }
                    return -theta / (c.rate + theta) * geom;
                }
            },
            v_);
    }

    // E[C exp(-theta C)] = -d/dtheta E[exp(-theta C)]
    template <class T>
    T laplace_d1(T theta) const {
        return std::visit(
            [&](const auto& c) -> T {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    T d = c.rate + theta;
                    return c.rate / (d * d);
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    T s{};
                    for (std::size_t i = 0; i < c.rates.size(); ++i) {
                        T d = c.rates[i] + theta;
                        s += c.weights[i] * c.rates[i] / (d * d);
                    }
                    return s;
                } else {
                    T base = c.rate / (c.rate + theta);
                    T out{1.0};
                    for (int i = 0; i < c.shape; ++i) out *= base;
                    return static_cast<double>(c.shape) * out / (c.rate + theta);
                }
            },
            v_);
    }

    // E[C^2 exp(-theta C)]
    template <class T>
    T laplace_d2(T theta) const {
        return std::visit(
            [&](const auto& c) -> T {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    T d = c.rate + theta;
                    return 2.0 * c.rate / (d * d * d);
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    T s{};
                    for (std::size_t i = 0; i < c.rates.size(); ++i) {
                        T d = c.rates[i] + theta;
                        s += 2.0 * c.weights[i] * c.rates[i] / (d * d * d);
                    }
                    return s;
                } else {
                    T base = c.rate / (c.rate + theta);
                    T out{1.0};
                    for (int i = 0; i < c.shape; ++i) out *= base;
                    double k = static_cast<double>(c.shape);
                    return k * (k + 1.0) * out / ((c.rate + theta) * (c.rate + theta));
                }
            },
            v_);
    }

    double mean() const {
        return std::visit(
            [](const auto& c) -> double {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    return 1.0 / c.rate;
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < c.rates.size(); ++i) s += c.weights[i] / c.rates[i];
                    return s;
                } else {
                    return c.shape / c.rate;
                }
            },
            v_);
    }

    double second_moment() const {
        return std::visit(
            [](const auto& c) -> double {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    return 2.0 / (c.rate * c.rate);
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < c.rates.size(); ++i)
                        s += 2.0 * c.weights[i] / (c.rates[i] * c.rates[i]);
                    return s;
                } else {
                    return c.shape * (c.shape + 1.0) / (c.rate * c.rate);
                }
            },
            v_);
    }

    // density f_C(t), t > 0
    double density(double t) const {
        if (t < 0.0) return 0.0;
        return std::visit(
            [&](const auto& c) -> double {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    return c.rate * std::exp(-c.rate * t);
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < c.rates.size(); ++i)
                        s += c.weights[i] * c.rates[i] * std::exp(-c.rates[i] * t);
                    return s;
                } else {
                    double lg = c.shape * std::log(c.rate) + (c.shape - 1) * std::log(std::max(t, 1e-300)) -
                                c.rate * t - std::lgamma(static_cast<double>(c.shape));
                    return c.shape == 1 ? c.rate * std::exp(-c.rate * t) : std::exp(lg);
                }
            },
            v_);
    }

    // P{C > t}
    double survival(double t) const {
        if (t <= 0.0) return 1.0;
        return std::visit(
            [&](const auto& c) -> double {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    return std::exp(-c.rate * t);
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < c.rates.size(); ++i)
                        s += c.weights[i] * std::exp(-c.rates[i] * t);
                    return s;
                } else {
                    double u = c.rate * t, term = 1.0, s = 1.0;
                    for (int j = 1; j < c.shape; ++j) {
                        term *= u / j;
                        s += term;
                    }
                    return std::exp(-u) * s;
                }
            },
            v_);
    }

    // int_t^inf P{C > u} du; equals mean() at t = 0
    double integrated_tail(double t) const {
        if (t <= 0.0) return mean();
        return std::visit(
            [&](const auto& c) -> double {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    return std::exp(-c.rate * t) / c.rate;
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < c.rates.size(); ++i)
                        s += c.weights[i] * std::exp(-c.rates[i] * t) / c.rates[i];
                    return s;
                } else {
                    double u = c.rate * t, term = 1.0, s = static_cast<double>(c.shape);
                    for (int m = 1; m < c.shape; ++m) {
                        term *= u / m;
                        s += (c.shape - m) * term;
                    }
                    return std::exp(-u) * s / c.rate;
                }
            },
            v_);
    }

    // Smallest rate, i.e. the transform pole closest to the origin.
    double min_rate() const {
        return std::visit(
            [](const auto& c) -> double {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    return c.rate;
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    double m = c.rates[0];
                    for (double r : c.rates) m = std::min(m, r);
                    return m;
                } else {
                    return c.rate;
                }
            },
            v_);
    }

    // Numerator / denominator of the rational transform, ascending coefficients.
    detail::Poly transform_numerator() const {
        return std::visit(
            [](const auto& c) -> detail::Poly {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    return {c.rate};
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    detail::Poly num{0.0};
                    for (std::size_t i = 0; i < c.rates.size(); ++i) {
                        detail::Poly term{c.weights[i] * c.rates[i]};
                        for (std::size_t j = 0; j < c.rates.size(); ++j)
                            if (j != i) term = detail::poly_mul(term, {c.rates[j], 1.0});
                        detail::poly_add_scaled(num, term, 1.0);
                    }
                    return num;
                } else {
                    double p = 1.0;
                    for (int i = 0; i < c.shape; ++i) p *= c.rate;
                    return {p};
                }
            },
            v_);
    }

    detail::Poly transform_denominator() const {
        return std::visit(
            [](const auto& c) -> detail::Poly {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    return {c.rate, 1.0};
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    detail::Poly den{1.0};
                    for (double r : c.rates) den = detail::poly_mul(den, {r, 1.0});
                    return den;
                } else {
                    detail::Poly den{1.0};
                    for (int i = 0; i < c.shape; ++i) den = detail::poly_mul(den, {c.rate, 1.0});
                    return den;
                }
            },
            v_);
    }

    // Draw one claim. Rng must expose uniform() -> double in (0,1).
    template <class Rng>
    double sample(Rng& rng) const {
        return std::visit(
            [&](const auto& c) -> double {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    return -std::log(rng.uniform()) / c.rate;
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    double u = rng.uniform(), acc = 0.0;
                    std::size_t pick = c.rates.size() - 1;
                    for (std::size_t i = 0; i < c.rates.size(); ++i) {
                        acc += c.weights[i];
                        if (u <= acc) {
                            pick = i;
                            break;
                        }
                    }
                    return -std::log(rng.uniform()) / c.rates[pick];
                } else {
                    double sum_log = 0.0;
                    for (int i = 0; i < c.shape; ++i) sum_log += std::log(rng.uniform());
                    return -sum_log / c.rate;
                }
            },
            v_);
    }

private:
    void validate() const {
        std::visit(
            [](const auto& c) {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, ExponentialClaim>) {
                    if (!(c.rate > 0.0)) throw std::invalid_argument("exponential claim: rate must be > 0");
                } else if constexpr (std::is_same_v<C, HyperExponentialClaim>) {
                    if (c.weights.empty() || c.weights.size() != c.rates.size())
                        throw std::invalid_argument("hyperexponential claim: weights/rates size mismatch");
                    double sum = 0.0;
                    for (double p : c.weights) {
                        if (!(p > 0.0)) throw std::invalid_argument("hyperexponential claim: weights must be > 0");
                        sum += p;
                    }
                    if (std::abs(sum - 1.0) > 1e-12)
                        throw std::invalid_argument("hyperexponential claim: weights must sum to 1");
                    for (std::size_t i = 0; i < c.rates.size(); ++i) {
                        if (!(c.rates[i] > 0.0))
                            throw std::invalid_argument("hyperexponential claim: rates must be > 0");
                        for (std::size_t j = i + 1; j < c.rates.size(); ++j)
                            if (std::abs(c.rates[i] - c.rates[j]) <=
                                1e-12 * std::max(c.rates[i], c.rates[j]))
                                throw std::invalid_argument(
                                    "hyperexponential claim: rates must be pairwise distinct");
                    }
                } else {
                    if (c.shape < 1) throw std::invalid_argument("erlang claim: shape must be >= 1");
                    if (!(c.rate > 0.0)) throw std::invalid_argument("erlang claim: rate must be > 0");
                }
            },
            v_);
    }

    Variant v_;
};

}  // namespace snlevy
