#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace snlevy {

// Numerical Bromwich inversion, Euler-summation variant of the Abate-Whitt
// framework. transform maps complex s to complex F(s); returns f(t) for t > 0.
// m = 25 gives close to full double precision on smooth bounded targets.
template <class F>
double invert_laplace_euler(F&& transform, double t, int m = 25) {
    if (!(t > 0.0)) throw std::domain_error("invert_laplace_euler: t must be > 0");
    static const double pi = std::acos(-1.0);
    const int n = 2 * m + 1;

    // Euler smoothing weights: xi_0 = 1/2, xi_k = 1 up to m, then a binomial
    // tail folding down to 2^-m.
    std::vector<double> xi(static_cast<std::size_t>(n), 1.0);
    xi[0] = 0.5;
    const double scale = std::ldexp(1.0, -m);
    xi[static_cast<std::size_t>(2 * m)] = scale;
    double binom = 1.0;  // C(m, k) built up iteratively
    for (int k = 1; k <= m - 1; ++k) {
        binom = binom * (m - k + 1) / k;
        xi[static_cast<std::size_t>(2 * m - k)] =
            xi[static_cast<std::size_t>(2 * m - k + 1)] + scale * binom;
    }

    const double a = m * std::log(10.0) / 3.0;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        std::complex<double> s(a / t, pi * k / t);
        double term = xi[static_cast<std::size_t>(k)] * transform(s).real();
        sum += (k % 2 == 0) ? term : -term;
    }
    return std::pow(10.0, m / 3.0) * sum / t;
}

// Gaver-Stehfest inversion on the real axis; n even. Caps out near 7-8
// correct digits in double precision, which is exactly why it serves as the
// independent cross-check rather than the production path.
template <class F>
double invert_laplace_gaver_stehfest(F&& transform, double t, int n = 14) {
    if (!(t > 0.0)) throw std::domain_error("invert_laplace_gaver_stehfest: t must be > 0");
    if (n % 2 != 0 || n < 2) throw std::invalid_argument("invert_laplace_gaver_stehfest: n must be even");
    const int half = n / 2;
    const double ln2 = std::log(2.0);

    auto fact = [](int k) {
        long double f = 1.0L;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };

    double sum = 0.0;
    for (int k = 1; k <= n; ++k) {
        long double vk = 0.0L;
        int j_lo = (k + 1) / 2;
        int j_hi = std::min(k, half);
        for (int j = j_lo; j <= j_hi; ++j) {
            long double term = std::pow(static_cast<long double>(j), half) * fact(2 * j);
            term /= fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k);
            vk += term;
        }
        if ((half + k) % 2 != 0) vk = -vk;
        sum += static_cast<double>(vk) * transform(k * ln2 / t);
    }
    return sum * ln2 / t;
}

}  // namespace snlevy
