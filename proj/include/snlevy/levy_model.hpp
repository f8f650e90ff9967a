#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>

#include "snlevy/claim_distribution.hpp"
#include "snlevy/detail/root_finding.hpp"

namespace snlevy {

class LevyModel;

namespace detail {

// Laplace exponent without the theta >= 0 guard, usable at complex arguments
// (the inversion backend works on vertical contours) and on the real interval
// (-min_rate, 0) where the Lundberg root lives.
template <class T>
T psi_at(const LevyModel& m, T theta);

}  // namespace detail

// Compound Poisson jump part: jumps arrive at rate beta and land as -(claim).
struct JumpPart {
    double rate;  // beta > 0, per unit time
    ClaimDistribution claim;
};

// Where the paths sit in the bounded/unbounded variation dichotomy. For the
// finite-activity families here, bounded variation <=> sigma = 0, and the
// natural drift of the piecewise-linear path is gamma itself.
struct PathRegularity {
    bool bounded_variation;
    double drift_d;
};

// Spectrally negative Levy process given by the triplet (gamma, sigma, Pi)
// with Pi restricted to compound Poisson claims:
//
//   psi(theta) = gamma*theta + sigma^2 theta^2 / 2 + beta*(E[exp(-theta C)] - 1)
//
// gamma is the uncompensated linear drift, so no truncation-function terms
// appear. Immutable after construction; all members are pure.
class LevyModel {
public:
    LevyModel(double gamma, double sigma) : gamma_(gamma), sigma_(sigma) { validate(); }
    LevyModel(double gamma, double sigma, double jump_rate, ClaimDistribution claim)
        : gamma_(gamma), sigma_(sigma), jumps_(JumpPart{jump_rate, std::move(claim)}) {
        validate();
    }

    double gamma() const { return gamma_; }
    double sigma() const { return sigma_; }
    bool has_jumps() const { return jumps_.has_value(); }
    double jump_rate() const { return jumps_ ? jumps_->rate : 0.0; }
    const ClaimDistribution& claim() const {
        if (!jumps_) throw std::logic_error("model has no jump part");
        return jumps_->claim;
    }

    // Monotone paths (pure drift) are admitted only so trivial limits can be
    // exercised; the scale-function machinery rejects them.
    bool is_monotone() const { return sigma_ == 0.0 && !jumps_; }

    PathRegularity regularity() const { return PathRegularity{sigma_ == 0.0, gamma_}; }

    double psi(double theta) const {
        if (theta < 0.0) throw std::domain_error("psi: theta must be >= 0");
        return detail::psi_at(*this, theta);
    }

    double psi_prime(double theta) const {
        if (theta < 0.0) throw std::domain_error("psi_prime: theta must be >= 0");
        double v = gamma_ + sigma_ * sigma_ * theta;
        if (jumps_) v -= jumps_->rate * jumps_->claim.laplace_d1(theta);
        return v;
    }

    double psi_second(double theta) const {
        if (theta < 0.0) throw std::domain_error("psi_second: theta must be >= 0");
        double v = sigma_ * sigma_;
        if (jumps_) v += jumps_->rate * jumps_->claim.laplace_d2(theta);
        return v;
    }

    // E[X_1]; evaluated analytically because the occupation identities
    // multiply by it directly.
    double psi_prime_at_zero() const {
        double v = gamma_;
        if (jumps_) v -= jumps_->rate * jumps_->claim.mean();
        return v;
    }

    // Right-inverse of psi: largest xi >= 0 with psi(xi) = q. Newton with a
    // bisection safeguard on a doubling bracket; strict convexity of psi
    // guarantees the bracket and local quadratic convergence.
    double phi(double q) const {
        if (q < 0.0) throw std::domain_error("phi: q must be >= 0");
        const double psi0p = psi_prime_at_zero();
        if (q == 0.0 && psi0p >= 0.0) return 0.0;

        // left end of the search interval: 0, or the minimizer of psi when
        // the exponent dips below zero first
        double lo = 0.0;
        if (psi0p < 0.0) {
            double hi_d = 1.0;
            int guard = 0;
            while (psi_prime(hi_d) <= 0.0) {
                hi_d *= 2.0;
                if (++guard > 200) throw std::runtime_error("phi: cannot bracket psi minimizer");
            }
            lo = detail::newton_bisect([&](double t) { return psi_prime(t); },
                                       [&](double t) { return psi_second(t); }, 0.0, hi_d,
                                       0.5 * hi_d, 1e-13 * std::max(1.0, std::abs(psi0p)));
        }

        double hi = std::max(1.0, 2.0 * lo + 1.0);
        int guard = 0;
        while (psi(hi) <= q) {
            hi *= 2.0;
            if (++guard > 300) throw std::runtime_error("phi: cannot bracket the root");
        }
        const double ftol = q > 0.0 ? 1e-13 * q : 1e-15;
        double root = detail::newton_bisect([&](double t) { return psi(t) - q; },
                                            [&](double t) { return psi_prime(t); }, lo, hi, hi,
                                            ftol);
        if (std::abs(psi(root) - q) > 1e-12 * std::max(q, 1e-3))
            throw std::runtime_error("phi: residual tolerance not met");
        return root;
    }

    // Integrated Levy measure nu(x) = Pi((-inf, x)) for x < 0.
    double levy_tail(double x) const {
        if (x >= 0.0) throw std::domain_error("levy_tail: x must be < 0");
        if (!jumps_) return 0.0;
        return jumps_->rate * jumps_->claim.survival(-x);
    }

    // int_{-inf}^{x} nu(u) du for x <= 0; at x = 0 this is beta*E[C].
    double levy_tail_integral(double x) const {
        if (x > 0.0) throw std::domain_error("levy_tail_integral: x must be <= 0");
        if (!jumps_) return 0.0;
        return jumps_->rate * jumps_->claim.integrated_tail(-x);
    }

private:
    void validate() const {
        if (!(sigma_ >= 0.0)) throw std::invalid_argument("LevyModel: sigma must be >= 0");
        if (jumps_ && !(jumps_->rate > 0.0))
            throw std::invalid_argument("LevyModel: jump rate must be > 0");
        // sigma = 0 means bounded variation; W(0+) = 1/d requires drift d > 0,
        // and a pure drift must point up to be a Levy insurance path at all.
        if (sigma_ == 0.0 && !(gamma_ > 0.0))
            throw std::invalid_argument("LevyModel: sigma = 0 requires gamma > 0");
    }

    double gamma_;
    double sigma_;
    std::optional<JumpPart> jumps_;
};

namespace detail {

template <class T>
T psi_at(const LevyModel& m, T theta) {
    T v = m.gamma() * theta + 0.5 * m.sigma() * m.sigma() * theta * theta;
    if (m.has_jumps()) v += m.jump_rate() * m.claim().laplace_m1(theta);
    return v;
}

template <class T>
T psi_prime_at(const LevyModel& m, T theta) {
    T v = m.gamma() + m.sigma() * m.sigma() * theta;
    if (m.has_jumps()) v -= m.jump_rate() * m.claim().laplace_d1(theta);
    return v;
}

// Lundberg adjustment coefficient R > 0: the nonzero solution of psi(-R) = 0.
// Exists whenever psi'(0+) > 0 and the paths are non-monotone; gives the
// classical bound P_x{ruin} <= exp(-R x) used for certified early stopping.
inline std::optional<double> lundberg_coefficient(const LevyModel& m) {
    if (!(m.psi_prime_at_zero() > 0.0) || m.is_monotone()) return std::nullopt;
    double left;  // search on (-left, 0), psi has a pole or grows past it
    if (m.has_jumps())
        left = m.claim().min_rate() * (1.0 - 1e-9);
    else
        left = 4.0 * m.gamma() / (m.sigma() * m.sigma());  // root at 2 gamma / sigma^2
    auto f = [&](double r) { return psi_at(m, -r); };
    // f(r) = psi(-r) is convex with f(0) = 0 and f'(0) = -psi'(0+) < 0, so it
    // dips negative and comes back up through the unique root R.
    double hi = left;
    int guard = 0;
    while (f(hi) <= 0.0) {
        hi = m.has_jumps() ? 0.5 * (hi + m.claim().min_rate()) : 2.0 * hi;
        if (++guard > 200) return std::nullopt;
    }
    double lo = std::min(1e-8, 0.5 * hi);
    guard = 0;
    while (f(lo) >= 0.0) {
        lo *= 0.5;
        if (++guard > 200) return std::nullopt;
    }
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

}  // namespace snlevy
