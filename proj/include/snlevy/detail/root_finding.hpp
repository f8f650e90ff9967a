#pragma once

#include <cmath>
#include <stdexcept>

namespace snlevy::detail {

// Newton iteration with a bisection safeguard on a bracket [lo, hi] with
// f(lo) <= 0 <= f(hi). Throws if the residual tolerance is not met within the
// iteration budget; callers rely on never getting a silent bad root.
template <class F, class DF>
double newton_bisect(F f, DF df, double lo, double hi, double x0, double ftol,
                     int max_iter = 200) {
    double x = x0;
    if (!(x >= lo && x <= hi)) x = 0.5 * (lo + hi);
    double fx = f(x);
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fx) <= ftol) {
            // one polishing step, kept inside the bracket
            double d = df(x);
            if (d != 0.0) {
                double xn = x - fx / d;
                if (xn > lo && xn < hi) {
                    double fn = f(xn);
                    if (std::abs(fn) <= std::abs(fx)) x = xn;
                }
            }
            return x;
        }
        if (fx > 0.0)
            hi = x;
        else
            lo = x;
        double d = df(x);
        double xn = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        x = xn;
        fx = f(x);
    }
    throw std::runtime_error("newton_bisect: no convergence within iteration budget");
}

}  // namespace snlevy::detail
