#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "snlevy/levy_model.hpp"
#include "snlevy/mc/philox.hpp"

namespace snlevy::mc {

enum class BiasNote { none, grid_discretization, horizon_truncation, both };

inline const char* to_string(BiasNote n) {
    switch (n) {
        case BiasNote::none: return "none";
        case BiasNote::grid_discretization: return "grid_discretization";
        case BiasNote::horizon_truncation: return "horizon_truncation";
        case BiasNote::both: return "both";
    }
    return "?";
}

struct SimConfig {
    std::int64_t n_paths = 0;
    double dt = 0.0;
    double horizon = 0.0;
    std::uint64_t seed = 0;
    std::optional<double> barrier;  // lower barrier at -barrier
    bool bridge_correction = true;  // Brownian-bridge crossing refinement per step

    void validate() const {
        if (n_paths < 100) throw std::invalid_argument("SimConfig: n_paths must be >= 100");
        if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be > 0");
        if (!(horizon > 0.0)) throw std::invalid_argument("SimConfig: horizon must be > 0");
        if (dt > horizon) throw std::invalid_argument("SimConfig: dt must be <= horizon");
        if (barrier && !(*barrier > 0.0))
            throw std::invalid_argument("SimConfig: barrier must be > 0");
    }
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_paths = 0;
    BiasNote bias_note = BiasNote::none;
};

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Paths stop once X clears this level: by the Lundberg bound exp(-R x), any
// later excursion below zero (and therefore any further occupation, ruin or
// barrier crossing) has probability below eps. One-sided, same direction as
// plain horizon truncation.
inline double stop_level(const LevyModel& m, double eps = 1e-9) {
    if (m.is_monotone()) return 0.0;
    auto r = snlevy::detail::lundberg_coefficient(m);
    if (!r) return kInf;
    return std::log(1.0 / eps) / *r;
}

inline unsigned thread_count() {
    if (const char* env = std::getenv("SNLEVY_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Static contiguous partition; results land in per-path slots, so the outcome
// does not depend on the number of workers.
template <class Fn>
void for_each_path(std::int64_t n, Fn&& fn) {
    unsigned workers = thread_count();
    if (workers <= 1 || n < 2048) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::int64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::int64_t lo = w * chunk;
        std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

inline double pairwise_sum(const double* v, std::int64_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::int64_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::int64_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline double pairwise_sum_sq_dev(const double* v, std::int64_t n, double mean) {
    if (n <= 16) {
        double s = 0.0;
        for (std::int64_t i = 0; i < n; ++i) s += (v[i] - mean) * (v[i] - mean);
        return s;
    }
    std::int64_t half = n / 2;
    return pairwise_sum_sq_dev(v, half, mean) + pairwise_sum_sq_dev(v + half, n - half, mean);
}

inline McEstimate reduce(const std::vector<double>& values, BiasNote note) {
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    double mean = pairwise_sum(values.data(), n) / static_cast<double>(n);
    double ss = pairwise_sum_sq_dev(values.data(), n, mean);
    double se = n > 1 ? std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n))) : 0.0;
    return McEstimate{mean, se, n, note};
}

// ---- bounded-variation engine: piecewise linear between jumps -------------

// Occupation of (-inf, 0] up to min(tau_{-b}, horizon, clearing x_stop);
// segment-exact, the only bias left is the truncation.
inline double bv_occupation_path(const LevyModel& m, Philox& rng, double x0, double horizon,
                                 double x_stop, const std::optional<double>& barrier) {
    const double gamma = m.gamma();
    const double beta = m.jump_rate();
    double t = 0.0, x = x0, occ = 0.0;
    double next_jump = beta > 0.0 ? rng.exponential(beta) : kInf;
    while (t < horizon) {
        if (x >= x_stop) break;
        double t_next = std::min(next_jump, horizon);
        double seg = t_next - t;
        if (x < 0.0) occ += std::min(seg, -x / gamma);
        if (t_next >= horizon) break;
        x += gamma * seg - m.claim().sample(rng);
        t = t_next;
        next_jump = t + rng.exponential(beta);
        if (barrier && x < -*barrier) break;
    }
    return occ;
}

struct RuinDraw {
    bool ruined = false;
    bool creep = false;
    double deficit = 0.0;
};

inline RuinDraw bv_ruin_path(const LevyModel& m, Philox& rng, double x0, double horizon,
                             double x_stop) {
    const double gamma = m.gamma();
    const double beta = m.jump_rate();
    double t = 0.0, x = x0;
    if (beta == 0.0) return {};  // pure positive drift never ruins from x >= 0
    double next_jump = rng.exponential(beta);
    while (t < horizon) {
        if (x >= x_stop) break;
        if (next_jump >= horizon) break;
        x += gamma * (next_jump - t) - m.claim().sample(rng);
        t = next_jump;
        next_jump = t + rng.exponential(beta);
        if (x < 0.0) return {true, false, x};
    }
    return {};
}

inline bool bv_parisian_path(const LevyModel& m, Philox& rng, double d, double horizon,
                             double x_stop) {
    const double gamma = m.gamma();
    const double beta = m.jump_rate();
    double t = 0.0, x = 0.0, exc_len = 0.0;
    double next_jump = rng.exponential(beta);
    while (true) {
        if (x >= 0.0 && x >= x_stop) return false;
        double t_next = std::min(next_jump, horizon);
        if (x < 0.0) {
            double t_up = t + (-x) / gamma;
            if (t_up <= t_next) {
                // excursion ends; its clock rings with probability 1 - e^{-d len}
                exc_len += t_up - t;
                if (rng.uniform() < -std::expm1(-d * exc_len)) return true;
                exc_len = 0.0;
            } else {
                exc_len += t_next - t;
            }
        }
        if (t_next >= horizon) {
            // truncated mid-excursion: decide on the accumulated length only
            if (x < 0.0 && exc_len > 0.0 && rng.uniform() < -std::expm1(-d * exc_len)) return true;
            return false;
        }
        x += gamma * (t_next - t) - m.claim().sample(rng);
        t = t_next;
        next_jump = t + rng.exponential(beta);
    }
}

// ---- Brownian / jump-diffusion grid engine --------------------------------

// Above this level the grid is allowed to coarsen: the chance of reaching
// zero inside one coarse step stays below ~exp(-40), so the left-endpoint
// estimator on the dt-lattice is unaffected while the time spent far from the
// boundary costs only logarithmically many steps.
inline double safe_level(const LevyModel& m) { return std::max(2.0, 2.5 * m.sigma()); }

inline double coarse_step(double x, double sigma, double gamma) {
    double dx = x / (9.0 * sigma);  // nine sigmas between the endpoint and zero
    double dt = dx * dx;
    if (gamma < 0.0) dt = std::min(dt, -0.25 * x / gamma);
    return std::clamp(dt, 0.02, 1000.0);
}

// One path of the jump-diffusion, evaluated simultaneously on up to
// kMaxLevels nested dt-lattices sharing a single Brownian path and a single
// jump skeleton. The coupling makes dt-refinement studies nearly
// noise-free: level differences are pure discretization effects.
inline constexpr std::size_t kMaxLevels = 4;

struct GridParams {
    double x0 = 0.0;
    double horizon = 0.0;
    double x_stop = kInf;
    std::optional<double> barrier;
    bool bridge = true;
    double dt_fine = 0.0;
    std::array<std::int64_t, kMaxLevels> ratio{};  // level dt = ratio * dt_fine
    std::size_t levels = 0;
};

inline void grid_occupation_path(const LevyModel& m, const GridParams& p, std::uint64_t seed,
                                 std::int64_t path, double* occ_out) {
    const double gamma = m.gamma();
    const double sigma = m.sigma();
    const double s2 = sigma * sigma;
    const double beta = m.jump_rate();
    const double safe = safe_level(m);

    Philox rng(seed, static_cast<std::uint64_t>(path), 0);
    struct Level {
        double x, occ, acc, commit_t;
        bool alive;
    };
    std::array<Level, kMaxLevels> lv;
    std::array<Philox, kMaxLevels> aux{Philox(0, 0), Philox(0, 0), Philox(0, 0), Philox(0, 0)};
    for (std::size_t l = 0; l < p.levels; ++l) {
        lv[l] = Level{p.x0, 0.0, 0.0, 0.0, true};
        aux[l] = Philox(seed, static_cast<std::uint64_t>(path), static_cast<std::uint32_t>(1 + l));
    }

    double t = 0.0;
    std::int64_t k = 0;  // completed fine-lattice points
    double next_jump = beta > 0.0 ? rng.exponential(beta) : kInf;

    while (t < p.horizon) {
        double mx = kInf;
        for (std::size_t l = 0; l < p.levels; ++l)
            if (lv[l].alive) mx = std::min(mx, lv[l].x);
        if (mx == kInf) break;      // every level crossed the barrier
        if (mx >= p.x_stop) break;  // nothing left that can contribute

        double t_lattice = static_cast<double>(k + 1) * p.dt_fine;
        while (t_lattice <= t) {  // resync after coarse wandering
            k = static_cast<std::int64_t>(std::floor(t / p.dt_fine));
            t_lattice = static_cast<double>(k + 1) * p.dt_fine;
            if (t_lattice <= t) ++k, t_lattice = static_cast<double>(k + 1) * p.dt_fine;
        }

        enum { kLattice, kCoarse, kJump, kHorizon } kind;
        double t_next;
        if (mx < safe) {
            t_next = t_lattice;
            kind = kLattice;
        } else {
            t_next = t + coarse_step(mx, sigma, gamma);
            kind = kCoarse;
        }
        if (next_jump <= t_next) {
            t_next = next_jump;
            kind = kJump;
        }
        if (p.horizon <= t_next) {
            t_next = p.horizon;
            kind = kHorizon;
        }

        const double h = t_next - t;
        const double delta = gamma * h + sigma * std::sqrt(h) * rng.normal();
        double claim = 0.0;
        if (kind == kJump) {
            claim = m.claim().sample(rng);
            next_jump = t_next + rng.exponential(beta);
        }
        if (kind == kLattice) ++k;

        for (std::size_t l = 0; l < p.levels; ++l) {
            Level& L = lv[l];
            if (!L.alive) continue;
            L.acc += delta;
            bool commit = kind != kLattice || (k % p.ratio[l]) == 0;
            if (!commit) continue;
            const double len = t_next - L.commit_t;
            if (L.x <= 0.0) L.occ += len;  // left-endpoint rule on this level's grid
            double x2 = L.x + L.acc;
            if (p.barrier) {
                const double b = *p.barrier;
                if (x2 < -b) {
                    L.alive = false;
                } else if (p.bridge && L.x > -b) {
                    double expo = -2.0 * (L.x + b) * (x2 + b) / (s2 * len);
                    if (expo > -36.0 && aux[l].uniform() < std::exp(expo)) L.alive = false;
                }
            }
            if (kind == kJump && L.alive) {
                x2 -= claim;
                if (p.barrier && x2 < -*p.barrier) L.alive = false;
            }
            L.x = x2;
            L.acc = 0.0;
            L.commit_t = t_next;
        }
        t = t_next;
    }
    for (std::size_t l = 0; l < p.levels; ++l) occ_out[l] = lv[l].occ;
}

inline RuinDraw grid_ruin_path(const LevyModel& m, Philox& rng, Philox& aux, double x0, double dt,
                               double horizon, double x_stop, bool bridge) {
    const double gamma = m.gamma();
    const double sigma = m.sigma();
    const double s2 = sigma * sigma;
    const double beta = m.jump_rate();
    const double safe = safe_level(m);

    double t = 0.0, x = x0;
    std::int64_t k = 0;
    double next_jump = beta > 0.0 ? rng.exponential(beta) : kInf;
    while (t < horizon) {
        if (x >= x_stop) break;
        double t_lattice = static_cast<double>(k + 1) * dt;
        while (t_lattice <= t) {
            k = static_cast<std::int64_t>(std::floor(t / dt));
            t_lattice = static_cast<double>(k + 1) * dt;
            if (t_lattice <= t) ++k, t_lattice = static_cast<double>(k + 1) * dt;
        }
        bool coarse = x >= safe;
        double t_next = coarse ? t + coarse_step(x, sigma, gamma) : t_lattice;
        bool is_jump = false;
        if (next_jump <= t_next) {
            t_next = next_jump;
            is_jump = true;
        }
        if (horizon <= t_next) {
            t_next = horizon;
            is_jump = false;
        }
        const double h = t_next - t;
        if (!coarse && !is_jump && t_next == t_lattice) ++k;
        double x2 = x + gamma * h + sigma * std::sqrt(h) * rng.normal();
        if (x2 < 0.0) return {true, true, 0.0};  // continuous crossing: creeping
        if (bridge) {
            // at x = 0 the exponent vanishes and the bridge crosses surely,
            // matching W(0+) = 0 for sigma > 0
            double expo = -2.0 * x * x2 / (s2 * h);
            if (expo > -36.0 && aux.uniform() < std::exp(expo)) return {true, true, 0.0};
        }
        if (is_jump) {
            x2 -= m.claim().sample(rng);
            next_jump = t_next + rng.exponential(beta);
            if (x2 < 0.0) return {true, false, x2};
        }
        x = x2;
        t = t_next;
    }
    return {};
}

}  // namespace detail

// Monte Carlo estimate of E_x[exp(-lambda * occupation of (-inf,0] up to
// tau_{-b} or infinity)]. Exact-skeleton simulation: Poisson jump times and
// claim sizes are exact; with sigma > 0 the Brownian part lives on the merged
// grid of jump times and the dt-lattice, with occupation accumulated by the
// left-endpoint rule.
inline McEstimate simulate_occupation(const LevyModel& model, double lambda, const SimConfig& cfg,
                                      double start_x = 0.0) {
    cfg.validate();
    if (lambda < 0.0) throw std::invalid_argument("simulate_occupation: lambda must be >= 0");
    if (!cfg.barrier && !(model.psi_prime_at_zero() > 0.0))
        throw std::invalid_argument(
            "simulate_occupation: without a barrier the occupation time is almost surely "
            "infinite unless psi'(0+) > 0");
    if (lambda == 0.0) return McEstimate{1.0, 0.0, cfg.n_paths, BiasNote::none};

    std::vector<double> values(static_cast<std::size_t>(cfg.n_paths));
    const double x_stop = detail::stop_level(model);

    if (model.sigma() == 0.0) {
        detail::for_each_path(cfg.n_paths, [&](std::int64_t i) {
            Philox rng(cfg.seed, static_cast<std::uint64_t>(i), 0);
            double occ = detail::bv_occupation_path(model, rng, start_x, cfg.horizon, x_stop,
                                                    cfg.barrier);
            values[static_cast<std::size_t>(i)] = std::exp(-lambda * occ);
        });
        return detail::reduce(values, BiasNote::horizon_truncation);
    }

    detail::GridParams p;
    p.x0 = start_x;
    p.horizon = cfg.horizon;
    p.x_stop = x_stop;
    p.barrier = cfg.barrier;
    p.bridge = cfg.bridge_correction;
    p.dt_fine = cfg.dt;
    p.ratio[0] = 1;
    p.levels = 1;
    detail::for_each_path(cfg.n_paths, [&](std::int64_t i) {
        double occ = 0.0;
        detail::grid_occupation_path(model, p, cfg.seed, i, &occ);
        values[static_cast<std::size_t>(i)] = std::exp(-lambda * occ);
    });
    return detail::reduce(values, BiasNote::both);
}

// Coupled multi-resolution variant: all dt levels ride one Brownian path and
// one jump skeleton per path index, so differences between the returned
// estimates are discretization effects, not Monte Carlo noise. Each dt must
// be an integer multiple of the smallest.
inline std::vector<McEstimate> simulate_occupation_multilevel(const LevyModel& model,
                                                              double lambda, const SimConfig& cfg,
                                                              const std::vector<double>& dts,
                                                              double start_x = 0.0) {
    cfg.validate();
    if (model.sigma() == 0.0)
        throw std::invalid_argument(
            "simulate_occupation_multilevel: bounded-variation paths are simulated exactly; "
            "there is no dt to refine");
    if (dts.empty() || dts.size() > detail::kMaxLevels)
        throw std::invalid_argument("simulate_occupation_multilevel: need 1..4 dt levels");
    if (lambda <= 0.0) throw std::invalid_argument("simulate_occupation_multilevel: lambda must be > 0");
    if (!cfg.barrier && !(model.psi_prime_at_zero() > 0.0))
        throw std::invalid_argument("simulate_occupation_multilevel: needs psi'(0+) > 0 or a barrier");

    double dt_fine = *std::min_element(dts.begin(), dts.end());
    detail::GridParams p;
    p.x0 = start_x;
    p.horizon = cfg.horizon;
    p.x_stop = detail::stop_level(model);
    p.barrier = cfg.barrier;
    p.bridge = cfg.bridge_correction;
    p.dt_fine = dt_fine;
    p.levels = dts.size();
    for (std::size_t l = 0; l < dts.size(); ++l) {
        double ratio = dts[l] / dt_fine;
        double rounded = std::round(ratio);
        if (std::abs(ratio - rounded) > 1e-9 || rounded < 1.0)
            throw std::invalid_argument(
                "simulate_occupation_multilevel: every dt must be an integer multiple of the "
                "smallest dt");
        p.ratio[l] = static_cast<std::int64_t>(rounded);
    }

    std::vector<std::vector<double>> values(dts.size());
    for (auto& v : values) v.resize(static_cast<std::size_t>(cfg.n_paths));
    detail::for_each_path(cfg.n_paths, [&](std::int64_t i) {
        std::array<double, detail::kMaxLevels> occ{};
        detail::grid_occupation_path(model, p, cfg.seed, i, occ.data());
        for (std::size_t l = 0; l < dts.size(); ++l)
            values[l][static_cast<std::size_t>(i)] = std::exp(-lambda * occ[l]);
    });

    std::vector<McEstimate> out;
    out.reserve(dts.size());
    for (auto& v : values) out.push_back(detail::reduce(v, BiasNote::both));
    return out;
}

// Ruin frequency before the horizon.
inline McEstimate simulate_ruin(const LevyModel& model, double x, const SimConfig& cfg) {
    cfg.validate();
    if (x < 0.0) throw std::invalid_argument("simulate_ruin: x must be >= 0");
    std::vector<double> values(static_cast<std::size_t>(cfg.n_paths));
    const double x_stop = detail::stop_level(model);
    if (model.sigma() == 0.0) {
        detail::for_each_path(cfg.n_paths, [&](std::int64_t i) {
            Philox rng(cfg.seed, static_cast<std::uint64_t>(i), 0);
            values[static_cast<std::size_t>(i)] =
                detail::bv_ruin_path(model, rng, x, cfg.horizon, x_stop).ruined ? 1.0 : 0.0;
        });
        return detail::reduce(values, BiasNote::horizon_truncation);
    }
    detail::for_each_path(cfg.n_paths, [&](std::int64_t i) {
        Philox rng(cfg.seed, static_cast<std::uint64_t>(i), 0);
        Philox aux(cfg.seed, static_cast<std::uint64_t>(i), 1);
        values[static_cast<std::size_t>(i)] =
            detail::grid_ruin_path(model, rng, aux, x, cfg.dt, cfg.horizon, x_stop,
                                   cfg.bridge_correction)
                    .ruined
                ? 1.0
                : 0.0;
    });
    return detail::reduce(values, BiasNote::both);
}

// Deficit at ruin: histogram over fixed bins on [z_min, 0], creeping
// frequency, and the transform estimate E_x[e^{r X_tau}; ruin].
struct DeficitSim {
    McEstimate laplace;
    double ruin_freq = 0.0;
    double creep_freq = 0.0;
    double z_min = 0.0;
    std::vector<std::int64_t> bins;  // equal width on [z_min, 0]; overshoots clamp into bin 0
    std::int64_t n_jump_ruined = 0;
};

inline DeficitSim simulate_deficit(const LevyModel& model, double x, double r,
                                   const SimConfig& cfg, int n_bins = 60, double z_min = -6.0) {
    cfg.validate();
    if (x < 0.0 || !(r > 0.0))
        throw std::invalid_argument("simulate_deficit: requires x >= 0 and r > 0");
    if (n_bins < 1 || !(z_min < 0.0))
        throw std::invalid_argument("simulate_deficit: requires n_bins >= 1 and z_min < 0");

    const double x_stop = detail::stop_level(model);
    std::vector<double> values(static_cast<std::size_t>(cfg.n_paths));
    std::vector<double> deficits(static_cast<std::size_t>(cfg.n_paths));
    std::vector<signed char> kind(static_cast<std::size_t>(cfg.n_paths));  // 0 none, 1 creep, 2 jump

    detail::for_each_path(cfg.n_paths, [&](std::int64_t i) {
        Philox rng(cfg.seed, static_cast<std::uint64_t>(i), 0);
        detail::RuinDraw d;
        if (model.sigma() == 0.0) {
            d = detail::bv_ruin_path(model, rng, x, cfg.horizon, x_stop);
        } else {
            Philox aux(cfg.seed, static_cast<std::uint64_t>(i), 1);
            d = detail::grid_ruin_path(model, rng, aux, x, cfg.dt, cfg.horizon, x_stop,
                                       cfg.bridge_correction);
        }
        auto idx = static_cast<std::size_t>(i);
        values[idx] = d.ruined ? std::exp(r * d.deficit) : 0.0;
        deficits[idx] = d.deficit;
        kind[idx] = d.ruined ? (d.creep ? 1 : 2) : 0;
    });

    DeficitSim out;
    out.laplace = detail::reduce(values, model.sigma() == 0.0 ? BiasNote::horizon_truncation
                                                              : BiasNote::both);
    out.z_min = z_min;
    out.bins.assign(static_cast<std::size_t>(n_bins), 0);
    std::int64_t ruined = 0, creeps = 0;
    const double width = -z_min / n_bins;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (kind[i] == 0) continue;
        ++ruined;
        if (kind[i] == 1) {
            ++creeps;
            continue;
        }
        ++out.n_jump_ruined;
        int b = static_cast<int>(std::floor((deficits[i] - z_min) / width));
        b = std::clamp(b, 0, n_bins - 1);
        out.bins[static_cast<std::size_t>(b)] += 1;
    }
    out.ruin_freq = static_cast<double>(ruined) / static_cast<double>(cfg.n_paths);
    out.creep_freq = static_cast<double>(creeps) / static_cast<double>(cfg.n_paths);
    return out;
}

// Parisian ruin frequency with per-excursion exponential clocks of rate d.
// Only bounded-variation paths: their excursions below zero are detected
// exactly; a Brownian grid cannot do that, so sigma > 0 is out of scope here.
inline McEstimate simulate_parisian(const LevyModel& model, double d, const SimConfig& cfg) {
    cfg.validate();
    if (model.sigma() != 0.0)
        throw std::domain_error(
            "simulate_parisian: requires a bounded-variation model (sigma = 0); excursions on a "
            "Brownian grid are not exact");
    if (!model.has_jumps()) throw std::domain_error("simulate_parisian: model has no jumps, ruin is impossible");
    if (!(model.psi_prime_at_zero() > 0.0))
        throw std::domain_error("simulate_parisian: requires the net profit condition psi'(0+) > 0");
    if (!(d > 0.0)) throw std::invalid_argument("simulate_parisian: d must be > 0");

    const double x_stop = detail::stop_level(model);
    std::vector<double> values(static_cast<std::size_t>(cfg.n_paths));
    detail::for_each_path(cfg.n_paths, [&](std::int64_t i) {
        Philox rng(cfg.seed, static_cast<std::uint64_t>(i), 0);
        values[static_cast<std::size_t>(i)] =
            detail::bv_parisian_path(model, rng, d, cfg.horizon, x_stop) ? 1.0 : 0.0;
    });
    return detail::reduce(values, BiasNote::horizon_truncation);
}

}  // namespace snlevy::mc
