#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "snlevy/fluctuation.hpp"
#include "snlevy/mc/simulate.hpp"
#include "snlevy/occupation.hpp"

namespace snlevy {

inline std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Point arguments a verification target may need; only the relevant ones are
// read.
struct VerifyParams {
    double lambda = 0.0;
    double b = 0.0;
    double d = 0.0;
    double x = 0.0;
    double r = 0.0;
};

struct VerifyReport {
    std::string target;
    double formula_value = 0.0;
    mc::McEstimate mc;
    double z_score = 0.0;
    bool pass = false;
};

// Formula value vs its Monte Carlo oracle; pass means |z| <= 3.
inline VerifyReport run_verify(const LevyModel& model, const std::string& target,
                               const VerifyParams& p, mc::SimConfig cfg) {
    VerifyReport rep;
    rep.target = target;
    if (target == "thm1") {
        rep.formula_value = occupation_total_lt(model, p.lambda);
        cfg.barrier.reset();
        rep.mc = mc::simulate_occupation(model, p.lambda, cfg);
    } else if (target == "thm2") {
        rep.formula_value = occupation_until_passage_lt(model, p.lambda, p.b);
        cfg.barrier = p.b;
        rep.mc = mc::simulate_occupation(model, p.lambda, cfg);
    } else if (target == "cor1") {
        rep.formula_value = occupation_total_lt_from(model, p.lambda, p.x);
        cfg.barrier.reset();
        rep.mc = mc::simulate_occupation(model, p.lambda, cfg, p.x);
    } else if (target == "parisian") {
        rep.formula_value = parisian_ruin(model, p.d);
        rep.mc = mc::simulate_parisian(model, p.d, cfg);
    } else if (target == "ruin") {
        rep.formula_value = ruin_probability(model, p.x);
        rep.mc = mc::simulate_ruin(model, p.x, cfg);
    } else if (target == "deficit") {
        rep.formula_value = deficit_laplace(model, p.r, p.x);
        rep.mc = mc::simulate_deficit(model, p.x, p.r, cfg).laplace;
    } else {
        throw std::invalid_argument("unknown verify target: " + target);
    }
    const double diff = rep.mc.mean - rep.formula_value;
    if (rep.mc.std_error > 0.0)
        rep.z_score = diff / rep.mc.std_error;
    else
        rep.z_score = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    rep.pass = std::abs(rep.z_score) <= 3.0;
    return rep;
}

// One-line JSON with fixed key order and 17 significant digits so identical
// runs are byte-identical.
inline std::string to_json_line(const VerifyReport& r) {
    std::string out = "{\"target\":\"" + r.target + "\"";
    out += ",\"formula_value\":" + format_g17(r.formula_value);
    out += ",\"mc_mean\":" + format_g17(r.mc.mean);
    out += ",\"mc_stderr\":" + format_g17(r.mc.std_error);
    out += ",\"z_score\":" + format_g17(r.z_score);
    out += std::string(",\"pass\":") + (r.pass ? "true" : "false");
    out += std::string(",\"bias_note\":\"") + mc::to_string(r.mc.bias_note) + "\"}";
    return out;
}

}  // namespace snlevy
