// Command-line front end: evaluate formulas, sweep them over a grid, and
// verify them against the Monte Carlo oracle.
//
//   snlevy eval occ_total --config model.json --lambda 2
//   snlevy sweep parisian --config model.json --axis d
//                 --min 0.1 --max 5 --points 50 --out sweep.csv
//   snlevy verify thm1 --config model.json --lambda 1
//                 --seed 42 --paths 1000000
//
// Exit codes: 0 ok, 2 config parse error, 3 domain/hypothesis violation,
// 4 verification failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "snlevy/snlevy.hpp"

namespace {

struct PointArgs {
    std::optional<double> theta, q, lambda, x, b, d, r;
};

double need(const std::optional<double>& v, const char* name) {
    if (!v) throw std::domain_error(std::string("missing required argument --") + name);
    return *v;
}

struct EvalResult {
    double value;
    std::string backend;
};

// backend the scale-function machinery would pick for this model
std::string backend_name(const snlevy::LevyModel& model) {
    return to_string(snlevy::ScaleEvaluator::make(model, 0.0).backend());
}

EvalResult evaluate_quantity(const snlevy::LevyModel& model, const std::string& quantity,
                             const PointArgs& a) {
    using namespace snlevy;
    if (quantity == "psi") return {model.psi(need(a.theta, "theta")), "analytic"};
    if (quantity == "phi") return {model.phi(need(a.q, "q")), "analytic"};
    if (quantity == "W" || quantity == "Z" || quantity == "Wprime") {
        auto ev = ScaleEvaluator::make(model, a.q.value_or(0.0));
        double x = need(a.x, "x");
        double v = quantity == "W" ? ev.w(x) : quantity == "Z" ? ev.z(x) : ev.w_prime(x);
        return {v, to_string(ev.backend())};
    }
    if (quantity == "ruin") return {ruin_probability(model, need(a.x, "x")), backend_name(model)};
    if (quantity == "deficit_laplace")
        return {deficit_laplace(model, need(a.r, "r"), need(a.x, "x")), backend_name(model)};
    if (quantity == "occ_total") return {occupation_total_lt(model, need(a.lambda, "lambda")), "analytic"};
    if (quantity == "occ_from_x")
        return {occupation_total_lt_from(model, need(a.lambda, "lambda"), need(a.x, "x")),
                backend_name(model)};
    if (quantity == "occ_barrier")
        return {occupation_until_passage_lt(model, need(a.lambda, "lambda"), need(a.b, "b")),
                backend_name(model)};
    if (quantity == "parisian")
        return {parisian_ruin(model, need(a.d, "d"), a.x.value_or(0.0)),
                a.x.value_or(0.0) == 0.0 ? "analytic" : backend_name(model)};
    throw std::domain_error("unknown quantity: " + quantity);
}

std::string inputs_json(const PointArgs& a) {
    std::string out = "{";
    bool first = true;
    auto put = [&](const char* k, const std::optional<double>& v) {
        if (!v) return;
        if (!first) out += ",";
        first = false;
        out += std::string("\"") + k + "\":" + snlevy::format_g17(*v);
    };
    put("theta", a.theta);
    put("q", a.q);
    put("lambda", a.lambda);
    put("x", a.x);
    put("b", a.b);
    put("d", a.d);
    put("r", a.r);
    out += "}";
    return out;
}

int run_eval(const snlevy::LevyModel& model, const std::string& quantity, const PointArgs& a) {
    EvalResult res = evaluate_quantity(model, quantity, a);
    std::string line = "{\"quantity\":\"" + quantity + "\",\"inputs\":" + inputs_json(a) +
                       ",\"value\":" + snlevy::format_g17(res.value) + ",\"backend\":\"" +
                       res.backend + "\"}";
    std::cout << line << "\n";
    return 0;
}

int run_sweep(const snlevy::LevyModel& model, const std::string& quantity, const std::string& axis,
              double lo, double hi, int points, const std::string& out_path, PointArgs a) {
    if (points < 2) throw std::domain_error("sweep: needs at least 2 points");
    if (!(hi > lo)) throw std::domain_error("sweep: needs max > min");
    std::ofstream out(out_path);
    if (!out) throw snlevy::ConfigError("cannot open output file: " + out_path);
    out << "axis,value,backend\n";
    for (int i = 0; i < points; ++i) {
        double v = lo + (hi - lo) * i / (points - 1);
        if (axis == "lambda")
            a.lambda = v;
        else if (axis == "x")
            a.x = v;
        else if (axis == "b")
            a.b = v;
        else if (axis == "d")
            a.d = v;
        else if (axis == "q")
            a.q = v;
        else
            throw std::domain_error("sweep: axis must be one of lambda, x, b, d, q");
        EvalResult res = evaluate_quantity(model, quantity, a);
        out << snlevy::format_g17(v) << "," << snlevy::format_g17(res.value) << "," << res.backend
            << "\n";
    }
    return 0;
}

int run_verify(const snlevy::LevyModel& model, const std::string& target, const PointArgs& a,
               snlevy::mc::SimConfig cfg) {
    snlevy::VerifyParams p;
    if (target == "thm1" || target == "thm2" || target == "cor1") p.lambda = need(a.lambda, "lambda");
    if (target == "thm2") p.b = need(a.b, "b");
    if (target == "cor1" || target == "ruin" || target == "deficit") p.x = need(a.x, "x");
    if (target == "parisian") p.d = need(a.d, "d");
    if (target == "deficit") p.r = need(a.r, "r");
    snlevy::VerifyReport rep = snlevy::run_verify(model, target, p, cfg);
    std::cout << snlevy::to_json_line(rep) << "\n";
    return rep.pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scale functions and occupation times of spectrally negative Levy processes"};
    app.require_subcommand(1);

    std::string config_path, quantity, axis, target, out_path = "sweep.csv";
    PointArgs a;
    double sweep_min = 0.0, sweep_max = 1.0;
    int sweep_points = 2;
    snlevy::mc::SimConfig cfg;
    cfg.n_paths = 100000;
    cfg.dt = 1e-3;
    cfg.horizon = 0.0;  // 0 = derive from the model below
    cfg.seed = 1;

    auto add_point_args = [&](CLI::App* cmd) {
        cmd->add_option("--theta", a.theta);
        cmd->add_option("--q", a.q);
        cmd->add_option("--lambda", a.lambda);
        cmd->add_option("--x", a.x);
        cmd->add_option("--b", a.b);
        cmd->add_option("--d", a.d);
        cmd->add_option("--r", a.r);
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate one quantity at a point");
    eval->add_option("quantity", quantity, "psi|phi|W|Z|Wprime|ruin|deficit_laplace|occ_total|occ_from_x|occ_barrier|parisian")
        ->required();
    eval->add_option("--config", config_path)->required();
    add_point_args(eval);

    CLI::App* sweep = app.add_subcommand("sweep", "sweep one quantity along an axis into a CSV");
    sweep->add_option("quantity", quantity)->required();
    sweep->add_option("--config", config_path)->required();
    sweep->add_option("--axis", axis, "lambda|x|b|d|q")->required();
    sweep->add_option("--min", sweep_min)->required();
    sweep->add_option("--max", sweep_max)->required();
    sweep->add_option("--points", sweep_points)->required();
    sweep->add_option("--out", out_path);
    add_point_args(sweep);

    CLI::App* verify = app.add_subcommand("verify", "check a formula against the Monte Carlo oracle");
    verify->add_option("target", target, "thm1|thm2|cor1|parisian|ruin|deficit")->required();
    verify->add_option("--config", config_path)->required();
    verify->add_option("--seed", cfg.seed);
    verify->add_option("--paths", cfg.n_paths);
    verify->add_option("--dt", cfg.dt);
    verify->add_option("--horizon", cfg.horizon);
    add_point_args(verify);

    CLI11_PARSE(app, argc, argv);

    try {
        snlevy::LevyModel model = snlevy::load_model_config(config_path);
        if (eval->parsed()) return run_eval(model, quantity, a);
        if (sweep->parsed())
            return run_sweep(model, quantity, axis, sweep_min, sweep_max, sweep_points, out_path, a);
        if (verify->parsed()) {
            if (cfg.horizon == 0.0) {
                double drift = model.psi_prime_at_zero();
                cfg.horizon = drift > 0.0 ? 200.0 / drift : 400.0;
            }
            return run_verify(model, target, a, cfg);
        }
    } catch (const snlevy::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
