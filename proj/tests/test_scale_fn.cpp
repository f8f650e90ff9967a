#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "snlevy/detail/quadrature.hpp"
#include "snlevy/scale_evaluator.hpp"
#include "test_models.hpp"

using namespace snlevy;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<LevyModel> all_models() {
    return {test_models::bm_std(),     test_models::bm_drift(), test_models::cramer_exp(),
            test_models::jump_diff_exp(), test_models::hyper_jd(), test_models::hyper_bv(),
            test_models::erlang_bv(),  test_models::erlang_jd()};
}

}  // namespace

TEST_CASE("backend selection", "[scale_fn]") {
    CHECK(ScaleEvaluator::make(test_models::bm_std(), 2.0).backend() ==
          ScaleBackend::closed_form_brownian);
    CHECK(ScaleEvaluator::make(test_models::cramer_exp(), 0.0).backend() ==
          ScaleBackend::partial_fraction);
    CHECK(ScaleEvaluator::make(test_models::erlang_jd(), 1.0).backend() ==
          ScaleBackend::partial_fraction);
    CHECK_THROWS_AS(ScaleEvaluator::make_with_backend(test_models::cramer_exp(), 1.0,
                                                      ScaleBackend::closed_form_brownian),
                    std::invalid_argument);
    CHECK_THROWS_AS(ScaleEvaluator::make(test_models::pure_drift(), 1.0), std::domain_error);
    CHECK_THROWS_AS(ScaleEvaluator::make(test_models::bm_std(), -0.5), std::domain_error);

    // partial-fraction roots satisfy psi(zeta) = q; exactly one equals Phi(q)
    for (double q : {0.0, 0.5, 2.0}) {
        auto ev = ScaleEvaluator::make(test_models::erlang_jd(), q);
        REQUIRE(ev.has_exp_sum());
        int at_phi = 0;
        for (const auto& zeta : ev.exp_roots()) {
            CHECK(std::abs(detail::psi_at(ev.model(), zeta) - q) <= 1e-10 * std::max(1.0, q));
            if (std::abs(zeta - detail::Complex(ev.phi_q(), 0.0)) < 1e-9) ++at_phi;
        }
        CHECK(at_phi == 1);
    }
}

TEST_CASE("brownian closed forms", "[scale_fn]") {
    // standard BM: W^(lambda)(x) = sqrt(2/lambda) sinh(x sqrt(2 lambda))
    auto ev = ScaleEvaluator::make(test_models::bm_std(), 2.0);
    CHECK_THAT(ev.w(1.0), WithinRel(std::sinh(2.0), 1e-13));  // sqrt(2/2) sinh(1*2)
    CHECK_THAT(ev.w(1.0), WithinRel(3.626860407847019, 1e-13));

    // with drift: (2/sqrt(m^2+2 lambda sigma^2)) e^{-(m/sigma^2) x} sinh(x sqrt(...)/sigma^2)
    const double m = 1.0, s2 = 2.0, lam = 0.7, x = 1.3;
    auto evd = ScaleEvaluator::make(test_models::bm_drift(), lam);
    const double delta = std::sqrt(m * m + 2.0 * lam * s2);
    CHECK_THAT(evd.w(x),
               WithinRel((2.0 / delta) * std::exp(-m / s2 * x) * std::sinh(x / s2 * delta), 1e-13));

    // Z^(lambda)(x) = cosh(x sqrt(2 lambda)) for standard BM
    auto ev05 = ScaleEvaluator::make(test_models::bm_std(), 0.5);
    for (double xx : {0.3, 1.0, 2.2}) CHECK_THAT(ev05.z(xx), WithinRel(std::cosh(xx), 1e-12));

    // W^(lambda)'(x) = 2 cosh(x sqrt(2 lambda)); frozen from the derivative of
    // the sinh form, cross-checked against central differences below
    CHECK_THAT(ev05.w_prime(1.0), WithinRel(3.0861612696304874, 1e-12));

    // q = 0 degenerate pair: W(x) = 2x/sigma^2 and W(x) = (1-e^{-2mx/s2})/m
    auto ev0 = ScaleEvaluator::make(test_models::bm_std(), 0.0);
    CHECK_THAT(ev0.w(1.7), WithinRel(2.0 * 1.7, 1e-13));
    auto evd0 = ScaleEvaluator::make(test_models::bm_drift(), 0.0);
    CHECK_THAT(evd0.w(2.0), WithinRel(1.0 - std::exp(-2.0), 1e-13));
}

TEST_CASE("exponential claims at q=0: the classical ruin form", "[scale_fn]") {
    // gamma=1, beta=1, Exp(2): W(x) = (1/psi'(0+)) (1 - ruin(x)) = 2 - e^{-x}
    auto ev = ScaleEvaluator::make(test_models::cramer_exp(), 0.0);
    CHECK(ev.backend() == ScaleBackend::partial_fraction);
    CHECK_THAT(ev.w(0.5), WithinRel(1.3934693402873666, 1e-12));
    CHECK_THAT(ev.w(1.0), WithinRel(1.6321205588285577, 1e-12));
    CHECK_THAT(ev.w(2.0), WithinRel(1.8646647167633872, 1e-12));

    // oracle: numerical Bromwich inversion of the same transform
    auto nv = ScaleEvaluator::make_with_backend(test_models::cramer_exp(), 0.0,
                                                ScaleBackend::numerical_inversion);
    for (double x : {0.5, 1.0, 2.0}) CHECK_THAT(nv.w(x), WithinRel(ev.w(x), 1e-8));
}

TEST_CASE("vanishing on the negative half-line and initial values", "[scale_fn]") {
    for (const auto& model : all_models()) {
        for (double q : {0.0, 0.5, 2.0}) {
            auto ev = ScaleEvaluator::make(model, q);
            CHECK(ev.w(-1.0) == 0.0);
            CHECK(ev.w(-1e-12) == 0.0);
            CHECK(ev.z(-1.0) == 1.0);
            CHECK(ev.w_bar(-2.0) == 0.0);
            if (model.sigma() > 0.0) {
                CHECK(ev.w_at_zero() == 0.0);
                CHECK_THAT(ev.w_prime_at_zero(),
                           WithinRel(2.0 / (model.sigma() * model.sigma()), 1e-13));
                // the exponential sum reproduces the table entries in the limit
                CHECK_THAT(ev.w(1e-9), WithinAbs(0.0, 1e-8));
            } else {
                CHECK_THAT(ev.w_at_zero(), WithinRel(1.0 / model.gamma(), 1e-13));
                CHECK_THAT(ev.w_prime_at_zero(),
                           WithinRel((model.jump_rate() + q) / (model.gamma() * model.gamma()),
                                     1e-13));
                CHECK_THAT(ev.w(1e-10), WithinRel(ev.w_at_zero(), 1e-7));
            }
        }
    }
}

TEST_CASE("monotone increasing and positive", "[scale_fn]") {
    for (const auto& model : all_models()) {
        for (double q : {0.0, 0.7, 3.0}) {
            auto ev = ScaleEvaluator::make(model, q);
            double prev = 0.0;
            for (int i = 1; i <= 40; ++i) {
                double x = 0.25 * i;
                double wx = ev.w(x);
                CHECK(wx > prev);
                prev = wx;
            }
        }
    }
}

TEST_CASE("w_prime matches central differences", "[scale_fn]") {
    const double h = 1e-6;
    for (const auto& model : all_models()) {
        for (double q : {0.0, 0.5, 2.0}) {
            auto ev = ScaleEvaluator::make(model, q);
            for (double x : {0.4, 1.0, 3.0}) {
                double fd = (ev.w(x + h) - ev.w(x - h)) / (2.0 * h);
                CHECK_THAT(ev.w_prime(x), WithinRel(fd, 1e-7));
            }
        }
    }
}

TEST_CASE("w_bar integrates w", "[scale_fn]") {
    for (const auto& model : all_models()) {
        for (double q : {0.0, 1.5}) {
            auto ev = ScaleEvaluator::make(model, q);
            for (double x : {0.5, 2.0, 6.0}) {
                double quad = detail::integrate([&](double t) { return ev.w(t); }, 0.0, x, 1e-12);
                CHECK_THAT(ev.w_bar(x), WithinRel(quad, 1e-9));
            }
            CHECK(ev.z(3.0) == 1.0 + q * ev.w_bar(3.0));
        }
    }
    // Z^(0) is identically 1
    auto ev0 = ScaleEvaluator::make(test_models::hyper_jd(), 0.0);
    CHECK(ev0.z(5.0) == 1.0);
}

TEST_CASE("laplace transform round trip", "[scale_fn]") {
    // int_0^T e^{-theta z} W(z) dz must reproduce 1/(psi(theta)-q); T chosen so
    // the tail, bounded by W(z) <= e^{Phi z}/psi'(Phi), contributes < 1e-10
    for (const auto& model : all_models()) {
        for (double q : {0.0, 0.5, 2.0}) {
            auto ev = ScaleEvaluator::make(model, q);
            double theta = ev.phi_q() + 1.0;
            double target = 1.0 / (model.psi(theta) - q);
            double tail_scale = detail::psi_prime_at(model, ev.phi_q());
            double big_t = tail_scale > 0.0
                               ? (std::log(1.0 / (tail_scale * target)) + 26.0) / (theta - ev.phi_q())
                               : 60.0;
            double quad = detail::integrate(
                [&](double zz) { return std::exp(-theta * zz) * ev.w(zz); }, 0.0, big_t, 1e-12);
            CHECK_THAT(quad, WithinRel(target, 1e-7));
        }
    }
}

TEST_CASE("backend agreement", "[scale_fn]") {
    // partial fraction vs numerical inversion on x in (0, 10]
    for (const auto& model : {test_models::cramer_exp(), test_models::jump_diff_exp(),
                              test_models::hyper_jd(), test_models::erlang_bv(),
                              test_models::erlang_jd(), test_models::hyper_bv()}) {
        for (double q : {0.0, 0.5, 2.0}) {
            auto pf = ScaleEvaluator::make_with_backend(model, q, ScaleBackend::partial_fraction);
            auto nv = ScaleEvaluator::make_with_backend(model, q,
                                                        ScaleBackend::numerical_inversion);
            for (double x : {0.25, 1.0, 2.5, 5.0, 10.0}) {
                CHECK_THAT(nv.w(x), WithinRel(pf.w(x), 1e-7));
                // W' decays to zero while the inversion noise stays absolute,
                // so the derivative check carries an absolute escape hatch;
                // its transform also sees the W'(0+) jump, hence the looser 5e-6
                CHECK_THAT(nv.w_prime(x), WithinRel(pf.w_prime(x), 5e-6) ||
                                              WithinAbs(pf.w_prime(x), 1e-7 * (1.0 + pf.w(x))));
                CHECK_THAT(nv.w_bar(x), WithinRel(pf.w_bar(x), 1e-7));
            }
        }
    }
    // closed-form Brownian vs both alternatives
    for (double q : {0.5, 2.0}) {
        auto cf = ScaleEvaluator::make(test_models::bm_drift(), q);
        auto pf = ScaleEvaluator::make_with_backend(test_models::bm_drift(), q,
                                                    ScaleBackend::partial_fraction);
        auto nv = ScaleEvaluator::make_with_backend(test_models::bm_drift(), q,
                                                    ScaleBackend::numerical_inversion);
        for (double x : {0.5, 2.0, 8.0}) {
            CHECK_THAT(pf.w(x), WithinRel(cf.w(x), 1e-12));
            CHECK_THAT(nv.w(x), WithinRel(cf.w(x), 1e-7));
        }
    }
    // internal cross-check of the inversion backend against Gaver-Stehfest
    auto model = test_models::jump_diff_exp();
    double q = 1.0, phi = model.phi(q);
    auto nv = ScaleEvaluator::make_with_backend(model, q, ScaleBackend::numerical_inversion);
    for (double x : {0.5, 1.5, 3.0}) {
        double gs = std::exp(phi * x) *
                    invert_laplace_gaver_stehfest(
                        [&](double s) { return 1.0 / (detail::psi_at(model, s + phi) - q); }, x);
        CHECK_THAT(nv.w(x), WithinAbs(gs, 2e-4 * std::abs(nv.w(x))));
    }
}

TEST_CASE("cosh^2 - sinh^2 structure of the brownian pair", "[scale_fn]") {
    // Z^2 - (lambda/2) W^2 = 1 for standard BM, i.e. cosh^2 - sinh^2 = 1
    for (double lam : {0.3, 1.0, 2.5}) {
        auto ev = ScaleEvaluator::make(test_models::bm_std(), lam);
        for (double x : {0.2, 0.8, 1.5, 3.0}) {
            double z = ev.z(x), w = ev.w(x);
            CHECK_THAT(z * z - 0.5 * lam * w * w, WithinAbs(1.0, 1e-12 * (1.0 + z * z)));
        }
    }
}

TEST_CASE("partial and shifted transforms of w", "[scale_fn]") {
    for (const auto& model : {test_models::cramer_exp(), test_models::jump_diff_exp(),
                              test_models::erlang_bv()}) {
        auto ev = ScaleEvaluator::make(model, 0.0);
        const double r = 1.3;
        for (double x : {0.0, 0.8, 2.5}) {
            double part_quad = detail::integrate(
                [&](double t) { return std::exp(-r * t) * ev.w(t); }, 0.0, x, 1e-13);
            CHECK_THAT(ev.laplace_partial(r, x), WithinAbs(part_quad, 1e-11));
            double shift_quad = detail::integrate(
                [&](double t) { return std::exp(-r * t) * ev.w(x + t); }, 0.0, 80.0, 1e-13);
            CHECK_THAT(ev.laplace_shifted(r, x), WithinRel(shift_quad, 1e-9));
            CHECK_THAT(ev.laplace_increment(r, x),
                       WithinRel(ev.laplace_shifted(r, x) - ev.w(x) / r, 1e-9));
        }
        // the full transform is the defining identity again
        CHECK_THAT(ev.laplace_shifted(r, 0.0), WithinRel(1.0 / model.psi(r), 1e-10));
    }
}
