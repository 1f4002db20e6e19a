#include "support.hpp"

using namespace ellhyp;
using namespace testing;

TEST_CASE("integrand: positivity of the flat density and the trivial-exponent limit") {
    ModularPoint m(cd(0, 1.2));
    BranchedIntegrand f(LiftedHolonomy::leaf_mn(0.4, 0, 1, 2), m);
    for (double u : {0.1, 0.3, 0.7, 0.9}) {
        cd v = f.eval(u);
        CHECK(std::norm(v) > 0);
        // |T|^2 = |theta(u)/theta(u - 1/2)|^{2 alpha1}
        double mod = std::pow(std::abs(theta(u, m, 0).value / theta(u - 0.5, m, 0).value), 2 * 0.4);
        CHECK(std::abs(std::norm(v) - mod) < 1e-12 * mod);
    }
    BranchedIntegrand g(1e-9, 0.0, -1e-9 / 3, ModularPoint(cd(0, 1)));
    CHECK(std::abs(g.eval(0.4) - 1.0) < 1e-7);
}

TEST_CASE("F0 against an independent high-precision quadrature") {
    // tests/oracles.py: straight segment [0,1], logs continued from 0
    auto r = period_F(LiftedHolonomy::leaf_mn(1.0 / 3, 1, 0, 3), ModularPoint(cd(0, 1)), Cycle::gamma0, Weight::one);
    CHECK(rel(r.value, cd(0.68180269237359361537, 0.24815588566654437029)) < 1e-11);
    CHECK(r.converged);
    CHECK(r.est_error < 1e-9);
}

TEST_CASE("direct and regularized periods agree") {
    PeriodOptions o;
    o.cross_check = true;
    auto a = LiftedHolonomy::leaf_mn(1.0 / 3, 1, 0, 5);
    ModularPoint m(cd(0, 1));
    for (Cycle c : {Cycle::gamma0, Cycle::gamma_inf}) {
        auto r = period_F(a, m, c, Weight::one, o);
        REQUIRE(r.regularized);
        CHECK(std::abs(r.value - *r.regularized) < 10 * o.tol * std::max(1.0, std::abs(r.value)));
    }
}

TEST_CASE("trivial exponent limit of F0") {
    auto r = period_F(LiftedHolonomy::leaf_mn(1e-7, 0, 1, 2), ModularPoint(cd(0, 1)), Cycle::gamma0, Weight::one);
    CHECK(std::abs(r.value - 1.0) < 1e-5);
}

TEST_CASE("W periods are finite") {
    auto a = LiftedHolonomy::leaf_mn(0.5, 1, 0, 4);
    ModularPoint m(cd(0, 1));
    for (Cycle c : {Cycle::gamma0, Cycle::gamma_inf}) {
        auto r = period_F(a, m, c, Weight::rho_prime);
        CHECK(std::isfinite(std::abs(r.value)));
        CHECK(r.est_error < 1e-8 * std::max(1.0, std::abs(r.value)));
    }
    CHECK_THROWS_AS(period_F(a, m, Cycle::gamma2, Weight::rho_prime), PreconditionError);
}

TEST_CASE("Veech map: negativity and upper half-plane") {
    auto v = veech_map(LiftedHolonomy::leaf_mn(0.5, 0, 1, 4), ModularPoint(cd(0, 1)));
    CHECK(v.form < 0);
    CHECK(std::abs(v.form_imag) < 1e-9 * std::abs(v.form));
    REQUIRE(v.normalized);
    CHECK(v.normalized->imag() > 0);
    auto g = rng(7);
    for (int i = 0; i < 5; ++i) {
        auto w = veech_map(LiftedHolonomy::leaf_mn(0.3 + 0.1 * i, 1, 0, 3 + i), ModularPoint(random_tau(g)));
        CHECK(w.form < 0);
    }
}

TEST_CASE("N = 2 leaf on the imaginary axis: F0 has a stable phase") {
    auto a = LiftedHolonomy::leaf_mn(0.4, 0, 1, 2);
    auto p1 = period_F(a, ModularPoint(cd(0, 1)), Cycle::gamma0, Weight::one).value;
    auto p2 = period_F(a, ModularPoint(cd(0, 1.5)), Cycle::gamma0, Weight::one).value;
    CHECK(std::abs(std::arg(p1) - std::arg(p2)) < 1e-10);
}

TEST_CASE("theta-quotient periods are proportional to the leaf periods") {
    ModularPoint m(cd(0.2, 1.1));
    auto v = mano_periods(1, 0, 5, 0.4, m);
    auto f = period_vector(LiftedHolonomy::leaf_mn(0.4, -1, 0, 5), m);
    CHECK(rel(v.V0 / f.F_0, v.Vinf / f.F_inf) < 1e-8);
    CHECK(v.est_error < 1e-7);
    CHECK_THROWS_AS(mano_integrand(5, 5, 5, 0.4, m), PreconditionError);
}

TEST_CASE("hypergeometric consistency at N = 2") {
    for (double al : {1.0 / 3, 0.5})
        for (double h : {1.1, 0.9}) {
            auto r = wirtinger_check(al, ModularPoint(cd(0, h)));
            CHECK(std::abs(r.ratio_gamma0 - 1.0) < 1e-9);
            CHECK(std::abs(r.ratio_gamma2 - 1.0) < 1e-9);
        }
    CHECK(std::abs(hyp2f1_series(0.5, 0.5, 1.0, 0.5) - 1.180340599016096226) < 1e-14);
}
