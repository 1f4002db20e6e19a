#include "support.hpp"

using namespace ellhyp;
using namespace testing;

// reference values: tests/oracles.py (mpmath, 40 digits)
TEST_CASE("theta: values at tau = i") {
    ModularPoint m(cd(0, 1));
    CHECK(std::abs(theta(0.0, m, 0).value) < 1e-15);
    CHECK(rel(theta(0.25, m, 0).value, 0.64358976403858588409) < 1e-14);
    cd u(0.3, 0.2);
    CHECK(rel(theta(u + 1.0, m, 0).value, -theta(u, m, 0).value) < 1e-13);
}

TEST_CASE("theta: quasi-periodicity in tau") {
    auto check = [](cd u, cd tau) {
        ModularPoint m(tau);
        cd pred = -std::exp(-I * pi * tau - 2.0 * I * pi * u) * theta(u, m, 0).value;
        return rel(theta_quasi_period(u, m), pred);
    };
    CHECK(check(0.1, cd(0, 1)) < 1e-12);
    CHECK(check(cd(0.37, 0.11), cd(0.3, 1.2)) < 1e-12);
    ModularPoint m(cd(0, 1));
    CHECK(std::abs(theta_quasi_period(0.0, m)) < 1e-14);
}

TEST_CASE("theta: oddness and heat equation over random points") {
    auto g = rng(1);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int i = 0; i < 50; ++i) {
        cd tau = random_tau(g), u(U(g), 0.4 * U(g) * tau.imag());
        ModularPoint m(tau);
        auto j = theta(u, m, 4);
        CHECK(rel(theta(-u, m, 0).value, -j.value) < 1e-12);
        const double h = 1e-4;
        cd fd = (theta(u, ModularPoint(tau + h), 0).value - theta(u, ModularPoint(tau - h), 0).value) / (2 * h);
        CHECK(std::abs(fd - j.dtau) < 1e-6 * std::max(1.0, std::abs(j.dtau)));
    }
}

TEST_CASE("theta: domain guard") {
    CHECK_THROWS_AS(ModularPoint(cd(0, 0.01)), DomainError);
    ModularPoint m(cd(0, 1));
    CHECK_THROWS_AS(theta(0.1, m, 5), PreconditionError);
}

TEST_CASE("rho: periodicity and jump") {
    ModularPoint m(cd(0, 1));
    cd u(0.2, 0.3);
    CHECK(std::abs(rho(u + 1.0, m) - rho(u, m)) < 1e-12);
    CHECK(std::abs(rho(u + m.tau, m) - rho(u, m) + 2.0 * I * pi) < 1e-11);
    CHECK(std::abs(rho(u + m.tau, m, 1) - rho(u, m, 1)) < 1e-10);
    CHECK_THROWS_AS(rho(0.0, m), SingularityError);
}

TEST_CASE("eta: periodicity, quasi-periodicity and finite-difference cross-check") {
    ModularPoint m(cd(0, 1));
    CHECK(std::abs(eta_logdtau(1.3, m) - eta_logdtau(0.3, m)) < 1e-12);
    cd u(0.3, 0.1);
    CHECK(std::abs(eta_logdtau(u + m.tau, m) - eta_logdtau(u, m) + rho(u, m) - I * pi) < 1e-11);
    const double h = 1e-5;
    auto lt = [&](cd t) { return std::log(theta(u, ModularPoint(t), 0).value); };
    cd fd = (lt(m.tau + h) - lt(m.tau - h)) / (2 * h);
    CHECK(rel(fd, eta_logdtau(u, m)) < 1e-6);
}

TEST_CASE("mu: ellipticity of mu + rho rho', oddness, derivative at 0") {
    ModularPoint m(cd(0, 1));
    cd u(0.21, 0.13);
    auto f = [&](cd x) { return mu_fn(x, m) + rho(x, m) * rho(x, m, 1); };
    CHECK(std::abs(f(u + m.tau) - f(u)) < 1e-10);
    CHECK(std::abs(mu_fn(-0.2, m) + mu_fn(0.2, m)) < 1e-13);
    CHECK(rel(mu_prime0(m), 5.8864556096801290723) < 1e-13);
    // Richardson limit of mu'(u) as u -> 0 along the non-Taylor branch
    auto direct = [&](double x) {
        auto d = theta_derivs(x, m, 4);
        cd t1 = d[1] / d[0], t2 = d[2] / d[0], t3 = d[3] / d[0], t4 = d[4] / d[0];
        return -0.5 * (t4 - 2.0 * t3 * t1 - t2 * t2 + 2.0 * t2 * t1 * t1);
    };
    cd a = direct(0.08), b = direct(0.04);
    CHECK(std::abs((4.0 * b - a) / 3.0 - mu_prime0(m)) < 1e-2);
    CHECK(std::abs(mu_prime(0.03, m) - direct(0.03)) < 1e-8);
    CHECK(std::abs(mu_fn(0.03, m) - mu_fn(0.03 + 1.0, m)) < 1e-10);
}

TEST_CASE("theta_mn: reduction, zeros and reference value") {
    ModularPoint m(cd(0, 1));
    cd u(0.3, 0.1);
    CHECK(rel(theta_mn(u, m, 0, 0, 3), theta(u, m, 0).value) < 1e-14);
    cd z = -(1.0 * m.tau + 2.0) / 5.0;
    CHECK(std::abs(theta_mn(z, m, 1, 2, 5)) < 1e-13);
    CHECK(rel(theta_mn(0.3, m, 1, 0, 3), cd(0.38481169528724301279, 0.87972319817048225969)) < 1e-13);
}

TEST_CASE("lambda: classical values") {
    CHECK(std::abs(lambda_modular(ModularPoint(cd(0, 1))) - 0.5) < 1e-12);
    cd t(0.1, 1);
    CHECK(std::abs(lambda_modular(ModularPoint(t + 2.0)) - lambda_modular(ModularPoint(t))) < 1e-12);
    CHECK(rel(lambda_modular(ModularPoint(t)), cd(0.49434427611027296712, 0.11045290292203926515)) < 1e-12);
    CHECK(std::abs(lambda_modular(ModularPoint(cd(0, 5)))) < 1e-4);
}
