#include "support.hpp"

using namespace ellhyp;
using namespace testing;

TEST_CASE("GM matrix: fixed entry and trace") {
    const double al = 1.0 / 3;
    auto a = LiftedHolonomy::exact(al, Rational(1, 4), Rational(-1, 4));
    ModularPoint m(cd(0, 1));
    auto M = gm_matrix(a, m);
    CHECK(std::abs(M.M01 - (al - 1) / (2.0 * I * pi)) < 1e-15);
    CHECK(std::abs(M.trace() - 2.0 * I * pi * a.a0 * a.a0 / al) < 1e-10);
    auto Z = gm_matrix(LiftedHolonomy::leaf_mn(0.4, 0, 2, 5), ModularPoint(cd(0.1, 0.9)));
    CHECK(std::abs(Z.M00 + Z.M11) < 1e-12);
    CHECK_THROWS_AS(gm_matrix(LiftedHolonomy::leaf_mn(1.2, 0, 1, 2), m), PreconditionError);
}

TEST_CASE("theta-quotient system: trace-free, and a shifted leaf system") {
    ModularPoint m(cd(0, 1));
    auto M = mano_matrix(1, 0, 5, 0.4, m);
    CHECK(std::abs(M.trace()) < 1e-14);
    CHECK(std::abs(M.A + M.D) == 0.0);
    // the same connection as the leaf alpha1 (-m/N, n/N), up to a scalar gauge
    auto g = rng(8);
    for (int i = 0; i < 10; ++i) {
        int N = 2 + i % 5, mm = i % N, nn = (i + 1) % N;
        if (mm == 0 && nn == 0) nn = 1;
        const double al = 0.2 + 0.06 * i, x = double(mm) / N;
        ModularPoint p(random_tau(g));
        auto K = mano_matrix(mm, nn, N, al, p);
        auto G = gm_matrix(LiftedHolonomy::leaf_mn(al, -mm, -nn, N), p);
        const cd shift = -al * I * pi * x * x;
        CHECK(std::abs(K.A - (G.M00 + shift)) < 1e-9 * std::max(1.0, std::abs(K.A)));
        CHECK(std::abs(K.D - (G.M11 + shift)) < 1e-9 * std::max(1.0, std::abs(K.D)));
        CHECK(std::abs(K.B - G.M01) < 1e-14);
        CHECK(std::abs(K.C - G.M10) < 1e-8 * std::max(1.0, std::abs(K.C)));
    }
}

TEST_CASE("theta-quotient scalar coefficient at the cusp") {
    // approach is exponential in Im tau with rate 2 pi min(x, 1 - x)
    const int N = 5;
    const double al = 0.5;
    for (int mm = 1; mm < N; ++mm) {
        const double x = double(mm) / N;
        const double rate = 2 * pi * std::min(x, 1 - x);
        const cd lim = al * I * pi * (x * x - x);
        auto err = [&](double y) {
            return std::abs(mano_scalar_coefficient(mano_matrix(mm, 0, N, al, ModularPoint(cd(0, y)))) + lim * lim) /
                   std::abs(lim * lim);
        };
        const double e6 = err(6), e8 = err(8), e10 = err(10);
        CHECK(e8 < 10 * std::exp(-rate * 8));
        CHECK(e10 < 10 * std::exp(-rate * 10));
        // observed decay rate between heights
        CHECK(std::log(e6 / e8) / 2 == doctest::Approx(rate).epsilon(0.01));
        CHECK(std::log(e8 / e10) / 2 == doctest::Approx(rate).epsilon(0.01));
    }
}

TEST_CASE("scalar reduction: three derivations agree") {
    auto a = LiftedHolonomy::exact(0.3, Rational(1, 4), Rational(-1, 3));
    auto s = system_to_scalar(a, ModularPoint(cd(0.1, 1.05)));
    CHECK(rel(s.q, s.q_trace_form) < 1e-8);
    CHECK(rel(s.q, s.q_fd) < 1e-6);
    CHECK(std::abs(s.p + 2.0 * I * pi * a.a0 * a.a0 / a.alpha1) < 1e-10);
    auto z = system_to_scalar(LiftedHolonomy::leaf_mn(0.3, 0, 1, 4), ModularPoint(cd(0, 1)));
    CHECK(std::abs(z.p) < 1e-12);
}

TEST_CASE("periods solve the system") {
    auto r = check_ode(LiftedHolonomy::leaf_mn(0.5, 1, 0, 4), ModularPoint(cd(0, 1.1)));
    CHECK(r.pass);
    CHECK(r.max_residual() < 1e-5);
    auto k = check_mano(1, 0, 4, 0.5, ModularPoint(cd(0, 1.1)));
    CHECK(k.pass);
    CHECK(k.max_residual() < 1e-5);
}

TEST_CASE("Wronskian is constant on a0 = 0 leaves") {
    auto a = LiftedHolonomy::leaf_mn(0.4, 0, 1, 3);
    cd w1 = wronskian(a, ModularPoint(cd(0, 1)));
    cd w2 = wronskian(a, ModularPoint(cd(0.2, 1.3)));
    CHECK(rel(w2, w1) < 1e-6);
    // with a0 != 0 it follows exp(2 i pi a0^2 / alpha1 tau)
    auto b = LiftedHolonomy::leaf_mn(0.4, 1, 0, 3);
    cd t1(0, 1), t2(0.1, 1.2);
    cd v1 = wronskian(b, ModularPoint(t1)), v2 = wronskian(b, ModularPoint(t2));
    CHECK(rel(v2 / v1, std::exp(2.0 * I * pi * b.a0 * b.a0 / b.alpha1 * (t2 - t1))) < 1e-6);
}

TEST_CASE("indicial exponents") {
    CHECK(indicial_exact(0, 5, Rational(1, 2)).nu == 0);
    CHECK(indicial_exact(1, 5, Rational(1, 2)).nu == Rational(2, 5));
    CHECK(indicial_exact(2, 5, Rational(1)).nu == Rational(6, 5));
    for (long N = 2; N <= 12; ++N)
        for (long mm = 0; mm < N; ++mm) {
            auto e = indicial_exact(mm, N, Rational(1, 3));
            CHECK(e.nu == conifold_angle_X(mm, N) * Rational(1, 3));
            CHECK(e.s_plus - e.s_minus == e.nu);
            CHECK(indicial(mm, N, 1.0 / 3).nu == doctest::Approx(to_double(e.nu)).epsilon(1e-14));
        }
    CHECK_THROWS_AS(indicial_exact(5, 5, Rational(1, 2)), PreconditionError);
}
