#include "support.hpp"

using namespace ellhyp;
using namespace testing;

TEST_CASE("word decomposition") {
    CHECK(word_decompose(GroupElement::T()).str() == "T");
    for (long N = 2; N <= 8; ++N)
        CHECK(word_decompose(GroupElement::matrix(1, 0, -N, 1)).str() == "S T^" + std::to_string(N) + " S^-1");
    auto g = rng(9);
    std::uniform_int_distribution<long> D(-100, 100);
    int done = 0;
    while (done < 200) {
        long a = D(g), c = D(g);
        if (std::gcd(a, c) != 1) continue;
        // extended Euclid for d, b with a d - b c = 1
        long x0 = 1, x1 = 0, y0 = 0, y1 = 1, r0 = a, r1 = c;
        while (r1 != 0) {
            long q = r0 / r1;
            std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
            std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
            std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
        }
        // x0 a + y0 c = r0 = +-1
        long d = x0 * r0, b = -y0 * r0;
        auto e = GroupElement::matrix(a, b, c, d);
        auto w = word_decompose(e);
        CHECK(w.evaluate() == IMat{a, b, c, d});
        ++done;
    }
}

TEST_CASE("translation matrices") {
    auto r = mu_exact(5, Rational(2, 5));
    const Cyc one = r.one(), z = zero_like(one);
    for (long mm = 0; mm < 5; ++mm)
        for (long nn = 0; nn < 5; ++nn) {
            if (mm == 0 && nn == 0) continue;
            // closed form of A
            Mat2<Cyc> ref = mat2<Cyc>(one, z, r.pow(nn) * (r.pow(mm - 5) - one), r.pow(nn - 5)) * (r.pow(-nn) / r.half);
            CHECK(A_matrix(r, mm, nn) == ref);
            // both preserve the intersection form between the two characters
            auto c = r.character(mm, nn);
            Mat2<Cyc> Bm = B_matrix(r, mm, nn);
            auto cb = r.character(mm, nn - 5);
            Mat2<Cyc> lhs = intersection2(cb), rhs = Bm * intersection2(c) * Bm.adjoint();
            // projectively: scalar multiple
            Cyc s = rhs(0, 0) / lhs(0, 0);
            CHECK(rhs == lhs * s);
        }
    auto c = mu_complex(4, 1e-9);
    auto A = A_matrix(c, 1, 1);
    CHECK(max_abs_diff(A, mat2<cd>(1.0, 0.0, 0.0, 1.0)) < 1e-7);
}

TEST_CASE("holonomy of T and U_N, exact") {
    for (long N = 2; N <= 12; ++N)
        for (const Rational& al : {Rational(1, 3), Rational(1, 2), Rational(2, 5)}) {
            auto r = mu_exact(N, al);
            auto t = holonomy_matrix_exact(GroupElement::T(), N, al);
            const Cyc one = r.one(), z = zero_like(one);
            CHECK(t.normalized == mat2<Cyc>(one, one, z, one));
            auto u = holonomy_matrix_exact(GroupElement::matrix(1, 0, -N, 1), N, al);
            CHECK(u.raw == un_closed_form(r));
            CHECK(u.ih_preserved);
            CHECK(u.real_projectively);
        }
    auto id = holonomy_matrix_exact(GroupElement::identity(), 5, Rational(1, 2));
    CHECK(id.raw == identity2(id.raw(0, 0)));
}

TEST_CASE("holonomy: small-exponent limit of U_N") {
    for (long N : {3, 5}) {
        auto h = holonomy_matrix(GroupElement::matrix(1, 0, -N, 1), N, 1e-8);
        CHECK(max_abs_diff(h.raw, mat2<cd>(1.0, 0.0, double(-N), 1.0)) < 1e-6);
    }
}

TEST_CASE("holonomy is a homomorphism up to scalars on Gamma1(N)") {
    const long N = 5;
    const Rational al(1, 3);
    auto g1 = GroupElement::matrix(1, 0, -N, 1), g2 = GroupElement::T();
    auto g3 = GroupElement::matrix(11, 2, 5, 1);
    for (auto [x, y] : {std::pair{g1, g2}, std::pair{g2, g3}, std::pair{g3, g1}}) {
        auto hx = holonomy_matrix_exact(x, N, al).raw, hy = holonomy_matrix_exact(y, N, al).raw;
        auto hxy = holonomy_matrix_exact(x * y, N, al).raw;
        Mat2<Cyc> prod = hx * hy;
        int k = 0;
        while (prod.a[k].is_zero()) ++k;
        Cyc s = hxy.a[k] / prod.a[k];
        CHECK(hxy == prod * s);
    }
    auto r = mu_exact(N, al);
    auto h = holonomy_matrix_exact(g3, N, al);
    CHECK(h.ih_preserved);
    CHECK(h.real_projectively);
    CHECK_THROWS_AS(holonomy_matrix_exact(GroupElement::S(), N, al), PreconditionError);
}

TEST_CASE("numeric monodromy along T") {
    for (long N : {3, 4}) {
        auto r = monodromy_numeric_check(GroupElement::T(), N, 0.5, cd(0.1, 1.0));
        CHECK(r.residual < 1e-8);
        CHECK(std::abs(r.scalar - 1.0) < 1e-8);
    }
    auto id = monodromy_numeric_check(GroupElement::identity(), 4, 0.5, cd(0.1, 1.0));
    CHECK(id.residual < 1e-12);
}

TEST_CASE("numeric monodromy along U_N: observed matrix") {
    // observed monodromy is elliptic with the conifold-angle trace
    for (long N : {3, 4}) {
        const double al = 0.5;
        cd tau = cd(1.0 / N, 1.0 / N) + cd(0.02, 0.01);
        auto r = monodromy_numeric_check(GroupElement::matrix(1, 0, -N, 1), N, al, tau);
        const double tr = 2 * std::cos(pi * (N - 1) * al / N);
        CHECK(std::abs(std::abs(r.fitted_trace.real()) - tr) < 1e-8);
        CHECK(std::abs(r.fitted_trace.imag()) < 1e-8);
        Mat2<cd> obs = un_observed_monodromy(N, al);
        obs = obs * (1.0 / std::sqrt(det(obs)));
        CHECK(std::min(max_abs_diff(obs, r.fitted), max_abs_diff(obs * -1.0, r.fitted)) < 1e-8);
        CHECK(r.fitted_ih_residual < 1e-8);
    }
}

TEST_CASE("numeric T relation on a general leaf") {
    auto rep = t_relation(LiftedHolonomy::exact(0.4, Rational(1, 10), Rational(-1, 2)), cd(0, 1));
    CHECK(rep.residual < 1e-8);
    CHECK(std::abs(rep.scalar - 1.0) < 1e-8);
}
