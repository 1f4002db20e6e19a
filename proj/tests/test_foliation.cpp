#include "support.hpp"

using namespace ellhyp;
using namespace testing;

TEST_CASE("xi: two points") {
    auto w = Weights::two_point(0.5);
    cd tau(0.2, 1.1);
    const double r0 = 0.3, rinf = -0.2;
    auto h = xi(w, TorelliPoint{tau, {r0 * tau - rinf}});
    CHECK(h.a0 == doctest::Approx(0.5 * r0).epsilon(1e-13));
    CHECK(h.a_inf == doctest::Approx(0.5 * rinf).epsilon(1e-13));
    auto z = xi(w, TorelliPoint{cd(0, 1), {1.0 / 3}});
    CHECK(std::abs(z.a0) < 1e-15);
    CHECK(z.a_inf == doctest::Approx(-1.0 / 6).epsilon(1e-14));
    CHECK_THROWS_AS(xi(w, TorelliPoint{cd(0, 1), {1.0}}), DegenerateError);
    CHECK_THROWS_AS(Weights({0.5, 0.5}), PreconditionError);
}

TEST_CASE("leaf equation") {
    auto w = Weights::two_point(0.4);
    for (cd tau : {cd(0, 1), cd(0.3, 0.8)}) {
        CHECK(std::abs(leaf_equation_solve(w, LiftedHolonomy::leaf_mn(0.4, 0, 1, 7), tau) - 1.0 / 7) < 1e-14);
        cd z = leaf_equation_solve(w, LiftedHolonomy::leaf_mn(0.4, 2, 3, 7), tau);
        CHECK(std::abs(z - (2.0 / 7 * tau + 3.0 / 7)) < 1e-14);
    }
    CHECK_THROWS_AS(leaf_equation_solve(w, LiftedHolonomy::from_real(0.4, 0, 0), cd(0, 1)), DegenerateError);
}

TEST_CASE("group action is an action and intertwines xi") {
    auto g = rng(2);
    std::uniform_int_distribution<long> D(-3, 3);
    auto random_elt = [&] {
        static const long gens[][4] = {{1, 1, 0, 1}, {0, 1, -1, 0}, {1, -1, 0, 1}, {0, -1, 1, 0}};
        GroupElement e = GroupElement::identity();
        for (int k = 0; k < 4; ++k) {
            auto& s = gens[std::uniform_int_distribution<int>(0, 3)(g)];
            GroupElement x = GroupElement::matrix(s[0], s[1], s[2], s[3]);
            x.trans[0] = {D(g), D(g)};
            e = e * x;
        }
        return e;
    };
    auto w = Weights::two_point(0.35);
    TorelliPoint S = group_act(GroupElement::S(), TorelliPoint{cd(0, 1), {1.0 / 3}});
    CHECK(std::abs(S.z[0] - cd(0, 1.0 / 3)) < 1e-15);
    for (int i = 0; i < 100; ++i) {
        GroupElement g1 = random_elt(), g2 = random_elt();
        TorelliPoint p{random_tau(g), {cd(0.31, 0.17)}};
        auto a = group_act(g1 * g2, p), b = group_act(g1, group_act(g2, p));
        CHECK(std::abs(a.tau - b.tau) < 1e-9 * std::max(1.0, std::abs(a.tau)));
        CHECK(std::abs(a.z[0] - b.z[0]) < 1e-9 * std::max(1.0, std::abs(a.z[0])));
        auto h1 = xi(w, group_act(g1, p)), h2 = holonomy_act(g1.inverse(), w, xi(w, p));
        CHECK(std::abs(h1.a0 - h2.a0) < 1e-9);
        CHECK(std::abs(h1.a_inf - h2.a_inf) < 1e-9);
    }
}

TEST_CASE("holonomy action of T and S") {
    auto w = Weights::two_point(0.5);
    auto a = LiftedHolonomy::from_real(0.5, 0.1, -0.2);
    auto t = holonomy_act(GroupElement::T(), w, a);
    CHECK(t.a0 == doctest::Approx(0.1));
    CHECK(t.a_inf == doctest::Approx(-0.3));
    auto s = holonomy_act(GroupElement::S(), w, a);
    CHECK(s.a0 == doctest::Approx(-0.2));
    CHECK(s.a_inf == doctest::Approx(-0.1));
    auto id = holonomy_act(GroupElement::identity(), w, a);
    CHECK(id.a0 == a.a0);
    CHECK(id.a_inf == a.a_inf);
}

TEST_CASE("orbit normal form") {
    auto nf = orbit_normal_form(LiftedHolonomy::leaf_mn(0.5, 0, 1, 3));
    CHECK(nf.N == 3);
    auto nf2 = orbit_normal_form(LiftedHolonomy::exact(0.5, Rational(2, 6), Rational(-4, 6)));
    CHECK(nf2.N == 3);
    CHECK(*nf2.canonical.r0 == 0);
    CHECK(*nf2.canonical.r_inf == Rational(-1, 3));
    CHECK(orbit_normal_form(LiftedHolonomy::exact(0.5, 1, 1)).N == 1);
    // floating input recognized
    CHECK(orbit_normal_form(LiftedHolonomy::from_real(0.3, 0.3 * 0.4, -0.3 * 0.25)).N == 20);
}

TEST_CASE("orbit normal form agrees with a brute-force orbit search") {
    // the orbit of r under SL2(Z) x Z^2 contains (0, -1/N) exactly when N = lcm of denominators
    const Rational r0(2, 6), rinf(-4, 6);
    auto w = Weights::two_point(0.5);
    bool found = false;
    for (long a = -4; a <= 4 && !found; ++a)
        for (long b = -4; b <= 4 && !found; ++b)
            for (long c = -4; c <= 4 && !found; ++c)
                for (long d = -4; d <= 4 && !found; ++d) {
                    if (a * d - b * c != 1) continue;
                    GroupElement g = GroupElement::matrix(a, b, c, d);
                    auto h = holonomy_act(g, w, LiftedHolonomy::exact(0.5, r0, rinf));
                    // translations shift r by integers: reduce mod 1
                    Rational x = *h.r0, y = *h.r_inf;
                    auto frac = [](Rational q) {
                        Rational f = q - Rational(numerator(q) / denominator(q));
                        while (f < 0) f += 1;
                        while (f >= 1) f -= 1;
                        return f;
                    };
                    if (frac(x) == 0 && frac(y) == Rational(2, 3)) found = true;  // -1/3 mod 1
                }
    CHECK(found);
}

TEST_CASE("leaf classification") {
    auto c = classify_leaf(LiftedHolonomy::exact(0.5, 0, Rational(1, 5)));
    CHECK(c.kind == LeafKind::modular_Y1);
    CHECK(*c.N == 5);
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    auto cyl = classify_leaf(LiftedHolonomy::from_real(0.5, 0.5 * s2, 0.5 * (1 - s2)));
    CHECK(cyl.kind == LeafKind::cylinder);
    CHECK(cyl.delta == 2);
    auto rel = cyl.relation;
    if (rel[0] < 0) rel = {-rel[0], -rel[1], -rel[2]};
    CHECK(rel == std::array<long long, 3>{1, 1, -1});
    auto hp = classify_leaf(LiftedHolonomy::from_real(0.5, 0.5 * s2, 0.5 * s3));
    CHECK(hp.kind == LeafKind::half_plane);
    CHECK_THROWS_AS(classify_leaf(LiftedHolonomy::exact(0.5, 1, 2)), DegenerateError);
}

TEST_CASE("algebraic leaves") {
    Weights w({0.5, -0.5});
    CHECK(is_algebraic(w, LiftedHolonomy::from_real(0.5, 0, -1.0 / 6)));
    CHECK_FALSE(is_algebraic(w, LiftedHolonomy::from_real(0.5, 0, -std::sqrt(2.0) / 2)));
    Weights w3({0.25, 0.5, -0.75});
    CHECK(is_algebraic(w3, LiftedHolonomy::from_real(0.25, 0.125, -0.375)));
}

TEST_CASE("F_theta components") {
    CHECK(ftheta_components(1, 3, 4) == std::set<long>{4});
    CHECK(ftheta_components(2, 5, 3) == std::set<long>{3, 6});
    CHECK(ftheta_components(1, 1, 1).empty());
    CHECK_THROWS_AS(ftheta_components(2, 4, 3), PreconditionError);
}

TEST_CASE("rational recognition respects its bound") {
    auto g = recognize_rational(355.0 / 113.0, 1000);
    CHECK(g.found);
    CHECK(g.q == 113);
    CHECK_FALSE(recognize_rational(std::sqrt(2.0), 1000000).found);
}
