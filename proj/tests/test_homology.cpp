#include "support.hpp"

using namespace ellhyp;
using namespace testing;

namespace {

Character<Cyc> random_exact(std::mt19937_64& g) {
    static const long dens[] = {2, 3, 4, 5, 6, 8};
    auto r = [&] {
        long q = dens[std::uniform_int_distribution<int>(0, 5)(g)];
        return Rational(std::uniform_int_distribution<long>(1, q - 1)(g), q);
    };
    return character_exact(r(), r(), r());
}

}  // namespace

TEST_CASE("characters") {
    auto c = character_from(LiftedHolonomy::leaf_mn(0.4, 0, 1, 5));
    const cd mu = std::exp(2.0 * I * pi * 0.4 / 5.0);
    CHECK(std::abs(c.rho0 - 1.0) < 1e-15);
    CHECK(std::abs(c.rhoinf - 1.0 / mu) < 1e-15);
    CHECK(std::abs(c.rho1 - std::pow(mu, 5)) < 1e-14);
    auto q = character_from(0.5, 0.25, 0.25);
    CHECK(std::abs(q.rho0 - I) < 1e-15);
    CHECK(std::abs(q.rhoinf - I) < 1e-15);
    auto t = character_from(1e-9, 1e-9, -1e-9);
    CHECK(std::abs(t.rho1 - 1.0) < 1e-8);
}

TEST_CASE("intersection numbers") {
    const double al = 1.0 / 3;
    auto c = character_from(al, al / 5, -2 * al / 5);
    const cd d1 = c.rho1 - 1.0, di = c.rhoinf - 1.0, d1i = c.rho1 * c.rhoinf - 1.0;
    CHECK(std::abs(intersection2(c)(0, 0) - di * d1i / (d1 * c.rhoinf)) < 1e-13);
    auto g = rng(3);
    for (int i = 0; i < 50; ++i) {
        auto r = character_random(g);
        CHECK(std::abs(det(intersection2(r)) - 1.0) < 1e-9);
        auto pairs = intersection_pairs(r, {r.rho1, cd(std::exp(0.7 * I))});
        CHECK(std::abs(pairs.at({"3", "2"}) + 1.0 / (r.rho1 - 1.0)) < 1e-12);
    }
}

TEST_CASE("hermitian form") {
    auto g = rng(4);
    for (int i = 0; i < 50; ++i) {
        auto r = character_random(g);
        auto H = hermitian_form(r);
        CHECK(is_hermitian(H, 1e-10));
        auto s = signature(H);
        CHECK(s.positive == 1);
        CHECK(s.negative == 1);
        CHECK(std::abs(det(H) + 0.25) < 1e-10);
    }
    // rho0 = 1 closed form
    auto c = character_from(0.3, 0.0, -0.07);
    const cd d1 = c.rho1 - 1.0, di = c.rhoinf - 1.0, d1i = c.rho1 * c.rhoinf - 1.0;
    Mat2<cd> ref = mat2<cd>(0.0, c.rhoinf, -1.0 / c.rhoinf, di * d1i / (d1 * c.rhoinf)) * (1.0 / (2.0 * I));
    CHECK(max_abs_diff(hermitian_form(c), ref) < 1e-13);
}

TEST_CASE("normalization Z") {
    auto c = character_from(0.5, 0.0, -0.5 / 4);
    auto Z = normalize_Z(c);
    auto H = hermitian_form(c);
    Mat2<cd> target = mat2<cd>(0.0, -I, I, 0.0);
    CHECK(max_abs_diff(Z.adjoint() * H * Z, target) < 1e-12);
    auto e = character_exact(Rational(1, 2), 0, Rational(-1, 8));
    auto Ze = normalize_Z_unscaled(e);
    const Cyc one = one_like(e.rho0);
    CHECK(Ze(0, 0) == e.rhoinf);
    CHECK(Ze(0, 1) == zero_like(one) - (e.rho1 * e.rhoinf - one) / (e.rho1 - one));
    CHECK_THROWS_AS(normalize_Z(character_from(0.5, 0.25, 0.1)), PreconditionError);
}

TEST_CASE("connection matrices preserve intersections (exact)") {
    auto g = rng(5);
    const ConnKind kinds[] = {ConnKind::HTwist, ConnKind::HTrans1, ConnKind::HTrans2, ConnKind::VTrans1,
                              ConnKind::VTrans2, ConnKind::HT2,    ConnKind::VT2};
    for (int i = 0; i < 20; ++i) {
        auto c = random_exact(g);
        for (ConnKind k : kinds) CHECK(connection_relation_residual(k, c) == 0.0);
        CHECK(htrans2_composed(c) == htrans2(c));
        CHECK(det(intersection2(c)) == one_like(c.rho0));
    }
    auto r = rng(6);
    for (int i = 0; i < 20; ++i) {
        auto c = character_random(r);
        for (ConnKind k : kinds) CHECK(connection_relation_residual(k, c) < 1e-8);
    }
}

TEST_CASE("gamma2 decomposition") {
    auto c = character_from(1.0 / 3, 1.0 / 12, -1.0 / 12);
    auto [c0, ci] = gamma2_decompose(c);
    // solve the pairing relation: gamma2 . l = c0 gamma0 . l + ci gamma_inf . l
    const cd d1 = c.rho1 - 1.0;
    CHECK(std::abs(c0 + c.rho1 * (c.rhoinf - 1.0) / d1) < 1e-14);
    CHECK(std::abs(ci - c.rho1 * (c.rho0 - 1.0) / d1) < 1e-14);
    auto z = gamma2_decompose(character_from(0.3, 0.0, -0.1));
    CHECK(std::abs(z.second) < 1e-15);
    CHECK_THROWS_AS(gamma2_decompose(character_from(0.0, 0.1, 0.1)), DegenerateError);
}

TEST_CASE("degenerate characters are rejected") {
    CHECK_THROWS_AS(hermitian_form(character_from(0.0, 0.2, 0.3)), DegenerateError);
    CHECK_THROWS_AS(intersection2(character_exact(1, Rational(1, 3), Rational(1, 4))), DegenerateError);
}
