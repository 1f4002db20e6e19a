#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "foliation.hpp"

namespace ellhyp {

// monodromy character (rho0, rho1, rho_inf); R is cd or Cyc
template <class R>
struct Character {
    R rho0, rho1, rhoinf;
};

inline void require_nonzero(cd x, const char* what) {
    if (std::abs(x) < 1e-10) throw DegenerateError(std::string("degenerate character: ") + what);
}
inline void require_nonzero(const Cyc& x, const char* what) {
    if (x.is_zero()) throw DegenerateError(std::string("degenerate character: ") + what);
}

inline Character<cd> character_from(double alpha1, double a0, double ainf) {
    auto e = [](double x) { return std::exp(2.0 * I * pi * x); };
    return {e(a0), e(alpha1), e(ainf)};
}
inline Character<cd> character_from(const LiftedHolonomy& a) { return character_from(a.alpha1, a.a0, a.a_inf); }

inline Character<cd> character_random(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double x = U(rng), y = U(rng), z = U(rng);
    return character_from(x, y, z);
}

// field Q(zeta_D) containing exp(2 i pi x) for every listed rational x
inline std::shared_ptr<const CycloField> field_for(const std::vector<Rational>& xs, long extra = 1) {
    BigInt D = 1;
    for (auto& x : xs) D = boost::multiprecision::lcm(D, BigInt(boost::multiprecision::denominator(x)));
    D *= extra;
    return std::make_shared<const CycloField>(static_cast<int>(D));
}

// exp(2 i pi x) in F
inline Cyc root_of_unity(const std::shared_ptr<const CycloField>& F, const Rational& x) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    BigInt den = denominator(x);
    if (BigInt(F->n) % den != 0) throw PreconditionError("root_of_unity: exponent not in field");
    BigInt k = numerator(x) * (BigInt(F->n) / den);
    return Cyc::zeta(F, static_cast<long long>(k % F->n));
}

// exact character for rational exponents (a0, alpha1, a_inf)
inline Character<Cyc> character_exact(const Rational& alpha1, const Rational& a0, const Rational& ainf) {
    auto F = field_for({alpha1, a0, ainf});
    return {root_of_unity(F, a0), root_of_unity(F, alpha1), root_of_unity(F, ainf)};
}

template <class R>
Character<cd> to_complex(const Character<R>& c) {
    return {as_complex(c.rho0), as_complex(c.rho1), as_complex(c.rhoinf)};
}

template <class R>
void check_character(const Character<R>& c) {
    require_nonzero(c.rho1 - one_like(c.rho1), "d1");
    require_nonzero(c.rho0, "rho0");
    require_nonzero(c.rhoinf, "rho_inf");
    require_nonzero(c.rho1, "rho1");
}

// intersection matrix, rows (gamma_inf, gamma_0, gamma_2), columns (l_inf, l_0, l_2)
template <class R>
Mat3<R> intersection3(const Character<R>& c) {
    check_character(c);
    const R &r0 = c.rho0, &r1 = c.rho1, &ri = c.rhoinf;
    const R one = one_like(r0), z = zero_like(r0);
    R d1 = r1 - one, di = ri - one, d0 = r0 - one, d1i = r1 * ri - one;
    return Mat3<R>{{di * d1i / (d1 * ri), (one / r0 + ri - r1 * ri / r0 - one) / d1, di / d1,
                    (r0 * r1 - r1 + r1 / ri - r0 / ri) / d1, (d0 / d1) * (one - r1 / r0), d0 / d1,
                    z - r1 * di / (ri * d1), z - r1 * d0 / (r0 * d1), z}};
}

// top-left block in the basis (gamma_inf, gamma_0)
template <class R>
Mat2<R> intersection2(const Character<R>& c) {
    Mat3<R> m = intersection3(c);
    return mat2<R>(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
}

// (2 i II)^{-1}: only for complex scalars (2i is not in every cyclotomic field)
inline Mat2<cd> hermitian_form(const Character<cd>& c) {
    Mat2<cd> ii = intersection2(c);
    return inverse(ii * cd(0, 2));
}

// exact variant: returns 2i * IH, which lies in the field
template <class R>
Mat2<R> hermitian_form_times_2i(const Character<R>& c) {
    return inverse(intersection2(c));
}

struct Signature {
    int positive = 0, negative = 0;
    double lambda_min = 0, lambda_max = 0;
};

inline Signature signature(const Mat2<cd>& h) {
    // eigenvalues of a 2x2 hermitian matrix
    double a = h(0, 0).real(), d = h(1, 1).real();
    double b2 = std::norm(h(0, 1));
    double mid = 0.5 * (a + d), rad = std::sqrt(0.25 * (a - d) * (a - d) + b2);
    Signature s{0, 0, mid - rad, mid + rad};
    for (double l : {s.lambda_min, s.lambda_max}) {
        if (l > 0) ++s.positive;
        if (l < 0) ++s.negative;
    }
    return s;
}

inline bool is_hermitian(const Mat2<cd>& h, double tol) { return max_abs_diff(h, h.adjoint()) <= tol; }

// Z with Z^H IH Z = [[0,-i],[i,0]]; needs rho0 = 1
template <class R>
Mat2<R> normalize_Z_unscaled(const Character<R>& c) {
    if (!exactly_equal(c.rho0, one_like(c.rho0), 1e-12)) throw PreconditionError("normalize_Z: rho0 must equal 1");
    const R one = one_like(c.rho0), z = zero_like(c.rho0);
    R d1 = c.rho1 - one, d1i = c.rho1 * c.rhoinf - one;
    require_nonzero(d1, "d1");
    return mat2<R>(c.rhoinf, z - d1i / d1, z, one);
}

inline Mat2<cd> normalize_Z(const Character<cd>& c) { return normalize_Z_unscaled(c) * cd(std::sqrt(2.0)); }

enum class ConnKind { HTwist, HTrans1, HTrans2, VTrans1, VTrans2, HT2, VT2 };

inline const char* to_string(ConnKind k) {
    switch (k) {
        case ConnKind::HTwist: return "HTwist";
        case ConnKind::HTrans1: return "HTrans1";
        case ConnKind::HTrans2: return "HTrans2";
        case ConnKind::VTrans1: return "VTrans1";
        case ConnKind::VTrans2: return "VTrans2";
        case ConnKind::HT2: return "HT2";
        default: return "VT2";
    }
}

inline ConnKind parse_conn_kind(const std::string& s) {
    for (ConnKind k : {ConnKind::HTwist, ConnKind::HTrans1, ConnKind::HTrans2, ConnKind::VTrans1, ConnKind::VTrans2,
                       ConnKind::HT2, ConnKind::VT2})
        if (s == to_string(k)) return k;
    throw PreconditionError("unknown connection matrix kind: " + s);
}

template <class R>
struct Connection {
    int dim = 3;
    Mat3<R> m3;
    Mat2<R> m2;
    Character<R> target;
};

template <class R>
Mat3<R> htwist(const Character<R>& c) {
    const R one = one_like(c.rho0), z = zero_like(c.rho0);
    return Mat3<R>{{one, z, (c.rhoinf - one) / c.rho1, z, one, (c.rho0 - one) / c.rho1, z, z, z - one / c.rho1}};
}

template <class R>
Mat3<R> htrans1(const Character<R>& c) {
    const R one = one_like(c.rho0), z = zero_like(c.rho0);
    const R &r0 = c.rho0, &r1 = c.rho1, &ri = c.rhoinf;
    return Mat3<R>{{one / r1, z - (ri - one) / (r0 * r1), z, z, one / r0, z, z, one / r0, one / r1}};
}

template <class R>
Mat3<R> htrans2(const Character<R>& c) {
    const R one = one_like(c.rho0), z = zero_like(c.rho0);
    const R &r0 = c.rho0, &r1 = c.rho1, &ri = c.rhoinf;
    R d0 = r0 - one, d1 = r1 - one;
    return Mat3<R>{{r1, r1 * ri * d1 / r0, z - d1 * (r0 * r1 * ri + ri - r0) / r0, z, (one + d0 * r1) / r0,
                    z - d0 * d1 * (r0 * r1 + one) / (r0 * r1), z, z - r1 / r0, (r0 * d1 + one) / r0}};
}

template <class R>
Mat3<R> vtrans1(const Character<R>& c) {
    const R one = one_like(c.rho0), z = zero_like(c.rho0);
    const R &r0 = c.rho0, &r1 = c.rho1, &ri = c.rhoinf;
    return Mat3<R>{{one / ri, z, z, z - (r0 - one) * r1 / ri, r1, z, r1 / ri, z, r1}};
}

template <class R>
Mat3<R> vtrans2(const Character<R>& c) {
    const R one = one_like(c.rho0), z = zero_like(c.rho0);
    const R &r1 = c.rho1, &ri = c.rhoinf;
    R d1 = r1 - one;
    return Mat3<R>{{one, z, z, z - d1 / (r1 * ri), one / r1, d1 / (r1 * r1 * ri), z - one / ri, z, one / (r1 * ri)}};
}

template <class R>
Mat2<R> ht2(const Character<R>& c) {
    const R one = one_like(c.rho0), z = zero_like(c.rho0);
    const R &r0 = c.rho0, &r1 = c.rho1, &ri = c.rhoinf;
    R a = (r0 * r1 * ri - r0 * r0 * r1 * ri + ri - r0 * ri + r0 * r0) * r1 / r0;
    R b = (r1 * r0 * ri * ri - r0 * r1 * ri + r1 * ri - ri - ri + r0 + ri * ri - r0 * ri) * r1 / r0;
    R cc = z - (r0 - one) * (r0 - one) * (r0 * r1 + one) / r0;
    R d = (z - r0 * r1 * ri + r0 * r1 + r0 * r1 - r1 + r0 * r0 * r1 * ri - r0 * r0 * r1 - ri + r0 * ri + one + one - r0) / r0;
    return mat2<R>(a, b, cc, d);
}

template <class R>
Mat2<R> vt2(const Character<R>& c) {
    const R one = one_like(c.rho0), z = zero_like(c.rho0);
    const R &r0 = c.rho0, &r1 = c.rho1, &ri = c.rhoinf;
    return mat2<R>(one, z, (r0 - r1) / (r1 * ri), one / (r1 * ri));
}

template <class R>
Connection<R> connection_matrix(ConnKind kind, const Character<R>& c) {
    check_character(c);
    Connection<R> out;
    out.target = c;
    const R one = one_like(c.rho0);
    switch (kind) {
        case ConnKind::HTwist:
            out.m3 = htwist(c);
            out.target.rho1 = one / c.rho1;
            break;
        case ConnKind::HTrans1:
            out.m3 = htrans1(c);
            out.target.rhoinf = c.rhoinf / c.rho1;
            break;
        case ConnKind::HTrans2:
            out.m3 = htrans2(c);
            out.target.rhoinf = c.rhoinf * c.rho1;
            break;
        case ConnKind::VTrans1:
            out.m3 = vtrans1(c);
            out.target.rho0 = c.rho0 * c.rho1;
            break;
        case ConnKind::VTrans2:
            out.m3 = vtrans2(c);
            out.target.rho0 = c.rho0 / c.rho1;
            break;
        case ConnKind::HT2:
            out.dim = 2;
            out.m2 = ht2(c);
            out.target.rhoinf = c.rhoinf * c.rho1;
            break;
        case ConnKind::VT2:
            out.dim = 2;
            out.m2 = vt2(c);
            out.target.rho0 = c.rho0 / c.rho1;
            break;
    }
    return out;
}

// HTwist_{rho~'} HTrans1_{rho'} HTwist_rho
template <class R>
Mat3<R> htrans2_composed(const Character<R>& c) {
    const R one = one_like(c.rho0);
    Character<R> tw{c.rho0, one / c.rho1, c.rhoinf};
    Character<R> tw2{c.rho0, one / c.rho1, c.rhoinf * c.rho1};
    return htwist(tw2) * htrans1(tw) * htwist(c);
}

// residual of I_target = M I_rho M^H; exact path returns 0 or 1
template <class R>
double connection_relation_residual(ConnKind kind, const Character<R>& c) {
    auto con = connection_matrix(kind, c);
    if (con.dim == 3) {
        Mat3<R> lhs = intersection3(con.target);
        Mat3<R> rhs = con.m3 * intersection3(c) * con.m3.adjoint();
        if constexpr (std::is_same_v<R, Cyc>) return lhs == rhs ? 0.0 : 1.0;
        else return max_abs_diff(lhs, rhs);
    }
    Mat2<R> lhs = intersection2(con.target);
    Mat2<R> rhs = con.m2 * intersection2(c) * con.m2.adjoint();
    if constexpr (std::is_same_v<R, Cyc>) return lhs == rhs ? 0.0 : 1.0;
    else return max_abs_diff(lhs, rhs);
}

// gamma_2 = c0 gamma_0 + c_inf gamma_inf
template <class R>
std::pair<R, R> gamma2_decompose(const Character<R>& c) {
    const R one = one_like(c.rho0), z = zero_like(c.rho0);
    R d1 = c.rho1 - one;
    require_nonzero(d1, "rho1 = 1");
    return {z - c.rho1 * (c.rhoinf - one) / d1, c.rho1 * (c.rho0 - one) / d1};
}

// pairwise intersection numbers gamma_a . l_b for n punctures; rest = (rho_2, ..., rho_n)
inline std::map<std::pair<std::string, std::string>, cd> intersection_pairs(const Character<cd>& c,
                                                                             std::vector<cd> rest = {}) {
    check_character(c);
    if (rest.empty()) rest.push_back(1.0 / c.rho1);
    const cd r0 = c.rho0, r1 = c.rho1, ri = c.rhoinf;
    const cd d0 = r0 - 1.0, d1 = r1 - 1.0, di = ri - 1.0, d1i = r1 * ri - 1.0;
    std::map<std::pair<std::string, std::string>, cd> t;
    t[{"inf", "inf"}] = di * d1i / (d1 * ri);
    t[{"inf", "0"}] = (1.0 - r0 + r0 * ri - r1 * ri) / (r0 * d1);
    t[{"0", "inf"}] = (r1 - r1 * ri - r0 + r0 * r1 * ri) / (ri * d1);
    t[{"0", "0"}] = (d0 / d1) * (1.0 - r1 / r0);
    const int n = int(rest.size()) + 1;
    for (int i = 2; i <= n; ++i) {
        const std::string si = std::to_string(i);
        const cd rhoi = rest[i - 2];
        t[{"inf", si}] = di / d1;
        t[{"0", si}] = d0 / d1;
        t[{si, "inf"}] = -r1 * di / (ri * d1);
        t[{si, "0"}] = -r1 * d0 / (r0 * d1);
        if (std::abs(rhoi - 1.0) < 1e-10) throw DegenerateError("degenerate character: d_i");
        t[{si, si}] = -(r1 * rhoi - 1.0) / (d1 * (rhoi - 1.0));
        for (int j = 2; j <= n; ++j) {
            if (j == i) continue;
            t[{std::to_string(j), si}] = j < i ? -r1 / d1 : -1.0 / d1;
        }
    }
    return t;
}

}  // namespace ellhyp
