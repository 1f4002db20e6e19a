#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "algebra.hpp"
#include "common.hpp"

namespace ellhyp {

struct Weights {
    std::vector<double> alpha;  // alpha_1 .. alpha_n

    Weights() = default;
    explicit Weights(std::vector<double> a) : alpha(std::move(a)) { validate(); }
    static Weights two_point(double alpha1) { return Weights({alpha1, -alpha1}); }

    int n() const { return int(alpha.size()); }
    void validate() const {
        if (alpha.size() < 2) throw PreconditionError("weights: at least two points");
        double s = 0;
        for (double a : alpha) {
            if (!(a > -1)) throw PreconditionError("weights: each alpha must exceed -1");
            s += a;
        }
        if (std::abs(s) > 1e-12) throw PreconditionError("weights: sum must vanish");
        if (alpha.size() == 2 && !(alpha[0] > 0 && alpha[0] < 1))
            throw PreconditionError("weights: alpha1 must lie in (0,1)");
    }
};

struct TorelliPoint {
    cd tau;
    std::vector<cd> z;  // z_2 .. z_n; z_1 = 0
};

// minimal distance from w to the lattice Z + tau Z over a bounded window
inline double lattice_gap(cd w, cd tau) {
    const double y = std::min(1.0, tau.imag());
    const int R = 2 + int(std::abs(w) / y);
    const long l0 = std::lround(w.imag() / tau.imag());
    double best = 1e300;
    for (long l = l0 - R; l <= l0 + R; ++l) {
        cd x = w - double(l) * tau;
        long k0 = std::lround(x.real());
        for (long k = k0 - 1; k <= k0 + 1; ++k) best = std::min(best, std::abs(x - double(k)));
    }
    return best;
}

inline void check_torelli(const TorelliPoint& p, double tol = 1e-8) {
    if (!(p.tau.imag() > 0)) throw DomainError("torelli: Im tau must be positive");
    std::vector<cd> pts{0.0};
    pts.insert(pts.end(), p.z.begin(), p.z.end());
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (lattice_gap(pts[i] - pts[j], p.tau) < tol) throw DegenerateError("torelli: punctures collide mod lattice");
}

struct LiftedHolonomy {
    double a0 = 0, a_inf = 0, alpha1 = 0;
    // exact a / alpha1 when known
    std::optional<Rational> r0, r_inf;

    static LiftedHolonomy from_real(double alpha1, double a0, double ainf) {
        LiftedHolonomy h;
        h.alpha1 = alpha1;
        h.a0 = a0;
        h.a_inf = ainf;
        return h;
    }
    static LiftedHolonomy exact(double alpha1, const Rational& r0, const Rational& rinf) {
        LiftedHolonomy h;
        h.alpha1 = alpha1;
        h.r0 = r0;
        h.r_inf = rinf;
        h.a0 = alpha1 * to_double(r0);
        h.a_inf = alpha1 * to_double(rinf);
        return h;
    }
    // canonical auxiliary leaf alpha1 (m/N, -n/N)
    static LiftedHolonomy leaf_mn(double alpha1, long m, long n, long N) {
        return exact(alpha1, Rational(m, N), Rational(-n, N));
    }
    cd t_of_tau(cd tau) const { return (a0 * tau - a_inf) / alpha1; }
};

// integer 2x2 matrix of det 1 with translation parts (k_i, l_i), i = 2..n
struct GroupElement {
    long a = 1, b = 0, c = 0, d = 1;
    std::vector<std::pair<long, long>> trans;  // (k, l)

    static GroupElement matrix(long a, long b, long c, long d, size_t n_trans = 1) {
        GroupElement g{a, b, c, d, std::vector<std::pair<long, long>>(n_trans, {0, 0})};
        g.check();
        return g;
    }
    static GroupElement identity(size_t n_trans = 1) { return matrix(1, 0, 0, 1, n_trans); }
    static GroupElement T(size_t n_trans = 1) { return matrix(1, 1, 0, 1, n_trans); }
    static GroupElement S(size_t n_trans = 1) { return matrix(0, 1, -1, 0, n_trans); }

    void check() const {
        if (a * d - b * c != 1) throw PreconditionError("group element: determinant must be 1");
    }

    // (M1, v1)(M2, v2) = (M1 M2, v1 M2 + v2) with v = (l, k) as a row vector
    GroupElement operator*(const GroupElement& o) const {
        if (trans.size() != o.trans.size()) throw PreconditionError("group element: translation size mismatch");
        GroupElement r{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d, {}};
        r.trans.resize(trans.size());
        for (size_t i = 0; i < trans.size(); ++i) {
            auto [k1, l1] = trans[i];
            auto [k2, l2] = o.trans[i];
            long l = l1 * o.a + k1 * o.c + l2;
            long k = l1 * o.b + k1 * o.d + k2;
            r.trans[i] = {k, l};
        }
        return r;
    }
    GroupElement inverse() const {
        GroupElement r{d, -b, -c, a, {}};
        r.trans.resize(trans.size());
        for (size_t i = 0; i < trans.size(); ++i) {
            auto [k, l] = trans[i];
            // v' = -v M^{-1}
            long lp = -(l * d + k * (-c));
            long kp = -(l * (-b) + k * a);
            r.trans[i] = {kp, lp};
        }
        return r;
    }
    bool same_matrix(const GroupElement& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator==(const GroupElement& o) const { return same_matrix(o) && trans == o.trans; }
    cd mobius(cd tau) const { return (double(a) * tau + double(b)) / (double(c) * tau + double(d)); }
};

inline LiftedHolonomy xi(const Weights& w, const TorelliPoint& p) {
    if (int(p.z.size()) != w.n() - 1) throw PreconditionError("xi: marking size does not match weights");
    check_torelli(p);
    cd s = 0;
    for (size_t i = 0; i < p.z.size(); ++i) s += w.alpha[i + 1] * p.z[i];
    LiftedHolonomy h;
    h.alpha1 = w.alpha[0];
    h.a0 = -s.imag() / p.tau.imag();
    cd ainf = h.a0 * p.tau + s;
    if (std::abs(ainf.imag()) > 1e-10 * std::max(1.0, std::abs(ainf))) throw ConvergenceError("xi: a_inf not real");
    h.a_inf = ainf.real();
    return h;
}

inline cd leaf_equation_solve(const Weights& w, const LiftedHolonomy& a, cd tau, const std::vector<cd>& z_rest = {}) {
    if (w.alpha[1] == 0) throw PreconditionError("leaf equation: alpha_2 must be nonzero");
    if (int(z_rest.size()) != w.n() - 2) throw PreconditionError("leaf equation: wrong number of remaining points");
    cd s = 0;
    for (size_t i = 0; i < z_rest.size(); ++i) s += w.alpha[i + 2] * z_rest[i];
    cd z2 = (a.a_inf - a.a0 * tau - s) / w.alpha[1];
    TorelliPoint p{tau, {z2}};
    p.z.insert(p.z.end(), z_rest.begin(), z_rest.end());
    try {
        check_torelli(p);
    } catch (const DegenerateError&) {
        throw DegenerateError("leaf equation: solution is not on Torelli space");
    }
    return z2;
}

inline TorelliPoint group_act(const GroupElement& g, const TorelliPoint& p) {
    if (g.trans.size() != p.z.size()) throw PreconditionError("group_act: translation size mismatch");
    cd j = double(g.c) * p.tau + double(g.d);
    TorelliPoint r{g.mobius(p.tau), {}};
    for (size_t i = 0; i < p.z.size(); ++i)
        r.z.push_back((p.z[i] + double(g.trans[i].first) + double(g.trans[i].second) * p.tau) / j);
    return r;
}

// right action: xi(g.p) = holonomy_act(g^{-1}, xi(p))
inline LiftedHolonomy holonomy_act(const GroupElement& g, const Weights& w, const LiftedHolonomy& h) {
    if (int(g.trans.size()) != w.n() - 1) throw PreconditionError("holonomy_act: translation size mismatch");
    double sl = 0, sk = 0;
    for (size_t i = 0; i < g.trans.size(); ++i) {
        sk += w.alpha[i + 1] * double(g.trans[i].first);
        sl += w.alpha[i + 1] * double(g.trans[i].second);
    }
    LiftedHolonomy r = h;
    r.a0 = h.a0 * double(g.a) - h.a_inf * double(g.c) + sl;
    r.a_inf = -h.a0 * double(g.b) + h.a_inf * double(g.d) - sk;
    if (h.r0 && h.r_inf && w.n() == 2) {
        // alpha_2 = -alpha_1, so translations act on r = a / alpha1 by integers
        long k = g.trans[0].first, l = g.trans[0].second;
        r.r0 = *h.r0 * g.a - *h.r_inf * g.c - l;
        r.r_inf = -*h.r0 * g.b + *h.r_inf * g.d + k;
    } else {
        r.r0.reset();
        r.r_inf.reset();
    }
    return r;
}

// ---------- rational recognition ----------
struct RationalGuess {
    bool found = false;
    long long p = 0, q = 1;
    double err = 0;  // |x - p/q|
};

// continued-fraction recognition with denominator bound
inline RationalGuess recognize_rational(double x, long long max_den = 1000000, double tol = -1) {
    if (tol < 0) tol = 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    RationalGuess best;
    best.err = 1e300;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        if (std::abs(a) > 1e15) break;
        long long ai = (long long)a;
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        double e = std::abs(x - double(p2) / double(q2));
        if (e < best.err) best = {false, p2, q2, e};
        if (e <= tol) {
            best.found = true;
            return best;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = r - a;
        if (frac == 0) break;
        r = 1.0 / frac;
    }
    return best;
}

// integer relation c . v = 0 for three reals, via LLL in long double
struct IntegerRelation {
    bool found = false;
    std::array<long long, 3> c{};
    long double residual = 0;
};

inline IntegerRelation find_relation3(const std::array<double, 3>& v, long long bound = 10000, long double scale = 1e11L) {
    using ld = long double;
    std::array<std::array<ld, 4>, 3> b{};
    for (int i = 0; i < 3; ++i) {
        b[i][i] = 1;
        b[i][3] = scale * ld(v[i]);
    }
    auto dot = [](const std::array<ld, 4>& x, const std::array<ld, 4>& y) {
        ld s = 0;
        for (int k = 0; k < 4; ++k) s += x[k] * y[k];
        return s;
    };
    auto gram_schmidt = [&](std::array<std::array<ld, 4>, 3>& bs, std::array<std::array<ld, 3>, 3>& mu) {
        for (int i = 0; i < 3; ++i) {
            bs[i] = b[i];
            for (int j = 0; j < i; ++j) {
                mu[i][j] = dot(b[i], bs[j]) / dot(bs[j], bs[j]);
                for (int k = 0; k < 4; ++k) bs[i][k] -= mu[i][j] * bs[j][k];
            }
        }
    };
    std::array<std::array<ld, 4>, 3> bs{};
    std::array<std::array<ld, 3>, 3> mu{};
    int k = 1;
    for (int guard = 0; guard < 10000 && k < 3; ++guard) {
        gram_schmidt(bs, mu);
        for (int j = k - 1; j >= 0; --j) {
            ld q = std::round(mu[k][j]);
            if (q != 0) {
                for (int t = 0; t < 4; ++t) b[k][t] -= q * b[j][t];
                gram_schmidt(bs, mu);
            }
        }
        if (dot(bs[k], bs[k]) >= (0.75L - mu[k][k - 1] * mu[k][k - 1]) * dot(bs[k - 1], bs[k - 1])) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            k = std::max(k - 1, 1);
        }
    }
    IntegerRelation best;
    best.residual = 1e300L;
    for (int i = 0; i < 3; ++i) {
        std::array<long long, 3> c{};
        bool ok = true, nonzero = false;
        for (int j = 0; j < 3; ++j) {
            ld x = std::round(b[i][j]);
            if (std::abs(x) > ld(bound)) ok = false;
            c[j] = (long long)x;
            nonzero = nonzero || c[j] != 0;
        }
        if (!ok || !nonzero) continue;
        ld r = 0;
        for (int j = 0; j < 3; ++j) r += ld(c[j]) * ld(v[j]);
        r = std::abs(r);
        if (r < best.residual) {
            best.residual = r;
            best.c = c;
        }
    }
    // sign: first nonzero coefficient positive
    for (int j = 0; j < 3; ++j)
        if (best.c[j] != 0) {
            if (best.c[j] < 0)
                for (auto& x : best.c) x = -x;
            break;
        }
    best.found = best.residual < 1e-11L;
    return best;
}

enum class LeafKind { half_plane, cylinder, modular_Y1, indeterminate };

inline const char* to_string(LeafKind k) {
    switch (k) {
        case LeafKind::half_plane: return "half_plane";
        case LeafKind::cylinder: return "cylinder";
        case LeafKind::modular_Y1: return "modular_Y1";
        default: return "indeterminate";
    }
}

struct LeafClass {
    LeafKind kind = LeafKind::indeterminate;
    std::optional<long> N;
    int delta = 0;
    std::array<long long, 3> relation{};  // for cylinders
};

struct DetectionBounds {
    long long max_den = 1000000;
    long long relation_bound = 10000;
};

// exact ratio a / alpha1 if available, else recognized
inline std::optional<std::pair<Rational, Rational>> leaf_ratios(const LiftedHolonomy& a, const DetectionBounds& bd,
                                                                 bool* grey = nullptr) {
    if (a.r0 && a.r_inf) return std::make_pair(*a.r0, *a.r_inf);
    double x = a.a0 / a.alpha1, y = a.a_inf / a.alpha1;
    auto gx = recognize_rational(x, bd.max_den), gy = recognize_rational(y, bd.max_den);
    if (gx.found && gy.found) return std::make_pair(Rational(gx.p, gx.q), Rational(gy.p, gy.q));
    if (grey) {
        // a near miss at the precision floor cannot be decided
        double fx = gx.found ? 0 : gx.err, fy = gy.found ? 0 : gy.err;
        *grey = (fx > 0 && fx < 1e-13) || (fy > 0 && fy < 1e-13);
    }
    return std::nullopt;
}

struct NormalForm {
    long N = 1;
    LiftedHolonomy canonical;
};

inline NormalForm orbit_normal_form(const LiftedHolonomy& a, const DetectionBounds& bd = {}) {
    auto r = leaf_ratios(a, bd);
    if (!r) throw IndeterminateError("orbit_normal_form: holonomy not recognized as rational");
    BigInt d0 = boost::multiprecision::denominator(r->first), d1 = boost::multiprecision::denominator(r->second);
    BigInt l = boost::multiprecision::lcm(d0, d1);
    NormalForm nf;
    nf.N = static_cast<long>(l);
    nf.canonical = nf.N == 1 ? LiftedHolonomy::exact(a.alpha1, 0, 0) : LiftedHolonomy::exact(a.alpha1, 0, Rational(-1, nf.N));
    return nf;
}

inline LeafClass classify_leaf(const LiftedHolonomy& a, const DetectionBounds& bd = {}) {
    LeafClass lc;
    bool grey = false;
    if (auto r = leaf_ratios(a, bd, &grey)) {
        lc.kind = LeafKind::modular_Y1;
        lc.delta = 1;
        lc.N = orbit_normal_form(a, bd).N;
        if (*lc.N < 2) throw DegenerateError("classify_leaf: a lies in alpha1 Z^2");
        return lc;
    }
    if (grey) return lc;
    double x = a.a0 / a.alpha1, y = a.a_inf / a.alpha1;
    auto rel = find_relation3({x, y, 1.0}, bd.relation_bound);
    if (rel.found) {
        lc.kind = LeafKind::cylinder;
        lc.delta = 2;
        lc.relation = rel.c;
    } else if (rel.residual < 1e-8L) {
        lc.kind = LeafKind::indeterminate;
    } else {
        lc.kind = LeafKind::half_plane;
        lc.delta = 3;
    }
    return lc;
}

inline bool is_algebraic(const Weights& w, const LiftedHolonomy& a, const DetectionBounds& bd = {}) {
    std::vector<double> vals(w.alpha.begin(), w.alpha.end());
    vals.push_back(a.a0);
    vals.push_back(a.a_inf);
    double ref = 0;
    for (double v : vals)
        if (std::abs(v) > std::abs(ref)) ref = v;
    if (ref == 0) return true;
    bool grey = false;
    for (double v : vals) {
        auto g = recognize_rational(v / ref, bd.max_den);
        if (!g.found) {
            if (g.err < 1e-13) grey = true;
            else return false;
        }
    }
    if (grey) throw IndeterminateError("is_algebraic: detection bound reached");
    return true;
}

inline std::set<long> ftheta_components(long p, long q, long M) {
    if (p <= 0 || q <= 0 || M < 1) throw PreconditionError("ftheta_components: p, q, M must be positive");
    if (std::gcd(p, q) != 1) throw PreconditionError("ftheta_components: p/q must be in lowest terms");
    std::set<long> out;
    for (long k = 1; k <= p; ++k)
        if (p % k == 0 && std::gcd(p / k, M) == 1 && k * M != 1) out.insert(k * M);
    return out;
}

}  // namespace ellhyp
