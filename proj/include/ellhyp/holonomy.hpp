#pragma once

#include <functional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "foliation.hpp"
#include "homology.hpp"
#include "periods.hpp"

namespace ellhyp {

enum class Letter { T, Ti, S, Si };

inline const char* to_string(Letter l) {
    switch (l) {
        case Letter::T: return "T";
        case Letter::Ti: return "T^-1";
        case Letter::S: return "S";
        case Letter::Si: return "S^-1";
    }
    return "?";
}

using IMat = std::array<long long, 4>;  // (a, b, c, d)

inline IMat imul(const IMat& x, const IMat& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

// S acts as tau -> -1/tau
inline IMat letter_matrix(Letter l) {
    switch (l) {
        case Letter::T: return {1, 1, 0, 1};
        case Letter::Ti: return {1, -1, 0, 1};
        case Letter::S: return {0, 1, -1, 0};
        case Letter::Si: return {0, -1, 1, 0};
    }
    return {1, 0, 0, 1};
}

struct ModularWord {
    std::vector<Letter> letters;
    GroupElement target;

    IMat evaluate() const {
        IMat r{1, 0, 0, 1};
        for (Letter l : letters) r = imul(r, letter_matrix(l));
        return r;
    }
    // run-length form, e.g. "S T^4 S^-1"
    std::string str() const {
        if (letters.empty()) return "1";
        std::string out;
        for (size_t i = 0; i < letters.size();) {
            size_t j = i;
            while (j < letters.size() && letters[j] == letters[i]) ++j;
            long cnt = long(j - i);
            std::string s;
            switch (letters[i]) {
                case Letter::T: s = cnt == 1 ? "T" : "T^" + std::to_string(cnt); break;
                case Letter::Ti: s = "T^-" + std::to_string(cnt); break;
                case Letter::S: s = cnt == 1 ? "S" : "S^" + std::to_string(cnt); break;
                case Letter::Si: s = cnt == 1 ? "S^-1" : "S^-" + std::to_string(cnt); break;
            }
            out += (out.empty() ? "" : " ") + s;
            i = j;
        }
        return out;
    }
};

inline long long floor_div(long long x, long long y) {
    long long q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
}

// g = T^k1 S T^k2 S ... T^kr, exact; a trailing -I is absorbed by turning the last S into S^-1
inline ModularWord word_decompose(const GroupElement& g) {
    g.check();
    ModularWord w;
    w.target = g;
    IMat cur{g.a, g.b, g.c, g.d};
    auto push_T = [&](long long k) {
        for (long long i = 0; i < std::llabs(k); ++i) w.letters.push_back(k > 0 ? Letter::T : Letter::Ti);
    };
    size_t guard = 0;
    while (cur[2] != 0) {
        if (++guard > 10000) throw Error("word_decompose: no termination");
        const long long a = cur[0], c = cur[2];
        long long k = floor_div(2 * a + c, 2 * c);  // nearest integer to a/c, ties toward 0 at -1/2
        push_T(k);
        w.letters.push_back(Letter::S);
        IMat tk{1, -k, 0, 1};
        cur = imul(letter_matrix(Letter::Si), imul(tk, cur));
    }
    // cur = s [[1, b], [0, 1]]
    const long long s = cur[0];
    push_T(s * cur[1]);
    if (s == -1) {
        auto it = std::find(w.letters.rbegin(), w.letters.rend(), Letter::S);
        if (it != w.letters.rend()) *it = Letter::Si;
        else {
            w.letters.push_back(Letter::S);
            w.letters.push_back(Letter::S);
        }
    }
    IMat e = w.evaluate();
    if (e != IMat{g.a, g.b, g.c, g.d}) throw Error("word_decompose: evaluation mismatch");
    return w;
}

inline bool in_gamma1(const GroupElement& g, long N) {
    return mod(g.c, N) == 0 && mod(g.a, N) == mod(1, N) && mod(g.d, N) == mod(1, N);
}

// arithmetic in the ring generated by mu = exp(2 i pi alpha1 / N) and mu^{N/2} = exp(i pi alpha1)
template <class R>
struct MuRing {
    long N = 0;
    std::function<R(long)> pow;  // mu^k
    R half;                      // mu^{N/2}
    R one() const { return pow(0); }
    Character<R> character(long m, long n) const { return {pow(m), pow(N), pow(-n)}; }
};

inline MuRing<cd> mu_complex(long N, double alpha1) {
    MuRing<cd> r;
    r.N = N;
    r.pow = [N, alpha1](long k) { return std::exp(2.0 * I * pi * alpha1 * double(k) / double(N)); };
    r.half = std::exp(I * pi * alpha1);
    return r;
}

inline MuRing<Cyc> mu_exact(long N, const Rational& alpha1) {
    if (!(alpha1 > 0 && alpha1 < 1)) throw PreconditionError("mu ring: alpha1 must lie in (0,1)");
    const long p = static_cast<long>(numerator(alpha1)), q = static_cast<long>(denominator(alpha1));
    const long n = 2 * q * N;  // zeta = exp(2 i pi / n); mu = zeta^{2p}; mu^{N/2} = zeta^{pN}
    auto F = std::make_shared<const CycloField>(int(n));
    MuRing<Cyc> r;
    r.N = N;
    r.pow = [F, p, n](long k) { return Cyc::zeta(F, mod(2 * p * k, n)); };
    r.half = Cyc::zeta(F, mod(p * N, n));
    return r;
}

template <class R>
Mat2<R> T_matrix(const MuRing<R>& r, long m, long n) {
    return mat2<R>(r.one(), r.pow(-n - m), zero_like(r.one()), r.one());
}

template <class R>
Mat2<R> S_matrix(const MuRing<R>& r, long m, long n) {
    const R z = zero_like(r.one());
    return mat2<R>(r.one() - r.pow(-n), r.pow(-m), z - r.pow(m), z);
}

// F_{m,n-N} = B_{m,n} F_{m,n}
template <class R>
Mat2<R> B_matrix(const MuRing<R>& r, long m, long n) {
    return ht2(r.character(m, n)) * (r.one() / r.half);
}

// F_{m-N,n} = eta A_{m,n} F_{m,n}
template <class R>
Mat2<R> A_matrix(const MuRing<R>& r, long m, long n) {
    return vt2(r.character(m, n)) * (r.pow(-n) / r.half);
}

// general leaves: T_a, S_a with the new lifted holonomy
struct ModularConnection {
    Mat2<cd> matrix;
    LiftedHolonomy new_a;
};

inline bool normalized_leaf(const LiftedHolonomy& a) {
    const double x = a.a0 / a.alpha1, y = -a.a_inf / a.alpha1;
    return x >= -1e-12 && x < 1 - 1e-12 && y >= -1e-12 && y < 1 - 1e-12;
}

inline ModularConnection modular_connection(char kind, const LiftedHolonomy& a, bool require_normalized = true) {
    if (require_normalized && !normalized_leaf(a))
        throw PreconditionError("modular_connection: (a0, -a_inf) must lie in alpha1 [0,1)^2");
    auto ch = character_from(a);
    ModularConnection out;
    if (kind == 'T') {
        out.matrix = mat2<cd>(1.0, ch.rhoinf / ch.rho0, 0.0, 1.0);
        out.new_a = LiftedHolonomy::from_real(a.alpha1, a.a0, a.a_inf - a.a0);
        if (a.r0 && a.r_inf) out.new_a = LiftedHolonomy::exact(a.alpha1, *a.r0, *a.r_inf - *a.r0);
    } else if (kind == 'S') {
        out.matrix = mat2<cd>(1.0 - ch.rhoinf, 1.0 / ch.rho0, -ch.rho0, 0.0);
        out.new_a = LiftedHolonomy::from_real(a.alpha1, a.a_inf, -a.a0);
        if (a.r0 && a.r_inf) out.new_a = LiftedHolonomy::exact(a.alpha1, *a.r_inf, -*a.r0);
    } else {
        throw PreconditionError("modular_connection: kind must be T or S");
    }
    return out;
}

inline Mat2<cd> translation_connection(char kind, long mm, long nn, long N, double alpha1) {
    if (mod(mm, N) == 0 && mod(nn, N) == 0) throw PreconditionError("translation_connection: (m,n) = (0,0) mod N");
    auto r = mu_complex(N, alpha1);
    if (kind == 'A') return A_matrix(r, mm, nn);
    if (kind == 'B') return B_matrix(r, mm, nn);
    throw PreconditionError("translation_connection: kind must be A or B");
}

// log of the composition on the leaf labels
struct HolonomyStep {
    std::string op;  // letter or reduction
    long m = 0, n = 0;  // label after the step
};

template <class R>
struct RawHolonomy {
    Mat2<R> raw;
    std::vector<HolonomyStep> steps;
};

// compose the connection matrices along the word, starting from the leaf (0,1)
template <class R>
RawHolonomy<R> compose_holonomy(const ModularWord& w, const MuRing<R>& r) {
    const long N = r.N;
    long m = 0, n = 1;
    RawHolonomy<R> out{identity2(r.one()), {}};
    auto apply = [&](const Mat2<R>& X, const std::string& op) {
        out.raw = out.raw * X;
        out.steps.push_back({op, m, n});
    };
    auto reduce_n = [&]() {
        while (n < 0) {
            Mat2<R> B = B_matrix(r, m, n + N);
            n += N;
            apply(B, "B");
        }
        while (n >= N) {
            Mat2<R> B = B_matrix(r, m, n);
            n -= N;
            apply(inverse(B), "B^-1");
        }
    };
    // the scalar eta of the A-relation is dropped (projective)
    auto reduce_m = [&]() {
        while (m < 0) {
            Mat2<R> A = A_matrix(r, m + N, n);
            m += N;
            apply(A, "A");
        }
        while (m >= N) {
            Mat2<R> A = A_matrix(r, m, n);
            m -= N;
            apply(inverse(A), "A^-1");
        }
    };
    for (Letter L : w.letters) {
        switch (L) {
            case Letter::T: {
                Mat2<R> X = T_matrix(r, m, n);
                n = m + n;
                apply(X, "T");
                break;
            }
            case Letter::Ti: {
                n = n - m;
                apply(inverse(T_matrix(r, m, n)), "T^-1");
                break;
            }
            case Letter::S: {
                reduce_n();
                Mat2<R> X = S_matrix(r, m, n);
                const long m2 = -n, n2 = m;
                m = m2;
                n = n2;
                apply(X, "S");
                break;
            }
            case Letter::Si: {
                reduce_n();
                const long m2 = n, n2 = -m;
                m = m2;
                n = n2;
                apply(inverse(S_matrix(r, m, n)), "S^-1");
                break;
            }
        }
    }
    reduce_n();
    reduce_m();
    if (m != 0 || n != 1) throw Error("holonomy: final leaf label is not (0,1)");
    return out;
}

// Z = [[mu^-1, -(mu^{N-1} - 1)/(mu^N - 1)], [0, 1]]
template <class R>
Mat2<R> normalization_Z(const MuRing<R>& r) {
    const R one = r.one(), z = zero_like(one);
    return mat2<R>(r.pow(-1), z - (r.pow(r.N - 1) - one) / (r.pow(r.N) - one), z, one);
}

// closed form of the raw holonomy of U_N = [[1,0],[-N,1]]
template <class R>
Mat2<R> un_closed_form(const MuRing<R>& r) {
    const R one = r.one(), mu = r.pow(1);
    const long N = r.N;
    Mat2<R> X = mat2<R>(one, (one - mu) * (one - mu) / (mu * mu), mu * mu * (one - r.pow(-N)) / (one - mu),
                        one - mu - r.pow(-N) + r.pow(1 - N) * 2);
    return X * r.half;
}

// the leaf (0,1) character: (1, mu^N, mu^-1)
template <class R>
Character<R> base_character(const MuRing<R>& r) {
    return r.character(0, 1);
}

struct HolonomyMatrix {
    ModularWord word;
    Mat2<cd> raw;         // Lambda'
    Mat2<cd> normalized;  // Z^-1 Lambda' Z, rescaled to det 1 with a real-positive leading nonzero entry
    double imag_residual = 0;  // max |Im| after rescaling
    double ih_residual = 0;    // projective preservation of the hermitian form
    std::vector<HolonomyStep> steps;
};

template <class R>
Mat2<R> normalize_lambda(const Mat2<R>& raw, const MuRing<R>& r) {
    Mat2<R> Z = normalization_Z(r);
    return inverse(Z) * raw * Z;
}

// rescale a projective 2x2 complex matrix to det 1 and real leading entry
inline Mat2<cd> projective_real(const Mat2<cd>& X) {
    cd s = std::sqrt(det(X));
    Mat2<cd> Y = X * (1.0 / s);
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (std::abs(Y.a[i]) > std::abs(Y.a[k])) k = i;
    cd ph = std::abs(Y.a[k]) / Y.a[k];
    return Y * ph;
}

// |X^H K X - c K| / |K| with c fitted; K = (II)^-1
inline double ih_preservation(const Mat2<cd>& X, const Character<cd>& ch) {
    Mat2<cd> K = hermitian_form(ch);
    Mat2<cd> P = X.adjoint() * K * X;
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (std::abs(K.a[i]) > std::abs(K.a[k])) k = i;
    cd c = P.a[k] / K.a[k];
    double num = 0, den = 0;
    for (int i = 0; i < 4; ++i) {
        num = std::max(num, std::abs(P.a[i] - c * K.a[i]));
        den = std::max(den, std::abs(c * K.a[i]));
    }
    return num / den;
}

// exact: X^H K X == c K for K = (II)^-1 in the cyclotomic field
inline bool ih_preserved_exact(const Mat2<Cyc>& X, const Character<Cyc>& ch) {
    Mat2<Cyc> K = inverse(intersection2(ch));
    Mat2<Cyc> P = X.adjoint() * K * X;
    int k = 0;
    while (k < 4 && K.a[k].is_zero()) ++k;
    if (k == 4) return false;
    Cyc c = P.a[k] / K.a[k];
    for (int i = 0; i < 4; ++i)
        if (P.a[i] != c * K.a[i]) return false;
    return c == c.conj();
}

// exact projective reality: X(i) conj(X(j)) is real for all i, j
inline bool projectively_real_exact(const Mat2<Cyc>& X) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Cyc p = X.a[i] * X.a[j].conj();
            if (p != p.conj()) return false;
        }
    return true;
}

inline HolonomyMatrix holonomy_matrix(const GroupElement& g, long N, double alpha1) {
    if (N < 2) throw PreconditionError("holonomy: N >= 2 required");
    if (!in_gamma1(g, N)) throw PreconditionError("holonomy: element not in Gamma_1(N)");
    HolonomyMatrix h;
    h.word = word_decompose(g);
    auto r = mu_complex(N, alpha1);
    auto raw = compose_holonomy(h.word, r);
    h.raw = raw.raw;
    h.steps = raw.steps;
    h.normalized = projective_real(normalize_lambda(h.raw, r));
    for (auto& v : h.normalized.a) h.imag_residual = std::max(h.imag_residual, std::abs(v.imag()));
    h.ih_residual = ih_preservation(h.raw, base_character(r));
    return h;
}

struct HolonomyExact {
    ModularWord word;
    Mat2<Cyc> raw;
    Mat2<Cyc> normalized;
    bool ih_preserved = false;
    bool real_projectively = false;
};

inline HolonomyExact holonomy_matrix_exact(const GroupElement& g, long N, const Rational& alpha1) {
    if (N < 2) throw PreconditionError("holonomy: N >= 2 required");
    if (!in_gamma1(g, N)) throw PreconditionError("holonomy: element not in Gamma_1(N)");
    HolonomyExact h;
    h.word = word_decompose(g);
    auto r = mu_exact(N, alpha1);
    h.raw = compose_holonomy(h.word, r).raw;
    h.normalized = normalize_lambda(h.raw, r);
    h.ih_preserved = ih_preserved_exact(h.raw, base_character(r));
    h.real_projectively = projectively_real_exact(h.normalized);
    return h;
}

// ---------- numerical monodromy ----------

inline double projective_residual(const std::array<cd, 2>& x, const std::array<cd, 2>& y) {
    return std::abs(x[0] * y[1] - x[1] * y[0]) / (std::hypot(std::abs(x[0]), std::abs(x[1])) * std::hypot(std::abs(y[0]), std::abs(y[1])));
}

inline std::array<cd, 2> mat_apply(const Mat2<cd>& M, const std::array<cd, 2>& v) {
    return {M(0, 0) * v[0] + M(0, 1) * v[1], M(1, 0) * v[0] + M(1, 1) * v[1]};
}

inline std::array<cd, 2> periods_01(long N, double alpha1, cd tau, double tau_min, const PeriodOptions& o) {
    auto pv = period_vector(LiftedHolonomy::leaf_mn(alpha1, 0, 1, N), ModularPoint(tau, tau_min), o);
    return {pv.F_inf, pv.F_0};
}

// Moebius map W = (x0 w + x1)/(x2 w + x3) through three point pairs, det-normalized
inline Mat2<cd> fit_moebius(const std::array<cd, 3>& w, const std::array<cd, 3>& W) {
    cd A[3][4];
    for (int i = 0; i < 3; ++i) {
        A[i][0] = w[i];
        A[i][1] = 1.0;
        A[i][2] = -W[i] * w[i];
        A[i][3] = -W[i];
    }
    auto minor = [&](int skip) {
        int c[3], k = 0;
        for (int j = 0; j < 4; ++j)
            if (j != skip) c[k++] = j;
        return A[0][c[0]] * (A[1][c[1]] * A[2][c[2]] - A[1][c[2]] * A[2][c[1]]) -
               A[0][c[1]] * (A[1][c[0]] * A[2][c[2]] - A[1][c[2]] * A[2][c[0]]) +
               A[0][c[2]] * (A[1][c[0]] * A[2][c[1]] - A[1][c[1]] * A[2][c[0]]);
    };
    cd x[4];
    for (int j = 0; j < 4; ++j) x[j] = (j % 2 == 0 ? 1.0 : -1.0) * minor(j);
    Mat2<cd> X = mat2<cd>(x[0], x[1], x[2], x[3]);
    return X * (1.0 / std::sqrt(det(X)));
}

struct MonodromyReport {
    cd tau, gtau;
    Mat2<cd> predicted;  // Lambda'(g)
    double residual = 0;  // projective residual of F(g tau) against Lambda' F(tau)
    cd scalar;            // F(g tau) = scalar Lambda' F(tau) (least squares)
    Mat2<cd> fitted;      // Moebius fit of the observed monodromy, det 1
    cd fitted_trace;
    double fit_vs_predicted = 0;  // distance between the det-1 matrices up to sign
    double fitted_ih_residual = 0;
    double tol = 1e-6;
    bool pass = false;
};

inline MonodromyReport monodromy_numeric_check(const GroupElement& g, long N, double alpha1, cd tau, double tol = 1e-6,
                                               double tau_min = 0.05, const PeriodOptions& o = {}) {
    HolonomyMatrix h = holonomy_matrix(g, N, alpha1);
    MonodromyReport r;
    r.tau = tau;
    r.gtau = g.mobius(tau);
    r.predicted = h.raw;
    r.tol = tol;
    auto F = periods_01(N, alpha1, tau, tau_min, o);
    auto G = periods_01(N, alpha1, r.gtau, tau_min, o);
    auto P = mat_apply(h.raw, F);
    r.residual = projective_residual(G, P);
    r.scalar = (G[0] * std::conj(P[0]) + G[1] * std::conj(P[1])) / (std::norm(P[0]) + std::norm(P[1]));
    std::array<cd, 3> w, W;
    const cd off[3] = {0.0, cd(0.03, 0), cd(0, 0.03)};
    for (int i = 0; i < 3; ++i) {
        cd t = tau + off[i] * std::min(1.0, tau.imag());
        auto f = periods_01(N, alpha1, t, tau_min, o);
        auto gf = periods_01(N, alpha1, g.mobius(t), tau_min, o);
        w[i] = f[0] / f[1];
        W[i] = gf[0] / gf[1];
    }
    r.fitted = fit_moebius(w, W);
    r.fitted_trace = trace(r.fitted);
    Mat2<cd> Pn = h.raw * (1.0 / std::sqrt(det(h.raw)));
    double dp = 0, dm = 0;
    for (int i = 0; i < 4; ++i) {
        dp = std::max(dp, std::abs(r.fitted.a[i] - Pn.a[i]));
        dm = std::max(dm, std::abs(r.fitted.a[i] + Pn.a[i]));
    }
    r.fit_vs_predicted = std::min(dp, dm);
    r.fitted_ih_residual = ih_preservation(r.fitted, base_character(mu_complex(N, alpha1)));
    r.pass = r.residual < tol;
    return r;
}

// monodromy of F_{0,1} along U_N as observed numerically: [[mu^{N-1}, 0], [-sum_{k=1..N} mu^k, 1]]
inline Mat2<cd> un_observed_monodromy(long N, double alpha1) {
    auto r = mu_complex(N, alpha1);
    cd s = 0;
    for (long k = 1; k <= N; ++k) s += r.pow(k);
    return mat2<cd>(r.pow(N - 1), 0.0, -s, 1.0);
}

// ---------- numerical connection relations ----------

struct RelationReport {
    double residual = 0;  // relative (vector) or projective residual
    cd scalar;            // observed proportionality scalar
    cd expected_scalar;   // where a closed form is stated
};

// F_a(tau + 1) = T_a F_{a'}(tau)
inline RelationReport t_relation(const LiftedHolonomy& a, cd tau, const PeriodOptions& o = {}) {
    auto c = modular_connection('T', a);
    auto L = period_vector(a, ModularPoint(tau + 1.0), o);
    auto R = period_vector(c.new_a, ModularPoint(tau), o);
    auto P = mat_apply(c.matrix, {R.F_inf, R.F_0});
    RelationReport rep;
    rep.residual = std::hypot(std::abs(L.F_inf - P[0]), std::abs(L.F_0 - P[1])) / std::hypot(std::abs(P[0]), std::abs(P[1]));
    rep.scalar = (L.F_inf * std::conj(P[0]) + L.F_0 * std::conj(P[1])) / (std::norm(P[0]) + std::norm(P[1]));
    rep.expected_scalar = 1.0;
    return rep;
}

// F_a(-1/tau) proportional to S_a F_{a~}(tau), scalar sigma_a(tau)
inline RelationReport s_relation(const LiftedHolonomy& a, cd tau, const PeriodOptions& o = {}) {
    auto c = modular_connection('S', a);
    auto L = period_vector(a, ModularPoint(-1.0 / tau), o);
    auto R = period_vector(c.new_a, ModularPoint(tau), o);
    auto P = mat_apply(c.matrix, {R.F_inf, R.F_0});
    RelationReport rep;
    rep.residual = projective_residual({L.F_inf, L.F_0}, P);
    rep.scalar = (L.F_inf * std::conj(P[0]) + L.F_0 * std::conj(P[1])) / (std::norm(P[0]) + std::norm(P[1]));
    const cd s = a.a0 + a.a_inf * tau;
    rep.expected_scalar = -std::exp(-I * pi * s * s / (a.alpha1 * tau)) / tau;
    return rep;
}

// F_{m,n-N} = B_{m,n} F_{m,n}
inline RelationReport b_relation(long mm, long nn, long N, double alpha1, cd tau, const PeriodOptions& o = {}) {
    ModularPoint m(tau);
    auto L = period_vector(LiftedHolonomy::leaf_mn(alpha1, mm, nn - N, N), m, o);
    auto R = period_vector(LiftedHolonomy::leaf_mn(alpha1, mm, nn, N), m, o);
    auto P = mat_apply(translation_connection('B', mm, nn, N, alpha1), {R.F_inf, R.F_0});
    RelationReport rep;
    rep.residual = projective_residual({L.F_inf, L.F_0}, P);
    rep.scalar = (L.F_inf * std::conj(P[0]) + L.F_0 * std::conj(P[1])) / (std::norm(P[0]) + std::norm(P[1]));
    rep.expected_scalar = 1.0;
    return rep;
}

// F_{m-N,n} = eta A_{m,n} F_{m,n}, eta = exp(i pi tau alpha1 (1 - 2m/N))
inline RelationReport a_relation(long mm, long nn, long N, double alpha1, cd tau, const PeriodOptions& o = {}) {
    ModularPoint m(tau);
    auto L = period_vector(LiftedHolonomy::leaf_mn(alpha1, mm - N, nn, N), m, o);
    auto R = period_vector(LiftedHolonomy::leaf_mn(alpha1, mm, nn, N), m, o);
    auto P = mat_apply(translation_connection('A', mm, nn, N, alpha1), {R.F_inf, R.F_0});
    RelationReport rep;
    rep.residual = projective_residual({L.F_inf, L.F_0}, P);
    rep.scalar = (L.F_inf * std::conj(P[0]) + L.F_0 * std::conj(P[1])) / (std::norm(P[0]) + std::norm(P[1]));
    rep.expected_scalar = std::exp(I * pi * tau * alpha1 * (1.0 - 2.0 * double(mm) / double(N)));
    return rep;
}

}  // namespace ellhyp
