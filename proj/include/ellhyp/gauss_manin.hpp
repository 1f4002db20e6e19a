#pragma once

#include <array>

#include "algebra.hpp"
#include "periods.hpp"

namespace ellhyp {

struct GMMatrix {
    cd M00, M01, M10, M11;
    cd tau;
    LiftedHolonomy a;
    cd trace() const { return M00 + M11; }
    cd det() const { return M00 * M11 - M01 * M10; }
    Mat2<cd> mat() const { return mat2(M00, M01, M10, M11); }
};

namespace detail {

struct GMData {
    cd rho, rhop, rhopp, mu, mup, mup0, c, etap, etapp, cdot;
};

inline GMData gm_data(cd t, const ModularPoint& m) {
    detail::check_off_lattice(t, m, "gauss-manin");
    GMData g;
    auto d = theta_derivs(t, m, 3);
    auto l = detail::log_derivs(d.data(), 3);
    g.rho = l[1];
    g.rhop = l[2];
    g.rhopp = l[3];
    g.mu = mu_fn(t, m);
    g.mup = mu_prime(t, m);
    g.mup0 = mu_prime0(m);
    const cd c1 = m.c0[1], c3 = m.c0[3], c5 = m.c0[5];
    g.c = c3 / c1;
    g.etap = -g.mu / (2.0 * I * pi);
    g.etapp = -g.mup / (2.0 * I * pi);
    g.cdot = (c5 / c1 - g.c * g.c) / (4.0 * I * pi);
    return g;
}

}  // namespace detail

inline GMMatrix gm_matrix(const LiftedHolonomy& a, const ModularPoint& m) {
    if (!(a.alpha1 > 0 && a.alpha1 < 1)) throw PreconditionError("gm_matrix: alpha1 must lie in (0,1)");
    const cd t = a.t_of_tau(m.tau);
    auto g = detail::gm_data(t, m);
    const double a0 = a.a0, al = a.alpha1;
    const cd k = al / (4.0 * I * pi);
    GMMatrix M;
    M.tau = m.tau;
    M.a = a;
    M.M00 = 2.0 * I * pi * a0 * a0 / al + a0 * g.rho + k * (g.rhop + g.rho * g.rho - g.c);
    M.M01 = (al - 1) / (2.0 * I * pi);
    M.M10 = 2.0 * I * pi * (a0 * a0 / al) * g.rhop - 2.0 * a0 * g.mu - k * (g.mup + 2.0 * g.rho * g.mu - 3.0 * g.mup0);
    M.M11 = -a0 * g.rho - k * (g.rhop + g.rho * g.rho - g.c);
    return M;
}

// total tau-derivatives of the diagonal entries (t moves with tau)
struct GMDerivative {
    cd dM00, dM11;
};

inline GMDerivative gm_matrix_dot(const LiftedHolonomy& a, const ModularPoint& m) {
    const cd t = a.t_of_tau(m.tau);
    auto g = detail::gm_data(t, m);
    const double a0 = a.a0, al = a.alpha1;
    const cd k = al / (4.0 * I * pi);
    const cd rdot = g.rhop * (a0 / al) + g.etap;
    const cd rpdot = g.rhopp * (a0 / al) + g.etapp;
    GMDerivative d;
    d.dM00 = a0 * rdot + k * (rpdot + 2.0 * g.rho * rdot - g.cdot);
    d.dM11 = -a0 * rdot - k * (rpdot + 2.0 * g.rho * rdot - g.cdot);
    return d;
}

// Mano's system for (V, W) with integrand (theta / theta_{m,n})^{alpha1}
struct ManoMatrix {
    cd A, B, C, D;
    cd Adot;
    cd tau;
    cd trace() const { return A + D; }
    cd det() const { return A * D - B * C; }
    Mat2<cd> mat() const { return mat2(A, B, C, D); }
};

inline ManoMatrix mano_matrix(int mm, int nn, int N, double alpha1, const ModularPoint& m) {
    if (N < 2) throw PreconditionError("mano_matrix: N >= 2 required");
    if ((((mm % N) + N) % N == 0) && (((nn % N) + N) % N == 0)) throw PreconditionError("mano_matrix: (m,n) = (0,0) mod N");
    if (!(alpha1 > 0 && alpha1 < 1)) throw PreconditionError("mano_matrix: alpha1 must lie in (0,1)");
    const double x = double(mm) / N, y = double(nn) / N;
    const cd s = x * m.tau + y;
    detail::check_off_lattice(s, m, "mano_matrix");
    auto d = theta_derivs(s, m, 4);
    auto l = detail::log_derivs(d.data(), 2);
    const cd rho_s = l[1], rhop_s = l[2];
    const cd f = 4.0 * I * pi;
    const cd eta = d[2] / (f * d[0]);
    const cd etap = eta_du(s, m);
    const cd etat = eta_dtau(s, m);
    const cd c1 = m.c0[1], c3 = m.c0[3], c5 = m.c0[5];
    const cd c = c3 / c1;
    const cd cdot = (c5 / c1 - c * c) / f;
    const cd X = I * pi * x * x + x * rho_s + eta;
    const cd Xdot = x * x * rhop_s + 2.0 * x * etap + etat;
    const cd Y = c / f, Ydot = cdot / f;
    ManoMatrix M;
    M.tau = m.tau;
    M.A = alpha1 * (X - Y);
    M.Adot = alpha1 * (Xdot - Ydot);
    M.B = (alpha1 - 1) / (2.0 * I * pi);
    M.C = 2.0 * I * pi * M.Adot;
    M.D = -M.A;
    return M;
}

// v'' + p v' + q v = 0 for the first component
struct ScalarODE {
    cd p;           // -trace
    cd q;           // det - dM00 (first-order recipe)
    cd q_trace_form;  // det + dM11
    cd q_fd;          // det - dM00 with dM00 by Richardson-extrapolated central differences
};

inline ScalarODE system_to_scalar(const LiftedHolonomy& a, const ModularPoint& m, double h = 1e-4) {
    GMMatrix M = gm_matrix(a, m);
    if (std::abs(M.M01) == 0) throw DegenerateError("system_to_scalar: M01 vanishes");
    GMDerivative dM = gm_matrix_dot(a, m);
    ScalarODE s;
    s.p = -M.trace();
    s.q = M.det() - dM.dM00;
    s.q_trace_form = M.det() + dM.dM11;
    auto m00 = [&](cd tau) { return gm_matrix(a, ModularPoint(tau, m.tau_min)).M00; };
    auto central = [&](double e) { return (m00(m.tau + e) - m00(m.tau - e)) / (2 * e); };
    const cd fd = (4.0 * central(h / 2) - central(h)) / 3.0;
    s.q_fd = M.det() - fd;
    return s;
}

inline cd mano_scalar_coefficient(const ManoMatrix& M) { return M.det() - M.Adot; }

struct IndicialData {
    double s_plus = 0, s_minus = 0, nu = 0;
};

struct IndicialExact {
    Rational s_plus, s_minus, nu;
};

inline IndicialExact indicial_exact(long mm, long N, const Rational& alpha1) {
    if (N < 1 || mm < 0 || mm >= N) throw PreconditionError("indicial: need 0 <= m < N");
    IndicialExact r;
    r.nu = Rational(mm * (N - mm), N) * alpha1;
    r.s_plus = r.nu / 2;
    r.s_minus = -r.s_plus;
    return r;
}

inline IndicialData indicial(long mm, long N, double alpha1) {
    if (N < 1 || mm < 0 || mm >= N) throw PreconditionError("indicial: need 0 <= m < N");
    IndicialData r;
    r.nu = double(mm * (N - mm)) * alpha1 / double(N);
    r.s_plus = r.nu / 2;
    r.s_minus = -r.s_plus;
    return r;
}

// five-point centered stencil in the vertical direction
struct Stencil {
    static constexpr std::array<int, 5> k{-2, -1, 0, 1, 2};
    double h = 1e-3;
    cd at(cd tau, int i) const { return tau + cd(0.0, k[i] * h); }
    // d/dtau, d^2/dtau^2 from samples along tau + i k h
    template <class V>
    std::pair<V, V> derivs(const std::array<V, 5>& v) const {
        V d1 = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
        V d2 = (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
        // tau = tau0 + i s: d/dtau = -i d/ds, d^2/dtau^2 = -d^2/ds^2
        return {d1 * cd(0, -1), d2 * -1.0};
    }
};

struct CyclePeriods {
    cd F, W;
};

// F and W on both cycles along a stencil with a frozen contour, level and loop radius
inline std::array<std::array<CyclePeriods, 5>, 2> stencil_periods(const std::function<BranchedIntegrand(const ModularPoint&)>& make,
                                                                  cd tau, const Stencil& st, double tau_min = 0.05) {
    std::array<std::array<CyclePeriods, 5>, 2> out;
    const Cycle cyc[2] = {Cycle::gamma0, Cycle::gamma_inf};
    for (int c = 0; c < 2; ++c) {
        ModularPoint m0(tau, tau_min);
        BranchedIntegrand f0 = make(m0);
        PeriodOptions o;
        o.tol = 1e-13;
        o.require_convergence = false;
        PeriodEngine e0(f0, cyc[c], o);
        const double eps = e0.eps(), delta = e0.default_delta();
        int level = std::max(e0.integrate(0, 1, Weight::one, quad_options(o)).level,
                             e0.regularized(Weight::rho_prime, delta, quad_options(o)).level);
        PeriodOptions fixed;
        fixed.eps = eps;
        fixed.delta = delta;
        fixed.fixed_level = level + 1;
        fixed.require_convergence = false;
        for (int i = 0; i < 5; ++i) {
            ModularPoint m(st.at(tau, i), tau_min);
            BranchedIntegrand f = make(m);
            out[c][i].F = period_F(f, cyc[c], Weight::one, fixed).value;
            out[c][i].W = period_F(f, cyc[c], Weight::rho_prime, fixed).value;
        }
    }
    return out;
}

struct OdeReport {
    double first_order[2] = {0, 0};   // gamma0, gamma_inf
    double second_order[2] = {0, 0};
    double q_forms_agreement = 0;     // |q - q_trace_form| / |q|
    double q_fd_agreement = 0;        // analytic vs finite-difference dM00
    double tol = 1e-5;
    double h = 1e-3;
    bool pass = false;
    double max_residual() const {
        return std::max({first_order[0], first_order[1], second_order[0], second_order[1]});
    }
};

namespace detail {
inline double first_order_residual(const std::array<CyclePeriods, 5>& v, const Mat2<cd>& M, const Stencil& st) {
    std::array<cd, 5> F, W;
    for (int i = 0; i < 5; ++i) {
        F[i] = v[i].F;
        W[i] = v[i].W;
    }
    auto [dF, d2F] = st.derivs(F);
    auto [dW, d2W] = st.derivs(W);
    (void)d2F;
    (void)d2W;
    cd rF = M(0, 0) * F[2] + M(0, 1) * W[2], rW = M(1, 0) * F[2] + M(1, 1) * W[2];
    double num = std::hypot(std::abs(dF - rF), std::abs(dW - rW));
    double den = std::max(std::hypot(std::abs(dF), std::abs(dW)), std::hypot(std::abs(rF), std::abs(rW)));
    return num / den;
}

inline double second_order_residual(const std::array<CyclePeriods, 5>& v, cd p, cd q, const Stencil& st) {
    std::array<cd, 5> F;
    for (int i = 0; i < 5; ++i) F[i] = v[i].F;
    auto [d1, d2] = st.derivs(F);
    cd r = d2 + p * d1 + q * F[2];
    double den = std::max({std::abs(d2), std::abs(p * d1), std::abs(q * F[2])});
    return std::abs(r) / den;
}
}  // namespace detail

inline OdeReport check_ode(const LiftedHolonomy& a, const ModularPoint& m, double tol = 1e-5, double h = 1e-3) {
    Stencil st;
    st.h = h;
    auto v = stencil_periods([&](const ModularPoint& mp) { return BranchedIntegrand(a, mp); }, m.tau, st, m.tau_min);
    GMMatrix M = gm_matrix(a, m);
    ScalarODE s = system_to_scalar(a, m);
    OdeReport r;
    r.tol = tol;
    r.h = h;
    for (int c = 0; c < 2; ++c) {
        r.first_order[c] = detail::first_order_residual(v[c], M.mat(), st);
        r.second_order[c] = detail::second_order_residual(v[c], s.p, s.q, st);
    }
    r.q_forms_agreement = std::abs(s.q - s.q_trace_form) / std::abs(s.q);
    r.q_fd_agreement = std::abs(s.q - s.q_fd) / std::abs(s.q);
    r.pass = r.max_residual() < tol;
    return r;
}

inline OdeReport check_mano(int mm, int nn, int N, double alpha1, const ModularPoint& m, double tol = 1e-5, double h = 1e-3) {
    Stencil st;
    st.h = h;
    auto v = stencil_periods([&](const ModularPoint& mp) { return mano_integrand(mm, nn, N, alpha1, mp); }, m.tau, st,
                             m.tau_min);
    ManoMatrix M = mano_matrix(mm, nn, N, alpha1, m);
    const cd q = mano_scalar_coefficient(M);
    OdeReport r;
    r.tol = tol;
    r.h = h;
    for (int c = 0; c < 2; ++c) {
        r.first_order[c] = detail::first_order_residual(v[c], M.mat(), st);
        r.second_order[c] = detail::second_order_residual(v[c], 0.0, q, st);
    }
    r.pass = r.max_residual() < tol;
    return r;
}

// F0 F_inf' - F_inf F0' at tau
inline cd wronskian(const LiftedHolonomy& a, const ModularPoint& m, double h = 1e-3) {
    Stencil st;
    st.h = h;
    std::array<cd, 5> F0, Fi;
    PeriodOptions o;
    o.tol = 1e-13;
    o.require_convergence = false;
    BranchedIntegrand c(a, m);
    PeriodEngine e0(c, Cycle::gamma0, o), ei(c, Cycle::gamma_inf, o);
    PeriodOptions f0, fi;
    f0.eps = e0.eps();
    fi.eps = ei.eps();
    f0.fixed_level = fi.fixed_level = 1 + std::max(e0.integrate(0, 1, Weight::one, quad_options(o)).level,
                                                   ei.integrate(0, 1, Weight::one, quad_options(o)).level);
    f0.require_convergence = fi.require_convergence = false;
    for (int i = 0; i < 5; ++i) {
        ModularPoint mp(st.at(m.tau, i), m.tau_min);
        BranchedIntegrand f(a, mp);
        F0[i] = period_F(f, Cycle::gamma0, Weight::one, f0).value;
        Fi[i] = period_F(f, Cycle::gamma_inf, Weight::one, fi).value;
    }
    auto [d0, dd0] = st.derivs(F0);
    auto [di, ddi] = st.derivs(Fi);
    (void)dd0;
    (void)ddi;
    return F0[2] * di - Fi[2] * d0;
}

}  // namespace ellhyp
