#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "common.hpp"

namespace ellhyp {

inline constexpr int kMaxThetaOrder = 17;

// Raw symmetric sum of -i sum (-1)^n exp(i pi (n+1/2)^2 tau + 2 i pi (n+1/2) u),
// differentiated K times in u.  Centered on the dominant index so large Im u is fine.
inline void theta_series(cd u, cd tau, int K, cd* out) {
    if (K < 0 || K > kMaxThetaOrder) throw PreconditionError("theta_series: order out of range");
    std::fill(out, out + K + 1, cd{});
    const double y = tau.imag();
    const long nc = std::lround(-u.imag() / y - 0.5);
    double runmax = 0.0;
    auto add = [&](long n) {
        double k = n + 0.5;
        cd e = std::exp(I * pi * k * k * tau + 2.0 * I * pi * k * u);
        if (n & 1) e = -e;
        cd f = -I * e;
        const cd d = 2.0 * I * pi * k;
        double bound = std::abs(f) * std::pow(2 * pi * std::abs(k), K);
        for (int j = 0; j <= K; ++j) {
            out[j] += f;
            f *= d;
        }
        runmax = std::max(runmax, bound);
        return bound;
    };
    add(nc);
    for (long j = 1; j < 100000; ++j) {
        double b1 = add(nc + j);
        double b2 = add(nc - j);
        if (j >= 3 && b1 < 1e-20 * runmax && b2 < 1e-20 * runmax) return;
    }
    throw ConvergenceError("theta_series: no convergence");
}

inline cd log_eta(cd tau) {
    cd s = I * pi * tau / 12.0;
    const cd q2 = std::exp(2.0 * I * pi * tau);
    cd x = q2;
    for (int n = 1; n < 100000 && std::abs(x) > 1e-19; ++n) {
        s += std::log(1.0 - x);
        x *= q2;
    }
    return s;
}

struct ModularPoint {
    cd tau;
    cd q;
    double tau_min = 0.05;
    std::array<cd, kMaxThetaOrder + 1> c0{};  // theta^(j)(0)
    cd log_dtheta0;                          // log theta'(0) = log 2pi + 3 log eta

    explicit ModularPoint(cd t, double tmin = 0.05) : tau(t), tau_min(tmin) {
        if (!(t.imag() >= tmin)) throw DomainError("Im(tau) below tau_min");
        q = std::exp(I * pi * t);
        theta_series(0.0, t, kMaxThetaOrder, c0.data());
        for (int j = 0; j <= kMaxThetaOrder; j += 2) c0[j] = 0.0;
        log_dtheta0 = std::log(2 * pi) + 3.0 * log_eta(t);
    }
    double puncture_eps() const { return 1e-8 * std::max(1.0, std::abs(tau)); }
    double taylor_radius() const { return 0.02 * std::min(1.0, tau.imag()); }
};

struct ThetaJet {
    cd value;
    std::array<cd, 4> du{};  // d^k/du^k, k = 1..4
    cd dtau;                 // heat equation: du[1] / (4 i pi)
};

inline ThetaJet theta(cd u, const ModularPoint& m, int max_order = 4) {
    if (max_order < 0 || max_order > 4) throw PreconditionError("theta: max_order must be in [0,4]");
    if (!(m.tau.imag() >= m.tau_min)) throw DomainError("Im(tau) below tau_min");
    std::array<cd, 5> d{};
    theta_series(u, m.tau, std::max(max_order, 2), d.data());
    ThetaJet j;
    j.value = d[0];
    for (int k = 1; k <= max_order; ++k) j.du[k - 1] = d[k];
    j.dtau = d[2] / (4.0 * I * pi);
    return j;
}

inline std::array<cd, kMaxThetaOrder + 1> theta_derivs(cd u, const ModularPoint& m, int K) {
    std::array<cd, kMaxThetaOrder + 1> d{};
    theta_series(u, m.tau, K, d.data());
    return d;
}

inline cd theta_quasi_period(cd u, const ModularPoint& m) { return theta(u + m.tau, m, 0).value; }

struct LatticeReduction {
    cd ur;  // u = ur + k + l tau
    long k = 0, l = 0;
    double dist = 0;
};

inline LatticeReduction lattice_reduce(cd u, cd tau) {
    long l = std::lround(u.imag() / tau.imag());
    cd u1 = u - double(l) * tau;
    long k = std::lround(u1.real());
    LatticeReduction best{u1 - double(k), k, l, std::abs(u1 - double(k))};
    for (int dl = -1; dl <= 1; ++dl)
        for (int dk = -1; dk <= 1; ++dk) {
            cd c = u - double(l + dl) * tau - double(k + dk);
            if (std::abs(c) < best.dist) best = {c, k + dk, l + dl, std::abs(c)};
        }
    return best;
}

inline double lattice_distance(cd u, cd tau) { return lattice_reduce(u, tau).dist; }

// theta value with lattice reduction and the odd Taylor series near zeros; relative accuracy
// is kept close to the zeros of theta, which the period integrands need.
inline cd theta_value(cd u, const ModularPoint& m) {
    LatticeReduction r = lattice_reduce(u, m.tau);
    cd base;
    if (r.dist < m.taylor_radius()) {
        cd u2 = r.ur * r.ur, p = r.ur;
        double fact = 1;
        base = 0;
        for (int j = 1; j <= kMaxThetaOrder; j += 2) {
            if (j > 1) fact *= double(j - 1) * j;
            base += m.c0[j] * p / fact;
            p *= u2;
        }
    } else {
        theta_series(r.ur, m.tau, 0, &base);
    }
    if (r.k == 0 && r.l == 0) return base;
    const double L = double(r.l);
    return base * std::exp(I * pi * double(r.k + r.l) - I * pi * m.tau * L * L - 2.0 * I * pi * L * r.ur);
}

inline cd log_theta_value_near(cd u, const ModularPoint& m, cd ref) { return log_near(theta_value(u, m), ref); }

namespace detail {
// derivatives of log theta from the derivatives of theta
inline std::array<cd, 5> log_derivs(const cd* d, int n) {
    std::array<cd, 5> t{}, r{};
    for (int k = 1; k <= n; ++k) t[k] = d[k] / d[0];
    if (n >= 1) r[1] = t[1];
    if (n >= 2) r[2] = t[2] - t[1] * t[1];
    if (n >= 3) r[3] = t[3] - 3.0 * t[1] * t[2] + 2.0 * t[1] * t[1] * t[1];
    if (n >= 4)
        r[4] = t[4] - 4.0 * t[1] * t[3] - 3.0 * t[2] * t[2] + 12.0 * t[1] * t[1] * t[2] -
               6.0 * t[1] * t[1] * t[1] * t[1];
    return r;
}

inline void check_off_lattice(cd u, const ModularPoint& m, const char* who) {
    if (lattice_distance(u, m.tau) < m.puncture_eps()) throw SingularityError(std::string(who) + ": point on the lattice");
}
}  // namespace detail

// d^order/du^order of theta'/theta
inline cd rho(cd u, const ModularPoint& m, int order = 0) {
    if (order < 0 || order > 3) throw PreconditionError("rho: order must be in [0,3]");
    detail::check_off_lattice(u, m, "rho");
    auto d = theta_derivs(u, m, order + 1);
    return detail::log_derivs(d.data(), order + 1)[order + 1];
}

// d/dtau log theta(u, tau) = theta''/(4 i pi theta)
inline cd eta_logdtau(cd u, const ModularPoint& m) {
    detail::check_off_lattice(u, m, "eta");
    auto d = theta_derivs(u, m, 2);
    return d[2] / (4.0 * I * pi * d[0]);
}

// u-derivative of eta: (theta'''/theta - theta'' theta'/theta^2)/(4 i pi)
inline cd eta_du(cd u, const ModularPoint& m) {
    detail::check_off_lattice(u, m, "eta");
    auto d = theta_derivs(u, m, 3);
    cd t1 = d[1] / d[0], t2 = d[2] / d[0], t3 = d[3] / d[0];
    return (t3 - t2 * t1) / (4.0 * I * pi);
}

// tau-derivative of eta at fixed u
inline cd eta_dtau(cd u, const ModularPoint& m) {
    detail::check_off_lattice(u, m, "eta");
    auto d = theta_derivs(u, m, 4);
    cd t2 = d[2] / d[0], t4 = d[4] / d[0];
    cd f = 4.0 * I * pi;
    return (t4 - t2 * t2) / (f * f);
}

struct MuTaylor {
    cd m1, m3, m5, m7;
};

inline MuTaylor mu_taylor(const ModularPoint& m) {
    const cd c1 = m.c0[1], c3 = m.c0[3], c5 = m.c0[5], c7 = m.c0[7], c9 = m.c0[9], c11 = m.c0[11];
    MuTaylor t;
    t.m1 = -(c1 * c5 - c3 * c3) / (6.0 * c1 * c1);
    t.m3 = -(3.0 * c1 * c1 * c7 - 13.0 * c1 * c3 * c5 + 10.0 * c3 * c3 * c3) / (180.0 * c1 * c1 * c1);
    t.m5 = -(3.0 * c1 * c1 * c1 * c9 - 24.0 * c1 * c1 * c3 * c7 - 21.0 * c1 * c1 * c5 * c5 +
             112.0 * c1 * c3 * c3 * c5 - 70.0 * std::pow(c3, 4)) /
           (5040.0 * std::pow(c1, 4));
    t.m7 = -(5.0 * std::pow(c1, 4) * c11 - 65.0 * std::pow(c1, 3) * c3 * c9 - 186.0 * std::pow(c1, 3) * c5 * c7 +
             540.0 * c1 * c1 * c3 * c3 * c7 + 966.0 * c1 * c1 * c3 * c5 * c5 - 2660.0 * c1 * std::pow(c3, 3) * c5 +
             1400.0 * std::pow(c3, 5)) /
           (453600.0 * std::pow(c1, 5));
    return t;
}

inline cd mu_prime0(const ModularPoint& m) {
    const cd c1 = m.c0[1], c3 = m.c0[3], c5 = m.c0[5];
    return c3 * c3 / (6.0 * c1 * c1) - c5 / (6.0 * c1);
}

// mu(u) = -1/2 (theta'''/theta - theta'' theta'/theta^2); odd, regular at 0, periodic in 1.
inline cd mu_fn(cd u, const ModularPoint& m) {
    LatticeReduction r = lattice_reduce(u, m.tau);
    if (r.l == 0 && r.dist < m.taylor_radius()) {
        MuTaylor t = mu_taylor(m);
        cd x = r.ur, x2 = x * x;
        return x * (t.m1 + x2 * (t.m3 + x2 * (t.m5 + x2 * t.m7)));
    }
    if (r.dist < m.puncture_eps()) throw SingularityError("mu: pole at a lattice point");
    auto d = theta_derivs(u, m, 3);
    cd t1 = d[1] / d[0], t2 = d[2] / d[0], t3 = d[3] / d[0];
    return -0.5 * (t3 - t2 * t1);
}

inline cd mu_prime(cd u, const ModularPoint& m) {
    LatticeReduction r = lattice_reduce(u, m.tau);
    if (r.l == 0 && r.dist < m.taylor_radius()) {
        MuTaylor t = mu_taylor(m);
        cd x2 = r.ur * r.ur;
        return t.m1 + x2 * (3.0 * t.m3 + x2 * (5.0 * t.m5 + x2 * 7.0 * t.m7));
    }
    if (r.dist < m.puncture_eps()) throw SingularityError("mu': pole at a lattice point");
    auto d = theta_derivs(u, m, 4);
    cd t1 = d[1] / d[0], t2 = d[2] / d[0], t3 = d[3] / d[0], t4 = d[4] / d[0];
    return -0.5 * (t4 - t3 * t1 - (t3 * t1 + t2 * t2) + 2.0 * t2 * t1 * t1);
}

// theta with characteristic (m/N, n/N):
// e^{i pi (m/N)^2 tau + 2 i pi (m/N)(u + n/N)} theta(u + (m tau + n)/N)
inline cd theta_mn(cd u, const ModularPoint& m, int mm, int nn, int N) {
    if (N < 2) throw PreconditionError("theta_mn: N >= 2 required");
    const double x = double(mm) / N, y = double(nn) / N;
    cd s = x * m.tau + y;
    return std::exp(I * pi * x * x * m.tau + 2.0 * I * pi * x * (u + y)) * theta(u + s, m, 0).value;
}

inline cd theta3_zero(const ModularPoint& m) {
    cd s = 1.0;
    for (long n = 1; n < 100000; ++n) {
        cd t = 2.0 * std::exp(I * pi * m.tau * double(n * n));
        s += t;
        if (std::abs(t) < 1e-20) break;
    }
    return s;
}

// theta_1(0) = -theta(-1/2) = theta(1/2)
inline cd theta1_zero(const ModularPoint& m) { return theta(0.5, m, 0).value; }

inline cd lambda_modular(const ModularPoint& m) {
    cd r = theta1_zero(m) / theta3_zero(m);
    cd r2 = r * r;
    return r2 * r2;
}

}  // namespace ellhyp
