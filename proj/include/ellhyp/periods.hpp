#pragma once

#include <optional>
#include <vector>

#include "foliation.hpp"
#include "homology.hpp"
#include "quadrature.hpp"
#include "theta.hpp"

namespace ellhyp {

enum class Cycle { gamma0, gamma_inf, gamma2 };
enum class Weight { one, rho_prime };

inline const char* to_string(Cycle c) {
    return c == Cycle::gamma0 ? "gamma0" : c == Cycle::gamma_inf ? "gamma_inf" : "gamma2";
}

inline const cd kBasePoint{1e-3, -2e-4};

// theta(k + l tau + v) with v small and accurate
inline cd theta_anchor(long k, long l, cd v, const ModularPoint& m) {
    cd base = theta_value(v, m);
    if (k == 0 && l == 0) return base;
    const double L = double(l);
    return base * std::exp(I * pi * double(k + l) - I * pi * m.tau * L * L - 2.0 * I * pi * L * v);
}

// u -> e^{C + 2 i pi a0 u} theta(u)^alpha1 theta(u - t)^{-alpha1}, with a fixed determination at the base point
class BranchedIntegrand {
public:
    BranchedIntegrand(double alpha1, double a0, double ainf, const ModularPoint& m, cd log_scale = 0.0)
        : alpha1_(alpha1), a0_(a0), ainf_(ainf), mp_(m), C_(log_scale) {
        if (!(alpha1 > 0 && alpha1 < 1)) throw PreconditionError("integrand: alpha1 must lie in (0,1)");
        t_ = (a0 * m.tau - ainf) / alpha1;
        if (lattice_distance(t_, m.tau) < m.puncture_eps()) throw SingularityError("integrand: puncture on the lattice");
        base_logs();
    }
    BranchedIntegrand(const LiftedHolonomy& a, const ModularPoint& m, cd log_scale = 0.0)
        : BranchedIntegrand(a.alpha1, a.a0, a.a_inf, m, log_scale) {}

    double alpha1() const { return alpha1_; }
    double a0() const { return a0_; }
    double ainf() const { return ainf_; }
    cd t() const { return t_; }
    cd log_scale() const { return C_; }
    const ModularPoint& modular_point() const { return mp_; }
    cd base_point() const { return kBasePoint; }
    cd base_log0() const { return L0_; }
    cd base_log1() const { return L1_; }

    cd from_logs(cd u, cd l0, cd l1) const { return std::exp(C_ + 2.0 * I * pi * a0_ * u + alpha1_ * (l0 - l1)); }

    // value at u, continued from the base point along the straight segment
    cd eval(cd u, Weight w = Weight::one) const {
        const cd u0 = kBasePoint;
        auto g = [&](double s) {
            cd x = u0 + s * (u - u0);
            return std::vector<cd>{theta_value(x, mp_), theta_value(x - t_, mp_)};
        };
        auto l = continue_logs(g, {L0_, L1_});
        cd v = from_logs(u, l[0], l[1]);
        if (w == Weight::rho_prime) v *= rho(u, mp_, 1);
        return v;
    }

private:
    // log theta near 0 is principal; log theta(u0 - t) has arg(u0 - t) in (arg t - pi, arg t + pi]
    void base_logs() {
        const cd u0 = kBasePoint;
        const cd c1 = mp_.c0[1];
        auto gfun = [&](cd x) { return theta_value(x, mp_) / (c1 * x); };
        L0_ = mp_.log_dtheta0 + std::log(u0) + std::log(gfun(u0));
        const cd w = u0 - t_;
        const double phi = std::arg(t_) - pi;
        double aw = std::arg(w);
        while (aw <= phi) aw += 2 * pi;
        while (aw > phi + 2 * pi) aw -= 2 * pi;
        auto g = [&](double s) { return std::vector<cd>{s == 0 ? cd(1.0) : gfun(s * w)}; };
        cd lg = continue_logs(g, {0.0})[0];
        L1_ = mp_.log_dtheta0 + cd(std::log(std::abs(w)), aw) + lg;
    }

    double alpha1_, a0_, ainf_;
    ModularPoint mp_;
    cd C_;
    cd t_;
    cd L0_, L1_;
};

struct ContourPoint {
    long k = 0, l = 0;
    cd v;  // u = k + l tau + v
    cd u;
    cd w;  // u - t
};

class Contour {
public:
    Contour(Cycle c, const BranchedIntegrand& f, double eps) : cycle_(c), f_(&f), eps_(eps) {
        const cd tau = f.modular_point().tau;
        if (c == Cycle::gamma0) {
            end_ = 1.0;
            nrm_ = -I;
            ek_ = 1;
            el_ = 0;
        } else if (c == Cycle::gamma_inf) {
            end_ = tau;
            nrm_ = std::exp(I * (std::arg(tau) + pi / 2));  // outward, like gamma0
            ek_ = 0;
            el_ = 1;
        } else {
            end_ = f.t();
            nrm_ = 0.0;
            eps_ = 0;
        }
    }

    Cycle cycle() const { return cycle_; }
    double eps() const { return eps_; }
    cd end() const { return end_; }
    cd normal() const { return nrm_; }

    ContourPoint at(double s, double sbar) const {
        ContourPoint p;
        if (cycle_ == Cycle::gamma2) {
            p.v = s * end_;
            p.u = p.v;
            p.w = -sbar * end_;
            return p;
        }
        if (s < 0.5) {
            p.v = s * end_ + eps_ * std::sin(pi * s) * nrm_;
        } else {
            p.k = ek_;
            p.l = el_;
            p.v = -sbar * end_ + eps_ * std::sin(pi * sbar) * nrm_;
        }
        p.u = double(p.k) + double(p.l) * f_->modular_point().tau + p.v;
        p.w = p.u - f_->t();
        return p;
    }
    cd point(double s) const { return at(s, 1 - s).u; }
    cd dp(double s) const { return end_ + eps_ * pi * std::cos(pi * s) * nrm_; }

    // coordinates q = s end + y normal
    std::pair<double, double> coords(cd q) const {
        // solve real 2x2 system
        const double a = end_.real(), b = nrm_.real(), c = end_.imag(), d = nrm_.imag();
        const double det = a * d - b * c;
        return {(q.real() * d - b * q.imag()) / det, (a * q.imag() - c * q.real()) / det};
    }

    double closest_param(cd q) const {
        int ib = 0;
        double db = 1e300;
        const int n = 200;
        for (int i = 0; i <= n; ++i) {
            double d = std::abs(point(double(i) / n) - q);
            if (d < db) {
                db = d;
                ib = i;
            }
        }
        double a = std::max(0.0, double(ib - 1) / n), b = std::min(1.0, double(ib + 1) / n);
        return golden_min([&](double s) { return std::abs(point(s) - q); }, a, b, 1e-14);
    }
    double distance(cd q) const { return std::abs(point(closest_param(q)) - q); }

private:
    Cycle cycle_;
    const BranchedIntegrand* f_;
    double eps_;
    cd end_, nrm_;
    long ek_ = 0, el_ = 0;
};

struct PeriodOptions {
    double tol = 1e-10;
    double eps = 0;       // contour deformation; 0 selects the default
    double delta = 0;     // loop radius for regularization; 0 selects the default
    int min_level = 3;
    int max_level = 10;
    int fixed_level = 0;  // > 0: no adaptivity (used on finite-difference stencils)
    bool cross_check = false;
    bool require_convergence = true;
};

struct PeriodResult {
    cd value;
    double est_error = 0;
    std::optional<cd> regularized;
    double eps = 0, delta = 0;
    int level = 0;
    bool converged = false;
};

namespace detail {

// singular points other than the contour's own endpoints
inline std::vector<cd> singular_points(Cycle c, const BranchedIntegrand& f) {
    const cd tau = f.modular_point().tau, t = f.t();
    std::vector<cd> out;
    const cd end = c == Cycle::gamma0 ? cd(1.0) : c == Cycle::gamma_inf ? tau : t;
    for (int k = -2; k <= 2; ++k)
        for (int l = -2; l <= 2; ++l) {
            cd lat = double(k) + double(l) * tau;
            cd pun = t + lat;
            if (std::abs(lat) > 1e-14 && std::abs(lat - end) > 1e-14) out.push_back(lat);
            if (!(c == Cycle::gamma2 && k == 0 && l == 0)) out.push_back(pun);
        }
    return out;
}

inline double default_eps(const ModularPoint& m) { return 0.05 * std::min(1.0, m.tau.imag()); }

// apply the sliver rule and the collision test; returns the accepted eps
inline double resolve_eps(Cycle c, const BranchedIntegrand& f, double eps0) {
    if (c == Cycle::gamma2) {
        Contour k(c, f, 0);
        for (cd q : singular_points(c, f))
            if (k.distance(q) < 1e-6) throw SingularityError("gamma2: segment passes through a puncture");
        return 0;
    }
    const auto pts = singular_points(c, f);
    for (double e0 : {eps0, 0.5 * eps0, 2 * eps0}) {
        double e = e0;
        Contour probe(c, f, e);
        const double len = std::abs(probe.end());
        for (cd q : pts) {
            auto [s, y] = probe.coords(q);
            if (!(s > 0 && s < 1)) continue;
            if (std::abs(y) < 1e-9 * len) continue;  // on the segment: passed on the deformation side
            const double sn = std::sin(pi * s);
            if (y > 0 && y < e * sn) e = std::min(e, y / (2 * sn));
        }
        Contour k(c, f, e);
        double dmin = 1e300;
        for (cd q : pts) dmin = std::min(dmin, k.distance(q));
        if (dmin > 1e-6) return e;
    }
    throw SingularityError("contour collides with a puncture after deformation retries");
}

inline std::vector<double> split_points(const Contour& k, Cycle c, const BranchedIntegrand& f, double lo, double hi) {
    std::vector<double> s{lo, hi};
    for (cd q : singular_points(c, f)) {
        double p = k.closest_param(q);
        if (std::abs(k.point(p) - q) < 0.5 && p > lo + 1e-9 && p < hi - 1e-9) s.push_back(p);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }), s.end());
    return s;
}

// integrate g(s, sbar) over [A,B] inside [0,1]
inline QuadResult integrate_piece(const std::function<cd(double, double)>& g, double A, double B, const QuadOptions& q) {
    const double L = B - A;
    auto fx = [&](double x, double xb) {
        double s, sb;
        if (x < 0.5) {
            s = A + L * x;
            sb = (1 - A) - L * x;
        } else {
            s = B - L * xb;
            sb = (1 - B) + L * xb;
        }
        return L * g(s, sb);
    };
    return tanh_sinh(fx, q);
}

}  // namespace detail

// one period with optional loop regularization
class PeriodEngine {
public:
    PeriodEngine(const BranchedIntegrand& f, Cycle c, const PeriodOptions& o) : f_(f), c_(c), o_(o) {
        const ModularPoint& m = f.modular_point();
        eps_ = detail::resolve_eps(c, f, o.eps > 0 ? o.eps : detail::default_eps(m));
        k_.emplace(c, f, eps_);
        build_spine();
    }

    double eps() const { return eps_; }

    cd node(double s, double sb, Weight w) const {
        const ModularPoint& m = f_.modular_point();
        ContourPoint p = k_->at(s, sb);
        std::vector<cd> v{theta_anchor(p.k, p.l, p.v, m), theta_value(p.w, m)};
        auto l = spine_.at(s, v);
        cd val = f_.from_logs(p.u, l[0], l[1]) * k_->dp(s);
        if (w == Weight::rho_prime) val *= rho(p.u, m, 1);
        return val;
    }

    QuadResult integrate(double lo, double hi, Weight w, const QuadOptions& q) const {
        auto sp = detail::split_points(*k_, c_, f_, lo, hi);
        QuadResult tot{0.0, 0.0, 0, true};
        for (size_t i = 0; i + 1 < sp.size(); ++i) {
            auto r = detail::integrate_piece([&](double s, double sb) { return node(s, sb, w); }, sp[i], sp[i + 1], q);
            tot.value += r.value;
            tot.est_error += r.est_error;
            tot.level = std::max(tot.level, r.level);
            tot.converged = tot.converged && r.converged;
        }
        return tot;
    }

    double default_delta() const {
        const cd E = k_->end();
        double dist = 1e300;
        for (cd q : detail::singular_points(c_, f_)) dist = std::min({dist, std::abs(q), std::abs(q - E)});
        return std::min(1e-2, dist / 4);
    }

    // loop-regularized integral over the whole cycle (gamma0 / gamma_inf)
    QuadResult regularized(Weight w, double delta, const QuadOptions& q) const {
        if (c_ == Cycle::gamma2) throw PreconditionError("regularization: not available on gamma2");
        const cd E = k_->end();
        auto param_at_radius = [&](bool start) {
            double lo = 0, hi = 0.5;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                ContourPoint p = start ? k_->at(mid, 1 - mid) : k_->at(1 - mid, mid);
                if (std::abs(p.v) < delta) lo = mid;
                else hi = mid;
            }
            return 0.5 * (lo + hi);
        };
        const double sa = param_at_radius(true), sbb = param_at_radius(false);
        QuadResult mid = integrate(sa, 1 - sbb, w, q);
        QuadResult la = loop(sa, 1 - sa, w, delta, q), lb = loop(1 - sbb, sbb, w, delta, q);
        const cd r1 = std::exp(2.0 * I * pi * f_.alpha1());
        QuadResult out;
        out.value = la.value / (r1 - 1.0) + mid.value - lb.value / (r1 - 1.0);
        out.est_error = mid.est_error + (la.est_error + lb.est_error) / std::abs(r1 - 1.0);
        out.level = std::max({mid.level, la.level, lb.level});
        out.converged = mid.converged && la.converged && lb.converged;
        (void)E;
        return out;
    }

    cd cycle_factor() const {
        return c_ == Cycle::gamma_inf ? std::exp(-2.0 * I * pi * f_.alpha1()) : cd(1.0);
    }

private:
    // ccw circle of radius delta around the lattice endpoint nearest the contour point at s
    QuadResult loop(double s, double sb, Weight w, double delta, const QuadOptions& q) const {
        const ModularPoint& m = f_.modular_point();
        ContourPoint p = k_->at(s, sb);
        const long k = p.k, l = p.l;
        const double phi0 = std::arg(p.v);
        std::vector<cd> v0{theta_anchor(k, l, p.v, m), theta_value(p.w, m)};
        auto l0 = spine_.at(s, v0);
        const cd e = double(k) + double(l) * m.tau;
        auto vals = [&](double x) {
            cd v = delta * std::exp(I * (phi0 + 2 * pi * x));
            return std::vector<cd>{theta_anchor(k, l, v, m), theta_value(e + v - f_.t(), m)};
        };
        Spine loop_spine;
        loop_spine.extend(vals, 0.0, 1.0, l0);
        auto g = [&](double x, double) {
            cd v = delta * std::exp(I * (phi0 + 2 * pi * x));
            cd u = e + v;
            auto vv = vals(x);
            auto ll = loop_spine.at(x, vv);
            cd val = f_.from_logs(u, ll[0], ll[1]) * (2.0 * pi * I * v);
            if (w == Weight::rho_prime) val *= rho(u, m, 1);
            return val;
        };
        return tanh_sinh(g, q);
    }

    void build_spine() {
        const ModularPoint& m = f_.modular_point();
        const cd u0 = kBasePoint;
        const double ss = std::abs(u0) / std::abs(k_->end());
        const cd ps = k_->point(ss);
        // approach from the base point: straight for gamma0 / gamma2, ccw arc for gamma_inf
        std::function<cd(double)> path;
        if (c_ == Cycle::gamma_inf) {
            double a = std::arg(u0), b = std::arg(ps);
            while (b < a) b += 2 * pi;
            const double r0 = std::abs(u0), r1 = std::abs(ps);
            path = [=](double x) { return (r0 + x * (r1 - r0)) * std::exp(I * (a + x * (b - a))); };
        } else {
            path = [=](double x) { return u0 + x * (ps - u0); };
        }
        auto gpath = [&](double x) {
            cd u = x >= 1 ? ps : path(x);
            return std::vector<cd>{theta_value(u, m), theta_value(u - f_.t(), m)};
        };
        auto start = continue_logs(gpath, {f_.base_log0(), f_.base_log1()});
        auto gk = [&](double s) {
            ContourPoint p = k_->at(s, 1 - s);
            return std::vector<cd>{theta_anchor(p.k, p.l, p.v, m), theta_value(p.w, m)};
        };
        spine_.extend(gk, ss, 1 - 1e-12, start);
        spine_.extend(gk, ss, 1e-12, start);
    }

    const BranchedIntegrand& f_;
    Cycle c_;
    PeriodOptions o_;
    double eps_ = 0;
    std::optional<Contour> k_;
    Spine spine_;
};

inline QuadOptions quad_options(const PeriodOptions& o) {
    QuadOptions q;
    q.tol = o.tol;
    q.min_level = o.min_level;
    q.max_level = o.max_level;
    q.fixed_level = o.fixed_level;
    return q;
}

inline PeriodResult period_F(const BranchedIntegrand& f, Cycle c, Weight w, const PeriodOptions& o = {}) {
    PeriodEngine eng(f, c, o);
    const QuadOptions q = quad_options(o);
    PeriodResult r;
    r.eps = eng.eps();
    const cd fac = eng.cycle_factor();
    if (w == Weight::one) {
        QuadResult d = eng.integrate(0.0, 1.0, w, q);
        r.value = fac * d.value;
        r.est_error = d.est_error;
        r.level = d.level;
        r.converged = d.converged;
        if (o.cross_check && c != Cycle::gamma2) {
            r.delta = o.delta > 0 ? o.delta : eng.default_delta();
            r.regularized = fac * eng.regularized(w, r.delta, q).value;
        }
    } else {
        if (c == Cycle::gamma2) throw PreconditionError("period: rho' weight needs a closed regularized cycle");
        r.delta = o.delta > 0 ? o.delta : eng.default_delta();
        QuadResult d = eng.regularized(w, r.delta, q);
        r.value = fac * d.value;
        r.regularized = r.value;
        r.est_error = d.est_error;
        r.level = d.level;
        r.converged = d.converged;
    }
    if (o.require_convergence && !r.converged) throw ConvergenceError("period: quadrature did not converge");
    return r;
}

inline PeriodResult period_F(const LiftedHolonomy& a, const ModularPoint& m, Cycle c, Weight w,
                             const PeriodOptions& o = {}) {
    BranchedIntegrand f(a, m);
    return period_F(f, c, w, o);
}

struct PeriodVector {
    cd F_inf, F_0;
    double est_error = 0;
    cd tau;
};

inline PeriodVector period_vector(const LiftedHolonomy& a, const ModularPoint& m, const PeriodOptions& o = {}) {
    BranchedIntegrand f(a, m);
    auto pi_ = period_F(f, Cycle::gamma_inf, Weight::one, o);
    auto p0 = period_F(f, Cycle::gamma0, Weight::one, o);
    return {pi_.value, p0.value, pi_.est_error + p0.est_error, m.tau};
}

struct VeechResult {
    PeriodVector F;
    std::optional<cd> normalized;
    double form = 0;  // conj(F) IH F^T (real part)
    double form_imag = 0;
};

inline VeechResult veech_map(const LiftedHolonomy& a, const ModularPoint& m, const PeriodOptions& o = {}) {
    VeechResult r;
    r.F = period_vector(a, m, o);
    auto ch = character_from(a);
    Mat2<cd> H = hermitian_form(ch);
    const cd F[2] = {r.F.F_inf, r.F.F_0};
    cd s = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += std::conj(F[i]) * H(i, j) * F[j];
    r.form = s.real();
    r.form_imag = s.imag();
    if (std::abs(ch.rho0 - 1.0) < 1e-12) {
        if (std::abs(r.F.F_0) == 0) throw DegenerateError("veech_map: F0 vanishes");
        const cd d1 = ch.rho1 - 1.0, d1i = ch.rho1 * ch.rhoinf - 1.0;
        r.normalized = r.F.F_inf / (ch.rhoinf * r.F.F_0) + d1i / (ch.rhoinf * d1);
    }
    return r;
}

// integrand (theta / theta_{m,n})^{alpha1}: leaf alpha1 (-m/N, n/N) times a tau-dependent constant
inline BranchedIntegrand mano_integrand(int mm, int nn, int N, double alpha1, const ModularPoint& m) {
    if ((((mm % N) + N) % N == 0) && (((nn % N) + N) % N == 0)) throw PreconditionError("mano: (m,n) = (0,0) mod N");
    const double x = double(mm) / N, y = double(nn) / N;
    const cd C = -alpha1 * (I * pi * x * x * m.tau + 2.0 * I * pi * x * y);
    return BranchedIntegrand(alpha1, -alpha1 * x, alpha1 * y, m, C);
}

struct ManoPeriods {
    cd V0, Vinf, W0, Winf;
    double est_error = 0;
};

inline ManoPeriods mano_periods(int mm, int nn, int N, double alpha1, const ModularPoint& m, const PeriodOptions& o = {}) {
    BranchedIntegrand f = mano_integrand(mm, nn, N, alpha1, m);
    ManoPeriods r;
    auto v0 = period_F(f, Cycle::gamma0, Weight::one, o);
    auto vi = period_F(f, Cycle::gamma_inf, Weight::one, o);
    auto w0 = period_F(f, Cycle::gamma0, Weight::rho_prime, o);
    auto wi = period_F(f, Cycle::gamma_inf, Weight::rho_prime, o);
    r.V0 = v0.value;
    r.Vinf = vi.value;
    r.W0 = w0.value;
    r.Winf = wi.value;
    r.est_error = v0.est_error + vi.est_error + w0.est_error + wi.est_error;
    return r;
}


// Gauss series 2F1(a, b; c; z), |z| < 1
inline cd hyp2f1_series(double a, double b, double c, cd z, double tol = 1e-17, int max_terms = 200000) {
    if (std::abs(z) >= 1) throw DomainError("hyp2f1: |z| must be < 1");
    cd term = 1.0, sum = 1.0;
    for (int n = 0; n < max_terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) < tol * std::abs(sum) && n > 5) return sum;
    }
    throw ConvergenceError("hyp2f1: series did not converge");
}

// Two-punctured torus with the second puncture at the half period 1/2 against the classical
// hypergeometric function at lambda(tau); both ratios should equal 1.
struct WirtingerReport {
    cd hyp;            // 2F1((alpha1+1)/2, 1/2; 1; lambda)
    cd lambda;
    cd ratio_gamma0;   // via gamma0 and the gamma2 decomposition coefficient
    cd ratio_gamma2;   // via the half-segment gamma2
    double est_error = 0;
};

inline WirtingerReport wirtinger_check(double alpha1, const ModularPoint& m, const PeriodOptions& o = {}) {
    LiftedHolonomy a = LiftedHolonomy::leaf_mn(alpha1, 0, 1, 2);
    BranchedIntegrand f(a, m);
    auto p0 = period_F(f, Cycle::gamma0, Weight::one, o);
    auto p2 = period_F(f, Cycle::gamma2, Weight::one, o);
    auto ch = character_from(a);
    const cd c0 = gamma2_decompose(ch).first;
    WirtingerReport r;
    r.lambda = lambda_modular(m);
    r.hyp = hyp2f1_series((alpha1 + 1) / 2, 0.5, 1.0, r.lambda);
    const cd th3 = theta3_zero(m);
    const cd P = 2 * std::cos(pi * alpha1 / 2) * th3 * th3 * std::pow(1.0 - r.lambda, -alpha1 / 4);
    const cd ph = std::exp(-I * pi * alpha1);
    r.ratio_gamma0 = r.hyp / (P * c0 * p0.value * ph);
    r.ratio_gamma2 = r.hyp / (P * p2.value * ph);
    r.est_error = p0.est_error + p2.est_error;
    return r;
}

}  // namespace ellhyp
