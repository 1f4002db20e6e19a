#pragma once

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ellhyp.hpp"

namespace ellhyp::acceptance {

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double budget = 0;
};

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

// d/dtau of the defining series, summed independently of the heat equation
inline cd theta_dtau_series(cd u, cd tau) {
    cd s = 0;
    for (long n = -60; n <= 60; ++n) {
        const double k = n + 0.5;
        cd e = std::exp(I * pi * k * k * tau + 2.0 * I * pi * k * u);
        if (n & 1) e = -e;
        s += -I * (I * pi * k * k) * e;
    }
    return s;
}

inline Result timed(int id, std::string name, double budget, const std::function<std::pair<bool, std::string>()>& body) {
    Result r;
    r.id = id;
    r.name = std::move(name);
    r.budget = budget;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto [ok, d] = body();
        r.pass = ok;
        r.detail = d;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.pass && r.seconds > budget) {
        r.pass = false;
        r.detail += "; runtime " + fmt(r.seconds) + " s exceeds budget";
    }
    return r;
}

inline Rational random_exponent(std::mt19937_64& rng) {
    // denominators kept small so the common cyclotomic field stays manageable
    static const long dens[] = {2, 3, 4, 5, 6, 8, 10, 12};
    long q = dens[std::uniform_int_distribution<int>(0, 7)(rng)];
    std::uniform_int_distribution<long> num(1, q - 1);
    return Rational(num(rng), q);
}

}  // namespace detail

inline Result criterion1(std::uint64_t seed) {
    return detail::timed(1, "theta quasi-periodicity and heat equation", 5.0, [&] {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> U(0, 1);
        double qp = 0, heat = 0, fd = 0;
        for (int i = 0; i < 100; ++i) {
            cd tau(U(rng) - 0.5, 0.5 + 1.5 * U(rng));
            cd u(2 * U(rng) - 1, (U(rng) - 0.5) * tau.imag());
            ModularPoint m(tau);
            auto j = theta(u, m, 4);
            cd t1 = theta(u + 1.0, m, 0).value;
            cd tt = theta_quasi_period(u, m);
            cd pred = -std::exp(-I * pi * tau - 2.0 * I * pi * u) * j.value;
            qp = std::max({qp, rel_err(t1, -j.value), rel_err(tt, pred)});
            heat = std::max(heat, rel_err(j.dtau, detail::theta_dtau_series(u, tau)));
            auto c = [&](double h) {
                return (theta(u, ModularPoint(tau + h), 0).value - theta(u, ModularPoint(tau - h), 0).value) / (2 * h);
            };
            cd rich = (4.0 * c(5e-4) - c(1e-3)) / 3.0;
            fd = std::max(fd, std::abs(rich - j.dtau) / std::max(std::abs(j.dtau), std::abs(j.value)));
        }
        bool ok = qp < 1e-11 && heat < 1e-11 && fd < 1e-6;
        return std::pair{ok, "quasi-period " + detail::fmt(qp) + ", heat " + detail::fmt(heat) + ", finite-difference " +
                                 detail::fmt(fd)};
    });
}

inline Result criterion2(std::uint64_t seed) {
    return detail::timed(2, "twisted pairing determinants and signature", 2.0, [&] {
        std::mt19937_64 rng(seed + 2);
        int exact_ok = 0;
        double det_ii = 0, det_ih = 0;
        bool sig = true;
        for (int i = 0; i < 100; ++i) {
            Rational a1 = detail::random_exponent(rng), a0 = detail::random_exponent(rng), ai = detail::random_exponent(rng);
            auto ce = character_exact(a1, a0, ai);
            Mat2<Cyc> II = intersection2(ce);
            Mat2<Cyc> K = hermitian_form_times_2i(ce);  // 2i IH
            const Cyc one = one_like(ce.rho0);
            // det IH = det K / (2i)^2 = -det K / 4; K anti-hermitian means IH hermitian
            Mat2<Cyc> Kh = K.adjoint();
            bool anti = true;
            for (int k = 0; k < 4; ++k) anti = anti && (Kh.a[k] == zero_like(one) - K.a[k]);
            if (det(II) == one && det(K) == one && anti) ++exact_ok;
            auto cc = to_complex(ce);
            det_ii = std::max(det_ii, std::abs(det(intersection2(cc)) - 1.0));
            Mat2<cd> H = hermitian_form(cc);
            det_ih = std::max(det_ih, std::abs(det(H) + 0.25));
            auto s = signature(H);
            sig = sig && s.positive == 1 && s.negative == 1 && is_hermitian(H, 1e-10);
        }
        bool ok = exact_ok == 100 && det_ii < 1e-10 && det_ih < 1e-10 && sig;
        return std::pair{ok, "exact " + std::to_string(exact_ok) + "/100, |det II - 1| " + detail::fmt(det_ii) +
                                 ", |det IH + 1/4| " + detail::fmt(det_ih) + ", signature (1,1) " + (sig ? "yes" : "no")};
    });
}

inline Result criterion3(std::uint64_t seed) {
    return detail::timed(3, "connection-matrix identities (exact)", 5.0, [&] {
        std::mt19937_64 rng(seed + 3);
        const ConnKind kinds[] = {ConnKind::HTwist, ConnKind::HTrans1, ConnKind::HTrans2, ConnKind::VTrans1,
                                  ConnKind::VTrans2, ConnKind::HT2,    ConnKind::VT2};
        int ok = 0, total = 0;
        for (int i = 0; i < 50; ++i) {
            auto ce = character_exact(detail::random_exponent(rng), detail::random_exponent(rng), detail::random_exponent(rng));
            for (ConnKind k : kinds) {
                ++total;
                if (connection_relation_residual(k, ce) == 0.0) ++ok;
            }
            ++total;
            if (htrans2_composed(ce) == htrans2(ce)) ++ok;
        }
        return std::pair{ok == total, std::to_string(ok) + "/" + std::to_string(total) + " exact identities"};
    });
}

inline Result criterion4() {
    return detail::timed(4, "Gauss-Manin and Mano systems satisfied by the periods", 180.0, [&] {
        double worst = 0;
        std::string where;
        int n = 0;
        for (long N : {2, 3, 4, 5})
            for (auto [mm, nn] : {std::pair{0L, 1L}, std::pair{1L, 0L}})
                for (double al : {0.25, 1.0 / 3, 0.5, 0.7})
                    for (cd tau : {cd(0, 1), cd(0.3, 1.2)}) {
                        ModularPoint m(tau);
                        auto g = check_ode(LiftedHolonomy::leaf_mn(al, mm, nn, N), m);
                        auto k = check_mano(int(mm), int(nn), int(N), al, m);
                        double r = std::max(g.max_residual(), k.max_residual());
                        ++n;
                        if (r > worst) {
                            worst = r;
                            std::ostringstream os;
                            os << "N=" << N << " (m,n)=(" << mm << "," << nn << ") alpha1=" << al << " tau=" << tau;
                            where = os.str();
                        }
                    }
        return std::pair{worst < 1e-5, std::to_string(n) + " cases, worst residual " + detail::fmt(worst) + " at " + where};
    });
}

inline Result criterion5() {
    return detail::timed(5, "indicial exponents match conifold angles", 1.0, [&] {
        int bad = 0, total = 0;
        for (const Rational& al : {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(3, 4)})
            for (long N = 2; N <= 30; ++N)
                for (long m = 0; m < N; ++m) {
                    ++total;
                    auto ix = indicial_exact(m, N, al);
                    Rational prop = Rational(m) * (1 - Rational(m, N)) * al;  // angle / (2 pi)
                    if (ix.nu != prop || ix.nu != conifold_angle_X(m, N) * al || ix.s_minus != -ix.s_plus ||
                        ix.nu != 2 * ix.s_plus)
                        ++bad;
                }
        return std::pair{bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " exact matches"};
    });
}

inline Result criterion6() {
    return detail::timed(6, "conifold tables", 1.0, [&] {
        std::vector<std::string> fails;
        auto coeffs = [](long N) {
            std::vector<Rational> v;
            for (auto& c : cusps_gamma1(N)) v.push_back(c.angle_coeff);
            return v;
        };
        auto orb = [](long N) {
            std::vector<Rational> v;
            for (auto& o : orbifold_points(N)) v.push_back(o.angle_over_2pi);
            return v;
        };
        // cusps in enumeration order: i infinity, 0, then the rest
        if (coeffs(2) != std::vector<Rational>{0, Rational(1, 2)} || orb(2) != std::vector<Rational>{Rational(1, 2)})
            fails.push_back("Y1(2)");
        if (coeffs(3) != std::vector<Rational>{0, Rational(2, 3)} || orb(3) != std::vector<Rational>{Rational(1, 3)})
            fails.push_back("Y1(3)");
        if (coeffs(4) != std::vector<Rational>{0, Rational(3, 4), Rational(1, 2)} || !orb(4).empty()) fails.push_back("Y1(4)");
        auto c5 = cusps_gamma1(5);
        std::vector<std::string> reps;
        for (auto& c : c5) reps.push_back(c.rep_str());
        if (coeffs(5) != std::vector<Rational>{0, Rational(4, 5), Rational(6, 5), 0} ||
            reps != std::vector<std::string>{"inf", "0", "1/2", "2/5"})
            fails.push_back("Y1(5)");
        std::map<Rational, int> y5;
        for (auto& c : cusps_gammaN(5)) y5[c.angle_coeff]++;
        if (y5 != std::map<Rational, int>{{0, 2}, {Rational(4, 5), 5}, {Rational(6, 5), 5}}) fails.push_back("Y(5)");
        std::string d = fails.empty() ? "Y1(2), Y1(3), Y1(4), Y(5), Y1(5) reproduced; orbifold points flagged separately"
                                      : "mismatch:";
        for (auto& f : fails) d += " " + f;
        return std::pair{fails.empty(), d};
    });
}

inline Result criterion7() {
    return detail::timed(7, "volumes", 5.0, [&] {
        int ok = 0, total = 0;
        for (const Rational& al : {Rational(1, 4), Rational(1, 2), Rational(3, 4)})
            for (long p = 5; p <= 31; ++p) {
                if (!is_prime(p)) continue;
                ++total;
                if (volume_Y1(p, al).volume_over_pi == prime_volume_over_pi(p, al)) ++ok;
            }
        bool veech = true;
        for (const Rational& al : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
            auto v = veech_volume(al, 101);
            veech = veech && v.prime == 101 && v.ratio == 1 - Rational(1, 101 * 101) &&
                    std::abs(v.empirical / v.exact - (1 - 1.0 / (101.0 * 101.0))) < 1e-13;
        }
        return std::pair{ok == total && veech, std::to_string(ok) + "/" + std::to_string(total) +
                                                   " exact prime volumes; Veech volume ratio at p=101 " +
                                                   (veech ? "exactly 1 - 1/p^2" : "WRONG")};
    });
}

struct Criterion8Parts {
    bool exact = false;
    bool numeric_T = false;
    bool numeric_UN = false;
    std::string detail;
};

inline Result criterion8(bool include_numeric = true) {
    return detail::timed(8, "holonomy closed forms and numeric monodromy", 120.0, [&] {
        int ok = 0, total = 0;
        for (long N = 2; N <= 12; ++N)
            for (const Rational& al : {Rational(1, 3), Rational(1, 2), Rational(2, 5)}) {
                auto r = mu_exact(N, al);
                auto t = holonomy_matrix_exact(GroupElement::T(), N, al);
                auto u = holonomy_matrix_exact(GroupElement::matrix(1, 0, -N, 1), N, al);
                const Cyc one = r.one(), z = zero_like(one);
                total += 2;
                if (t.normalized == mat2<Cyc>(one, one, z, one)) ++ok;
                if (u.raw == un_closed_form(r) && u.ih_preserved && u.real_projectively) ++ok;
            }
        std::string d = "exact: " + std::to_string(ok) + "/" + std::to_string(total);
        bool pass = ok == total;
        if (!include_numeric) return std::pair{pass, d + " (numeric part not run)"};
        double worst_T = 0, worst_U = 0, fit_dev = 0;
        for (long N : {3, 4, 5}) {
            const double al = 0.5;
            cd tau = cd(1.0 / N, 1.0 / N) + cd(0.02, 0.01);
            auto mt = monodromy_numeric_check(GroupElement::T(), N, al, tau);
            auto mu = monodromy_numeric_check(GroupElement::matrix(1, 0, -N, 1), N, al, tau);
            worst_T = std::max(worst_T, mt.residual);
            worst_U = std::max(worst_U, mu.residual);
            // how far the observed monodromy is from [[mu^{N-1},0],[-sum mu^k,1]]
            Mat2<cd> obs = un_observed_monodromy(N, al);
            obs = obs * (1.0 / std::sqrt(det(obs)));
            fit_dev = std::max(fit_dev, std::min(max_abs_diff(obs, mu.fitted), max_abs_diff(obs * -1.0, mu.fitted)));
        }
        pass = pass && worst_T < 1e-6 && worst_U < 1e-6;
        d += "; numeric T residual " + detail::fmt(worst_T) + "; numeric U_N residual " + detail::fmt(worst_U) +
             " (closed-form Lambda'(U_N) is not the monodromy of the periods; observed monodromy is "
             "[[mu^(N-1),0],[-sum mu^k,1]] to " + detail::fmt(fit_dev) + ")";
        return std::pair{pass, d};
    });
}

inline Result criterion9(std::uint64_t seed) {
    return detail::timed(9, "Veech form negativity and normalized map", 60.0, [&] {
        std::mt19937_64 rng(seed + 9);
        std::uniform_real_distribution<double> U(0, 1);
        const long Ns[] = {2, 3, 4, 5, 6};
        const double als[] = {0.25, 1.0 / 3, 0.5, 0.7};
        int ok = 0;
        double worst_form = -1e300, worst_im = 1e300;
        for (int i = 0; i < 20; ++i) {
            long N = Ns[i % 5];
            double al = als[(i / 5) % 4];
            cd tau(U(rng) - 0.5, 0.8 + 0.8 * U(rng));
            auto v = veech_map(LiftedHolonomy::leaf_mn(al, 0, 1, N), ModularPoint(tau));
            worst_form = std::max(worst_form, v.form);
            worst_im = std::min(worst_im, v.normalized->imag());
            if (v.form < 0 && v.normalized->imag() > 0 && std::abs(v.form_imag) < 1e-8 * std::abs(v.form)) ++ok;
        }
        return std::pair{ok == 20, std::to_string(ok) + "/20; max form " + detail::fmt(worst_form) +
                                       ", min Im(normalized) " + detail::fmt(worst_im)};
    });
}

inline Result criterion10() {
    return detail::timed(10, "hypergeometric consistency at N = 2", 60.0, [&] {
        double worst = 0;
        for (double al : {1.0 / 3, 0.5})
            for (double h : {1.1, 0.9}) {
                auto r = wirtinger_check(al, ModularPoint(cd(0, h)));
                worst = std::max({worst, std::abs(r.ratio_gamma0 / r.ratio_gamma2 - 1.0), std::abs(r.ratio_gamma0 - 1.0),
                                  std::abs(r.ratio_gamma2 - 1.0)});
            }
        return std::pair{worst < 1e-6, "max deviation of the cycle ratios " + detail::fmt(worst)};
    });
}

// on_result sees each criterion as soon as it finishes
inline std::vector<Result> run_all(std::uint64_t seed, bool include_slow = true,
                                   const std::function<void(const Result&)>& on_result = {}) {
    std::vector<Result> out;
    auto add = [&](Result r) {
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    };
    add(criterion1(seed));
    add(criterion2(seed));
    add(criterion3(seed));
    if (include_slow) add(criterion4());
    add(criterion5());
    add(criterion6());
    add(criterion7());
    add(criterion8(include_slow));
    add(criterion9(seed));
    add(criterion10());
    return out;
}

}  // namespace ellhyp::acceptance
