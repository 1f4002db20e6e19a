#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "common.hpp"

namespace ellhyp {

struct QuadResult {
    cd value;
    double est_error = 0;
    int level = 0;
    bool converged = false;
};

struct QuadOptions {
    double tol = 1e-10;
    int min_level = 3;
    int max_level = 10;
    int fixed_level = 0;  // > 0: evaluate exactly this level
    double tmax = 5.0;
};

// f(x, xbar) on (0,1) with x + xbar = 1 both accurate near the ends.
using UnitIntegrand = std::function<cd(double, double)>;

namespace detail {
// contribution of abscissa t at step h (weight without h)
inline cd ts_term(const UnitIntegrand& f, double t) {
    const double s = 0.5 * pi * std::sinh(t);
    const double ch = std::cosh(s);
    if (!std::isfinite(ch) || ch > 1e150) return 0.0;
    const double xl = 0.5 * std::exp(s) / ch;
    const double xm = 0.5 * std::exp(-s) / ch;
    if (xl <= 0 || xm <= 0) return 0.0;
    const double w = 0.25 * pi * std::cosh(t) / (ch * ch);
    cd v = f(xl, xm);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return 0.0;
    return w * v;
}
}  // namespace detail

// tanh-sinh on (0,1) with nested levels; est = |I_L - I_{L-1}|
inline QuadResult tanh_sinh(const UnitIntegrand& f, const QuadOptions& o = {}) {
    const int top = o.fixed_level > 0 ? o.fixed_level : o.max_level;
    double h = 1.0;
    cd S = detail::ts_term(f, 0.0);
    for (int k = 1; k * h <= o.tmax; ++k) S += detail::ts_term(f, k * h) + detail::ts_term(f, -k * h);
    cd prev = h * S;
    QuadResult r{prev, 1e300, 0, false};
    for (int L = 1; L <= top; ++L) {
        h *= 0.5;
        for (double t = h; t <= o.tmax; t += 2 * h) S += detail::ts_term(f, t) + detail::ts_term(f, -t);
        cd cur = h * S;
        r = {cur, std::abs(cur - prev), L, false};
        prev = cur;
        if (o.fixed_level > 0) continue;
        if (L >= o.min_level && r.est_error <= o.tol * std::max(1.0, std::abs(cur))) {
            r.converged = true;
            return r;
        }
    }
    r.converged = o.fixed_level > 0 || r.est_error <= o.tol * std::max(1.0, std::abs(r.value));
    return r;
}

// golden-section minimum of a unimodal function on [a,b]
inline double golden_min(const std::function<double(double)>& g, double a, double b, double tol = 1e-13) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double gc = g(c), gd = g(d);
    while (b - a > tol) {
        if (gc < gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - gr * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + gr * (b - a);
            gd = g(d);
        }
    }
    return 0.5 * (a + b);
}

// Continued logarithms of several nonvanishing functions along a parameter interval.
// Points are kept sorted by parameter; consecutive samples differ in argument by < max_jump.
class Spine {
public:
    using Values = std::function<std::vector<cd>(double)>;

    Spine() = default;

    // build from s_start (logs given there) towards s_end in both orders allowed
    void extend(const Values& g, double s_start, double s_end, const std::vector<cd>& log_start, double max_jump = 0.3) {
        if (pts_.empty()) push(s_start, log_start);
        const double span = s_end - s_start;
        if (span == 0) return;
        const double dir = span > 0 ? 1.0 : -1.0;
        double s = s_start, ds = std::abs(span) / 64;
        std::vector<cd> cur = log_start;
        std::vector<std::pair<double, std::vector<cd>>> path;
        while (dir * (s_end - s) > 0) {
            ds = std::min(ds, std::abs(s_end - s));
            std::vector<cd> next;
            double jump = 0;
            for (;;) {
                auto v = g(s + dir * ds);
                next.resize(v.size());
                jump = 0;
                for (size_t i = 0; i < v.size(); ++i) {
                    if (v[i] == 0.0 || !std::isfinite(std::abs(v[i]))) throw BranchError("spine: function vanishes on path");
                    next[i] = log_near(v[i], cur[i]);
                    jump = std::max(jump, std::abs(next[i].imag() - cur[i].imag()));
                }
                if (jump < max_jump) break;
                ds *= 0.5;
                if (ds < 1e-13 * std::max(1.0, std::abs(span))) throw BranchError("spine: cannot resolve argument jump");
            }
            s += dir * ds;
            cur = next;
            path.emplace_back(s, cur);
            if (jump < max_jump / 3) ds *= 2;
        }
        for (auto& p : path) push(p.first, p.second);
    }

    // logs at parameter s for values v, branch nearest the closest sample
    std::vector<cd> at(double s, const std::vector<cd>& v) const {
        auto it = std::lower_bound(pts_.begin(), pts_.end(), s, [](const Pt& p, double x) { return p.s < x; });
        const Pt* ref;
        if (it == pts_.end()) ref = &pts_.back();
        else if (it == pts_.begin()) ref = &*it;
        else ref = (s - std::prev(it)->s < it->s - s) ? &*std::prev(it) : &*it;
        std::vector<cd> out(v.size());
        for (size_t i = 0; i < v.size(); ++i) out[i] = log_near(v[i], ref->logs[i]);
        return out;
    }

    const std::vector<cd>& logs_at_end(bool last) const { return last ? pts_.back().logs : pts_.front().logs; }
    size_t size() const { return pts_.size(); }

private:
    struct Pt {
        double s;
        std::vector<cd> logs;
    };
    void push(double s, const std::vector<cd>& l) {
        auto it = std::lower_bound(pts_.begin(), pts_.end(), s, [](const Pt& p, double x) { return p.s < x; });
        if (it != pts_.end() && it->s == s) return;
        pts_.insert(it, Pt{s, l});
    }
    std::vector<Pt> pts_;
};

// continued log of g(s) on s in [0,1], returns value at s = 1
inline std::vector<cd> continue_logs(const Spine::Values& g, const std::vector<cd>& log0, double max_jump = 0.3) {
    Spine sp;
    sp.extend(g, 0.0, 1.0, log0, max_jump);
    return sp.logs_at_end(true);
}

}  // namespace ellhyp
