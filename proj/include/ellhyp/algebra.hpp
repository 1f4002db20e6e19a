#pragma once

#include <array>
#include <memory>
#include <numeric>
#include <sstream>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "common.hpp"

namespace ellhyp {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat(long long p, long long q = 1) { return Rational(p, q); }
inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}
inline long long num_ll(const Rational& r) { return static_cast<long long>(boost::multiprecision::numerator(r)); }
inline long long den_ll(const Rational& r) { return static_cast<long long>(boost::multiprecision::denominator(r)); }

// "p/q", "p" or a decimal literal
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    long long den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(std::stoll(digits), den);
}

// ---------- polynomials over Q, low degree first ----------
namespace poly {
using P = std::vector<Rational>;

inline void trim(P& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline P mul(const P& a, const P& b) {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline P sub(const P& a, const P& b) {
    P r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

// a = q b + r
inline void divmod(P a, const P& b, P& q, P& r) {
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (!a.empty() && a.size() >= b.size()) {
        Rational c = a.back() / b.back();
        size_t sh = a.size() - b.size();
        q[sh] = c;
        for (size_t i = 0; i < b.size(); ++i) a[sh + i] -= c * b[i];
        trim(a);
    }
    r = a;
    trim(q);
}
}  // namespace poly

struct CycloField {
    int n = 1;    // zeta = exp(2 i pi / n)
    int phi = 1;  // degree
    poly::P Phi;  // monic cyclotomic polynomial
    std::vector<std::vector<Rational>> zpow;  // reduced zeta^j, j in [0,n)

    explicit CycloField(int order) : n(order) {
        if (n < 1) throw PreconditionError("cyclotomic order must be positive");
        Phi = cyclotomic(n);
        phi = int(Phi.size()) - 1;
        zpow.resize(n);
        for (int j = 0; j < n; ++j) {
            poly::P x(j + 1, Rational(0));
            x[j] = 1;
            zpow[j] = reduce(x);
        }
    }

    static poly::P cyclotomic(int n) {
        poly::P num(n + 1, Rational(0));
        num[0] = -1;
        num[n] = 1;
        for (int d = 1; d < n; ++d)
            if (n % d == 0) {
                poly::P q, r;
                poly::divmod(num, cyclotomic(d), q, r);
                num = q;
            }
        return num;
    }

    std::vector<Rational> reduce(poly::P p) const {
        for (int i = int(p.size()) - 1; i >= phi; --i) {
            Rational c = p[i];
            if (c == 0) continue;
            for (int k = 0; k <= phi; ++k) p[i - phi + k] -= c * Phi[k];
        }
        p.resize(phi, Rational(0));
        return p;
    }
};

// element of Q(zeta_n)
class Cyc {
public:
    Cyc() = default;
    Cyc(std::shared_ptr<const CycloField> f, std::vector<Rational> c) : F_(std::move(f)), c_(std::move(c)) {}

    static Cyc constant(const std::shared_ptr<const CycloField>& f, const Rational& r) {
        std::vector<Rational> c(f->phi, Rational(0));
        c[0] = r;
        return Cyc(f, c);
    }
    // zeta^k
    static Cyc zeta(const std::shared_ptr<const CycloField>& f, long long k) {
        long long j = ((k % f->n) + f->n) % f->n;
        return Cyc(f, f->zpow[j]);
    }

    const CycloField& field() const { return *F_; }
    const std::shared_ptr<const CycloField>& field_ptr() const { return F_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    Cyc operator+(const Cyc& o) const {
        check(o);
        auto c = c_;
        for (size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
        return Cyc(F_, c);
    }
    Cyc operator-(const Cyc& o) const {
        check(o);
        auto c = c_;
        for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
        return Cyc(F_, c);
    }
    Cyc operator-() const {
        auto c = c_;
        for (auto& x : c) x = -x;
        return Cyc(F_, c);
    }
    Cyc operator*(const Cyc& o) const {
        check(o);
        return Cyc(F_, F_->reduce(poly::mul(c_, o.c_)));
    }
    Cyc operator*(const Rational& r) const {
        auto c = c_;
        for (auto& x : c) x *= r;
        return Cyc(F_, c);
    }
    Cyc operator+(long long k) const { return *this + constant(F_, Rational(k)); }
    Cyc operator-(long long k) const { return *this - constant(F_, Rational(k)); }
    Cyc operator*(long long k) const { return *this * Rational(k); }
    Cyc inverse() const {
        // extended Euclid: s a + t Phi = g, g constant
        poly::P a = c_;
        poly::trim(a);
        if (a.empty()) throw DegenerateError("cyclotomic: division by zero");
        poly::P r0 = F_->Phi, r1 = a, s0{}, s1{Rational(1)};
        while (!r1.empty()) {
            poly::P q, r;
            poly::divmod(r0, r1, q, r);
            poly::P s = poly::sub(s0, poly::mul(q, s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if (r0.size() != 1) throw DegenerateError("cyclotomic: non-invertible element");
        Rational g = r0[0];
        for (auto& x : s0) x /= g;
        return Cyc(F_, F_->reduce(s0));
    }
    Cyc operator/(const Cyc& o) const { return *this * o.inverse(); }
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

    bool operator==(const Cyc& o) const { return F_->n == o.F_->n && c_ == o.c_; }
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    // complex conjugation: zeta -> zeta^{-1}
    Cyc conj() const {
        std::vector<Rational> r(F_->phi, Rational(0));
        for (int j = 0; j < F_->phi; ++j) {
            if (c_[j] == 0) continue;
            const auto& z = F_->zpow[(F_->n - j) % F_->n];
            for (int k = 0; k < F_->phi; ++k) r[k] += c_[j] * z[k];
        }
        return Cyc(F_, r);
    }

    cd to_complex() const {
        cd s = 0;
        for (int j = 0; j < F_->phi; ++j)
            if (c_[j] != 0) s += to_double(c_[j]) * std::exp(2.0 * I * pi * double(j) / double(F_->n));
        return s;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int j = 0; j < F_->phi; ++j) {
            if (c_[j] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[j] << ")";
            if (j > 0) os << "*z^" << j;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    void check(const Cyc& o) const {
        if (F_->n != o.F_->n) throw PreconditionError("cyclotomic: mixed fields");
    }
    std::shared_ptr<const CycloField> F_;
    std::vector<Rational> c_;
};

inline Cyc operator-(long long k, const Cyc& x) { return Cyc::constant(x.field_ptr(), Rational(k)) - x; }
inline Cyc operator+(long long k, const Cyc& x) { return x + k; }
inline Cyc operator*(long long k, const Cyc& x) { return x * k; }
inline Cyc operator/(long long k, const Cyc& x) { return Cyc::constant(x.field_ptr(), Rational(k)) * x.inverse(); }

// ---------- scalar traits shared by complex and exact paths ----------
inline cd cconj(cd x) { return std::conj(x); }
inline Cyc cconj(const Cyc& x) { return x.conj(); }
inline cd one_like(cd) { return 1.0; }
inline Cyc one_like(const Cyc& x) { return Cyc::constant(x.field_ptr(), 1); }
inline cd zero_like(cd) { return 0.0; }
inline Cyc zero_like(const Cyc& x) { return Cyc::constant(x.field_ptr(), 0); }
inline cd as_complex(cd x) { return x; }
inline cd as_complex(const Cyc& x) { return x.to_complex(); }
inline bool exactly_equal(cd a, cd b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }
inline bool exactly_equal(const Cyc& a, const Cyc& b, double) { return a == b; }

// ---------- small dense matrices ----------
template <class R, int N>
struct Mat {
    std::array<R, N * N> a;
    R& operator()(int i, int j) { return a[i * N + j]; }
    const R& operator()(int i, int j) const { return a[i * N + j]; }

    Mat operator*(const Mat& o) const {
        Mat r = *this;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                R s = (*this)(i, 0) * o(0, j);
                for (int k = 1; k < N; ++k) s = s + (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }
    Mat operator*(const R& x) const {
        Mat r = *this;
        for (auto& v : r.a) v = v * x;
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r = *this;
        for (int i = 0; i < N * N; ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }
    Mat adjoint() const {  // conjugate transpose
        Mat r = *this;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r(i, j) = cconj((*this)(j, i));
        return r;
    }
    bool operator==(const Mat& o) const { return a == o.a; }
};

template <class R>
using Mat2 = Mat<R, 2>;
template <class R>
using Mat3 = Mat<R, 3>;

template <class R>
Mat2<R> mat2(R a, R b, R c, R d) {
    return Mat2<R>{{std::move(a), std::move(b), std::move(c), std::move(d)}};
}

template <class R>
R det(const Mat2<R>& m) {
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}
template <class R>
R det(const Mat3<R>& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}
template <class R>
R trace(const Mat2<R>& m) {
    return m(0, 0) + m(1, 1);
}
template <class R>
Mat2<R> inverse(const Mat2<R>& m) {
    R d = det(m);
    R z = zero_like(d);
    return mat2<R>(m(1, 1) / d, (z - m(0, 1)) / d, (z - m(1, 0)) / d, m(0, 0) / d);
}
template <class R>
Mat2<R> identity2(const R& like) {
    return mat2<R>(one_like(like), zero_like(like), zero_like(like), one_like(like));
}

template <class R, int N>
Mat<cd, N> to_complex(const Mat<R, N>& m) {
    Mat<cd, N> r;
    for (int i = 0; i < N * N; ++i) r.a[i] = as_complex(m.a[i]);
    return r;
}

template <int N>
double max_abs_diff(const Mat<cd, N>& x, const Mat<cd, N>& y) {
    double e = 0;
    for (int i = 0; i < N * N; ++i) e = std::max(e, std::abs(x.a[i] - y.a[i]));
    return e;
}

template <class R, int N>
bool mat_equal(const Mat<R, N>& x, const Mat<R, N>& y, double tol) {
    for (int i = 0; i < N * N; ++i)
        if (!exactly_equal(x.a[i], y.a[i], tol)) return false;
    return true;
}

}  // namespace ellhyp
