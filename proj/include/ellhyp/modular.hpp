#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "algebra.hpp"
#include "common.hpp"

namespace ellhyp {

struct OrbifoldUnsupported : PreconditionError {
    using PreconditionError::PreconditionError;
};


// cusp -a'/c' with gcd(a', c') = 1; c' = 0 is i infinity
struct CuspDatum {
    long a_prime = -1, c_prime = 0;
    long a = 0, c = 0;  // residues of (a', c') mod N
    long width = 1;
    Rational angle_coeff;  // conifold angle = 2 pi angle_coeff alpha1; 0 is a true cusp

    bool at_infinity() const { return c_prime == 0; }
    std::optional<Rational> rep() const {
        if (c_prime == 0) return std::nullopt;
        return Rational(-a_prime, c_prime);
    }
    std::string rep_str() const { return c_prime == 0 ? "inf" : to_string(*rep()); }
    std::string class_str() const { return "+-(" + std::to_string(a) + "," + std::to_string(c) + ")"; }
};

inline Rational conifold_angle_X1(long c_prime, long N) {
    if (N < 2) throw PreconditionError("conifold angle: N >= 2 required");
    const long c = mod(c_prime, N);
    if (c == 0) return 0;
    return Rational(c * (N - c), N * std::gcd(c, N));
}

inline Rational conifold_angle_X(long c_prime, long N) {
    if (N < 2) throw PreconditionError("conifold angle: N >= 2 required");
    const long c = mod(c_prime, N);
    return Rational(c * (N - c), N);
}

inline long cusp_width(long c_prime, long N) { return N / std::gcd(std::abs(c_prime), N); }

namespace detail {

// canonical key of the Gamma_1(N) orbit of (a, c): a + j c sweeps a mod gcd(c, N)
inline std::pair<long, long> gamma1_key(long a, long c, long N) {
    const long g = std::gcd(mod(c, N), N);
    std::pair<long, long> k1{mod(a, g), mod(c, N)}, k2{mod(-a, g), mod(-c, N)};
    return std::min(k1, k2);
}

inline std::pair<long, long> gammaN_key(long a, long c, long N) {
    return std::min(std::pair<long, long>{mod(a, N), mod(c, N)}, std::pair<long, long>{mod(-a, N), mod(-c, N)});
}

inline CuspDatum make_cusp(long ap, long cp, long N, bool full_level) {
    CuspDatum d;
    d.a_prime = ap;
    d.c_prime = cp;
    auto k = gammaN_key(ap, cp, N);
    d.a = k.first;
    d.c = k.second;
    d.width = cusp_width(cp, N);
    d.angle_coeff = full_level ? conifold_angle_X(cp, N) : conifold_angle_X1(cp, N);
    return d;
}

inline long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

// enumerate p/q by ascending q, then |p| with p >= 0 first; rep -a'/c' = p/q
template <class Key>
std::vector<CuspDatum> enumerate_cusps(long N, size_t expected, bool full_level, Key key) {
    std::vector<CuspDatum> out;
    std::set<std::pair<long, long>> seen;
    auto consider = [&](long p, long q) {
        if (std::gcd(std::abs(p), q) != 1) return;
        auto k = key(-p, q);
        if (seen.insert(k).second) out.push_back(make_cusp(-p, q, N, full_level));
    };
    consider(1, 0);
    for (long q = 1; out.size() < expected; ++q) {
        if (q > 4 * N * N) throw Error("cusp enumeration did not terminate");
        for (long ap = 0; ap <= q * N && out.size() < expected; ++ap) {
            consider(ap, q);
            if (ap > 0) consider(-ap, q);
        }
    }
    return out;
}

}  // namespace detail

inline long cusp_count_gamma1(long N) {
    if (N < 2) throw PreconditionError("cusps: N >= 2 required");
    if (N == 2 || N == 3) return 2;
    if (N == 4) return 3;
    long s = 0;
    for (long d = 1; d <= N; ++d)
        if (N % d == 0) s += detail::euler_phi(d) * detail::euler_phi(N / d);
    return s / 2;
}

inline long cusp_count_gammaN(long N) {
    if (N < 2) throw PreconditionError("cusps: N >= 2 required");
    if (N == 2) return 3;
    long s = 0;
    for (long a = 0; a < N; ++a)
        for (long c = 0; c < N; ++c)
            if (std::gcd(std::gcd(a, c), N) == 1) ++s;
    return s / 2;
}

inline std::vector<CuspDatum> cusps_gamma1(long N) {
    if (N < 2) throw PreconditionError("cusps_gamma1: N >= 2 required");
    return detail::enumerate_cusps(N, size_t(cusp_count_gamma1(N)), false,
                                   [N](long a, long c) { return detail::gamma1_key(a, c, N); });
}

inline std::vector<CuspDatum> cusps_gammaN(long N) {
    if (N < 2) throw PreconditionError("cusps_gammaN: N >= 2 required");
    return detail::enumerate_cusps(N, size_t(cusp_count_gammaN(N)), true,
                                   [N](long a, long c) { return detail::gammaN_key(a, c, N); });
}

// elliptic points of Y1(2), Y1(3), kept apart from the cusps
struct OrbifoldPoint {
    std::string rep;
    Rational angle_over_2pi;
};

inline std::vector<OrbifoldPoint> orbifold_points(long N) {
    if (N == 2) return {{"(1+i)/2", Rational(1, 2)}};
    if (N == 3) return {{"(3+i sqrt3)/6", Rational(1, 3)}};
    return {};
}

inline long genus_X1(long N) {
    if (N < 1) throw PreconditionError("genus_X1: N >= 1 required");
    if (N <= 4) return 0;
    Rational prod(N * N, 24);
    long n = N;
    for (long p = 2; p <= n; ++p)
        if (n % p == 0) {
            prod *= Rational(p * p - 1, p * p);
            while (n % p == 0) n /= p;
        }
    long s = 0;
    for (long d = 1; d <= N; ++d)
        if (N % d == 0) s += detail::euler_phi(d) * detail::euler_phi(N / d);
    Rational g = 1 + prod - Rational(s, 4);
    if (denominator(g) != 1) throw Error("genus_X1: non-integral genus");
    return static_cast<long>(numerator(g));
}

struct VolumeReport {
    long N = 0;
    Rational alpha1;
    long genus = 0;
    long cusps = 0;
    Rational cusp_sum;          // sum of angle coefficients
    Rational volume_over_pi;    // 2 (2g - 2 + #cusps - alpha1 cusp_sum)
    double volume() const { return pi * to_double(volume_over_pi); }
};

inline VolumeReport volume_Y1(long N, const Rational& alpha1) {
    if (N == 2 || N == 3) throw OrbifoldUnsupported("volume_Y1: orbifold points at N = 2, 3 are not covered");
    if (N < 4) throw PreconditionError("volume_Y1: N >= 4 required");
    if (!(alpha1 > 0 && alpha1 < 1)) throw PreconditionError("volume_Y1: alpha1 must lie in (0,1)");
    VolumeReport r;
    r.N = N;
    r.alpha1 = alpha1;
    r.genus = genus_X1(N);
    auto cs = cusps_gamma1(N);
    r.cusps = long(cs.size());
    r.cusp_sum = 0;
    for (auto& c : cs) r.cusp_sum += c.angle_coeff;
    r.volume_over_pi = 2 * (Rational(2 * r.genus - 2 + r.cusps) - alpha1 * r.cusp_sum);
    if (!(r.volume_over_pi > 0)) throw Error("volume_Y1: non-positive volume");
    return r;
}

inline Rational prime_volume_over_pi(long p, const Rational& alpha1) { return Rational(p * p - 1, 6) * (1 - alpha1); }

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct VeechVolume {
    double exact = 0;      // (pi/6)(1 - alpha1)
    double empirical = 0;  // p^-2 vol(Y1(p))
    long prime = 0;
    Rational ratio;        // empirical / exact, exactly (p^2 - 1)/p^2
};

inline VeechVolume veech_volume(const Rational& alpha1, long primes_up_to) {
    if (primes_up_to < 5) throw PreconditionError("veech_volume: bound >= 5 required");
    long p = primes_up_to;
    while (!is_prime(p)) --p;
    VeechVolume v;
    v.prime = p;
    VolumeReport r = volume_Y1(p, alpha1);
    const Rational exact_over_pi = (1 - alpha1) / 6;
    const Rational emp_over_pi = r.volume_over_pi / Rational(p * p);
    v.exact = pi * to_double(exact_over_pi);
    v.empirical = pi * to_double(emp_over_pi);
    v.ratio = emp_over_pi / exact_over_pi;
    return v;
}

struct NStar {
    long N = 0;
    long nstar = 1;
    Rational alpha(long l) const { return Rational(N, l * nstar); }
};

inline NStar nstar_orbifold(long N) {
    if (N < 2) throw PreconditionError("nstar: N >= 2 required");
    NStar r;
    r.N = N;
    for (long c = 1; c < N; ++c) r.nstar = std::lcm(r.nstar, c * (N - c) / std::gcd(c, N));
    return r;
}

struct DegenerationAngles {
    Rational a, b, c;  // angles / (2 pi)
};

inline DegenerationAngles degeneration_angles(long N, const Rational& alpha1) {
    if (N < 2) throw PreconditionError("degeneration_angles: N >= 2 required");
    if (!(alpha1 > 0 && alpha1 < 1)) throw PreconditionError("degeneration_angles: alpha1 must lie in (0,1)");
    return {(1 - Rational(1, N)) * alpha1, 1 - alpha1, alpha1 / N};
}

struct AuxiliaryLeaf {
    long m = 0, n = 0;
    Rational angle_coeff;  // m (N - m) / N
};

inline AuxiliaryLeaf cusp_to_auxiliary_leaf(long a_prime, long c_prime, long N) {
    if (N < 2) throw PreconditionError("cusp_to_auxiliary_leaf: N >= 2 required");
    if (std::gcd(std::abs(a_prime), std::abs(c_prime)) != 1) throw PreconditionError("cusp_to_auxiliary_leaf: gcd(a', c') must be 1");
    AuxiliaryLeaf r;
    r.m = mod(c_prime, N);
    r.n = mod(a_prime, N);
    r.angle_coeff = Rational(r.m * (N - r.m), N);
    return r;
}

}  // namespace ellhyp
