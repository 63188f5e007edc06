#include "hecke/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

// B_{2j} for j = 1..16.
constexpr std::array<double, 16> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
};

constexpr int kCorrections = 15;

struct Partial {
    cplx value;
    double next_term;
};

Partial euler_maclaurin(cplx s, double a, int M) {
    cplx sum = 0.0;
    for (int k = M - 1; k >= 0; --k) sum += std::exp(-s * std::log(a + k));
    const double x = a + M;
    const double lx = std::log(x);
    const cplx xs = std::exp(-s * lx);  // x^{-s}
    sum += x * xs / (s - 1.0) + 0.5 * xs;
    // term_j = B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}
    cplx rising = s;           // (s)_{2j-1}
    cplx power = xs / x;       // x^{-s-2j+1}
    double factorial = 2.0;    // (2j)!
    double next = 0.0;
    for (int j = 1; j <= kCorrections + 1; ++j) {
        const cplx term = kBernoulli[j - 1] / factorial * rising * power;
        if (j <= kCorrections) {
            sum += term;
        } else {
            next = std::abs(term);
        }
        rising *= (s + double(2 * j - 1)) * (s + double(2 * j));
        power /= x * x;
        factorial *= double(2 * j + 1) * double(2 * j + 2);
    }
    return {sum, next};
}

} // namespace

HurwitzEval hurwitz_zeta(cplx s, double a) {
    if (!(a > 0.0)) throw DomainError("hurwitz_zeta: a must be positive");
    if (s == cplx(1.0, 0.0)) throw PoleError("hurwitz_zeta: pole at s = 1");
    // The correction series is asymptotic in x = a + M; keep x well above |s|.
    int M = std::max(10, static_cast<int>(std::abs(s) - a) + 10);
    Partial p = euler_maclaurin(s, a, M);
    for (int round = 0; round < 8 && p.next_term > 1e-13 * std::abs(p.value); ++round) {
        M *= 2;
        p = euler_maclaurin(s, a, M);
    }
    return {s, a, p.value, p.next_term};
}

cplx pochhammer(cplx s, int m) {
    cplx out = 1.0;
    for (int k = 0; k < m; ++k) out *= s + double(k);
    return out;
}

std::vector<cplx> hurwitz_derivatives(cplx s, double a, int m_max) {
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(m_max) + 1);
    cplx factor = 1.0;  // (-1)^m (s)_m
    for (int m = 0; m <= m_max; ++m) {
        if (s + double(m) == cplx(1.0, 0.0))
            throw PoleError("hurwitz_derivatives: shifted pole at m = " + std::to_string(m));
        out.push_back(factor * hurwitz_zeta(s + double(m), a).value);
        factor *= -(s + double(m));
    }
    return out;
}

cplx squared_power(cplx w, cplx s) {
    if (w == cplx(0.0, 0.0)) throw DomainError("squared_power: w = 0");
    return std::exp(s * std::log(w * w));
}

} // namespace hecke
