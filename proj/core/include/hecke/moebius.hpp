#pragma once

#include <complex>
#include <vector>

#include "hecke/context.hpp"

namespace hecke {

// 2x2 real matrix acting by fractional linear transformation.
struct Moebius {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Moebius identity() { return {}; }
    static Moebius S() { return {0.0, -1.0, 1.0, 0.0}; }
    // z -> 1/z, determinant -1 (the reflection J composed with S).
    static Moebius S_tilde() { return {0.0, 1.0, 1.0, 0.0}; }
    static Moebius T(const HeckeContext& ctx, int power = 1) {
        return {1.0, power * ctx.lambda, 0.0, 1.0};
    }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    double apply(double z) const { return (a * z + b) / (c * z + d); }
    std::complex<double> apply(std::complex<double> z) const { return (a * z + b) / (c * z + d); }
    // Automorphy factor cz + d.
    std::complex<double> denominator(std::complex<double> z) const { return c * z + d; }
    double derivative(double z) const {
        const double den = c * z + d;
        return det() / (den * den);
    }

    friend Moebius operator*(const Moebius& x, const Moebius& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

// T^{a0} S T^{a1} ... S T^{al} together with the digits that generated it.
struct MoebiusWord {
    int a0 = 0;
    std::vector<int> digits;
    Moebius matrix;

    MoebiusWord() = default;
    MoebiusWord(const HeckeContext& ctx, int a0, std::vector<int> digits);

    double apply(double z) const { return matrix.apply(z); }
};

Moebius power(const Moebius& m, int n);

} // namespace hecke
