#pragma once

#include <complex>
#include <vector>

namespace hecke {

using cplx = std::complex<double>;

struct HurwitzEval {
    cplx s;
    double a = 0.0;
    cplx value;
    double est_error = 0.0;
};

// zeta(s, a) = sum_{k >= 0} (k + a)^{-s}, continued to s != 1 by Euler-Maclaurin.
HurwitzEval hurwitz_zeta(cplx s, double a);

// (d/da)^m zeta(s, a) = (-1)^m (s)_m zeta(s + m, a) for m = 0..m_max.
std::vector<cplx> hurwitz_derivatives(cplx s, double a, int m_max);

// Rising factorial (s)_m.
cplx pochhammer(cplx s, int m);

// (w^2)^s with the principal logarithm of w^2.
cplx squared_power(cplx w, cplx s);

} // namespace hecke
