#include "hecke/moebius.hpp"

#include <utility>

namespace hecke {

MoebiusWord::MoebiusWord(const HeckeContext& ctx, int a0_, std::vector<int> digits_)
    : a0(a0_), digits(std::move(digits_)), matrix(Moebius::T(ctx, a0_)) {
    for (int a : digits) matrix = matrix * Moebius::S() * Moebius::T(ctx, a);
}

Moebius power(const Moebius& m, int n) {
    Moebius base = m;
    if (n < 0) {
        // adjugate, the inverse up to the determinant scalar
        base = {m.d, -m.b, -m.c, m.a};
        n = -n;
    }
    Moebius out;
    for (int i = 0; i < n; ++i) out = out * base;
    return out;
}

} // namespace hecke
