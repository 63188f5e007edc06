#include "hecke/context.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hecke/errors.hpp"

namespace hecke {

HeckeContext make_context(int q) {
    if (q < 3) throw DomainError("Hecke group needs q >= 3, got " + std::to_string(q));
    HeckeContext ctx;
    ctx.q = q;
    ctx.lambda = q == 3 ? 1.0 : 2.0 * std::cos(std::numbers::pi / q);
    if (q % 2 == 0) {
        ctx.parity = Parity::even;
        ctx.h = (q - 2) / 2;
        ctx.kappa = ctx.h;
        ctx.R = 1.0;
    } else {
        ctx.parity = Parity::odd;
        ctx.h = (q - 3) / 2;
        ctx.kappa = 2 * ctx.h + 1;
        // Positive root of R^2 + (2 - lambda) R - 1 = 0, written without cancellation.
        const double b = 2.0 - ctx.lambda;
        ctx.R = 2.0 / (b + std::sqrt(b * b + 4.0));
    }
    ctx.r = ctx.R - ctx.lambda;
    return ctx;
}

} // namespace hecke
