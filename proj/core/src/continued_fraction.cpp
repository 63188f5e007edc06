#include "hecke/continued_fraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Stop expanding once the propagated rounding error of x_k exceeds this.
constexpr double kPrecisionLimit = 1e-5;

// floor with the upper-open convention for positive arguments.
int floor_int(double y) {
    if (y > 0.0) return static_cast<int>(std::ceil(y)) - 1;
    return static_cast<int>(std::floor(y));
}

int sign(int a) { return a > 0 ? 1 : -1; }

// Is the window exactly a forbidden block of B_q?
bool forbidden_window(const HeckeContext& ctx, std::span<const int> w) {
    const int s = sign(w.front());
    for (int a : w)
        if (sign(a) != s) return false;
    const auto ones = [&](std::size_t from, std::size_t count) {
        for (std::size_t k = from; k < from + count; ++k)
            if (std::abs(w[k]) != 1) return false;
        return true;
    };
    const std::size_t h = static_cast<std::size_t>(ctx.h);
    if (w.size() == h + 1 && ones(0, h + 1)) return true;
    if (ctx.even()) return w.size() == h + 1 && ones(0, h);
    return w.size() == 2 * h + 2 && ones(0, h) && std::abs(w[h]) == 2 && ones(h + 1, h);
}

bool windows_clean(const HeckeContext& ctx, std::span<const int> digits) {
    const std::size_t lengths[2] = {static_cast<std::size_t>(ctx.h) + 1, longest_block(ctx)};
    for (std::size_t len : lengths) {
        if (len == 0 || len > digits.size()) continue;
        for (std::size_t k = 0; k + len <= digits.size(); ++k)
            if (forbidden_window(ctx, digits.subspan(k, len))) return false;
    }
    return true;
}

std::optional<Period> detect_period(const std::vector<int>& d) {
    const std::size_t n = d.size();
    std::optional<Period> best;
    for (std::size_t p = 1; 3 * p <= n; ++p) {
        // Smallest preperiod for which the tail repeats with period p.
        std::size_t s = n - p;
        while (s > 0 && d[s - 1] == d[s - 1 + p]) --s;
        // A short repeat at the end of a long word is coincidence, not a period.
        if (n - s < 3 * p || 2 * (n - s) < n) continue;
        if (!best || s < best->preperiod) best = Period{s, p};
    }
    return best;
}

double domain_bound(const HeckeContext& ctx, CFMode mode) {
    return mode == CFMode::regular ? ctx.lambda / 2.0 : ctx.R;
}

// y <- -1/(a lambda + y) applied from the last digit to the first.
double fold(const HeckeContext& ctx, std::span<const int> digits, double y) {
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        const double den = *it * ctx.lambda + y;
        if (den == 0.0) throw NumericError("continued fraction has a vanishing denominator");
        y = -1.0 / den;
    }
    return y;
}

} // namespace

int nearest_multiple(const HeckeContext& ctx, double x, CFMode mode) {
    if (mode == CFMode::regular) return floor_int(x / ctx.lambda + 0.5);
    if (x >= 0.0) return floor_int(x / ctx.lambda + 1.0 - ctx.R / ctx.lambda);
    return floor_int(x / ctx.lambda + ctx.R / ctx.lambda);
}

StepResult step(const HeckeContext& ctx, double x, CFMode mode) {
    const double bound = domain_bound(ctx, mode);
    if (!std::isfinite(x) || std::abs(x) > bound * (1.0 + 1e-12))
        throw DomainError("step: x = " + std::to_string(x) + " outside the map's interval");
    if (x == 0.0) return {0, 0.0};
    const double y = -1.0 / x;
    const int digit = nearest_multiple(ctx, y, mode);
    return {digit, y - digit * ctx.lambda};
}

CFExpansion expand(const HeckeContext& ctx, double x, CFMode mode, int max_digits) {
    if (!std::isfinite(x)) throw DomainError("expand: non-finite input");
    CFExpansion e;
    e.kind = mode;
    e.a0 = nearest_multiple(ctx, x, mode);
    double xk = x - e.a0 * ctx.lambda;
    // Running bound on the absolute rounding error of xk.
    double err = kEps * (std::abs(x) + std::abs(e.a0 * ctx.lambda));
    const double bound = domain_bound(ctx, mode);
    xk = std::clamp(xk, -bound, bound);
    e.complete = false;
    while (true) {
        if (err <= kPrecisionLimit && std::abs(xk) <= 8.0 * err) {
            e.complete = true;
            break;
        }
        const int n = static_cast<int>(e.digits.size());
        // Past the precision limit the digits belong to a nearby point; the word still
        // evaluates close to x, so keep a minimum of 10 of them.
        if (n >= max_digits || (err > kPrecisionLimit && n >= 10)) break;
        // The next digit would not fit an int; report a truncated expansion.
        if (std::abs(xk) < 1e-9) break;
        const double y = -1.0 / xk;
        const StepResult st = step(ctx, xk, mode);
        e.digits.push_back(st.digit);
        err = err * y * y + kEps * (std::abs(y) + std::abs(st.next));
        xk = std::clamp(st.next, -bound, bound);
    }
    if (!e.complete) e.period = detect_period(e.digits);
    return e;
}

double evaluate_word(const HeckeContext& ctx, int a0, std::span<const int> digits) {
    return a0 * ctx.lambda + fold(ctx, digits, 0.0);
}

double periodic_value(const HeckeContext& ctx, std::span<const int> digits) {
    if (digits.empty()) throw DomainError("periodic_value: empty period");
    const MoebiusWord w(ctx, 0, std::vector<int>(digits.begin(), digits.end()));
    const Moebius& m = w.matrix;
    const double tr = m.trace();
    if (std::abs(tr) < 2.0 - 1e-12) throw DomainError("periodic word is elliptic");
    if (m.c == 0.0) throw NumericError("periodic word fixes infinity");
    // c z^2 + (d - a) z - b = 0; pick the root where |cz + d| > 1.
    const double disc = std::sqrt(std::max(tr * tr - 4.0, 0.0));
    double z;
    const double z1 = (m.a - m.d + disc) / (2.0 * m.c);
    const double z2 = (m.a - m.d - disc) / (2.0 * m.c);
    z = std::abs(m.c * z1 + m.d) > std::abs(m.c * z2 + m.d) ? z1 : z2;
    // The map is a contraction near z; a few passes remove cancellation error.
    for (int k = 0; k < 4; ++k) z = fold(ctx, digits, z);
    return z;
}

double evaluate(const HeckeContext& ctx, const CFExpansion& e) {
    if (e.period) {
        const std::span<const int> all(e.digits);
        const auto pre = all.first(e.period->preperiod);
        const auto per = all.subspan(e.period->preperiod, e.period->length);
        return e.a0 * ctx.lambda + fold(ctx, pre, periodic_value(ctx, per));
    }
    if (!e.complete && e.digits.size() < 10)
        throw DomainError("evaluate: truncated expansion with fewer than 10 digits");
    return evaluate_word(ctx, e.a0, e.digits);
}

std::size_t longest_block(const HeckeContext& ctx) {
    return ctx.even() ? static_cast<std::size_t>(ctx.h) + 1 : 2 * static_cast<std::size_t>(ctx.h) + 2;
}

bool is_regular(const HeckeContext& ctx, std::span<const int> digits, CFMode mode) {
    for (int a : digits)
        if (a == 0) throw DomainError("is_regular: zero digit");
    if (mode == CFMode::regular) return windows_clean(ctx, digits);
    std::vector<int> rev(digits.rbegin(), digits.rend());
    return windows_clean(ctx, rev);
}

bool is_cyclically_regular(const HeckeContext& ctx, std::span<const int> digits) {
    if (digits.empty()) return true;
    const std::size_t need = digits.size() + longest_block(ctx);
    std::vector<int> rep;
    rep.reserve(need);
    while (rep.size() < need) rep.push_back(digits[rep.size() % digits.size()]);
    return is_regular(ctx, rep, CFMode::regular);
}

std::weak_ordering lex_compare(const CFExpansion& x, const CFExpansion& y) {
    if (x.kind != CFMode::regular || y.kind != CFMode::regular)
        throw DomainError("lex_compare needs regular expansions");
    if (x.a0 != y.a0) return x.a0 < y.a0 ? std::weak_ordering::less : std::weak_ordering::greater;
    const auto digit_at = [](const CFExpansion& e, std::size_t i) -> std::optional<int> {
        if (i < e.digits.size()) return e.digits[i];
        if (e.period) {
            const std::size_t p = e.period->preperiod, len = e.period->length;
            return e.digits[p + (i - p) % len];
        }
        return std::nullopt;
    };
    const std::size_t horizon = std::max(x.digits.size(), y.digits.size()) * 2 + 2;
    for (std::size_t i = 0; i < horizon; ++i) {
        const auto a = digit_at(x, i);
        const auto b = digit_at(y, i);
        if (a && b) {
            if (*a == *b) continue;
            if ((*a > 0) != (*b > 0)) return *a > 0 ? std::weak_ordering::less : std::weak_ordering::greater;
            return *a < *b ? std::weak_ordering::less : std::weak_ordering::greater;
        }
        if (!a && !b) return std::weak_ordering::equivalent;
        // Only a finished expansion carries order information at its end.
        if (!a) {
            if (!x.complete) return std::weak_ordering::equivalent;
            return *b < 0 ? std::weak_ordering::less : std::weak_ordering::greater;
        }
        if (!y.complete) return std::weak_ordering::equivalent;
        return *a > 0 ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
}

std::vector<int> half_lambda_word(const HeckeContext& ctx) {
    std::vector<int> w(static_cast<std::size_t>(ctx.h), 1);
    if (!ctx.even()) {
        w.push_back(2);
        w.insert(w.end(), static_cast<std::size_t>(ctx.h), 1);
    }
    return w;
}

std::vector<int> r_word(const HeckeContext& ctx) {
    if (ctx.q == 3) return {3};
    if (ctx.even()) {
        std::vector<int> w(static_cast<std::size_t>(ctx.h - 1), 1);
        w.push_back(2);
        return w;
    }
    std::vector<int> w(static_cast<std::size_t>(ctx.h), 1);
    w.push_back(2);
    w.insert(w.end(), static_cast<std::size_t>(ctx.h - 1), 1);
    w.push_back(2);
    return w;
}

std::vector<double> phi_orbit(const HeckeContext& ctx) {
    const auto ones = [](int n) { return std::vector<int>(static_cast<std::size_t>(n), 1); };
    std::vector<double> phi(static_cast<std::size_t>(ctx.kappa) + 1);
    if (ctx.even()) {
        for (int i = 0; i <= ctx.h; ++i) phi[i] = evaluate_word(ctx, 0, ones(ctx.h - i));
        return phi;
    }
    for (int i = 0; i <= ctx.h; ++i) {
        std::vector<int> w = ones(ctx.h - i);
        w.push_back(2);
        w.insert(w.end(), static_cast<std::size_t>(ctx.h), 1);
        phi[2 * i] = evaluate_word(ctx, 0, w);
        phi[2 * i + 1] = evaluate_word(ctx, 0, ones(ctx.h - i));
    }
    return phi;
}

Moebius R_reflection(const HeckeContext& ctx) {
    if (ctx.even()) return Moebius::S();
    return power(Moebius::T(ctx) * Moebius::S(), ctx.h + 1);
}

} // namespace hecke
