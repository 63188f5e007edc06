#include "hecke/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <tuple>

#include "hecke/continued_fraction.hpp"
#include "hecke/errors.hpp"

namespace hecke {

namespace {

// Larger eigenvalue modulus of a hyperbolic matrix with trace t.
double dominant_eigenvalue(double t) {
    const double a = std::abs(t);
    return 0.5 * (a + std::sqrt((a - 2.0) * (a + 2.0)));
}

// Only windows touching the last digit can be new violations.
bool tail_clean(const HeckeContext& ctx, const std::vector<int>& prefix) {
    const std::size_t L = longest_block(ctx);
    const std::size_t from = prefix.size() > L ? prefix.size() - L : 0;
    return is_regular(ctx, std::span<const int>(prefix).subspan(from), CFMode::regular);
}

// Lower bound for -2 ln|x| at the orbit point preceding digit a.
double digit_cost(const HeckeContext& ctx, int a) {
    const double far = 2.0 * std::log((std::abs(a) - 0.5) * ctx.lambda);
    return std::max(far, -2.0 * std::log(ctx.lambda / 2.0));
}

// Lower bound for the length accumulated by a prefix with matrix m: the product of the
// squared orbit points equals 1/(c x_n + d)^2 for some |x_n| <= lambda/2.
double prefix_cost(const HeckeContext& ctx, const Moebius& m) {
    const double h = ctx.lambda / 2.0;
    const double lo = m.d - std::abs(m.c) * h, hi = m.d + std::abs(m.c) * h;
    if (lo <= 0.0 && hi >= 0.0) return 0.0;
    return 2.0 * std::log(std::min(std::abs(lo), std::abs(hi)));
}

} // namespace

bool is_primitive(const std::vector<int>& d) {
    const std::size_t n = d.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = d[i] == d[i - p];
        if (periodic) return false;
    }
    return true;
}

std::vector<int> canonical_rotation(const std::vector<int>& d) {
    std::vector<int> best = d;
    std::vector<int> rot = d;
    for (std::size_t k = 1; k < d.size(); ++k) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

std::vector<OrbitWord> enumerate_periodic(const HeckeContext& ctx, int n, int digit_bound, bool prime_classes) {
    if (n < 1) throw DomainError("enumerate_periodic: n must be >= 1");
    std::vector<OrbitWord> out;
    std::vector<int> w;
    std::function<void()> dfs = [&]() {
        if (static_cast<int>(w.size()) == n) {
            if (!is_cyclically_regular(ctx, w)) return;
            const bool prime = is_primitive(w);
            if (prime_classes && (!prime || canonical_rotation(w) != w)) return;
            out.push_back({w, prime});
            return;
        }
        for (int a = -digit_bound; a <= digit_bound; ++a) {
            if (a == 0) continue;
            w.push_back(a);
            if (tail_clean(ctx, w)) dfs();
            w.pop_back();
        }
    };
    dfs();
    return out;
}

double fixed_point(const HeckeContext& ctx, const OrbitWord& w) {
    if (w.digits.empty()) throw DomainError("fixed_point: empty word");
    return periodic_value(ctx, w.digits);
}

double orbit_length(const HeckeContext& ctx, const OrbitWord& w) {
    if (w.digits.empty()) throw DomainError("orbit_length: empty word");
    std::vector<int> rot = w.digits;
    double sum = 0.0;
    for (std::size_t l = 0; l < rot.size(); ++l) {
        sum += -2.0 * std::log(std::abs(periodic_value(ctx, rot)));
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    }
    return sum;
}

OrbitRecord orbit_record(const HeckeContext& ctx, const OrbitWord& w) {
    OrbitRecord rec;
    rec.word = w;
    rec.fixed_point = fixed_point(ctx, w);
    rec.length = orbit_length(ctx, w);
    rec.moebius = MoebiusWord(ctx, 0, w.digits);
    rec.trace = rec.moebius.matrix.trace();
    return rec;
}

bool is_O_plus(const HeckeContext& ctx, const OrbitWord& w) {
    const std::vector<int> r = r_word(ctx);
    return w.digits.size() == r.size() && canonical_rotation(w.digits) == canonical_rotation(r);
}

PartitionSum partition_function(const HeckeContext& ctx, int n, cplx s, int digit_bound, double prune_mass) {
    if (n < 1) throw DomainError("partition_function: n must be >= 1");
    if (digit_bound < 1) throw DomainError("partition_function: digit_bound must be >= 1");
    const double sigma = s.real();
    const double lam = ctx.lambda;
    const auto majorant = [&](int m) {
        return std::pow(std::min(lam / 2.0, 1.0 / ((m - 0.5) * lam)), 2.0 * sigma);
    };
    // suffix[m] = 2 * sum_{m' = m}^{B} w(m')
    std::vector<double> suffix(static_cast<std::size_t>(digit_bound) + 2, 0.0);
    for (int m = digit_bound; m >= 1; --m) suffix[m] = suffix[m + 1] + 2.0 * majorant(m);
    const double inside = suffix[1];
    double outside = 0.0;
    if (sigma > 0.5) outside = 2.0 * std::pow(lam, -2.0 * sigma) * hurwitz_zeta(2.0 * sigma, digit_bound + 0.5).value.real();
    else outside = std::numeric_limits<double>::infinity();
    std::vector<double> rest(static_cast<std::size_t>(n) + 1, 1.0);  // inside^{k}
    for (int k = 1; k <= n; ++k) rest[k] = rest[k - 1] * inside;

    PartitionSum out;
    out.value = 0.0;
    double pruned = 0.0;
    std::vector<int> w;
    std::vector<Moebius> mats{Moebius::identity()};
    std::function<void(double)> dfs = [&](double mass) {
        const int d = static_cast<int>(w.size());
        if (d == n) {
            if (!is_cyclically_regular(ctx, w)) return;
            const double t = mats.back().trace();
            if (std::abs(t) <= 2.0) return;
            const double r = 2.0 * std::log(dominant_eigenvalue(t));
            out.value += std::exp(-s * r);
            ++out.terms;
            return;
        }
        const double below = rest[n - d - 1];
        for (int m = 1; m <= digit_bound; ++m) {
            const double remaining = mass * suffix[m] * below;
            if (remaining < prune_mass) {
                pruned += remaining;
                break;
            }
            const double wm = majorant(m);
            for (int a : {m, -m}) {
                w.push_back(a);
                if (tail_clean(ctx, w)) {
                    mats.push_back(mats.back() * Moebius::S() * Moebius::T(ctx, a));
                    dfs(mass * wm);
                    mats.pop_back();
                }
                w.pop_back();
            }
        }
    };
    dfs(1.0);
    out.tail_bound = pruned + n * outside * std::pow(inside + outside, n - 1);
    return out;
}

std::vector<OrbitRecord> prime_orbits(const HeckeContext& ctx, double max_length) {
    std::vector<OrbitRecord> out;
    std::vector<int> w;
    std::vector<Moebius> mats{Moebius::identity()};
    std::function<void(double)> dfs = [&](double cost) {
        if (!w.empty()) {
            const double t = mats.back().trace();
            if (std::abs(t) > 2.0 && 2.0 * std::log(dominant_eigenvalue(t)) <= max_length &&
                is_cyclically_regular(ctx, w) && is_primitive(w) && canonical_rotation(w) == w) {
                out.push_back(orbit_record(ctx, {w, true}));
            }
        }
        for (int m = 1;; ++m) {
            const double c = digit_cost(ctx, m);
            if (cost + c > max_length) break;
            for (int a : {-m, m}) {
                // A digit below the first one makes a smaller rotation; no canonical word follows.
                if (!w.empty() && a < w.front()) continue;
                w.push_back(a);
                if (tail_clean(ctx, w)) {
                    mats.push_back(mats.back() * Moebius::S() * Moebius::T(ctx, a));
                    if (prefix_cost(ctx, mats.back()) <= max_length) dfs(cost + c);
                    mats.pop_back();
                }
                w.pop_back();
            }
        }
    };
    dfs(0.0);
    std::sort(out.begin(), out.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
        return std::tie(a.length, a.word.digits) < std::tie(b.length, b.word.digits);
    });
    return out;
}

namespace {

double count_tail_estimate(double sigma, double L) {
    // Prime orbit count grows like e^r / r.
    if (sigma <= 1.0) return std::numeric_limits<double>::infinity();
    return std::exp((1.0 - sigma) * L) / ((sigma - 1.0) * L);
}

bool within_digits(const OrbitRecord& o, int digit_bound) {
    if (digit_bound <= 0) return true;
    return std::all_of(o.word.digits.begin(), o.word.digits.end(),
                       [&](int a) { return std::abs(a) <= digit_bound; });
}

std::vector<OrbitRecord> filtered(std::vector<OrbitRecord> v, int digit_bound) {
    v.erase(std::remove_if(v.begin(), v.end(), [&](const OrbitRecord& o) { return !within_digits(o, digit_bound); }),
            v.end());
    return v;
}

} // namespace

ProductEstimate selberg_product(const HeckeContext& ctx, const std::vector<OrbitRecord>& orbits, cplx s,
                                double max_length, int k_max) {
    ProductEstimate out;
    out.value = 1.0;
    double r_min = std::numeric_limits<double>::infinity();
    for (const OrbitRecord& o : orbits) {
        if (o.length > max_length) continue;
        for (int k = 0; k <= k_max; ++k) out.value *= 1.0 - std::exp(-(s + double(k)) * o.length);
        r_min = std::min(r_min, o.length);
        ++out.orbits;
    }
    const double r_plus = orbit_length(ctx, {r_word(ctx), true});
    for (int k = 0; k <= k_max; ++k) out.value /= 1.0 - std::exp(-(s + double(k)) * r_plus);
    const double sigma = s.real();
    out.truncation_bound = std::abs(out.value) * count_tail_estimate(sigma, max_length);
    if (std::isfinite(r_min))
        out.truncation_bound += static_cast<double>(out.orbits) * std::exp(-(sigma + k_max + 1) * r_min) /
                                (1.0 - std::exp(-r_min));
    return out;
}

ProductEstimate selberg_product(const HeckeContext& ctx, cplx s, double max_length, int k_max, int digit_bound) {
    return selberg_product(ctx, filtered(prime_orbits(ctx, max_length), digit_bound), s, max_length, k_max);
}

ProductEstimate ruelle_product(const std::vector<OrbitRecord>& orbits, cplx s, double max_length) {
    ProductEstimate out;
    out.value = 1.0;
    for (const OrbitRecord& o : orbits) {
        if (o.length > max_length) continue;
        out.value /= 1.0 - std::exp(-s * o.length);
        ++out.orbits;
    }
    out.truncation_bound = std::abs(out.value) * count_tail_estimate(s.real(), max_length);
    return out;
}

ProductEstimate ruelle_product(const HeckeContext& ctx, cplx s, double max_length, int digit_bound) {
    return ruelle_product(filtered(prime_orbits(ctx, max_length), digit_bound), s, max_length);
}

} // namespace hecke
