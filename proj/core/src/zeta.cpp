#include "hecke/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/SVD>

#include "hecke/errors.hpp"

namespace hecke {

cplx transfer_det(const HeckeContext& ctx, const DiscSystem& discs, cplx s, int N, DetRoute route) {
    if (route == DetRoute::full) return fredholm_det(assemble(ctx, discs, full_operator(ctx), s, N));
    return fredholm_det(assemble(ctx, discs, reduced_operator(ctx, 1), s, N)) *
           fredholm_det(assemble(ctx, discs, reduced_operator(ctx, -1), s, N));
}

namespace {

constexpr int kGapStep = 10;

cplx selberg_value(const HeckeContext& ctx, const DiscSystem& discs, cplx s, int N, DetRoute route, cplx* det_L,
                   cplx* det_K) {
    const cplx dl = transfer_det(ctx, discs, s, N, route);
    const cplx dk = closed_form_K_det(ctx, s).value;
    if (det_L) *det_L = dl;
    if (det_K) *det_K = dk;
    return dl / dk;
}

} // namespace

ZetaEval selberg_zeta(const HeckeContext& ctx, const DiscSystem& discs, cplx s, int N, DetRoute route) {
    check_pole_distance(s);
    ZetaEval out;
    out.s = s;
    out.N = N;
    out.value = selberg_value(ctx, discs, s, N, route, &out.det_L, &out.det_K);
    const int coarse = std::max(N - kGapStep, 0);
    out.convergence_gap = std::abs(out.value - selberg_value(ctx, discs, s, coarse, route, nullptr, nullptr));
    return out;
}

ZetaEval ruelle_zeta(const HeckeContext& ctx, const DiscSystem& discs, cplx s, int N) {
    check_pole_distance(s);
    check_pole_distance(s + 1.0);
    const auto value = [&](int n, cplx* dl) {
        const cplx d0 = transfer_det(ctx, discs, s, n);
        const cplx d1 = transfer_det(ctx, discs, s + 1.0, n);
        if (dl) *dl = d0;
        return d1 / d0;
    };
    ZetaEval out;
    out.s = s;
    out.N = N;
    out.value = value(N, &out.det_L);
    out.det_K = 1.0;
    out.convergence_gap = std::abs(out.value - value(std::max(N - kGapStep, 0), nullptr));
    return out;
}

namespace {

struct Minimum {
    double x;
    double f;
    bool converged;
};

template <class F>
Minimum golden_section(F f, double a, double b, double tol) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    int it = 0;
    while (b - a > tol && it < 200) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
        ++it;
    }
    const double x = 0.5 * (a + b);
    return {x, f(x), b - a <= tol};
}

} // namespace

std::vector<ZeroCandidate> scan_zeros(const HeckeContext& ctx, const DiscSystem& discs, const ScanPath& path, int N,
                                      double step, double refine_tol) {
    if (!(step > 0.0)) throw DomainError("scan_zeros: step must be positive");
    std::vector<ZeroCandidate> out;
    if (!(path.start < path.stop)) return out;
    std::vector<double> xs;
    for (int k = 0;; ++k) {
        const double x = path.start + k * step;
        if (x > path.stop + 1e-12) break;
        xs.push_back(x);
    }
    const auto objective = [&](int n) {
        return [&, n](double x) { return std::abs(transfer_det(ctx, discs, path.at(x), n)); };
    };
    const auto f = objective(N);
    std::vector<double> fs;
    fs.reserve(xs.size());
    for (double x : xs) fs.push_back(f(x));
    for (std::size_t k = 1; k + 1 < xs.size(); ++k) {
        if (!(fs[k] <= fs[k - 1] && fs[k] <= fs[k + 1])) continue;
        const Minimum m = golden_section(f, xs[k - 1], xs[k + 1], refine_tol);
        const Minimum check = golden_section(objective(N + kGapStep), xs[k - 1], xs[k + 1], refine_tol);
        ZeroCandidate c;
        c.s = path.at(m.x);
        const cplx z_n = selberg_value(ctx, discs, c.s, N, DetRoute::reduced, nullptr, nullptr);
        const cplx z_fine = selberg_value(ctx, discs, c.s, N + kGapStep, DetRoute::reduced, nullptr, nullptr);
        c.abs_value = std::abs(z_n);
        c.convergence_gap = std::abs(z_n - z_fine);
        c.refined = m.converged && check.converged && std::abs(check.x - m.x) < refine_tol;
        out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const ZeroCandidate& a, const ZeroCandidate& b) {
        return a.s.real() != b.s.real() ? a.s.real() < b.s.real() : a.s.imag() < b.s.imag();
    });
    return out;
}

// ---------------------------------------------------------------------------------------------
// Eigenfunctions

namespace {

// Images must stay this deep inside a disc for the Taylor series to be trusted.
constexpr double kAdmissible = 0.95;

int direct_until(const HeckeContext& ctx, double z, double cj, double rhoj, int sigma, int n0) {
    const double target = std::max(0.75, std::abs(cj) / rhoj + 0.2);
    int l = n0;
    for (; l < n0 + 4000; ++l) {
        const double w = std::abs(z + sigma * l * ctx.lambda);
        if ((std::abs(cj) + 1.0 / w) / rhoj <= target) break;
    }
    return l;
}

} // namespace

EigenFunction::EigenFunction(HeckeContext ctx, DiscSystem discs, OperatorSpec spec, cplx s, int N,
                             std::vector<std::vector<cplx>> coefficients, double residual)
    : ctx_(ctx), discs_(std::move(discs)), spec_(std::move(spec)), s_(s), N_(N), coeffs_(std::move(coefficients)),
      residual_(residual) {}

std::optional<cplx> EigenFunction::disc_value(int component, cplx z) const {
    const auto it = std::find(spec_.components.begin(), spec_.components.end(), component);
    if (it == spec_.components.end()) throw DomainError("eigenfunction has no component " + std::to_string(component));
    const auto& v = coeffs_[static_cast<std::size_t>(it - spec_.components.begin())];
    const cplx u = (z - discs_.center(component)) / discs_.radius(component);
    if (std::abs(u) > 1.0) return std::nullopt;
    cplx acc = 0.0;
    for (auto k = v.rbegin(); k != v.rend(); ++k) acc = acc * u + *k;
    return acc;
}

std::optional<cplx> EigenFunction::value(int component, double z) const {
    const double lam = ctx_.lambda;
    cplx total = 0.0;
    bool any = false;
    for (const BranchTerm& t : spec_.terms) {
        if (t.row != component) continue;
        any = true;
        const double cj = discs_.center(t.col), rj = discs_.radius(t.col);
        const auto image = [&](int n) { return t.reflect * (-1.0 / (z + n * lam)); };
        const auto inside = [&](double y) { return std::abs(y - cj) <= kAdmissible * rj; };
        const auto single = [&](int n) -> std::optional<cplx> {
            const double w = z + n * lam;
            if (w == 0.0 || !inside(image(n))) return std::nullopt;
            return squared_power(w, -s_) * *disc_value(t.col, image(n));
        };
        if (!t.tail) {
            const auto v = single(t.n);
            if (!v) return std::nullopt;
            total += t.coefficient * *v;
            continue;
        }
        const int sigma = t.n > 0 ? 1 : -1;
        const int n0 = std::abs(t.n);
        if (sigma * (z + t.n * lam) <= 0.0) return std::nullopt;
        if (std::abs(cj) > kAdmissible * rj) return std::nullopt;
        const int L = direct_until(ctx_, z, cj, rj, sigma, n0);
        cplx part = 0.0;
        for (int l = n0; l <= L; ++l) {
            const auto v = single(sigma * l);
            if (!v) return std::nullopt;
            if (l < L) part += *v;
        }
        // sum_{l >= L} w^{-m} (w^2)^{-s} = chi^m lambda^{-S} zeta(S, L + sigma z / lam)
        const auto idx = static_cast<std::size_t>(std::find(spec_.components.begin(), spec_.components.end(), t.col) -
                                                  spec_.components.begin());
        const auto& v = coeffs_[idx];
        const double a0 = L + sigma * z / lam;
        std::vector<cplx> H(v.size());
        for (std::size_t m = 0; m < v.size(); ++m) {
            const cplx S = 2.0 * s_ + double(m);
            H[m] = std::exp(-S * std::log(lam)) * hurwitz_zeta(S, a0).value;
            if (sigma < 0 && m % 2 == 1) H[m] = -H[m];
        }
        std::vector<double> binom(v.size(), 0.0);
        binom[0] = 1.0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k > 0)
                for (std::size_t m = k; m >= 1; --m) binom[m] += binom[m - 1];
            cplx col = 0.0;
            for (std::size_t m = 0; m <= k; ++m)
                col += binom[m] * std::pow(-cj, double(k - m)) * std::pow(-double(t.reflect), double(m)) * H[m];
            part += v[k] * col * std::pow(rj, -double(k));
        }
        total += t.coefficient * part;
    }
    if (!any) return std::nullopt;
    return total;
}

Interval EigenFunction::domain(int component) const {
    const double c = discs_.center(component);
    const double h = 1e-3;
    if (!value(component, c)) return {c, c};
    double lo = c, hi = c;
    while (lo - c > -5.0 && value(component, lo - h)) lo -= h;
    while (hi - c < 5.0 && value(component, hi + h)) hi += h;
    return {lo, hi};
}

namespace {

EigenFunction make_eigenfunction(const HeckeContext& ctx, const DiscSystem& discs, const OperatorSpec& spec, cplx s,
                                 int N, const Eigen::MatrixXcd& m, Eigen::VectorXcd v) {
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    v /= v(arg);
    const Eigen::MatrixXcd a = m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    const double residual = (a * v).norm() / v.norm();
    std::vector<std::vector<cplx>> coeffs;
    for (std::size_t b = 0; b < spec.components.size(); ++b) {
        const auto* p = v.data() + static_cast<Eigen::Index>(b) * (N + 1);
        coeffs.emplace_back(p, p + N + 1);
    }
    return EigenFunction(ctx, discs, spec, s, N, std::move(coeffs), residual);
}

} // namespace

EigenFunction eigenfunction(const HeckeContext& ctx, const DiscSystem& discs, cplx s, int epsilon, int N) {
    const OperatorSpec spec = reduced_operator(ctx, epsilon);
    const BlockMatrix bm = assemble(ctx, discs, spec, s, N);
    const cplx det = fredholm_det(bm);
    if (std::abs(det) >= 1e-6)
        throw NotAnEigenvalueError("1 is not an eigenvalue: |det(1 - L)| = " + std::to_string(std::abs(det)));
    const Eigen::MatrixXcd a = bm.m - Eigen::MatrixXcd::Identity(bm.m.rows(), bm.m.cols());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXcd v = svd.matrixV().col(svd.matrixV().cols() - 1);
    return make_eigenfunction(ctx, discs, spec, s, N, bm.m, v);
}

EigenFunction eigenfunction_from_coefficients(const HeckeContext& ctx, const DiscSystem& discs, cplx s, int epsilon,
                                              int N, std::vector<std::vector<cplx>> coefficients) {
    const OperatorSpec spec = reduced_operator(ctx, epsilon);
    const BlockMatrix bm = assemble(ctx, discs, spec, s, N);
    Eigen::VectorXcd v(bm.m.rows());
    for (std::size_t b = 0; b < coefficients.size(); ++b)
        for (int k = 0; k <= N; ++k) v(static_cast<Eigen::Index>(b) * (N + 1) + k) = coefficients[b].at(k);
    return make_eigenfunction(ctx, discs, spec, s, N, bm.m, v);
}

// ---------------------------------------------------------------------------------------------
// Group ring and slash action

GroupRingWord GroupRingWord::one() { return element(Moebius::identity(), "1"); }

GroupRingWord GroupRingWord::element(const Moebius& g, std::string label) {
    GroupRingWord w;
    w.terms.push_back({1.0, g, std::move(label)});
    return w;
}

GroupRingWord GroupRingWord::operator+(const GroupRingWord& o) const {
    GroupRingWord out = *this;
    out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
    return out;
}

GroupRingWord GroupRingWord::operator-(const GroupRingWord& o) const { return *this + o * cplx(-1.0); }

GroupRingWord GroupRingWord::operator*(const GroupRingWord& o) const {
    GroupRingWord out;
    for (const Term& a : terms)
        for (const Term& b : o.terms) {
            std::string label = a.label == "1" ? b.label : (b.label == "1" ? a.label : a.label + b.label);
            out.terms.push_back({a.coefficient * b.coefficient, a.element * b.element, std::move(label)});
        }
    return out;
}

GroupRingWord GroupRingWord::operator*(cplx c) const {
    GroupRingWord out = *this;
    for (Term& t : out.terms) t.coefficient *= c;
    return out;
}

GroupRingWord gr_T(const HeckeContext& ctx, int power) {
    return GroupRingWord::element(Moebius::T(ctx, power), power == 1 ? "T" : "T^" + std::to_string(power));
}
GroupRingWord gr_S() { return GroupRingWord::element(Moebius::S(), "S"); }
GroupRingWord gr_S_tilde() { return GroupRingWord::element(Moebius::S_tilde(), "S~"); }

GroupRingWord gr_power(const GroupRingWord& w, int n) {
    GroupRingWord out = GroupRingWord::one();
    for (int i = 0; i < n; ++i) out = out * w;
    return out;
}

GroupRingWord gr_geometric(const GroupRingWord& w, int n) {
    GroupRingWord out;
    for (int l = 0; l <= n; ++l) out = out + gr_power(w, l);
    return out;
}

cplx slash_apply(const DomainFunction& g, const GroupRingWord& word, cplx s, double z) {
    cplx total = 0.0;
    for (const auto& t : word.terms) {
        const Moebius& m = t.element;
        const double den = m.c * z + m.d;
        const double y = den == 0.0 ? std::numeric_limits<double>::infinity() : m.apply(z);
        const auto gy = std::isfinite(y) ? g(y) : std::nullopt;
        if (!gy) throw ContainmentError("slash_apply: " + t.label + " maps z = " + std::to_string(z) + " out of the domain");
        total += t.coefficient * squared_power(den, -s) * *gy;
    }
    return total;
}

namespace {

// g_1|(1 - T) - (right-hand side), which vanishes for eigenfunctions.
GroupRingWord main_equation(const HeckeContext& ctx, int eps) {
    const GroupRingWord one = GroupRingWord::one();
    const GroupRingWord T = gr_T(ctx), S = gr_S(), St = gr_S_tilde();
    const GroupRingWord ST = S * T;
    const cplx e(eps);
    if (ctx.q == 3) return one - T - S * gr_T(ctx, 3) + St * gr_T(ctx, -1) * e;
    const GroupRingWord P = gr_geometric(ST, ctx.h - 1);
    if (ctx.even()) return one - T - P * (S * gr_T(ctx, 2) - St * e);
    const GroupRingWord X = gr_power(ST, ctx.h + 1) * T * P;
    const GroupRingWord Y = gr_power(ST, ctx.h);
    const GroupRingWord rhs_plus = P * S * gr_T(ctx, 2) + X * S * gr_T(ctx, 2) + Y * S * gr_T(ctx, 3);
    const GroupRingWord rhs_minus = P * St + X * St + Y * St * gr_T(ctx, -1);
    return one - T - rhs_plus + rhs_minus * e;
}

} // namespace

FunctionalResidual functional_residual(const HeckeContext& ctx, cplx s, int epsilon, const EigenFunction& ef,
                                       const std::vector<double>& samples) {
    const auto g = [&](int i) -> DomainFunction { return [&ef, i](double y) { return ef.value(i, y); }; };
    const GroupRingWord ST = gr_S() * gr_T(ctx);
    using Check = std::pair<std::string, std::function<cplx(double)>>;
    std::vector<Check> checks;
    const GroupRingWord eq = main_equation(ctx, epsilon);
    checks.push_back({"lewis", [&, eq](double z) { return slash_apply(g(1), eq, s, z); }});
    if (ctx.q == 3) {
        checks.push_back({"symmetry", [&](double z) {
                              const auto a = ef.value(1, z), b = ef.value(1, -z - 1.0);
                              if (!a || !b) throw ContainmentError("symmetry sample outside the domain");
                              return *a - double(epsilon) * *b;
                          }});
    } else if (ctx.even()) {
        for (int i = 2; i <= ctx.h; ++i) {
            const GroupRingWord P = gr_geometric(ST, i - 1);
            checks.push_back({"g" + std::to_string(i), [&, P, i](double z) {
                                  return slash_apply(g(i), GroupRingWord::one(), s, z) - slash_apply(g(1), P, s, z);
                              }});
        }
    } else {
        const GroupRingWord to_g2 = GroupRingWord::one() + gr_power(ST, ctx.h + 1) * gr_T(ctx);
        checks.push_back({"g2", [&, to_g2](double z) {
                              return slash_apply(g(2), GroupRingWord::one(), s, z) - slash_apply(g(1), to_g2, s, z);
                          }});
        for (int i = 1; i <= ctx.h; ++i) {
            const GroupRingWord P = gr_geometric(ST, i - 1);
            const GroupRingWord Si = gr_power(ST, i);
            if (i >= 2)
                checks.push_back({"g" + std::to_string(2 * i), [&, P, i](double z) {
                                      return slash_apply(g(2 * i), GroupRingWord::one(), s, z) -
                                             slash_apply(g(2), P, s, z);
                                  }});
            checks.push_back({"g" + std::to_string(2 * i + 1), [&, P, Si, i](double z) {
                                  return slash_apply(g(2 * i + 1), GroupRingWord::one(), s, z) -
                                         slash_apply(g(1), Si, s, z) - slash_apply(g(2), P, s, z);
                              }});
        }
    }
    FunctionalResidual out;
    std::vector<double> worst(checks.size(), 0.0);
    for (double z : samples) {
        std::vector<double> vals;
        try {
            for (const auto& c : checks) vals.push_back(std::abs(c.second(z)));
        } catch (const ContainmentError&) {
            continue;
        }
        ++out.samples_used;
        for (std::size_t k = 0; k < vals.size(); ++k) worst[k] = std::max(worst[k], vals[k]);
    }
    if (out.samples_used == 0) throw ContainmentError("functional_residual: no admissible samples");
    for (std::size_t k = 0; k < checks.size(); ++k) {
        out.per_equation.emplace_back(checks[k].first, worst[k]);
        out.residual = std::max(out.residual, worst[k]);
    }
    return out;
}

std::vector<double> functional_samples(const EigenFunction& ef, int count) {
    const Interval d = ef.domain(1);
    std::vector<double> out;
    if (!(d.hi > d.lo) || count < 1) return out;
    for (int k = 1; k <= count; ++k) out.push_back(d.lo + (d.hi - d.lo) * k / (count + 1));
    return out;
}

} // namespace hecke
