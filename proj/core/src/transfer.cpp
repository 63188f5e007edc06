#include "hecke/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hecke/continued_fraction.hpp"
#include "hecke/errors.hpp"

namespace hecke {

namespace {

using Series = std::vector<cplx>;

// Truncated product of power series in u.
Series mul(const Series& a, const Series& b) {
    const std::size_t n = a.size();
    Series out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

struct DiscGeometry {
    double c = 0.0;
    double rho = 0.0;
};

DiscGeometry geometry(const DiscSystem& d, int component) {
    return {d.center(component), d.radius(component)};
}

// Columns p(u) v(u)^k of a single branch z -> theta_n(z), added into block (row, col).
void add_branch(const HeckeContext& ctx, const DiscGeometry& src, const DiscGeometry& dst, int n, int reflect,
                cplx coef, cplx s, int N, Eigen::MatrixXcd& m, Eigen::Index r0, Eigen::Index c0) {
    const std::size_t len = static_cast<std::size_t>(N) + 1;
    const double w0 = src.c + n * ctx.lambda;
    const double t = src.rho / w0;
    // (w^2)^{-s} = (w0^2)^{-s} (1 + t u)^{-2s}
    Series weight(len);
    weight[0] = squared_power(w0, -s);
    for (std::size_t p = 1; p < len; ++p) weight[p] = weight[p - 1] * (-2.0 * s - double(p - 1)) / double(p) * t;
    // v(u) = (reflect * (-1/w) - c_j) / rho_j
    Series v(len);
    double geo = 1.0 / w0;
    for (std::size_t p = 0; p < len; ++p) {
        v[p] = -reflect * geo / dst.rho;
        geo *= -t;
    }
    v[0] -= dst.c / dst.rho;
    Series col = weight;
    for (int k = 0; k <= N; ++k) {
        for (std::size_t p = 0; p < len; ++p) m(r0 + p, c0 + k) += coef * col[p];
        if (k < N) col = mul(col, v);
    }
}

// Sum over l >= L of the branches sigma*l, via Hurwitz zeta in closed form.
void add_hurwitz_tail(const HeckeContext& ctx, const DiscGeometry& src, const DiscGeometry& dst, int sigma, int L,
                      int reflect, cplx coef, cplx s, int N, Eigen::MatrixXcd& m, Eigen::Index r0, Eigen::Index c0) {
    const std::size_t len = static_cast<std::size_t>(N) + 1;
    const double lambda = ctx.lambda;
    const double a0 = L + sigma * src.c / lambda;
    // zeta(2s + t, a0) for t = 0..2N
    std::vector<cplx> zeta(2 * len - 1);
    for (std::size_t t = 0; t < zeta.size(); ++t) zeta[t] = hurwitz_zeta(2.0 * s + double(t), a0).value;
    // Z[m][p]: u^p coefficient of sum_l (sigma-signed) w^{-m} (w^2)^{-s}
    std::vector<Series> Z(len, Series(len));
    const double step = -sigma * src.rho / lambda;
    for (std::size_t mm = 0; mm < len; ++mm) {
        const cplx S = 2.0 * s + double(mm);
        cplx pref = std::exp(-S * std::log(lambda));
        if (sigma < 0 && (mm % 2 == 1)) pref = -pref;
        cplx factor = 1.0;  // (S)_p / p! * step^p
        for (std::size_t p = 0; p < len; ++p) {
            Z[mm][p] = pref * factor * zeta[mm + p];
            factor *= (S + double(p)) / double(p + 1) * step;
        }
    }
    // (reflect*(-1/w) - c_j)^k = sum_m C(k,m) (-c_j)^{k-m} (-reflect)^m w^{-m}
    std::vector<double> binom(len, 0.0);
    binom[0] = 1.0;
    for (int k = 0; k <= N; ++k) {
        if (k > 0)
            for (int mm = k; mm >= 1; --mm) binom[mm] += binom[mm - 1];
        const double scale = std::pow(dst.rho, -k);
        for (int mm = 0; mm <= k; ++mm) {
            const double cf = binom[mm] * std::pow(-dst.c, k - mm) * std::pow(-double(reflect), mm) * scale;
            if (cf == 0.0) continue;
            for (std::size_t p = 0; p < len; ++p) m(r0 + p, c0 + k) += coef * cf * Z[mm][p];
        }
    }
}

// First l from which the closed-form route is free of binomial cancellation.
int hurwitz_start(const HeckeContext& ctx, const DiscGeometry& src, const DiscGeometry& dst, int sigma, int n0) {
    const double target = std::max(0.75, std::abs(dst.c) / dst.rho + 0.2);
    int l = n0;
    for (; l < n0 + 4000; ++l) {
        const double dist = std::abs(src.c + sigma * l * ctx.lambda) - src.rho;
        if (dist > 0 && (std::abs(dst.c) + 1.0 / dist) / dst.rho <= target) break;
    }
    return l;
}

} // namespace

std::string OperatorSpec::name() const {
    switch (kind) {
    case OperatorKind::full: return "full";
    case OperatorKind::reduced: return epsilon > 0 ? "reduced+" : "reduced-";
    case OperatorKind::K: return "K";
    case OperatorKind::elementary: return "elementary";
    }
    return "unknown";
}

namespace {

void add_set_terms(std::vector<BranchTerm>& terms, int row, int col, const IndexSet& set, int reflect, cplx coef) {
    for (int n : set.finite) terms.push_back({row, col, n, false, reflect, coef});
    if (set.at_least) terms.push_back({row, col, *set.at_least, true, reflect, coef});
    if (set.at_most) terms.push_back({row, col, *set.at_most, true, reflect, coef});
}

} // namespace

OperatorSpec full_operator(const HeckeContext& ctx) {
    OperatorSpec spec;
    spec.kind = OperatorKind::full;
    spec.components = components(ctx);
    for (const auto& [key, set] : index_sets(ctx)) add_set_terms(spec.terms, key.first, key.second, set, 1, 1.0);
    return spec;
}

OperatorSpec reduced_operator(const HeckeContext& ctx, int epsilon) {
    if (epsilon != 1 && epsilon != -1) throw DomainError("reduced operator needs epsilon = +1 or -1");
    OperatorSpec spec;
    spec.kind = OperatorKind::reduced;
    spec.epsilon = epsilon;
    for (int i = 1; i <= ctx.kappa; ++i) spec.components.push_back(i);
    for (const auto& [key, set] : index_sets(ctx)) {
        const auto [i, j] = key;
        if (i < 0) continue;
        if (j > 0) {
            add_set_terms(spec.terms, i, j, set, 1, 1.0);
        } else {
            add_set_terms(spec.terms, i, -j, set, -1, double(epsilon));
        }
    }
    return spec;
}

std::vector<int> r_orbit_components(const HeckeContext& ctx) {
    const MarkovPartition mp = build_markov(ctx);
    const std::vector<int> word = r_word(ctx);
    double x = periodic_value(ctx, word);
    std::vector<int> out;
    for (int a : word) {
        const auto c = mp.locate(x);
        if (!c) throw NumericError("r_q orbit point on a partition boundary");
        out.push_back(*c);
        x = -1.0 / x - a * ctx.lambda;
    }
    return out;
}

OperatorSpec k_operator(const HeckeContext& ctx) {
    OperatorSpec spec;
    spec.kind = OperatorKind::K;
    for (int i = 1; i <= ctx.kappa; ++i) spec.components.push_back(i);
    const std::vector<int> word = r_word(ctx);
    const std::vector<int> comp = r_orbit_components(ctx);
    const IndexSets sets = index_sets(ctx);
    const std::size_t k = word.size();
    // x_l = theta_{a_{l+1}}(x_{l+1}) maps component c(l+1) into c(l).
    for (std::size_t l = 0; l < k; ++l) {
        const int row = comp[(l + 1) % k];
        const int col = comp[l];
        const int n = word[l];
        const auto it = sets.find({row, col});
        if (it == sets.end() || !it->second.contains(n))
            throw NumericError("r_q orbit step is not an admissible branch");
        spec.terms.push_back({row, col, n, false, 1, 1.0});
    }
    return spec;
}

OperatorSpec elementary_operator(const HeckeContext& ctx, int row, int col, int n, bool tail) {
    if (n == 0) throw DomainError("elementary operator needs a nonzero branch");
    OperatorSpec spec;
    spec.kind = OperatorKind::elementary;
    spec.components = components(ctx);
    spec.terms.push_back({row, col, n, tail, 1, 1.0});
    return spec;
}

int BlockMatrix::block_of(int component) const {
    const auto it = std::find(components.begin(), components.end(), component);
    if (it == components.end()) throw DomainError("component " + std::to_string(component) + " not in matrix");
    return static_cast<int>(it - components.begin());
}

void check_pole_distance(cplx s) {
    if (std::abs(s.imag()) > 1e-6 || s.real() > 0.5 + 1e-6) return;
    const double k = std::round(1.0 - 2.0 * s.real());
    if (std::abs(s - cplx((1.0 - k) / 2.0, 0.0)) < 1e-6)
        throw PoleError("s is within 1e-6 of the pole (1 - k)/2 with k = " + std::to_string(static_cast<int>(k)));
}

BlockMatrix assemble(const HeckeContext& ctx, const DiscSystem& discs, const OperatorSpec& spec, cplx s, int N) {
    if (N < 0) throw DomainError("assemble: N must be non-negative");
    check_pole_distance(s);
    if (!check_discs(ctx, discs, 8).passed) throw ContainmentError("assemble: disc system does not verify");
    BlockMatrix out;
    out.components = spec.components;
    out.N = N;
    out.s = s;
    out.kind = spec.name();
    const Eigen::Index dim = static_cast<Eigen::Index>(spec.components.size()) * (N + 1);
    out.m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const BranchTerm& t : spec.terms) {
        const DiscGeometry src = geometry(discs, t.row);
        // A reflected argument lands in D_{-col} = -D_col.
        const DiscGeometry dst = geometry(discs, t.col);
        const Eigen::Index r0 = out.index(t.row, 0), c0 = out.index(t.col, 0);
        if (!t.tail) {
            add_branch(ctx, src, dst, t.n, t.reflect, t.coefficient, s, N, out.m, r0, c0);
            continue;
        }
        const int sigma = t.n > 0 ? 1 : -1;
        const int n0 = std::abs(t.n);
        const int L = hurwitz_start(ctx, src, dst, sigma, n0);
        for (int l = n0; l < L; ++l) add_branch(ctx, src, dst, sigma * l, t.reflect, t.coefficient, s, N, out.m, r0, c0);
        add_hurwitz_tail(ctx, src, dst, sigma, L, t.reflect, t.coefficient, s, N, out.m, r0, c0);
    }
    return out;
}

BlockMatrix P_matrix(const HeckeContext& ctx, int N) {
    BlockMatrix out;
    out.components = components(ctx);
    out.N = N;
    out.s = 0.0;
    out.kind = "P";
    const Eigen::Index dim = static_cast<Eigen::Index>(out.components.size()) * (N + 1);
    out.m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i : out.components)
        for (int k = 0; k <= N; ++k) out.m(out.index(i, k), out.index(-i, k)) = (k % 2 == 0) ? 1.0 : -1.0;
    return out;
}

cplx trace_power(const BlockMatrix& m, int k) {
    if (k < 1) throw DomainError("trace_power: k must be >= 1");
    Eigen::MatrixXcd p = m.m;
    for (int i = 1; i < k; ++i) p = p * m.m;
    return p.trace();
}

cplx fredholm_det(const BlockMatrix& m) {
    if (m.m.rows() == 0) return 1.0;
    const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(m.m.rows(), m.m.cols()) - m.m;
    return a.partialPivLu().determinant();
}

namespace {

// Parlett-Reinsch balancing: a diagonal similarity by powers of two that evens out row and
// column norms. Exact in floating point, and it sharpens the small eigenvalues considerably.
Eigen::MatrixXcd balanced(Eigen::MatrixXcd a) {
    const Eigen::Index n = a.rows();
    bool converged = false;
    while (!converged) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double total = c + r;
            while (c < r / 2) {
                c *= 2;
                r /= 2;
                f *= 2;
            }
            while (c >= r * 2) {
                c /= 2;
                r *= 2;
                f /= 2;
            }
            if (c + r < 0.95 * total) {
                converged = false;
                a.col(i) *= f;
                a.row(i) /= f;
            }
        }
    }
    return a;
}

} // namespace

std::vector<cplx> spectrum(const BlockMatrix& m, int top) {
    if (top < 1) throw DomainError("spectrum: top must be >= 1");
    // Clustered small eigenvalues are ill-conditioned; extended precision keeps them accurate.
    using MatrixXcl = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
    const MatrixXcl a = balanced(m.m).cast<std::complex<long double>>();
    Eigen::ComplexEigenSolver<MatrixXcl> solver(a, false);
    std::vector<cplx> ev;
    ev.reserve(static_cast<std::size_t>(a.rows()));
    for (const auto& e : solver.eigenvalues()) ev.emplace_back(static_cast<double>(e.real()), static_cast<double>(e.imag()));
    std::stable_sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    if (static_cast<int>(ev.size()) > top) ev.resize(static_cast<std::size_t>(top));
    return ev;
}

BlockMatrix k_composite(const HeckeContext& ctx, const BlockMatrix& k_matrix) {
    const int c0 = r_orbit_components(ctx).front();
    Eigen::MatrixXcd p = k_matrix.m;
    for (int i = 1; i < ctx.kappa; ++i) p = p * k_matrix.m;
    BlockMatrix out;
    out.components = {c0};
    out.N = k_matrix.N;
    out.s = k_matrix.s;
    out.kind = "K-composite";
    const Eigen::Index b = k_matrix.index(c0, 0), len = k_matrix.N + 1;
    out.m = p.block(b, b, len, len);
    return out;
}

double k_multiplier(const HeckeContext& ctx) {
    const double lam = ctx.lambda;
    if (ctx.even()) return std::sqrt((2.0 - lam) / (2.0 + lam));
    return (2.0 - lam) / (2.0 + ctx.R * lam);
}

ClosedFormDet closed_form_K_det(const HeckeContext& ctx, cplx s, int n_max) {
    if (n_max < 20) throw DomainError("closed_form_K_det: n_max must be >= 20");
    ClosedFormDet out;
    out.l = k_multiplier(ctx);
    if (!(out.l > 0.0 && out.l < 1.0)) throw NumericError("closed_form_K_det: multiplier outside (0, 1)");
    const double log_l = std::log(out.l);
    cplx prod = 1.0;
    for (int n = 0; n <= n_max; ++n) prod *= 1.0 - std::exp((2.0 * s + 2.0 * n) * log_l);
    out.value = prod;
    // |prod over n > n_max - 1| <= exp(2 sum |x_n|) - 1 for |x_n| <= 1/2.
    const double first = std::exp((2.0 * s.real() + 2.0 * (n_max + 1)) * log_l);
    const double sum = first / (1.0 - out.l * out.l);
    out.tail_bound = std::abs(prod) * (std::exp(2.0 * sum) - 1.0);
    return out;
}

} // namespace hecke
