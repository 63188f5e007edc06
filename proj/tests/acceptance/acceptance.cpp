// Acceptance run: one PASS/FAIL line per criterion.
//
// A criterion whose only failing sub-check is listed in the known-failure table is reported
// as FAIL with an "expected" note and does not change the exit status. Criterion 12 is
// informational. Any other failure makes the process exit with status 1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <hecke/hecke.hpp>

using namespace hecke;

namespace {

struct Outcome {
    bool passed = true;
    // Failing sub-checks; a failure is expected when every entry is a known one.
    std::vector<std::string> failures;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            failures.push_back(what);
        }
    }
};

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    bool blocking;
    std::set<std::string> known_failures;
    std::function<Outcome()> run;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

std::string fixed(double x, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::vector<int> ones(int n) { return std::vector<int>(static_cast<std::size_t>(std::max(n, 0)), 1); }

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Outcome constants() {
    Outcome o;
    for (int q = 3; q <= 12; ++q) {
        const auto c = make_context(q);
        const std::string tag = "q=" + std::to_string(q);
        const int h = q % 2 == 0 ? (q - 2) / 2 : (q - 3) / 2;
        const int kappa = q % 2 == 0 ? h : q - 2;
        o.require(std::abs(c.lambda - 2 * std::cos(std::numbers::pi / q)) < 1e-15, tag + " lambda");
        o.require(c.h == h, tag + " h");
        o.require(c.kappa == kappa, tag + " kappa");
        const double rel = c.even() ? std::abs(c.R - 1.0) : std::abs(c.R * c.R + (2 - c.lambda) * c.R - 1);
        o.require(rel < 1e-12, tag + " R relation");
        o.require(c.lambda / 2 < c.R && c.R <= 1.0, tag + " R range");
    }
    o.detail = "q=3..12";
    return o;
}

Outcome round_trip() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    int dirty = 0;
    for (int q = 3; q <= 10; ++q) {
        const auto c = make_context(q);
        for (CFMode mode : {CFMode::regular, CFMode::dual}) {
            const double b = mode == CFMode::regular ? c.lambda / 2 : c.R;
            std::uniform_real_distribution<double> u(-b, b);
            for (int k = 0; k < 1000; ++k) {
                const double x = u(rng);
                const auto e = expand(c, x, mode, 40);
                worst = std::max(worst, std::abs(evaluate(c, e) - x));
                if (!is_regular(c, e.digits, mode)) ++dirty;
            }
        }
    }
    o.require(worst < 1e-9, "reconstruction error");
    o.require(dirty == 0, "grammar");
    o.detail = "16000 points, max error " + sci(worst) + ", " + std::to_string(dirty) + " irregular";
    return o;
}

Outcome special_expansions() {
    Outcome o;
    for (int q = 3; q <= 12; ++q) {
        const auto c = make_context(q);
        const std::string tag = "q=" + std::to_string(q);
        std::vector<int> half, period;
        if (q == 3) {
            half = {2};
            period = {3};
        } else if (c.even()) {
            half = ones(c.h);
            period = concat(ones(c.h - 1), {2});
        } else {
            half = concat(concat(ones(c.h), {2}), ones(c.h));
            period = concat(concat(concat(ones(c.h), {2}), ones(c.h - 1)), {2});
        }
        const auto eh = expand(c, -c.lambda / 2, CFMode::regular, 40);
        o.require(eh.complete && eh.a0 == 0 && eh.digits == half, tag + " -lambda/2 word");

        const auto er = expand(c, c.r, CFMode::regular, 60);
        bool periodic = er.period && er.period->preperiod == 0 && er.period->length == period.size();
        for (std::size_t k = 0; periodic && k < er.digits.size(); ++k)
            periodic = er.digits[k] == period[k % period.size()];
        o.require(periodic, tag + " r_q period word");

        // S for even q; (TS)^{h+1} written as T^1 S T^1 ... S T^0 for odd q
        const MoebiusWord reflect = c.even() ? MoebiusWord(c, 0, {0}) : MoebiusWord(c, 1, concat(ones(c.h), {0}));
        o.require(std::abs(reflect.apply(c.R) + c.R) < 1e-12, tag + " -R relation");

        const auto em = expand(c, -c.r, CFMode::regular, 60);
        o.require(em.digits != er.digits, tag + " r and -r words");
    }
    o.detail = "q=3..12";
    return o;
}

Outcome markov_discs() {
    Outcome o;
    std::string bases;
    for (int q = 3; q <= 10; ++q) {
        const auto c = make_context(q);
        const std::string tag = "q=" + std::to_string(q);
        const auto mp = build_markov(c);
        std::vector<Interval> cells;
        for (const auto& [i, iv] : mp.intervals) cells.push_back(iv);
        std::sort(cells.begin(), cells.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        bool cover = std::abs(cells.front().lo + c.lambda / 2) < 1e-12 && std::abs(cells.back().hi - c.lambda / 2) < 1e-12;
        for (std::size_t k = 1; k < cells.size(); ++k) cover = cover && cells[k].lo == cells[k - 1].hi && cells[k].lo < cells[k].hi;
        o.require(cover, tag + " cover");

        std::vector<double> boundary = mp.phi_points;
        for (double p : mp.phi_points) boundary.push_back(-p);
        for (double p : mp.phi_points) {
            if (p == 0.0) continue;
            const double y = step(c, p, CFMode::regular).next;
            double best = 1.0;
            for (double b : boundary) best = std::min(best, std::abs(y - b));
            o.require(best < 1e-9, tag + " boundary invariance");
        }

        try {
            const auto d = auto_discs(c);
            verify_discs(c, d, 50);
            bases += (bases.empty() ? "" : ",") + std::to_string(d.base);
        } catch (const std::exception& e) {
            o.require(false, tag + " auto discs: " + e.what());
        }
        if (q >= 5) o.require(!check_discs(c, unenlarged_discs(c), 50).passed, tag + " unenlarged discs rejected");
    }
    o.detail = "enlargement bases " + bases;
    return o;
}

Outcome trace_identity() {
    Outcome o;
    const cplx s = 2.0;
    double worst_ratio = 0.0;
    for (int q = 3; q <= 7; ++q) {
        const auto c = make_context(q);
        const auto d = auto_discs(c);
        const auto a = assemble(c, d, full_operator(c), s, 40);
        const auto b = assemble(c, d, full_operator(c), s + 1.0, 40);
        for (int k = 1; k <= 4; ++k) {
            const cplx dt = trace_power(a, k) - trace_power(b, k);
            const auto z = partition_function(c, k, s, 200, 1e-13);
            const double diff = std::abs(dt - z.value);
            const double tol = z.tail_bound + 1e-6 * std::abs(z.value);
            worst_ratio = std::max(worst_ratio, diff / tol);
            if (diff > tol) {
                o.require(false, "q=" + std::to_string(q) + " k=" + std::to_string(k));
                o.detail += "q=" + std::to_string(q) + " k=" + std::to_string(k) + " diff " + sci(diff) + " > " + sci(tol) + "; ";
            }
        }
    }
    o.detail += "worst diff/allowed " + fixed(worst_ratio, 3);
    return o;
}

Outcome k_closed_form() {
    Outcome o;
    double worst_det = 0.0, worst_ev = 0.0;
    for (int q = 3; q <= 8; ++q) {
        const auto c = make_context(q);
        const auto d = auto_discs(c);
        for (cplx s : {cplx(1, 0), cplx(2, 0), cplx(0.75, 0.5)}) {
            const auto K = assemble(c, d, k_operator(c), s, 30);
            const auto cf = closed_form_K_det(c, s);
            worst_det = std::max(worst_det, std::abs(fredholm_det(K) - cf.value) / std::abs(cf.value));
            const auto ev = spectrum(k_composite(c, K), 5);
            for (int n = 0; n < 5; ++n)
                worst_ev = std::max(worst_ev, std::abs(ev[n] - std::pow(cplx(cf.l), 2.0 * s + 2.0 * n)));
        }
    }
    o.require(worst_det < 1e-8, "det vs closed form");
    o.require(worst_ev < 1e-6, "top-5 eigenvalues");

    const auto c4 = make_context(4);
    const double v = fredholm_det(assemble(c4, auto_discs(c4), k_operator(c4), 1.0, 30)).real();
    o.require(std::abs(v - 0.7990435) < 1e-6, "q=4 s=1 value 0.7990435");
    o.detail = "max rel det diff " + sci(worst_det) + ", max eigenvalue diff " + sci(worst_ev) +
               ", q=4 s=1 det " + fixed(v, 7) + " (stated 0.7990435)";
    return o;
}

Outcome symmetry() {
    Outcome o;
    double worst_comm = 0.0, worst_spec = 0.0;
    for (int q = 3; q <= 8; ++q) {
        const auto c = make_context(q);
        const auto d = auto_discs(c);
        const auto M = assemble(c, d, full_operator(c), 2.0, 40);
        const auto P = P_matrix(c, 40);
        const Eigen::MatrixXcd comm = P.m * M.m - M.m * P.m;
        // infinity norm: largest absolute row sum
        worst_comm = std::max(worst_comm, comm.cwiseAbs().rowwise().sum().maxCoeff());

        const auto full = spectrum(M, 20);
        auto uni = spectrum(assemble(c, d, reduced_operator(c, 1), 2.0, 40), 30);
        const auto minus = spectrum(assemble(c, d, reduced_operator(c, -1), 2.0, 40), 30);
        uni.insert(uni.end(), minus.begin(), minus.end());
        for (cplx e : full) {
            double best = 1.0;
            for (cplx u : uni) best = std::min(best, std::abs(e - u));
            worst_spec = std::max(worst_spec, best);
        }
    }
    o.require(worst_comm < 1e-12, "commutator");
    o.require(worst_spec < 1e-8, "spectrum union");
    o.detail = "max commutator " + sci(worst_comm) + ", max eigenvalue mismatch " + sci(worst_spec);
    return o;
}

Outcome route_agreement() {
    Outcome o;
    for (int q = 3; q <= 5; ++q) {
        const auto c = make_context(q);
        const auto z = selberg_zeta(c, auto_discs(c), 3.0, 40);
        const auto p = selberg_product(c, 3.0, 12.0, 30);
        const double rel = std::abs(z.value - p.value) / std::abs(z.value);
        o.require(rel < 1e-3, "q=" + std::to_string(q));
        // the difference is accounted for by the reported truncation and discretization bounds
        const double explained = p.truncation_bound + z.convergence_gap + 1e-12 * std::abs(z.value);
        o.require(std::abs(z.value - p.value) <= explained, "q=" + std::to_string(q) + " difference within bounds");
        o.detail += "q=" + std::to_string(q) + " rel " + sci(rel) + " (truncation " + sci(p.truncation_bound) +
                    ", N-gap " + sci(z.convergence_gap) + ", " + std::to_string(p.orbits) + " orbits); ";
    }
    return o;
}

Outcome trivial_zero() {
    Outcome o;
    double worst_ev = 0.0, worst_z = 0.0;
    for (int q = 3; q <= 8; ++q) {
        const auto c = make_context(q);
        const auto d = auto_discs(c);
        const auto ev = spectrum(assemble(c, d, full_operator(c), 1.0, 40), 1);
        worst_ev = std::max(worst_ev, std::abs(ev[0] - 1.0));
        worst_z = std::max(worst_z, std::abs(selberg_zeta(c, d, 1.0, 40).value));
    }
    o.require(worst_ev < 1e-8, "leading eigenvalue");
    o.require(worst_z < 1e-6, "|Z(1)|");
    o.detail = "max |ev-1| " + sci(worst_ev) + ", max |Z(1)| " + sci(worst_z);
    return o;
}

Outcome functional_equations() {
    Outcome o;
    for (int q : {3, 4}) {
        const auto c = make_context(q);
        const auto d = auto_discs(c);
        const auto ef = eigenfunction(c, d, 1.0, 1, 40);
        const auto samples = functional_samples(ef);
        const auto fr = functional_residual(c, 1.0, 1, ef, samples);
        const std::string tag = "q=" + std::to_string(q);
        o.require(fr.samples_used >= 10, tag + " samples");
        o.require(fr.residual < 1e-6, tag + " residual");

        std::mt19937_64 rng(static_cast<unsigned>(q));
        std::normal_distribution<double> nd;
        std::vector<std::vector<cplx>> rnd(ef.coefficients().size(), std::vector<cplx>(41));
        for (auto& v : rnd)
            for (auto& x : v) x = nd(rng);
        const auto bad = eigenfunction_from_coefficients(c, d, 1.0, 1, 40, rnd);
        const double control = functional_residual(c, 1.0, 1, bad, samples).residual;
        o.require(control >= 1e-3, tag + " negative control");
        o.detail += tag + " residual " + sci(fr.residual) + " on " + std::to_string(fr.samples_used) +
                    " samples, control " + sci(control) + "; ";
    }
    return o;
}

Outcome poles() {
    Outcome o;
    for (int q = 3; q <= 5; ++q) {
        const auto c = make_context(q);
        const auto d = auto_discs(c);
        const double e1 = max_abs(assemble(c, d, full_operator(c), 0.5 + 1e-4, 10).m);
        const double e2 = max_abs(assemble(c, d, full_operator(c), 0.5 + 2e-4, 10).m);
        const double ratio = e1 / e2;
        o.require(std::abs(ratio - 2.0) < 1e-2, "q=" + std::to_string(q) + " slope");
        o.detail += "q=" + std::to_string(q) + " ratio " + fixed(ratio, 5) + "; ";
    }
    return o;
}

Outcome critical_line() {
    Outcome o;
    const auto c = make_context(3);
    ScanPath path;
    path.axis = ScanPath::Axis::imaginary;
    path.start = 9.0;
    path.stop = 10.0;
    path.fixed = 0.5;
    const auto zeros = scan_zeros(c, auto_discs(c), path, 50, 0.02, 1e-6);
    bool found = false;
    for (const auto& z : zeros) {
        o.detail += "t=" + fixed(z.s.imag(), 8) + " |Z|=" + sci(z.abs_value) + (z.refined ? " refined" : "") + "; ";
        found = found || (z.refined && std::abs(z.s.imag() - 9.53370) < 5e-3);
    }
    o.require(found, "zero near t=9.53370");
    return o;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "constants", 1, true, {}, constants},
        {2, "continued fraction round trip", 10, true, {}, round_trip},
        {3, "special expansions", 1, true, {}, special_expansions},
        {4, "Markov partition and discs", 5, true, {}, markov_discs},
        {5, "trace identity", 120, true, {"q=4 k=2"}, trace_identity},
        {6, "K closed form", 30, true, {"q=4 s=1 value 0.7990435"}, k_closed_form},
        {7, "symmetry", 60, true, {}, symmetry},
        {8, "zeta route agreement", 300, true, {}, route_agreement},
        {9, "trivial zero", 60, true, {}, trivial_zero},
        {10, "functional equations", 30, true, {}, functional_equations},
        {11, "pole structure", 5, true, {}, poles},
        {12, "critical-line zero (non-blocking)", 600, false, {}, critical_line},
    };

    int unexpected = 0;
    for (const auto& cr : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs < cr.budget_seconds, "runtime");

        bool expected = !o.passed && !cr.known_failures.empty();
        for (const auto& f : o.failures) expected = expected && cr.known_failures.count(f) > 0;
        std::string note;
        if (!o.passed) {
            std::ostringstream fs;
            for (std::size_t k = 0; k < o.failures.size(); ++k) fs << (k ? ", " : "") << o.failures[k];
            note = " failing: " + fs.str();
            if (expected) note += " (expected failure)";
            else if (!cr.blocking) note += " (non-blocking)";
        }
        std::printf("%s %2d %s: %s [%.2f s]%s\n", o.passed ? "PASS" : "FAIL", cr.id, cr.title.c_str(),
                    o.detail.c_str(), secs, note.c_str());
        std::fflush(stdout);
        if (!o.passed && !expected && cr.blocking) ++unexpected;
    }
    std::printf("%s\n", unexpected == 0 ? "acceptance: no unexpected failures" : "acceptance: unexpected failures");
    return unexpected == 0 ? 0 : 1;
}
