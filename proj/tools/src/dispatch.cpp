#include "dispatch.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <hecke/hecke.hpp>

namespace hecke::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int q = 3;
    double x = 0.0;
    std::string mode = "regular";
    int max_digits = 60;
    std::string s = "1";
    std::string grid;
    std::optional<double> fixed;
    double tol = 1e-6;
    int N = 40;
    int digit_bound = 50;
    double max_length = 8.0;
    int base = 5;
    bool auto_discs = false;
    int depth = 50;
    std::string op = "full";
    std::string kind = "selberg";
    int eps = 1;
    std::string route = "reduced";
    std::string format;
    std::string out;
};

cplx parse_complex(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw UsageError("cannot parse complex number '" + text + "'");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) throw UsageError("complex numbers are written re[,im], got '" + text + "'");
    }
    if (in >> comma) throw UsageError("trailing characters in '" + text + "'");
    return {re, im};
}

struct Grid {
    double start = 0.0, stop = 0.0, step = 0.0;
    ScanPath::Axis axis = ScanPath::Axis::imaginary;
};

Grid parse_grid(const std::string& text) {
    const auto at = text.find('@');
    const std::string range = text.substr(0, at);
    const std::string axis = at == std::string::npos ? "im" : text.substr(at + 1);
    Grid g;
    char c1 = 0, c2 = 0;
    std::istringstream in(range);
    if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' || c2 != ':' || !in.eof())
        throw UsageError("grids are written start:stop:step@axis, got '" + text + "'");
    if (axis == "re" || axis == "real")
        g.axis = ScanPath::Axis::real;
    else if (axis == "im" || axis == "imag")
        g.axis = ScanPath::Axis::imaginary;
    else
        throw UsageError("grid axis must be re or im, got '" + axis + "'");
    if (!(g.step > 0.0)) throw UsageError("grid step must be positive");
    return g;
}

HeckeContext context_of(const RunConfig& c) {
    if (c.q < 3) throw UsageError("q must be at least 3");
    return make_context(c.q);
}

void check_N(const RunConfig& c) {
    if (c.N < 4) throw UsageError("N must be at least 4");
}

DiscSystem discs_of(const HeckeContext& ctx, const RunConfig& c) {
    if (c.auto_discs) return auto_discs(ctx, c.depth);
    DiscSystem d = build_discs(ctx, c.base);
    verify_discs(ctx, d, c.depth);
    return d;
}

class Emitter {
public:
    Emitter(const RunConfig& c, std::ostream& out) : path_(c.out), out_(out) {}

    void text(const std::string& body) {
        if (path_.empty()) {
            out_ << body;
            return;
        }
        std::ofstream f(path_, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + path_ + " for writing");
        f << body;
        if (!f.flush()) throw IoError("write to " + path_ + " failed");
    }
    void json(const Json& j) { text(dump_json(j)); }

private:
    std::string path_;
    std::ostream& out_;
};

std::string format_of(const RunConfig& c, const std::string& fallback, bool csv_allowed) {
    const std::string f = c.format.empty() ? fallback : c.format;
    if (f != "json" && f != "csv") throw UsageError("format must be json or csv");
    if (f == "csv" && !csv_allowed) throw UsageError("this subcommand only writes json");
    return f;
}

// ---------------------------------------------------------------------------------------------

void run_expand(const RunConfig& c, Emitter& e) {
    format_of(c, "json", false);
    const auto ctx = context_of(c);
    if (c.mode != "regular" && c.mode != "dual") throw UsageError("mode must be regular or dual");
    const auto mode = c.mode == "regular" ? CFMode::regular : CFMode::dual;
    const CFExpansion x = expand(ctx, c.x, mode, c.max_digits);
    Json j = to_json(x);
    j["q"] = c.q;
    j["x"] = c.x;
    j["regular"] = is_regular(ctx, x.digits, mode);
    e.json(j);
}

void run_partition(const RunConfig& c, Emitter& e) {
    format_of(c, "json", false);
    const auto ctx = context_of(c);
    Json sets = Json::array();
    for (const auto& [key, set] : index_sets(ctx)) sets.push_back({{"i", key.first}, {"j", key.second}, {"set", set.to_string()}});
    Json consts = {{"lambda", ctx.lambda}, {"h", ctx.h}, {"kappa", ctx.kappa}, {"R", ctx.R}, {"r", ctx.r}};
    const DiscSystem d = discs_of(ctx, c);
    e.json({{"q", c.q}, {"constants", consts}, {"markov", to_json(build_markov(ctx))}, {"index_sets", sets},
            {"discs", to_json(d)}});
}

void run_orbits(const RunConfig& c, Emitter& e) {
    const std::string f = format_of(c, "csv", true);
    const auto ctx = context_of(c);
    auto orbits = prime_orbits(ctx, c.max_length);
    std::erase_if(orbits, [&](const OrbitRecord& o) {
        return std::any_of(o.word.digits.begin(), o.word.digits.end(), [&](int a) { return std::abs(a) > c.digit_bound; });
    });
    if (f == "csv") {
        e.text(orbits_csv(orbits));
        return;
    }
    Json rows = Json::array();
    for (const auto& o : orbits)
        rows.push_back({{"word", o.word.digits}, {"fixed_point", o.fixed_point}, {"length", o.length}, {"trace", o.trace}});
    e.json({{"q", c.q}, {"max_length", c.max_length}, {"digit_bound", c.digit_bound}, {"orbits", rows}});
}

OperatorSpec operator_of(const HeckeContext& ctx, const std::string& op) {
    if (op == "full") return full_operator(ctx);
    if (op == "reduced+" || op == "plus") return reduced_operator(ctx, 1);
    if (op == "reduced-" || op == "minus") return reduced_operator(ctx, -1);
    if (op == "K") return k_operator(ctx);
    throw UsageError("op must be one of full, reduced+, reduced-, K");
}

void run_det(const RunConfig& c, Emitter& e) {
    format_of(c, "json", false);
    const auto ctx = context_of(c);
    check_N(c);
    const cplx s = parse_complex(c.s);
    const DiscSystem d = discs_of(ctx, c);
    const OperatorSpec spec = operator_of(ctx, c.op);
    const cplx det = fredholm_det(assemble(ctx, d, spec, s, c.N));
    const cplx coarse = fredholm_det(assemble(ctx, d, spec, s, std::max(c.N - 10, 4)));
    Json j = {{"q", c.q}, {"op", spec.name()}, {"s", to_json(s)}, {"N", c.N}, {"det", to_json(det)},
              {"gap", std::abs(det - coarse)}};
    if (c.op == "K") j["closed_form"] = to_json(closed_form_K_det(ctx, s).value);
    e.json(j);
}

void run_zeta(const RunConfig& c, Emitter& e) {
    format_of(c, "json", false);
    const auto ctx = context_of(c);
    check_N(c);
    const cplx s = parse_complex(c.s);
    const DiscSystem d = discs_of(ctx, c);
    if (c.route != "full" && c.route != "reduced") throw UsageError("route must be full or reduced");
    ZetaEval z;
    if (c.kind == "selberg")
        z = selberg_zeta(ctx, d, s, c.N, c.route == "full" ? DetRoute::full : DetRoute::reduced);
    else if (c.kind == "ruelle")
        z = ruelle_zeta(ctx, d, s, c.N);
    else
        throw UsageError("kind must be selberg or ruelle");
    Json j = to_json(z);
    j["q"] = c.q;
    j["kind"] = c.kind;
    e.json(j);
}

void run_scan(const RunConfig& c, Emitter& e) {
    const std::string f = format_of(c, "csv", true);
    const auto ctx = context_of(c);
    check_N(c);
    if (c.grid.empty()) throw UsageError("scan needs --grid start:stop:step@axis");
    const Grid g = parse_grid(c.grid);
    ScanPath path;
    path.axis = g.axis;
    path.start = g.start;
    path.stop = g.stop;
    path.fixed = c.fixed.value_or(g.axis == ScanPath::Axis::imaginary ? 0.5 : 0.0);
    const DiscSystem d = discs_of(ctx, c);
    const auto zeros = scan_zeros(ctx, d, path, c.N, g.step, c.tol);
    if (f == "csv") {
        e.text(scan_csv(zeros));
        return;
    }
    Json rows = Json::array();
    for (const auto& z : zeros)
        rows.push_back({{"s", to_json(z.s)}, {"abs_Z", z.abs_value}, {"convergence_gap", z.convergence_gap},
                        {"refined", z.refined}});
    e.json({{"q", c.q}, {"N", c.N}, {"zeros", rows}});
}

void run_eigfun(const RunConfig& c, Emitter& e) {
    format_of(c, "json", false);
    const auto ctx = context_of(c);
    check_N(c);
    if (c.eps != 1 && c.eps != -1) throw UsageError("eps must be 1 or -1");
    const cplx s = parse_complex(c.s);
    const DiscSystem d = discs_of(ctx, c);
    const EigenFunction ef = eigenfunction(ctx, d, s, c.eps, c.N);
    Json j = to_json(ef);
    j["q"] = c.q;
    const auto samples = functional_samples(ef);
    try {
        const FunctionalResidual fr = functional_residual(ctx, s, c.eps, ef, samples);
        Json per = Json::object();
        for (const auto& [name, v] : fr.per_equation) per[name] = v;
        j["functional"] = {{"residual", fr.residual}, {"samples_used", fr.samples_used}, {"equations", per}};
    } catch (const ContainmentError& ex) {
        j["functional"] = {{"error", ex.what()}};
    }
    e.json(j);
}

struct CheckRow {
    std::string name;
    bool passed;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::vector<CheckRow> markov_checks(const HeckeContext& ctx) {
    const MarkovPartition mp = build_markov(ctx);
    std::vector<Interval> cells;
    for (const auto& [i, iv] : mp.intervals) cells.push_back(iv);
    std::sort(cells.begin(), cells.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    double worst_gap = std::abs(cells.front().lo + ctx.lambda / 2) + std::abs(cells.back().hi - ctx.lambda / 2);
    for (std::size_t k = 1; k < cells.size(); ++k) worst_gap = std::max(worst_gap, std::abs(cells[k].lo - cells[k - 1].hi));
    std::vector<double> boundary = mp.phi_points;
    for (double p : mp.phi_points) boundary.push_back(-p);
    boundary.push_back(ctx.lambda / 2);
    double worst_image = 0.0;
    for (double p : mp.phi_points) {
        if (p == 0.0) continue;
        const double y = step(ctx, p, CFMode::regular).next;
        double best = std::abs(y);
        for (double b : boundary) best = std::min(best, std::abs(y - b));
        worst_image = std::max(worst_image, best);
    }
    return {{"markov cover", worst_gap < 1e-12, "max gap " + sci(worst_gap)},
            {"markov boundary invariance", worst_image < 1e-9, "max distance " + sci(worst_image)}};
}

void run_verify(const RunConfig& c, Emitter& e, int& exit_code) {
    const std::string f = format_of(c, "json", true);
    const auto ctx = context_of(c);
    check_N(c);
    std::vector<CheckRow> rows;
    const DiscSystem d = c.auto_discs ? auto_discs(ctx, c.depth) : build_discs(ctx, c.base);
    const DiscReport rep = check_discs(ctx, d, c.depth);
    rows.push_back({"disc containment", rep.passed,
                    "base " + std::to_string(d.base) + ", worst margin " + sci(rep.worst_margin)});
    for (auto& r : markov_checks(ctx)) rows.push_back(r);
    if (rep.passed) {
        const cplx s = 2.0;
        const BlockMatrix a = assemble(ctx, d, full_operator(ctx), s, c.N);
        const BlockMatrix b = assemble(ctx, d, full_operator(ctx), s + 1.0, c.N);
        for (int k = 1; k <= 3; ++k) {
            const cplx dt = trace_power(a, k) - trace_power(b, k);
            const PartitionSum z = partition_function(ctx, k, s, c.digit_bound, 1e-13);
            const double diff = std::abs(dt - z.value);
            const double tol = z.tail_bound + 1e-6 * std::abs(z.value);
            rows.push_back({"trace identity k=" + std::to_string(k), diff <= tol,
                            "diff " + sci(diff) + ", allowed " + sci(tol)});
        }
    }
    bool all = true;
    for (const auto& r : rows) all = all && r.passed;
    if (!all) exit_code = kExitVerification;
    if (f == "csv") {
        std::string body = "check,passed,detail\n";
        for (const auto& r : rows) body += r.name + "," + (r.passed ? "1" : "0") + "," + r.detail + "\n";
        e.text(body);
        return;
    }
    Json table = Json::array();
    for (const auto& r : rows) table.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    e.json({{"q", c.q}, {"N", c.N}, {"passed", all}, {"checks", table}});
}

} // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transfer operators and Selberg zeta functions for Hecke triangle groups", "hecke"};
    app.require_subcommand(1);
    RunConfig c;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--q", c.q, "Hecke group index q >= 3")->required();
        sub->add_option("--format", c.format, "json or csv");
        sub->add_option("--out", c.out, "write results to this file instead of stdout");
    };
    const auto discs = [&](CLI::App* sub) {
        sub->add_option("--base", c.base, "disc enlargement base")->capture_default_str();
        sub->add_flag("--auto-discs", c.auto_discs, "search the enlargement base (5, 10, 20, ...)");
        sub->add_option("--depth", c.depth, "explicit tail depth for disc containment")->capture_default_str();
    };
    const auto order = [&](CLI::App* sub) {
        sub->add_option("--N", c.N, "Taylor truncation order")->capture_default_str();
    };

    auto* expand_cmd = app.add_subcommand("expand", "lambda-continued-fraction digits of a point");
    common(expand_cmd);
    expand_cmd->add_option("--x", c.x, "point to expand")->required();
    expand_cmd->add_option("--mode", c.mode, "regular or dual")->capture_default_str();
    expand_cmd->add_option("--max-digits", c.max_digits, "digit limit")->capture_default_str();

    auto* partition_cmd = app.add_subcommand("partition", "Markov partition, index sets and discs");
    common(partition_cmd);
    discs(partition_cmd);

    auto* orbits_cmd = app.add_subcommand("orbits", "prime periodic orbits up to a length");
    common(orbits_cmd);
    orbits_cmd->add_option("--max-length", c.max_length, "largest orbit length r_O")->capture_default_str();
    orbits_cmd->add_option("--digit-bound", c.digit_bound, "largest |digit|")->capture_default_str();

    auto* det_cmd = app.add_subcommand("det", "Fredholm determinant det(1 - L_s)");
    common(det_cmd);
    discs(det_cmd);
    order(det_cmd);
    det_cmd->add_option("--s", c.s, "spectral parameter re[,im]")->required();
    det_cmd->add_option("--op", c.op, "full, reduced+, reduced- or K")->capture_default_str();

    auto* zeta_cmd = app.add_subcommand("zeta", "Selberg or Ruelle zeta value");
    common(zeta_cmd);
    discs(zeta_cmd);
    order(zeta_cmd);
    zeta_cmd->add_option("--s", c.s, "spectral parameter re[,im]")->required();
    zeta_cmd->add_option("--kind", c.kind, "selberg or ruelle")->capture_default_str();
    zeta_cmd->add_option("--route", c.route, "full or reduced determinant")->capture_default_str();

    auto* scan_cmd = app.add_subcommand("scan", "locate zeros of the Selberg zeta function on a line");
    common(scan_cmd);
    discs(scan_cmd);
    order(scan_cmd);
    scan_cmd->add_option("--grid", c.grid, "start:stop:step@axis, axis re or im")->required();
    scan_cmd->add_option("--fixed", c.fixed, "the other coordinate (default Re s = 1/2 or Im s = 0)");
    scan_cmd->add_option("--tol", c.tol, "refinement tolerance")->capture_default_str();

    auto* eigfun_cmd = app.add_subcommand("eigfun", "eigenvalue-1 eigenfunction of the reduced operator");
    common(eigfun_cmd);
    discs(eigfun_cmd);
    order(eigfun_cmd);
    eigfun_cmd->add_option("--s", c.s, "spectral parameter re[,im]")->required();
    eigfun_cmd->add_option("--eps", c.eps, "parity 1 or -1")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "disc, Markov and trace-identity checks");
    common(verify_cmd);
    discs(verify_cmd);
    order(verify_cmd);
    verify_cmd->add_option("--digit-bound", c.digit_bound, "digit bound of the orbit sums")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& ex) {
        err << "hecke: " << ex.what() << "\n";
        return kExitUsage;
    }

    Emitter emit(c, out);
    int code = kExitOk;
    try {
        if (expand_cmd->parsed()) run_expand(c, emit);
        else if (partition_cmd->parsed()) run_partition(c, emit);
        else if (orbits_cmd->parsed()) run_orbits(c, emit);
        else if (det_cmd->parsed()) run_det(c, emit);
        else if (zeta_cmd->parsed()) run_zeta(c, emit);
        else if (scan_cmd->parsed()) run_scan(c, emit);
        else if (eigfun_cmd->parsed()) run_eigfun(c, emit);
        else if (verify_cmd->parsed()) run_verify(c, emit, code);
    } catch (const UsageError& ex) {
        err << "hecke: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& ex) {
        err << "hecke: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const PoleError& ex) {
        err << "hecke: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const IoError& ex) {
        err << "hecke: " << ex.what() << "\n";
        return kExitIo;
    } catch (const VerificationError& ex) {
        err << "hecke: verification failed: " << ex.what() << "\n";
        return kExitVerification;
    } catch (const ContainmentError& ex) {
        err << "hecke: verification failed: " << ex.what() << "\n";
        return kExitVerification;
    } catch (const NotAnEigenvalueError& ex) {
        err << "hecke: " << ex.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& ex) {
        err << "hecke: " << ex.what() << "\n";
        return 1;
    }
    return code;
}

} // namespace hecke::cli
