#include "hecke/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hecke {

std::string format_double(double x) {
    if (std::isnan(x)) return "NaN";
    if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16g", x);
    return buf;
}

namespace {

void write(std::ostringstream& out, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
            if (!first) out << ",\n";
            first = false;
            out << pad << Json(it.key()).dump() << ": ";
            write(out, it.value(), indent + 2);
        }
        out << "\n" << close << "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out << "[]";
            return;
        }
        // Arrays of scalars stay on one line.
        const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
        out << (flat ? "[" : "[\n");
        bool first = true;
        for (const auto& e : j) {
            if (!first) out << (flat ? ", " : ",\n");
            first = false;
            if (!flat) out << pad;
            write(out, e, indent + 2);
        }
        out << (flat ? "]" : "\n" + close + "]");
        return;
    }
    case Json::value_t::number_float: {
        const double x = j.get<double>();
        out << (std::isfinite(x) ? format_double(x) : "null");
        return;
    }
    default:
        out << j.dump();
    }
}

Json interval_json(const Interval& i) { return {{"lo", i.lo}, {"hi", i.hi}}; }

} // namespace

std::string dump_json(const Json& j) {
    std::ostringstream out;
    write(out, j, 0);
    out << "\n";
    return out.str();
}

Json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const CFExpansion& e) {
    Json j = {{"a0", e.a0},
              {"digits", e.digits},
              {"complete", e.complete},
              {"mode", e.kind == CFMode::regular ? "regular" : "dual"}};
    if (e.period) j["period"] = {{"preperiod", e.period->preperiod}, {"length", e.period->length}};
    return j;
}

Json to_json(const MarkovPartition& p) {
    Json cells = Json::array();
    for (const auto& [i, iv] : p.intervals) {
        Json c = interval_json(iv);
        c["component"] = i;
        cells.push_back(c);
    }
    return {{"phi_points", p.phi_points}, {"intervals", cells}};
}

Json to_json(const DiscSystem& d) {
    Json discs = Json::array();
    for (const auto& [i, iv] : d.intervals) {
        Json c = interval_json(iv);
        c["component"] = i;
        c["center"] = d.center(i);
        c["radius"] = d.radius(i);
        if (auto it = d.enlargement.find(i); it != d.enlargement.end()) c["enlargement"] = it->second;
        discs.push_back(c);
    }
    return {{"base", d.base}, {"discs", discs}};
}

Json to_json(const DiscReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"i", row.i}, {"j", row.j}, {"n", row.n ? Json(*row.n) : Json("limit")}, {"margin", row.margin}});
    return {{"rows", rows}, {"worst_margin", r.worst_margin}, {"passed", r.passed}};
}

Json to_json(const ZetaEval& z) {
    return {{"s", to_json(z.s)},
            {"value", to_json(z.value)},
            {"N", z.N},
            {"gap", z.convergence_gap},
            {"det_L", to_json(z.det_L)},
            {"det_K", to_json(z.det_K)}};
}

Json to_json(const EigenFunction& ef) {
    Json comps = Json::array();
    for (std::size_t b = 0; b < ef.components().size(); ++b) {
        Json coeffs = Json::array();
        for (cplx c : ef.coefficients()[b]) coeffs.push_back(Json::array({c.real(), c.imag()}));
        const int i = ef.components()[b];
        comps.push_back({{"component", i},
                         {"center", ef.discs().center(i)},
                         {"radius", ef.discs().radius(i)},
                         {"coefficients", coeffs}});
    }
    return {{"s", to_json(ef.s())}, {"epsilon", ef.epsilon()}, {"N", ef.N()}, {"residual", ef.residual()},
            {"components", comps}};
}

Json to_json(const BlockMatrix& m) {
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < m.m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.m.cols(); ++c) entries.push_back(Json::array({m.m(r, c).real(), m.m(r, c).imag()}));
    return {{"rows", m.m.rows()}, {"cols", m.m.cols()}, {"N", m.N}, {"s", to_json(m.s)}, {"kind", m.kind},
            {"components", m.components}, {"entries", entries}};
}

std::string orbits_csv(const std::vector<OrbitRecord>& orbits) {
    std::ostringstream out;
    out << "word,fixed_point,length,trace\n";
    for (const auto& o : orbits) {
        std::string w;
        for (std::size_t k = 0; k < o.word.digits.size(); ++k) w += (k ? " " : "") + std::to_string(o.word.digits[k]);
        out << w << "," << format_double(o.fixed_point) << "," << format_double(o.length) << ","
            << format_double(o.trace) << "\n";
    }
    return out.str();
}

std::string scan_csv(const std::vector<ZeroCandidate>& zeros) {
    std::ostringstream out;
    out << "s_re,s_im,abs_Z,convergence_gap,refined\n";
    for (const auto& z : zeros)
        out << format_double(z.s.real()) << "," << format_double(z.s.imag()) << "," << format_double(z.abs_value) << ","
            << format_double(z.convergence_gap) << "," << (z.refined ? 1 : 0) << "\n";
    return out.str();
}

} // namespace hecke
