#include "hecke/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hecke/continued_fraction.hpp"
#include "hecke/errors.hpp"

namespace hecke {

double theta(const HeckeContext& ctx, int n, double z) { return -1.0 / (z + n * ctx.lambda); }

std::vector<int> components(const HeckeContext& ctx) {
    std::vector<int> out;
    for (int i = 1; i <= ctx.kappa; ++i) out.push_back(i);
    for (int i = 1; i <= ctx.kappa; ++i) out.push_back(-i);
    return out;
}

std::optional<int> MarkovPartition::locate(double x) const {
    for (const auto& [i, iv] : intervals)
        if (iv.interior(x)) return i;
    return std::nullopt;
}

MarkovPartition build_markov(const HeckeContext& ctx) {
    MarkovPartition mp;
    mp.phi_points = phi_orbit(ctx);
    for (int i = 1; i <= ctx.kappa; ++i) {
        const Interval cell{mp.phi_points[i - 1], mp.phi_points[i]};
        mp.intervals[i] = cell;
        mp.intervals[-i] = cell.negated();
    }
    return mp;
}

bool IndexSet::contains(int n) const {
    if (finite.count(n)) return true;
    if (at_least && n >= *at_least) return true;
    return at_most && n <= *at_most;
}

IndexSet IndexSet::negated() const {
    IndexSet out;
    for (int n : finite) out.finite.insert(-n);
    if (at_least) out.at_most = -*at_least;
    if (at_most) out.at_least = -*at_most;
    return out;
}

std::string IndexSet::to_string() const {
    std::string out;
    const auto add = [&](const std::string& part) { out += (out.empty() ? "" : " u ") + part; };
    if (!finite.empty()) {
        std::string f = "{";
        for (int n : finite) f += (f.size() > 1 ? "," : "") + std::to_string(n);
        add(f + "}");
    }
    if (at_least) add("Z>=" + std::to_string(*at_least));
    if (at_most) add("Z<=" + std::to_string(*at_most));
    return out.empty() ? "{}" : out;
}

IndexSets index_sets(const HeckeContext& ctx) {
    IndexSets sets;
    const auto single = [](int n) { IndexSet s; s.finite.insert(n); return s; };
    const auto from = [](int n) { IndexSet s; s.at_least = n; return s; };
    const auto upto = [](int n) { IndexSet s; s.at_most = n; return s; };
    const int h = ctx.h, k = ctx.kappa;
    if (ctx.q == 3) {
        sets[{1, 1}] = from(3);
        sets[{1, -1}] = upto(-2);
    } else if (ctx.even()) {
        for (int i = 1; i <= h; ++i) {
            if (i >= 2) sets[{i, i - 1}] = single(1);
            sets[{i, h}] = from(2);
            sets[{i, -h}] = upto(-1);
        }
    } else {
        sets[{1, 2 * h}] = single(2);
        sets[{1, -2 * h}] = single(-1);
        sets[{1, k}] = from(3);
        sets[{1, -k}] = upto(-2);
        for (int i = 2; i <= k; ++i) {
            if (i >= 3) sets[{i, i - 2}] = single(1);
            sets[{i, -2 * h}] = single(-1);
            sets[{i, k}] = from(2);
            sets[{i, -k}] = upto(-2);
        }
    }
    // N_{-i,j} = -N_{i,-j}
    IndexSets mirrored;
    for (const auto& [key, set] : sets) mirrored[{-key.first, -key.second}] = set.negated();
    sets.insert(mirrored.begin(), mirrored.end());
    return sets;
}

std::string RefinedLabel::to_string() const {
    std::string out = (sign < 0 ? "-" : "") + std::to_string(m);
    if (sub) out += "_" + std::to_string(sub);
    return out;
}

int tail_bound(const HeckeContext& ctx) { return ctx.even() ? 2 : 3; }

namespace {

Interval monotonicity_interval(const HeckeContext& ctx, int m) {
    const double l = ctx.lambda;
    return {std::max(-l / 2.0, -2.0 / ((2 * m - 1) * l)), -2.0 / ((2 * m + 1) * l)};
}

Interval intersect(const Interval& a, const Interval& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

bool valid_label(const HeckeContext& ctx, const RefinedLabel& lab) {
    if (lab.sign != 1 && lab.sign != -1) return false;
    if (ctx.q == 3) return lab.sub == 0 && lab.m >= 2;
    if (ctx.even()) return (lab.m == 1 && lab.sub >= 1 && lab.sub <= ctx.kappa) || (lab.m >= 2 && lab.sub == 0);
    if (lab.m == 1) return lab.sub >= 1 && lab.sub <= ctx.kappa - 1;
    if (lab.m == 2) return lab.sub == ctx.kappa - 1 || lab.sub == ctx.kappa;
    return lab.m >= 3 && lab.sub == 0;
}

} // namespace

Interval refined_interval(const HeckeContext& ctx, const RefinedLabel& lab) {
    if (!valid_label(ctx, lab)) throw DomainError("unknown refined label " + lab.to_string());
    Interval iv = monotonicity_interval(ctx, lab.m);
    if (lab.sub) {
        const std::vector<double> phi = phi_orbit(ctx);
        iv = intersect(iv, {phi[lab.sub - 1], phi[lab.sub]});
    }
    return lab.sign > 0 ? iv : iv.negated();
}

RefinedPartition build_refined(const HeckeContext& ctx, int m_max) {
    RefinedPartition rp;
    std::vector<RefinedLabel> labels;
    if (ctx.q != 3) {
        const int last1 = ctx.even() ? ctx.kappa : ctx.kappa - 1;
        for (int i = 1; i <= last1; ++i) labels.push_back({1, 1, i});
        if (!ctx.even()) {
            labels.push_back({1, 2, ctx.kappa - 1});
            labels.push_back({1, 2, ctx.kappa});
        }
    }
    for (int m = ctx.even() ? 2 : (ctx.q == 3 ? 2 : 3); m <= m_max; ++m) labels.push_back({1, m, 0});
    for (const auto& lab : labels) rp.cells.push_back({lab, refined_interval(ctx, lab)});
    for (const auto& lab : labels) rp.cells.push_back({lab.negated(), refined_interval(ctx, lab.negated())});
    std::sort(rp.cells.begin(), rp.cells.end(),
              [](const RefinedCell& a, const RefinedCell& b) { return a.interval.lo < b.interval.lo; });
    rp.remainder = 2.0 / ((2 * m_max + 1) * ctx.lambda);
    return rp;
}

bool transition(const HeckeContext& ctx, const RefinedLabel& i, const RefinedLabel& j) {
    const Interval src = refined_interval(ctx, i);
    const Interval dst = refined_interval(ctx, j);
    const auto f = [&](double x) { return -1.0 / x - i.sign * i.m * ctx.lambda; };
    const Interval image{f(src.lo), f(src.hi)};
    const double tol = 1e-12;
    return image.lo <= dst.lo + tol && dst.hi <= image.hi + tol;
}

DiscSystem build_discs(const HeckeContext& ctx, int base) {
    DiscSystem d;
    d.base = base;
    const double right = ctx.lambda / 4.0;
    const auto set = [&](int i, double left, int n) {
        d.intervals[i] = {left, right};
        d.intervals[-i] = d.intervals[i].negated();
        if (n) {
            d.enlargement[i] = n;
            d.enlargement[-i] = n;
        }
    };
    if (ctx.q == 3) {
        set(1, -1.0, 0);
        d.intervals[1].hi = 0.5;
        d.intervals[-1] = d.intervals[1].negated();
        return d;
    }
    if (ctx.q == 4) {
        set(1, -1.0, 0);
        return d;
    }
    const auto word = [&](std::vector<int> w, int n) {
        if (n > 0) w.push_back(n);
        return evaluate_word(ctx, -1, w);
    };
    const auto minus_ones = [](int count) { return std::vector<int>(static_cast<std::size_t>(count), -1); };
    if (ctx.even()) {
        for (int i = 1; i <= ctx.h; ++i) {
            const int n = base > 0 ? base + i : 0;
            set(i, word(minus_ones(i), n), n);
        }
        return d;
    }
    for (int i = 0; i <= ctx.h; ++i) {
        const int n = base > 0 ? base + 2 * i + 1 : 0;
        std::vector<int> w = minus_ones(i);
        w.push_back(-2);
        const auto tail = minus_ones(ctx.h);
        w.insert(w.end(), tail.begin(), tail.end());
        set(2 * i + 1, word(w, n), n);
    }
    for (int i = 1; i <= ctx.h; ++i) {
        const int n = base > 0 ? base + 2 * i : 0;
        set(2 * i, word(minus_ones(i), n), n);
    }
    return d;
}

DiscSystem unenlarged_discs(const HeckeContext& ctx) { return build_discs(ctx, 0); }

namespace {

double containment_margin(const Interval& image, const Interval& target) {
    return std::min(image.lo - target.lo, target.hi - image.hi);
}

// Image of a closed interval under theta_n, or nullopt when the pole is inside.
std::optional<Interval> image_of(const HeckeContext& ctx, int n, const Interval& iv) {
    const double pole = -n * ctx.lambda;
    if (iv.lo <= pole && pole <= iv.hi) return std::nullopt;
    return Interval{theta(ctx, n, iv.lo), theta(ctx, n, iv.hi)};
}

} // namespace

DiscReport check_discs(const HeckeContext& ctx, const DiscSystem& d, int depth, double min_margin) {
    if (depth < 1) throw DomainError("tail_check_depth must be >= 1");
    DiscReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    const double kPole = -std::numeric_limits<double>::infinity();
    const auto record = [&](int i, int j, std::optional<int> n, double margin) {
        rep.rows.push_back({i, j, n, margin});
        rep.worst_margin = std::min(rep.worst_margin, margin);
    };
    for (const auto& [key, set] : index_sets(ctx)) {
        const auto [i, j] = key;
        const Interval& src = d.intervals.at(i);
        const Interval& dst = d.intervals.at(j);
        const auto check = [&](int n) {
            const auto img = image_of(ctx, n, src);
            record(i, j, n, img ? containment_margin(*img, dst) : kPole);
            return img;
        };
        for (int n : set.finite) check(n);
        for (int dir : {1, -1}) {
            const std::optional<int>& start = dir > 0 ? set.at_least : set.at_most;
            if (!start) continue;
            std::optional<Interval> last;
            for (int k = 0; k <= depth; ++k) last = check(*start + dir * k);
            // Beyond the checked range both endpoints move monotonically toward 0.
            const double pole_gap = dir > 0 ? src.lo + *start * ctx.lambda : -(src.hi + *start * ctx.lambda);
            double margin = kPole;
            if (pole_gap > 0 && last) {
                margin = dir > 0 ? std::min(last->lo - dst.lo, dst.hi) : std::min(dst.hi - last->hi, -dst.lo);
            }
            record(i, j, std::nullopt, margin);
        }
    }
    rep.passed = rep.worst_margin >= min_margin;
    return rep;
}

DiscReport verify_discs(const HeckeContext& ctx, const DiscSystem& d, int depth, double min_margin) {
    DiscReport rep = check_discs(ctx, d, depth, min_margin);
    for (const auto& row : rep.rows) {
        if (row.margin < min_margin) {
            throw VerificationError("disc containment fails for (i, j, n) = (" + std::to_string(row.i) + ", " +
                                    std::to_string(row.j) + ", " +
                                    (row.n ? std::to_string(*row.n) : std::string("inf")) +
                                    "), margin " + std::to_string(row.margin));
        }
    }
    return rep;
}

DiscSystem auto_discs(const HeckeContext& ctx, int depth) {
    for (int base = 5; base <= 5 * 1024; base *= 2) {
        DiscSystem d = build_discs(ctx, base);
        if (check_discs(ctx, d, depth).passed) return d;
    }
    throw VerificationError("no enlargement base up to 5120 yields verified discs for q = " + std::to_string(ctx.q));
}

} // namespace hecke
