#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hecke/context.hpp"

namespace hecke {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double mid() const { return 0.5 * (lo + hi); }
    double half_length() const { return 0.5 * (hi - lo); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool interior(double x) const { return lo < x && x < hi; }
    Interval negated() const { return {-hi, -lo}; }
};

// Local inverse z -> -1/(z + n lambda).
double theta(const HeckeContext& ctx, int n, double z);

// Component labels 1..kappa followed by -1..-kappa.
std::vector<int> components(const HeckeContext& ctx);

struct MarkovPartition {
    std::vector<double> phi_points;
    std::map<int, Interval> intervals;

    const Interval& cell(int i) const { return intervals.at(i); }
    // Component whose interior contains x, if any.
    std::optional<int> locate(double x) const;
};

MarkovPartition build_markov(const HeckeContext& ctx);

// Admissible branch indices: a finite part plus optional half-infinite tails.
struct IndexSet {
    std::set<int> finite;
    std::optional<int> at_least;  // {n : n >= at_least}
    std::optional<int> at_most;   // {n : n <= at_most}

    bool contains(int n) const;
    bool empty() const { return finite.empty() && !at_least && !at_most; }
    IndexSet negated() const;
    std::string to_string() const;
    bool operator==(const IndexSet&) const = default;
};

using IndexSets = std::map<std::pair<int, int>, IndexSet>;

// Non-empty sets N_{i,j} = {n : theta_n(Phi_i) inside Phi_j}.
IndexSets index_sets(const HeckeContext& ctx);

// Label of a refined monotonicity cell: sign * (m or m_sub).
struct RefinedLabel {
    int sign = 1;
    int m = 2;
    int sub = 0;  // Phi component for split cells 1_i and 2_i, else 0

    bool operator==(const RefinedLabel&) const = default;
    auto operator<=>(const RefinedLabel&) const = default;
    RefinedLabel negated() const { return {-sign, m, sub}; }
    std::string to_string() const;
};

struct RefinedCell {
    RefinedLabel label;
    Interval interval;
};

struct RefinedPartition {
    std::vector<RefinedCell> cells;  // all cells with m <= m_max
    // Cells with m > m_max fill [-remainder, remainder].
    double remainder = 0.0;
};

// First m from which cells are no longer split and rows coincide.
int tail_bound(const HeckeContext& ctx);

RefinedPartition build_refined(const HeckeContext& ctx, int m_max);

// Interval of a refined cell; throws DomainError for labels outside F_q.
Interval refined_interval(const HeckeContext& ctx, const RefinedLabel& label);

// A_{i,j} = 1 iff J_j interior lies inside f_q(J_i interior). Labels with m >= tail_bound collapse.
bool transition(const HeckeContext& ctx, const RefinedLabel& i, const RefinedLabel& j);

struct DiscSystem {
    std::map<int, Interval> intervals;
    std::map<int, int> enlargement;
    int base = 0;

    double center(int i) const { return intervals.at(i).mid(); }
    double radius(int i) const { return intervals.at(i).half_length(); }
};

// Enlarged interval system; base_enlargement <= 0 gives the unenlarged intervals.
DiscSystem build_discs(const HeckeContext& ctx, int base_enlargement);
DiscSystem unenlarged_discs(const HeckeContext& ctx);

struct ContainmentRow {
    int i = 0;
    int j = 0;
    std::optional<int> n;  // empty for the limit of a tail family
    double margin = 0.0;
};

struct DiscReport {
    std::vector<ContainmentRow> rows;
    double worst_margin = 0.0;
    bool passed = false;
};

// Checks theta_n(closure I_i) inside I_j with margin >= min_margin for all n in N_{i,j}.
DiscReport check_discs(const HeckeContext& ctx, const DiscSystem& d, int tail_check_depth,
                       double min_margin = 1e-9);
// As check_discs but throws VerificationError naming the first failing (i, j, n).
DiscReport verify_discs(const HeckeContext& ctx, const DiscSystem& d, int tail_check_depth,
                        double min_margin = 1e-9);

// Smallest base in 5, 10, 20, ... for which the system verifies.
DiscSystem auto_discs(const HeckeContext& ctx, int tail_check_depth = 50);

} // namespace hecke
