#pragma once

#include <cstddef>
#include <vector>

#include "hecke/context.hpp"
#include "hecke/moebius.hpp"
#include "hecke/specfun.hpp"

namespace hecke {

struct OrbitWord {
    std::vector<int> digits;
    bool prime = true;

    bool operator==(const OrbitWord&) const = default;
};

struct OrbitRecord {
    OrbitWord word;
    double fixed_point = 0.0;
    double length = 0.0;
    MoebiusWord moebius;
    double trace = 0.0;
};

// Cyclically regular words of length n with |digit| <= digit_bound. With prime_classes, one
// lexicographically smallest rotation per class of primitive words.
std::vector<OrbitWord> enumerate_periodic(const HeckeContext& ctx, int n, int digit_bound, bool prime_classes = false);

bool is_primitive(const std::vector<int>& digits);

// Smallest rotation in lexicographic order of the digit vector.
std::vector<int> canonical_rotation(const std::vector<int>& digits);

double fixed_point(const HeckeContext& ctx, const OrbitWord& w);
double orbit_length(const HeckeContext& ctx, const OrbitWord& w);
OrbitRecord orbit_record(const HeckeContext& ctx, const OrbitWord& w);

bool is_O_plus(const HeckeContext& ctx, const OrbitWord& w);

struct PartitionSum {
    cplx value;
    double tail_bound = 0.0;
    std::size_t terms = 0;
};

// Z_n(s) = sum over all fixed words of length n (no rotation dedup) of prod (x_l^2)^s.
// Subtrees whose majorant mass falls below prune_mass are skipped and added to tail_bound.
PartitionSum partition_function(const HeckeContext& ctx, int n, cplx s, int digit_bound, double prune_mass = 1e-17);

// Prime orbits with r_O <= max_length, sorted by (length, word).
std::vector<OrbitRecord> prime_orbits(const HeckeContext& ctx, double max_length);

struct ProductEstimate {
    cplx value;
    // Size of the first omitted factor class, a proxy for the truncation error.
    double truncation_bound = 0.0;
    std::size_t orbits = 0;
};

// prod_{k<=k_max} prod_O (1 - e^{-(s+k) r_O}), divided by the O_+ factor. A positive
// digit_bound additionally drops orbits with a larger digit.
ProductEstimate selberg_product(const HeckeContext& ctx, cplx s, double max_length, int k_max, int digit_bound = 0);

// prod_O (1 - e^{-s r_O})^{-1} over prime orbits with r_O <= max_length.
ProductEstimate ruelle_product(const HeckeContext& ctx, cplx s, double max_length, int digit_bound = 0);

// Same products over an explicit orbit list.
ProductEstimate selberg_product(const HeckeContext& ctx, const std::vector<OrbitRecord>& orbits, cplx s,
                                double max_length, int k_max);
ProductEstimate ruelle_product(const std::vector<OrbitRecord>& orbits, cplx s, double max_length);

} // namespace hecke
