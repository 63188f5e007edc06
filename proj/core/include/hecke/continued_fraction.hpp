#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hecke/context.hpp"
#include "hecke/moebius.hpp"

namespace hecke {

enum class CFMode { regular, dual };

// Eventually periodic tail: digits[preperiod + k] == digits[preperiod + k % length].
struct Period {
    std::size_t preperiod = 0;
    std::size_t length = 0;
    bool operator==(const Period&) const = default;
};

// Value a0*lambda - 1/(a1*lambda - 1/(a2*lambda - ...)).
struct CFExpansion {
    int a0 = 0;
    std::vector<int> digits;
    CFMode kind = CFMode::regular;
    // True when the algorithm reached 0, false when it was cut off.
    bool complete = true;
    std::optional<Period> period;
};

int nearest_multiple(const HeckeContext& ctx, double x, CFMode mode);

struct StepResult {
    int digit = 0;  // 0 marks termination
    double next = 0.0;
};

// One application of the generating map f_q (regular) or f_q^* (dual).
StepResult step(const HeckeContext& ctx, double x, CFMode mode);

CFExpansion expand(const HeckeContext& ctx, double x, CFMode mode, int max_digits);

// Finite word value, T^{a0} S T^{a1} ... S T^{al} applied to 0.
double evaluate_word(const HeckeContext& ctx, int a0, std::span<const int> digits);

// Attractive fixed point of z -> [0; digits, z], i.e. the value [0; overline(digits)].
double periodic_value(const HeckeContext& ctx, std::span<const int> digits);

double evaluate(const HeckeContext& ctx, const CFExpansion& e);

// Forbidden-block grammar on a finite word. Dual mode checks reversed windows.
bool is_regular(const HeckeContext& ctx, std::span<const int> digits, CFMode mode = CFMode::regular);

// Regularity of the bi-infinite repetition of the word.
bool is_cyclically_regular(const HeckeContext& ctx, std::span<const int> digits);

// Length of the longest finite forbidden pattern window.
std::size_t longest_block(const HeckeContext& ctx);

std::weak_ordering lex_compare(const CFExpansion& x, const CFExpansion& y);

// phi_0 < ... < phi_kappa, the orbit of -lambda/2.
std::vector<double> phi_orbit(const HeckeContext& ctx);

// Digit word of -lambda/2 and the period word of r_q.
std::vector<int> half_lambda_word(const HeckeContext& ctx);
std::vector<int> r_word(const HeckeContext& ctx);

// The element A_q with -R_q = A_q R_q: S for even q, (TS)^{h+1} for odd q.
Moebius R_reflection(const HeckeContext& ctx);

} // namespace hecke
