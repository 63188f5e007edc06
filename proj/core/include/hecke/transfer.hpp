#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hecke/context.hpp"
#include "hecke/partition.hpp"
#include "hecke/specfun.hpp"

namespace hecke {

enum class OperatorKind { full, reduced, K, elementary };

// One block contribution: g_col composed with the branch(es) theta_n on disc `row`.
struct BranchTerm {
    int row = 0;
    int col = 0;
    int n = 0;           // branch, or first branch of a tail
    bool tail = false;   // n, n + sign(n), n + 2 sign(n), ...
    int reflect = 1;     // -1 evaluates g_col at -theta_n(z)
    cplx coefficient = 1.0;
};

struct OperatorSpec {
    OperatorKind kind = OperatorKind::full;
    int epsilon = 0;  // reduced operators only
    std::vector<int> components;
    std::vector<BranchTerm> terms;

    std::string name() const;
};

OperatorSpec full_operator(const HeckeContext& ctx);
OperatorSpec reduced_operator(const HeckeContext& ctx, int epsilon);
OperatorSpec k_operator(const HeckeContext& ctx);
OperatorSpec elementary_operator(const HeckeContext& ctx, int row, int col, int n, bool tail);

// Components visited by the orbit of r_q, in orbit order.
std::vector<int> r_orbit_components(const HeckeContext& ctx);

// Matrix in the scaled basis e_k^(j)(z) = ((z - c_j)/rho_j)^k, k = 0..N.
struct BlockMatrix {
    std::vector<int> components;
    int N = 0;
    cplx s;
    std::string kind;
    Eigen::MatrixXcd m;

    int block_of(int component) const;
    Eigen::Index index(int component, int k) const { return block_of(component) * (N + 1) + k; }
};

// Throws PoleError when s is within 1e-6 of (1 - k)/2.
void check_pole_distance(cplx s);

BlockMatrix assemble(const HeckeContext& ctx, const DiscSystem& discs, const OperatorSpec& spec, cplx s, int N);

BlockMatrix P_matrix(const HeckeContext& ctx, int N);

cplx trace_power(const BlockMatrix& m, int k);

// det(I - M).
cplx fredholm_det(const BlockMatrix& m);

// Eigenvalues by decreasing modulus.
std::vector<cplx> spectrum(const BlockMatrix& m, int top);

// Diagonal block of K^kappa at the first orbit component.
BlockMatrix k_composite(const HeckeContext& ctx, const BlockMatrix& k_matrix);

// l = product of |f^l(r_q)| over one period.
double k_multiplier(const HeckeContext& ctx);

struct ClosedFormDet {
    cplx value;
    double tail_bound = 0.0;
    double l = 0.0;
};

// prod_{n=0}^{n_max} (1 - l^{2s+2n}).
ClosedFormDet closed_form_K_det(const HeckeContext& ctx, cplx s, int n_max = 60);

} // namespace hecke
