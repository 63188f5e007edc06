#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hecke/context.hpp"
#include "hecke/moebius.hpp"
#include "hecke/partition.hpp"
#include "hecke/specfun.hpp"
#include "hecke/transfer.hpp"

namespace hecke {

struct ZetaEval {
    cplx s;
    cplx value;
    int N = 0;
    // |Z_N - Z_{N-10}|
    double convergence_gap = 0.0;
    cplx det_L;  // det(1 - L_s) at order N
    cplx det_K;  // closed-form det(1 - K_s)
};

enum class DetRoute { full, reduced };

// det(1 - L_s) at order N via the full operator or the product of the two reduced ones.
cplx transfer_det(const HeckeContext& ctx, const DiscSystem& discs, cplx s, int N, DetRoute route = DetRoute::reduced);

// Z_S(s) = det(1 - L_s) / det(1 - K_s).
ZetaEval selberg_zeta(const HeckeContext& ctx, const DiscSystem& discs, cplx s, int N,
                      DetRoute route = DetRoute::reduced);

// zeta_R(s) = det(1 - L_{s+1}) / det(1 - L_s).
ZetaEval ruelle_zeta(const HeckeContext& ctx, const DiscSystem& discs, cplx s, int N);

struct ScanPath {
    enum class Axis { real, imaginary };
    Axis axis = Axis::real;
    double start = 0.0;
    double stop = 0.0;
    // The coordinate held fixed: Im s on a real segment, Re s on a vertical line.
    double fixed = 0.0;

    cplx at(double x) const { return axis == Axis::real ? cplx(x, fixed) : cplx(fixed, x); }
};

struct ZeroCandidate {
    cplx s;
    double abs_value = 0.0;  // |Z_S(s)|
    double convergence_gap = 0.0;
    bool refined = false;  // refinement converged and the location is stable under N -> N+10
};

// Local minima of |det(1 - L_s)| on the grid, refined by golden-section search to refine_tol.
std::vector<ZeroCandidate> scan_zeros(const HeckeContext& ctx, const DiscSystem& discs, const ScanPath& path, int N,
                                      double step, double refine_tol);

// Coefficients of an eigenvalue-1 eigenfunction of the reduced operator with parity epsilon.
class EigenFunction {
public:
    EigenFunction(HeckeContext ctx, DiscSystem discs, OperatorSpec spec, cplx s, int N,
                  std::vector<std::vector<cplx>> coefficients, double residual);

    cplx s() const { return s_; }
    int epsilon() const { return spec_.epsilon; }
    int N() const { return N_; }
    double residual() const { return residual_; }
    const std::vector<int>& components() const { return spec_.components; }
    const std::vector<std::vector<cplx>>& coefficients() const { return coeffs_; }
    const DiscSystem& discs() const { return discs_; }

    // Taylor evaluation inside the disc of a component (|u| <= 1).
    std::optional<cplx> disc_value(int component, cplx z) const;
    // One application of the operator row: defined wherever all branch images stay in the discs.
    std::optional<cplx> value(int component, double z) const;
    // Largest admissible real interval around the disc center for value().
    Interval domain(int component) const;

private:
    HeckeContext ctx_;
    DiscSystem discs_;
    OperatorSpec spec_;
    cplx s_;
    int N_;
    std::vector<std::vector<cplx>> coeffs_;
    double residual_;
};

// Throws NotAnEigenvalueError if |det(1 - L_{s,eps})| >= 1e-6.
EigenFunction eigenfunction(const HeckeContext& ctx, const DiscSystem& discs, cplx s, int epsilon, int N);

// Same evaluation machinery with arbitrary coefficients (used for negative controls).
EigenFunction eigenfunction_from_coefficients(const HeckeContext& ctx, const DiscSystem& discs, cplx s, int epsilon,
                                              int N, std::vector<std::vector<cplx>> coefficients);

// Formal sum of (coefficient, element) pairs; products multiply elements in written order.
struct GroupRingWord {
    struct Term {
        cplx coefficient;
        Moebius element;
        std::string label;
    };
    std::vector<Term> terms;

    static GroupRingWord one();
    static GroupRingWord element(const Moebius& g, std::string label);

    GroupRingWord operator+(const GroupRingWord& o) const;
    GroupRingWord operator-(const GroupRingWord& o) const;
    GroupRingWord operator*(const GroupRingWord& o) const;
    GroupRingWord operator*(cplx c) const;
};

GroupRingWord gr_T(const HeckeContext& ctx, int power = 1);
GroupRingWord gr_S();
GroupRingWord gr_S_tilde();
GroupRingWord gr_power(const GroupRingWord& w, int n);
// P_n(g) = sum_{l=0}^{n} g^l, empty (zero) for n < 0.
GroupRingWord gr_geometric(const GroupRingWord& w, int n);

// A function with an explicit real domain: returns nullopt outside it.
using DomainFunction = std::function<std::optional<cplx>(double)>;

// sum_k c_k ((c z + d)^2)^{-s} g(gamma_k z); throws ContainmentError naming the escaping element.
cplx slash_apply(const DomainFunction& g, const GroupRingWord& word, cplx s, double z);

struct FunctionalResidual {
    double residual = 0.0;           // max over equations and admissible samples
    std::size_t samples_used = 0;
    std::vector<std::pair<std::string, double>> per_equation;
};

// Residuals of the finite-term functional equations for the eigenfunction's q.
FunctionalResidual functional_residual(const HeckeContext& ctx, cplx s, int epsilon, const EigenFunction& ef,
                                       const std::vector<double>& samples);

// 40 equispaced points spanning the admissible interval of component 1.
std::vector<double> functional_samples(const EigenFunction& ef, int count = 40);

} // namespace hecke
