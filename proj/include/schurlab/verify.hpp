#ifndef SCHURLAB_VERIFY_HPP
#define SCHURLAB_VERIFY_HPP

#include <string>
#include <utility>
#include <vector>

#include "schurlab/engine.hpp"

namespace schurlab {

struct CheckReport {
    std::string name;
    std::string inputs_digest;
    std::vector<std::pair<std::string, double>> quantities;
    bool pass = false;
    double tolerance = 0.0;
    std::uint64_t seed = 0;

    double quantity(const std::string& key) const;
};

// Verifies, on a finite group with points s_1..s_k and k x k matrices a, b,
// that sum_{i,j} phi(s_i s_j^{-1}) a_{ij} b_{ji} equals the amplified trace
// pairing <(id (x) T_phi)(A), B> with A = (a_{ij} lambda(s_i) lambda(s_j^{-1}))
// and B built from b. The two sides are computed along independent paths.
CheckReport check_transference_identity(const MultiplierSymbol& phi,
                                        const std::vector<Element>& points, const Matrix& a,
                                        const Matrix& b, const PNorm& p,
                                        double tolerance = 1e-10);

enum class NormOracle { FiniteTrace, ZQuadrature, FreeMoment };

// ||P_F x P_F||_{S_p} <= |F|^{1/p} ||x||_p, with ||x||_p from the stated
// oracle.
CheckReport check_corner_bound(const GroupAlgebraElement& x, const ElementSet& F, const PNorm& p,
                               NormOracle oracle, double tolerance = 1e-9);

double oracle_norm(const GroupAlgebraElement& x, const PNorm& p, NormOracle oracle);

struct CurvePoint {
    int radius = 0;
    std::size_t set_size = 0;
    double value = 0.0;
    double ratio = 0.0;
};

// normalized_corner_norm(x, F_r, p) / oracle norm along a radius schedule.
std::vector<CurvePoint> folner_isometry_curve(const GroupAlgebraElement& x, const PNorm& p,
                                              const std::vector<int>& radii, NormOracle oracle);

// Norm agreement on a finite group: the Schur estimate must agree within the
// gap with the amplified Fourier estimate obtained by transferring the Schur
// certificate into the lambda-span (the level at which the two norms
// coincide), and the plain Fourier estimate must not exceed that common
// value. Both gating optimizers must converge.
CheckReport check_amenable_equality(const MultiplierSymbol& phi, const PNorm& p,
                                    const AscentOptions& opts, double gap = 0.01);

// Four unit vectors in l^4(G; S_4 of dimension d) plus a shift element, with
// the scalar profiles eta_i(t) = ||xi_i(t)||_{S_4}.
struct ConvexityTestVector {
    std::shared_ptr<const FiniteGroup> group;
    std::vector<std::vector<Matrix>> xi;  // xi[i][t], i = 0..3, t over the group
    Element shift;

    static ConvexityTestVector random(std::shared_ptr<const FiniteGroup> group, int dim,
                                      std::uint64_t seed);
    // xi2 = xi1, xi3 = xi4 = s^{-1} . xi1: the exactly covariant configuration.
    static ConvexityTestVector covariant(std::shared_ptr<const FiniteGroup> group, int dim,
                                         const Element& s, std::uint64_t seed);

    std::vector<double> eta(int i) const;
    void normalize();
};

// The explicit conclusion bound extracted from the uniform-convexity proof
// chain: sqrt(2 delta + 4 sqrt(2) delta^{1/4}).
double lemma_chain_bound(double delta);

// Checks the proof-step inequalities of the uniform-convexity lemma on
// concrete data: (a) the Hoelder step, (b) the elementary l^4/l^2 inequality,
// (c) hypothesis >= 1 - delta implies the conclusion is below the explicit
// chain bound.
CheckReport check_lemma_2_3_chain(const ConvexityTestVector& v, double delta,
                                  double tolerance = 1e-10);

// ||lambda_s eta_gamma^2 - eta_gamma^2||_{l^2} for the canonical Folner
// profile eta_gamma = |F cap gamma F|^{-1/4} 1_{F cap gamma F}.
double almost_invariance_defect(const ElementSet& F, const Element& gamma, const Element& s);

// log ||T_phi^p|| midpoint convexity in 1/p across the grid; slack is three
// times the optimizer tolerance.
CheckReport check_log_convexity(const MultiplierSymbol& phi, const std::vector<PNorm>& p_grid,
                                const AscentOptions& opts);

// Report-only contrast curve: normalized corner norms over free-group balls
// against the moment oracle.
std::vector<CurvePoint> free_group_contrast(const GroupAlgebraElement& x, int p_even,
                                            const std::vector<int>& radii);

}  // namespace schurlab

#endif
