#ifndef SCHURLAB_ENGINE_HPP
#define SCHURLAB_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "schurlab/group_lp.hpp"

namespace schurlab {

struct AscentOptions {
    int restarts = 32;
    int max_iters = 500;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    double surrogate_p = 64.0;  // smooth stand-in for p = inf before the exact polish
    bool use_fast_paths = true;
};

// A certified lower bound for a multiplier norm. The value is always the
// ratio ||map(certificate)||_p / ||certificate||_p recomputed from the
// stored certificate.
struct NormEstimate {
    double value = 0.0;
    Matrix certificate;
    int amplification = 1;
    int restarts_used = 0;
    long iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};

enum class MultiplierKind { Schur, Fourier };

// Lower bound for the Schur multiplier norm on S_p(l^2 F) of the symbol
// matrix S (the map A -> S o A). Exact fast path at p = 2 (max entry
// modulus). p in {1, inf} go through duality / the surrogate-plus-polish
// route.
NormEstimate schur_matrix_norm_est(const Matrix& S, const PNorm& p, const AscentOptions& opts);

// Same, with the symbol matrix phi(st^{-1}) built on F.
NormEstimate schur_norm_est(const MultiplierSymbol& phi, const ElementSet& F, const PNorm& p,
                            const AscentOptions& opts);

// Lower bound for ||T_phi||_{L^p -> L^p} on a finite group. p = 2 fast path:
// max |phi(g)|; p = 1 via the dual symbol phi~(s) = phi(s^{-1}) at infinity.
NormEstimate fourier_norm_est(const MultiplierSymbol& phi, const PNorm& p,
                              const AscentOptions& opts);

// Amplified estimates (id_n x map on S_p^n-valued inputs) for each level n.
// Level n+1 is seeded with the level-n certificate padded by zeros, so the
// sequence of values is non-decreasing; the cb estimate is the final max.
std::vector<NormEstimate> cb_norm_est(MultiplierKind kind, const MultiplierSymbol& phi,
                                      const ElementSet& F, const PNorm& p,
                                      const std::vector<int>& levels, const AscentOptions& opts);

// Transfers a Schur certificate a (on F = G, the whole finite group) to the
// |G|-fold amplified Fourier problem. The transferred matrix
// X[(u,i),(v,j)] = a_{ij} [u v^{-1} = s_i s_j^{-1}] lies in the amplified
// lambda-span, equals U (1 (x) a) U* for a unitary U, and its Rayleigh ratio
// under id (x) T_phi reproduces the Schur ratio of a exactly, at every p.
// A short ascent from the transferred start may raise the value further;
// it can never lower it.
NormEstimate fourier_transferred_est(const MultiplierSymbol& phi, const PNorm& p,
                                     const Matrix& schur_certificate, const AscentOptions& opts);

// Estimates along a strictly increasing chain F_1 c F_2 c ...; each level is
// seeded with the previous certificate embedded by inclusion, so values are
// non-decreasing.
std::vector<NormEstimate> nested_subset_scan(const MultiplierSymbol& phi,
                                             const std::vector<ElementSet>& chain, const PNorm& p,
                                             const AscentOptions& opts);

// One generalized power-method step for max ||map(X)||_p / ||X||_p with
// 1 < p < inf: Y = map(X); G = norming element of Y in S_p; X' is the
// dual-exponent raise of adjoint(G), renormalized to unit p-norm. The
// Rayleigh ratio of X' is never below that of X (up to roundoff).
Matrix ascent_step(const std::function<Matrix(const Matrix&)>& apply,
                   const std::function<Matrix(const Matrix&)>& hs_adjoint, const Matrix& X,
                   const PNorm& p);

// Coefficient extraction x_g = (1/|G|) sum_{st^{-1}=g} X_{s,t} for a matrix
// in (or near) the lambda-span of a finite group.
std::vector<Complex> fourier_coefficients(const Matrix& X, const FiniteGroup& G);

// Deterministic seed stream used by the engine; exposed for tests.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    double uniform01();
    Complex gaussian();
};

}  // namespace schurlab

#endif
