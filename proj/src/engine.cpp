#include "schurlab/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace schurlab {

std::uint64_t SplitMix64::next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Complex SplitMix64::gaussian() {
    // Box-Muller; one complex Gaussian per call.
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    return Complex(r * std::cos(t), r * std::sin(t)) / std::sqrt(2.0);
}

namespace {

using Projector = std::function<Matrix(const Matrix&)>;

// A multiplier presented as a Schur product with the symbol matrix S,
// together with the orthogonal projection onto the admissible subspace
// (identity for plain Schur multipliers, the lambda-span averaging for
// Fourier multipliers).
struct Problem {
    Matrix S;
    Projector project;  // may be empty

    Eigen::Index dim() const { return S.rows(); }
    Matrix apply(const Matrix& X) const { return S.cwiseProduct(X); }
    Matrix hs_adjoint(const Matrix& X) const { return S.conjugate().cwiseProduct(X); }
    Matrix proj(const Matrix& X) const { return project ? project(X) : X; }
    Problem transposed() const { return Problem{S.transpose(), project}; }
};

struct AscentRun {
    double ratio = 0.0;
    Matrix X;
    long iterations = 0;
    bool converged = false;
};

constexpr double kMonotoneSlack = 1e-12;
constexpr int kStallSteps = 5;

Matrix step_once(const Problem& prob, const Matrix& X, const PNorm& p) {
    Matrix Y = prob.apply(X);
    if (schatten_norm(Y, p) == 0.0) return Matrix();
    Matrix G = norming_element(Y, p);
    Matrix Z = prob.proj(prob.hs_adjoint(G));
    double zn = Z.norm();
    if (zn == 0.0) return Matrix();
    Matrix Xn = p.is_inf() ? singular_power(Z, 0.0) : singular_power(Z, p.conjugate().value() - 1.0);
    Xn = prob.proj(Xn);
    double nn = schatten_norm(Xn, p);
    if (nn == 0.0) return Matrix();
    return Xn / nn;
}

AscentRun run_ascent(const Problem& prob, Matrix X0, const PNorm& p, const AscentOptions& opts) {
    AscentRun run;
    X0 = prob.proj(X0);
    double n0 = schatten_norm(X0, p);
    if (n0 == 0.0) return run;
    run.X = X0 / n0;
    run.ratio = schatten_norm(prob.apply(run.X), p);
    if (run.ratio == 0.0) {
        run.converged = true;
        return run;
    }
    int stall = 0;
    for (int it = 0; it < opts.max_iters; ++it) {
        ++run.iterations;
        Matrix Xn = step_once(prob, run.X, p);
        if (Xn.size() == 0) {
            run.converged = true;
            break;
        }
        double rn = schatten_norm(prob.apply(Xn), p);
        // The alternating update never lowers the Rayleigh ratio.
        if (rn < run.ratio - kMonotoneSlack * std::max(1.0, run.ratio))
            throw std::logic_error("ascent step decreased the Rayleigh ratio");
        double gain = rn - run.ratio;
        run.X = Xn;
        run.ratio = std::max(run.ratio, rn);
        if (gain < opts.tol * std::max(1.0, run.ratio)) {
            if (++stall >= kStallSteps) {
                run.converged = true;
                break;
            }
        } else {
            stall = 0;
        }
    }
    return run;
}

Matrix random_start(Eigen::Index n, SplitMix64& rng) {
    Matrix X(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) X(i, j) = rng.gaussian();
    return X;
}

// Converts a certificate X of the transposed problem at p = inf into a
// trace-norm certificate of the original problem with at least the same
// ratio: with Y = S^T o X and polar decomposition Y = W|Y|, the element
// C = P W* (P the top spectral projection of |Y|) satisfies
// ||S o C||_1 / ||C||_1 >= ||Y||_inf.
Matrix dual_to_primal_certificate(const Problem& prob, const Matrix& Xdual) {
    Matrix Y = prob.transposed().apply(Xdual);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Y.adjoint() * Y);
    Eigen::VectorXd sigma = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    double top = sigma.maxCoeff();
    if (top == 0.0) return Matrix();
    const Matrix& Q = es.eigenvectors();
    Eigen::VectorXd inv(sigma.size()), sel(sigma.size());
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        inv[i] = sigma[i] > 1e-14 * top ? 1.0 / sigma[i] : 0.0;
        sel[i] = sigma[i] >= top * (1.0 - 1e-9) ? 1.0 : 0.0;
    }
    Matrix W = Y * (Q * inv.asDiagonal() * Q.adjoint());
    Matrix P = Q * sel.asDiagonal() * Q.adjoint();
    return prob.proj(P * W.adjoint());
}

double certificate_ratio(const Problem& prob, const Matrix& C, const PNorm& p) {
    double denom = schatten_norm(C, p);
    if (denom == 0.0) return 0.0;
    return schatten_norm(prob.apply(C), p) / denom;
}

// Core estimator: handles the p = 2 fast path, the p = 1 dual route, the
// p = inf surrogate-plus-polish route, and plain ascent otherwise.
// extra_starts are tried before the random restarts.
NormEstimate estimate(const Problem& prob, const PNorm& p, const AscentOptions& opts,
                      const std::vector<Matrix>& extra_starts = {}) {
    NormEstimate est;
    est.seed = opts.seed;
    est.amplification = 1;
    if (prob.S.size() == 0 || prob.S.cwiseAbs().maxCoeff() == 0.0) {
        // phi == 0: null certificate.
        est.converged = true;
        return est;
    }

    if (!p.is_inf() && p.value() == 2.0 && opts.use_fast_paths) {
        Eigen::Index rr = 0, cc = 0;
        prob.S.cwiseAbs().maxCoeff(&rr, &cc);
        Matrix C = Matrix::Zero(prob.dim(), prob.dim());
        C(rr, cc) = 1.0;
        est.certificate = prob.proj(C);
        est.value = certificate_ratio(prob, est.certificate, p);
        est.converged = true;
        return est;
    }

    if (!p.is_inf() && p.value() == 1.0) {
        // Dual route: the trace-norm problem of S equals the operator-norm
        // problem of S^T.
        AscentOptions dual_opts = opts;
        NormEstimate dual = estimate(prob.transposed(), PNorm::infinity(), dual_opts, extra_starts);
        est.restarts_used = dual.restarts_used;
        est.iterations = dual.iterations;
        est.converged = dual.converged;
        if (dual.certificate.size() == 0) return est;
        est.certificate = dual_to_primal_certificate(prob, dual.certificate);
        if (est.certificate.size() == 0) return est;
        est.value = certificate_ratio(prob, est.certificate, p);
        return est;
    }

    const PNorm work_p = p.is_inf() ? PNorm(opts.surrogate_p) : p;
    SplitMix64 seeder(opts.seed ^ 0x5ca1ab1e0ddba11ull);
    double best = -1.0;
    Matrix best_X;
    bool best_conv = false;
    const int total = static_cast<int>(extra_starts.size()) + opts.restarts;
    for (int r = 0; r < total; ++r) {
        Matrix X0;
        if (r < static_cast<int>(extra_starts.size())) {
            X0 = extra_starts[static_cast<std::size_t>(r)];
            if (X0.size() == 0) continue;
        } else {
            SplitMix64 rng(seeder.next());
            X0 = random_start(prob.dim(), rng);
        }
        AscentRun run = run_ascent(prob, X0, work_p, opts);
        ++est.restarts_used;
        est.iterations += run.iterations;
        if (p.is_inf() && run.X.size() != 0) {
            // Exact operator-norm polish from the surrogate certificate.
            AscentRun polish = run_ascent(prob, run.X, PNorm::infinity(), opts);
            est.iterations += polish.iterations;
            run.ratio = polish.ratio;
            run.X = polish.X;
            run.converged = polish.converged;
        }
        if (run.ratio > best) {
            best = run.ratio;
            best_X = run.X;
            best_conv = run.converged;
        }
    }
    if (best_X.size() == 0) {
        est.converged = true;  // the map annihilates everything we tried
        return est;
    }
    est.certificate = best_X;
    est.value = certificate_ratio(prob, best_X, p);
    est.converged = best_conv;
    return est;
}

// Orthogonal projection onto span{ A_g (x) lambda_g } for a finite group,
// with row index s * amp + i.
Projector lambda_span_projector(const FiniteGroup& G, int amp) {
    const int n = static_cast<int>(G.order());
    std::vector<std::vector<int>> prod(n, std::vector<int>(n));
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) prod[s][t] = G.multiply_idx(s, G.inverse_idx(t));
    return [n, amp, prod](const Matrix& X) {
        std::vector<Matrix> blocks(static_cast<std::size_t>(n), Matrix::Zero(amp, amp));
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t)
                blocks[static_cast<std::size_t>(prod[s][t])] += X.block(s * amp, t * amp, amp, amp);
        for (auto& b : blocks) b /= static_cast<double>(n);
        Matrix Y(X.rows(), X.cols());
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t)
                Y.block(s * amp, t * amp, amp, amp) = blocks[static_cast<std::size_t>(prod[s][t])];
        return Y;
    };
}

Matrix amplified_symbol(const Matrix& S, int amp) {
    if (amp == 1) return S;
    Matrix ones = Matrix::Ones(amp, amp);
    Matrix A(S.rows() * amp, S.cols() * amp);
    for (Eigen::Index i = 0; i < S.rows(); ++i)
        for (Eigen::Index j = 0; j < S.cols(); ++j) A.block(i * amp, j * amp, amp, amp) = S(i, j) * ones;
    return A;
}

Problem make_problem(MultiplierKind kind, const MultiplierSymbol& phi, const ElementSet& F,
                     int amp) {
    Matrix S = symbol_check_matrix(phi, F);
    Projector proj;
    if (kind == MultiplierKind::Fourier) {
        auto* fg = dynamic_cast<const FiniteGroup*>(&phi.group());
        if (!fg) throw GroupError("fourier_norm_est needs a finite group");
        proj = lambda_span_projector(*fg, amp);
    }
    return Problem{amplified_symbol(S, amp), std::move(proj)};
}

}  // namespace

Matrix ascent_step(const std::function<Matrix(const Matrix&)>& apply,
                   const std::function<Matrix(const Matrix&)>& hs_adjoint, const Matrix& X,
                   const PNorm& p) {
    if (p.is_inf() || p.value() <= 1.0)
        throw SchattenError("ascent_step needs 1 < p < inf; route p in {1,inf} through duality");
    if (schatten_norm(X, p) == 0.0) throw SchattenError("ascent_step on zero input");
    Matrix Y = apply(X);
    if (schatten_norm(Y, p) == 0.0) return Matrix::Zero(X.rows(), X.cols());
    Matrix G = norming_element(Y, p);
    Matrix Z = hs_adjoint(G);
    Matrix Xn = singular_power(Z, p.conjugate().value() - 1.0);
    double nn = schatten_norm(Xn, p);
    if (nn == 0.0) return Matrix::Zero(X.rows(), X.cols());
    return Xn / nn;
}

NormEstimate schur_matrix_norm_est(const Matrix& S, const PNorm& p, const AscentOptions& opts) {
    require_finite(S, "symbol matrix");
    return estimate(Problem{S, nullptr}, p, opts);
}

NormEstimate schur_norm_est(const MultiplierSymbol& phi, const ElementSet& F, const PNorm& p,
                            const AscentOptions& opts) {
    return estimate(make_problem(MultiplierKind::Schur, phi, F, 1), p, opts);
}

NormEstimate fourier_norm_est(const MultiplierSymbol& phi, const PNorm& p,
                              const AscentOptions& opts) {
    if (!phi.group().finite()) throw GroupError("fourier_norm_est needs a finite group");
    auto F = folner_set(phi.group_ptr(), 0);
    return estimate(make_problem(MultiplierKind::Fourier, phi, F, 1), p, opts);
}

std::vector<NormEstimate> cb_norm_est(MultiplierKind kind, const MultiplierSymbol& phi,
                                      const ElementSet& F, const PNorm& p,
                                      const std::vector<int>& levels, const AscentOptions& opts) {
    if (levels.empty()) throw SchattenError("cb_norm_est needs at least one level");
    for (int n : levels)
        if (n < 1 || n > 8) throw SchattenError("amplification levels must be in 1..8");
    std::vector<NormEstimate> out;
    Matrix prev_cert;
    int prev_amp = 0;
    for (int n : levels) {
        Problem prob = make_problem(kind, phi, F, n);
        std::vector<Matrix> starts;
        if (prev_cert.size() != 0 && prev_amp <= n) {
            // Pad the previous certificate with zero blocks; padding changes
            // neither side of the Rayleigh ratio, so the seeded level can
            // only improve on the previous value.
            const auto m = static_cast<Eigen::Index>(F.size());
            Matrix X = Matrix::Zero(m * n, m * n);
            for (Eigen::Index s = 0; s < m; ++s)
                for (Eigen::Index t = 0; t < m; ++t)
                    X.block(s * n, t * n, prev_amp, prev_amp) =
                        prev_cert.block(s * prev_amp, t * prev_amp, prev_amp, prev_amp);
            starts.push_back(std::move(X));
        }
        NormEstimate est = estimate(prob, p, opts, starts);
        est.amplification = n;
        prev_cert = est.certificate;
        prev_amp = n;
        out.push_back(std::move(est));
    }
    return out;
}

NormEstimate fourier_transferred_est(const MultiplierSymbol& phi, const PNorm& p,
                                     const Matrix& schur_certificate, const AscentOptions& opts) {
    auto* fg = dynamic_cast<const FiniteGroup*>(&phi.group());
    if (!fg) throw GroupError("fourier_transferred_est needs a finite group");
    const int n = static_cast<int>(fg->order());
    if (schur_certificate.rows() != n || schur_certificate.cols() != n)
        throw SchattenError("fourier_transferred_est needs a full-group Schur certificate");
    ElementSet G = folner_set(phi.group_ptr(), 0);
    Problem prob = make_problem(MultiplierKind::Fourier, phi, G, n);
    // X = sum_g lambda_g (x) A_g with A_g collecting the certificate entries
    // whose pattern s_i s_j^{-1} equals g; conjugation by the block-diagonal
    // unitary diag(lambda_{s_1}, ..., lambda_{s_n}) maps 1 (x) a onto X, so
    // the amplified Fourier ratio of X equals the Schur ratio of a.
    Matrix X = Matrix::Zero(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            const int g = fg->multiply_idx(u, fg->inverse_idx(v));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (fg->multiply_idx(i, fg->inverse_idx(j)) == g)
                        X(static_cast<Eigen::Index>(u) * n + i,
                          static_cast<Eigen::Index>(v) * n + j) = schur_certificate(i, j);
        }
    NormEstimate est;
    est.seed = opts.seed;
    est.amplification = n;
    est.certificate = X;
    est.value = certificate_ratio(prob, X, p);
    est.converged = true;
    // Climb from the transferred start when the exponent admits the smooth
    // ascent and the amplified dimension stays small enough to iterate on.
    if (!p.is_inf() && p.value() > 1.0 && n <= 12) {
        AscentRun run = run_ascent(prob, X, p, opts);
        est.iterations = run.iterations;
        if (run.X.size() != 0 && run.ratio > est.value) {
            est.certificate = run.X;
            est.value = certificate_ratio(prob, run.X, p);
        }
        est.converged = run.converged;
    }
    return est;
}

std::vector<NormEstimate> nested_subset_scan(const MultiplierSymbol& phi,
                                             const std::vector<ElementSet>& chain, const PNorm& p,
                                             const AscentOptions& opts) {
    if (chain.empty()) throw SchattenError("nested_subset_scan needs a nonempty chain");
    std::vector<NormEstimate> out;
    Matrix prev_cert;
    const ElementSet* prev_set = nullptr;
    for (const auto& F : chain) {
        if (prev_set) {
            if (F.size() <= prev_set->size())
                throw SchattenError("chain must be strictly increasing");
            for (const auto& e : prev_set->elements())
                if (!F.contains(e)) throw SchattenError("chain sets must be nested");
        }
        Problem prob{symbol_check_matrix(phi, F), nullptr};
        std::vector<Matrix> starts;
        if (prev_cert.size() != 0) {
            Matrix X = Matrix::Zero(static_cast<Eigen::Index>(F.size()),
                                    static_cast<Eigen::Index>(F.size()));
            for (std::size_t s = 0; s < prev_set->size(); ++s)
                for (std::size_t t = 0; t < prev_set->size(); ++t) {
                    auto si = F.index_of(prev_set->at(s));
                    auto ti = F.index_of(prev_set->at(t));
                    X(static_cast<Eigen::Index>(*si), static_cast<Eigen::Index>(*ti)) =
                        prev_cert(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
                }
            starts.push_back(std::move(X));
        }
        NormEstimate est = estimate(prob, p, opts, starts);
        prev_cert = est.certificate;
        prev_set = &F;
        out.push_back(std::move(est));
    }
    return out;
}

std::vector<Complex> fourier_coefficients(const Matrix& X, const FiniteGroup& G) {
    const int n = static_cast<int>(G.order());
    if (X.rows() != n || X.cols() != n)
        throw SchattenError("fourier_coefficients: matrix size does not match the group order");
    std::vector<Complex> out(static_cast<std::size_t>(n), Complex(0.0));
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            out[static_cast<std::size_t>(G.multiply_idx(s, G.inverse_idx(t)))] += X(s, t);
    for (auto& c : out) c /= static_cast<double>(n);
    return out;
}

}  // namespace schurlab
