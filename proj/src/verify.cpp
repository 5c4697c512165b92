#include "schurlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_set>

namespace schurlab {

namespace {

std::string fnv_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

}  // namespace

double CheckReport::quantity(const std::string& key) const {
    for (const auto& [k, v] : quantities)
        if (k == key) return v;
    throw std::out_of_range("no quantity named '" + key + "'");
}

CheckReport check_transference_identity(const MultiplierSymbol& phi,
                                        const std::vector<Element>& points, const Matrix& a,
                                        const Matrix& b, const PNorm& p, double tolerance) {
    auto* fg = dynamic_cast<const FiniteGroup*>(&phi.group());
    if (!fg) throw GroupError("transference check needs a finite group");
    const auto k = static_cast<Eigen::Index>(points.size());
    if (a.rows() != k || a.cols() != k || b.rows() != k || b.cols() != k)
        throw SchattenError("transference check: matrix size must match the point count");
    const auto n = static_cast<Eigen::Index>(fg->order());
    auto G = folner_set(phi.group_ptr(), 0);

    // Direct combinatorial side.
    Complex lhs = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            Element sij = fg->multiply(points[static_cast<std::size_t>(i)],
                                       fg->inverse(points[static_cast<std::size_t>(j)]));
            lhs += phi.at(sij) * a(i, j) * b(j, i);
        }

    // Operator side: A = (a_{ij} lambda(s_i s_j^{-1})), same for B, and
    // id (x) T_phi realized as the Schur product with phi(uv^{-1}) per block.
    Matrix A = Matrix::Zero(k * n, k * n), B = Matrix::Zero(k * n, k * n);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            Element sij = fg->multiply(points[static_cast<std::size_t>(i)],
                                       fg->inverse(points[static_cast<std::size_t>(j)]));
            Matrix lam = lambda_matrix(sij, G);
            A.block(i * n, j * n, n, n) = a(i, j) * lam;
            B.block(i * n, j * n, n, n) = b(i, j) * lam;
        }
    Matrix Sg = symbol_check_matrix(phi, G);
    Matrix Aphi(k * n, k * n);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            Aphi.block(i * n, j * n, n, n) =
                Sg.cwiseProduct(A.block(i * n, j * n, n, n));
    Complex rhs = trace_pairing(Aphi, B) / static_cast<double>(n);

    double q_hold = schatten_norm(a, p) * schatten_norm(b, p.conjugate());

    CheckReport rep;
    rep.name = "transference-identity";
    rep.inputs_digest = fnv_digest(fg->name() + "|k=" + std::to_string(points.size()) + "|p=" + p.str());
    rep.tolerance = tolerance;
    double scale = std::max(1.0, std::abs(lhs));
    rep.quantities = {{"lhs_re", lhs.real()},
                      {"lhs_im", lhs.imag()},
                      {"rhs_re", rhs.real()},
                      {"rhs_im", rhs.imag()},
                      {"abs_diff", std::abs(lhs - rhs)},
                      {"holder_product", q_hold}};
    rep.pass = std::abs(lhs - rhs) <= tolerance * scale;
    return rep;
}

double oracle_norm(const GroupAlgebraElement& x, const PNorm& p, NormOracle oracle) {
    switch (oracle) {
        case NormOracle::FiniteTrace:
            return lp_norm_finite(x, p);
        case NormOracle::ZQuadrature:
            return lp_norm_Z_oracle(x, p);
        case NormOracle::FreeMoment: {
            if (p.is_inf()) throw GroupError("moment oracle needs a finite even exponent");
            return lp_norm_moment_oracle(x, static_cast<int>(p.value()));
        }
    }
    throw GroupError("unknown oracle");
}

CheckReport check_corner_bound(const GroupAlgebraElement& x, const ElementSet& F, const PNorm& p,
                               NormOracle oracle, double tolerance) {
    double corner_norm = schatten_norm(corner(x, F), p);
    double xnorm = oracle_norm(x, p, oracle);
    double scale = p.is_inf() ? 1.0 : std::pow(static_cast<double>(F.size()), 1.0 / p.value());
    CheckReport rep;
    rep.name = "corner-bound";
    rep.inputs_digest = fnv_digest(x.group().name() + "|F=" + std::to_string(F.size()) + "|p=" + p.str());
    rep.tolerance = tolerance;
    rep.quantities = {{"corner_norm", corner_norm},
                      {"bound", scale * xnorm},
                      {"oracle_norm", xnorm},
                      {"set_size", static_cast<double>(F.size())}};
    rep.pass = corner_norm <= scale * xnorm + tolerance;
    return rep;
}

std::vector<CurvePoint> folner_isometry_curve(const GroupAlgebraElement& x, const PNorm& p,
                                              const std::vector<int>& radii, NormOracle oracle) {
    double xnorm = oracle_norm(x, p, oracle);
    std::vector<CurvePoint> curve;
    for (int r : radii) {
        ElementSet F = folner_set(x.group_ptr(), r);
        CurvePoint pt;
        pt.radius = r;
        pt.set_size = F.size();
        pt.value = normalized_corner_norm(x, F, p);
        pt.ratio = xnorm > 0 ? pt.value / xnorm : 0.0;
        curve.push_back(pt);
    }
    return curve;
}

CheckReport check_amenable_equality(const MultiplierSymbol& phi, const PNorm& p,
                                    const AscentOptions& opts, double gap) {
    auto* fg = dynamic_cast<const FiniteGroup*>(&phi.group());
    if (!fg) throw GroupError("amenable-equality check needs a finite group");
    ElementSet G = folner_set(phi.group_ptr(), 0);
    NormEstimate schur = schur_norm_est(phi, G, p, opts);
    NormEstimate fourier = fourier_norm_est(phi, p, opts);
    // The norms agree at the matrix-amplified level; the plain Fourier
    // estimate only satisfies a one-sided bound and can sit strictly below
    // the Schur value on nonabelian groups. Transferring the Schur
    // certificate into the amplified lambda-span recovers the common value
    // through the Fourier machinery.
    NormEstimate amplified =
        schur.certificate.size() != 0
            ? fourier_transferred_est(phi, p, schur.certificate, opts)
            : NormEstimate{};
    double mx = std::max(schur.value, amplified.value);
    double rel_gap = mx > 0 ? std::abs(schur.value - amplified.value) / mx : 0.0;
    bool one_sided = fourier.value <= mx * (1.0 + gap);
    CheckReport rep;
    rep.name = "amenable-equality";
    rep.inputs_digest = fnv_digest(fg->name() + "|p=" + p.str());
    rep.tolerance = gap;
    rep.seed = opts.seed;
    rep.quantities = {{"schur", schur.value},
                      {"fourier", fourier.value},
                      {"fourier_amplified", amplified.value},
                      {"rel_gap", rel_gap},
                      {"plain_bounded", one_sided ? 1.0 : 0.0},
                      {"schur_converged", schur.converged ? 1.0 : 0.0},
                      {"fourier_converged", amplified.converged ? 1.0 : 0.0}};
    rep.pass = schur.converged && amplified.converged && rel_gap <= gap && one_sided;
    return rep;
}

// ---------------------------------------------------------------------------
// Uniform-convexity lemma

std::vector<double> ConvexityTestVector::eta(int i) const {
    std::vector<double> out;
    out.reserve(xi[static_cast<std::size_t>(i)].size());
    for (const auto& m : xi[static_cast<std::size_t>(i)])
        out.push_back(schatten_norm(m, PNorm(4.0)));
    return out;
}

void ConvexityTestVector::normalize() {
    for (auto& vec : xi) {
        double n4 = 0.0;
        for (const auto& m : vec) n4 += std::pow(schatten_norm(m, PNorm(4.0)), 4.0);
        double scale = std::pow(n4, 0.25);
        if (scale == 0.0) throw SchattenError("cannot normalize a zero test vector");
        for (auto& m : vec) m /= scale;
    }
}

ConvexityTestVector ConvexityTestVector::random(std::shared_ptr<const FiniteGroup> group, int dim,
                                                std::uint64_t seed) {
    SplitMix64 rng(seed);
    ConvexityTestVector v;
    v.group = group;
    const auto n = group->order();
    v.xi.assign(4, std::vector<Matrix>(n));
    for (auto& vec : v.xi)
        for (auto& m : vec) {
            m = Matrix(dim, dim);
            for (Eigen::Index r = 0; r < dim; ++r)
                for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = rng.gaussian();
        }
    v.shift = Element{{static_cast<int>(rng.next() % n)}};
    v.normalize();
    return v;
}

ConvexityTestVector ConvexityTestVector::covariant(std::shared_ptr<const FiniteGroup> group,
                                                   int dim, const Element& s, std::uint64_t seed) {
    SplitMix64 rng(seed);
    ConvexityTestVector v;
    v.group = group;
    v.shift = s;
    const auto n = group->order();
    std::vector<Matrix> base(n);
    for (auto& m : base) {
        m = Matrix(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r)
            for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = rng.gaussian();
    }
    // xi3(t) = xi1(s t): the shifted copy (s^{-1} . xi1).
    std::vector<Matrix> shifted(n);
    for (std::size_t t = 0; t < n; ++t) {
        Element st = group->multiply(s, Element{{static_cast<int>(t)}});
        shifted[t] = base[static_cast<std::size_t>(st.word[0])];
    }
    v.xi = {base, base, shifted, shifted};
    v.normalize();
    return v;
}

double lemma_chain_bound(double delta) {
    return std::sqrt(2.0 * delta + 4.0 * std::numbers::sqrt2 * std::pow(delta, 0.25));
}

CheckReport check_lemma_2_3_chain(const ConvexityTestVector& v, double delta, double tolerance) {
    const FiniteGroup& G = *v.group;
    const auto n = G.order();
    auto eta1 = v.eta(0), eta2 = v.eta(1), eta3 = v.eta(2), eta4 = v.eta(3);

    // Hypothesis Q = Re sum_t Tr(xi1(st) xi2(st)* xi3(t) xi4(t)*).
    Complex q = 0.0;
    double holder_mid = 0.0;  // <lambda_{s^{-1}}(eta1 eta2), eta3 eta4>
    const int s_idx = v.shift.word.at(0);
    for (std::size_t t = 0; t < n; ++t) {
        auto st = static_cast<std::size_t>(G.multiply_idx(s_idx, static_cast<int>(t)));
        q += (v.xi[0][st] * v.xi[1][st].adjoint() * v.xi[2][t] * v.xi[3][t].adjoint()).trace();
        holder_mid += eta1[st] * eta2[st] * eta3[t] * eta4[t];
    }
    double hypothesis = q.real();

    // Conclusion L = ||lambda_s eta3^2 - eta1^2||_2, (lambda_s f)(t) = f(s^{-1} t).
    double concl2 = 0.0;
    const int sinv = G.inverse_idx(s_idx);
    for (std::size_t t = 0; t < n; ++t) {
        auto s_inv_t = static_cast<std::size_t>(G.multiply_idx(sinv, static_cast<int>(t)));
        double d = eta3[s_inv_t] * eta3[s_inv_t] - eta1[t] * eta1[t];
        concl2 += d * d;
    }
    double conclusion = std::sqrt(concl2);

    // Elementary inequality ||a-b||_4 <= sqrt(||a^2-b^2||_2) on the profiles.
    auto elementary_margin = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double diff4 = 0.0, diff2 = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            diff4 += std::pow(std::abs(a[t] - b[t]), 4.0);
            double d2 = a[t] * a[t] - b[t] * b[t];
            diff2 += d2 * d2;
        }
        return std::sqrt(std::sqrt(diff2)) - std::pow(diff4, 0.25);
    };
    double elem12 = elementary_margin(eta1, eta2);
    double elem34 = elementary_margin(eta3, eta4);

    CheckReport rep;
    rep.name = "lemma-2-3-chain";
    rep.inputs_digest = fnv_digest(G.name() + "|delta=" + std::to_string(delta));
    rep.tolerance = tolerance;
    double bound = lemma_chain_bound(delta);
    bool holder_ok = hypothesis <= holder_mid + tolerance && holder_mid <= 1.0 + tolerance;
    bool elem_ok = elem12 >= -tolerance && elem34 >= -tolerance;
    bool concl_ok = hypothesis < 1.0 - delta || conclusion <= bound + tolerance;
    rep.quantities = {{"hypothesis", hypothesis}, {"holder_mid", holder_mid},
                      {"conclusion", conclusion}, {"chain_bound", bound},
                      {"elem_margin_12", elem12}, {"elem_margin_34", elem34}};
    rep.pass = holder_ok && elem_ok && concl_ok;
    return rep;
}

double almost_invariance_defect(const ElementSet& F, const Element& gamma, const Element& s) {
    const Group& G = F.group();
    // Row support of the corner of lambda_gamma: A = F cap gamma F.
    std::vector<Element> A;
    std::unordered_set<Element, ElementHash> Aset;
    for (const auto& u : F.elements()) {
        if (F.contains(G.multiply(G.inverse(gamma), u))) {
            A.push_back(u);
            Aset.insert(u);
        }
    }
    if (A.empty()) throw GroupError("empty corner support");
    // eta^2 is uniform on A; the defect squared is |A symdiff sA| / |A|.
    std::size_t in_both = 0;
    for (const auto& u : A)
        if (Aset.contains(G.multiply(s, u))) ++in_both;
    auto symdiff = 2 * (A.size() - in_both);
    return std::sqrt(static_cast<double>(symdiff) / static_cast<double>(A.size()));
}

CheckReport check_log_convexity(const MultiplierSymbol& phi, const std::vector<PNorm>& p_grid,
                                const AscentOptions& opts) {
    if (p_grid.size() < 3) throw SchattenError("log-convexity needs at least three grid points");
    std::vector<double> values;
    for (const auto& p : p_grid) values.push_back(fourier_norm_est(phi, p, opts).value);

    const double slack = 3.0 * opts.tol;
    double worst = -1.0;
    bool ok = true;
    for (std::size_t i = 0; i + 2 < p_grid.size(); ++i) {
        double h1 = p_grid[i].reciprocal(), h2 = p_grid[i + 1].reciprocal(),
               h3 = p_grid[i + 2].reciprocal();
        if (std::abs(h2 - (h1 + h3) / 2.0) > 1e-12)
            throw SchattenError("grid lacks the midpoint structure in 1/p");
        if (values[i] <= 0.0 || values[i + 1] <= 0.0 || values[i + 2] <= 0.0) continue;
        double violation =
            std::log(values[i + 1]) - (std::log(values[i]) + std::log(values[i + 2])) / 2.0;
        worst = std::max(worst, violation);
        if (violation > slack) ok = false;
    }
    CheckReport rep;
    rep.name = "log-convexity";
    rep.inputs_digest = fnv_digest(phi.group().name() + "|grid=" + std::to_string(p_grid.size()));
    rep.tolerance = slack;
    rep.seed = opts.seed;
    rep.quantities.emplace_back("worst_violation", worst);
    for (std::size_t i = 0; i < values.size(); ++i)
        rep.quantities.emplace_back("value_" + p_grid[i].str(), values[i]);
    rep.pass = ok;
    return rep;
}

std::vector<CurvePoint> free_group_contrast(const GroupAlgebraElement& x, int p_even,
                                            const std::vector<int>& radii) {
    if (!dynamic_cast<const FreeGroup*>(&x.group()))
        throw GroupError("contrast curve is defined over free groups");
    double xnorm = lp_norm_moment_oracle(x, p_even);
    std::vector<CurvePoint> curve;
    for (int r : radii) {
        ElementSet F = folner_set(x.group_ptr(), r);
        CurvePoint pt;
        pt.radius = r;
        pt.set_size = F.size();
        pt.value = normalized_corner_norm(x, F, PNorm(static_cast<double>(p_even)));
        pt.ratio = xnorm > 0 ? pt.value / xnorm : 0.0;
        curve.push_back(pt);
    }
    return curve;
}

}  // namespace schurlab
