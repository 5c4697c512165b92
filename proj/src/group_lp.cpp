#include "schurlab/group_lp.hpp"

#include <cmath>
#include <numbers>

namespace schurlab {

// ---------------------------------------------------------------------------
// GroupAlgebraElement

GroupAlgebraElement::GroupAlgebraElement(std::shared_ptr<const Group> group,
                                         std::vector<Element> support,
                                         std::vector<Complex> coefficients)
    : group_(std::move(group)) {
    if (support.size() != coefficients.size())
        throw GroupError("support and coefficient lists differ in length");
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (coefficients[i] == Complex(0.0)) continue;
        auto it = index_.find(support[i]);
        if (it != index_.end()) {
            coeff_[it->second] += coefficients[i];
        } else {
            index_.emplace(support[i], support_.size());
            support_.push_back(std::move(support[i]));
            coeff_.push_back(coefficients[i]);
        }
    }
    // Merging may have produced zeros; sweep them out.
    std::vector<Element> sup;
    std::vector<Complex> co;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (coeff_[i] == Complex(0.0)) continue;
        sup.push_back(std::move(support_[i]));
        co.push_back(coeff_[i]);
    }
    support_ = std::move(sup);
    coeff_ = std::move(co);
    index_.clear();
    for (std::size_t i = 0; i < support_.size(); ++i) index_.emplace(support_[i], i);
}

Complex GroupAlgebraElement::coeff(const Element& g) const {
    auto it = index_.find(g);
    return it == index_.end() ? Complex(0.0) : coeff_[it->second];
}

Matrix GroupAlgebraElement::regular_matrix() const {
    if (!group_->finite()) throw GroupError("regular_matrix needs a finite group");
    auto F = folner_set(group_, 0);
    const auto n = static_cast<Eigen::Index>(F.size());
    Matrix X = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < support_.size(); ++i)
        X += coeff_[i] * lambda_matrix(support_[i], F);
    return X;
}

GroupAlgebraElement GroupAlgebraElement::lambda(std::shared_ptr<const Group> group,
                                                const Element& g) {
    return GroupAlgebraElement(std::move(group), {g}, {Complex(1.0)});
}

// ---------------------------------------------------------------------------
// MultiplierSymbol

MultiplierSymbol::MultiplierSymbol(std::shared_ptr<const Group> group,
                                   std::unordered_map<Element, Complex, ElementHash> table,
                                   std::optional<Complex> default_value, Evaluator evaluator)
    : group_(std::move(group)),
      table_(std::move(table)),
      default_(default_value),
      evaluator_(std::move(evaluator)) {
    if (group_->finite() && strict()) {
        for (std::size_t i = 0; i < group_->order(); ++i)
            if (!table_.contains(Element{{static_cast<int>(i)}}))
                throw LookupError("symbol table on a finite group must be total (missing element " +
                                  std::to_string(i) + ")");
    }
}

Complex MultiplierSymbol::at(const Element& g) const {
    auto it = table_.find(g);
    if (it != table_.end()) return it->second;
    if (evaluator_) return evaluator_(*group_, g);
    if (default_) return *default_;
    throw LookupError("symbol undefined at element '" + group_->format(g) + "' (strict mode)");
}

MultiplierSymbol MultiplierSymbol::dual() const {
    std::unordered_map<Element, Complex, ElementHash> t;
    for (const auto& [g, v] : table_) t.emplace(group_->inverse(g), v);
    Evaluator ev;
    if (evaluator_)
        ev = [inner = evaluator_](const Group& G, const Element& g) {
            return inner(G, G.inverse(g));
        };
    return MultiplierSymbol(group_, std::move(t), default_, std::move(ev));
}

MultiplierSymbol MultiplierSymbol::conjugated() const {
    std::unordered_map<Element, Complex, ElementHash> t;
    for (const auto& [g, v] : table_) t.emplace(g, std::conj(v));
    Evaluator ev;
    if (evaluator_)
        ev = [inner = evaluator_](const Group& G, const Element& g) {
            return std::conj(inner(G, g));
        };
    std::optional<Complex> d = default_;
    if (d) d = std::conj(*d);
    return MultiplierSymbol(group_, std::move(t), d, std::move(ev));
}

MultiplierSymbol MultiplierSymbol::builtin(const std::string& spec,
                                           std::shared_ptr<const Group> group) {
    auto arg_of = [&](const std::string& prefix) {
        return spec.substr(prefix.size());
    };
    std::unordered_map<Element, Complex, ElementHash> table;
    if (spec == "one") {
        if (group->finite())
            for (std::size_t i = 0; i < group->order(); ++i)
                table.emplace(Element{{static_cast<int>(i)}}, Complex(1.0));
        return MultiplierSymbol(group, std::move(table),
                                group->finite() ? std::nullopt : std::optional<Complex>(1.0));
    }
    if (spec.starts_with("delta:")) {
        Element g = group->parse(arg_of("delta:"));
        if (group->finite())
            for (std::size_t i = 0; i < group->order(); ++i)
                table.emplace(Element{{static_cast<int>(i)}}, Complex(0.0));
        table[g] = Complex(1.0);
        return MultiplierSymbol(group, std::move(table),
                                group->finite() ? std::nullopt : std::optional<Complex>(0.0));
    }
    if (spec.starts_with("two-point:")) {
        if (!group->finite() || group->order() != 2)
            throw LookupError("two-point symbol is defined on zmod:2 only");
        double c = std::stod(arg_of("two-point:"));
        table.emplace(Element{{0}}, Complex(1.0));
        table.emplace(Element{{1}}, Complex(c));
        return MultiplierSymbol(group, std::move(table));
    }
    if (spec.starts_with("gaussian:")) {
        if (!dynamic_cast<const LatticeGroup*>(group.get()))
            throw LookupError("gaussian symbol is defined on lattices only");
        double sigma = std::stod(arg_of("gaussian:"));
        if (!(sigma > 0)) throw LookupError("gaussian width must be positive");
        auto ev = [sigma](const Group&, const Element& g) {
            double n2 = 0;
            for (int v : g.word) n2 += static_cast<double>(v) * v;
            return Complex(std::exp(-n2 / (2.0 * sigma * sigma)));
        };
        return MultiplierSymbol(group, {}, std::nullopt, ev);
    }
    if (spec.starts_with("ball-indicator:")) {
        int r = std::stoi(arg_of("ball-indicator:"));
        if (r < 0) throw LookupError("ball radius must be nonnegative");
        auto ev = [r](const Group& G, const Element& g) {
            long len = 0;
            if (dynamic_cast<const FreeGroup*>(&G)) {
                len = static_cast<long>(g.word.size());
            } else {
                for (int v : g.word) len += std::abs(v);
            }
            return Complex(len <= r ? 1.0 : 0.0);
        };
        if (group->finite()) {
            for (std::size_t i = 0; i < group->order(); ++i) {
                Element g{{static_cast<int>(i)}};
                table.emplace(g, ev(*group, g));
            }
            return MultiplierSymbol(group, std::move(table));
        }
        return MultiplierSymbol(group, {}, std::nullopt, ev);
    }
    throw LookupError("unknown builtin symbol '" + spec + "'");
}

// ---------------------------------------------------------------------------
// Norms

double lp_norm_finite(const GroupAlgebraElement& x, const PNorm& p) {
    if (!x.group().finite()) throw GroupError("lp_norm_finite needs a finite group");
    Matrix X = x.regular_matrix();
    const double n = static_cast<double>(x.group().order());
    if (p.is_inf()) return schatten_norm(X, p);
    return schatten_norm(X, p) / std::pow(n, 1.0 / p.value());
}

double lp_norm_Z_oracle(const GroupAlgebraElement& x, const PNorm& p, int initial_grid) {
    auto* lat = dynamic_cast<const LatticeGroup*>(&x.group());
    if (!lat || lat->dim() != 1) throw GroupError("lp_norm_Z_oracle is defined over Z only");
    if (x.support_size() == 0) return 0.0;
    const auto& sup = x.support();
    const auto& co = x.coefficients();

    auto eval = [&](int M) {
        double acc = 0.0;
        double mx = 0.0;
        for (int j = 0; j < M; ++j) {
            double theta = 2.0 * std::numbers::pi * j / M;
            Complex f = 0.0;
            for (std::size_t i = 0; i < sup.size(); ++i)
                f += co[i] * std::polar(1.0, sup[i].word[0] * theta);
            double a = std::abs(f);
            mx = std::max(mx, a);
            if (!p.is_inf()) acc += std::pow(a, p.value());
        }
        if (p.is_inf()) return mx;
        return std::pow(acc / M, 1.0 / p.value());
    };

    int M = std::max(initial_grid, 8);
    double prev = eval(M);
    for (int iter = 0; iter < 24; ++iter) {
        M *= 2;
        double cur = eval(M);
        if (std::abs(cur - prev) <= 1e-9 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

double lp_norm_moment_oracle(const GroupAlgebraElement& x, int p_even) {
    if (p_even != 2 && p_even != 4 && p_even != 6 && p_even != 8)
        throw GroupError("moment oracle needs p in {2,4,6,8}");
    const auto n = x.support_size();
    if (n == 0) return 0.0;
    double budget = 1.0;
    for (int i = 0; i < p_even; ++i) budget *= static_cast<double>(n);
    if (budget > 1e7) throw GroupError("moment oracle budget exceeded");

    const Group& G = x.group();
    const auto& sup = x.support();
    const auto& co = x.coefficients();
    const int m = p_even / 2;

    // tau((x*x)^m): sum over (g_1,h_1,...,g_m,h_m) with
    // g_1^{-1} h_1 ... g_m^{-1} h_m = e of prod conj(x_{g_i}) x_{h_i}.
    Complex total = 0.0;
    std::vector<std::size_t> idx(2 * static_cast<std::size_t>(m), 0);
    std::vector<Element> partial(2 * static_cast<std::size_t>(m) + 1);
    partial[0] = G.identity();
    std::size_t depth = 0;
    while (true) {
        if (depth == idx.size()) {
            if (partial[depth] == G.identity()) {
                Complex prod = 1.0;
                for (int i = 0; i < m; ++i)
                    prod *= std::conj(co[idx[2 * i]]) * co[idx[2 * i + 1]];
                total += prod;
            }
            // Backtrack.
            while (depth > 0 && idx[depth - 1] + 1 == n) idx[--depth] = 0;
            if (depth == 0) break;
            ++idx[depth - 1];
            --depth;
            continue;
        }
        const Element& factor =
            (depth % 2 == 0) ? G.inverse(sup[idx[depth]]) : sup[idx[depth]];
        partial[depth + 1] = G.multiply(partial[depth], factor);
        ++depth;
    }
    double tr = std::max(total.real(), 0.0);
    return std::pow(tr, 1.0 / p_even);
}

// ---------------------------------------------------------------------------
// Corners and Fourier multiplication

Matrix corner(const GroupAlgebraElement& x, const ElementSet& F, CornerOrientation orientation) {
    const Group& G = F.group();
    const auto n = static_cast<Eigen::Index>(F.size());
    Matrix C(n, n);
    for (Eigen::Index s = 0; s < n; ++s)
        for (Eigen::Index t = 0; t < n; ++t) {
            const Element& es = F.at(static_cast<std::size_t>(s));
            const Element& et = F.at(static_cast<std::size_t>(t));
            Element prod = orientation == CornerOrientation::LambdaKernel
                               ? G.multiply(es, G.inverse(et))
                               : G.multiply(et, G.inverse(es));
            C(s, t) = x.coeff(prod);
        }
    return C;
}

double normalized_corner_norm(const GroupAlgebraElement& x, const ElementSet& F, const PNorm& p,
                              CornerOrientation orientation) {
    double norm = schatten_norm(corner(x, F, orientation), p);
    if (p.is_inf()) return norm;
    return norm / std::pow(static_cast<double>(F.size()), 1.0 / p.value());
}

GroupAlgebraElement fourier_multiply(const MultiplierSymbol& phi, const GroupAlgebraElement& x) {
    std::vector<Element> sup = x.support();
    std::vector<Complex> co = x.coefficients();
    for (std::size_t i = 0; i < sup.size(); ++i) co[i] *= phi.at(sup[i]);
    return GroupAlgebraElement(x.group_ptr(), std::move(sup), std::move(co));
}

Matrix symbol_check_matrix(const MultiplierSymbol& phi, const ElementSet& F) {
    const Group& G = F.group();
    const auto n = static_cast<Eigen::Index>(F.size());
    Matrix S(n, n);
    for (Eigen::Index s = 0; s < n; ++s)
        for (Eigen::Index t = 0; t < n; ++t)
            S(s, t) = phi.at(G.multiply(F.at(static_cast<std::size_t>(s)),
                                        G.inverse(F.at(static_cast<std::size_t>(t)))));
    return S;
}

}  // namespace schurlab
