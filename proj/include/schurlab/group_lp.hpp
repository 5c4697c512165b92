#ifndef SCHURLAB_GROUP_LP_HPP
#define SCHURLAB_GROUP_LP_HPP

#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "schurlab/groups.hpp"
#include "schurlab/schatten.hpp"

namespace schurlab {

class LookupError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Finitely supported x = sum_g x_g lambda_g. Zero coefficients are dropped,
// duplicate support elements merged.
class GroupAlgebraElement {
  public:
    GroupAlgebraElement() = default;
    GroupAlgebraElement(std::shared_ptr<const Group> group, std::vector<Element> support,
                        std::vector<Complex> coefficients);

    const Group& group() const { return *group_; }
    std::shared_ptr<const Group> group_ptr() const { return group_; }
    std::size_t support_size() const { return support_.size(); }
    const std::vector<Element>& support() const { return support_; }
    const std::vector<Complex>& coefficients() const { return coeff_; }
    // Coefficient of g; zero outside the support.
    Complex coeff(const Element& g) const;

    // Full-group matrix sum x_g lambda_matrix(g, G); finite groups only.
    Matrix regular_matrix() const;

    static GroupAlgebraElement lambda(std::shared_ptr<const Group> group, const Element& g);

  private:
    std::shared_ptr<const Group> group_;
    std::vector<Element> support_;
    std::vector<Complex> coeff_;
    std::unordered_map<Element, std::size_t, ElementHash> index_;
};

// phi: G -> C. Lookup order: explicit table, then evaluator function (for
// builtin decaying symbols on infinite groups), then the default value. With
// neither evaluator nor default the symbol is strict and a missing element
// throws. For finite groups a table-only symbol must be total.
class MultiplierSymbol {
  public:
    using Evaluator = std::function<Complex(const Group&, const Element&)>;

    MultiplierSymbol() = default;
    MultiplierSymbol(std::shared_ptr<const Group> group,
                     std::unordered_map<Element, Complex, ElementHash> table,
                     std::optional<Complex> default_value = std::nullopt,
                     Evaluator evaluator = nullptr);

    const Group& group() const { return *group_; }
    std::shared_ptr<const Group> group_ptr() const { return group_; }
    Complex at(const Element& g) const;
    bool strict() const { return !default_.has_value() && !evaluator_; }
    const std::unordered_map<Element, Complex, ElementHash>& table() const { return table_; }
    std::optional<Complex> default_value() const { return default_; }

    // phi~(s) = phi(s^{-1}).
    MultiplierSymbol dual() const;
    // Entrywise complex conjugate.
    MultiplierSymbol conjugated() const;

    // Builtins: one, delta:g, two-point:c, gaussian:sigma, ball-indicator:r.
    static MultiplierSymbol builtin(const std::string& spec, std::shared_ptr<const Group> group);

  private:
    std::shared_ptr<const Group> group_;
    std::unordered_map<Element, Complex, ElementHash> table_;
    std::optional<Complex> default_;
    Evaluator evaluator_;
};

// (Tr(|X|^p)/|G|)^{1/p} with X the regular representation matrix; p = inf is
// the operator norm. Finite groups only; the normalization makes
// ||lambda_g||_p = 1.
double lp_norm_finite(const GroupAlgebraElement& x, const PNorm& p);

// L^p norm over Z via the circle: ((1/M) sum_j |sum_n x_n e^{in theta_j}|^p)^{1/p}
// on a uniform grid, doubled until successive values differ by < 1e-9
// relative. p = inf is the grid maximum under the same doubling rule.
double lp_norm_Z_oracle(const GroupAlgebraElement& x, const PNorm& p, int initial_grid = 64);

// tau((x*x)^{p/2})^{1/p} by exhaustive summation over index tuples whose
// alternating product is the identity. p in {2,4,6,8}; support^p <= 1e7.
double lp_norm_moment_oracle(const GroupAlgebraElement& x, int p_even);

enum class CornerOrientation {
    LambdaKernel,    // entry(s,t) = x(s t^{-1})
    FourierAlgebra,  // entry(s,t) = x(t s^{-1})
};

// P_F x P_F as an |F| x |F| matrix of coefficients looked up on products.
Matrix corner(const GroupAlgebraElement& x, const ElementSet& F,
              CornerOrientation orientation = CornerOrientation::LambdaKernel);

// schatten_norm(corner(x,F), p) / |F|^{1/p}.
double normalized_corner_norm(const GroupAlgebraElement& x, const ElementSet& F, const PNorm& p,
                              CornerOrientation orientation = CornerOrientation::LambdaKernel);

// lambda_g coefficient map: x_g -> phi(g) x_g; zero results leave the support.
GroupAlgebraElement fourier_multiply(const MultiplierSymbol& phi, const GroupAlgebraElement& x);

// The symbol matrix phi-check(s,t) = phi(s t^{-1}) on F x F.
Matrix symbol_check_matrix(const MultiplierSymbol& phi, const ElementSet& F);

}  // namespace schurlab

#endif
