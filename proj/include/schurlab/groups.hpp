#ifndef SCHURLAB_GROUPS_HPP
#define SCHURLAB_GROUPS_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace schurlab {

using Matrix = Eigen::MatrixXcd;

// Group element with a flat integer payload. The interpretation belongs to
// the owning group: a single index for finite groups, lattice coordinates
// for Z^d, a reduced word of signed letters (+i / -i for the i-th generator
// and its inverse, 1-based) for free groups.
struct Element {
    std::vector<int> word;

    bool operator==(const Element&) const = default;
};

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (int v : e.word) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

class GroupError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class Group {
  public:
    virtual ~Group() = default;

    virtual Element identity() const = 0;
    virtual Element multiply(const Element& a, const Element& b) const = 0;
    virtual Element inverse(const Element& a) const = 0;
    virtual bool finite() const = 0;
    // Order of the group; throws for infinite groups.
    virtual std::size_t order() const;
    virtual std::string name() const = 0;
    virtual std::string format(const Element& e) const = 0;
    virtual Element parse(std::string_view text) const = 0;
};

// Finite group given by its Cayley table. Construction validates the Latin
// square property, the identity, inverses, and full associativity.
class FiniteGroup final : public Group {
  public:
    static constexpr std::size_t kMaxOrder = 512;

    explicit FiniteGroup(std::vector<std::vector<int>> cayley, std::string name = "finite");

    Element identity() const override { return Element{{identity_}}; }
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    bool finite() const override { return true; }
    std::size_t order() const override { return order_; }
    std::string name() const override { return name_; }
    std::string format(const Element& e) const override;
    Element parse(std::string_view text) const override;

    int multiply_idx(int a, int b) const { return cayley_[a][b]; }
    int inverse_idx(int a) const { return inverse_[a]; }
    int identity_idx() const { return identity_; }

  private:
    std::size_t order_ = 0;
    std::vector<std::vector<int>> cayley_;
    int identity_ = 0;
    std::vector<int> inverse_;
    std::string name_;
};

// The integer lattice Z^d with componentwise addition.
class LatticeGroup final : public Group {
  public:
    explicit LatticeGroup(int dim);

    Element identity() const override { return Element{std::vector<int>(dim_, 0)}; }
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    bool finite() const override { return false; }
    std::string name() const override;
    std::string format(const Element& e) const override;
    Element parse(std::string_view text) const override;

    int dim() const { return dim_; }

  private:
    int dim_;
};

// Free group F_k on k generators; elements are reduced words.
class FreeGroup final : public Group {
  public:
    explicit FreeGroup(int rank);

    Element identity() const override { return Element{}; }
    Element multiply(const Element& a, const Element& b) const override;
    Element inverse(const Element& a) const override;
    bool finite() const override { return false; }
    std::string name() const override;
    std::string format(const Element& e) const override;
    Element parse(std::string_view text) const override;

    int rank() const { return rank_; }
    std::vector<Element> generators_and_inverses() const;

  private:
    int rank_;
};

// Builds the group named by a spec string: zmod:n, dihedral:n, sym:n,
// zd:d, free:k.
std::shared_ptr<const Group> builtin_group(std::string_view spec);

// Parses a Cayley table from CSV text (n rows of n zero-based indices).
FiniteGroup finite_group_from_csv(const std::string& csv_text);

// Ordered set of distinct group elements; indexes matrix rows/columns.
class ElementSet {
  public:
    ElementSet() = default;
    ElementSet(std::shared_ptr<const Group> group, std::vector<Element> elems);

    std::size_t size() const { return elems_.size(); }
    const Element& at(std::size_t i) const { return elems_[i]; }
    std::optional<std::size_t> index_of(const Element& e) const;
    bool contains(const Element& e) const { return index_of(e).has_value(); }
    const Group& group() const { return *group_; }
    std::shared_ptr<const Group> group_ptr() const { return group_; }
    const std::vector<Element>& elements() const { return elems_; }

  private:
    std::shared_ptr<const Group> group_;
    std::vector<Element> elems_;
    std::unordered_map<Element, std::size_t, ElementHash> index_;
};

inline constexpr std::size_t kDefaultSetCap = 4096;

// The Folner-style truncation set: the whole group (finite case), the box
// [0,radius)^d (lattice), or the word ball of the given radius (free group;
// deliberately non-Folner, kept for contrast experiments).
ElementSet folner_set(std::shared_ptr<const Group> group, int radius,
                      std::size_t cap = kDefaultSetCap);

// |F cap gF| / |F|.
double folner_defect(const ElementSet& F, const Element& g);

// Truncated left-regular representation: entry(s,t) = 1 iff s t^{-1} = g.
Matrix lambda_matrix(const Element& g, const ElementSet& F);

}  // namespace schurlab

#endif
