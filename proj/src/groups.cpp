#include "schurlab/groups.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <sstream>

namespace schurlab {

std::size_t Group::order() const {
    throw GroupError("order() called on an infinite group");
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> cayley, std::string name)
    : cayley_(std::move(cayley)), name_(std::move(name)) {
    order_ = cayley_.size();
    if (order_ == 0 || order_ > kMaxOrder)
        throw GroupError("Cayley table order must be in 1.." + std::to_string(kMaxOrder));
    const int n = static_cast<int>(order_);
    for (int r = 0; r < n; ++r) {
        if (cayley_[r].size() != order_)
            throw GroupError("Cayley table row " + std::to_string(r) + " is not of length " +
                             std::to_string(n));
        for (int c = 0; c < n; ++c)
            if (cayley_[r][c] < 0 || cayley_[r][c] >= n)
                throw GroupError("Cayley entry out of range at (" + std::to_string(r) + "," +
                                 std::to_string(c) + ")");
    }
    // Latin square: each row and each column is a permutation.
    for (int r = 0; r < n; ++r) {
        std::vector<bool> seen(order_, false);
        for (int c = 0; c < n; ++c) {
            if (seen[cayley_[r][c]])
                throw GroupError("row " + std::to_string(r) + " of the Cayley table repeats entry " +
                                 std::to_string(cayley_[r][c]) + ": not a Latin square");
            seen[cayley_[r][c]] = true;
        }
    }
    for (int c = 0; c < n; ++c) {
        std::vector<bool> seen(order_, false);
        for (int r = 0; r < n; ++r) {
            if (seen[cayley_[r][c]])
                throw GroupError("column " + std::to_string(c) +
                                 " of the Cayley table repeats entry " +
                                 std::to_string(cayley_[r][c]) + ": not a Latin square");
            seen[cayley_[r][c]] = true;
        }
    }
    // Identity: the unique e with e*g = g*e = g.
    int id = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int g = 0; g < n && ok; ++g)
            ok = (cayley_[e][g] == g) && (cayley_[g][e] == g);
        if (ok) {
            id = e;
            break;
        }
    }
    if (id < 0) throw GroupError("Cayley table has no two-sided identity");
    identity_ = id;
    inverse_.assign(order_, -1);
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h) {
            if (cayley_[g][h] == identity_ && cayley_[h][g] == identity_) {
                inverse_[g] = h;
                break;
            }
        }
        if (inverse_[g] < 0)
            throw GroupError("element " + std::to_string(g) + " has no two-sided inverse");
    }
    // Exhaustive associativity check (order <= 512 keeps this affordable).
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (cayley_[cayley_[a][b]][c] != cayley_[a][cayley_[b][c]])
                    throw GroupError("associativity fails at triple (" + std::to_string(a) + "," +
                                     std::to_string(b) + "," + std::to_string(c) + ")");
}

Element FiniteGroup::multiply(const Element& a, const Element& b) const {
    return Element{{cayley_[a.word.at(0)][b.word.at(0)]}};
}

Element FiniteGroup::inverse(const Element& a) const {
    return Element{{inverse_[a.word.at(0)]}};
}

std::string FiniteGroup::format(const Element& e) const {
    return std::to_string(e.word.at(0));
}

Element FiniteGroup::parse(std::string_view text) const {
    int idx = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), idx);
    if (ec != std::errc{} || p != text.data() + text.size() || idx < 0 ||
        idx >= static_cast<int>(order_))
        throw GroupError("cannot parse '" + std::string(text) + "' as an element index");
    return Element{{idx}};
}

// ---------------------------------------------------------------------------
// LatticeGroup

LatticeGroup::LatticeGroup(int dim) : dim_(dim) {
    if (dim < 1 || dim > 8) throw GroupError("lattice dimension must be in 1..8");
}

Element LatticeGroup::multiply(const Element& a, const Element& b) const {
    Element r = a;
    for (int i = 0; i < dim_; ++i) r.word[i] += b.word.at(i);
    return r;
}

Element LatticeGroup::inverse(const Element& a) const {
    Element r = a;
    for (int& v : r.word) v = -v;
    return r;
}

std::string LatticeGroup::name() const { return "zd:" + std::to_string(dim_); }

std::string LatticeGroup::format(const Element& e) const {
    std::string s;
    for (int i = 0; i < dim_; ++i) {
        if (i) s += ',';
        s += std::to_string(e.word[i]);
    }
    return s;
}

Element LatticeGroup::parse(std::string_view text) const {
    Element e;
    std::string buf(text);
    std::replace(buf.begin(), buf.end(), ',', ' ');
    std::istringstream in(buf);
    int v;
    while (in >> v) e.word.push_back(v);
    if (static_cast<int>(e.word.size()) != dim_)
        throw GroupError("lattice element '" + std::string(text) + "' must have " +
                         std::to_string(dim_) + " coordinates");
    return e;
}

// ---------------------------------------------------------------------------
// FreeGroup

FreeGroup::FreeGroup(int rank) : rank_(rank) {
    if (rank < 1 || rank > 26) throw GroupError("free group rank must be in 1..26");
}

Element FreeGroup::multiply(const Element& a, const Element& b) const {
    Element r = a;
    for (int letter : b.word) {
        if (!r.word.empty() && r.word.back() == -letter)
            r.word.pop_back();
        else
            r.word.push_back(letter);
    }
    return r;
}

Element FreeGroup::inverse(const Element& a) const {
    Element r;
    r.word.reserve(a.word.size());
    for (auto it = a.word.rbegin(); it != a.word.rend(); ++it) r.word.push_back(-*it);
    return r;
}

std::string FreeGroup::name() const { return "free:" + std::to_string(rank_); }

std::string FreeGroup::format(const Element& e) const {
    if (e.word.empty()) return "e";
    std::string s;
    for (int letter : e.word)
        s += static_cast<char>(letter > 0 ? ('a' + letter - 1) : ('A' - letter - 1));
    return s;
}

Element FreeGroup::parse(std::string_view text) const {
    Element e;
    if (text == "e" || text.empty()) return e;
    for (char c : text) {
        int letter;
        if (c >= 'a' && c < 'a' + rank_)
            letter = c - 'a' + 1;
        else if (c >= 'A' && c < 'A' + rank_)
            letter = -(c - 'A' + 1);
        else
            throw GroupError("invalid free-group letter '" + std::string(1, c) + "'");
        if (!e.word.empty() && e.word.back() == -letter)
            e.word.pop_back();
        else
            e.word.push_back(letter);
    }
    return e;
}

std::vector<Element> FreeGroup::generators_and_inverses() const {
    std::vector<Element> out;
    for (int i = 1; i <= rank_; ++i) {
        out.push_back(Element{{i}});
        out.push_back(Element{{-i}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

int parse_positive(std::string_view s, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v <= 0)
        throw GroupError(std::string("invalid ") + what + " '" + std::string(s) + "'");
    return v;
}

std::shared_ptr<const Group> make_zmod(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return std::make_shared<FiniteGroup>(std::move(t), "zmod:" + std::to_string(n));
}

// Dihedral group of order 2n; element index j*n + i stands for r^i s^j.
std::shared_ptr<const Group> make_dihedral(int n) {
    const int order = 2 * n;
    auto idx = [n](int i, int j) { return j * n + i; };
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 2; ++j)
            for (int i2 = 0; i2 < n; ++i2)
                for (int j2 = 0; j2 < 2; ++j2) {
                    int ri = ((i + (j ? -i2 : i2)) % n + n) % n;
                    t[idx(i, j)][idx(i2, j2)] = idx(ri, (j + j2) % 2);
                }
    return std::make_shared<FiniteGroup>(std::move(t), "dihedral:" + std::to_string(n));
}

std::shared_ptr<const Group> make_sym(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const int order = static_cast<int>(perms.size());
    if (order > static_cast<int>(FiniteGroup::kMaxOrder))
        throw GroupError("sym:" + std::to_string(n) + " exceeds the order cap");
    std::unordered_map<std::string, int> lookup;
    auto key = [](const std::vector<int>& q) {
        std::string k;
        for (int v : q) k += static_cast<char>('0' + v);
        return k;
    };
    for (int i = 0; i < order; ++i) lookup[key(perms[i])] = i;
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
            t[a][b] = lookup.at(key(c));
        }
    return std::make_shared<FiniteGroup>(std::move(t), "sym:" + std::to_string(n));
}

}  // namespace

std::shared_ptr<const Group> builtin_group(std::string_view spec) {
    auto pos = spec.find(':');
    if (pos == std::string_view::npos)
        throw GroupError("group spec '" + std::string(spec) + "' must look like kind:n");
    std::string_view kind = spec.substr(0, pos);
    std::string_view arg = spec.substr(pos + 1);
    if (kind == "zmod") {
        int n = parse_positive(arg, "zmod order");
        if (n > static_cast<int>(FiniteGroup::kMaxOrder))
            throw GroupError("zmod order exceeds the cap");
        return make_zmod(n);
    }
    if (kind == "dihedral") {
        int n = parse_positive(arg, "dihedral parameter");
        if (2 * n > static_cast<int>(FiniteGroup::kMaxOrder))
            throw GroupError("dihedral order exceeds the cap");
        return make_dihedral(n);
    }
    if (kind == "sym") {
        int n = parse_positive(arg, "sym degree");
        if (n > 6) throw GroupError("sym degree must be at most 6");
        return make_sym(n);
    }
    if (kind == "zd") return std::make_shared<LatticeGroup>(parse_positive(arg, "lattice dimension"));
    if (kind == "free") return std::make_shared<FreeGroup>(parse_positive(arg, "free rank"));
    throw GroupError("unknown group kind '" + std::string(kind) + "'");
}

FiniteGroup finite_group_from_csv(const std::string& csv_text) {
    std::vector<std::vector<int>> table;
    std::istringstream in(csv_text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::vector<int> row;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        int v;
        while (ls >> v) row.push_back(v);
        if (!ls.eof())
            throw GroupError("line " + std::to_string(lineno) + ": non-integer Cayley entry");
        table.push_back(std::move(row));
    }
    return FiniteGroup(std::move(table), "csv");
}

// ---------------------------------------------------------------------------
// ElementSet

ElementSet::ElementSet(std::shared_ptr<const Group> group, std::vector<Element> elems)
    : group_(std::move(group)), elems_(std::move(elems)) {
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        auto [it, fresh] = index_.emplace(elems_[i], i);
        if (!fresh) throw GroupError("duplicate element in ElementSet");
    }
}

std::optional<std::size_t> ElementSet::index_of(const Element& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

ElementSet folner_set(std::shared_ptr<const Group> group, int radius, std::size_t cap) {
    if (radius < 0) throw GroupError("radius must be nonnegative");
    std::vector<Element> elems;
    if (auto* fg = dynamic_cast<const FiniteGroup*>(group.get())) {
        for (int i = 0; i < static_cast<int>(fg->order()); ++i) elems.push_back(Element{{i}});
    } else if (auto* lg = dynamic_cast<const LatticeGroup*>(group.get())) {
        const int d = lg->dim();
        const int side = std::max(radius, 0);
        double count = 1;
        for (int i = 0; i < d; ++i) count *= side;
        if (count > static_cast<double>(cap))
            throw GroupError("box size exceeds the element-set cap");
        // Lexicographic enumeration of [0,side)^d.
        std::vector<int> coord(d, 0);
        if (side > 0) {
            while (true) {
                elems.push_back(Element{coord});
                int k = d - 1;
                while (k >= 0 && ++coord[k] == side) coord[k--] = 0;
                if (k < 0) break;
            }
        }
    } else if (auto* fr = dynamic_cast<const FreeGroup*>(group.get())) {
        // BFS ball of the word metric.
        std::deque<Element> frontier{fr->identity()};
        std::unordered_map<Element, int, ElementHash> dist{{fr->identity(), 0}};
        elems.push_back(fr->identity());
        auto gens = fr->generators_and_inverses();
        while (!frontier.empty()) {
            Element cur = frontier.front();
            frontier.pop_front();
            int dcur = dist.at(cur);
            if (dcur >= radius) continue;
            for (const auto& g : gens) {
                Element next = fr->multiply(cur, g);
                if (dist.emplace(next, dcur + 1).second) {
                    elems.push_back(next);
                    if (elems.size() > cap) throw GroupError("ball size exceeds the element-set cap");
                    frontier.push_back(next);
                }
            }
        }
    } else {
        throw GroupError("unsupported group kind for folner_set");
    }
    if (elems.size() > cap) throw GroupError("element-set size exceeds the cap");
    return ElementSet(std::move(group), std::move(elems));
}

double folner_defect(const ElementSet& F, const Element& g) {
    if (F.size() == 0) throw GroupError("folner_defect of an empty set");
    const Group& G = F.group();
    std::size_t hits = 0;
    for (const auto& e : F.elements())
        if (F.contains(G.multiply(g, e))) ++hits;
    return static_cast<double>(hits) / static_cast<double>(F.size());
}

Matrix lambda_matrix(const Element& g, const ElementSet& F) {
    const Group& G = F.group();
    const auto n = static_cast<Eigen::Index>(F.size());
    Matrix M = Matrix::Zero(n, n);
    // entry(s,t) = 1 iff s t^{-1} = g, i.e. s = g t.
    for (Eigen::Index t = 0; t < n; ++t) {
        Element s = G.multiply(g, F.at(static_cast<std::size_t>(t)));
        if (auto si = F.index_of(s)) M(static_cast<Eigen::Index>(*si), t) = 1.0;
    }
    return M;
}

}  // namespace schurlab
