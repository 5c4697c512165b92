#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "schurlab/engine.hpp"

using namespace schurlab;

namespace {

AscentOptions quick_opts(std::uint64_t seed, int restarts = 16) {
    AscentOptions o;
    o.seed = seed;
    o.restarts = restarts;
    return o;
}

MultiplierSymbol random_real_symbol(const std::shared_ptr<const Group>& g, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::unordered_map<Element, Complex, ElementHash> t;
    auto* fg = dynamic_cast<const FiniteGroup*>(g.get());
    for (std::size_t i = 0; i < fg->order(); ++i)
        t[Element{{static_cast<int>(i)}}] = rng.gaussian().real();
    return MultiplierSymbol(g, t);
}

double brute_force_schur_2x2(const Matrix& S, double p, int grid = 400) {
    // Exhaustive search over rank-one real inputs on the unit sphere plus a
    // coarse sweep over full real 2x2 matrices; a sanity oracle, not sharp.
    double best = 0.0;
    PNorm pn(p);
    SplitMix64 rng(12345);
    for (int k = 0; k < grid * grid; ++k) {
        Matrix X(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) X(i, j) = 2.0 * rng.uniform01() - 1.0;
        double denom = schatten_norm(X, pn);
        if (denom < 1e-12) continue;
        best = std::max(best, schatten_norm(schur_product(S, X), pn) / denom);
    }
    return best;
}

}  // namespace

TEST_CASE("SplitMix64 is deterministic") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    SplitMix64 c(42), d(43);
    CHECK(c.next() != d.next());
}

TEST_CASE("ascent step: identity map fixes, endpoints rejected") {
    auto apply = [](const Matrix& X) { return X; };
    Matrix X = Matrix::Identity(3, 3);
    Matrix X1 = ascent_step(apply, apply, X, PNorm(4.0));
    CHECK(schatten_norm(X1, PNorm(4.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(ascent_step(apply, apply, X, PNorm(1.0)));
    CHECK_THROWS(ascent_step(apply, apply, X, PNorm::infinity()));
    CHECK_THROWS(ascent_step(apply, apply, Matrix::Zero(3, 3), PNorm(4.0)));
}

TEST_CASE("ascent step: diagonal pattern pushes mass onto the diagonal") {
    Matrix D = Matrix::Identity(3, 3);
    auto apply = [&](const Matrix& X) { return schur_product(D, X); };
    Matrix X = Matrix::Ones(3, 3);
    for (int i = 0; i < 3; ++i) X = ascent_step(apply, apply, X, PNorm(4.0));
    Matrix off = X - schur_product(D, X);
    CHECK(off.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("ascent step is monotone on a random Schur problem") {
    SplitMix64 rng(8);
    Matrix S(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) S(i, j) = rng.gaussian();
    auto apply = [&](const Matrix& X) { return schur_product(S, X); };
    auto adj = [&](const Matrix& X) { return schur_product(S.conjugate(), X); };
    for (double p : {1.5, 2.0, 3.0, 4.0, 8.0}) {
        Matrix X(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) X(i, j) = rng.gaussian();
        PNorm pn(p);
        double prev = schatten_norm(apply(X), pn) / schatten_norm(X, pn);
        for (int it = 0; it < 40; ++it) {
            X = ascent_step(apply, adj, X, pn);
            double cur = schatten_norm(apply(X), pn) / schatten_norm(X, pn);
            CHECK(cur >= prev - 1e-11 * std::max(1.0, prev));
            prev = cur;
        }
    }
}

TEST_CASE("schur matrix estimates: identity symbol and p = 2 fast path") {
    Matrix ones = Matrix::Ones(4, 4);
    for (auto p : {PNorm(1.0), PNorm(2.0), PNorm(4.0), PNorm::infinity()}) {
        auto est = schur_matrix_norm_est(ones, p, quick_opts(3));
        CHECK(est.converged);
        CHECK(est.value == doctest::Approx(1.0).epsilon(1e-8));
    }

    SplitMix64 rng(9);
    Matrix S(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) S(i, j) = rng.gaussian();
    auto est = schur_matrix_norm_est(S, PNorm(2.0), quick_opts(4));
    CHECK(est.value == doctest::Approx(S.cwiseAbs().maxCoeff()).epsilon(1e-12));
}

TEST_CASE("p=2 fast path agrees with plain ascent") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        SplitMix64 rng(seed);
        Matrix S(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) S(i, j) = rng.gaussian();
        auto opts = quick_opts(seed);
        auto fast = schur_matrix_norm_est(S, PNorm(2.0), opts);
        opts.use_fast_paths = false;
        auto slow = schur_matrix_norm_est(S, PNorm(2.0), opts);
        CHECK(fast.value == doctest::Approx(slow.value).epsilon(1e-6));
    }
}

TEST_CASE("two-point Schur symbol on Z/2 reaches 2 at p = 4") {
    auto z2 = builtin_group("zmod:2");
    auto phi = MultiplierSymbol::builtin("two-point:2", z2);
    ElementSet G = folner_set(z2, 0);
    auto est = schur_norm_est(phi, G, PNorm(4.0), quick_opts(7));
    CHECK(est.converged);
    CHECK(est.value == doctest::Approx(2.0).epsilon(1e-6));

    Matrix S(2, 2);
    S << 1, 2, 2, 1;
    CHECK(brute_force_schur_2x2(S, 4.0) <= est.value + 1e-6);
}

TEST_CASE("zero symbol returns a converged zero") {
    auto z2 = builtin_group("zmod:2");
    MultiplierSymbol zero(z2, {{z2->parse("0"), 0.0}, {z2->parse("1"), 0.0}});
    auto est = fourier_norm_est(zero, PNorm(4.0), quick_opts(1));
    CHECK(est.converged);
    CHECK(est.value == 0.0);
}

TEST_CASE("fourier estimates on Z/2: closed forms across p") {
    auto z2 = builtin_group("zmod:2");
    auto two = MultiplierSymbol::builtin("two-point:2", z2);
    auto half = MultiplierSymbol::builtin("two-point:0.5", z2);
    for (auto p : {PNorm(1.0), PNorm(4.0 / 3.0), PNorm(2.0), PNorm(3.0), PNorm(4.0),
                   PNorm::infinity()}) {
        auto e2 = fourier_norm_est(two, p, quick_opts(11, 24));
        CHECK(e2.converged);
        CHECK(e2.value == doctest::Approx(2.0).epsilon(1e-4));
        auto eh = fourier_norm_est(half, p, quick_opts(12, 24));
        CHECK(eh.converged);
        CHECK(eh.value == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("estimates are self-certifying") {
    auto z4 = builtin_group("zmod:4");
    auto phi = random_real_symbol(z4, 21);
    ElementSet G = folner_set(z4, 0);
    for (auto p : {PNorm(1.0), PNorm(3.0), PNorm::infinity()}) {
        auto est = schur_norm_est(phi, G, p, quick_opts(5));
        REQUIRE(est.certificate.size() > 0);
        Matrix S = symbol_check_matrix(phi, G);
        double ratio = schatten_norm(schur_product(S, est.certificate), p) /
                       schatten_norm(est.certificate, p);
        CHECK(ratio == doctest::Approx(est.value).epsilon(1e-8));
    }
}

TEST_CASE("fourier duality: estimate of the dual symbol at q matches") {
    auto s3 = builtin_group("sym:3");
    auto phi = random_real_symbol(s3, 31);
    for (double p : {4.0 / 3.0, 3.0}) {
        auto direct = fourier_norm_est(phi, PNorm(p), quick_opts(6, 32));
        auto dual = fourier_norm_est(phi.dual(), PNorm(p).conjugate(), quick_opts(7, 32));
        CHECK(direct.value == doctest::Approx(dual.value).epsilon(1e-4));
    }
}

TEST_CASE("translation invariance of the Fourier norm") {
    auto s3 = builtin_group("sym:3");
    auto phi = random_real_symbol(s3, 41);
    SplitMix64 rng(55);
    auto base = fourier_norm_est(phi, PNorm(4.0), quick_opts(8, 32));
    for (int trial = 0; trial < 2; ++trial) {
        Element si{{static_cast<int>(rng.next() % 6)}};
        Element sj{{static_cast<int>(rng.next() % 6)}};
        std::unordered_map<Element, Complex, ElementHash> t;
        for (int g = 0; g < 6; ++g) {
            Element el{{g}};
            t[el] = phi.at(s3->multiply(si, s3->multiply(el, s3->inverse(sj))));
        }
        auto shifted = fourier_norm_est(MultiplierSymbol(s3, t), PNorm(4.0), quick_opts(9, 32));
        CHECK(shifted.value == doctest::Approx(base.value).epsilon(1e-4));
    }
}

TEST_CASE("positive-definite unital symbols are contractive") {
    // phi(g) = <v, pi(g) v> with pi the regular representation and v a unit
    // vector: positive-definite with phi(e) = 1.
    auto z6 = builtin_group("zmod:6");
    SplitMix64 rng(61);
    Eigen::VectorXcd v(6);
    for (int i = 0; i < 6; ++i) v(i) = rng.gaussian();
    v.normalize();
    ElementSet G = folner_set(z6, 0);
    std::unordered_map<Element, Complex, ElementHash> t;
    for (int g = 0; g < 6; ++g) {
        Element el{{g}};
        t[el] = (v.adjoint() * lambda_matrix(el, G) * v)(0);
    }
    MultiplierSymbol phi(z6, t);
    CHECK(std::abs(phi.at(z6->identity()) - Complex(1.0)) < 1e-12);
    for (auto p : {PNorm(1.0), PNorm(2.0), PNorm(4.0), PNorm::infinity()}) {
        CHECK(schur_norm_est(phi, G, p, quick_opts(13)).value <= 1.0 + 1e-6);
        CHECK(fourier_norm_est(phi, p, quick_opts(14)).value <= 1.0 + 1e-6);
    }
}

TEST_CASE("cb levels are non-decreasing; level 1 is the plain estimate") {
    auto z4 = builtin_group("zmod:4");
    auto phi = random_real_symbol(z4, 71);
    ElementSet G = folner_set(z4, 0);
    auto opts = quick_opts(15, 8);
    auto plain = schur_norm_est(phi, G, PNorm(4.0), opts);
    auto levels = cb_norm_est(MultiplierKind::Schur, phi, G, PNorm(4.0), {1, 2, 3}, opts);
    REQUIRE(levels.size() == 3);
    CHECK(levels[0].value == doctest::Approx(plain.value).epsilon(1e-9));
    CHECK(levels[1].value >= levels[0].value - 1e-10);
    CHECK(levels[2].value >= levels[1].value - 1e-10);
}

TEST_CASE("Schur multipliers at p = inf plateau under amplification") {
    auto z4 = builtin_group("zmod:4");
    auto phi = random_real_symbol(z4, 81);
    ElementSet G = folner_set(z4, 0);
    auto levels =
        cb_norm_est(MultiplierKind::Schur, phi, G, PNorm::infinity(), {1, 2, 3}, quick_opts(16, 16));
    CHECK(levels[2].value == doctest::Approx(levels[0].value).epsilon(1e-4));
}

TEST_CASE("nested subset scan is monotone and ends at the full-group value") {
    auto z6 = builtin_group("zmod:6");
    auto phi = random_real_symbol(z6, 91);
    auto mk = [&](std::initializer_list<int> idx) {
        std::vector<Element> v;
        for (int i : idx) v.push_back(Element{{i}});
        return ElementSet(z6, v);
    };
    std::vector<ElementSet> chain = {mk({0}), mk({0, 1, 2}), mk({0, 1, 2, 3, 4, 5})};
    auto opts = quick_opts(17, 16);
    auto scan = nested_subset_scan(phi, chain, PNorm(4.0), opts);
    REQUIRE(scan.size() == 3);
    CHECK(scan[0].value <= scan[1].value + 1e-10);
    CHECK(scan[1].value <= scan[2].value + 1e-10);
    auto full = schur_norm_est(phi, chain[2], PNorm(4.0), opts);
    CHECK(scan[2].value == doctest::Approx(full.value).epsilon(1e-6));

    std::vector<ElementSet> not_nested = {mk({0, 1}), mk({0, 2})};
    CHECK_THROWS(nested_subset_scan(phi, not_nested, PNorm(4.0), opts));
}

TEST_CASE("diagonal-projection symbol stays at 1 along a box chain") {
    auto z = builtin_group("zd:1");
    auto delta = MultiplierSymbol::builtin("delta:0", z);
    std::vector<ElementSet> chain;
    for (int r = 1; r <= 4; ++r) chain.push_back(folner_set(z, r));
    for (const auto& est : nested_subset_scan(delta, chain, PNorm(4.0), quick_opts(18, 8)))
        CHECK(est.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("fourier coefficient extraction inverts the regular matrix") {
    auto s3 = builtin_group("sym:3");
    auto* fg = dynamic_cast<const FiniteGroup*>(s3.get());
    SplitMix64 rng(101);
    std::vector<Element> sup;
    std::vector<Complex> c;
    for (int g = 0; g < 6; ++g) {
        sup.push_back(Element{{g}});
        c.push_back(rng.gaussian());
    }
    GroupAlgebraElement x(s3, sup, c);
    auto coeffs = fourier_coefficients(x.regular_matrix(), *fg);
    for (int g = 0; g < 6; ++g)
        CHECK(std::abs(coeffs[static_cast<std::size_t>(g)] - x.coeff(Element{{g}})) < 1e-12);
}

TEST_CASE("identical seeds give identical estimates") {
    auto z4 = builtin_group("zmod:4");
    auto phi = random_real_symbol(z4, 111);
    ElementSet G = folner_set(z4, 0);
    auto a = schur_norm_est(phi, G, PNorm(3.0), quick_opts(19));
    auto b = schur_norm_est(phi, G, PNorm(3.0), quick_opts(19));
    CHECK(a.value == b.value);
    CHECK(a.iterations == b.iterations);
    REQUIRE(a.certificate.size() == b.certificate.size());
    CHECK((a.certificate - b.certificate).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("transferred Fourier certificate reproduces the Schur ratio") {
    auto d4 = builtin_group("dihedral:4");
    auto phi = random_real_symbol(d4, 991);
    ElementSet G = folner_set(d4, 0);
    for (double pv : {4.0 / 3.0, 3.0, 4.0}) {
        PNorm p(pv);
        auto schur = schur_norm_est(phi, G, p, quick_opts(17, 24));
        REQUIRE(schur.certificate.size() != 0);
        auto amp = fourier_transferred_est(phi, p, schur.certificate, quick_opts(17, 24));
        CHECK(amp.amplification == 8);
        // Transfer preserves the ratio; the follow-up ascent can only raise it.
        CHECK(amp.value >= schur.value - 1e-10);
        CHECK(amp.value <= schur.value + 1e-6 * std::max(1.0, schur.value));
        // The plain Fourier estimate stays below the common value.
        auto plain = fourier_norm_est(phi, p, quick_opts(17, 24));
        CHECK(plain.value <= amp.value + 1e-8);
    }
}

TEST_CASE("transferred certificate ratio is exact at p in {1, 2, inf}") {
    auto s3 = builtin_group("sym:3");
    auto phi = random_real_symbol(s3, 55);
    ElementSet G = folner_set(s3, 0);
    for (PNorm p : {PNorm(1.0), PNorm(2.0), PNorm::infinity()}) {
        auto schur = schur_norm_est(phi, G, p, quick_opts(9, 24));
        REQUIRE(schur.certificate.size() != 0);
        auto amp = fourier_transferred_est(phi, p, schur.certificate, quick_opts(9, 24));
        CHECK(amp.value >= schur.value - 1e-9 * std::max(1.0, schur.value));
    }
}

TEST_CASE("transferred estimate rejects mismatched certificates") {
    auto z4 = builtin_group("zmod:4");
    auto phi = random_real_symbol(z4, 3);
    CHECK_THROWS(fourier_transferred_est(phi, PNorm(4.0), Matrix::Identity(3, 3), quick_opts(1)));
}
