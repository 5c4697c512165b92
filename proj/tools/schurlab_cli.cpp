// Command-line front end: norm estimation and theorem-level checks for
// Schur multipliers on Schatten classes and Fourier multipliers on group
// L^p spaces.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "schurlab/serialize.hpp"

namespace {

using namespace schurlab;

constexpr int kExitPass = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNoConvergence = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

MultiplierSymbol load_symbol(const std::string& spec, std::shared_ptr<const Group> group) {
    if (spec.starts_with("builtin:")) return MultiplierSymbol::builtin(spec.substr(8), group);
    return symbol_from_json(read_file(spec), std::move(group));
}

std::shared_ptr<const Group> load_group(const std::string& spec) {
    if (spec.starts_with("csv:"))
        return std::make_shared<const FiniteGroup>(finite_group_from_csv(read_file(spec.substr(4))));
    return builtin_group(spec);
}

// Group-algebra element specs: "lambda:<element>" for a single translation,
// "ball:<r>" for the sum of lambda_g over the radius-r set, or a JSON symbol
// file reinterpreted as coefficients.
GroupAlgebraElement load_element(const std::string& spec, std::shared_ptr<const Group> group) {
    std::string body = spec.starts_with("builtin:") ? spec.substr(8) : spec;
    if (body.starts_with("lambda:"))
        return GroupAlgebraElement::lambda(group, group->parse(body.substr(7)));
    if (body.starts_with("ball:")) {
        int r = std::stoi(body.substr(5));
        std::vector<Element> elems;
        if (auto* lat = dynamic_cast<const LatticeGroup*>(group.get())) {
            // Symmetric box [-r, r]^d, so ball:1 on the line is
            // lambda_{-1} + lambda_0 + lambda_1.
            const int d = lat->dim();
            std::vector<int> v(static_cast<std::size_t>(d), -r);
            while (true) {
                elems.push_back(Element{v});
                int i = 0;
                while (i < d && v[static_cast<std::size_t>(i)] == r)
                    v[static_cast<std::size_t>(i++)] = -r;
                if (i == d) break;
                ++v[static_cast<std::size_t>(i)];
            }
        } else {
            elems = folner_set(group, r).elements();
        }
        std::vector<Complex> coeff(elems.size(), 1.0);
        return GroupAlgebraElement(group, elems, coeff);
    }
    MultiplierSymbol phi = symbol_from_json(read_file(spec), group);
    std::vector<Element> support;
    std::vector<Complex> coeff;
    for (const auto& [g, v] : phi.table()) {
        support.push_back(g);
        coeff.push_back(v);
    }
    return GroupAlgebraElement(std::move(group), std::move(support), std::move(coeff));
}

std::string reports_csv(const std::vector<CheckReport>& reports) {
    std::ostringstream out;
    out.precision(17);
    out << "name,pass,tolerance,seed\n";
    for (const auto& r : reports)
        out << r.name << ',' << (r.pass ? "true" : "false") << ',' << r.tolerance << ','
            << r.seed << '\n';
    return out.str();
}

std::string reports_json(const std::vector<CheckReport>& reports) {
    std::ostringstream out;
    out << "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::string one = report_to_json(reports[i]);
        if (!one.empty() && one.back() == '\n') one.pop_back();
        out << one << (i + 1 < reports.size() ? ",\n" : "\n");
    }
    out << "]\n";
    return out.str();
}

struct CommonOpts {
    std::string group_spec;
    std::string out_path;
    std::string format = "json";
    std::uint64_t seed = 0;
    int restarts = 32;
    double pnorm = 2.0;
    std::string p_text = "2";
};

AscentOptions ascent_opts(const CommonOpts& c) {
    AscentOptions o;
    o.seed = c.seed;
    o.restarts = c.restarts;
    return o;
}

std::vector<int> parse_radii(const std::string& text) {
    std::vector<int> radii;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) radii.push_back(std::stoi(tok));
    if (radii.empty()) throw std::runtime_error("empty radius list");
    return radii;
}

int run(int argc, char** argv) {
    CLI::App app{"Schur / Fourier multiplier norm laboratory"};
    app.require_subcommand(1);

    CommonOpts c;

    // --- norms ---------------------------------------------------------
    auto* norms = app.add_subcommand("norms", "estimate multiplier norms");
    norms->require_subcommand(1);
    std::string symbol_spec;
    int radius = 4;
    std::vector<int> levels;
    auto add_common = [&](CLI::App* cmd, bool randomized) {
        cmd->add_option("--group", c.group_spec, "group spec (zmod:n, dihedral:n, sym:n, zd:d, free:k, csv:file)")
            ->required();
        cmd->add_option("--p", c.p_text, "exponent (number, a/b, or inf)");
        auto* seed = cmd->add_option("--seed", c.seed, "RNG seed");
        if (randomized) seed->required();
        cmd->add_option("--restarts", c.restarts, "optimizer restarts");
        cmd->add_option("-o,--output", c.out_path, "output file (default stdout)");
        cmd->add_option("--format", c.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* schur = norms->add_subcommand("schur", "Schur multiplier norm on S_p(l^2 F)");
    add_common(schur, true);
    schur->add_option("--symbol", symbol_spec, "symbol: builtin:... or JSON file")->required();
    schur->add_option("--radius", radius, "truncation set radius (infinite groups)");
    schur->add_option("--levels", levels, "amplification levels for the cb estimate");

    auto* fourier = norms->add_subcommand("fourier", "Fourier multiplier norm on L^p of a finite group");
    add_common(fourier, true);
    fourier->add_option("--symbol", symbol_spec, "symbol: builtin:... or JSON file")->required();
    fourier->add_option("--levels", levels, "amplification levels for the cb estimate");

    // --- verify --------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run theorem-level checks");
    verify->require_subcommand(1);
    std::string x_spec = "builtin:ball:1";
    std::string radii_text = "2,4,8";
    int k_points = 3;
    int dim = 2;
    int samples = 100;
    double delta = 0.5;

    auto* thm42 = verify->add_subcommand("thm42", "trace transference identity");
    add_common(thm42, true);
    thm42->add_option("--k", k_points, "number of translation points");
    thm42->add_option("--samples", samples, "random instances");

    auto* corner_cmd = verify->add_subcommand("corner", "corner compression bound");
    add_common(corner_cmd, false);
    corner_cmd->add_option("--x", x_spec, "group algebra element spec");
    corner_cmd->add_option("--radii", radii_text, "comma-separated radii");

    auto* curve_cmd = verify->add_subcommand("folner-curve", "normalized corner isometry curve");
    add_common(curve_cmd, false);
    curve_cmd->add_option("--x", x_spec, "group algebra element spec");
    curve_cmd->add_option("--radii", radii_text, "comma-separated radii");

    auto* equality = verify->add_subcommand("equality", "Schur vs Fourier estimate agreement");
    add_common(equality, true);
    equality->add_option("--symbol", symbol_spec, "symbol: builtin:... or JSON file")->required();

    auto* lemma23 = verify->add_subcommand("lemma23", "uniform-convexity chain inequalities");
    add_common(lemma23, true);
    lemma23->add_option("--dim", dim, "matrix block dimension");
    lemma23->add_option("--samples", samples, "random test vectors");
    lemma23->add_option("--delta", delta, "hypothesis slack");

    auto* defect_cmd = verify->add_subcommand("defect", "almost-invariance defect of corner profiles");
    add_common(defect_cmd, false);
    defect_cmd->add_option("--radii", radii_text, "comma-separated radii");

    auto* convexity = verify->add_subcommand("convexity", "log-convexity of the norm in 1/p");
    add_common(convexity, true);
    convexity->add_option("--symbol", symbol_spec, "symbol: builtin:... or JSON file");

    auto* contrast = verify->add_subcommand("free-contrast", "free-group corner ratio curve (report only)");
    add_common(contrast, false);
    contrast->add_option("--x", x_spec, "group algebra element spec");
    contrast->add_option("--radii", radii_text, "comma-separated radii");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitInputError;
    }

    auto group = load_group(c.group_spec);
    PNorm p = PNorm::parse(c.p_text);
    AscentOptions opts = ascent_opts(c);

    if (schur->parsed() || fourier->parsed()) {
        MultiplierSymbol phi = load_symbol(symbol_spec, group);
        ElementSet F = group->finite() ? folner_set(group, 0) : folner_set(group, radius);
        MultiplierKind kind = schur->parsed() ? MultiplierKind::Schur : MultiplierKind::Fourier;
        NormEstimate est;
        if (levels.empty()) {
            est = kind == MultiplierKind::Schur ? schur_norm_est(phi, F, p, opts)
                                                : fourier_norm_est(phi, p, opts);
        } else {
            est = cb_norm_est(kind, phi, F, p, levels, opts).back();
        }
        if (c.format == "csv") {
            std::ostringstream out;
            out.precision(17);
            out << "value,amplification,converged,seed\n"
                << est.value << ',' << est.amplification << ','
                << (est.converged ? "true" : "false") << ',' << est.seed << '\n';
            emit(out.str(), c.out_path);
        } else {
            emit(estimate_to_json(est), c.out_path);
        }
        return est.converged ? kExitPass : kExitNoConvergence;
    }

    std::vector<CheckReport> reports;
    bool gating = true;

    if (thm42->parsed()) {
        auto* fg = dynamic_cast<const FiniteGroup*>(group.get());
        if (!fg) throw std::runtime_error("thm42 needs a finite group");
        SplitMix64 rng(c.seed);
        const auto n = fg->order();
        for (int rep = 0; rep < samples; ++rep) {
            std::unordered_map<Element, Complex, ElementHash> table;
            for (std::size_t g = 0; g < n; ++g)
                table[Element{{static_cast<int>(g)}}] = rng.gaussian();
            MultiplierSymbol phi(group, table);
            std::vector<Element> points;
            for (int i = 0; i < k_points; ++i)
                points.push_back(Element{{static_cast<int>(rng.next() % n)}});
            Matrix a(k_points, k_points), b(k_points, k_points);
            for (Eigen::Index r = 0; r < k_points; ++r)
                for (Eigen::Index cc = 0; cc < k_points; ++cc) {
                    a(r, cc) = rng.gaussian();
                    b(r, cc) = rng.gaussian();
                }
            CheckReport one = check_transference_identity(phi, points, a, b, p);
            one.seed = c.seed;
            reports.push_back(one);
        }
    } else if (corner_cmd->parsed()) {
        GroupAlgebraElement x = load_element(x_spec, group);
        NormOracle oracle = group->finite() ? NormOracle::FiniteTrace
                            : dynamic_cast<const LatticeGroup*>(group.get())
                                ? NormOracle::ZQuadrature
                                : NormOracle::FreeMoment;
        for (int r : parse_radii(radii_text))
            reports.push_back(check_corner_bound(x, folner_set(group, r), p, oracle));
    } else if (curve_cmd->parsed() || contrast->parsed()) {
        GroupAlgebraElement x = load_element(x_spec, group);
        std::vector<CurvePoint> curve;
        if (contrast->parsed()) {
            if (p.is_inf()) throw std::runtime_error("contrast needs a finite even exponent");
            curve = free_group_contrast(x, static_cast<int>(p.value()), parse_radii(radii_text));
            gating = false;
        } else {
            NormOracle oracle =
                group->finite() ? NormOracle::FiniteTrace : NormOracle::ZQuadrature;
            curve = folner_isometry_curve(x, p, parse_radii(radii_text), oracle);
        }
        emit(c.format == "csv" ? curve_to_csv(curve) : curve_to_json(curve), c.out_path);
        if (!gating) return kExitPass;
        for (const auto& pt : curve)
            if (pt.ratio > 1.0 + 1e-9) return kExitNoConvergence;
        return kExitPass;
    } else if (equality->parsed()) {
        MultiplierSymbol phi = load_symbol(symbol_spec, group);
        reports.push_back(check_amenable_equality(phi, p, opts));
    } else if (lemma23->parsed()) {
        auto fg = std::dynamic_pointer_cast<const FiniteGroup>(group);
        if (!fg) throw std::runtime_error("lemma23 needs a finite group");
        SplitMix64 seeder(c.seed);
        for (int i = 0; i < samples; ++i) {
            auto v = ConvexityTestVector::random(fg, dim, seeder.next());
            CheckReport one = check_lemma_2_3_chain(v, delta);
            one.seed = c.seed;
            reports.push_back(one);
        }
    } else if (defect_cmd->parsed()) {
        Element gamma = group->identity();
        Element s = group->finite() || dynamic_cast<const LatticeGroup*>(group.get())
                        ? group->parse("1")
                        : group->parse("a");
        for (int r : parse_radii(radii_text)) {
            ElementSet F = folner_set(group, r);
            CheckReport one;
            one.name = "almost-invariance-defect";
            double d = almost_invariance_defect(F, gamma, s);
            one.quantities = {{"radius", static_cast<double>(r)},
                              {"set_size", static_cast<double>(F.size())},
                              {"defect", d},
                              {"defect_sq", d * d}};
            one.pass = true;
            reports.push_back(one);
        }
        gating = false;
    } else if (convexity->parsed()) {
        MultiplierSymbol phi = symbol_spec.empty()
                                   ? MultiplierSymbol::builtin("one", group)
                                   : load_symbol(symbol_spec, group);
        std::vector<PNorm> grid{PNorm(1.0), PNorm(4.0 / 3.0), PNorm(2.0), PNorm(4.0),
                                PNorm::infinity()};
        AscentOptions copts = opts;
        copts.tol = 1e-6;
        reports.push_back(check_log_convexity(phi, grid, copts));
    }

    emit(c.format == "csv" ? reports_csv(reports) : reports_json(reports), c.out_path);
    if (!gating) return kExitPass;
    for (const auto& r : reports)
        if (!r.pass) return kExitNoConvergence;
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error&) {
        return kExitInputError;  // CLI11_PARSE already printed the message
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}
