#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hilbq/json_io.hpp"
#include "hilbq/mgn.hpp"
#include "hilbq/partition_expr.hpp"
#include "hilbq/verify.hpp"

using namespace hilbq;

namespace {

SurfaceModel resolve_surface(const std::string& name) {
    if (name == "p1xe" || name == "exc") return builtin_surface(name);
    if (name == "rational-elliptic") return rational_elliptic_model();
    return load_surface(name);
}

void emit(const std::string& output, const std::string& text) {
    if (output.empty() || output == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(output);
        if (!out) throw std::runtime_error("cannot open output file '" + output + "'");
        out << text;
    }
}

std::string series_text(const PQSeries& s, const std::string& format) {
    if (format == "json") return series_to_json(s).dump(2);
    return s.str();
}

int run_verify(const std::string& suite, const std::string& surface,
               const VerifyConfig& cfg) {
    CheckReport rep;
    if (suite == "heisenberg") rep = verify_heisenberg(resolve_surface(surface), cfg);
    else if (suite == "lehn") rep = verify_lehn(resolve_surface(surface), cfg);
    else if (suite == "jacobi") rep = verify_jacobi(cfg);
    else if (suite == "wallcross") rep = verify_wallcross(resolve_surface(surface), cfg);
    else if (suite == "basic_check") rep = verify_basic_check(cfg);
    else if (suite == "dr_oracle") rep = verify_dr_oracle(cfg);
    else if (suite == "exc_consistency") rep = verify_exc_consistency(cfg);
    else throw CLI::ValidationError("--suite", "unknown suite '" + suite + "'");
    for (const auto& l : rep.lines) {
        std::cout << (l.pass ? "[PASS] " : "[FAIL] ") << l.name;
        if (!l.pass && !l.detail.empty()) std::cout << "  (" << l.detail << ")";
        std::cout << "\n";
    }
    return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hilbq: exact operators for quantum multiplication on Hilbert "
                 "schemes of points of elliptic surfaces"};
    app.require_subcommand(1);

    std::string surface = "p1xe";
    int n = 2;
    int q_order = 4;
    int p_window = 12;
    int z_order = 8;
    std::string output;
    std::string format = "text";

    auto add_common = [&](CLI::App* c, bool with_surface = true) {
        if (with_surface)
            c->add_option("--surface", surface,
                          "builtin (p1xe, exc, rational-elliptic) or JSON path");
        c->add_option("--n", n, "Hilbert scheme level");
        c->add_option("--q-order", q_order, "q truncation order")->check(CLI::PositiveNumber);
        c->add_option("--p-window", p_window, "ascending p window")->check(CLI::PositiveNumber);
        c->add_option("--z-order", z_order, "z truncation order");
        c->add_option("--output", output, "output path (default stdout)");
        c->add_option("--format", format, "text|json|tsv");
    };

    // expand
    auto* cmd_expand = app.add_subcommand("expand", "expand a named special function");
    std::string target;
    int index_k = 2;
    cmd_expand->add_option("target", target, "G|Theta|A|wallcross_factor|I0")->required();
    cmd_expand->add_option("--k", index_k, "weight/index for G_k or A_n");
    add_common(cmd_expand);

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run a named identity suite");
    std::string suite;
    int n_max = 4;
    cmd_verify
        ->add_option("suite", suite,
                     "heisenberg|lehn|jacobi|wallcross|basic_check|dr_oracle|exc_consistency")
        ->required();
    cmd_verify->add_option("--n-max", n_max, "maximal level/index for the suite");
    add_common(cmd_verify);

    // table / structure-constant
    auto* cmd_table = app.add_subcommand(
        "structure-constant",
        "bracket table (d, k) -> <lambda, mu>_{0, df+kA}; the (0,0) entry is "
        "excluded by definition");
    cmd_table->alias("table");
    std::string lambda_expr, mu_expr;
    cmd_table->add_option("--lambda", lambda_expr, "weighted-partition expression")
        ->required();
    cmd_table->add_option("--mu", mu_expr, "weighted-partition expression")->required();
    add_common(cmd_table);

    // qc-matrix
    auto* cmd_matrix = app.add_subcommand("qc-matrix", "emit an operator as JSON");
    std::string which = "q-hilb";
    std::string div_class = "sigma";
    cmd_matrix->add_option("--which", which,
                           "q-hilb|q-pt|e-delta|e-div|lehn-delta|lehn-div|extremal-delta");
    cmd_matrix->add_option("--class", div_class, "divisor class name for *-div");
    add_common(cmd_matrix);

    // fit-qjac
    auto* cmd_fit = app.add_subcommand("fit-qjac",
                                       "express a series JSON in the quasi-Jacobi ring");
    std::string input;
    int weight_bound = 6;
    int dilation_bound = 2;
    cmd_fit->add_option("input", input, "series JSON path")->required();
    cmd_fit->add_option("--weight-bound", weight_bound, "maximal monomial weight");
    cmd_fit->add_option("--dilation-bound", dilation_bound, "maximal p-dilation");
    add_common(cmd_fit, false);

    // dr-oracle
    auto* cmd_dr = app.add_subcommand("dr-oracle",
                                      "evaluate a Hodge-DR integral along both paths");
    int genus = 1;
    std::string a_str = "1,-1";
    std::string flavor = "unit_point";
    int ab_i = 1, ab_j = 2;
    cmd_dr->add_option("--g", genus, "genus")->required();
    cmd_dr->add_option("--a", a_str, "comma-separated profile, e.g. 1,-1");
    cmd_dr->add_option("--flavor", flavor, "unit_point|alpha_beta");
    cmd_dr->add_option("--i", ab_i, "first index for alpha_beta");
    cmd_dr->add_option("--j", ab_j, "second index for alpha_beta");
    add_common(cmd_dr, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // 0 for --help, 2 for usage errors
    }

    try {
        if (*cmd_expand) {
            PQSeries s(q_order);
            if (target == "G") s = eisenstein(index_k, q_order);
            else if (target == "Theta") s = theta_series(q_order, p_window);
            else if (target == "A") s = jacobi_a_fourier(index_k, q_order, p_window);
            else if (target == "wallcross_factor")
                s = wallcross_log_factor(q_order, p_window);
            else if (target == "I0")
                s = wallcross_data(resolve_surface(surface), q_order, p_window).i0;
            else throw CLI::ValidationError("target", "unknown target '" + target + "'");
            emit(output, series_text(s, format));
            return 0;
        }
        if (*cmd_verify) {
            VerifyConfig cfg{n, q_order, p_window, z_order, n_max};
            return run_verify(suite, surface, cfg);
        }
        if (*cmd_table) {
            SurfaceModel s = resolve_surface(surface);
            FockVector lambda = parse_partition_expr(s, n, lambda_expr);
            FockVector mu = parse_partition_expr(s, n, mu_expr);
            auto table = bracket_table(s, n, lambda, mu, q_order, p_window);
            if (format == "json") emit(output, bracket_table_to_json(table).dump(2));
            else emit(output, bracket_table_to_tsv(table));
            return 0;
        }
        if (*cmd_matrix) {
            SurfaceModel s = resolve_surface(surface);
            OperatorSeries o(s, n, q_order);
            QVariant v = s.equivariant ? QVariant::Exc : QVariant::Compact;
            if (which == "q-hilb") o = q_hilb(s, n, q_order, p_window, v);
            else if (which == "q-pt") o = q_pt(s, n, q_order, p_window);
            else if (which == "e-delta")
                o = quantum_divisor_delta(s, n, q_order, p_window);
            else if (which == "e-div")
                o = quantum_divisor_alpha(s, s.cls(div_class), n, q_order, p_window);
            else if (which == "extremal-delta")
                o = extremal_delta(s, n, q_order, p_window);
            else if (which == "lehn-delta") {
                for (const auto& [key, c] : lehn_delta(s, n))
                    o.add_term(key.first, key.second, 0, 0, c);
            } else if (which == "lehn-div") {
                for (const auto& [key, c] : lehn_divisor(s, s.cls(div_class), n))
                    o.add_term(key.first, key.second, 0, 0, c);
            } else
                throw CLI::ValidationError("--which", "unknown operator '" + which + "'");
            emit(output, operator_to_json(o, s).dump(2));
            return 0;
        }
        if (*cmd_fit) {
            std::ifstream in(input);
            if (!in) throw std::runtime_error("cannot open '" + input + "'");
            Json j;
            in >> j;
            PQSeries target_series = series_from_json(j);
            QJacMonomialBasis basis = QJacMonomialBasis::build(weight_bound, dilation_bound);
            auto fit = qjac_fit(target_series, basis, p_window);
            emit(output, fit_to_json(fit, basis).dump(2));
            return fit.status == QJacFitStatus::NoSolution ? 1 : 0;
        }
        if (*cmd_dr) {
            DRProfile p;
            p.g = genus;
            std::stringstream ss(a_str);
            std::string tok;
            while (std::getline(ss, tok, ',')) p.a.push_back(std::stoi(tok));
            DRFlavor fl = flavor == "alpha_beta" ? DRFlavor::AlphaBeta : DRFlavor::UnitPoint;
            PQSeries closed = dr_hodge_closed(p, fl, ab_i, ab_j).as_series(q_order);
            PQSeries comb = dr_hodge_combinatorial(p, q_order, fl, false, ab_i, ab_j);
            std::ostringstream os;
            os << "closed:        " << closed.str() << "\n";
            os << "combinatorial: " << comb.str() << "\n";
            std::string diff = first_mismatch(closed, comb, q_order, 0);
            os << "diff:          " << (diff.empty() ? "none" : diff) << "\n";
            emit(output, os.str());
            return diff.empty() ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        app.exit(e);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
