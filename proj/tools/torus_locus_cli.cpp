// torus-locus: decide density, solve small torus systems, plot witnesses,
// and work with circle-preserving maps. Exit protocol: 0 Dense/success,
// 1 NotDense/refuted/failure, 2 Unknown, 64 usage or parse error, 65 input
// outside the solver's term budget.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toruslocus/blaschke.hpp"
#include "toruslocus/density.hpp"
#include "toruslocus/parser.hpp"
#include "toruslocus/report.hpp"
#include "toruslocus/svg.hpp"
#include "toruslocus/torus_solver.hpp"
#include "toruslocus/version.hpp"

namespace tl = toruslocus;

namespace {

std::vector<std::string> split_vars(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// First-appearance order of identifiers in the expression ('i' is the
// imaginary unit, never a variable).
std::vector<std::string> infer_vars(const std::string& expr) {
    std::vector<std::string> out;
    for (const auto& t : tl::detail::tokenize(expr)) {
        if (t.kind != tl::detail::Tok::Ident || t.text == "i") continue;
        bool seen = false;
        for (const auto& v : out) seen = seen || v == t.text;
        if (!seen) out.push_back(t.text);
    }
    return out;
}

struct ParsedInput {
    tl::LaurentPoly poly{1};
    std::vector<std::string> vars;
};

ParsedInput parse_input(const std::string& expr, const std::string& vars_csv, size_t min_vars) {
    ParsedInput in;
    in.vars = vars_csv.empty() ? infer_vars(expr) : split_vars(vars_csv);
    if (in.vars.empty()) in.vars = {"z"};
    while (in.vars.size() < min_vars) {
        std::string cand = in.vars.size() == 1 ? "w" : "v" + std::to_string(in.vars.size());
        bool clash = false;
        for (const auto& v : in.vars) clash = clash || v == cand;
        in.vars.push_back(clash ? "w_" + std::to_string(in.vars.size()) : cand);
    }
    in.poly = tl::parse_poly(expr, in.vars);
    return in;
}

int parse_error_exit(const tl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 64;
}

int run_decide(const std::string& expr, const std::string& vars_csv, const tl::RunConfig& cfg) {
    ParsedInput in;
    try {
        in = parse_input(expr, vars_csv, 1);
    } catch (const tl::ParseError& e) {
        return parse_error_exit(e);
    }
    tl::VarietySpec V;
    V.n = static_cast<int>(in.vars.size());
    V.generators = {in.poly};

    tl::DensityProbe probe;
    probe.grid_size = cfg.grid_size;
    probe.tol = cfg.tolerance;
    tl::DensityVerdict dv;
    try {
        dv = tl::decide(V, probe, cfg.probe_bases);
    } catch (const std::exception& e) {
        std::cerr << "decide failed: " << e.what() << "\n";
        return 64;
    }

    if (cfg.output_format == "text") {
        std::cout << "verdict: " << tl::to_string(dv.verdict) << "\n"
                  << "reason: " << tl::to_string(dv.reason) << "\n"
                  << "fibers_evaluated: " << dv.fibers_evaluated << "\n"
                  << "longest_run: " << dv.longest_run << "/" << dv.run_threshold << "\n";
    } else {
        std::cout << tl::dump_report(tl::decide_report(expr, in.vars, dv, cfg));
    }
    switch (dv.verdict) {
        case tl::Verdict::Dense: return 0;
        case tl::Verdict::NotDense: return 1;
        case tl::Verdict::Unknown: return 2;
    }
    return 2;
}

int run_solve(const std::string& expr, const std::string& vars_csv, const tl::RunConfig& cfg) {
    ParsedInput in;
    try {
        in = parse_input(expr, vars_csv, 2);
    } catch (const tl::ParseError& e) {
        return parse_error_exit(e);
    }
    if (in.vars.size() != 2) {
        std::cerr << "solve expects a plane-curve equation in 2 variables (got "
                  << in.vars.size() << ")\n";
        return 64;
    }
    if (in.poly.terms().size() > 3) {
        std::cerr << "too many terms (" << in.poly.terms().size()
                  << " > 3): the exact solver covers at most trinomials; run `decide` for the "
                     "density verdict instead\n";
        return 65;
    }
    tl::TorusSolutionSet sol;
    try {
        sol = tl::solve_trinomial(in.poly);
    } catch (const std::exception& e) {
        std::cerr << "solve failed: " << e.what() << "\n";
        return 64;
    }

    if (cfg.output_format == "json") {
        std::cout << tl::dump_report(tl::solve_report(expr, in.vars, sol, cfg));
    } else if (cfg.output_format == "text") {
        std::cout << "kind: "
                  << (sol.kind == tl::SolutionKind::empty      ? "empty"
                      : sol.kind == tl::SolutionKind::finite   ? "finite"
                                                               : "coset_family")
                  << "\nprovenance: " << sol.provenance << "\nresidual: " << sol.residual
                  << "\npoints: " << sol.points.size() << "\ncomponents: " << sol.family.size()
                  << "\n";
    } else {
        std::cout << tl::solution_csv(sol, in.poly);
    }
    return 0;
}

int run_plot(const std::string& expr, const std::string& vars_csv, const tl::RunConfig& cfg) {
    ParsedInput in;
    try {
        in = parse_input(expr, vars_csv, 2);
    } catch (const tl::ParseError& e) {
        return parse_error_exit(e);
    }
    if (in.vars.size() != 2) {
        std::cerr << "plot expects a plane-curve equation in 2 variables\n";
        return 64;
    }
    tl::VarietySpec V;
    V.n = 2;
    V.generators = {in.poly};
    tl::DensityProbe probe;
    probe.grid_size = cfg.grid_size;
    probe.tol = cfg.tolerance;
    tl::DensityVerdict dv;
    try {
        dv = tl::decide(V, probe, cfg.probe_bases);
    } catch (const std::exception& e) {
        std::cerr << "plot failed: " << e.what() << "\n";
        return 64;
    }
    std::cout << tl::plot_svg(in.poly, in.vars, dv, cfg);
    if (dv.verdict != tl::Verdict::Dense)
        std::cerr << "note: no dense witness (" << tl::to_string(dv.verdict)
                  << "); plotted the available data instead\n";
    return 0;
}

int run_circle_map(const std::string& sub, const std::vector<std::string>& exprs,
                   const std::string& vars_csv, const tl::RunConfig& cfg) {
    try {
        if (sub == "make") {
            ParsedInput in = parse_input(exprs.at(0), vars_csv, 1);
            tl::CircleMap m = tl::make_circle_map(in.poly);
            std::string num_text = tl::format_poly(m.numerator, in.vars);
            std::string den_text = tl::format_poly(m.denominator, in.vars);
            if (cfg.output_format == "text") {
                std::cout << "numerator: " << num_text << "\ndenominator: " << den_text
                          << "\nverified: proven\n";
            } else {
                tl::Json rep = tl::circle_map_report("make", num_text, den_text, in.vars, cfg);
                rep["source"] = exprs.at(0);
                rep["result"] = tl::Json{{"status", "proven"}};
                std::cout << tl::dump_report(rep);
            }
            return 0;
        }

        // verify/factor take a numerator and a denominator expression.
        std::string joint = exprs.at(0) + "+" + exprs.at(1);
        std::vector<std::string> vars =
            vars_csv.empty() ? infer_vars(joint) : split_vars(vars_csv);
        if (vars.empty()) vars = {"z"};
        tl::LaurentPoly num = tl::parse_poly(exprs.at(0), vars);
        tl::LaurentPoly den = tl::parse_poly(exprs.at(1), vars);
        std::string num_text = tl::format_poly(num, vars);
        std::string den_text = tl::format_poly(den, vars);

        if (sub == "verify") {
            tl::VerifyResult v = tl::verify_circle_map(num, den);
            const char* status = v.status == tl::VerifyResult::Status::proven   ? "proven"
                                 : v.status == tl::VerifyResult::Status::refuted ? "refuted"
                                                                                 : "unknown";
            if (cfg.output_format == "text") {
                std::cout << "status: " << status << "\n";
                if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
            } else {
                tl::Json rep = tl::circle_map_report("verify", num_text, den_text, vars, cfg);
                tl::Json res{{"status", status}};
                if (v.witness) res["witness"] = tl::witness_json(*v.witness);
                if (v.counterexample) {
                    tl::Json cex = tl::Json::array();
                    for (const auto& c : *v.counterexample)
                        cex.push_back(tl::Json{{"re", c.real()}, {"im", c.imag()}});
                    res["counterexample"] = std::move(cex);
                    res["deviation"] = v.deviation;
                }
                if (!v.note.empty()) res["note"] = v.note;
                rep["result"] = std::move(res);
                std::cout << tl::dump_report(rep);
            }
            return v.status == tl::VerifyResult::Status::proven   ? 0
                   : v.status == tl::VerifyResult::Status::refuted ? 1
                                                                   : 2;
        }

        if (sub == "factor") {
            tl::CircleMap m;
            m.numerator = num;
            m.denominator = den;
            m.verified = tl::MapStatus::unverified;
            tl::VerifyResult v = tl::verify_circle_map(num, den);
            if (v.status != tl::VerifyResult::Status::proven) {
                std::cerr << "factor: the map is not a proven circle map (status "
                          << (v.status == tl::VerifyResult::Status::refuted ? "refuted" : "unknown")
                          << ")\n";
                return 1;
            }
            m.verified = tl::MapStatus::proven;
            tl::BlaschkeFactors f = tl::blaschke_factor(m);
            if (cfg.output_format == "text") {
                std::cout << "alphas: " << f.alphas.size() << "\n";
                for (const auto& a : f.alphas)
                    std::cout << "  " << tl::detail::fmt17(a.real()) << " + "
                              << tl::detail::fmt17(a.imag()) << "*i\n";
                std::cout << "unit: " << tl::detail::fmt17(f.unit.real()) << " + "
                          << tl::detail::fmt17(f.unit.imag()) << "*i\npower: " << f.power << "\n";
            } else {
                tl::Json rep = tl::circle_map_report("factor", num_text, den_text, vars, cfg);
                tl::Json alphas = tl::Json::array();
                for (const auto& a : f.alphas)
                    alphas.push_back(tl::Json{{"re", a.real()}, {"im", a.imag()}});
                rep["factors"] =
                    tl::Json{{"alphas", std::move(alphas)},
                             {"unit", tl::Json{{"re", f.unit.real()}, {"im", f.unit.imag()}}},
                             {"power", f.power},
                             {"pair_error", f.pair_error}};
                std::cout << tl::dump_report(rep);
            }
            return 0;
        }
    } catch (const tl::ParseError& e) {
        return parse_error_exit(e);
    } catch (const std::exception& e) {
        std::cerr << "circle-map " << sub << " failed: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "unknown circle-map subcommand\n";
    return 64;
}

int run_verify_certificate(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "cannot open " << path << "\n";
        return 64;
    }
    tl::Json rep;
    try {
        rep = tl::Json::parse(f);
    } catch (const std::exception& e) {
        std::cerr << "invalid JSON: " << e.what() << "\n";
        return 64;
    }
    tl::ReplayResult r = tl::verify_report(rep);
    std::cout << (r.ok ? "OK" : "FAIL") << ": " << r.message << "\n";
    return r.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"torus-locus: density of variety-torus intersections, exact small solvers, "
                 "and circle-preserving maps"};
    app.set_version_flag("--version", std::string(tl::kVersion));
    app.require_subcommand(1);

    tl::RunConfig cfg;
    std::string vars_csv;
    app.add_option("--tol", cfg.tolerance, "on-circle tolerance")->check(CLI::PositiveNumber);
    app.add_option("--grid", cfg.grid_size, "sweep grid size")->check(CLI::Range(16, 1 << 20));
    app.add_option("--probes", cfg.probe_bases, "local probe count");
    app.add_option("--seed", cfg.seed, "seed for randomized sampling");
    app.add_option("--format", cfg.output_format, "output format")
        ->check(CLI::IsMember({"json", "csv", "svg", "text"}));
    app.add_option("--vars", vars_csv, "comma-separated variable order (default: inferred)");

    std::string expr, num_expr, den_expr, cert_path;
    app.fallthrough();

    CLI::App* cmd_decide = app.add_subcommand("decide", "Zariski-density verdict");
    cmd_decide->fallthrough();
    cmd_decide->add_option("expr", expr, "polynomial equation")->required();

    CLI::App* cmd_solve = app.add_subcommand("solve", "exact <=3-term plane-curve solver");
    cmd_solve->fallthrough();
    cmd_solve->add_option("expr", expr, "polynomial equation")->required();

    CLI::App* cmd_plot = app.add_subcommand("plot", "SVG plot of witness arcs");
    cmd_plot->fallthrough();
    cmd_plot->add_option("expr", expr, "polynomial equation")->required();

    CLI::App* cmd_map = app.add_subcommand("circle-map", "make/verify/factor circle maps");
    cmd_map->fallthrough();
    CLI::App* map_make = cmd_map->add_subcommand("make", "build r = conj(p(conj z))/p(1/z)");
    map_make->fallthrough();
    map_make->add_option("poly", expr, "source polynomial")->required();
    CLI::App* map_verify = cmd_map->add_subcommand("verify", "prove or refute |r| = 1 on torus");
    map_verify->fallthrough();
    map_verify->add_option("numerator", num_expr)->required();
    map_verify->add_option("denominator", den_expr)->required();
    CLI::App* map_factor = cmd_map->add_subcommand("factor", "Blaschke factorization");
    map_factor->fallthrough();
    map_factor->add_option("numerator", num_expr)->required();
    map_factor->add_option("denominator", den_expr)->required();
    cmd_map->require_subcommand(1);

    CLI::App* cmd_cert = app.add_subcommand("verify-certificate", "replay an emitted report");
    cmd_cert->fallthrough();
    cmd_cert->add_option("report", cert_path, "path to report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    if (cmd_decide->parsed()) return run_decide(expr, vars_csv, cfg);
    if (cmd_solve->parsed()) return run_solve(expr, vars_csv, cfg);
    if (cmd_plot->parsed()) return run_plot(expr, vars_csv, cfg);
    if (cmd_map->parsed()) {
        if (map_make->parsed()) return run_circle_map("make", {expr}, vars_csv, cfg);
        if (map_verify->parsed()) return run_circle_map("verify", {num_expr, den_expr}, vars_csv, cfg);
        if (map_factor->parsed()) return run_circle_map("factor", {num_expr, den_expr}, vars_csv, cfg);
    }
    if (cmd_cert->parsed()) return run_verify_certificate(cert_path);
    return 64;
}
