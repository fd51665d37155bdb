#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "toruslocus/blaschke.hpp"
#include "toruslocus/density.hpp"
#include "toruslocus/parser.hpp"
#include "toruslocus/version.hpp"

namespace toruslocus {

using Json = nlohmann::ordered_json;

struct RunConfig {
    double tolerance = 1e-9;
    int grid_size = 4096;
    int probe_bases = 32;
    std::string output_format = "json";  // json | csv | svg | text
    std::uint64_t seed = 0;
};

namespace detail {

inline std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Serializer matching nlohmann's grammar but printing every float with 17
/// significant digits (the library's shortest-round-trip digits would vary in
/// width; a fixed policy keeps reports byte-stable and bit-faithful).
inline void dump_value(const Json& j, std::string& out, int depth) {
    const std::string pad(static_cast<size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<size_t>(depth + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            size_t k = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++k) {
                out += pad_in;
                out += Json(it.key()).dump();
                out += ": ";
                dump_value(it.value(), out, depth + 1);
                if (k + 1 < j.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (size_t k = 0; k < j.size(); ++k) {
                out += pad_in;
                dump_value(j[k], out, depth + 1);
                if (k + 1 < j.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            return;
        }
        case Json::value_t::number_float: {
            double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            std::string s = fmt17(v);
            // %.17g may omit the decimal marker for integral values; keep the
            // value unambiguously a float so replay parses it back as one.
            if (s.find_first_of(".eE") == std::string::npos) s += ".0";
            out += s;
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace detail

inline std::string dump_report(const Json& j) {
    std::string out;
    detail::dump_value(j, out, 0);
    out += '\n';
    return out;
}

inline Json config_json(const RunConfig& c) {
    return Json{{"tolerance", c.tolerance},
                {"grid_size", c.grid_size},
                {"probe_bases", c.probe_bases},
                {"output_format", c.output_format},
                {"seed", c.seed}};
}

inline Json gaussian_json(const GaussianRational& g) {
    return Json{{"re", to_string(g.re)}, {"im", to_string(g.im)}, {"text", to_string(g)}};
}

inline Json witness_json(const AssociateWitness& w) {
    return Json{{"c", gaussian_json(w.c)}, {"t", w.t}, {"unit_modulus", w.unit_modulus}};
}

inline Json point_json(const TorusPoint& p) {
    Json coords = Json::array();
    for (size_t k = 0; k < p.coords.size(); ++k) {
        Json c{{"re", p.coords[k].real()}, {"im", p.coords[k].imag()}};
        if (p.exact) {
            c["exact_re"] = to_string((*p.exact)[k].re);
            c["exact_im"] = to_string((*p.exact)[k].im);
        }
        coords.push_back(std::move(c));
    }
    return coords;
}

inline Json solutions_json(const TorusSolutionSet& s) {
    Json out;
    switch (s.kind) {
        case SolutionKind::empty: out["kind"] = "empty"; break;
        case SolutionKind::finite: out["kind"] = "finite"; break;
        case SolutionKind::coset_family: out["kind"] = "coset_family"; break;
    }
    out["provenance"] = s.provenance;
    out["residual"] = s.residual;
    if (s.kind == SolutionKind::finite) {
        Json pts = Json::array();
        for (const auto& p : s.points) pts.push_back(point_json(p));
        out["points"] = std::move(pts);
    }
    if (s.kind == SolutionKind::coset_family) {
        Json fam = Json::array();
        for (const auto& comp : s.family) {
            Json gens = Json::array();
            for (const auto& g : comp.generators) gens.push_back(Json{g[0], g[1]});
            fam.push_back(Json{{"base", point_json(comp.base)}, {"generators", std::move(gens)}});
        }
        out["components"] = std::move(fam);
    }
    return out;
}

namespace detail {

/// Up to `cap` replayable (theta, w) samples from the witness branch: the
/// on-circle hits, strided evenly so the report stays small.
inline Json arc_samples_json(const BranchWitness& bw, const ArcInfo& arc, double tol, int cap = 64) {
    std::vector<size_t> hits;
    const auto& branch = bw.branches[static_cast<size_t>(arc.branch)];
    for (size_t k = 0; k < bw.thetas.size(); ++k)
        if (std::abs(std::abs(branch[k]) - 1.0) < tol / 10.0) hits.push_back(k);
    Json out = Json::array();
    if (hits.empty()) return out;
    size_t stride = std::max<size_t>(1, hits.size() / static_cast<size_t>(cap));
    for (size_t idx = 0; idx < hits.size() && out.size() < static_cast<size_t>(cap); idx += stride) {
        size_t k = hits[idx];
        out.push_back(Json{{"theta", bw.thetas[k]},
                           {"w_re", branch[k].real()},
                           {"w_im", branch[k].imag()}});
    }
    return out;
}

}  // namespace detail

inline Json decide_report(const std::string& expr, const std::vector<std::string>& vars,
                          const DensityVerdict& dv, const RunConfig& cfg) {
    Json rep{{"tool", "torus-locus"},
             {"version", kVersion},
             {"command", "decide"},
             {"input", Json{{"expression", expr}, {"variables", vars}}},
             {"config", config_json(cfg)},
             {"verdict", to_string(dv.verdict)},
             {"reason", to_string(dv.reason)}};

    Json cert;
    if (dv.certificate.self_star) {
        const auto& ss = *dv.certificate.self_star;
        Json entries = Json::array();
        for (const auto& e : ss.entries) {
            Json ej{{"generator", format_poly(e.generator, vars)},
                    {"star_generator", format_poly(e.star_poly, vars)}};
            if (e.witness) ej["witness"] = witness_json(*e.witness);
            entries.push_back(std::move(ej));
        }
        const char* res = ss.result == SelfStarTranscript::Result::yes ? "yes"
                          : ss.result == SelfStarTranscript::Result::no ? "no"
                                                                        : "inconclusive";
        cert["self_star"] = Json{{"result", res}, {"entries", std::move(entries)}};
    }
    if (dv.certificate.odd_degree)
        cert["odd_degree"] = Json{{"base_coord", dv.certificate.odd_degree->base_coord},
                                  {"degree", dv.certificate.odd_degree->degree}};
    if (dv.certificate.solutions) cert["solutions"] = solutions_json(*dv.certificate.solutions);
    if (dv.certificate.arc && dv.certificate.branch) {
        const auto& arc = *dv.certificate.arc;
        cert["arc"] = Json{{"branch", arc.branch},
                          {"samples", arc.samples},
                          {"theta_start", arc.theta_start},
                          {"theta_end", arc.theta_end},
                          {"full_circle", arc.full_circle},
                          {"generic_count", dv.certificate.branch->generic_count},
                          {"dropped_fibers", dv.certificate.branch->dropped_thetas.size()},
                          {"witness_samples",
                           detail::arc_samples_json(*dv.certificate.branch, arc, dv.probe.tol)}};
        cert["real_dimension_estimate"] = real_dimension_estimate(*dv.certificate.branch);
    }
    rep["certificate"] = std::move(cert);
    rep["timing"] = Json{{"mode", "deterministic_work_counters"},
                         {"fibers_evaluated", dv.fibers_evaluated},
                         {"longest_run", dv.longest_run},
                         {"run_threshold", dv.run_threshold}};
    return rep;
}

inline Json solve_report(const std::string& expr, const std::vector<std::string>& vars,
                         const TorusSolutionSet& sol, const RunConfig& cfg) {
    return Json{{"tool", "torus-locus"},
                {"version", kVersion},
                {"command", "solve"},
                {"input", Json{{"expression", expr}, {"variables", vars}}},
                {"config", config_json(cfg)},
                {"solutions", solutions_json(sol)},
                {"timing", Json{{"mode", "deterministic_work_counters"},
                                {"points_returned",
                                 static_cast<long>(sol.points.size() + sol.family.size())}}}};
}

inline Json circle_map_report(const std::string& subcmd, const std::string& num_text,
                              const std::string& den_text, const std::vector<std::string>& vars,
                              const RunConfig& cfg) {
    return Json{{"tool", "torus-locus"},
                {"version", kVersion},
                {"command", "circle-map"},
                {"subcommand", subcmd},
                {"input", Json{{"numerator", num_text}, {"denominator", den_text},
                               {"variables", vars}}},
                {"config", config_json(cfg)}};
}

/// CSV table for solve output: header, data rows, and for non-finite kinds a
/// leading `#` descriptor/note line (the fixed numeric columns cannot carry
/// the family data themselves).
inline std::string solution_csv(const TorusSolutionSet& s, const LaurentPoly& p) {
    std::string out = "re_z,im_z,re_w,im_w,residual\n";
    auto row = [&](const TorusPoint& pt) {
        Complex z = pt.coords[0], w = pt.coords.size() > 1 ? pt.coords[1] : Complex(0, 0);
        double res = std::abs(eval(p, pt.coords));
        out += detail::fmt17(z.real()) + "," + detail::fmt17(z.imag()) + "," +
               detail::fmt17(w.real()) + "," + detail::fmt17(w.imag()) + "," +
               detail::fmt17(res) + "\n";
    };
    switch (s.kind) {
        case SolutionKind::empty:
            if (s.provenance.find("modulus_mismatch") != std::string::npos ||
                s.provenance.find("no_zero") != std::string::npos)
                out += "# note: |alpha| != 1, no torus solutions (" + s.provenance + ")\n";
            else
                out += "# note: empty (" + s.provenance + ")\n";
            break;
        case SolutionKind::finite:
            for (const auto& pt : s.points) row(pt);
            break;
        case SolutionKind::coset_family:
            for (const auto& comp : s.family) {
                std::string gens;
                for (const auto& g : comp.generators) {
                    if (!gens.empty()) gens += ";";
                    gens += "(" + std::to_string(g[0]) + "," + std::to_string(g[1]) + ")";
                }
                out += "# kind=coset_family base=(" + detail::fmt17(comp.base.coords[0].real()) +
                       "," + detail::fmt17(comp.base.coords[0].imag()) + ")x(" +
                       detail::fmt17(comp.base.coords[1].real()) + "," +
                       detail::fmt17(comp.base.coords[1].imag()) + ") generators=" + gens + "\n";
                for (const auto& pt : coset_samples(comp, 16)) row(pt);
            }
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Certificate replay: re-derive the symbolic claims and re-evaluate the
// numeric witnesses stored in a report. Every report the tool emits must
// replay clean.

struct ReplayResult {
    bool ok = true;
    std::string message = "certificate verified";
};

namespace detail {

inline GaussianRational gaussian_from_json(const Json& j) {
    return GaussianRational(parse_rational(j.at("re").get<std::string>()),
                            parse_rational(j.at("im").get<std::string>()));
}

inline ReplayResult fail(const std::string& why) { return ReplayResult{false, why}; }

inline ReplayResult replay_points(const Json& pts, const LaurentPoly& p, double scale) {
    for (const auto& pt : pts) {
        std::vector<Complex> coords;
        bool all_exact = true;
        std::vector<GaussianRational> exact;
        for (const auto& c : pt) {
            coords.emplace_back(c.at("re").get<double>(), c.at("im").get<double>());
            if (c.contains("exact_re"))
                exact.emplace_back(parse_rational(c.at("exact_re").get<std::string>()),
                                   parse_rational(c.at("exact_im").get<std::string>()));
            else
                all_exact = false;
        }
        if (all_exact && !exact.empty()) {
            GaussianRational v(0);
            bool pole = false;
            for (const auto& [e, coef] : p.terms()) {
                GaussianRational term = coef;
                for (size_t k = 0; k < exact.size(); ++k) {
                    if (exact[k].is_zero() && e[k] < 0) { pole = true; break; }
                    term *= gaussian_pow(exact[k], e[k]);
                }
                if (pole) break;
                v += term;
            }
            if (pole) return fail("exact point hits a pole of the generator");
            if (!v.is_zero()) return fail("exact point fails the generator identity");
            for (const auto& x : exact)
                if (!x.is_unit_modulus()) return fail("exact point leaves the torus");
        } else {
            double res = std::abs(eval(p, coords));
            if (res > 1e-6 * scale)
                return fail("stored point residual " + fmt17(res) + " exceeds bound");
            for (const auto& c : coords)
                if (std::abs(std::abs(c) - 1.0) > 1e-7)
                    return fail("stored point drifts off the torus");
        }
    }
    return ReplayResult{};
}

inline ReplayResult replay_solutions(const Json& sol, const LaurentPoly& p, double scale) {
    std::string kind = sol.at("kind").get<std::string>();
    if (kind == "empty") return ReplayResult{};  // nothing claimed
    if (kind == "finite") return replay_points(sol.at("points"), p, scale);
    // coset_family: sample each component and check the residuals.
    for (const auto& comp : sol.at("components")) {
        CosetComponent cc;
        std::vector<Complex> base;
        for (const auto& c : comp.at("base"))
            base.emplace_back(c.at("re").get<double>(), c.at("im").get<double>());
        cc.base = TorusPoint::from_float(base);
        for (const auto& g : comp.at("generators"))
            cc.generators.push_back({g[0].get<int>(), g[1].get<int>()});
        for (const auto& pt : coset_samples(cc, 16)) {
            double res = std::abs(eval(p, pt.coords));
            if (res > 1e-6 * scale)
                return fail("coset sample residual " + fmt17(res) + " exceeds bound");
        }
    }
    return ReplayResult{};
}

inline ReplayResult replay_decide(const Json& rep, const LaurentPoly& p,
                                  const std::vector<std::string>& vars) {
    const double scale = coeff_magnitude_sum(p);
    const double tol = rep.at("config").at("tolerance").get<double>();
    const std::string verdict = rep.at("verdict").get<std::string>();
    const Json& cert = rep.at("certificate");

    VarietySpec V;
    V.n = static_cast<int>(vars.size());
    V.generators = {p};

    if (verdict == "Unknown") return ReplayResult{true, "Unknown verdict carries no claim"};

    if (cert.contains("self_star")) {
        std::string claimed = cert.at("self_star").at("result").get<std::string>();
        SelfStarTranscript ss = self_star_check(V);
        const char* got = ss.result == SelfStarTranscript::Result::yes ? "yes"
                          : ss.result == SelfStarTranscript::Result::no ? "no"
                                                                        : "inconclusive";
        if (claimed != got)
            return fail("self_star result mismatch: report says " + claimed + ", recheck says " + got);
    }
    if (verdict == "NotDense") {
        if (rep.at("reason") == "not_self_star") {
            if (!cert.contains("self_star") || cert.at("self_star").at("result") != "no")
                return fail("NotDense/not_self_star without a failing self-star transcript");
        }
        if (cert.contains("solutions"))
            return replay_solutions(cert.at("solutions"), p, scale);
        return ReplayResult{};
    }

    // Dense
    if (rep.at("reason") == "odd_degree") {
        if (!cert.contains("odd_degree")) return fail("Dense/odd_degree without certificate");
        auto od = odd_degree_criterion(V);
        if (!od) return fail("odd-degree criterion does not apply on recheck");
        if (od->degree % 2 == 0) return fail("recomputed projection degree is even");
        if (od->degree != cert.at("odd_degree").at("degree").get<int>())
            return fail("projection degree mismatch");
    }
    if (cert.contains("solutions")) {
        ReplayResult r = replay_solutions(cert.at("solutions"), p, scale);
        if (!r.ok) return r;
    }
    if (cert.contains("arc")) {
        const Json& arc = cert.at("arc");
        long checked = 0;
        for (const auto& s : arc.at("witness_samples")) {
            Complex z = std::polar(1.0, s.at("theta").get<double>());
            Complex w(s.at("w_re").get<double>(), s.at("w_im").get<double>());
            if (std::abs(std::abs(w) - 1.0) > tol)
                return fail("witness sample leaves the unit circle");
            double res = std::abs(eval(p, {z, w}));
            if (res > 1e-6 * scale)
                return fail("witness sample residual " + fmt17(res) + " exceeds bound");
            ++checked;
        }
        if (checked == 0 && rep.at("reason") == "branch_witness")
            return fail("branch witness carries no samples");
    } else if (rep.at("reason") == "branch_witness") {
        return fail("Dense/branch_witness without an arc certificate");
    }
    return ReplayResult{};
}

inline ReplayResult replay_circle_map(const Json& rep) {
    const Json& input = rep.at("input");
    std::vector<std::string> vars = input.at("variables").get<std::vector<std::string>>();
    LaurentPoly num = parse_poly(input.at("numerator").get<std::string>(), vars);
    LaurentPoly den = parse_poly(input.at("denominator").get<std::string>(), vars);
    std::string sub = rep.at("subcommand").get<std::string>();

    if (sub == "factor") {
        const Json& f = rep.at("factors");
        BlaschkeFactors bf;
        for (const auto& a : f.at("alphas"))
            bf.alphas.emplace_back(a.at("re").get<double>(), a.at("im").get<double>());
        bf.unit = Complex(f.at("unit").at("re").get<double>(), f.at("unit").at("im").get<double>());
        bf.power = f.at("power").get<int>();
        for (int k = 0; k < 64; ++k) {
            Complex z = std::polar(1.0, 2.0 * M_PI * k / 64.0 + 0.013);
            Complex dv = eval(den, {z});
            if (std::abs(dv) < 1e-9) continue;
            Complex lhs = eval_blaschke(bf, z);
            Complex rhs = eval(num, {z}) / dv;
            if (std::abs(lhs - rhs) > 1e-5 * std::max(1.0, std::abs(rhs)))
                return fail("factorization does not reproduce the map at theta sample " +
                            std::to_string(k));
        }
        return ReplayResult{};
    }

    std::string status = rep.at("result").at("status").get<std::string>();
    if (status == "proven") {
        VerifyResult v = verify_circle_map(num, den);
        if (v.status != VerifyResult::Status::proven)
            return fail("proven claim does not recheck");
        return ReplayResult{};
    }
    if (status == "refuted") {
        const Json& cex = rep.at("result").at("counterexample");
        std::vector<Complex> s;
        for (const auto& c : cex) s.emplace_back(c.at("re").get<double>(), c.at("im").get<double>());
        Complex dv = eval(den, s);
        if (std::abs(dv) == 0.0) return fail("counterexample hits a pole");
        double dev = std::abs(std::abs(eval(num, s) / dv) - 1.0);
        if (dev < 5e-7) return fail("counterexample deviation not reproduced");
        return ReplayResult{};
    }
    return ReplayResult{true, "unknown verdict carries no claim"};
}

}  // namespace detail

inline ReplayResult verify_report(const Json& rep) {
    try {
        if (rep.at("tool") != "torus-locus") return detail::fail("not a torus-locus report");
        std::string cmd = rep.at("command").get<std::string>();
        if (cmd == "circle-map") return detail::replay_circle_map(rep);

        const Json& input = rep.at("input");
        std::vector<std::string> vars = input.at("variables").get<std::vector<std::string>>();
        LaurentPoly p = parse_poly(input.at("expression").get<std::string>(), vars);
        if (cmd == "decide") return detail::replay_decide(rep, p, vars);
        if (cmd == "solve")
            return detail::replay_solutions(rep.at("solutions"), p, coeff_magnitude_sum(p));
        return detail::fail("unrecognized command: " + cmd);
    } catch (const Json::exception& e) {
        return detail::fail(std::string("malformed report: ") + e.what());
    } catch (const std::exception& e) {
        return detail::fail(std::string("replay error: ") + e.what());
    }
}

}  // namespace toruslocus
