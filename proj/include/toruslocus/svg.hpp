#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "toruslocus/density.hpp"
#include "toruslocus/report.hpp"

namespace toruslocus {

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct PlotFrame {
    double x0, y0, w, h;      // pixel box
    double tmin, tmax;        // theta domain
    double vmin, vmax;        // value range
    double px(double t) const { return x0 + (t - tmin) / (tmax - tmin) * w; }
    double py(double v) const { return y0 + h - (v - vmin) / (vmax - vmin) * h; }
};

inline void svg_axes(std::string& out, const PlotFrame& f, const std::string& ylabel) {
    out += "<rect x=\"" + svg_num(f.x0) + "\" y=\"" + svg_num(f.y0) + "\" width=\"" +
           svg_num(f.w) + "\" height=\"" + svg_num(f.h) +
           "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + svg_num(f.x0 - 34) + "\" y=\"" + svg_num(f.y0 + f.h / 2) +
           "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 " +
           svg_num(f.x0 - 34) + " " + svg_num(f.y0 + f.h / 2) + ")\">" + xml_escape(ylabel) +
           "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        double t = f.tmin + (f.tmax - f.tmin) * k / 4.0;
        double x = f.px(t);
        out += "<line x1=\"" + svg_num(x) + "\" y1=\"" + svg_num(f.y0 + f.h) + "\" x2=\"" +
               svg_num(x) + "\" y2=\"" + svg_num(f.y0 + f.h + 4) +
               "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        char lab[32];
        std::snprintf(lab, sizeof lab, "%.3f", t);
        out += "<text x=\"" + svg_num(x) + "\" y=\"" + svg_num(f.y0 + f.h + 16) +
               "\" font-size=\"10\" text-anchor=\"middle\">" + lab + "</text>\n";
    }
}

inline void svg_polyline(std::string& out, const std::vector<std::pair<double, double>>& pix,
                         const std::string& color, double width) {
    if (pix.empty()) return;
    out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + svg_num(width) +
           "\" points=\"";
    for (size_t k = 0; k < pix.size(); ++k) {
        if (k) out += ' ';
        out += svg_num(pix[k].first) + "," + svg_num(pix[k].second);
    }
    out += "\"/>\n";
}

inline const char* plot_palette(int b) {
    static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd",
                                   "#8c564b", "#17becf", "#bcbd22", "#7f7f7f"};
    return colors[b % 8];
}

}  // namespace detail

/// Self-contained SVG: top panel arg(w) against theta, bottom panel the
/// off-circle deviation ||w|-1| (clamped to [0,1]). With a branch witness the
/// tracked branches are drawn and the witness arc overlaid; a NotDense finite
/// verdict marks its points; otherwise a heat-line of the per-fiber minimum
/// deviation is drawn so the output is still informative.
inline std::string plot_svg(const LaurentPoly& p, const std::vector<std::string>& vars,
                            const DensityVerdict& dv, const RunConfig& cfg) {
    const double W = 900, H = 620;
    detail::PlotFrame top{70, 50, W - 110, 230, -M_PI, M_PI, -M_PI, M_PI};
    detail::PlotFrame bot{70, 340, W - 110, 230, -M_PI, M_PI, 0.0, 1.0};

    std::string body;
    std::string note = std::string("verdict: ") + to_string(dv.verdict) + ", reason: " +
                       to_string(dv.reason);

    const BranchWitness* bw =
        dv.certificate.branch ? &*dv.certificate.branch : nullptr;

    if (bw && !bw->thetas.empty()) {
        top.tmin = bot.tmin = bw->thetas.front();
        top.tmax = bot.tmax = bw->thetas.back();
        if (top.tmax - top.tmin < 1e-9) { top.tmax = top.tmin + 1.0; bot.tmax = bot.tmin + 1.0; }
        const size_t n = bw->thetas.size();
        const size_t stride = std::max<size_t>(1, n / 2048);
        for (size_t b = 0; b < bw->branches.size(); ++b) {
            std::vector<std::pair<double, double>> arg_pix, dev_pix;
            double prev_arg = 0.0;
            for (size_t k = 0; k < n; k += stride) {
                Complex w = bw->branches[b][k];
                double th = bw->thetas[k];
                double a = std::arg(w);
                // break the polyline at branch-cut jumps so wraps don't smear
                if (!arg_pix.empty() && std::abs(a - prev_arg) > M_PI) {
                    detail::svg_polyline(body, arg_pix, detail::plot_palette(static_cast<int>(b)), 1.2);
                    arg_pix.clear();
                }
                prev_arg = a;
                arg_pix.emplace_back(top.px(th), top.py(a));
                double dev = std::min(1.0, std::abs(std::abs(w) - 1.0));
                dev_pix.emplace_back(bot.px(th), bot.py(dev));
            }
            detail::svg_polyline(body, arg_pix, detail::plot_palette(static_cast<int>(b)), 1.2);
            detail::svg_polyline(body, dev_pix, detail::plot_palette(static_cast<int>(b)), 1.2);
        }
        if (dv.certificate.arc) {
            const auto& arc = *dv.certificate.arc;
            const auto& branch = bw->branches[static_cast<size_t>(arc.branch)];
            const bool wrapped = arc.theta_start > arc.theta_end;  // run crosses the seam
            auto in_arc = [&](double th) {
                if (arc.full_circle) return true;
                return wrapped ? (th >= arc.theta_start || th <= arc.theta_end)
                               : (th >= arc.theta_start && th <= arc.theta_end);
            };
            std::vector<std::pair<double, double>> hit_pix;
            double prev_arg = 0.0;
            for (size_t k = 0; k < n; ++k) {
                Complex w = branch[k];
                if (!in_arc(bw->thetas[k]) ||
                    std::abs(std::abs(w) - 1.0) >= dv.probe.tol / 10.0) {
                    detail::svg_polyline(body, hit_pix, "#d62728", 2.6);
                    hit_pix.clear();
                    continue;
                }
                double a = std::arg(w);
                if (!hit_pix.empty() && std::abs(a - prev_arg) > M_PI) {
                    detail::svg_polyline(body, hit_pix, "#d62728", 2.6);
                    hit_pix.clear();
                }
                prev_arg = a;
                hit_pix.emplace_back(top.px(bw->thetas[k]), top.py(a));
            }
            detail::svg_polyline(body, hit_pix, "#d62728", 2.6);
            note += arc.full_circle ? " (full-circle witness arc)" : " (witness arc highlighted)";
        }
    } else if (dv.certificate.solutions &&
               dv.certificate.solutions->kind == SolutionKind::finite) {
        for (const auto& pt : dv.certificate.solutions->points) {
            double th = std::arg(pt.coords[0]);
            double aw = pt.coords.size() > 1 ? std::arg(pt.coords[1]) : 0.0;
            double dev = pt.coords.size() > 1 ? std::abs(std::abs(pt.coords[1]) - 1.0) : 0.0;
            body += "<circle cx=\"" + detail::svg_num(top.px(th)) + "\" cy=\"" +
                    detail::svg_num(top.py(aw)) + "\" r=\"5\" fill=\"#d62728\"/>\n";
            body += "<circle cx=\"" + detail::svg_num(bot.px(th)) + "\" cy=\"" +
                    detail::svg_num(bot.py(std::min(1.0, dev))) + "\" r=\"5\" fill=\"#d62728\"/>\n";
        }
        note += " (finite solution points marked)";
    } else {
        // No witness and no finite points: heat-line of min ||w|-1| per fiber.
        int fiber = detail::pick_fiber_var(dv.variety);
        int N = std::min(cfg.grid_size, 512);
        std::vector<std::pair<double, double>> dev_pix;
        for (int j = 0; j < N; ++j) {
            double th = -M_PI + 2.0 * M_PI * j / N;
            double best = 1.0;
            try {
                FiberPoly fp = fiber_restrict(p, {std::polar(1.0, th)}, fiber);
                RootSet rs = roots(fp.coeffs);
                for (const auto& r : rs.roots)
                    best = std::min(best, std::abs(std::abs(r) - 1.0));
            } catch (const std::exception&) {
                if (!dev_pix.empty()) {
                    detail::svg_polyline(body, dev_pix, "#1f77b4", 1.2);
                    dev_pix.clear();
                }
                continue;
            }
            dev_pix.emplace_back(bot.px(th), bot.py(std::min(1.0, best)));
        }
        detail::svg_polyline(body, dev_pix, "#1f77b4", 1.2);
        note += " (no witness arc; showing fiber modulus heat-line)";
    }

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           detail::svg_num(W) + "\" height=\"" + detail::svg_num(H) + "\" viewBox=\"0 0 " +
           detail::svg_num(W) + " " + detail::svg_num(H) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    std::string title;
    for (size_t k = 0; k < vars.size(); ++k) title += (k ? "," : "") + vars[k];
    out += "<text x=\"" + detail::svg_num(W / 2) +
           "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">" +
           detail::xml_escape(format_poly(p, vars) + "  [" + title + "]") + "</text>\n";
    detail::svg_axes(out, top, "arg w");
    detail::svg_axes(out, bot, "||w|-1| (clamped)");
    out += "<text x=\"" + detail::svg_num(W / 2) + "\" y=\"" + detail::svg_num(H - 14) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + detail::xml_escape(note) + "</text>\n";
    out += body;
    out += "</svg>\n";
    return out;
}

}  // namespace toruslocus
