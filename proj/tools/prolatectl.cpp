// Command-line front end: spectra, critical values, monodromy reports,
// reduced-space slices, EBK comparisons, and figure presets.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "prolate/actions.hpp"
#include "prolate/classical.hpp"
#include "prolate/core.hpp"
#include "prolate/interbasis.hpp"
#include "prolate/monodromy.hpp"
#include "prolate/reduction.hpp"

namespace {

using namespace prolate;

// 15 significant digits, the canonical number format of every emitter.
std::string fg(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// SVG coordinates need far less precision.
std::string f2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Accepts plain decimals and exact rationals like "144/5".
double parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        }
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        double p = std::stod(num, &used);
        if (used != num.size()) throw std::invalid_argument(text);
        double q = std::stod(den, &used);
        if (used != den.size() || q == 0.0) throw std::invalid_argument(text);
        return p / q;
    } catch (const std::exception&) {
        throw PreconditionError("cannot parse number '" + text + "'");
    }
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw PreconditionError("empty list '" + text + "'");
    return out;
}

// Output sink: "-" means stdout.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw PreconditionError("cannot write output path '" + path +
                                        "'");
            out_ = &file_;
        }
    }
    std::ostream& os() { return *out_; }

  private:
    std::ofstream file_;
    std::ostream* out_ = &std::cout;
};

// ---------------------------------------------------------------------------
// critical-curve sampling shared by the CSV emitter and the figures

struct CritSample {
    double s0;
    std::optional<CriticalPoint> value;
};

// Double roots inside the eta range (-1, 1) trace one family of critical
// values, double roots beyond s = 1 the other; invalid locations (lz^2 < 0)
// stay in the sample list as gaps so curve segments split correctly.
struct CriticalSet {
    std::vector<CritSample> eta, xi;
    IsolatedValue isolated;
};

CriticalSet sample_critical(int n, const SystemParams& params) {
    CriticalSet set{{}, {}, isolated_critical_value(n, params)};
    double E = energy_from_n(n);
    const int N = 600;
    // On the shell |lz| <= n (the equatorial circular orbit), where the two
    // branches meet; solutions beyond that bound are off the energy surface.
    auto physical = [&](double s0) -> std::optional<CriticalPoint> {
        auto v = critical_curve(E, params, s0);
        if (v && v->lz > n * (1.0 + 1e-12)) return std::nullopt;
        return v;
    };
    for (int j = 0; j < N; ++j) {
        double s0 = -1.0 + 2.0 * (j + 0.5) / N;
        set.eta.push_back({s0, physical(s0)});
    }
    // The xi-type branch starts where lz = 0 (s0 = n^2/a, clipped to s > 1)
    // and ends at the corner lz = n; locate the end by expansion + bisection.
    auto lz_at = [&](double s0) {
        auto v = critical_curve(E, params, s0);
        return v ? v->lz : 2.0 * n;  // invalid counts as past the corner
    };
    double start = std::max(n * double(n) / params.a, 1.0 + 1e-9);
    start += 1e-9 * (1.0 + start);  // off the exact collapse point
    double lo = start, hi = start;
    for (int i = 0; i < 200 && lz_at(hi) < n; ++i) {
        lo = hi;
        hi = start + std::max(2.0 * (hi - start), 1e-6 * (1.0 + start));
    }
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (lz_at(mid) < n ? lo : hi) = mid;
    }
    for (int j = 0; j <= N; ++j) {
        double s0 = start + (hi - start) * j / N;
        set.xi.push_back({s0, physical(s0)});
    }
    return set;
}

// ---------------------------------------------------------------------------
// commands

void cmd_spectrum(int n, double a, const std::string& format,
                  const std::string& out) {
    SystemParams params(a);
    auto spec = joint_spectrum(n, params);
    Sink sink(out);
    if (format == "csv") {
        sink.os() << "m,g\n";
        for (const auto& [m, col] : spec.columns)
            for (double g : col) sink.os() << m << "," << fg(g) << "\n";
        return;
    }
    if (format != "json")
        throw PreconditionError("spectrum supports formats csv and json");
    std::ostream& os = sink.os();
    os << "{\"params\":{\"n\":" << n << ",\"a\":" << fg(a)
       << ",\"E\":" << fg(spec.energy) << "},\"result\":{\"points\":[";
    bool first = true;
    for (const auto& [m, col] : spec.columns)
        for (double g : col) {
            if (!first) os << ",";
            first = false;
            os << "{\"m\":" << m << ",\"g\":" << fg(g) << "}";
        }
    os << "]},\"diagnostics\":{\"count\":" << spec.total_states() << "}}\n";
}

void cmd_critical(int n, double a, const std::string& format,
                  const std::string& out) {
    if (format != "csv")
        throw PreconditionError("critical supports only the csv format");
    SystemParams params(a);
    auto set = sample_critical(n, params);
    Sink sink(out);
    sink.os() << "s0,l_z,g,branch\n";
    auto emit = [&](const std::vector<CritSample>& branch, const char* name) {
        for (const auto& s : branch)
            if (s.value)
                sink.os() << fg(s.s0) << "," << fg(s.value->lz) << ","
                          << fg(s.value->g) << "," << name << "\n";
    };
    emit(set.eta, "eta");
    emit(set.xi, "xi");
    if (set.isolated.status != IsolatedValue::Status::absent) {
        const char* flag =
            set.isolated.status == IsolatedValue::Status::degenerate
                ? "degenerate"
                : "isolated";
        sink.os() << "1," << fg(set.isolated.value.lz) << ","
                  << fg(set.isolated.value.g) << "," << flag << "\n";
    }
}

void write_monodromy_report(std::ostream& os, const JointSpectrum& spec,
                            const MonodromyResult& res, double scaling,
                            const char* source) {
    const MonodromyMatrix& M = res.matrix;
    const LoopSpec& loop = res.loop;
    os << "{\"params\":{\"n\":" << spec.n << ",\"a\":" << fg(spec.params.a)
       << ",\"E\":" << fg(spec.energy) << "},\"result\":{\"verdict\":\""
       << (M.is_identity() ? "no-defect" : "defect") << "\",\"matrix\":[["
       << M.a11 << "," << M.a12 << "],[" << M.a21 << "," << M.a22
       << "]],\"defect_index\":" << M.defect_index()
       << ",\"loop\":{\"m_center\":" << loop.m_center
       << ",\"width\":" << loop.width << ",\"center_lz\":" << fg(loop.center_lz)
       << ",\"center_g\":" << fg(loop.center_g)
       << ",\"g_bottom\":" << fg(loop.g_bottom)
       << ",\"g_top\":" << fg(loop.g_top) << ",\"clockwise\":"
       << (loop.clockwise ? "true" : "false") << "},\"trace\":[";
    for (std::size_t i = 0; i < res.trace.size(); ++i) {
        const TraceCell& c = res.trace[i];
        if (i) os << ",";
        os << "{\"m\":" << c.m << ",\"k\":" << c.k << ",\"g\":" << fg(c.g)
           << ",\"u_k\":" << c.u_k << ",\"u_g\":" << fg(c.u_g)
           << ",\"v_k\":" << c.v_k << ",\"v_g\":" << fg(c.v_g) << "}";
    }
    os << "]},\"diagnostics\":{\"lattice_scaling\":" << fg(scaling)
       << ",\"cells\":" << res.trace.size() << ",\"source\":\"" << source
       << "\"}}\n";
}

JointSpectrum spectrum_from_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot read input path '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
        int n = j.at("params").at("n").get<int>();
        double a = j.at("params").at("a").get<double>();
        JointSpectrum spec{n, SystemParams(a), j.at("params").at("E"), {}};
        for (const auto& pt : j.at("result").at("points"))
            spec.columns[pt.at("m").get<int>()].push_back(
                pt.at("g").get<double>());
        for (auto& [m, col] : spec.columns) std::sort(col.begin(), col.end());
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("malformed spectrum JSON: ") +
                                e.what());
    }
}

void cmd_monodromy(int n, double a, const std::string& center_text,
                   int loop_width, const std::string& in_path,
                   const std::string& out) {
    JointSpectrum spec = in_path.empty()
                             ? joint_spectrum(n, SystemParams(a))
                             : spectrum_from_json(in_path);
    double center_lz = 0.0, center_g = 2.0 * spec.params.a;
    if (!center_text.empty()) {
        auto parts = parse_list(center_text);
        if (parts.size() != 2)
            throw PreconditionError("--center expects 'lz,g'");
        center_lz = parts[0];
        center_g = parts[1];
    }
    auto lattice = build_lattice(spec);
    LoopSpec loop = default_loop(lattice, center_lz, center_g, loop_width);
    MonodromyResult res = transport_cell(lattice, loop);
    Sink sink(out);
    write_monodromy_report(sink.os(), spec, res, lattice.scaling,
                           in_path.empty() ? "computed" : "file");
}

void cmd_reduced(int n, const std::vector<double>& a_values, int m,
                 const std::string& format, const std::string& out) {
    if (format != "csv")
        throw PreconditionError("reduced supports only the csv format");
    Sink sink(out);
    sink.os() << "set,rho1,rho2\n";
    auto emit = [&](const std::string& name,
                    const std::vector<std::array<double, 2>>& pts) {
        for (const auto& p : pts)
            sink.os() << name << "," << fg(p[0]) << "," << fg(p[1]) << "\n";
    };
    // The rho3 = 0 section of the reduced surface is a-independent; each a
    // contributes the G level line through the singular value g = 2a.
    bool surface_done = false;
    for (double a : a_values) {
        SystemParams params(a);
        auto slice = phase_space_slice(n, m, params, {2.0 * a});
        if (!surface_done) {
            emit("upper", slice.upper);
            emit("lower", slice.lower);
            surface_done = true;
        }
        for (const auto& line : slice.lines)
            emit("a=" + fg(a), line.pts);
    }
}

void cmd_actions(int n, double a, std::optional<int> m_filter,
                 const std::string& format, const std::string& out) {
    if (format != "csv")
        throw PreconditionError("actions supports only the csv format");
    SystemParams params(a);
    Sink sink(out);
    sink.os() << "m,n_eta,g_exact,g_ebk,abs_err\n";
    for (int m = -(n - 1); m <= n - 1; ++m) {
        if (m_filter && m != *m_filter) continue;
        auto exact = eigenvalues(build_matrix(n, m, params));
        for (int n_eta = 0; n_eta < static_cast<int>(exact.size()); ++n_eta) {
            double ge = ebk_g(EbkLabel(n, m, n_eta), params);
            sink.os() << m << "," << n_eta << "," << fg(exact[n_eta]) << ","
                      << fg(ge) << "," << fg(std::fabs(ge - exact[n_eta]))
                      << "\n";
        }
    }
}

// ---------------------------------------------------------------------------
// figures: hand-rolled SVG scatter/curve overlays

struct Panel {
    double x0, x1, y0, y1;          // data window
    double ox = 0, w = 640, h = 560;  // placement inside the canvas
    static constexpr double ml = 58, mr = 14, mt = 34, mb = 44;

    double px(double x) const {
        return ox + ml + (x - x0) / (x1 - x0) * (w - ml - mr);
    }
    double py(double y) const {
        return mt + (y1 - y) / (y1 - y0) * (h - mt - mb);
    }
};

struct Svg {
    std::ostringstream body;
    double width = 0, height = 0;

    void frame(const Panel& p, const std::string& title) {
        body << "<rect x='" << f2(p.ox + Panel::ml) << "' y='" << f2(Panel::mt)
             << "' width='" << f2(p.w - Panel::ml - Panel::mr) << "' height='"
             << f2(p.h - Panel::mt - Panel::mb)
             << "' fill='none' stroke='#444' stroke-width='1'/>\n";
        body << "<text x='" << f2(p.ox + p.w / 2) << "' y='22' fill='#111' "
                "font-size='15' text-anchor='middle'>"
             << title << "</text>\n";
        body << "<text x='" << f2(p.ox + p.w / 2) << "' y='"
             << f2(p.h - 10)
             << "' fill='#111' font-size='13' text-anchor='middle'>l_z"
                "</text>\n";
        body << "<text x='" << f2(p.ox + 18) << "' y='" << f2(p.h / 2)
             << "' fill='#111' font-size='13' text-anchor='middle' "
                "transform='rotate(-90 "
             << f2(p.ox + 18) << " " << f2(p.h / 2) << ")'>g</text>\n";
    }

    void dot(const Panel& p, double x, double y, const char* color,
             double r = 1.7) {
        if (x < p.x0 || x > p.x1 || y < p.y0 || y > p.y1) return;
        body << "<circle cx='" << f2(p.px(x)) << "' cy='" << f2(p.py(y))
             << "' r='" << f2(r) << "' fill='" << color << "'/>\n";
    }

    void polyline(const Panel& p, const std::vector<std::array<double, 2>>& pts,
                  const char* color, double width = 1.4) {
        if (pts.size() < 2) return;
        body << "<polyline fill='none' stroke='" << color
             << "' stroke-width='" << f2(width) << "' points='";
        for (const auto& q : pts)
            body << f2(p.px(std::clamp(q[0], p.x0, p.x1))) << ","
                 << f2(p.py(std::clamp(q[1], p.y0, p.y1))) << " ";
        body << "'/>\n";
    }

    void cross(const Panel& p, double x, double y, const char* color) {
        double cx = p.px(x), cy = p.py(y), r = 5.0;
        body << "<path d='M" << f2(cx - r) << " " << f2(cy) << " H"
             << f2(cx + r) << " M" << f2(cx) << " " << f2(cy - r) << " V"
             << f2(cy + r) << "' stroke='" << color
             << "' stroke-width='2' fill='none'/>\n";
    }

    void save(const std::string& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw PreconditionError("cannot write output path '" + path +
                                    "'");
        out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << f2(width)
            << "' height='" << f2(height) << "' viewBox='0 0 " << f2(width)
            << " " << f2(height) << "'>\n<rect width='100%' height='100%' "
            << "fill='white'/>\n"
            << body.str() << "</svg>\n";
    }
};

// Critical-curve segments in the (lz, g) plane, split at invalid samples and
// mirrored to lz < 0.
std::vector<std::vector<std::array<double, 2>>> critical_segments(
    const CriticalSet& set) {
    std::vector<std::vector<std::array<double, 2>>> segs;
    for (const auto* branch : {&set.eta, &set.xi}) {
        for (int sign : {+1, -1}) {
            std::vector<std::array<double, 2>> cur;
            for (const auto& s : *branch) {
                if (s.value) {
                    cur.push_back({sign * s.value->lz, s.value->g});
                } else if (!cur.empty()) {
                    segs.push_back(std::move(cur));
                    cur.clear();
                }
            }
            if (!cur.empty()) segs.push_back(std::move(cur));
        }
    }
    return segs;
}

Panel spectrum_panel(const JointSpectrum& spec, double ox = 0.0) {
    double gmin = 1e300, gmax = -1e300;
    for (const auto& [m, col] : spec.columns)
        for (double g : col) {
            gmin = std::min(gmin, g);
            gmax = std::max(gmax, g);
        }
    double pad = 0.06 * (gmax - gmin);
    return Panel{-double(spec.n), double(spec.n), gmin - pad, gmax + pad, ox};
}

void draw_spectrum_panel(Svg& svg, const Panel& panel,
                         const JointSpectrum& spec, const CriticalSet& crit,
                         const std::string& title) {
    svg.frame(panel, title);
    for (const auto& seg : critical_segments(crit))
        svg.polyline(panel, seg, "#cc2222");
    for (const auto& [m, col] : spec.columns)
        for (double g : col) svg.dot(panel, m, g, "#111111");
    if (crit.isolated.status == IsolatedValue::Status::present)
        svg.cross(panel, crit.isolated.value.lz, crit.isolated.value.g,
                  "#cc2222");
}

void figure_lattice(const std::string& path, int n, double a,
                    bool with_trace) {
    SystemParams params(a);
    auto spec = joint_spectrum(n, params);
    auto crit = sample_critical(n, params);
    Svg svg;
    Panel panel = spectrum_panel(spec);
    svg.width = panel.w;
    svg.height = panel.h;
    draw_spectrum_panel(svg, panel, spec, crit,
                        "n = " + std::to_string(n) + ", a = " + fg(a));
    if (with_trace) {
        auto lattice = build_lattice(spec);
        auto res = transport_cell(
            lattice, default_loop(lattice, 0.0, 2.0 * a));
        std::vector<std::array<double, 2>> anchors;
        for (const auto& c : res.trace) {
            anchors.push_back({double(c.m), c.g});
            // the transported cell: anchor with its two basis points
            svg.polyline(panel,
                         {{double(c.m + 1), c.u_g},
                          {double(c.m), c.g},
                          {double(c.m), c.v_g}},
                         "#2266cc", 0.9);
        }
        anchors.push_back(anchors.front());
        svg.polyline(panel, anchors, "#2266cc", 1.8);
    }
    svg.save(path);
}

void figure_panels(const std::string& path, int n,
                   const std::vector<double>& a_values) {
    Svg svg;
    double ox = 0.0;
    for (double a : a_values) {
        SystemParams params(a);
        auto spec = joint_spectrum(n, params);
        auto crit = sample_critical(n, params);
        Panel panel = spectrum_panel(spec, ox);
        draw_spectrum_panel(svg, panel, spec, crit, "a = " + fg(a));
        ox += panel.w;
    }
    svg.width = ox;
    svg.height = Panel{}.h;
    svg.save(path);
}

void figure_slice(const std::string& path, int n, int m,
                  const std::vector<double>& a_values) {
    Svg svg;
    Panel panel{-(n + 1.0), n + 1.0, 0.0, 0.0};
    // window: surface extent plus room for the steep G lines
    double r2max = 0.0;
    SystemParams first(a_values.front());
    auto base = phase_space_slice(n, m, first, {});
    for (const auto& q : base.upper) r2max = std::max(r2max, q[1]);
    panel.y0 = -1.6 * r2max;
    panel.y1 = 1.6 * r2max;
    svg.width = panel.w;
    svg.height = panel.h;
    svg.body << "<text x='" << f2(panel.w / 2)
             << "' y='22' fill='#111' font-size='15' text-anchor='middle'>"
             << "rho3 = 0 slice, n = " << n << ", m = " << m << "</text>\n";
    svg.polyline(panel, base.upper, "#111111", 1.8);
    svg.polyline(panel, base.lower, "#111111", 1.8);
    const char* colors[] = {"#cc2222", "#2266cc", "#22aa55", "#aa22aa"};
    for (std::size_t i = 0; i < a_values.size(); ++i) {
        SystemParams params(a_values[i]);
        auto slice = phase_space_slice(n, m, params, {2.0 * a_values[i]});
        for (const auto& line : slice.lines)
            svg.polyline(panel, line.pts, colors[i % 4], 1.3);
        svg.body << "<text x='" << f2(panel.w - 120) << "' y='"
                 << f2(40.0 + 18.0 * i) << "' fill='" << colors[i % 4]
                 << "' font-size='13'>a = " << fg(a_values[i]) << "</text>\n";
    }
    // axis labels
    svg.body << "<text x='" << f2(panel.w / 2) << "' y='" << f2(panel.h - 10)
             << "' fill='#111' font-size='13' text-anchor='middle'>rho1"
             << "</text>\n";
    svg.save(path);
}

void cmd_figures(int which, const std::string& out_dir) {
    std::string d = out_dir.empty() ? "." : out_dir;
    if (d.back() == '/') d.pop_back();
    std::filesystem::create_directories(d);
    if (which == 0 || which == 1)
        figure_lattice(d + "/fig1.svg", 12, 144.0 / 5.0, true);
    if (which == 0 || which == 3)
        figure_panels(d + "/fig3.svg", 12, {4.0, 36.0, 288.0});
    if (which == 0 || which == 4)
        figure_slice(d + "/fig4.svg", 12, 0, {4.0, 36.0, 288.0});
    if (which == 0 || which == 5)
        for (int n : {6, 21, 41})
            figure_lattice(d + "/fig5_n" + std::to_string(n) + ".svg", n,
                           n * n / 4.0, false);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Joint spectrum of the hydrogen atom in prolate spheroidal "
        "coordinates: spectra, critical values, and lattice monodromy"};
    app.require_subcommand(1);

    std::string a_text = "1", format = "csv", out = "-";
    std::string center_text, in_path, a_list_text;
    int n = 12, m = 0, loop_width = 0, which = 0;
    bool m_given = false;

    auto add_common = [&](CLI::App* cmd, bool needs_a = true) {
        cmd->add_option("--n", n, "principal quantum number")
            ->required()
            ->check(CLI::PositiveNumber);
        if (needs_a)
            cmd->add_option("--a", a_text,
                            "focal half-distance (rationals like 144/5)");
    };

    auto* spectrum = app.add_subcommand("spectrum", "joint spectrum of G");
    add_common(spectrum);
    spectrum->add_option("--format", format)
        ->check(CLI::IsMember({"csv", "json"}));
    spectrum->add_option("--out", out, "output path ('-' = stdout)");

    auto* critical =
        app.add_subcommand("critical", "classical critical values");
    add_common(critical);
    critical->add_option("--format", format)->check(CLI::IsMember({"csv"}));
    critical->add_option("--out", out);

    auto* monodromy =
        app.add_subcommand("monodromy", "transport a cell, report the matrix");
    add_common(monodromy);
    monodromy->add_option("--center", center_text,
                          "loop center 'lz,g' (default the focus value 0,2a)");
    monodromy->add_option("--loop-width", loop_width, "fixed loop half-width")
        ->check(CLI::NonNegativeNumber);
    monodromy->add_option("--in", in_path,
                          "spectrum JSON to re-ingest instead of computing");
    monodromy->add_option("--out", out);

    auto* reduced =
        app.add_subcommand("reduced", "rho3 = 0 slice with G level lines");
    add_common(reduced, false);
    reduced->add_option("--a", a_list_text, "comma list of a values")
        ->required();
    reduced->add_option("--m", m, "fixed m of the reduced space");
    reduced->add_option("--format", format)->check(CLI::IsMember({"csv"}));
    reduced->add_option("--out", out);

    auto* actions =
        app.add_subcommand("actions", "EBK eigenvalues against exact ones");
    add_common(actions);
    actions->add_option("--m", m, "restrict to one m")
        ->each([&](const std::string&) { m_given = true; });
    actions->add_option("--format", format)->check(CLI::IsMember({"csv"}));
    actions->add_option("--out", out);

    auto* figures = app.add_subcommand("figures", "SVG presets");
    figures->add_option("--which", which, "1, 3, 4 or 5 (default all)")
        ->check(CLI::IsMember({0, 1, 3, 4, 5}));
    figures->add_option("--out", out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        double a = parse_rational(a_text);
        if (app.got_subcommand(spectrum)) {
            cmd_spectrum(n, a, format, out);
        } else if (app.got_subcommand(critical)) {
            cmd_critical(n, a, format, out);
        } else if (app.got_subcommand(monodromy)) {
            cmd_monodromy(n, a, center_text, loop_width, in_path, out);
        } else if (app.got_subcommand(reduced)) {
            cmd_reduced(n, parse_list(a_list_text), m, format, out);
        } else if (app.got_subcommand(actions)) {
            cmd_actions(n, a,
                        m_given ? std::optional<int>(m) : std::nullopt,
                        format, out);
        } else if (app.got_subcommand(figures)) {
            cmd_figures(which, out == "-" ? "." : out);
        }
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
