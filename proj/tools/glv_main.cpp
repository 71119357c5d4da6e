// Command line front end for the planar power-law system analyzer.
//
//   parse FILE      lower a .glv reaction network and print the system JSON
//   equilibrium     positive equilibria (unique / a line of them / none)
//   jacobian        Jacobian report at the unique positive equilibrium
//   focal           first focal value and criticality on the Hopf locus
//   classify        stability verdict with the certificates that back it
//   certify         one certificate by kind: dulac, integral,
//                   invariant-set, boundary-curve
//   simulate        adaptive trajectory integration, CSV samples
//   portrait        nullclines + trajectory fan as CSV and SVG
//   diagram         (alpha, beta) region sweep as CSV and SVG heat map
//
// Exit codes: 0 success, 1 parse/validation error, 2 precondition not met,
// 3 numerical failure.
//
// Determinism: identical invocations produce byte-identical CSV and JSON.
// Doubles are printed with the shortest round-trip representation, SVG
// coordinates with a fixed two-decimal format.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glv/certificates.hpp"
#include "glv/classify.hpp"
#include "glv/equilibrium.hpp"
#include "glv/errors.hpp"
#include "glv/focal.hpp"
#include "glv/json_io.hpp"
#include "glv/local_stability.hpp"
#include "glv/model.hpp"
#include "glv/network.hpp"
#include "glv/simulate.hpp"

namespace {

// ---------------------------------------------------------------------------
// small utilities
// ---------------------------------------------------------------------------

/// Shortest decimal string that parses back to exactly the same double.
std::string num(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw glv::ValidationError("cannot open file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    if (!in.good() && !in.eof())
        throw glv::ValidationError("cannot read file: " + path);
    return text.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw glv::ValidationError("cannot open output file: " + path);
    out << content;
    if (!out) throw glv::ValidationError("cannot write output file: " + path);
}

/// Parse "v1,v2,..." into exactly `count` finite doubles.
std::vector<double> split_doubles(const std::string& text, std::size_t count,
                                  const std::string& what) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw glv::ValidationError(what + ": cannot parse number '" + item + "'");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
            ++used;
        if (used != item.size() || !std::isfinite(v))
            throw glv::ValidationError(what + ": cannot parse number '" + item + "'");
        values.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.size() != count)
        throw glv::ValidationError(what + ": expected " + std::to_string(count) +
                                   " comma-separated numbers, got " +
                                   std::to_string(values.size()));
    return values;
}

/// RFC 4180 field quoting; our labels never need it, but user-supplied
/// strings routed into CSV do.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        quoted += c;
        if (c == '"') quoted += '"';
    }
    quoted += '"';
    return quoted;
}

/// Tick positions at a round step (1, 2 or 5 times a power of ten).
std::vector<double> nice_ticks(double lo, double hi) {
    double span = hi - lo;
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = 10.0 * mag;
    for (double m : {1.0, 2.0, 5.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    std::vector<double> ticks;
    double first = std::ceil(lo / step - 1e-9) * step;
    for (double t = first; t <= hi + 1e-9 * span; t += step)
        ticks.push_back(std::fabs(t) < 1e-12 * span ? 0.0 : t);
    return ticks;
}

// ---------------------------------------------------------------------------
// minimal SVG writer: polylines, cells and labeled axes on a fixed layout
// ---------------------------------------------------------------------------

class SvgCanvas {
  public:
    SvgCanvas(double x_min, double x_max, double y_min, double y_max,
              std::string x_label, std::string y_label, bool with_legend = false)
        : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max),
          x_label_(std::move(x_label)), y_label_(std::move(y_label)),
          height_(with_legend ? 540 : 500) {}

    void set_title(std::string title) { title_ = std::move(title); }

    double px(double x) const {
        return kLeft + (x - x_min_) / (x_max_ - x_min_) * plot_w();
    }
    double py(double y) const {
        return kTop + (y_max_ - y) / (y_max_ - y_min_) * plot_h();
    }

    void add_polyline(const std::vector<std::array<double, 2>>& pts,
                      const char* stroke, double width, bool dashed = false) {
        if (pts.size() < 2) return;
        std::string d = "  <polyline fill=\"none\" stroke=\"";
        d += stroke;
        d += "\" stroke-width=\"" + fmt(width) + "\"";
        if (dashed) d += " stroke-dasharray=\"6,4\"";
        d += " points=\"";
        for (const auto& p : pts) {
            if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
            d += fmt(px(p[0])) + "," + fmt(py(p[1])) + " ";
        }
        d += "\"/>\n";
        series_ += d;
    }

    /// Axis-aligned filled cell in data coordinates (heat map element).
    void add_cell(double x0, double x1, double y0, double y1, const char* fill) {
        double left = px(x0), right = px(x1);
        double top = py(y1), bottom = py(y0);
        series_ += "  <rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) +
                   "\" width=\"" + fmt(right - left) + "\" height=\"" +
                   fmt(bottom - top) + "\" fill=\"" + fill + "\"/>\n";
    }

    void add_dot(double x, double y, const char* fill) {
        series_ += "  <circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) +
                   "\" r=\"3.5\" fill=\"" + fill + "\"/>\n";
    }

    void add_legend(const std::vector<std::pair<std::string, const char*>>& entries) {
        double x = kLeft;
        double y = height_ - 22.0;
        for (const auto& [label, color] : entries) {
            legend_ += "  <rect x=\"" + fmt(x) + "\" y=\"" + fmt(y - 10.0) +
                       "\" width=\"12\" height=\"12\" fill=\"" + color +
                       "\" stroke=\"#444444\" stroke-width=\"0.5\"/>\n";
            legend_ += text_at(x + 16.0, y, label, "start");
            x += 16.0 + 7.2 * static_cast<double>(label.size()) + 18.0;
        }
    }

    std::string render() const {
        std::string svg;
        svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
               std::to_string(kWidth) + "\" height=\"" + std::to_string(height_) +
               "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
               std::to_string(height_) + "\">\n";
        svg += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
        svg += "  <defs><clipPath id=\"plot\"><rect x=\"" + fmt(kLeft) +
               "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(plot_w()) +
               "\" height=\"" + fmt(plot_h()) + "\"/></clipPath></defs>\n";
        svg += grid_and_axes();
        svg += "  <g clip-path=\"url(#plot)\">\n" + series_ + "  </g>\n";
        svg += legend_;
        if (!title_.empty())
            svg += text_at(kLeft + plot_w() / 2.0, kTop - 8.0, title_, "middle");
        svg += "</svg>\n";
        return svg;
    }

  private:
    static constexpr int kWidth = 680;
    static constexpr double kLeft = 64.0, kRight = 20.0, kTop = 24.0, kBottom = 46.0;

    double plot_w() const { return kWidth - kLeft - kRight; }
    double plot_h() const { return height_ - kTop - kBottom - (height_ > 500 ? 34.0 : 0.0); }

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return buf;
    }

    static std::string tick_label(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return buf;
    }

    static std::string text_at(double x, double y, const std::string& s,
                               const char* anchor) {
        return "  <text x=\"" + fmt(x) + "\" y=\"" + fmt(y) +
               "\" font-family=\"monospace\" font-size=\"12\" fill=\"#222222\" "
               "text-anchor=\"" + std::string(anchor) + "\">" + s + "</text>\n";
    }

    std::string grid_and_axes() const {
        std::string out;
        double bottom = kTop + plot_h();
        for (double t : nice_ticks(x_min_, x_max_)) {
            double x = px(t);
            out += "  <line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
                   fmt(x) + "\" y2=\"" + fmt(bottom) +
                   "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
            out += text_at(x, bottom + 16.0, tick_label(t), "middle");
        }
        for (double t : nice_ticks(y_min_, y_max_)) {
            double y = py(t);
            out += "  <line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
                   fmt(kLeft + plot_w()) + "\" y2=\"" + fmt(y) +
                   "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
            out += text_at(kLeft - 8.0, y + 4.0, tick_label(t), "end");
        }
        out += "  <rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" +
               fmt(plot_w()) + "\" height=\"" + fmt(plot_h()) +
               "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        out += text_at(kLeft + plot_w() / 2.0, bottom + 34.0, x_label_, "middle");
        out += text_at(14.0, kTop + 12.0, y_label_, "start");
        return out;
    }

    double x_min_, x_max_, y_min_, y_max_;
    std::string x_label_, y_label_, title_;
    int height_;
    std::string series_, legend_;
};

// ---------------------------------------------------------------------------
// system input: FILE.glv, --exponents/--rates, or --alpha/--beta
// ---------------------------------------------------------------------------

struct SystemOpts {
    std::string file;
    std::string exponents;
    std::string rates;
    std::optional<double> alpha, beta;
};

void attach_system_options(CLI::App* cmd, SystemOpts& opts) {
    cmd->add_option("file", opts.file,
                    "Reaction network file (.glv) defining the system");
    cmd->add_option("--exponents", opts.exponents,
                    "Reduced exponents a1,b1,a3,b3 "
                    "(write --exponents=-1,0,... when the first is negative)");
    cmd->add_option("--rates", opts.rates,
                    "Rate constants k1,k2,k3,k4 (default 1,1,1,1)");
    cmd->add_option("--alpha", opts.alpha,
                    "Exponent alpha of the family x' = x^alpha - x y^beta, "
                    "y' = x y^beta - y");
    cmd->add_option("--beta", opts.beta, "Exponent beta of the same family");
}

glv::GlvSystem resolve_system(const SystemOpts& opts) {
    int modes = (!opts.file.empty() ? 1 : 0) + (!opts.exponents.empty() ? 1 : 0) +
                (opts.alpha || opts.beta ? 1 : 0);
    if (modes != 1)
        throw glv::ValidationError(
            "specify the system exactly one way: FILE, --exponents, or --alpha/--beta");
    if (!opts.file.empty()) {
        if (!opts.rates.empty())
            throw glv::ValidationError(
                "--rates conflicts with a network file; set rates inside the file");
        return glv::lower(glv::parse_network(read_file(opts.file)));
    }
    std::array<double, 4> k{1.0, 1.0, 1.0, 1.0};
    if (!opts.rates.empty()) {
        auto values = split_doubles(opts.rates, 4, "--rates");
        std::copy(values.begin(), values.end(), k.begin());
        for (double v : k)
            if (!(v > 0.0))
                throw glv::ValidationError("--rates entries must be positive");
    }
    if (opts.alpha || opts.beta) {
        if (!(opts.alpha && opts.beta))
            throw glv::ValidationError("--alpha and --beta must be given together");
        return glv::alpha_beta_system(*opts.alpha, *opts.beta, k[0], k[1], k[2], k[3]);
    }
    auto e = split_doubles(opts.exponents, 4, "--exponents");
    glv::GlvSystem sys;
    sys.alpha1 = e[0];
    sys.beta1 = e[1];
    sys.alpha2 = 0.0;
    sys.beta2 = 0.0;
    sys.alpha3 = e[2];
    sys.beta3 = e[3];
    sys.k1 = k[0];
    sys.k2 = k[1];
    sys.k3 = k[2];
    sys.k4 = k[3];
    return sys;
}

glv::RateScope scope_from_string(const std::string& name) {
    if (name == "fixed-k") return glv::RateScope::FixedK;
    if (name == "all-k") return glv::RateScope::AllK;
    return glv::RateScope::AllKStoichiometric;
}

// ---------------------------------------------------------------------------
// parse / equilibrium / jacobian / focal / classify
// ---------------------------------------------------------------------------

int run_parse(const std::string& path, bool canonical) {
    glv::ReactionNetwork net = glv::parse_network(read_file(path));
    if (canonical)
        std::cout << glv::render(net);
    else
        std::cout << glv::to_json(glv::lower(net)) << "\n";
    return 0;
}

int run_equilibrium(const SystemOpts& opts) {
    glv::ReducedSystem red = glv::reduce(resolve_system(opts));
    std::cout << glv::to_json(glv::solve_equilibrium(red)) << "\n";
    return 0;
}

glv::EquilibriumResult require_unique_equilibrium(const glv::ReducedSystem& red,
                                                  const char* who) {
    glv::EquilibriumResult eq = glv::solve_equilibrium(red);
    if (eq.kind != glv::EquilibriumResult::Kind::Unique)
        throw glv::PreconditionError(std::string(who) +
                                     " needs a unique positive equilibrium; "
                                     "this system has " +
                                     glv::to_string(eq.kind) + " equilibria");
    return eq;
}

int run_jacobian(const SystemOpts& opts) {
    glv::GlvSystem sys = resolve_system(opts);
    glv::ReducedSystem red = glv::reduce(sys);
    glv::EquilibriumResult eq = require_unique_equilibrium(red, "the Jacobian report");
    std::cout << glv::to_json(glv::jacobian(sys, eq.x, eq.y)) << "\n";
    return 0;
}

int run_focal(const SystemOpts& opts) {
    glv::ReducedSystem red = glv::reduce(resolve_system(opts));
    std::cout << glv::to_json(glv::hopf_verdict(red)) << "\n";
    return 0;
}

int run_classify(const SystemOpts& opts, const std::string& scope) {
    glv::ReducedSystem red = glv::reduce(resolve_system(opts));
    std::cout << glv::to_json(glv::classify_system(red, scope_from_string(scope)))
              << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

int run_certify(const SystemOpts& opts, const std::string& kind,
                std::optional<double> p, std::optional<double> q) {
    glv::ReducedSystem red = glv::reduce(resolve_system(opts));
    glv::CertificateRecord record;
    if (kind == "dulac") {
        if (p || q) {
            if (!(p && q))
                throw glv::ValidationError("--p and --q must be given together");
            record = glv::dulac_generic(red, *p, *q);
        } else if (opts.alpha && *opts.alpha > 1.0) {
            // Inside the triangle the generic weighted divergence is not
            // negative; the family-specific construction is.
            record = glv::dulac_triangle(*opts.alpha, *opts.beta);
        } else {
            record = glv::dulac_generic(red);
        }
    } else if (kind == "integral") {
        glv::EquilibriumResult eq =
            require_unique_equilibrium(red, "the integral certificate");
        if (red.a1 == 0.0 && red.b3 == 0.0)
            record = glv::first_integral(red, eq.x, eq.y);
        else
            record = glv::lyapunov_derivative_sign(red);
    } else if (kind == "invariant-set") {
        glv::InvariantPattern pattern;
        if (!glv::match_invariant_pattern(red, pattern))
            throw glv::PreconditionError(
                "exponent signs match none of the four forward-invariant-set patterns");
        record = glv::invariant_set(red, pattern);
    } else { // boundary-curve, enforced by the option check
        record = glv::boundary_curve(red);
    }
    std::cout << glv::to_json(record) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

std::string trajectory_csv(const glv::Trajectory& traj) {
    std::string csv = "t,x,y\n";
    csv.reserve(csv.size() + traj.t.size() * 24);
    for (std::size_t i = 0; i < traj.t.size(); ++i)
        csv += num(traj.t[i]) + "," + num(traj.x[i]) + "," + num(traj.y[i]) + "\n";
    return csv;
}

int run_simulate(const SystemOpts& opts, double x0, double y0, double t_max,
                 double rel_tol, double abs_tol, const std::string& out) {
    glv::GlvSystem sys = resolve_system(opts);
    glv::SimConfig cfg;
    cfg.t_max = t_max;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    glv::Trajectory traj = glv::integrate(sys, x0, y0, cfg);
    if (out.empty() || out == "-") {
        std::cout << trajectory_csv(traj);
    } else {
        write_file(out, trajectory_csv(traj));
        write_file(out + ".json", glv::to_json(traj) + "\n"); // terminal-event sidecar
        std::cout << glv::to_json(traj) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// portrait
// ---------------------------------------------------------------------------

struct Series {
    std::string kind;
    int index = 0;
    bool has_t = false;
    std::vector<std::array<double, 3>> pts; // (t, x, y); t unused when !has_t
};

/// Nullcline a u + b v = r in log coordinates, rendered over the window
/// x in (0, x_max], y in (0, y_max].  Affine in (u, v), so the visible arc
/// is a single u-interval.
std::optional<Series> nullcline_series(const char* kind, double a, double b,
                                       double r, double x_max, double y_max) {
    constexpr double kDecades = std::log(1e4); // window depth below the top edge
    const double u_hi = std::log(x_max), u_lo = u_hi - kDecades;
    const double v_hi = std::log(y_max), v_lo = v_hi - kDecades;
    Series s;
    s.kind = kind;
    if (a == 0.0 && b == 0.0) return std::nullopt;
    if (b == 0.0) { // vertical line x = exp(r / a)
        double x = std::exp(r / a);
        if (!(x > 0.0) || x > x_max) return std::nullopt;
        s.pts = {{0.0, x, std::exp(v_lo)}, {0.0, x, y_max}};
        return s;
    }
    if (a == 0.0) { // horizontal line y = exp(r / b)
        double y = std::exp(r / b);
        if (!(y > 0.0) || y > y_max) return std::nullopt;
        s.pts = {{0.0, std::exp(u_lo), y}, {0.0, x_max, y}};
        return s;
    }
    // v(u) = (r - a u) / b; clip u to where v stays inside the window.
    double u1 = (r - b * v_lo) / a;
    double u2 = (r - b * v_hi) / a;
    double lo = std::max(u_lo, std::min(u1, u2));
    double hi = std::min(u_hi, std::max(u1, u2));
    if (!(lo < hi)) return std::nullopt;
    constexpr int kSamples = 400;
    s.pts.reserve(kSamples + 1);
    for (int i = 0; i <= kSamples; ++i) {
        double u = lo + (hi - lo) * i / kSamples;
        double v = (r - a * u) / b;
        s.pts.push_back({0.0, std::exp(u), std::exp(v)});
    }
    return s;
}

Series trajectory_series(const glv::Trajectory& traj, int index) {
    Series s;
    s.kind = "trajectory";
    s.index = index;
    s.has_t = true;
    std::size_t n = traj.t.size();
    std::size_t stride = n > 1200 ? (n + 1199) / 1200 : 1;
    s.pts.reserve(n / stride + 2);
    for (std::size_t i = 0; i < n; i += stride)
        s.pts.push_back({traj.t[i], traj.x[i], traj.y[i]});
    if (n > 0 && (n - 1) % stride != 0)
        s.pts.push_back({traj.t[n - 1], traj.x[n - 1], traj.y[n - 1]});
    return s;
}

/// Boundary of a certified forward invariant set, clipped to the window.
std::vector<Series> invariant_set_series(const glv::InvariantSetCertificate& cert,
                                         double x_max, double y_max) {
    std::vector<Series> out;
    const double g = cert.gamma, x0 = cert.x0;
    const bool shrink = cert.pattern == glv::InvariantPattern::L3; // set lives at x <= x0
    double lo = shrink ? x_max * 1e-4 : x0;
    double hi = shrink ? x0 : x_max;
    if (lo < hi) {
        Series curve;
        curve.kind = "invariant-set";
        curve.index = 0;
        constexpr int kSamples = 200;
        for (int i = 0; i <= kSamples; ++i) {
            double u = std::log(lo) + (std::log(hi) - std::log(lo)) * i / kSamples;
            double y = std::exp(g * u);
            if (y <= y_max * 10.0) curve.pts.push_back({0.0, std::exp(u), y});
        }
        out.push_back(std::move(curve));
    }
    Series edge;
    edge.kind = "invariant-set";
    edge.index = 1;
    double yc = std::exp(g * std::log(x0)); // curve height at the corner x0
    switch (cert.pattern) {
        case glv::InvariantPattern::L1: // {x >= x0, 0 < y <= x^gamma}
            edge.pts = {{0.0, x0, y_max * 1e-4}, {0.0, x0, yc}};
            break;
        case glv::InvariantPattern::L2: // {x >= x0, y >= x^gamma}
            edge.pts = {{0.0, x0, yc}, {0.0, x0, y_max}};
            break;
        case glv::InvariantPattern::L3: // {x <= x0, x0^gamma <= y <= x^gamma}
            edge.pts = {{0.0, x_max * 1e-4, yc}, {0.0, x0, yc}};
            break;
        case glv::InvariantPattern::L4: // {x >= x0, x0^gamma <= y <= x^gamma}
            edge.pts = {{0.0, x0, yc}, {0.0, x_max, yc}};
            break;
    }
    out.push_back(std::move(edge));
    return out;
}

/// Separatrix orbit of the boundary case, parameterized by whichever
/// variable the closed form uses.
Series boundary_curve_series(const glv::BoundaryCurve& curve, double x_max,
                             double y_max) {
    Series s;
    s.kind = "separatrix";
    constexpr int kSamples = 240;
    if (curve.parameterized_by_x()) {
        double hi = curve.x_star, lo = curve.x_star * 1e-4;
        for (int i = 0; i <= kSamples; ++i) {
            double x = std::exp(std::log(lo) +
                                (std::log(hi) - std::log(lo)) * i / kSamples);
            double y = curve.y_of_x(x);
            if (std::isfinite(y) && y <= y_max * 10.0) s.pts.push_back({0.0, x, y});
        }
    } else {
        double lo = curve.y_star, hi = std::max(y_max, curve.y_star * 4.0);
        for (int i = 0; i <= kSamples; ++i) {
            double y = std::exp(std::log(lo) +
                                (std::log(hi) - std::log(lo)) * i / kSamples);
            double x = curve.x_of_y(y);
            if (std::isfinite(x) && x <= x_max * 10.0) s.pts.push_back({0.0, x, y});
        }
    }
    return s;
}

std::string portrait_csv(const std::vector<Series>& series) {
    std::string csv = "kind,series,t,x,y\n";
    for (const auto& s : series)
        for (const auto& p : s.pts)
            csv += csv_field(s.kind) + "," + std::to_string(s.index) + "," +
                   (s.has_t ? num(p[0]) : std::string()) + "," + num(p[1]) + "," +
                   num(p[2]) + "\n";
    return csv;
}

struct Preset {
    const char* name;
    glv::GlvSystem sys;
    double t_max;
};

glv::GlvSystem reduced_exponents(double a1, double b1, double a3, double b3) {
    glv::GlvSystem s;
    s.alpha1 = a1;
    s.beta1 = b1;
    s.alpha3 = a3;
    s.beta3 = b3;
    return s;
}

/// Representative portraits, one per qualitative regime: a center whose
/// orbits stay interior, a center meeting the boundary, the strongly stable
/// sign pattern, the two boundary edge cases (Lyapunov and separatrix), a
/// trapped-region instance, and two spirals of the two-exponent family.
const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = {
        {"fig2", reduced_exponents(0.0, -1.0, -1.0, 0.0), 30.0},
        {"fig3", reduced_exponents(0.0, 1.0, 1.0, 0.0), 30.0},
        {"fig4", reduced_exponents(-1.0, 0.5, -0.5, 1.0), 20.0},
        {"fig5", reduced_exponents(-1.0, -1.0, -1.0, 0.0), 40.0},
        {"fig6", reduced_exponents(-1.0, -0.5, -1.0, 0.0), 40.0},
        {"fig7", reduced_exponents(-1.0, -2.0, -1.0, -1.0), 40.0},
        {"fig8", glv::alpha_beta_system(1.25, 0.5), 60.0},
        {"fig9", glv::alpha_beta_system(1.45, 0.5), 80.0},
    };
    return table;
}

int run_portrait(const SystemOpts& opts, const std::string& preset_name,
                 double t_max, bool has_t_max, std::optional<double> x_max_opt,
                 std::optional<double> y_max_opt, const std::string& csv_path,
                 const std::string& svg_path) {
    glv::GlvSystem sys;
    if (!preset_name.empty()) {
        if (!opts.file.empty() || !opts.exponents.empty() || opts.alpha)
            throw glv::ValidationError("--preset conflicts with FILE/--exponents/--alpha");
        auto it = std::find_if(presets().begin(), presets().end(),
                               [&](const Preset& p) { return preset_name == p.name; });
        if (it == presets().end())
            throw glv::ValidationError("unknown preset '" + preset_name +
                                       "' (expected fig2..fig9)");
        sys = it->sys;
        if (!has_t_max) t_max = it->t_max;
    } else {
        sys = resolve_system(opts);
    }
    glv::ReducedSystem red = glv::reduce(sys);
    glv::EquilibriumResult eq = glv::solve_equilibrium(red);
    const bool unique = eq.kind == glv::EquilibriumResult::Kind::Unique;
    double cx = unique ? eq.x : 1.0, cy = unique ? eq.y : 1.0;
    double x_max = x_max_opt ? *x_max_opt : std::max(4.0 * cx, 2.0);
    double y_max = y_max_opt ? *y_max_opt : std::max(4.0 * cy, 2.0);

    std::vector<Series> series;
    if (auto s = nullcline_series("nullcline-x", red.a1, red.b1,
                                  std::log(red.k2 / red.k1), x_max, y_max))
        series.push_back(std::move(*s));
    if (auto s = nullcline_series("nullcline-y", red.a3, red.b3,
                                  std::log(red.k3 / red.k4), x_max, y_max))
        series.push_back(std::move(*s));

    glv::SimConfig cfg;
    cfg.t_max = t_max;
    std::vector<std::array<double, 2>> starts;
    if (unique) {
        const double rho = std::log(3.0);
        for (int i = 0; i < 8; ++i) {
            double theta = 2.0 * M_PI * i / 8.0;
            starts.push_back({eq.x * std::exp(rho * std::cos(theta)),
                              eq.y * std::exp(rho * std::sin(theta))});
        }
    } else {
        for (auto [fx, fy] : {std::array<double, 2>{0.15, 0.15}, {0.5, 0.1},
                              {0.85, 0.15}, {0.9, 0.5}, {0.85, 0.85}, {0.5, 0.9},
                              {0.15, 0.85}, {0.1, 0.5}})
            starts.push_back({fx * x_max, fy * y_max});
    }
    int index = 0;
    for (auto [sx, sy] : starts)
        series.push_back(trajectory_series(glv::integrate(sys, sx, sy, cfg), index++));

    // Overlay whichever global certificate the exponent pattern supports.
    glv::InvariantPattern pattern;
    if (glv::match_invariant_pattern(red, pattern)) {
        try {
            auto extra = invariant_set_series(glv::invariant_set(red, pattern),
                                              x_max, y_max);
            for (auto& s : extra) series.push_back(std::move(s));
        } catch (const std::exception&) {
            // no certified set; the portrait stands on its own
        }
    } else {
        try {
            series.push_back(
                boundary_curve_series(glv::boundary_curve(red), x_max, y_max));
        } catch (const std::exception&) {
        }
    }

    write_file(csv_path, portrait_csv(series));

    SvgCanvas canvas(0.0, x_max, 0.0, y_max, "x", "y");
    canvas.set_title("a=(" + num(red.a1) + "," + num(red.b1) + "," + num(red.a3) +
                     "," + num(red.b3) + ")  k=(" + num(red.k1) + "," + num(red.k2) +
                     "," + num(red.k3) + "," + num(red.k4) + ")");
    for (const auto& s : series) {
        std::vector<std::array<double, 2>> pts;
        pts.reserve(s.pts.size());
        for (const auto& p : s.pts) pts.push_back({p[1], p[2]});
        if (s.kind == "nullcline-x")
            canvas.add_polyline(pts, "#d62728", 2.0);
        else if (s.kind == "nullcline-y")
            canvas.add_polyline(pts, "#2ca02c", 2.0);
        else if (s.kind == "invariant-set")
            canvas.add_polyline(pts, "#e08214", 2.0, true);
        else if (s.kind == "separatrix")
            canvas.add_polyline(pts, "#7b3294", 2.0, true);
        else
            canvas.add_polyline(pts, "#4878a8", 1.0);
    }
    if (unique) canvas.add_dot(eq.x, eq.y, "#000000");
    write_file(svg_path, canvas.render());
    return 0;
}

// ---------------------------------------------------------------------------
// diagram
// ---------------------------------------------------------------------------

const char* region_color(glv::RegionLabel label) {
    switch (label) {
        case glv::RegionLabel::GAS: return "#2e7d32";
        case glv::RegionLabel::ASNotGAS: return "#c5e1a5";
        case glv::RegionLabel::Unstable: return "#ef9a9a";
        case glv::RegionLabel::Center: return "#ffd54f";
        case glv::RegionLabel::Zip: return "#90a4ae";
        case glv::RegionLabel::Undetermined: return "#eeeeee";
    }
    return "#eeeeee";
}

int run_diagram(const std::string& box, double step, const std::string& csv_path,
                const std::string& svg_path) {
    auto bounds = split_doubles(box, 4, "--box");
    double a_lo = bounds[0], a_hi = bounds[1], b_lo = bounds[2], b_hi = bounds[3];
    if (!(a_lo < a_hi) || !(b_lo < b_hi) || !(step > 0.0))
        throw glv::ValidationError("--box needs aMin < aMax, bMin < bMax and --step > 0");
    std::vector<glv::AlphaBetaPoint> grid =
        glv::region_diagram(a_lo, a_hi, b_lo, b_hi, step);

    std::string csv = "alpha,beta,label\n";
    csv.reserve(csv.size() + grid.size() * 24);
    for (const auto& cell : grid)
        csv += num(cell.alpha) + "," + num(cell.beta) + "," +
               glv::to_string(cell.region) + "\n";
    write_file(csv_path, csv);

    const std::size_t nb = static_cast<std::size_t>(std::lround((b_hi - b_lo) / step)) + 1;
    SvgCanvas canvas(a_lo - step / 2.0, a_hi + step / 2.0, b_lo - step / 2.0,
                     b_hi + step / 2.0, "alpha", "beta", true);
    canvas.set_title("x' = x^alpha - x y^beta,  y' = x y^beta - y");
    // One rectangle per run of equal labels within a column keeps the file small.
    for (std::size_t i = 0; i < grid.size(); i += nb) {
        for (std::size_t j = 0; j < nb;) {
            std::size_t j_end = j + 1;
            while (j_end < nb && grid[i + j_end].region == grid[i + j].region)
                ++j_end;
            const auto& cell = grid[i + j];
            canvas.add_cell(cell.alpha - step / 2.0, cell.alpha + step / 2.0,
                            cell.beta - step / 2.0,
                            grid[i + j_end - 1].beta + step / 2.0,
                            region_color(cell.region));
            j = j_end;
        }
    }
    std::vector<std::pair<std::string, const char*>> legend;
    for (auto label : {glv::RegionLabel::GAS, glv::RegionLabel::ASNotGAS,
                       glv::RegionLabel::Unstable, glv::RegionLabel::Center,
                       glv::RegionLabel::Zip, glv::RegionLabel::Undetermined})
        legend.emplace_back(glv::to_string(label), region_color(label));
    canvas.add_legend(legend);
    write_file(svg_path, canvas.render());
    return 0;
}

} // namespace

// ---------------------------------------------------------------------------
// command line wiring
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{"Analyzer for planar power-law systems\n"
                 "  x' = k1 x^a1 y^b1 - k2,   y' = k3 - k4 x^a3 y^b3\n"
                 "and the three-node reaction networks that induce them."};
    app.require_subcommand(1);
    app.set_version_flag("--version", "glv 1.0.0");

    // parse
    std::string parse_file;
    bool parse_canonical = false;
    auto* parse_cmd = app.add_subcommand(
        "parse", "Parse a .glv network file and print the induced system as JSON");
    parse_cmd->add_option("file", parse_file, "Network description file")->required();
    parse_cmd->add_flag("--render", parse_canonical,
                        "Print the canonical network text instead of JSON");

    // equilibrium
    SystemOpts eq_opts;
    auto* eq_cmd = app.add_subcommand(
        "equilibrium", "Positive equilibria: unique point, a line of them, or none");
    attach_system_options(eq_cmd, eq_opts);

    // jacobian
    SystemOpts jac_opts;
    auto* jac_cmd = app.add_subcommand(
        "jacobian", "Jacobian, eigenvalue class and linear verdict at the equilibrium");
    attach_system_options(jac_cmd, jac_opts);

    // focal
    SystemOpts focal_opts;
    auto* focal_cmd = app.add_subcommand(
        "focal", "First focal value and criticality on the zero-trace locus");
    attach_system_options(focal_cmd, focal_opts);

    // classify
    SystemOpts classify_opts;
    std::string scope = "fixed-k";
    auto* classify_cmd = app.add_subcommand(
        "classify", "Full stability verdict with supporting certificates");
    attach_system_options(classify_cmd, classify_opts);
    classify_cmd->add_option("--scope", scope,
                             "fixed-k judges the given rates; all-k quantifies "
                             "over every positive rate tuple")
        ->check(CLI::IsMember({"fixed-k", "all-k", "all-k-stoichiometric"}));

    // certify
    SystemOpts certify_opts;
    std::string cert_kind;
    std::optional<double> cert_p, cert_q;
    auto* certify_cmd =
        app.add_subcommand("certify", "Construct one certificate and print it as JSON");
    attach_system_options(certify_cmd, certify_opts);
    certify_cmd->add_option("--kind", cert_kind, "Certificate family")
        ->required()
        ->check(CLI::IsMember({"dulac", "integral", "invariant-set", "boundary-curve"}));
    certify_cmd->add_option("--p", cert_p, "Dulac weight exponent for x (default a1/2)");
    certify_cmd->add_option("--q", cert_q, "Dulac weight exponent for y (default b3/2)");

    // simulate
    SystemOpts sim_opts;
    double x0 = 0.0, y0 = 0.0, sim_t_max = 100.0;
    double rel_tol = 1e-9, abs_tol = 1e-11;
    std::string sim_out;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "Integrate one trajectory; CSV samples plus a JSON summary");
    attach_system_options(sim_cmd, sim_opts);
    sim_cmd->add_option("--x0", x0, "Initial x > 0")->required();
    sim_cmd->add_option("--y0", y0, "Initial y > 0")->required();
    sim_cmd->add_option("--tmax", sim_t_max, "Time horizon (default 100)");
    sim_cmd->add_option("--rel-tol", rel_tol, "Relative step tolerance (default 1e-9)");
    sim_cmd->add_option("--abs-tol", abs_tol, "Absolute step tolerance (default 1e-11)");
    sim_cmd->add_option("--out", sim_out,
                        "CSV output file; with it set, the JSON summary goes to "
                        "stdout (default: CSV to stdout)");

    // portrait
    SystemOpts portrait_opts;
    std::string preset, portrait_csv_path = "portrait.csv",
                        portrait_svg_path = "portrait.svg";
    double portrait_t_max = 40.0;
    std::optional<double> x_max_opt, y_max_opt;
    auto* portrait_cmd = app.add_subcommand(
        "portrait", "Nullclines and a trajectory fan as CSV and SVG");
    attach_system_options(portrait_cmd, portrait_opts);
    portrait_cmd->add_option("--preset", preset,
                             "Named example portrait, fig2 through fig9");
    auto* portrait_t_opt =
        portrait_cmd->add_option("--tmax", portrait_t_max, "Fan time horizon");
    portrait_cmd->add_option("--xmax", x_max_opt, "Right edge of the view window");
    portrait_cmd->add_option("--ymax", y_max_opt, "Top edge of the view window");
    portrait_cmd->add_option("--csv", portrait_csv_path,
                             "CSV output path (default portrait.csv)");
    portrait_cmd->add_option("--svg", portrait_svg_path,
                             "SVG output path (default portrait.svg)");

    // diagram
    std::string box = "-1,3,-1,3", diagram_csv_path = "diagram.csv",
                diagram_svg_path = "diagram.svg";
    double step = 0.05;
    auto* diagram_cmd = app.add_subcommand(
        "diagram",
        "Region sweep of the family x' = x^alpha - x y^beta, y' = x y^beta - y");
    diagram_cmd->add_option("--box", box,
                            "Window aMin,aMax,bMin,bMax (default -1,3,-1,3)");
    diagram_cmd->add_option("--step", step, "Grid spacing (default 0.05)");
    diagram_cmd->add_option("--csv", diagram_csv_path,
                            "CSV output path (default diagram.csv)");
    diagram_cmd->add_option("--svg", diagram_svg_path,
                            "SVG output path (default diagram.svg)");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(parse_cmd)) return run_parse(parse_file, parse_canonical);
        if (app.got_subcommand(eq_cmd)) return run_equilibrium(eq_opts);
        if (app.got_subcommand(jac_cmd)) return run_jacobian(jac_opts);
        if (app.got_subcommand(focal_cmd)) return run_focal(focal_opts);
        if (app.got_subcommand(classify_cmd)) return run_classify(classify_opts, scope);
        if (app.got_subcommand(certify_cmd))
            return run_certify(certify_opts, cert_kind, cert_p, cert_q);
        if (app.got_subcommand(sim_cmd))
            return run_simulate(sim_opts, x0, y0, sim_t_max, rel_tol, abs_tol, sim_out);
        if (app.got_subcommand(portrait_cmd))
            return run_portrait(portrait_opts, preset, portrait_t_max,
                                portrait_t_opt->count() > 0, x_max_opt, y_max_opt,
                                portrait_csv_path, portrait_svg_path);
        if (app.got_subcommand(diagram_cmd))
            return run_diagram(box, step, diagram_csv_path, diagram_svg_path);
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const glv::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const glv::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const glv::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
