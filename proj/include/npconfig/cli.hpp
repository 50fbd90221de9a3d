#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "npconfig/aconfig.hpp"
#include "npconfig/bounds.hpp"
#include "npconfig/domain.hpp"
#include "npconfig/errors.hpp"
#include "npconfig/io.hpp"
#include "npconfig/linalg.hpp"
#include "npconfig/mindisk.hpp"
#include "npconfig/npkernel.hpp"
#include "npconfig/numrange.hpp"
#include "npconfig/rng.hpp"
#include "npconfig/threemeasures.hpp"

namespace npc {
namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitBoundViolation = 4;

namespace detail {

inline void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write to " + out_path);
    out << text << "\n";
}

inline std::string csvnum(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// "a", "bi", "a+bi", "a-bi" (also accepts 'j').
inline cplx parse_complex_token(std::string s) {
    if (s.empty()) throw ParseError("empty coefficient");
    const char tail = s.back();
    if (tail == 'i' || tail == 'j') {
        s.pop_back();
        std::size_t split = std::string::npos;
        for (std::size_t i = s.size(); i-- > 1;) {
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        try {
            if (split == std::string::npos) {
                const double im = (s.empty() || s == "+") ? 1.0 : (s == "-" ? -1.0 : std::stod(s));
                return cplx(0.0, im);
            }
            const double re = std::stod(s.substr(0, split));
            std::string ims = s.substr(split);
            const double im = (ims == "+") ? 1.0 : (ims == "-" ? -1.0 : std::stod(ims));
            return cplx(re, im);
        } catch (const std::exception&) {
            throw ParseError("bad complex coefficient: " + s + "i");
        }
    }
    try {
        return cplx(std::stod(s), 0.0);
    } catch (const std::exception&) {
        throw ParseError("bad coefficient: " + s);
    }
}

inline std::vector<cplx> parse_poly(const std::string& spec) {
    std::vector<cplx> p;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ',')) p.push_back(parse_complex_token(token));
    if (p.empty()) throw ParseError("empty polynomial");
    return p;
}

inline std::vector<cplx> parse_points(const std::string& spec) {
    std::vector<cplx> pts;
    std::string pair;
    std::istringstream in(spec);
    while (std::getline(in, pair, ';')) {
        const std::size_t comma = pair.find(',');
        if (comma == std::string::npos) throw ParseError("point must be 'x,y': " + pair);
        try {
            pts.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ParseError("bad point: " + pair);
        }
    }
    if (pts.empty()) throw ParseError("empty point list");
    return pts;
}

inline CMatrix random_matrix(Rng& rng, std::size_t n) {
    CMatrix m(n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(rng.normal(), rng.normal()) * s;
    return m;
}

inline std::vector<cplx> random_poly(Rng& rng, int max_degree) {
    const int deg = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(max_degree)));
    std::vector<cplx> p(deg + 1);
    for (cplx& c : p) c = cplx(rng.normal(), rng.normal());
    return p;
}

// --- suites ---------------------------------------------------------------

inline std::string suite_ellipse_table() {
    std::string csv = "a,c_closed,c_numeric,abs_delta,K\n";
    for (double a : {1.0, 1.5, 2.0, 3.0, 5.0}) {
        const ConvexDomain d = ConvexDomain::build(DomainSpec::ellipse(a, 1.0));
        const double closed = ellipse_config_constant(a, 1.0);
        const double numeric = config_constant(d, 16).value;
        csv += csvnum(a) + "," + csvnum(closed) + "," + csvnum(numeric) + "," +
               csvnum(std::abs(closed - numeric)) + "," +
               csvnum(spectral_constant_ellipse(a, 1.0)) + "\n";
    }
    return csv;
}

inline std::string suite_bound_sweep(int trials, std::uint64_t seed) {
    std::string csv = "trial,n,deg,c_of_w,lhs,sup_norm,slack_improved,slack_cp\n";
    VerifyOptions opt;
    opt.angles = 64;
    opt.samples = 256;
    int done = 0, trial = 0;
    while (done < trials) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(trial++)));
        const std::size_t n = 2 + rng.uniform_int(5);
        const CMatrix t = random_matrix(rng, n);
        const std::vector<cplx> p = random_poly(rng, 6);
        try {
            const BoundReport rep = verify_bound(t, p, opt);
            csv += std::to_string(done) + "," + std::to_string(n) + "," +
                   std::to_string(p.size() - 1) + "," + csvnum(rep.c_of_w) + "," +
                   csvnum(rep.lhs) + "," + csvnum(rep.sup_norm) + "," +
                   csvnum(rep.slack_improved) + "," + csvnum(rep.slack_cp) + "\n";
            ++done;
        } catch (const EmptyInterior&) {
            continue; // near-normal draw with collinear range: redraw
        }
    }
    return csv;
}

inline std::string suite_polytope_census() {
    std::string csv = "n,vertices,classes\n";
    for (int n = 1; n <= 3; ++n) {
        const auto verts = enumerate_extreme_points(n);
        const auto classes = extreme_point_classes(n);
        csv += std::to_string(n) + "," + std::to_string(verts.size()) + "," +
               std::to_string(classes.size()) + "\n";
    }
    return csv;
}

} // namespace detail

/// Entry point used by the binary and the tests; returns the exit code.
inline int run(const std::vector<std::string>& args) {
    CLI::App app{"Neumann-Poincare kernels, configuration constants, and "
                 "numerical-range spectral bounds"};
    app.require_subcommand(1);

    std::string domain_path, matrix_path, out_path, format = "json";
    std::string poly_spec, points_spec, suite_name;
    int samples = 64, angles = 256, degree = 8, restarts = 8, iters = 800;
    int panels = ConvexDomain::kDefaultPanelsPerArc;
    int nodes = ConvexDomain::kDefaultNodesPerPanel;
    int zeta_index = 0, corner_index = -1;
    int n_dim = 3, k_measures = 3, m_atoms = 20, trials = 1000;
    double a_axis = 1.0, b_axis = 1.0;
    std::uint64_t seed = 0;
    bool quiet = false;

    const auto add_shared = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the result to this file instead of stdout");
        cmd->add_option("--format", format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_flag("--quiet", quiet, "suppress progress output");
    };
    const auto add_domain = [&](CLI::App* cmd) {
        cmd->add_option("--domain", domain_path, "domain JSON file")->required();
        cmd->add_option("--panels", panels, "quadrature panels per boundary arc");
        cmd->add_option("--nodes", nodes, "Gauss-Legendre nodes per panel");
    };

    CLI::App* c_kernel = app.add_subcommand("kernel", "kernel measure mu_zeta at a base point");
    add_domain(c_kernel);
    c_kernel->add_option("--zeta-index", zeta_index, "quadrature node index of the base point");
    c_kernel->add_option("--corner", corner_index, "corner index of the base point (overrides --zeta-index)");
    add_shared(c_kernel);

    CLI::App* c_cconst = app.add_subcommand("cconst", "configuration constant c(Omega)");
    add_domain(c_cconst);
    c_cconst->add_option("--samples", samples, "equal-arclength base points (corners always added)");
    add_shared(c_cconst);

    CLI::App* c_curv = app.add_subcommand("curvature", "curvature upper bound 1 - (1/2pi) int ds/R_Omega");
    add_domain(c_curv);
    c_curv->add_option("--samples", samples, "base points for the R_Omega sup");
    add_shared(c_curv);

    CLI::App* c_ellipse = app.add_subcommand("ellipse", "closed forms c(a,b) and K(a,b)");
    c_ellipse->add_option("--a", a_axis, "semi-axis a")->required();
    c_ellipse->add_option("--b", b_axis, "semi-axis b")->required();
    add_shared(c_ellipse);

    CLI::App* c_aconst = app.add_subcommand("aconst", "lower bound for the analytic constant a(Omega)");
    add_domain(c_aconst);
    c_aconst->add_option("--degree", degree, "polynomial degree");
    c_aconst->add_option("--restarts", restarts, "optimizer restarts");
    c_aconst->add_option("--iters", iters, "objective evaluations per restart");
    add_shared(c_aconst);

    CLI::App* c_numrange = app.add_subcommand("numrange", "numerical range W(T) boundary");
    c_numrange->add_option("--matrix", matrix_path, "matrix JSON file")->required();
    c_numrange->add_option("--angles", angles, "support directions in the theta sweep");
    add_shared(c_numrange);

    CLI::App* c_verify = app.add_subcommand("verify", "spectral bound ||p(T)|| <= K ||p||_W");
    c_verify->add_option("--matrix", matrix_path, "matrix JSON file")->required();
    c_verify->add_option("--poly", poly_spec, "coefficients c0,c1,... (ascending degree)")->required();
    c_verify->add_option("--angles", angles, "support directions in the theta sweep");
    c_verify->add_option("--samples", samples, "boundary samples for the sup norm");
    add_shared(c_verify);

    CLI::App* c_polytope = app.add_subcommand("polytope", "extreme points of C_n up to G_n");
    c_polytope->add_option("--n", n_dim, "dimension (1..3)");
    add_shared(c_polytope);

    CLI::App* c_check3m = app.add_subcommand("check-3m", "image-radius check of the n-measures theorem");
    c_check3m->add_option("--k", k_measures, "number of measures");
    c_check3m->add_option("--m", m_atoms, "atoms of the underlying set");
    c_check3m->add_option("--trials", trials, "random test functions");
    add_shared(c_check3m);

    CLI::App* c_mindisk = app.add_subcommand("mindisk", "minimal enclosing disk of a point set");
    c_mindisk->add_option("--points", points_spec, "points as 'x,y;x,y;...'")->required();
    add_shared(c_mindisk);

    CLI::App* c_suite = app.add_subcommand("suite", "batch experiment (CSV)");
    c_suite->add_option("--name", suite_name, "ellipse-table | bound-sweep | polytope-census")->required();
    c_suite->add_option("--trials", trials, "trials for bound-sweep");
    add_shared(c_suite);

    std::vector<std::string> argv_copy = args;
    try {
        std::vector<const char*> argv;
        argv.push_back("np-config");
        for (const std::string& s : argv_copy) argv.push_back(s.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*c_kernel) {
            const ConvexDomain d =
                ConvexDomain::build(parse_domain(load_json_file(domain_path)), panels, nodes);
            BoundaryPoint bp;
            if (corner_index >= 0) {
                if (static_cast<std::size_t>(corner_index) >= d.corners().size())
                    throw ParseError("corner index out of range");
                bp = locate_boundary_point(d, d.corners()[corner_index].point);
            } else {
                if (zeta_index < 0 || static_cast<std::size_t>(zeta_index) >= d.nodes().size())
                    throw ParseError("zeta index out of range");
                const Node& nd = d.nodes()[zeta_index];
                bp = {nd.arc, nd.t, nd.pos};
            }
            const BoundaryMeasure bm = measure(d, bp);
            double mass = bm.atom_mass;
            std::vector<std::string> dens;
            dens.reserve(bm.density.size());
            for (std::size_t i = 0; i < bm.density.size(); ++i) {
                dens.push_back(jnum(bm.density[i]));
                mass += d.nodes()[i].weight * bm.density[i];
            }
            detail::emit(JsonObject()
                             .field("base", jpoint(bm.base.pos))
                             .num("atom_mass", bm.atom_mass)
                             .num("total_mass", mass)
                             .field("density", jarray(dens))
                             .build(),
                         out_path);
        } else if (*c_cconst) {
            const ConvexDomain d =
                ConvexDomain::build(parse_domain(load_json_file(domain_path)), panels, nodes);
            const ConfigResult res = config_constant(d, samples);
            detail::emit(JsonObject()
                             .num("c", res.value)
                             .field("witness", jarray({jpoint(res.witness1.pos),
                                                       jpoint(res.witness2.pos)}))
                             .integer("samples", samples)
                             .build(),
                         out_path);
        } else if (*c_curv) {
            const ConvexDomain d =
                ConvexDomain::build(parse_domain(load_json_file(domain_path)), panels, nodes);
            const CurvatureReport rep = curvature_bound(d, samples);
            std::vector<std::string> rs;
            rs.reserve(rep.r_omega.size());
            for (double r : rep.r_omega) rs.push_back(jnum(r));
            detail::emit(JsonObject()
                             .num("bound", rep.bound)
                             .num("mass", rep.mass)
                             .integer("samples", rep.sample_count)
                             .field("r_omega", jarray(rs))
                             .build(),
                         out_path);
        } else if (*c_ellipse) {
            detail::emit(JsonObject()
                             .num("c", ellipse_config_constant(a_axis, b_axis))
                             .num("K", spectral_constant_ellipse(a_axis, b_axis))
                             .build(),
                         out_path);
        } else if (*c_aconst) {
            const ConvexDomain d =
                ConvexDomain::build(parse_domain(load_json_file(domain_path)), panels, nodes);
            const ALowerBound res = a_lower_bound(d, degree, restarts, iters, seed);
            std::vector<std::string> cs;
            for (cplx c : res.best.coeffs) cs.push_back(jpoint(c));
            detail::emit(JsonObject()
                             .num("value", res.value)
                             .field("coeffs", jarray(cs))
                             .field("config", JsonObject()
                                                  .integer("degree", res.degree)
                                                  .integer("restarts", restarts)
                                                  .integer("iters", iters)
                                                  .integer("seed", static_cast<long long>(seed))
                                                  .integer("base_count", res.base_count)
                                                  .integer("sup_count", res.sup_count)
                                                  .build())
                             .build(),
                         out_path);
        } else if (*c_numrange) {
            const CMatrix t = parse_matrix(load_json_file(matrix_path));
            const NumRange w = numerical_range(t, angles);
            if (format == "csv") {
                std::string csv = "x,y\n";
                for (cplx z : w.boundary_points)
                    csv += detail::csvnum(z.real()) + "," + detail::csvnum(z.imag()) + "\n";
                detail::emit(csv, out_path);
            } else {
                std::vector<std::string> pts;
                for (cplx z : w.boundary_points) pts.push_back(jpoint(z));
                JsonObject j;
                j.field("boundary_points", jarray(pts));
                j.boolean("has_interior", w.hull.has_value());
                if (w.hull) j.num("area", w.hull->area());
                detail::emit(j.build(), out_path);
            }
        } else if (*c_verify) {
            const CMatrix t = parse_matrix(load_json_file(matrix_path));
            const std::vector<cplx> p = detail::parse_poly(poly_spec);
            VerifyOptions opt;
            opt.angles = angles;
            opt.samples = samples;
            const BoundReport rep = verify_bound(t, p, opt);
            detail::emit(JsonObject()
                             .num("lhs", rep.lhs)
                             .num("sup_norm", rep.sup_norm)
                             .num("c_of_w", rep.c_of_w)
                             .num("k_improved", rep.k_improved)
                             .num("k_cp", rep.k_cp)
                             .boolean("pass_improved", rep.pass_improved)
                             .boolean("pass_cp", rep.pass_cp)
                             .num("slack_improved", rep.slack_improved)
                             .num("slack_cp", rep.slack_cp)
                             .build(),
                         out_path);
            if (!rep.pass_cp) return kExitBoundViolation;
        } else if (*c_polytope) {
            const auto classes = extreme_point_classes(n_dim);
            std::vector<std::string> reps;
            for (const PairVector& p : classes) {
                std::vector<std::string> xs, ys;
                for (double v : p.x) xs.push_back(jnum(v));
                for (double v : p.y) ys.push_back(jnum(v));
                reps.push_back(JsonObject()
                                   .field("x", jarray(xs))
                                   .field("y", jarray(ys))
                                   .build());
            }
            detail::emit(JsonObject()
                             .integer("n", n_dim)
                             .integer("classes", static_cast<long long>(classes.size()))
                             .field("representatives", jarray(reps))
                             .build(),
                         out_path);
        } else if (*c_check3m) {
            Rng rng(seed);
            FiniteMeasureSet ms;
            ms.weights.assign(k_measures, std::vector<double>(m_atoms));
            for (auto& row : ms.weights)
                for (double& w : row) w = rng.uniform(-1.0, 1.0);
            const ImageRadiusReport rep =
                verify_image_radius(ms, trials, Rng::derive(seed, 0xF00D));
            detail::emit(JsonObject()
                             .integer("k", k_measures)
                             .integer("m", m_atoms)
                             .num("norm", n_measures_norm(ms))
                             .num("max_ratio", rep.max_ratio)
                             .num("aligned_ratio", rep.aligned_ratio)
                             .build(),
                         out_path);
        } else if (*c_mindisk) {
            const std::vector<cplx> pts = detail::parse_points(points_spec);
            const Disk disk = min_enclosing_disk(pts);
            std::vector<std::string> sup;
            if (pts.size() >= 2)
                for (cplx s : support_set(pts)) sup.push_back(jpoint(s));
            detail::emit(JsonObject()
                             .field("center", jpoint(disk.center))
                             .num("radius", disk.radius)
                             .field("support", jarray(sup))
                             .build(),
                         out_path);
        } else if (*c_suite) {
            std::string csv;
            if (suite_name == "ellipse-table") csv = detail::suite_ellipse_table();
            else if (suite_name == "bound-sweep") csv = detail::suite_bound_sweep(trials, seed);
            else if (suite_name == "polytope-census") csv = detail::suite_polytope_census();
            else throw UnknownSuite("unknown suite: " + suite_name);
            detail::emit(csv, out_path);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace cli
} // namespace npc
