// Command-line front door: construction, classification, covariance grids,
// simulation and verification suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ofbf/construct.hpp"
#include "ofbf/io.hpp"
#include "ofbf/sim.hpp"
#include "ofbf/symmetry.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace {

using namespace ofbf;
using nlohmann::json;

constexpr int kExitUser = 2;
constexpr int kExitConstruction = 3;
constexpr int kExitNumerical = 4;

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::ConstructionFailure:
        case ErrorKind::RecipeInvalid:
        case ErrorKind::UseAbsolutelyContinuous:
            return kExitConstruction;
        case ErrorKind::QuadratureFailure:
        case ErrorKind::NumericalFailure:
        case ErrorKind::NotPSD:
        case ErrorKind::SingularInput:
            return kExitNumerical;
        default:
            return kExitUser;
    }
}

std::vector<Vec2> parse_points(const std::string& text, int m) {
    std::vector<Vec2> points;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        Vec2 p;
        if (m == 1) {
            p.x = std::stod(item);
        } else {
            const auto comma = item.find(',');
            if (comma == std::string::npos)
                throw Error(ErrorKind::InvalidInput, "points must be \"x,y;x,y;...\"");
            p.x = std::stod(item.substr(0, comma));
            p.y = std::stod(item.substr(comma + 1));
        }
        points.push_back(p);
    }
    if (points.empty()) throw Error(ErrorKind::InvalidInput, "no points given");
    return points;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_construct(const std::string& domain_name, const std::string& range_name,
                  const std::string& mode, const std::string& out_path) {
    const groups::CompactGroup2 domain = io::parse_group_name(domain_name);
    const construct::RangeTarget range =
        construct::parse_range_target(io::parse_group_name(range_name));
    spectral::OfbfSpec spec = (mode == "singular") ? construct::build_singular(domain, range)
                                                   : construct::build_ac(domain, range);
    io::save_spec_file(out_path, spec);
    const auto report = symmetry::classify(spec);
    std::cout << io::report_to_json(spec, report).dump(2) << "\n";
    return 0;
}

int cmd_classify(const std::string& spec_path) {
    const auto doc = io::load_spec_file(spec_path);
    const auto report = symmetry::classify(doc.spec);
    std::cout << io::report_to_json(doc.spec, report).dump(2) << "\n";
    return 0;
}

int cmd_covariance(const std::string& spec_path, const std::string& points_text,
                   const std::string& out_path, double check_oss,
                   const std::string& slices_path) {
    const auto doc = io::load_spec_file(spec_path);
    const auto& spec = doc.spec;
    const auto cfg = doc.has_quadrature ? doc.quadrature : spectral::QuadratureConfig{};
    const auto points = parse_points(points_text, spec.m());

    std::ofstream out(out_path);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot open " + out_path);
    out.precision(12);
    if (spec.m() == 2)
        out << "t1_x,t1_y,t2_x,t2_y";
    else
        out << "t1_x,t2_x";
    for (int r = 0; r < spec.n(); ++r)
        for (int c = 0; c < spec.n(); ++c) out << ",g" << (r + 1) << (c + 1);
    out << "\n";

    double max_err = 0, max_imag = 0;
    for (const auto& t1 : points)
        for (const auto& t2 : points) {
            const auto res = spectral::covariance_checked(spec, t1, t2, cfg);
            max_err = std::max(max_err, res.error_estimate);
            max_imag = std::max(max_imag, res.imag_residual);
            if (spec.m() == 2)
                out << t1.x << "," << t1.y << "," << t2.x << "," << t2.y;
            else
                out << t1.x << "," << t2.x;
            for (int r = 0; r < spec.n(); ++r)
                for (int c = 0; c < spec.n(); ++c) out << "," << res.gamma(r, c);
            out << "\n";
        }

    json meta;
    meta["version"] = "1";
    meta["pairs"] = points.size() * points.size();
    meta["max_error_estimate"] = max_err;
    meta["max_imag_residual"] = max_imag;
    meta["rel_tol"] = cfg.rel_tol;
    if (check_oss > 0) {
        std::vector<std::pair<Vec2, Vec2>> pairs;
        for (size_t i = 0; i < points.size() && pairs.size() < 10; ++i)
            for (size_t j = i; j < points.size() && pairs.size() < 10; ++j)
                pairs.emplace_back(points[i], points[j]);
        const double dev = spectral::oss_check(spec, check_oss, pairs, cfg);
        meta["oss_scale"] = check_oss;
        meta["oss_deviation"] = dev;
        std::cout << "operator self-similarity deviation at c=" << check_oss << ": " << dev
                  << "\n";
    }
    std::ofstream meta_out(out_path + ".meta.json");
    meta_out << meta.dump(2) << "\n";

    if (!slices_path.empty()) {
        json slices;
        const auto& sph = spec.spherical;
        using measures::MeasureVariant;
        if (sph.variant() == MeasureVariant::PiecewiseConstant) {
            slices["breakpoints"] = sph.breakpoints();
            json vals = json::array();
            for (const auto& v : sph.values()) {
                json jv;
                jv["re"] = json::array();
                for (int r = 0; r < v.dim(); ++r) {
                    json row = json::array();
                    for (int c = 0; c < v.dim(); ++c) row.push_back(v(r, c).real());
                    jv["re"].push_back(row);
                }
                json im = json::array();
                for (int r = 0; r < v.dim(); ++r) {
                    json row = json::array();
                    for (int c = 0; c < v.dim(); ++c) row.push_back(v(r, c).imag());
                    im.push_back(row);
                }
                jv["im"] = im;
                vals.push_back(jv);
            }
            slices["values"] = vals;
        } else if (sph.variant() == MeasureVariant::Atomic) {
            json atoms = json::array();
            for (const auto& a : sph.atoms()) atoms.push_back(a.angle);
            slices["atoms"] = atoms;
        } else {
            slices["constant"] = true;
        }
        std::ofstream sout(slices_path);
        sout << slices.dump(2) << "\n";
    }
    return 0;
}

int cmd_simulate(const std::string& spec_path, const std::string& points_text, int samples,
                 std::uint64_t seed, const std::string& out_path) {
    const auto doc = io::load_spec_file(spec_path);
    const auto& spec = doc.spec;
    const auto cfg = doc.has_quadrature ? doc.quadrature : spectral::QuadratureConfig{};
    sim::GridDesign grid{parse_points(points_text, spec.m())};
    const auto state = sim::build_sampler(spec, grid, seed, cfg);
    const auto draws = sim::sample(state, samples);

    std::ofstream out(out_path);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot open " + out_path);
    out.precision(12);
    out << "sample_id";
    if (spec.m() == 2)
        out << ",p_x,p_y";
    else
        out << ",p_x";
    for (int c = 0; c < spec.n(); ++c) out << ",x" << (c + 1);
    out << "\n";
    for (int s = 0; s < samples; ++s)
        for (size_t p = 0; p < grid.points.size(); ++p) {
            out << s;
            if (spec.m() == 2)
                out << "," << grid.points[p].x << "," << grid.points[p].y;
            else
                out << "," << grid.points[p].x;
            for (int c = 0; c < spec.n(); ++c) out << "," << draws[s][p * spec.n() + c];
            out << "\n";
        }
    json meta;
    meta["version"] = "1";
    meta["samples"] = samples;
    meta["seed"] = seed;
    meta["jitter"] = state.jitter;
    meta["components"] = spec.n();
    json pts = json::array();
    for (const auto& p : grid.points)
        pts.push_back(spec.m() == 2 ? json::array({p.x, p.y}) : json::array({p.x}));
    meta["points"] = pts;
    std::ofstream meta_out(out_path + ".meta.json");
    meta_out << meta.dump(2) << "\n";
    std::cout << "wrote " << samples << " realizations on " << grid.points.size()
              << " points (jitter " << state.jitter << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verification suites
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

void check_group_intersections(std::vector<CheckResult>& results) {
    using groups::CompactGroup2;
    const RealMatrix w1 = RealMatrix::identity(2);
    const RealMatrix w2s = w1 * 2.0;                       // scalar multiple branch
    const RealMatrix w2g(2, 2, {1.4, 0.3, 0.3, 0.9});      // generic branch

    struct Row {
        CompactGroup2 a, b;
        CompactGroup2 same_w, generic_w;
    };
    const CompactGroup2 o2 = CompactGroup2::o2();
    const CompactGroup2 so2 = CompactGroup2::so2();
    const CompactGroup2 d2 = CompactGroup2::dihedral(2);
    const CompactGroup2 c2 = CompactGroup2::cyclic(2);
    const std::vector<Row> rows = {
        {o2, o2, o2, c2},   {o2, so2, so2, c2}, {o2, d2, d2, c2},  {o2, c2, c2, c2},
        {so2, so2, so2, c2}, {so2, d2, c2, c2},  {so2, c2, c2, c2}, {d2, d2, d2, c2},
        {d2, c2, c2, c2},   {c2, c2, c2, c2},
    };
    bool ok = true;
    std::string detail;
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const auto same = groups::intersect(row.a.with_conjugacy(w1), row.b.with_conjugacy(w2s));
        const auto diff = groups::intersect(row.a.with_conjugacy(w1), row.b.with_conjugacy(w2g));
        if (!groups::same_canonical(same, row.same_w)) {
            ok = false;
            detail += "row " + std::to_string(i + 1) + " scalar branch got " +
                      groups::describe(same) + "; ";
        }
        if (!groups::same_canonical(diff, row.generic_w)) {
            ok = false;
            detail += "row " + std::to_string(i + 1) + " generic branch got " +
                      groups::describe(diff) + "; ";
        }
    }
    results.push_back({"range_group_intersections", ok, detail});
}

void check_antipodal_points(std::vector<CheckResult>& results) {
    const auto pts = groups::antipodal_points(groups::CompactGroup2::dihedral(3));
    const double expected[] = {M_PI / 6,     M_PI / 2,     5 * M_PI / 6,
                               7 * M_PI / 6, 3 * M_PI / 2, 11 * M_PI / 6};
    bool ok = pts.size() == 6;
    std::string detail;
    for (size_t i = 0; ok && i < 6; ++i)
        if (std::abs(pts[i].angle() - expected[i]) > 1e-12) {
            ok = false;
            detail = "angle mismatch at index " + std::to_string(i);
        }
    // brute-force scan: no other direction may map to its antipode
    const auto g = groups::CompactGroup2::dihedral(3);
    int extra = 0;
    for (int k = 0; k < 3600; ++k) {
        const double a = k * 2.0 * M_PI / 3600.0;
        const Vec2 x = unit_vec(a);
        bool antipodal = false;
        for (const auto& p : groups::orbit(g, x).points) {
            double d = std::abs(p.angle() - std::fmod(a + M_PI, 2 * M_PI));
            d = std::min(d, 2 * M_PI - d);
            antipodal = antipodal || d < 1e-9;
        }
        bool listed = false;
        for (double e : expected) listed = listed || std::abs(a - e) < 1e-9;
        if (antipodal && !listed) ++extra;
    }
    if (extra > 0) {
        ok = false;
        detail += " brute-force scan found " + std::to_string(extra) + " extra points";
    }
    results.push_back({"dihedral3_antipodes", ok, detail});
}

void check_spec_battery(const spectral::OfbfSpec& spec, const spectral::QuadratureConfig& cfg,
                        std::vector<CheckResult>& results) {
    // PSD of the block covariance on a small grid
    {
        std::vector<Vec2> pts;
        if (spec.m() == 1) {
            for (int i = 1; i <= 6; ++i) pts.push_back({0.35 * i, 0});
        } else {
            for (int i = 0; i < 6; ++i) pts.push_back(unit_vec(0.7 * i + 0.2));
            pts.push_back({1.7, 0.4});
        }
        const auto bounds = sim::covariance_eig_bounds(spec, pts, cfg);
        const bool ok = bounds.min_eig >= -1e-8 * std::max(1.0, bounds.max_eig);
        results.push_back({"psd_block_covariance", ok,
                           "min eig " + std::to_string(bounds.min_eig)});
    }
    // operator self-similarity
    {
        std::vector<std::pair<Vec2, Vec2>> pairs = {
            {{1, 0.2}, {0.5, -0.7}}, {{0.8, 0.8}, {-0.3, 1.2}}, {{1.4, -0.5}, {0.6, 0.9}}};
        if (spec.m() == 1) pairs = {{{1, 0}, {0.5, 0}}, {{2, 0}, {-1, 0}}, {{0.7, 0}, {1.3, 0}}};
        double worst = 0;
        for (double c : {0.5, 2.0})
            worst = std::max(worst, spectral::oss_check(spec, c, pairs, cfg));
        results.push_back({"operator_self_similarity", worst <= 1e-4,
                           "max deviation " + std::to_string(worst)});
    }
    // stationary increments
    {
        std::vector<std::pair<Vec2, Vec2>> pairs = {
            {{1, 0.4}, {0.2, -0.6}}, {{-0.5, 1.1}, {0.9, 0.3}}};
        if (spec.m() == 1) pairs = {{{1.2, 0}, {0.4, 0}}, {{-0.8, 0}, {0.5, 0}}};
        double worst = 0;
        for (const auto& [t1, t2] : pairs) {
            const RealMatrix d = spectral::structure_function(spec, t1, t2, cfg);
            const Vec2 diff{t1.x - t2.x, t1.y - t2.y};
            const RealMatrix ref = spectral::covariance(spec, diff, diff, cfg);
            worst = std::max(worst, (d - ref).frobenius() / std::max(1e-300, ref.frobenius()));
        }
        results.push_back({"stationary_increments", worst <= 1e-4,
                           "max deviation " + std::to_string(worst)});
    }
    // homogeneity of the spectral measure
    {
        const double dev = spectral::homogeneity_check(spec, 2.0);
        results.push_back({"measure_homogeneity", dev <= 1e-8, "deviation " + std::to_string(dev)});
    }
    // classification round-trip through serialization
    {
        const auto j = io::spec_to_json(spec);
        const auto doc = io::spec_from_json(j);
        const auto rep1 = symmetry::classify(spec);
        const auto rep2 = symmetry::classify(doc.spec);
        const bool ok = io::report_to_json(spec, rep1) == io::report_to_json(doc.spec, rep2);
        results.push_back({"classification_roundtrip", ok, ""});
    }
    // sampled symmetry of the domain group (first nontrivial element)
    if (spec.m() == 2) {
        const auto rep = symmetry::classify(spec);
        if (rep.domain_group.finite() && rep.domain_group.order() > 1) {
            const auto elems = rep.domain_group.element_matrices();
            double worst = 0;
            for (const auto& e : elems)
                worst = std::max(worst,
                                 symmetry::covariance_invariance_deviation(spec, e, true, cfg));
            results.push_back({"domain_symmetry_sampled", worst <= 1e-4,
                               "max deviation " + std::to_string(worst)});
        }
    }
}

int cmd_verify(const std::string& spec_path, const std::string& suite) {
    std::vector<CheckResult> results;
    if (suite == "tables" || suite == "all") {
        check_group_intersections(results);
        check_antipodal_points(results);
    }
    if (suite == "spec" || suite == "all") {
        if (spec_path.empty())
            throw Error(ErrorKind::InvalidInput, "--spec required for the spec suite");
        const auto doc = io::load_spec_file(spec_path);
        const auto cfg = doc.has_quadrature ? doc.quadrature : spectral::QuadratureConfig{};
        check_spec_battery(doc.spec, cfg, results);
    }
    json out;
    out["checks"] = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        json jr;
        jr["name"] = r.name;
        jr["pass"] = r.pass;
        if (!r.detail.empty()) jr["detail"] = r.detail;
        out["checks"].push_back(jr);
        all_pass = all_pass && r.pass;
    }
    out["pass"] = all_pass;
    std::cout << out.dump(2) << "\n";
    return all_pass ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
#if defined(_OPENMP)
    if (const char* env = std::getenv("OFBF_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) omp_set_num_threads(t);
    }
#endif
    CLI::App app{"operator fractional Brownian field toolkit"};
    app.require_subcommand(1);

    std::string domain, range, mode = "ac", out_path = "spec.json", spec_path, points_text,
                suite = "all", slices_path;
    double check_oss = 0;
    int samples = 100;
    std::uint64_t seed = 1;

    auto* c_construct = app.add_subcommand("construct", "build a spec with given symmetry groups");
    c_construct->add_option("--domain", domain, "domain group (cyclic:N, dihedral:N, dstar1, o2)")
        ->required();
    c_construct->add_option("--range", range, "range group (c2, d2, so2, o2)")->required();
    c_construct->add_option("--mode", mode, "ac | singular");
    c_construct->add_option("--out", out_path, "output spec file");

    auto* c_classify = app.add_subcommand("classify", "classify the symmetry groups of a spec");
    c_classify->add_option("--spec", spec_path, "spec file")->required();

    auto* c_cov = app.add_subcommand("covariance", "evaluate the covariance on a point grid");
    c_cov->add_option("--spec", spec_path, "spec file")->required();
    c_cov->add_option("--points", points_text, "points \"x,y;x,y;...\"")->required();
    c_cov->add_option("--out", out_path, "output CSV")->required();
    c_cov->add_option("--check-oss", check_oss, "report the self-similarity deviation at scale c");
    c_cov->add_option("--emit-slices", slices_path, "write arc boundaries and values as JSON");

    auto* c_sim = app.add_subcommand("simulate", "draw Gaussian realizations on a grid");
    c_sim->add_option("--spec", spec_path, "spec file")->required();
    c_sim->add_option("--points", points_text, "points \"x,y;x,y;...\"")->required();
    c_sim->add_option("--samples", samples, "number of realizations");
    c_sim->add_option("--seed", seed, "RNG seed");
    c_sim->add_option("--out", out_path, "output CSV")->required();

    auto* c_verify = app.add_subcommand("verify", "run verification suites");
    c_verify->add_option("--spec", spec_path, "spec file (needed for the spec suite)");
    c_verify->add_option("--suite", suite, "all | tables | spec");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_construct->parsed()) return cmd_construct(domain, range, mode, out_path);
        if (c_classify->parsed()) return cmd_classify(spec_path);
        if (c_cov->parsed())
            return cmd_covariance(spec_path, points_text, out_path, check_oss, slices_path);
        if (c_sim->parsed()) return cmd_simulate(spec_path, points_text, samples, seed, out_path);
        if (c_verify->parsed()) return cmd_verify(spec_path, suite);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUser;
    }
    return 0;
}
