#include "ofbf/io.hpp"

#include <cmath>
#include <fstream>

namespace ofbf::io {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

json matrix_to_json(const RealMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

RealMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw Error(ErrorKind::InvalidInput, "matrix must be an array");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    RealMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols)
            throw Error(ErrorKind::InvalidInput, "ragged matrix rows");
        for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

json hermitian_to_json(const HermitianMatrix& h) {
    json out;
    out["re"] = matrix_to_json(h.real());
    if (!h.is_real()) out["im"] = matrix_to_json(h.imag());
    return out;
}

HermitianMatrix hermitian_from_json(const json& j) {
    const RealMatrix re = matrix_from_json(j.at("re"));
    if (j.contains("im")) return HermitianMatrix(ComplexMatrix(re, matrix_from_json(j.at("im"))));
    return HermitianMatrix(re);
}

}  // namespace

double parse_angle(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        // "p/q*2pi"
        const auto slash = s.find('/');
        const auto star = s.find("*2pi");
        if (slash == std::string::npos || star == std::string::npos || star < slash)
            throw Error(ErrorKind::InvalidInput, "angle string must look like \"p/q*2pi\": " + s);
        const long long p = std::stoll(s.substr(0, slash));
        const long long q = std::stoll(s.substr(slash + 1, star - slash - 1));
        if (q == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in angle " + s);
        return kTwoPi * static_cast<double>(p) / static_cast<double>(q);
    }
    throw Error(ErrorKind::InvalidInput, "angle must be a number or \"p/q*2pi\"");
}

json group_to_json(const groups::CompactGroup2& g) {
    using groups::GroupKind;
    json out;
    switch (g.kind()) {
        case GroupKind::Cyclic:
            out["type"] = "cyclic";
            out["nu"] = g.nu();
            break;
        case GroupKind::Dihedral:
            out["type"] = "dihedral";
            out["nu"] = g.nu();
            break;
        case GroupKind::DStar1: out["type"] = "dstar1"; break;
        case GroupKind::SO2: out["type"] = "so2"; break;
        case GroupKind::O2: out["type"] = "o2"; break;
        case GroupKind::ExplicitFinite: {
            out["type"] = "explicit";
            json elems = json::array();
            for (const auto& e : g.enumerate()) {
                json je;
                je["kind"] = e.reflection ? "reflection" : "rotation";
                je["turn"] = std::to_string(e.turn.num) + "/" + std::to_string(e.turn.den);
                elems.push_back(je);
            }
            out["elements"] = elems;
            break;
        }
    }
    if (!g.conjugacy_is_identity()) out["W"] = matrix_to_json(g.conjugacy());
    if (g.frame() != 0.0) out["frame"] = g.frame();
    return out;
}

groups::CompactGroup2 group_from_json(const json& j) {
    using groups::CompactGroup2;
    const std::string type = j.at("type").get<std::string>();
    CompactGroup2 g;
    if (type == "cyclic") {
        g = CompactGroup2::cyclic(j.at("nu").get<int>());
    } else if (type == "dihedral") {
        g = CompactGroup2::dihedral(j.at("nu").get<int>());
    } else if (type == "dstar1") {
        g = CompactGroup2::dstar1();
    } else if (type == "so2") {
        g = CompactGroup2::so2();
    } else if (type == "o2") {
        g = CompactGroup2::o2();
    } else if (type == "explicit") {
        std::vector<groups::GroupElement2> elems;
        for (const auto& je : j.at("elements")) {
            const std::string turn = je.at("turn").get<std::string>();
            const auto slash = turn.find('/');
            if (slash == std::string::npos)
                throw Error(ErrorKind::InvalidInput, "element turn must be \"p/q\"");
            const groups::Rational r(std::stoll(turn.substr(0, slash)),
                                     std::stoll(turn.substr(slash + 1)));
            const bool refl = je.at("kind").get<std::string>() == "reflection";
            elems.push_back(refl ? groups::GroupElement2::reflection_at(r)
                                 : groups::GroupElement2::rotation(r));
        }
        g = CompactGroup2::explicit_finite(std::move(elems));
    } else {
        throw Error(ErrorKind::InvalidInput, "unknown group type: " + type);
    }
    if (j.contains("frame")) g = g.with_frame(j.at("frame").get<double>());
    if (j.contains("W")) g = g.with_conjugacy(matrix_from_json(j.at("W")));
    return g;
}

json spec_to_json(const spectral::OfbfSpec& spec, const spectral::QuadratureConfig* quadrature,
                  const std::string& notes) {
    json out;
    out["version"] = "1";
    out["m"] = spec.m();
    out["n"] = spec.n();
    out["E"] = matrix_to_json(spec.scaling.domain_exponent());
    out["H"] = matrix_to_json(spec.scaling.range_exponent());

    const auto& sph = spec.spherical;
    json js;
    using measures::MeasureVariant;
    switch (sph.variant()) {
        case MeasureVariant::Atomic: {
            js["type"] = "atomic";
            json atoms = json::array();
            for (const auto& a : sph.atoms()) {
                json ja;
                ja["theta"] = a.angle;
                ja["value_re"] = matrix_to_json(a.value.real());
                if (!a.value.is_real()) ja["value_im"] = matrix_to_json(a.value.imag());
                atoms.push_back(ja);
            }
            js["atoms"] = atoms;
            break;
        }
        case MeasureVariant::PiecewiseConstant: {
            js["type"] = "piecewise";
            js["breakpoints"] = sph.breakpoints();
            json vals = json::array();
            for (const auto& v : sph.values()) vals.push_back(hermitian_to_json(v));
            js["values"] = vals;
            break;
        }
        case MeasureVariant::Constant:
            js["type"] = "constant";
            js["value"] = hermitian_to_json(sph.constant_value());
            break;
    }
    out["spherical"] = js;
    if (quadrature) {
        json q;
        q["log10_r_min"] = quadrature->log10_r_min;
        q["log10_r_max"] = quadrature->log10_r_max;
        q["radial_panels"] = quadrature->radial_panels;
        q["radial_order"] = quadrature->radial_order;
        q["angular_nodes"] = quadrature->angular_nodes;
        q["rel_tol"] = quadrature->rel_tol;
        out["quadrature"] = q;
    }
    if (!notes.empty()) out["notes"] = notes;
    return out;
}

SpecDocument spec_from_json(const json& j) {
    if (j.contains("version") && j.at("version").get<std::string>() != "1")
        throw Error(ErrorKind::InvalidInput, "unsupported spec version");
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    const RealMatrix e = matrix_from_json(j.at("E"));
    const RealMatrix h = matrix_from_json(j.at("H"));

    const json& js = j.at("spherical");
    const std::string type = js.at("type").get<std::string>();
    std::optional<measures::SphericalMeasure> sph;
    if (type == "atomic") {
        std::vector<measures::MatrixAtom> atoms;
        for (const auto& ja : js.at("atoms")) {
            const RealMatrix re = matrix_from_json(ja.at("value_re"));
            HermitianMatrix value =
                ja.contains("value_im")
                    ? HermitianMatrix(ComplexMatrix(re, matrix_from_json(ja.at("value_im"))))
                    : HermitianMatrix(re);
            atoms.push_back({parse_angle(ja.at("theta")), std::move(value)});
        }
        sph = measures::SphericalMeasure::atomic(m, n, std::move(atoms));
    } else if (type == "piecewise") {
        std::vector<double> bps;
        for (const auto& b : js.at("breakpoints")) bps.push_back(parse_angle(b));
        std::vector<HermitianMatrix> vals;
        for (const auto& v : js.at("values")) vals.push_back(hermitian_from_json(v));
        sph = measures::SphericalMeasure::piecewise(n, std::move(bps), std::move(vals));
    } else if (type == "constant") {
        sph = measures::SphericalMeasure::constant(n, hermitian_from_json(js.at("value")));
    } else {
        throw Error(ErrorKind::InvalidInput, "unknown spherical type: " + type);
    }

    SpecDocument doc{spectral::OfbfSpec(spectral::ScalingPair(e, h), *sph), {}, false, ""};
    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        doc.has_quadrature = true;
        if (q.contains("log10_r_min")) doc.quadrature.log10_r_min = q["log10_r_min"].get<double>();
        if (q.contains("log10_r_max")) doc.quadrature.log10_r_max = q["log10_r_max"].get<double>();
        if (q.contains("radial_panels")) doc.quadrature.radial_panels = q["radial_panels"].get<int>();
        if (q.contains("radial_order")) doc.quadrature.radial_order = q["radial_order"].get<int>();
        if (q.contains("angular_nodes")) doc.quadrature.angular_nodes = q["angular_nodes"].get<int>();
        if (q.contains("rel_tol")) doc.quadrature.rel_tol = q["rel_tol"].get<double>();
    }
    if (j.contains("notes")) doc.notes = j.at("notes").get<std::string>();
    return doc;
}

SpecDocument load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open spec file " + path);
    json j;
    in >> j;
    return spec_from_json(j);
}

void save_spec_file(const std::string& path, const spectral::OfbfSpec& spec,
                    const spectral::QuadratureConfig* quadrature, const std::string& notes) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot open output file " + path);
    out << spec_to_json(spec, quadrature, notes).dump(2) << "\n";
}

json report_to_json(const spectral::OfbfSpec& spec, const symmetry::SymmetryReport& report) {
    json out;
    out["domain"] = (spec.m() == 1) ? json{{"type", "pm1"}} : group_to_json(report.domain_group);
    out["range"] = (spec.n() == 1) ? json{{"type", "pm1"}} : group_to_json(report.range_group);

    auto exponents = [](const symmetry::ExponentSet& s) {
        json e;
        e["base"] = matrix_to_json(s.base);
        e["tangent"] = s.tangent.zero ? "zero" : "so2";
        if (!s.tangent.zero) e["W"] = matrix_to_json(s.tangent.w);
        return e;
    };
    out["domain_exponents"] = exponents(report.domain_exponents);
    out["range_exponents"] = exponents(report.range_exponents);
    out["isotropic"] = report.isotropy.isotropic;
    if (report.isotropy.isotropic) out["eta"] = report.isotropy.eta;
    out["isotropy_note"] = report.isotropy.note;
    out["admissible"] = report.admissible;
    return out;
}

groups::CompactGroup2 parse_group_name(const std::string& name) {
    using groups::CompactGroup2;
    if (name == "dstar1") return CompactGroup2::dstar1();
    if (name == "so2") return CompactGroup2::so2();
    if (name == "o2") return CompactGroup2::o2();
    if (name == "c2") return CompactGroup2::cyclic(2);
    if (name == "d2") return CompactGroup2::dihedral(2);
    const auto colon = name.find(':');
    if (colon != std::string::npos) {
        const std::string head = name.substr(0, colon);
        const int nu = std::stoi(name.substr(colon + 1));
        if (head == "cyclic") return CompactGroup2::cyclic(nu);
        if (head == "dihedral") return CompactGroup2::dihedral(nu);
    }
    throw Error(ErrorKind::InvalidInput,
                "unknown group name \"" + name +
                    "\" (use cyclic:N, dihedral:N, dstar1, so2, o2)");
}

std::string group_name(const groups::CompactGroup2& g) {
    return groups::describe(g);
}

}  // namespace ofbf::io
