#pragma once

// JSON (de)serialization: spec documents, canonical group forms and
// classification reports, plus the small CLI-facing parsers.

#include <optional>
#include <string>

// vendor single-header nlohmann/json
#include "json.hpp"

#include "ofbf/construct.hpp"
#include "ofbf/spectral.hpp"
#include "ofbf/symmetry.hpp"

namespace ofbf::io {

struct SpecDocument {
    spectral::OfbfSpec spec;
    spectral::QuadratureConfig quadrature;
    bool has_quadrature = false;
    std::string notes;
};

nlohmann::json group_to_json(const groups::CompactGroup2& g);
groups::CompactGroup2 group_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const spectral::OfbfSpec& spec,
                            const spectral::QuadratureConfig* quadrature = nullptr,
                            const std::string& notes = "");
SpecDocument spec_from_json(const nlohmann::json& j);

SpecDocument load_spec_file(const std::string& path);
void save_spec_file(const std::string& path, const spectral::OfbfSpec& spec,
                    const spectral::QuadratureConfig* quadrature = nullptr,
                    const std::string& notes = "");

nlohmann::json report_to_json(const spectral::OfbfSpec& spec,
                              const symmetry::SymmetryReport& report);

// "cyclic:3", "dihedral:2", "dstar1", "so2", "o2"
groups::CompactGroup2 parse_group_name(const std::string& name);
std::string group_name(const groups::CompactGroup2& g);

// angle literals: a plain number, or "p/q*2pi"
double parse_angle(const nlohmann::json& v);

}  // namespace ofbf::io
