#include "ofbf/error.hpp"

namespace ofbf {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::SingularInput: return "SingularInput";
        case ErrorKind::NotFinite: return "NotFinite";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
        case ErrorKind::DuplicateOrbit: return "DuplicateOrbit";
        case ErrorKind::AntipodesEverywhere: return "AntipodesEverywhere";
        case ErrorKind::PivotOnAntipode: return "PivotOnAntipode";
        case ErrorKind::IncompatibleSpec: return "IncompatibleSpec";
        case ErrorKind::ConstructionFailure: return "ConstructionFailure";
        case ErrorKind::RecipeInvalid: return "RecipeInvalid";
        case ErrorKind::QuadratureFailure: return "QuadratureFailure";
        case ErrorKind::SingularPoint: return "SingularPoint";
        case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorKind::DegenerateSpec: return "DegenerateSpec";
        case ErrorKind::NotMaximal: return "NotMaximal";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::GridNotInvariant: return "GridNotInvariant";
        case ErrorKind::UseAbsolutelyContinuous: return "UseAbsolutelyContinuous";
    }
    return "Error";
}

}  // namespace ofbf
