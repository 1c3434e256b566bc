#pragma once

#include <stdexcept>
#include <string>

namespace ofbf {

// Failure categories surfaced by the toolkit. CLI maps these to exit codes.
enum class ErrorKind {
    InvalidInput,
    SingularInput,
    NotFinite,
    ZeroVector,
    NumericalFailure,
    DuplicateOrbit,
    AntipodesEverywhere,
    PivotOnAntipode,
    IncompatibleSpec,
    ConstructionFailure,
    RecipeInvalid,
    QuadratureFailure,
    SingularPoint,
    UnsupportedDimension,
    DegenerateSpec,
    NotMaximal,
    NotPSD,
    GridNotInvariant,
    UseAbsolutelyContinuous,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace ofbf
