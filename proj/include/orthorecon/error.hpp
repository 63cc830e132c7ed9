#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orthorecon {

enum class ErrorCode {
    DuplicatePlane,
    TooFewPlanes,
    UnsortedPlanes,
    OnPlane,
    OutOfHull,
    TangencyDetected,
    OpenChain,
    VertexOnPlane,
    DegenerateContour,
    InvalidShape,
    CornerSingularity,
    EdgeNotInGrid,
    UnpairedInput,
    NonManifoldJunction,
    DegenerateLoop,
    NonOrientable,
    EmptyMesh,
    InvalidDocument,
    Parse,
    Io,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this one exception type; the code
// lets callers (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace orthorecon
