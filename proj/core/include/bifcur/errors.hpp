#pragma once

#include <stdexcept>
#include <string>

namespace bifcur {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by operations that require a non-identity map.
struct IdentityMapError : Error {
    IdentityMapError() : Error("map is the identity (within tolerance)") {}
};

// Invalid user-supplied configuration (flags, config files, specs).
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

struct UnknownGeneratorError : ConfigError {
    explicit UnknownGeneratorError(const std::string& name)
        : ConfigError("unknown generator: " + name) {}
};

struct UnknownPresetError : ConfigError {
    explicit UnknownPresetError(const std::string& name)
        : ConfigError("unknown preset: " + name) {}
};

struct CapExceededError : Error {
    explicit CapExceededError(const std::string& what) : Error(what) {}
};

struct BoundaryZeroError : Error {
    BoundaryZeroError() : Error("zero on box boundary after repeated jiggle attempts") {}
};

struct OverflowError : Error {
    OverflowError() : Error("scaled value exceeds representable range") {}
};

struct SentinelClusterError : Error {
    SentinelClusterError()
        : Error("adjacent -inf cells in field; input word is identically degenerate") {}
};

struct DegenerateMeasureError : Error {
    DegenerateMeasureError() : Error("mass field has non-positive total") {}
};

}  // namespace bifcur
