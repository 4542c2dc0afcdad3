#pragma once

#include <stdexcept>
#include <string>

namespace mapgen {

enum class ErrorKind {
    InvalidGeometry,  // broken ring/polygon invariants
    Capacity,         // resource budget exceeded (e.g. raster grid too large)
    Io,               // unreadable/unwritable file
    Parse,            // malformed document
    Data,             // readable but unusable content
    Config,           // bad configuration or usage
    Internal
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidGeometry: return "invalid-geometry";
        case ErrorKind::Capacity: return "capacity";
        case ErrorKind::Io: return "io";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Data: return "data";
        case ErrorKind::Config: return "config";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

}  // namespace mapgen
