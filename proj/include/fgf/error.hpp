#pragma once

#include <stdexcept>
#include <string>

namespace fgf {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two rasters that must share dimensions do not.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A radius, epsilon, ratio or target size outside its valid range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Channel layout or file format the operation cannot handle.
class FormatError : public Error {
public:
    using Error::Error;
};

enum class IoErrc {
    file_not_found = 1,
    unsupported_format,
    corrupt_data,
    write_failed,
};

inline const char* to_string(IoErrc code) noexcept {
    switch (code) {
    case IoErrc::file_not_found: return "file not found";
    case IoErrc::unsupported_format: return "unsupported format";
    case IoErrc::corrupt_data: return "corrupt data";
    case IoErrc::write_failed: return "write failed";
    }
    return "unknown";
}

class IoError : public Error {
public:
    IoError(IoErrc code, const std::string& what)
        : Error(std::string(to_string(code)) + ": " + what), code_(code) {}

    IoErrc code() const noexcept { return code_; }

private:
    IoErrc code_;
};

} // namespace fgf
