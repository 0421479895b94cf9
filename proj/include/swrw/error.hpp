#pragma once

#include <stdexcept>
#include <string>

namespace swrw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A walker reached a node whose outgoing transition mass is zero.
class StuckError : public Error {
public:
    explicit StuckError(const std::string& what) : Error("stuck: " + what) {}
};

/// The pilot walk saw no relevant volume, so no stratified plan exists.
class PilotError : public Error {
public:
    using Error::Error;
};

} // namespace swrw
