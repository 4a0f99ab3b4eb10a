#pragma once

#include <stdexcept>
#include <string>

namespace etc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad image/block geometry (zero-sized block, non-multiple dimensions, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

// Inconsistent or unsupported configuration (e.g. rotation on non-square blocks).
class ConfigError : public Error {
public:
    using Error::Error;
};

// File and format problems.
class IoError : public Error {
public:
    using Error::Error;
};

// JPEG codec failures; carries the hop identity when raised inside the channel.
class CodecError : public Error {
public:
    using Error::Error;
};

} // namespace etc
