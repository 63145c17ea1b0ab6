// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXSR_ERRORS_HPP
#define VOXSR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace voxsr {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Invalid arguments to an operation (depth out of range, depth mismatch,
// empty inputs where non-empty ones are required, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Malformed text input (PLY headers/bodies, manifests). The message names
// the offending line or byte offset.
class ParseError : public Error {
public:
    using Error::Error;
};

// Malformed binary container (VOXF / VOXT). The message names the offending
// byte offset or record index.
class CorruptFileError : public Error {
public:
    using Error::Error;
};

// Octree stream violating its level structure.
class CorruptStreamError : public Error {
public:
    using Error::Error;
};

} // namespace voxsr

#endif // VOXSR_ERRORS_HPP
