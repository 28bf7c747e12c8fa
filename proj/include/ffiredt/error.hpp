#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffiredt {

/// Base class for all library failures. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed image payloads.
class DecodeError : public Error {
public:
    using Error::Error;
};

/// Payload is well-formed for some format this library does not read.
class UnsupportedFormatError : public DecodeError {
public:
    using DecodeError::DecodeError;
};

/// Degenerate color-space inputs (e.g. zero chromaticity denominator).
class ColorError : public Error {
public:
    using Error::Error;
};

/// Extractor precondition failures (undersized image, empty pixel filter, ...).
class ExtractError : public Error {
public:
    using Error::Error;
};

/// Evaluation-function misuse: dimension or descriptor mismatch, non-finite input.
class CompareError : public Error {
public:
    using Error::Error;
};

/// Store-file problems. Carries the byte offset where reading stopped making sense.
class StoreError : public Error {
public:
    explicit StoreError(const std::string& what, std::uint64_t offset = 0)
        : Error(what), offset_(offset) {}

    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

/// Classifier precondition failures (not enough labeled instances, ...).
class ClassifyError : public Error {
public:
    using Error::Error;
};

/// Evaluation-harness failures (undefined measures, degenerate projections, ...).
class HarnessError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration files or parameter values.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace ffiredt
