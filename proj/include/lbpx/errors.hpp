#pragma once

#include <stdexcept>
#include <string>

namespace lbpx {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed PGM input. `kind()` tells the failure classes apart.
class FormatError : public Error {
public:
    enum class Kind { BadMagic, BadHeader, MaxvalTooLarge, TruncatedPayload, BadPixel };

    FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Coordinates or rectangles outside the valid domain.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration value (P, R, grid, weights, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Image too small to hold a single LBP neighbourhood.
class ImageTooSmallError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Label map holds a label outside the histogram's bin range.
class CorruptMapError : public Error {
public:
    using Error::Error;
};

/// Template construction failed (empty input, mixed configurations).
class TrainingError : public Error {
public:
    using Error::Error;
};

/// Query or file does not match the model's configuration.
class ModelMismatchError : public Error {
public:
    using Error::Error;
};

/// Malformed manifest CSV; the message names the offending row.
class ManifestError : public Error {
public:
    using Error::Error;
};

/// JSON document (model, descriptor, report) missing fields or holding
/// values of the wrong type.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Evaluation failed on a specific entry.
class EvaluationError : public Error {
public:
    enum class Kind { UnreadableFile, UnknownLabel, EmptySplit };

    EvaluationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

} // namespace lbpx
