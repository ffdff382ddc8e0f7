#pragma once

#include <stdexcept>
#include <string>

namespace eigengesture {

// Root of every error thrown on purpose by this library. Anything else
// escaping is a bug.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---- linear algebra ----

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotSymmetric : public Error {
public:
    using Error::Error;
};

class ZeroVector : public Error {
public:
    using Error::Error;
};

// Sweep budget exhausted before the off-diagonal norm dropped below tolerance.
class NoConvergence : public Error {
public:
    using Error::Error;
};

// ---- image I/O ----

class FormatError : public Error {
public:
    using Error::Error;
};

class UnsupportedMaxval : public Error {
public:
    using Error::Error;
};

class NotSquare : public Error {
public:
    using Error::Error;
};

class EmptyDataset : public Error {
public:
    using Error::Error;
};

// ---- training ----

class TooFewSamples : public Error {
public:
    using Error::Error;
};

class DegenerateTrainingSet : public Error {
public:
    using Error::Error;
};

// ---- model files ----

class SinkFailure : public Error {
public:
    using Error::Error;
};

class ModelFileError : public Error {
public:
    using Error::Error;
};

class BadMagic : public ModelFileError {
public:
    using ModelFileError::ModelFileError;
};

class UnsupportedVersion : public ModelFileError {
public:
    using ModelFileError::ModelFileError;
};

class CorruptFile : public ModelFileError {
public:
    using ModelFileError::ModelFileError;
};

class Truncated : public ModelFileError {
public:
    using ModelFileError::ModelFileError;
};

}  // namespace eigengesture
