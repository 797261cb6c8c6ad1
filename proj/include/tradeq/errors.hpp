#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tradeq {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Some country has (near-)zero expenditure but positive income at the given
/// prices: the demand fraction D_k/E_k diverges and the price vector lies
/// outside the model's admissible cone.
class UndefinedDemand : public Error {
public:
    using Error::Error;
};

class ZeroSupply : public Error {
public:
    using Error::Error;
};

class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// --- ingestion errors; `row` is the 1-based data-row number ---

class RowError : public Error {
public:
    RowError(const std::string& what, std::size_t row) : Error(what), row_(row) {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

class MalformedRow : public RowError {
public:
    using RowError::RowError;
};

class UnknownDirection : public RowError {
public:
    using RowError::RowError;
};

class SelfFlow : public RowError {
public:
    using RowError::RowError;
};

class NegativeValue : public RowError {
public:
    using RowError::RowError;
};

class UnknownLabel : public Error {
public:
    using Error::Error;
};

class EmptySelection : public Error {
public:
    using Error::Error;
};

class UnknownFixture : public Error {
public:
    using Error::Error;
};

class InconsistentSets : public Error {
public:
    using Error::Error;
};

} // namespace tradeq
