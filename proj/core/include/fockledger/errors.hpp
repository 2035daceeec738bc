#pragma once

#include <stdexcept>
#include <string>

namespace fockledger {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation produced (or was handed) a vector with no amplitude left,
/// e.g. annihilating the vacuum.
class ZeroState : public Error {
public:
    using Error::Error;
};

/// A probability sequence failed validation (genuine negativity or a
/// normalization defect beyond the admitted tail tolerance).
class InvalidDistribution : public Error {
public:
    using Error::Error;
};

/// Adaptive cutoff growth hit the configured maximum while the tail still
/// carried more mass than the tolerance admits.
class CutoffOverflow : public Error {
public:
    using Error::Error;
};

/// A constructor parameter lies outside its domain.
class InvalidParams : public Error {
public:
    using Error::Error;
};

/// The coherent+vacuum normalization constraint has no real solution for
/// the requested (alpha, eta).
class NoRealRoot : public Error {
public:
    using Error::Error;
};

/// paper_relations() was asked about a family it has no closed forms for.
class UnsupportedSpec : public Error {
public:
    using Error::Error;
};

} // namespace fockledger
