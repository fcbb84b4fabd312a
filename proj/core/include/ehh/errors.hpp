#ifndef EHH_ERRORS_HPP
#define EHH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ehh {

// Base class for all library errors. Subclasses map onto distinct CLI exit
// codes, so keep the hierarchy flat and the categories coarse.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input data problems (bad values, degenerate columns, unparsable files).
class DataError : public Error {
public:
    using Error::Error;
};

class ConstantDimension : public DataError {
public:
    explicit ConstantDimension(int dim)
        : DataError("dimension " + std::to_string(dim) +
                    " is constant: max equals min"),
          dimension(dim) {}
    int dimension;
};

class ParseError : public DataError {
public:
    ParseError(const std::string& what, long line)
        : DataError(what + " (line " + std::to_string(line) + ")"),
          line(line) {}
    long line;
};

class MissingColumn : public DataError {
public:
    explicit MissingColumn(const std::string& what) : DataError(what) {}
};

class InsufficientData : public DataError {
public:
    using DataError::DataError;
};

class ZeroVariance : public DataError {
public:
    using DataError::DataError;
};

// Shape mismatches between vectors, matrices, models and lag specs.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class SpecMismatch : public DimensionMismatch {
public:
    using DimensionMismatch::DimensionMismatch;
};

// Training-side failures.
class TrainError : public Error {
public:
    using Error::Error;
};

class GenerationStall : public TrainError {
public:
    explicit GenerationStall(int node)
        : TrainError("could not draw a valid parent pair for node " +
                     std::to_string(node) +
                     " after the retry limit; neuron budget exceeds the "
                     "available distinct combinations"),
          node(node) {}
    int node;
};

class DegenerateQuantiles : public TrainError {
public:
    DegenerateQuantiles(int dim, int distinct, int wanted)
        : TrainError("dimension " + std::to_string(dim) + " yields only " +
                     std::to_string(distinct) + " distinct offsets of " +
                     std::to_string(wanted) + " requested"),
          dimension(dim), distinct(distinct), requested(wanted) {}
    int dimension;
    int distinct;
    int requested;
};

class Saturated : public TrainError {
public:
    Saturated(double complexity, long samples)
        : TrainError("effective complexity " + std::to_string(complexity) +
                     " reaches the sample count " + std::to_string(samples)),
          complexity(complexity), samples(samples) {}
    double complexity;
    long samples;
};

class ResourceBound : public TrainError {
public:
    using TrainError::TrainError;
};

class InvalidConfig : public TrainError {
public:
    using TrainError::TrainError;
};

// Numeric blowups detected at runtime (free-run divergence).
class NumericOverflow : public Error {
public:
    NumericOverflow(double value, long step)
        : Error("simulated output " + std::to_string(value) +
                " exceeded the overflow guard at step " +
                std::to_string(step)),
          value(value), step(step) {}
    double value;
    long step;
};

// Filesystem problems.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ehh

#endif  // EHH_ERRORS_HPP
