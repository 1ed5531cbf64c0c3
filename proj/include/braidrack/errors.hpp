#pragma once

#include <stdexcept>
#include <string>

namespace braidrack {

// Base class for every domain error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation table is empty, non-square, or has out-of-range entries.
struct MalformedTable : Error {
    using Error::Error;
};

// Some column map x -> x |> y of the table is not a bijection.
struct AxiomOneViolation : Error {
    int column;
    explicit AxiomOneViolation(int y)
        : Error("axiom 1 violated: column " + std::to_string(y) +
                " is not a bijection"),
          column(y) {}
};

// Self-distributivity (x|>y)|>z = (x|>z)|>(y|>z) fails; (x,y,z) is the first
// failing triple in row-major scan order.
struct AxiomTwoViolation : Error {
    int x, y, z;
    AxiomTwoViolation(int x_, int y_, int z_)
        : Error("axiom 2 violated at (x,y,z) = (" + std::to_string(x_) + "," +
                std::to_string(y_) + "," + std::to_string(z_) + ")"),
          x(x_), y(y_), z(z_) {}
};

// Cayley table fails a group axiom ("closure", "identity", "inverses",
// "associativity").
struct NotAGroup : Error {
    std::string axiom;
    explicit NotAGroup(std::string which)
        : Error("not a group: " + which + " fails"), axiom(std::move(which)) {}
};

struct InvalidParameters : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line, column;
    ParseError(const std::string& msg, int line_, int column_)
        : Error("parse error at " + std::to_string(line_) + ":" +
                std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

struct IndexOutOfRange : Error {
    int index;
    explicit IndexOutOfRange(int i, const std::string& what_ = "index out of range")
        : Error(what_ + ": " + std::to_string(i)), index(i) {}
};

struct StrandMismatch : Error {
    using Error::Error;
};

struct RelationNotApplicable : Error {
    using Error::Error;
};

struct SizeCapExceeded : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct BasepointCountMismatch : Error {
    using Error::Error;
};

struct AssignmentLengthMismatch : Error {
    using Error::Error;
};

}  // namespace braidrack
