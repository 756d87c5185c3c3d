#pragma once

// Exact integer lattice checks: Smith and Hermite normal forms over
// arbitrary-precision integers, the direct-summand test and the triangularity
// report for generator matrices written in Gold-Kim coordinates.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "cyclo/goldkim.hpp"

namespace cyclo {

using BigInt = boost::multiprecision::mpz_int;

class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n);
    // Each input vector becomes one column.
    static IntegerMatrix from_columns(const std::vector<std::vector<std::int64_t>>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    BigInt& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntegerMatrix transposed() const;
    bool operator==(const IntegerMatrix&) const = default;

    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> data_;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);

struct SmithResult {
    std::vector<BigInt> divisors; // nonzero diagonal entries, each dividing the next
    std::size_t rank = 0;
    IntegerMatrix U, V, D;         // U * M * V = D
    bool certificate_verified = false;
};

// Pivoting on the entry of least nonzero magnitude. The certificate is checked
// exactly: U M V = D, and U, V have integer inverses (also checked).
SmithResult smith_normal_form(const IntegerMatrix& m);

// Row-style Hermite normal form of the lattice spanned by the columns of m:
// an upper echelon basis (as rows) with positive pivots and reduced entries
// above each pivot. Zero rows are dropped.
IntegerMatrix hermite_normal_form(const IntegerMatrix& m);

struct DirectFactorReport {
    bool direct = false;      // every elementary divisor is 1
    bool independent = false; // rank equals number of vectors
    std::vector<BigInt> divisors;
    std::size_t rank = 0;
};

DirectFactorReport is_direct_factor(const std::vector<std::vector<std::int64_t>>& vectors, std::size_t dimension);

struct TriangularityReport {
    struct Entry {
        std::size_t column;
        std::size_t row;
        std::int64_t value;
    };
    bool passed = false;
    std::vector<std::size_t> column_order;  // columns sorted by their pinned row
    std::vector<std::int64_t> diagonal;     // pinned entries in column_order
    std::vector<Entry> bad_diagonal;        // pinned entry not +-1
    std::vector<Entry> violations;          // nonzero entry before the pinned row within the column's level
    std::vector<std::size_t> exceptions;    // columns exempt from the least-entry check
    bool pinned_rows_distinct = false;
    BigInt pinned_determinant;              // determinant of the pinned square block
};

// m: rows indexed by `rows` (Gold-Kim indices), one column per generator.
// pinned[c] is the row designated for column c; exempt[c] skips the
// least-entry check for that column.
TriangularityReport triangularity_report(const IntegerMatrix& m, const std::vector<GKIndex>& rows,
                                         const std::vector<std::size_t>& pinned, const std::vector<bool>& exempt);

BigInt determinant(const IntegerMatrix& m);

} // namespace cyclo
