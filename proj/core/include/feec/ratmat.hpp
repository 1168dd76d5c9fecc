#pragma once

#include <feec/rational.hpp>

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace feec {

// Dense matrix over the exact rationals. Row-major. Sized for desk-scale
// problems; all eliminations use deterministic first-nonzero pivoting.
class RatMat {
public:
    RatMat() = default;
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    static RatMat identity(int n);
    RatMat transpose() const;
    RatMat operator*(const RatMat& o) const;
    RatMat operator-(const RatMat& o) const;
    bool is_zero() const;

    int rank() const;

    // Columns spanning the nullspace (exact).
    RatMat nullspace() const;

    // One exact solution of A x = b, or nullopt if inconsistent.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

    // Greedy maximal independent column subset in enumeration order.
    std::vector<int> independent_columns() const;

    Eigen::MatrixXd to_double() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

// Incremental exact rank tracker: feed candidate vectors, keep those that
// enlarge the span. Used for basis extraction from spanning sets.
class SpanBuilder {
public:
    explicit SpanBuilder(int dim) : dim_(dim) {}

    // Returns true (and records the vector) iff v is independent of the span.
    bool insert(const std::vector<Rational>& v);

    // Expresses v in the accepted vectors, or nullopt if outside the span.
    std::optional<std::vector<Rational>> coordinates(const std::vector<Rational>& v) const;

    int rank() const { return static_cast<int>(accepted_.size()); }

private:
    int dim_;
    // Row-echelon rows paired with their expression in accepted vectors.
    struct Row {
        std::vector<Rational> v;      // reduced vector
        std::vector<Rational> combo;  // coordinates in accepted vectors
        int pivot;
    };
    std::vector<Row> rows_;
    std::vector<std::vector<Rational>> accepted_;
};

} // namespace feec
