/**
 * @file sparse.hpp
 * @brief Compressed sparse row storage, triplet assembly and the SPD solver.
 */
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mhdcn {

struct Triplet {
    int row;
    int col;
    double value;
};

class TripletBuffer {
public:
    TripletBuffer(int rows, int cols) : rows_(rows), cols_(cols) {}

    /// Throws InvalidArgument if (row, col) is outside the declared shape.
    void add(int row, int col, double value);

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] const std::vector<Triplet>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::vector<Triplet>& entries() noexcept { return entries_; }

private:
    int rows_;
    int cols_;
    std::vector<Triplet> entries_;
};

/// Columns sorted within each row, no duplicates.
class CsrMatrix {
public:
    CsrMatrix() = default;
    CsrMatrix(int rows, int cols, std::vector<int> row_ptr, std::vector<int> col_idx, std::vector<double> values);

    /// Zero-valued matrix with the union of the given (unsorted, possibly repeated) columns per row.
    static CsrMatrix from_pattern(int cols, const std::vector<std::vector<int>>& row_cols);

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t nnz() const noexcept { return col_idx_.size(); }
    [[nodiscard]] const std::vector<int>& row_ptr() const noexcept { return row_ptr_; }
    [[nodiscard]] const std::vector<int>& col_idx() const noexcept { return col_idx_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] std::vector<double>& values() noexcept { return values_; }

    /// Position of (row, col) in values(), or -1 if not stored.
    [[nodiscard]] long find(int row, int col) const noexcept;
    [[nodiscard]] double entry(int row, int col) const noexcept;
    /// Adds into an existing pattern entry; throws if (row, col) is not stored.
    void add(int row, int col, double value);

    void set_zero() noexcept;
    void scale(double alpha) noexcept;

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    [[nodiscard]] std::vector<double> operator*(std::span<const double> x) const;
    /// y += alpha * A x
    void multiply_add(double alpha, std::span<const double> x, std::span<double> y) const;
    /// y += alpha * A^T x
    void multiply_transpose_add(double alpha, std::span<const double> x, std::span<double> y) const;

    [[nodiscard]] CsrMatrix transpose() const;
    [[nodiscard]] std::vector<std::vector<double>> to_dense() const;
    [[nodiscard]] double max_abs() const noexcept;
    [[nodiscard]] bool same_pattern(const CsrMatrix& other) const noexcept;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> col_idx_;
    std::vector<double> values_;
};

/// Duplicates summed. Entries are ordered by (row, col, value) before summation,
/// so the result is bit-identical for any permutation of the buffer.
CsrMatrix to_csr(const TripletBuffer& buffer, int rows, int cols);

struct ScaledMatrix {
    double alpha;
    const CsrMatrix* matrix;
};

/// sum_k alpha_k A_k over the union of the patterns; all terms share one shape.
CsrMatrix linear_combination(std::initializer_list<ScaledMatrix> terms);

/// Block matrix from a row-major grid of optional blocks. Row heights and
/// column widths are given explicitly so empty block rows/columns are allowed.
struct Block {
    double alpha = 1.0;
    const CsrMatrix* matrix = nullptr;
};
CsrMatrix block_matrix(const std::vector<int>& row_sizes, const std::vector<int>& col_sizes,
                       const std::vector<std::vector<Block>>& blocks);

/**
 * Homogeneous constraint elimination: constrained rows become identity rows,
 * constrained columns are zeroed in other rows, constrained rhs entries are
 * zeroed. Stored entries stay in the pattern. Every constrained row must
 * store its diagonal.
 */
void apply_zero_constraints(CsrMatrix& a, std::span<double> rhs, std::span<const char> mask);
void apply_zero_constraints(CsrMatrix& a, std::span<const char> mask);

struct SolverReport {
    int iterations = 0;
    /// ||A x - b||_2 / ||b||_2 recomputed after the solve (absolute if b = 0).
    double relative_residual = 0.0;
    bool success = false;
    std::string message;
};

double relative_residual(const CsrMatrix& a, std::span<const double> x, std::span<const double> b);

struct SolveResult {
    std::vector<double> x;
    SolverReport report;
};

inline constexpr double kSpdDefaultTolerance = 1e-12;

/// Jacobi-preconditioned conjugate gradients, capped at 10 * dimension iterations.
SolveResult solve_spd(const CsrMatrix& a, std::span<const double> b, double tol = kSpdDefaultTolerance);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

} // namespace mhdcn
