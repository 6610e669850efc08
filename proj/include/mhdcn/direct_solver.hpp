/**
 * @file direct_solver.hpp
 * @brief Sparse LU for the nonsymmetric and saddle-point systems.
 */
#pragma once

#include "mhdcn/sparse.hpp"

#include <memory>
#include <span>
#include <vector>

namespace mhdcn {

inline constexpr double kDirectResidualTolerance = 1e-10;

/**
 * Owns an LU factorization (UMFPACK). The symbolic analysis is kept and
 * reused while successive matrices share a sparsity pattern, so a time loop
 * that re-assembles on a fixed pattern only pays for the numeric phase.
 */
class DirectSolver {
public:
    DirectSolver();
    ~DirectSolver();
    DirectSolver(DirectSolver&&) noexcept;
    DirectSolver& operator=(DirectSolver&&) noexcept;
    DirectSolver(const DirectSolver&) = delete;
    DirectSolver& operator=(const DirectSolver&) = delete;

    /// Factorizes a; on failure the report carries the diagnostics and solve() refuses.
    SolverReport factorize(const CsrMatrix& a);

    /// Solves with the last factorization; the residual is recomputed against that matrix.
    SolveResult solve(std::span<const double> b) const;

    [[nodiscard]] bool factorized() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot factorize + solve. Success requires relative residual <= 1e-10.
SolveResult solve_direct(const CsrMatrix& a, std::span<const double> b);

} // namespace mhdcn
