#include "mhdcn/direct_solver.hpp"

#include "mhdcn/error.hpp"

#include <umfpack.h>

#include <cmath>
#include <string>

namespace mhdcn {

// CSR arrays of A are the CSC arrays of A^T, so every solve uses UMFPACK_At.
struct DirectSolver::Impl {
    CsrMatrix matrix;
    void* symbolic = nullptr;
    void* numeric = nullptr;
    bool ok = false;
    double control[UMFPACK_CONTROL];

    Impl() { umfpack_di_defaults(control); }

    ~Impl()
    {
        free_numeric();
        free_symbolic();
    }

    void free_numeric()
    {
        if (numeric) {
            umfpack_di_free_numeric(&numeric);
            numeric = nullptr;
        }
    }

    void free_symbolic()
    {
        if (symbolic) {
            umfpack_di_free_symbolic(&symbolic);
            symbolic = nullptr;
        }
    }
};

DirectSolver::DirectSolver() : impl_(std::make_unique<Impl>()) {}
DirectSolver::~DirectSolver() = default;
DirectSolver::DirectSolver(DirectSolver&&) noexcept = default;
DirectSolver& DirectSolver::operator=(DirectSolver&&) noexcept = default;

bool DirectSolver::factorized() const noexcept { return impl_->ok; }

namespace {

std::string status_text(int status)
{
    switch (status) {
    case UMFPACK_WARNING_singular_matrix:
        return "singular matrix";
    case UMFPACK_ERROR_out_of_memory:
        return "out of memory";
    case UMFPACK_ERROR_invalid_matrix:
        return "invalid matrix";
    case UMFPACK_ERROR_different_pattern:
        return "pattern changed";
    default:
        return "umfpack status " + std::to_string(status);
    }
}

} // namespace

SolverReport DirectSolver::factorize(const CsrMatrix& a)
{
    auto& im = *impl_;
    im.ok = false;
    im.free_numeric();
    if (a.rows() != a.cols()) {
        throw InvalidArgument("DirectSolver: matrix is not square");
    }

    const bool reuse = im.symbolic && im.matrix.same_pattern(a);
    im.matrix = a;
    if (!reuse) {
        im.free_symbolic();
    }

    const int n = a.rows();
    const int* ap = im.matrix.row_ptr().data();
    const int* ai = im.matrix.col_idx().data();
    const double* ax = im.matrix.values().data();
    double info[UMFPACK_INFO];

    SolverReport report;
    if (!im.symbolic) {
        const int status = umfpack_di_symbolic(n, n, ap, ai, ax, &im.symbolic, im.control, info);
        if (status != UMFPACK_OK) {
            im.free_symbolic();
            report.message = "symbolic analysis failed: " + status_text(status);
            return report;
        }
    }
    const int status = umfpack_di_numeric(ap, ai, ax, im.symbolic, &im.numeric, im.control, info);
    if (status == UMFPACK_WARNING_singular_matrix) {
        // Report the first zero pivot (position in the factorized ordering).
        std::vector<double> udiag(n);
        umfpack_di_get_numeric(nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, udiag.data(),
                               nullptr, nullptr, im.numeric);
        int position = -1;
        for (int k = 0; k < n; ++k) {
            if (udiag[k] == 0.0) {
                position = k;
                break;
            }
        }
        im.free_numeric();
        report.message = "pivot breakdown at position " + std::to_string(position) + " of " + std::to_string(n) +
                         " (" + status_text(status) + ")";
        return report;
    }
    if (status != UMFPACK_OK) {
        im.free_numeric();
        report.message = "numeric factorization failed: " + status_text(status);
        return report;
    }
    im.ok = true;
    report.success = true;
    return report;
}

SolveResult DirectSolver::solve(std::span<const double> b) const
{
    const auto& im = *impl_;
    if (!im.ok) {
        throw SolverFailure("DirectSolver::solve called without a valid factorization");
    }
    const int n = im.matrix.rows();
    if (b.size() != static_cast<std::size_t>(n)) {
        throw InvalidArgument("DirectSolver::solve: rhs size mismatch");
    }
    SolveResult out;
    out.x.assign(n, 0.0);
    double info[UMFPACK_INFO];
    double control[UMFPACK_CONTROL];
    std::copy(std::begin(im.control), std::end(im.control), control);
    const int status = umfpack_di_solve(UMFPACK_At, im.matrix.row_ptr().data(), im.matrix.col_idx().data(),
                                        im.matrix.values().data(), out.x.data(), b.data(), im.numeric, control,
                                        info);
    out.report.relative_residual = relative_residual(im.matrix, out.x, b);
    if (status != UMFPACK_OK) {
        out.report.message = "solve failed: " + status_text(status);
        return out;
    }
    out.report.success = std::isfinite(out.report.relative_residual) &&
                         out.report.relative_residual <= kDirectResidualTolerance;
    if (!out.report.success) {
        out.report.message = "residual " + std::to_string(out.report.relative_residual) + " above tolerance";
    }
    return out;
}

SolveResult solve_direct(const CsrMatrix& a, std::span<const double> b)
{
    DirectSolver solver;
    const SolverReport fact = solver.factorize(a);
    if (!fact.success) {
        SolveResult out;
        out.x.assign(a.rows(), 0.0);
        out.report = fact;
        out.report.relative_residual = relative_residual(a, out.x, b);
        return out;
    }
    return solver.solve(b);
}

} // namespace mhdcn
