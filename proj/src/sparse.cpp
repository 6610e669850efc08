#include "mhdcn/sparse.hpp"

#include "mhdcn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace mhdcn {

void TripletBuffer::add(int row, int col, double value)
{
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_) {
        throw InvalidArgument("TripletBuffer: entry (" + std::to_string(row) + ", " + std::to_string(col) +
                              ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    entries_.push_back({row, col, value});
}

CsrMatrix::CsrMatrix(int rows, int cols, std::vector<int> row_ptr, std::vector<int> col_idx,
                     std::vector<double> values)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
      values_(std::move(values))
{
    if (row_ptr_.size() != static_cast<std::size_t>(rows_) + 1 || col_idx_.size() != values_.size() ||
        static_cast<std::size_t>(row_ptr_.back()) != col_idx_.size()) {
        throw InvalidArgument("CsrMatrix: inconsistent arrays");
    }
}

CsrMatrix CsrMatrix::from_pattern(int cols, const std::vector<std::vector<int>>& row_cols)
{
    const int rows = static_cast<int>(row_cols.size());
    std::vector<int> ptr(rows + 1, 0);
    std::vector<int> idx;
    std::vector<int> scratch;
    for (int i = 0; i < rows; ++i) {
        scratch = row_cols[i];
        std::sort(scratch.begin(), scratch.end());
        scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
        if (!scratch.empty() && (scratch.front() < 0 || scratch.back() >= cols)) {
            throw InvalidArgument("CsrMatrix::from_pattern: column out of range");
        }
        idx.insert(idx.end(), scratch.begin(), scratch.end());
        ptr[i + 1] = static_cast<int>(idx.size());
    }
    std::vector<double> vals(idx.size(), 0.0);
    return CsrMatrix(rows, cols, std::move(ptr), std::move(idx), std::move(vals));
}

long CsrMatrix::find(int row, int col) const noexcept
{
    if (row < 0 || row >= rows_) {
        return -1;
    }
    const auto first = col_idx_.begin() + row_ptr_[row];
    const auto last = col_idx_.begin() + row_ptr_[row + 1];
    const auto it = std::lower_bound(first, last, col);
    if (it == last || *it != col) {
        return -1;
    }
    return static_cast<long>(it - col_idx_.begin());
}

double CsrMatrix::entry(int row, int col) const noexcept
{
    const long k = find(row, col);
    return k < 0 ? 0.0 : values_[k];
}

void CsrMatrix::add(int row, int col, double value)
{
    const long k = find(row, col);
    if (k < 0) {
        throw InvalidArgument("CsrMatrix::add: (" + std::to_string(row) + ", " + std::to_string(col) +
                              ") not in pattern");
    }
    values_[k] += value;
}

void CsrMatrix::set_zero() noexcept { std::fill(values_.begin(), values_.end(), 0.0); }

void CsrMatrix::scale(double alpha) noexcept
{
    for (double& v : values_) {
        v *= alpha;
    }
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
    std::fill(y.begin(), y.end(), 0.0);
    multiply_add(1.0, x, y);
}

std::vector<double> CsrMatrix::operator*(std::span<const double> x) const
{
    std::vector<double> y(rows_, 0.0);
    multiply_add(1.0, x, y);
    return y;
}

void CsrMatrix::multiply_add(double alpha, std::span<const double> x, std::span<double> y) const
{
    if (x.size() != static_cast<std::size_t>(cols_) || y.size() != static_cast<std::size_t>(rows_)) {
        throw InvalidArgument("CsrMatrix::multiply: dimension mismatch");
    }
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            s += values_[k] * x[col_idx_[k]];
        }
        y[i] += alpha * s;
    }
}

void CsrMatrix::multiply_transpose_add(double alpha, std::span<const double> x, std::span<double> y) const
{
    if (x.size() != static_cast<std::size_t>(rows_) || y.size() != static_cast<std::size_t>(cols_)) {
        throw InvalidArgument("CsrMatrix::multiply_transpose: dimension mismatch");
    }
    for (int i = 0; i < rows_; ++i) {
        const double xi = alpha * x[i];
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            y[col_idx_[k]] += values_[k] * xi;
        }
    }
}

CsrMatrix CsrMatrix::transpose() const
{
    std::vector<int> ptr(cols_ + 1, 0);
    for (int c : col_idx_) {
        ++ptr[c + 1];
    }
    std::partial_sum(ptr.begin(), ptr.end(), ptr.begin());
    std::vector<int> next(ptr.begin(), ptr.end() - 1);
    std::vector<int> idx(nnz());
    std::vector<double> vals(nnz());
    for (int i = 0; i < rows_; ++i) {
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            const int pos = next[col_idx_[k]]++;
            idx[pos] = i;
            vals[pos] = values_[k];
        }
    }
    return CsrMatrix(cols_, rows_, std::move(ptr), std::move(idx), std::move(vals));
}

std::vector<std::vector<double>> CsrMatrix::to_dense() const
{
    std::vector<std::vector<double>> d(rows_, std::vector<double>(cols_, 0.0));
    for (int i = 0; i < rows_; ++i) {
        for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            d[i][col_idx_[k]] += values_[k];
        }
    }
    return d;
}

double CsrMatrix::max_abs() const noexcept
{
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool CsrMatrix::same_pattern(const CsrMatrix& other) const noexcept
{
    return rows_ == other.rows_ && cols_ == other.cols_ && row_ptr_ == other.row_ptr_ && col_idx_ == other.col_idx_;
}

CsrMatrix to_csr(const TripletBuffer& buffer, int rows, int cols)
{
    if (rows < 0 || cols < 0) {
        throw InvalidArgument("to_csr: negative dimensions");
    }
    std::vector<Triplet> sorted = buffer.entries();
    for (const auto& e : sorted) {
        if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
            throw InvalidArgument("to_csr: entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                                  ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
        }
    }
    std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
        return std::tie(a.row, a.col, a.value) < std::tie(b.row, b.col, b.value);
    });

    std::vector<int> ptr(rows + 1, 0);
    std::vector<int> idx;
    std::vector<double> vals;
    for (std::size_t k = 0; k < sorted.size();) {
        const int r = sorted[k].row;
        const int c = sorted[k].col;
        double sum = 0.0;
        while (k < sorted.size() && sorted[k].row == r && sorted[k].col == c) {
            sum += sorted[k].value;
            ++k;
        }
        idx.push_back(c);
        vals.push_back(sum);
        ++ptr[r + 1];
    }
    std::partial_sum(ptr.begin(), ptr.end(), ptr.begin());
    return CsrMatrix(rows, cols, std::move(ptr), std::move(idx), std::move(vals));
}

CsrMatrix linear_combination(std::initializer_list<ScaledMatrix> terms)
{
    if (terms.size() == 0) {
        throw InvalidArgument("linear_combination: no terms");
    }
    const int rows = terms.begin()->matrix->rows();
    const int cols = terms.begin()->matrix->cols();
    for (const auto& t : terms) {
        if (t.matrix->rows() != rows || t.matrix->cols() != cols) {
            throw InvalidArgument("linear_combination: shape mismatch");
        }
    }
    bool shared = true;
    for (const auto& t : terms) {
        shared = shared && t.matrix->same_pattern(*terms.begin()->matrix);
    }
    if (shared) {
        CsrMatrix out = *terms.begin()->matrix;
        out.set_zero();
        for (const auto& t : terms) {
            const auto& v = t.matrix->values();
            for (std::size_t k = 0; k < v.size(); ++k) {
                out.values()[k] += t.alpha * v[k];
            }
        }
        return out;
    }

    std::vector<int> ptr(rows + 1, 0);
    std::vector<int> idx;
    std::vector<double> vals;
    std::vector<double> accum(cols, 0.0);
    std::vector<char> seen(cols, 0);
    std::vector<int> row_cols;
    for (int i = 0; i < rows; ++i) {
        row_cols.clear();
        for (const auto& t : terms) {
            const auto& m = *t.matrix;
            for (int k = m.row_ptr()[i]; k < m.row_ptr()[i + 1]; ++k) {
                const int c = m.col_idx()[k];
                if (!seen[c]) {
                    seen[c] = 1;
                    row_cols.push_back(c);
                }
                accum[c] += t.alpha * m.values()[k];
            }
        }
        std::sort(row_cols.begin(), row_cols.end());
        for (int c : row_cols) {
            idx.push_back(c);
            vals.push_back(accum[c]);
            accum[c] = 0.0;
            seen[c] = 0;
        }
        ptr[i + 1] = static_cast<int>(idx.size());
    }
    return CsrMatrix(rows, cols, std::move(ptr), std::move(idx), std::move(vals));
}

CsrMatrix block_matrix(const std::vector<int>& row_sizes, const std::vector<int>& col_sizes,
                       const std::vector<std::vector<Block>>& blocks)
{
    if (blocks.size() != row_sizes.size()) {
        throw InvalidArgument("block_matrix: block grid height mismatch");
    }
    std::vector<int> col_offset(col_sizes.size() + 1, 0);
    std::partial_sum(col_sizes.begin(), col_sizes.end(), col_offset.begin() + 1);
    const int total_cols = col_offset.back();
    const int total_rows = std::accumulate(row_sizes.begin(), row_sizes.end(), 0);

    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        if (blocks[bi].size() != col_sizes.size()) {
            throw InvalidArgument("block_matrix: block grid width mismatch");
        }
        for (std::size_t bj = 0; bj < col_sizes.size(); ++bj) {
            const CsrMatrix* m = blocks[bi][bj].matrix;
            if (m && (m->rows() != row_sizes[bi] || m->cols() != col_sizes[bj])) {
                throw InvalidArgument("block_matrix: block (" + std::to_string(bi) + ", " + std::to_string(bj) +
                                      ") has the wrong shape");
            }
        }
    }

    std::vector<int> ptr(total_rows + 1, 0);
    std::vector<int> idx;
    std::vector<double> vals;
    int row = 0;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        for (int i = 0; i < row_sizes[bi]; ++i, ++row) {
            for (std::size_t bj = 0; bj < col_sizes.size(); ++bj) {
                const Block& b = blocks[bi][bj];
                if (!b.matrix) {
                    continue;
                }
                const auto& m = *b.matrix;
                for (int k = m.row_ptr()[i]; k < m.row_ptr()[i + 1]; ++k) {
                    idx.push_back(col_offset[bj] + m.col_idx()[k]);
                    vals.push_back(b.alpha * m.values()[k]);
                }
            }
            ptr[row + 1] = static_cast<int>(idx.size());
        }
    }
    return CsrMatrix(total_rows, total_cols, std::move(ptr), std::move(idx), std::move(vals));
}

void apply_zero_constraints(CsrMatrix& a, std::span<const char> mask)
{
    if (mask.size() != static_cast<std::size_t>(a.rows()) || a.rows() != a.cols()) {
        throw InvalidArgument("apply_zero_constraints: mask/matrix size mismatch");
    }
    const auto& ptr = a.row_ptr();
    const auto& idx = a.col_idx();
    auto& vals = a.values();
    for (int i = 0; i < a.rows(); ++i) {
        bool has_diag = false;
        for (int k = ptr[i]; k < ptr[i + 1]; ++k) {
            const int c = idx[k];
            if (mask[i]) {
                vals[k] = c == i ? 1.0 : 0.0;
                has_diag = has_diag || c == i;
            } else if (mask[c]) {
                vals[k] = 0.0;
            }
        }
        if (mask[i] && !has_diag) {
            throw InvalidArgument("apply_zero_constraints: constrained row " + std::to_string(i) +
                                  " has no stored diagonal");
        }
    }
}

void apply_zero_constraints(CsrMatrix& a, std::span<double> rhs, std::span<const char> mask)
{
    apply_zero_constraints(a, mask);
    if (rhs.size() != mask.size()) {
        throw InvalidArgument("apply_zero_constraints: rhs size mismatch");
    }
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        if (mask[i]) {
            rhs[i] = 0.0;
        }
    }
}

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double relative_residual(const CsrMatrix& a, std::span<const double> x, std::span<const double> b)
{
    std::vector<double> r(b.begin(), b.end());
    a.multiply_add(-1.0, x, r);
    const double nb = norm2(b);
    const double nr = norm2(r);
    return nb > 0.0 ? nr / nb : nr;
}

SolveResult solve_spd(const CsrMatrix& a, std::span<const double> b, double tol)
{
    const int n = a.rows();
    if (a.cols() != n || b.size() != static_cast<std::size_t>(n)) {
        throw InvalidArgument("solve_spd: dimension mismatch");
    }
    SolveResult out;
    out.x.assign(n, 0.0);
    const double nb = norm2(b);
    if (nb == 0.0) {
        out.report = {0, 0.0, true, "zero right-hand side"};
        return out;
    }

    std::vector<double> inv_diag(n, 1.0);
    for (int i = 0; i < n; ++i) {
        const double d = a.entry(i, i);
        if (d <= 0.0) {
            out.report = {0, 1.0, false, "nonpositive diagonal at row " + std::to_string(i)};
            return out;
        }
        inv_diag[i] = 1.0 / d;
    }

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> z(n), p(n), ap(n);
    for (int i = 0; i < n; ++i) {
        z[i] = inv_diag[i] * r[i];
    }
    p = z;
    double rz = dot(r, z);
    const int max_iter = 10 * n;
    int iter = 0;
    bool breakdown = false;
    // Iterate a little past tol on the recurrence residual so the recomputed one also meets it.
    const double target = 0.1 * tol * nb;
    for (; iter < max_iter; ++iter) {
        if (norm2(r) <= target) {
            break;
        }
        a.multiply(p, ap);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) {
            breakdown = true;
            break;
        }
        const double alpha = rz / pap;
        for (int i = 0; i < n; ++i) {
            out.x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
            z[i] = inv_diag[i] * r[i];
        }
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) {
            p[i] = z[i] + beta * p[i];
        }
    }

    out.report.iterations = iter;
    out.report.relative_residual = relative_residual(a, out.x, b);
    if (breakdown) {
        out.report.success = false;
        out.report.message = "non-positive curvature at iteration " + std::to_string(iter) + " (matrix not SPD)";
    } else if (out.report.relative_residual > tol) {
        out.report.success = false;
        out.report.message = "no convergence within " + std::to_string(iter) + " iterations";
    } else {
        out.report.success = true;
    }
    return out;
}

} // namespace mhdcn
