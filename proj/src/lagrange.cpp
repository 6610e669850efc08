#include "mhdcn/lagrange.hpp"

#include "mhdcn/error.hpp"

#include <string>

namespace mhdcn {

namespace {

// f(l) = prod_{m<alpha} (r*l - m)/(m+1) and its derivative.
void silvester_factor(int r, int alpha, double lambda, double& value, double& deriv)
{
    value = 1.0;
    deriv = 0.0;
    for (int m = 0; m < alpha; ++m) {
        const double factor = (r * lambda - m) / (m + 1);
        const double dfactor = static_cast<double>(r) / (m + 1);
        deriv = deriv * factor + value * dfactor;
        value *= factor;
    }
}

} // namespace

LagrangeBasis::LagrangeBasis(int degree) : degree_(degree)
{
    if (degree < 1) {
        throw InvalidArgument("LagrangeBasis: degree must be >= 1, got " + std::to_string(degree));
    }
    for (int b = 0; b <= degree; ++b) {
        for (int a = 0; a + b <= degree; ++a) {
            nodes_.push_back({a, b});
        }
    }
}

void LagrangeBasis::values(double xi, double eta, std::vector<double>& out) const
{
    const double lambda[3] = {1.0 - xi - eta, xi, eta};
    out.resize(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const int alpha[3] = {degree_ - nodes_[k][0] - nodes_[k][1], nodes_[k][0], nodes_[k][1]};
        double v = 1.0;
        for (int c = 0; c < 3; ++c) {
            double f, df;
            silvester_factor(degree_, alpha[c], lambda[c], f, df);
            v *= f;
        }
        out[k] = v;
    }
}

void LagrangeBasis::gradients(double xi, double eta, std::vector<std::array<double, 2>>& out) const
{
    const double lambda[3] = {1.0 - xi - eta, xi, eta};
    out.resize(nodes_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const int alpha[3] = {degree_ - nodes_[k][0] - nodes_[k][1], nodes_[k][0], nodes_[k][1]};
        double f[3], df[3];
        for (int c = 0; c < 3; ++c) {
            silvester_factor(degree_, alpha[c], lambda[c], f[c], df[c]);
        }
        const double d0 = df[0] * f[1] * f[2];
        const double d1 = f[0] * df[1] * f[2];
        const double d2 = f[0] * f[1] * df[2];
        out[k] = {d1 - d0, d2 - d0};
    }
}

BasisTable tabulate(const LagrangeBasis& basis, const QuadratureRule& rule)
{
    BasisTable table;
    table.degree = basis.degree();
    table.num_basis = basis.size();
    table.phi.resize(rule.points.size());
    table.dphi.resize(rule.points.size());
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        basis.values(rule.points[q].xi, rule.points[q].eta, table.phi[q]);
        basis.gradients(rule.points[q].xi, rule.points[q].eta, table.dphi[q]);
    }
    return table;
}

} // namespace mhdcn
