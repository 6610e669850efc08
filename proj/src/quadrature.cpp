#include "mhdcn/quadrature.hpp"

#include "mhdcn/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mhdcn {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            const double pn = n == 0 ? 1.0 : (n == 1 ? x : p1);
            const double pnm1 = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pnm1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        nodes[n - 1 - i] = 0.5 * (x + 1.0);
        weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

QuadratureRule gauss_rule(int degree)
{
    if (degree < 1 || degree > kMaxQuadratureDegree) {
        throw InvalidArgument("gauss_rule: unsupported degree " + std::to_string(degree) + " (expected 1.." +
                              std::to_string(kMaxQuadratureDegree) + ")");
    }
    // xi = s, eta = t(1 - s); the Jacobian (1 - s) raises the degree in s by one.
    const int ns = (degree + 3) / 2;
    const int nt = (degree + 2) / 2;
    std::vector<double> s, ws, t, wt;
    gauss_legendre_01(ns, s, ws);
    gauss_legendre_01(nt, t, wt);

    QuadratureRule rule;
    rule.points.reserve(static_cast<std::size_t>(ns) * nt);
    for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < nt; ++j) {
            rule.points.push_back({s[i], t[j] * (1.0 - s[i]), ws[i] * wt[j] * (1.0 - s[i])});
        }
    }
    rule.exact_degree = std::min(2 * ns - 2, 2 * nt - 1);
    return rule;
}

} // namespace mhdcn
