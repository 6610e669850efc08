/**
 * @file forms.hpp
 * @brief Assembly of the bilinear/trilinear forms and load vectors of the scheme.
 *
 * Row index = test dof, column index = trial dof throughout. In 2D the cross
 * products reduce to a x b = a1 b2 - a2 b1 (scalar), curl w = dx w2 - dy w1,
 * and for a scalar c, a x c = (a2 c, -a1 c). Forms are assembled without
 * boundary constraints; callers eliminate constrained dofs afterwards.
 */
#pragma once

#include "mhdcn/fe_function.hpp"
#include "mhdcn/sparse.hpp"

#include <functional>
#include <vector>

namespace mhdcn {

struct AssembledForm {
    CsrMatrix matrix;
    SpacePtr test;
    SpacePtr trial;
};

/// Quadrature degree used for assembly: exact for total degree 3r (capped at 12).
int assembly_degree(int r);

/// Zero matrix with the element-coupling pattern. With couple_components false
/// only matching components of test and trial are connected.
CsrMatrix sparsity_pattern(const Space& test, const Space& trial, bool couple_components);

/// (u, v)
AssembledForm mass_matrix(const SpacePtr& space);
/// (grad u, grad v), componentwise for vector spaces.
AssembledForm stiffness_matrix(const SpacePtr& space);
/// (curl H, curl w) + (div H, div w)
AssembledForm curlcurl_divdiv_matrix(const SpacePtr& space);
/// (curl H, curl w) only; the first half of curlcurl_divdiv_matrix.
AssembledForm curlcurl_matrix(const SpacePtr& space);
/// D[q, v] = (div v, q); rows on the pressure space, columns on the velocity space.
AssembledForm divergence_matrix(const SpacePtr& velocity, const SpacePtr& pressure);
/// N[v, z] = b(w, z, v) = 1/2 [(w . grad z, v) - (w . grad v, z)].
AssembledForm convection_matrix(const SpacePtr& velocity, const FeFunction& w);
/// C[w, v] = (v x Ht, curl w); rows on the magnetic space, columns on the velocity space.
AssembledForm coupling_u_cross_H(const SpacePtr& velocity, const SpacePtr& magnetic, const FeFunction& h_tilde);
/// L[v, H] = (Ht x curl H, v); rows on the velocity space, columns on the magnetic space.
AssembledForm coupling_lorentz(const SpacePtr& magnetic, const SpacePtr& velocity, const FeFunction& h_tilde);

/// Per-point data of a linear functional: sum_c value[c] phi_c + grad[c] . grad phi_c.
struct FunctionalDensity {
    Vec2 value{0.0, 0.0};
    Mat2 grad{};
};
using DensityFunction = std::function<FunctionalDensity(Point)>;

/// Entries l_i = integral of the density against basis function i.
std::vector<double> assemble_functional(const Space& space, const DensityFunction& density, int quad_degree);

/// Entries integral f . phi_i, with f evaluated at quadrature points.
std::vector<double> load_vector(const SpacePtr& space, const ScalarFunction& f, double t);
std::vector<double> load_vector(const SpacePtr& space, const VectorFunction& f, double t);

/// Entries integral phi_i of a scalar space (the mean-value functional).
std::vector<double> mean_functional(const Space& space);

} // namespace mhdcn
