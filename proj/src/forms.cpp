#include "mhdcn/forms.hpp"

#include "element_values.hpp"
#include "mhdcn/error.hpp"

#include <algorithm>

namespace mhdcn {

using detail::ElementValues;

int assembly_degree(int r) { return std::min(3 * r, kMaxQuadratureDegree); }

namespace {

void require_same_mesh(const Space& a, const Space& b, const char* what)
{
    if (&a.mesh() != &b.mesh()) {
        throw InvalidArgument(std::string(what) + ": spaces live on different meshes");
    }
}

void require_components(const Space& s, int c, const char* what)
{
    if (s.components() != c) {
        throw InvalidArgument(std::string(what) + ": expected a " + std::to_string(c) + "-component space");
    }
}

/// Curl and divergence of the vector basis function (component, phi).
inline double basis_curl(int component, const Vec2& g) { return component == 0 ? -g[1] : g[0]; }
inline double basis_div(int component, const Vec2& g) { return g[component]; }

/**
 * Element loop shared by all matrix forms. The kernel fills the local matrix
 * (rows: test component-major, columns: trial component-major) for the
 * element currently loaded in both ElementValues.
 */
template <class Kernel>
AssembledForm assemble_matrix(const SpacePtr& test, const SpacePtr& trial, bool couple_components, int quad_degree,
                              Kernel&& kernel)
{
    const QuadratureRule rule = gauss_rule(quad_degree);
    ElementValues tev(*test, rule);
    ElementValues trv(*trial, rule);
    AssembledForm form{sparsity_pattern(*test, *trial, couple_components), test, trial};

    const int nt = tev.num_local();
    const int nu = trv.num_local();
    const int rows = test->components() * nt;
    const int cols = trial->components() * nu;
    std::vector<double> local(static_cast<std::size_t>(rows) * cols);
    std::vector<int> row_dofs, col_dofs;

    for (std::size_t t = 0; t < test->mesh().num_triangles(); ++t) {
        tev.reinit(t);
        trv.reinit(t);
        std::fill(local.begin(), local.end(), 0.0);
        kernel(tev, trv, local, cols);
        tev.global_dofs(row_dofs);
        trv.global_dofs(col_dofs);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                if (!couple_components && i / nt != j / nu) {
                    continue;
                }
                form.matrix.add(row_dofs[i], col_dofs[j], local[static_cast<std::size_t>(i) * cols + j]);
            }
        }
    }
    return form;
}

} // namespace

CsrMatrix sparsity_pattern(const Space& test, const Space& trial, bool couple_components)
{
    require_same_mesh(test, trial, "sparsity_pattern");
    std::vector<std::vector<int>> row_cols(test.num_dofs());
    const int nt = test.dofs_per_element();
    const int nu = trial.dofs_per_element();
    const int nst = test.num_scalar_dofs();
    const int nsu = trial.num_scalar_dofs();
    for (std::size_t t = 0; t < test.mesh().num_triangles(); ++t) {
        const auto td = test.element_dofs(t);
        const auto ud = trial.element_dofs(t);
        for (int ct = 0; ct < test.components(); ++ct) {
            for (int cu = 0; cu < trial.components(); ++cu) {
                if (!couple_components && ct != cu) {
                    continue;
                }
                for (int i = 0; i < nt; ++i) {
                    auto& row = row_cols[ct * nst + td[i]];
                    for (int j = 0; j < nu; ++j) {
                        row.push_back(cu * nsu + ud[j]);
                    }
                }
            }
        }
    }
    return CsrMatrix::from_pattern(trial.num_dofs(), row_cols);
}

AssembledForm mass_matrix(const SpacePtr& space)
{
    const int nc = space->components();
    return assemble_matrix(space, space, false, assembly_degree(space->degree()),
                           [nc](const ElementValues& te, const ElementValues&, std::vector<double>& loc, int cols) {
                               const int n = te.num_local();
                               for (int q = 0; q < te.num_points(); ++q) {
                                   const double w = te.jxw(q);
                                   for (int i = 0; i < n; ++i) {
                                       const double wi = w * te.phi(q, i);
                                       for (int j = 0; j < n; ++j) {
                                           const double v = wi * te.phi(q, j);
                                           for (int c = 0; c < nc; ++c) {
                                               loc[(c * n + i) * cols + c * n + j] += v;
                                           }
                                       }
                                   }
                               }
                           });
}

AssembledForm stiffness_matrix(const SpacePtr& space)
{
    const int nc = space->components();
    return assemble_matrix(space, space, false, assembly_degree(space->degree()),
                           [nc](const ElementValues& te, const ElementValues&, std::vector<double>& loc, int cols) {
                               const int n = te.num_local();
                               for (int q = 0; q < te.num_points(); ++q) {
                                   const double w = te.jxw(q);
                                   for (int i = 0; i < n; ++i) {
                                       const Vec2& gi = te.grad(q, i);
                                       for (int j = 0; j < n; ++j) {
                                           const Vec2& gj = te.grad(q, j);
                                           const double v = w * (gi[0] * gj[0] + gi[1] * gj[1]);
                                           for (int c = 0; c < nc; ++c) {
                                               loc[(c * n + i) * cols + c * n + j] += v;
                                           }
                                       }
                                   }
                               }
                           });
}

namespace {

AssembledForm curl_div_form(const SpacePtr& space, double div_weight)
{
    require_components(*space, 2, "curlcurl_divdiv_matrix");
    return assemble_matrix(
        space, space, true, assembly_degree(space->degree()),
        [div_weight](const ElementValues& te, const ElementValues&, std::vector<double>& loc, int cols) {
            const int n = te.num_local();
            for (int q = 0; q < te.num_points(); ++q) {
                const double w = te.jxw(q);
                for (int ci = 0; ci < 2; ++ci) {
                    for (int i = 0; i < n; ++i) {
                        const Vec2& gi = te.grad(q, i);
                        const double curl_i = basis_curl(ci, gi);
                        const double div_i = basis_div(ci, gi);
                        for (int cj = 0; cj < 2; ++cj) {
                            for (int j = 0; j < n; ++j) {
                                const Vec2& gj = te.grad(q, j);
                                loc[(ci * n + i) * cols + cj * n + j] +=
                                    w * (curl_i * basis_curl(cj, gj) + div_weight * div_i * basis_div(cj, gj));
                            }
                        }
                    }
                }
            }
        });
}

} // namespace

AssembledForm curlcurl_divdiv_matrix(const SpacePtr& space) { return curl_div_form(space, 1.0); }

AssembledForm curlcurl_matrix(const SpacePtr& space) { return curl_div_form(space, 0.0); }

AssembledForm divergence_matrix(const SpacePtr& velocity, const SpacePtr& pressure)
{
    require_components(*velocity, 2, "divergence_matrix");
    require_components(*pressure, 1, "divergence_matrix");
    require_same_mesh(*velocity, *pressure, "divergence_matrix");
    const int degree = assembly_degree(velocity->degree());
    return assemble_matrix(pressure, velocity, true, degree,
                           [](const ElementValues& te, const ElementValues& tr, std::vector<double>& loc, int cols) {
                               const int np = te.num_local();
                               const int nv = tr.num_local();
                               for (int q = 0; q < te.num_points(); ++q) {
                                   const double w = te.jxw(q);
                                   for (int i = 0; i < np; ++i) {
                                       const double wi = w * te.phi(q, i);
                                       for (int c = 0; c < 2; ++c) {
                                           for (int j = 0; j < nv; ++j) {
                                               loc[i * cols + c * nv + j] += wi * tr.grad(q, j)[c];
                                           }
                                       }
                                   }
                               }
                           });
}

AssembledForm convection_matrix(const SpacePtr& velocity, const FeFunction& w)
{
    require_components(*velocity, 2, "convection_matrix");
    require_components(w.space(), 2, "convection_matrix");
    require_same_mesh(*velocity, w.space(), "convection_matrix");
    const int degree = std::min(velocity->degree() * 2 + w.space().degree(), kMaxQuadratureDegree);
    const QuadratureRule rule = gauss_rule(degree);
    ElementValues wv(w.space(), rule);
    return assemble_matrix(
        velocity, velocity, false, degree,
        [&](const ElementValues& te, const ElementValues&, std::vector<double>& loc, int cols) {
            wv.reinit(te.triangle());
            const int n = te.num_local();
            for (int q = 0; q < te.num_points(); ++q) {
                const Vec2 wq = wv.value(w, q);
                const double jw = 0.5 * te.jxw(q);
                for (int i = 0; i < n; ++i) {
                    const double phi_i = te.phi(q, i);
                    const double adv_i = wq[0] * te.grad(q, i)[0] + wq[1] * te.grad(q, i)[1];
                    for (int j = 0; j < n; ++j) {
                        const double adv_j = wq[0] * te.grad(q, j)[0] + wq[1] * te.grad(q, j)[1];
                        const double v = jw * (adv_j * phi_i - adv_i * te.phi(q, j));
                        loc[i * cols + j] += v;
                        loc[(n + i) * cols + n + j] += v;
                    }
                }
            }
        });
}

AssembledForm coupling_u_cross_H(const SpacePtr& velocity, const SpacePtr& magnetic, const FeFunction& h_tilde)
{
    require_components(*velocity, 2, "coupling_u_cross_H");
    require_components(*magnetic, 2, "coupling_u_cross_H");
    require_components(h_tilde.space(), 2, "coupling_u_cross_H");
    require_same_mesh(*velocity, *magnetic, "coupling_u_cross_H");
    require_same_mesh(*velocity, h_tilde.space(), "coupling_u_cross_H");
    const int degree =
        std::min(velocity->degree() + magnetic->degree() - 1 + h_tilde.space().degree(), kMaxQuadratureDegree);
    const QuadratureRule rule = gauss_rule(degree);
    ElementValues hv(h_tilde.space(), rule);
    return assemble_matrix(magnetic, velocity, true, degree,
                           [&](const ElementValues& te, const ElementValues& tr, std::vector<double>& loc, int cols) {
                               hv.reinit(te.triangle());
                               const int ns = te.num_local();
                               const int nv = tr.num_local();
                               for (int q = 0; q < te.num_points(); ++q) {
                                   const Vec2 hq = hv.value(h_tilde, q);
                                   const double w = te.jxw(q);
                                   // v x Ht for v = (phi, 0) and (0, phi).
                                   const double cross[2] = {hq[1], -hq[0]};
                                   for (int ci = 0; ci < 2; ++ci) {
                                       for (int i = 0; i < ns; ++i) {
                                           const double curl_i = w * basis_curl(ci, te.grad(q, i));
                                           for (int cj = 0; cj < 2; ++cj) {
                                               for (int j = 0; j < nv; ++j) {
                                                   loc[(ci * ns + i) * cols + cj * nv + j] +=
                                                       curl_i * cross[cj] * tr.phi(q, j);
                                               }
                                           }
                                       }
                                   }
                               }
                           });
}

AssembledForm coupling_lorentz(const SpacePtr& magnetic, const SpacePtr& velocity, const FeFunction& h_tilde)
{
    require_components(*velocity, 2, "coupling_lorentz");
    require_components(*magnetic, 2, "coupling_lorentz");
    require_components(h_tilde.space(), 2, "coupling_lorentz");
    require_same_mesh(*velocity, *magnetic, "coupling_lorentz");
    require_same_mesh(*velocity, h_tilde.space(), "coupling_lorentz");
    const int degree =
        std::min(velocity->degree() + magnetic->degree() - 1 + h_tilde.space().degree(), kMaxQuadratureDegree);
    const QuadratureRule rule = gauss_rule(degree);
    ElementValues hv(h_tilde.space(), rule);
    return assemble_matrix(velocity, magnetic, true, degree,
                           [&](const ElementValues& te, const ElementValues& tr, std::vector<double>& loc, int cols) {
                               hv.reinit(te.triangle());
                               const int nv = te.num_local();
                               const int ns = tr.num_local();
                               for (int q = 0; q < te.num_points(); ++q) {
                                   const Vec2 hq = hv.value(h_tilde, q);
                                   const double w = te.jxw(q);
                                   // Ht x c = (Ht2 c, -Ht1 c).
                                   const double factor[2] = {hq[1], -hq[0]};
                                   for (int ci = 0; ci < 2; ++ci) {
                                       for (int i = 0; i < nv; ++i) {
                                           const double vi = w * factor[ci] * te.phi(q, i);
                                           for (int cj = 0; cj < 2; ++cj) {
                                               for (int j = 0; j < ns; ++j) {
                                                   loc[(ci * nv + i) * cols + cj * ns + j] +=
                                                       vi * basis_curl(cj, tr.grad(q, j));
                                               }
                                           }
                                       }
                                   }
                               }
                           });
}

std::vector<double> assemble_functional(const Space& space, const DensityFunction& density, int quad_degree)
{
    const QuadratureRule rule = gauss_rule(quad_degree);
    ElementValues ev(space, rule);
    std::vector<double> out(space.num_dofs(), 0.0);
    std::vector<int> dofs;
    const int n = ev.num_local();
    const int nc = space.components();
    for (std::size_t t = 0; t < space.mesh().num_triangles(); ++t) {
        ev.reinit(t);
        ev.global_dofs(dofs);
        for (int q = 0; q < ev.num_points(); ++q) {
            const FunctionalDensity d = density(ev.point(q));
            const double w = ev.jxw(q);
            for (int c = 0; c < nc; ++c) {
                for (int k = 0; k < n; ++k) {
                    const Vec2& g = ev.grad(q, k);
                    out[dofs[c * n + k]] +=
                        w * (d.value[c] * ev.phi(q, k) + d.grad[c][0] * g[0] + d.grad[c][1] * g[1]);
                }
            }
        }
    }
    return out;
}

std::vector<double> load_vector(const SpacePtr& space, const ScalarFunction& f, double t)
{
    require_components(*space, 1, "load_vector");
    return assemble_functional(
        *space, [&](Point x) { return FunctionalDensity{{f(x, t), 0.0}, {}}; },
        std::min(assembly_degree(space->degree()) + 2, kMaxQuadratureDegree));
}

std::vector<double> load_vector(const SpacePtr& space, const VectorFunction& f, double t)
{
    require_components(*space, 2, "load_vector");
    return assemble_functional(
        *space, [&](Point x) { return FunctionalDensity{f(x, t), {}}; },
        std::min(assembly_degree(space->degree()) + 2, kMaxQuadratureDegree));
}

std::vector<double> mean_functional(const Space& space)
{
    require_components(space, 1, "mean_functional");
    return assemble_functional(
        space, [](Point) { return FunctionalDensity{{1.0, 0.0}, {}}; }, std::max(1, space.degree()));
}

} // namespace mhdcn
