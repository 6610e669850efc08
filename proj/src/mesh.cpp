#include "mhdcn/mesh.hpp"

#include "mhdcn/error.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace mhdcn {

std::array<Point, 3> Mesh::triangle_vertices(std::size_t t) const
{
    const auto& tri = triangles_.at(t);
    return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

double Mesh::signed_area(std::size_t t) const
{
    const auto [a, b, c] = triangle_vertices(t);
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

std::array<int, 3> Mesh::cell_of(std::size_t t) const noexcept
{
    const int cell = static_cast<int>(t / 2);
    return {cell % n_, cell / n_, static_cast<int>(t % 2)};
}

Mesh build_unit_square_mesh(int n)
{
    if (n < 1) {
        throw InvalidArgument("build_unit_square_mesh: n must be >= 1, got " + std::to_string(n));
    }
    Mesh mesh;
    mesh.n_ = n;
    mesh.h_ = std::sqrt(2.0) / n;

    const int stride = n + 1;
    mesh.vertices_.reserve(static_cast<std::size_t>(stride) * stride);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            // i/n rather than i*(1/n) so that the last column is exactly 1.
            mesh.vertices_.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
        }
    }

    mesh.triangles_.reserve(2 * static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = j * stride + i;
            const int v10 = v00 + 1;
            const int v01 = v00 + stride;
            const int v11 = v01 + 1;
            mesh.triangles_.push_back({v00, v10, v11});
            mesh.triangles_.push_back({v00, v11, v01});
        }
    }

    mesh.boundary_edges_ = classify_boundary(mesh);
    return mesh;
}

std::vector<BoundaryEdge> classify_boundary(const Mesh& mesh)
{
    const int n = mesh.subdivisions();
    const int stride = n + 1;
    auto vid = [stride](int i, int j) { return j * stride + i; };

    std::vector<BoundaryEdge> edges;
    edges.reserve(4 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        edges.push_back({{vid(i, 0), vid(i + 1, 0)}, Side::Bottom});
    }
    for (int j = 0; j < n; ++j) {
        edges.push_back({{vid(n, j), vid(n, j + 1)}, Side::Right});
    }
    for (int i = n; i > 0; --i) {
        edges.push_back({{vid(i, n), vid(i - 1, n)}, Side::Top});
    }
    for (int j = n; j > 0; --j) {
        edges.push_back({{vid(0, j), vid(0, j - 1)}, Side::Left});
    }
    return edges;
}

void write_mesh_text(const Mesh& mesh, std::ostream& os)
{
    static constexpr const char* side_names[] = {"bottom", "right", "top", "left"};
    const auto old_precision = os.precision(17);
    os << "# unit-square mesh n=" << mesh.subdivisions() << " vertices=" << mesh.vertices().size()
       << " triangles=" << mesh.num_triangles() << " boundary_edges=" << mesh.boundary_edges().size()
       << '\n';
    os << "vertices " << mesh.vertices().size() << '\n';
    for (const auto& v : mesh.vertices()) {
        os << v.x << ' ' << v.y << '\n';
    }
    os << "triangles " << mesh.num_triangles() << '\n';
    for (const auto& t : mesh.triangles()) {
        os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
    os << "boundary_edges " << mesh.boundary_edges().size() << '\n';
    for (const auto& e : mesh.boundary_edges()) {
        os << e.vertices[0] << ' ' << e.vertices[1] << ' ' << side_names[static_cast<int>(e.side)] << '\n';
    }
    os.precision(old_precision);
}

} // namespace mhdcn
