/**
 * @file mesh.hpp
 * @brief Structured triangulations of the unit square.
 */
#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <vector>

namespace mhdcn {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

enum class Side { Bottom, Right, Top, Left };

struct BoundaryEdge {
    std::array<int, 2> vertices;
    Side side;
};

/**
 * Uniform n x n lattice of the unit square, each cell split along its
 * bottom-left to top-right diagonal. Vertex (i, j) has index j*(n+1)+i.
 * Cell (i, j) owns triangles 2*(j*n+i) (lower) and 2*(j*n+i)+1 (upper);
 * both are counter-clockwise.
 */
class Mesh {
public:
    [[nodiscard]] int subdivisions() const noexcept { return n_; }
    [[nodiscard]] const std::vector<Point>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] const std::vector<std::array<int, 3>>& triangles() const noexcept { return triangles_; }
    [[nodiscard]] const std::vector<BoundaryEdge>& boundary_edges() const noexcept { return boundary_edges_; }
    [[nodiscard]] std::size_t num_triangles() const noexcept { return triangles_.size(); }

    /// Max triangle diameter; sqrt(2)/n for this split.
    [[nodiscard]] double h() const noexcept { return h_; }
    /// Lattice spacing 1/n, the "h" used to label resolutions.
    [[nodiscard]] double spacing() const noexcept { return 1.0 / n_; }

    [[nodiscard]] std::array<Point, 3> triangle_vertices(std::size_t t) const;
    [[nodiscard]] double signed_area(std::size_t t) const;

    /// Lower-left lattice corner (i, j) of the cell that owns triangle t, and
    /// whether t is the upper triangle of that cell.
    [[nodiscard]] std::array<int, 3> cell_of(std::size_t t) const noexcept;

private:
    friend Mesh build_unit_square_mesh(int n);

    int n_ = 0;
    double h_ = 0.0;
    std::vector<Point> vertices_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<BoundaryEdge> boundary_edges_;
};

Mesh build_unit_square_mesh(int n);

/// Boundary edges in the order bottom, right, top, left; n per side.
std::vector<BoundaryEdge> classify_boundary(const Mesh& mesh);

/// Plain-text listing: header line, vertices, triangles, boundary edges.
void write_mesh_text(const Mesh& mesh, std::ostream& os);

using MeshPtr = std::shared_ptr<const Mesh>;

inline MeshPtr make_mesh(int n) { return std::make_shared<const Mesh>(build_unit_square_mesh(n)); }

} // namespace mhdcn
