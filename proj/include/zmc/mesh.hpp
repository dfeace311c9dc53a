#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "zmc/surface.hpp"

namespace zmc {

/// Triangle mesh of F = 0 with a causal tag per vertex.
struct Mesh {
    std::vector<Vec3> vertices;
    /// Axis of the grid edge each vertex was interpolated on (0 for a vertex on a grid
    /// node where F vanishes exactly).
    std::vector<std::uint8_t> edge_axis;
    std::vector<CausalKind> tags;
    std::vector<double> margins;
    std::vector<std::array<int, 3>> faces;
    Box box;
    int resolution = 0;

    Vec3 cell() const noexcept;
};

/// Marching cubes over res³ cells of `box` (default: the surface box). Cells with a
/// corner outside the profiles' domains are skipped. Throws EmptyLevelSet when F does
/// not change sign on the grid, DomainError if res < 1.
Mesh extract_level_set(const SeparableSurface& s, int res, std::optional<Box> box = {});

struct MeshAudit {
    /// max over vertices of |F| / (0.5 · cell diagonal · max|∇F| on the vertex's edge).
    double worst_ratio = 0.0;
    int bad_vertices = 0;
    int bad_faces = 0;
    bool pass = false;
};

MeshAudit audit_mesh(const Mesh& mesh, const SeparableSurface& s);

/// ASCII OBJ: `v x y z r g b` lines (Spacelike blue, Timelike red, Lightlike green),
/// then 1-indexed `f i j k` lines.
void write_obj(const Mesh& mesh, std::ostream& out);
/// Vertex table with header `x,y,z,class,margin`.
void write_mesh_csv(const Mesh& mesh, std::ostream& out);

/// Triangle table: for each of the 256 inside-corner masks, the cube edges (0..11)
/// of its triangles, three per triangle.
const std::array<std::vector<std::uint8_t>, 256>& triangle_table();

/// Corner indices of cube edge e; corner c sits at (c&1, c>>1&1, c>>2&1).
std::array<int, 2> cube_edge(int e);

}  // namespace zmc
