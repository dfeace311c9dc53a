#include "zmc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>
#include <unordered_map>

namespace zmc {

namespace {

constexpr std::array<std::array<int, 2>, 12> kEdges = {{
    {0, 1}, {2, 3}, {4, 5}, {6, 7},  // along x
    {0, 2}, {1, 3}, {4, 6}, {5, 7},  // along y
    {0, 4}, {1, 5}, {2, 6}, {3, 7},  // along z
}};

int edge_between(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int e = 0; e < 12; ++e) {
        if (kEdges[e][0] == a && kEdges[e][1] == b) return e;
    }
    return -1;
}

Vec3 corner_position(int c) { return {double(c & 1), double((c >> 1) & 1), double((c >> 2) & 1)}; }

/// The six faces, corners listed counter-clockwise as seen from outside the cube.
std::array<std::array<int, 4>, 6> cube_faces() {
    std::array<std::array<int, 4>, 6> faces{};
    int n = 0;
    for (int d = 0; d < 3; ++d) {
        const int p = (d + 1) % 3, q = (d + 2) % 3;
        for (int side = 0; side < 2; ++side) {
            std::array<int, 4> f{};
            const int pq[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
            for (int i = 0; i < 4; ++i) f[i] = (side << d) | (pq[i][0] << p) | (pq[i][1] << q);
            if (side == 0) std::reverse(f.begin(), f.end());
            faces[n++] = f;
        }
    }
    return faces;
}

// Each face contributes directed segments from an edge where the CCW walk enters the
// inside to the edge where it leaves. Ambiguous faces join their inside corners.
// Chaining the segments gives closed polygons, fanned into triangles.
std::vector<std::uint8_t> polygons_for(int mask, const std::array<std::array<int, 4>, 6>& faces) {
    auto inside = [mask](int c) { return (mask >> c) & 1; };
    std::array<int, 12> next;
    next.fill(-1);
    for (const auto& f : faces) {
        std::array<int, 4> enter{}, leave{};
        int ne = 0, nl = 0;
        for (int i = 0; i < 4; ++i) {
            const int a = f[i], b = f[(i + 1) % 4];
            if (inside(a) == inside(b)) continue;
            if (inside(b)) enter[ne++] = i;
            else leave[nl++] = i;
        }
        if (ne == 0) continue;
        auto edge_of = [&](int i) { return edge_between(f[i], f[(i + 1) % 4]); };
        if (ne == 1) {
            next[edge_of(enter[0])] = edge_of(leave[0]);
            continue;
        }
        // Four crossings: inside corners are diagonal. Joining them leaves the outside
        // corners cut off, so each entering edge pairs with the leaving edge just before it.
        for (int k = 0; k < 2; ++k) {
            const int e = enter[k];
            const int l = (e + 3) % 4;
            next[edge_of(e)] = edge_of(l);
        }
    }
    std::vector<std::uint8_t> tris;
    std::array<bool, 12> used{};
    for (int start = 0; start < 12; ++start) {
        if (next[start] < 0 || used[start]) continue;
        std::vector<int> loop;
        for (int e = start; !used[e]; e = next[e]) {
            used[e] = true;
            loop.push_back(e);
        }
        for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
            tris.push_back(std::uint8_t(loop[0]));
            tris.push_back(std::uint8_t(loop[i]));
            tris.push_back(std::uint8_t(loop[i + 1]));
        }
    }
    return tris;
}

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

std::array<std::vector<std::uint8_t>, 256> build_table() {
    const auto faces = cube_faces();
    std::array<std::vector<std::uint8_t>, 256> table;
    for (int m = 0; m < 256; ++m) table[m] = polygons_for(m, faces);
    // Orient normals toward increasing F: with only corner 0 inside, the triangle
    // must face away from it.
    auto mid = [](int e) {
        const Vec3 a = corner_position(kEdges[e][0]), b = corner_position(kEdges[e][1]);
        return Vec3{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2};
    };
    const auto& t = table[1];
    const Vec3 n = cross(sub(mid(t[1]), mid(t[0])), sub(mid(t[2]), mid(t[0])));
    if (dot(n, {1, 1, 1}) < 0) {
        for (auto& tris : table) {
            for (std::size_t i = 0; i < tris.size(); i += 3) std::swap(tris[i + 1], tris[i + 2]);
        }
    }
    return table;
}

unsigned worker_count() { return std::max(1u, std::min(16u, std::thread::hardware_concurrency())); }

/// Runs body(begin, end) over [0, n) split into contiguous chunks, one per worker.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
        threads.emplace_back([&, w, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::optional<ProfileJet> try_evaluate(const Profile& p, double x) {
    try {
        return p.evaluate(x);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

double grid_coord(const Box& b, int axis, int res, int i) {
    return b.lo[axis] + (b.hi[axis] - b.lo[axis]) * i / res;
}

}  // namespace

Vec3 Mesh::cell() const noexcept {
    Vec3 c{};
    for (int a = 0; a < 3; ++a) c[a] = (box.hi[a] - box.lo[a]) / resolution;
    return c;
}

const std::array<std::vector<std::uint8_t>, 256>& triangle_table() {
    static const auto table = build_table();
    return table;
}

std::array<int, 2> cube_edge(int e) { return kEdges.at(e); }

Mesh extract_level_set(const SeparableSurface& s, int res, std::optional<Box> box_opt) {
    if (res < 1) throw DomainError("marching cubes needs at least one cell per axis");
    const Box box = box_opt.value_or(s.box());
    const int n1 = res + 1;

    std::array<std::vector<std::optional<ProfileJet>>, 3> jets;
    std::array<std::vector<double>, 3> vals;
    for (Axis a : kAxes) {
        const int i = index(a);
        jets[i].resize(n1);
        vals[i].resize(n1);
        parallel_chunks(n1, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t k = lo; k < hi; ++k) {
                jets[i][k] = try_evaluate(s.profile(a), grid_coord(box, i, res, int(k)));
                vals[i][k] = jets[i][k] ? jets[i][k]->u : std::nan("");
            }
        });
    }
    auto F = [&](int i, int j, int k) { return vals[0][i] + vals[1][j] + vals[2][k]; };

    bool neg = false, pos = false;
    for (int k = 0; k < n1 && !(neg && pos); ++k) {
        for (int j = 0; j < n1; ++j) {
            for (int i = 0; i < n1; ++i) {
                const double v = F(i, j, k);
                neg |= v < 0.0;
                pos |= v >= 0.0;
            }
        }
    }
    if (!(neg && pos)) throw EmptyLevelSet("F does not change sign on the sampling grid");

    const auto& table = triangle_table();
    // Vertices are keyed by grid edge (axis 0..2). A grid node where F is exactly zero
    // gets key slot 3, so every edge ending there shares one vertex instead of
    // stacking coincident copies.
    auto node_key = [n1](int i, int j, int k) { return ((std::int64_t(k) * n1 + j) * n1 + i) * 4; };
    auto edge_key = [&](int i, int j, int k, int axis) {
        if (F(i, j, k) == 0.0) return node_key(i, j, k) + 3;
        const int di = axis == 0, dj = axis == 1, dk = axis == 2;
        if (F(i + di, j + dj, k + dk) == 0.0) return node_key(i + di, j + dj, k + dk) + 3;
        return node_key(i, j, k) + axis;
    };

    // Triangles per z-slab as triples of global edge keys.
    std::vector<std::vector<std::array<std::int64_t, 3>>> slabs(res);
    parallel_chunks(res, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t kk = lo; kk < hi; ++kk) {
            const int k = int(kk);
            for (int j = 0; j < res; ++j) {
                for (int i = 0; i < res; ++i) {
                    int mask = 0;
                    bool valid = true;
                    for (int c = 0; c < 8 && valid; ++c) {
                        const double v = F(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
                        if (std::isnan(v)) valid = false;
                        else if (v < 0.0) mask |= 1 << c;
                    }
                    if (!valid) continue;
                    const auto& tris = table[mask];
                    for (std::size_t t = 0; t < tris.size(); t += 3) {
                        std::array<std::int64_t, 3> tri{};
                        for (int q = 0; q < 3; ++q) {
                            const int a = kEdges[tris[t + q]][0], b = kEdges[tris[t + q]][1];
                            const int axis = (a ^ b) == 1 ? 0 : (a ^ b) == 2 ? 1 : 2;
                            tri[q] = edge_key(i + (a & 1), j + ((a >> 1) & 1), k + ((a >> 2) & 1), axis);
                        }
                        slabs[k].push_back(tri);
                    }
                }
            }
        }
    });

    Mesh mesh;
    mesh.box = box;
    mesh.resolution = res;
    std::unordered_map<std::int64_t, int> vertex_of;
    for (const auto& slab : slabs) {
        for (const auto& tri : slab) {
            std::array<int, 3> face{};
            for (int q = 0; q < 3; ++q) {
                auto [it, fresh] = vertex_of.try_emplace(tri[q], int(mesh.vertices.size()));
                if (fresh) {
                    const int slot = int(tri[q] % 4);
                    std::int64_t node = tri[q] / 4;
                    const int i = int(node % n1), j = int(node / n1 % n1), k = int(node / n1 / n1);
                    std::array<int, 3> a{i, j, k};
                    Vec3 p{};
                    for (int d = 0; d < 3; ++d) p[d] = grid_coord(box, d, res, a[d]);
                    if (slot < 3) {
                        std::array<int, 3> b = a;
                        b[slot] += 1;
                        const double Fa = F(a[0], a[1], a[2]), Fb = F(b[0], b[1], b[2]);
                        p[slot] += Fa / (Fa - Fb) * (grid_coord(box, slot, res, b[slot]) - p[slot]);
                    }
                    mesh.vertices.push_back(p);
                    mesh.edge_axis.push_back(std::uint8_t(slot < 3 ? slot : 0));
                }
                face[q] = it->second;
            }
            // faces collapsed by a shared zero node carry no area
            if (face[0] != face[1] && face[1] != face[2] && face[0] != face[2]) mesh.faces.push_back(face);
        }
    }

    mesh.tags.resize(mesh.vertices.size());
    mesh.margins.resize(mesh.vertices.size());
    parallel_chunks(mesh.vertices.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t v = lo; v < hi; ++v) {
            const CausalClass c = causal_classify(s, mesh.vertices[v]);
            mesh.tags[v] = c.kind;
            mesh.margins[v] = c.margin;
        }
    });
    return mesh;
}

MeshAudit audit_mesh(const Mesh& mesh, const SeparableSurface& s) {
    MeshAudit out;
    const Vec3 cell = mesh.cell();
    const double half_diag = 0.5 * std::sqrt(dot(cell, cell));
    const std::size_t nv = mesh.vertices.size();
    std::vector<double> ratio(nv, 0.0);
    parallel_chunks(nv, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t v = lo; v < hi; ++v) {
            const Vec3& p = mesh.vertices[v];
            const int axis = mesh.edge_axis[v];
            std::array<ProfileJet, 3> j{};
            try {
                for (Axis a : kAxes) j[index(a)] = s.profile(a).evaluate(p[index(a)]);
            } catch (const DomainError&) {
                ratio[v] = INFINITY;
                continue;
            }
            const double Fv = j[0].u + j[1].u + j[2].u;
            double other = 0.0;
            for (int d = 0; d < 3; ++d) {
                if (d != axis) other += j[d].d1 * j[d].d1;
            }
            const double lo_c = mesh.box.lo[axis];
            const int i0 = std::clamp(int(std::floor((p[axis] - lo_c) / cell[axis])), 0, mesh.resolution - 1);
            double gmax = std::abs(j[axis].d1);
            for (int e = 0; e < 2; ++e) {
                const double x = lo_c + cell[axis] * (i0 + e);
                gmax = std::max(gmax, std::abs(s.profile(Axis(axis)).evaluate(x).d1));
            }
            const double bound = half_diag * std::sqrt(gmax * gmax + other);
            ratio[v] = std::abs(Fv) / bound;
        }
    });
    for (double r : ratio) {
        if (!(r < 1.0)) ++out.bad_vertices;
        out.worst_ratio = std::max(out.worst_ratio, std::isnan(r) ? INFINITY : r);
    }
    for (const auto& f : mesh.faces) {
        bool ok = true;
        for (int q = 0; q < 3; ++q) ok &= f[q] >= 0 && std::size_t(f[q]) < nv;
        ok &= f[0] != f[1] && f[1] != f[2] && f[0] != f[2];
        if (!ok) ++out.bad_faces;
    }
    out.pass = nv > 0 && !mesh.faces.empty() && out.bad_vertices == 0 && out.bad_faces == 0;
    return out;
}

void write_obj(const Mesh& mesh, std::ostream& out) {
    out << "# zmc mesh: " << mesh.vertices.size() << " vertices, " << mesh.faces.size() << " faces\n";
    out << "# vertex colour: spacelike 0 0 1, timelike 1 0 0, lightlike 0 1 0\n";
    char buf[160];
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        const Vec3& p = mesh.vertices[v];
        const char* rgb = "0 1 0";
        if (mesh.tags[v] == CausalKind::Spacelike) rgb = "0 0 1";
        else if (mesh.tags[v] == CausalKind::Timelike) rgb = "1 0 0";
        std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g %s\n", p[0], p[1], p[2], rgb);
        out << buf;
    }
    for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_mesh_csv(const Mesh& mesh, std::ostream& out) {
    out << "x,y,z,class,margin\n";
    char buf[160];
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        const Vec3& p = mesh.vertices[v];
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%s,%.6g\n", p[0], p[1], p[2], to_string(mesh.tags[v]),
                      mesh.margins[v]);
        out << buf;
    }
}

}  // namespace zmc
