#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "zmc/catalog.hpp"
#include "zmc/mesh.hpp"

using namespace zmc;

TEST_CASE("triangle table") {
    const auto& table = triangle_table();
    CHECK(table[0].empty());
    CHECK(table[255].empty());
    for (int mask = 0; mask < 256; ++mask) {
        CAPTURE(mask);
        CHECK(table[mask].size() % 3 == 0);
        // every cube edge used by the mask must have one corner inside and one outside
        for (std::uint8_t e : table[mask]) {
            const auto [c0, c1] = cube_edge(e);
            CHECK(((mask >> c0) & 1) != ((mask >> c1) & 1));
        }
        // a mask and its complement cut the same edges
        std::set<int> a(table[mask].begin(), table[mask].end()), b(table[255 - mask].begin(), table[255 - mask].end());
        CHECK(a == b);
    }
    CHECK(table[1].size() == 3);
}

TEST_CASE("extracted meshes are manifold, oriented and close to F = 0") {
    for (std::string name : {"3.2-sin", "scherk-spacelike", "helicoid-elliptic", "4.2.2-m1", "k-neg-example-2"}) {
        CAPTURE(name);
        const CatalogEntry e = instantiate(name);
        const Mesh m = extract_level_set(e.surface, 20);
        REQUIRE_FALSE(m.faces.empty());
        CHECK(m.vertices.size() == m.tags.size());
        CHECK(m.vertices.size() == m.margins.size());

        std::map<std::pair<int, int>, int> uses;
        int aligned = 0, against = 0;
        for (const auto& f : m.faces) {
            for (int i = 0; i < 3; ++i) {
                const int a = f[i], b = f[(i + 1) % 3];
                CHECK(a != b);
                ++uses[{std::min(a, b), std::max(a, b)}];
            }
            const Vec3 &p = m.vertices[f[0]], &q = m.vertices[f[1]], &r = m.vertices[f[2]];
            const Vec3 u{q[0] - p[0], q[1] - p[1], q[2] - p[2]}, v{r[0] - p[0], r[1] - p[1], r[2] - p[2]};
            const Vec3 n{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
            const Vec3 c{(p[0] + q[0] + r[0]) / 3, (p[1] + q[1] + r[1]) / 3, (p[2] + q[2] + r[2]) / 3};
            const Vec3 g = e.surface.point(c).grad;
            const double d = n[0] * g[0] + n[1] * g[1] + n[2] * g[2];
            (d > 0 ? aligned : against) += 1;
        }
        for (const auto& [edge, count] : uses) CHECK(count <= 2);
        CHECK(against * 20 < aligned);

        const MeshAudit a = audit_mesh(m, e.surface);
        CHECK(a.pass);
        CHECK(a.bad_faces == 0);
        for (std::size_t i = 0; i < m.vertices.size(); ++i) {
            CHECK(m.tags[i] == causal_classify(e.surface, m.vertices[i]).kind);
        }
    }
}

TEST_CASE("mesh errors") {
    const CatalogEntry e = instantiate("4.1.4");
    CHECK_THROWS_AS(extract_level_set(e.surface, 0), DomainError);

    Vec3 p = sample_on_surface(e.surface, 1, 4)[0];
    p[2] += 0.05;
    REQUIRE(std::abs(eval_F(e.surface, p)) > 1e-4);
    const Box tiny{{p[0] - 1e-5, p[1] - 1e-5, p[2] - 1e-5}, {p[0] + 1e-5, p[1] + 1e-5, p[2] + 1e-5}};
    CHECK_THROWS_AS(extract_level_set(e.surface, 8, tiny), EmptyLevelSet);
}

TEST_CASE("OBJ and CSV writers") {
    const CatalogEntry e = instantiate("scherk-timelike");
    const Mesh m = extract_level_set(e.surface, 10);
    std::ostringstream obj;
    write_obj(m, obj);
    std::istringstream in(obj.str());
    std::string line;
    std::size_t v = 0, f = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            double x, y, z, r, g, b;
            REQUIRE(static_cast<bool>(ls >> x >> y >> z >> r >> g >> b));
            const CausalKind k = m.tags[v];
            CHECK(r == (k == CausalKind::Timelike ? 1.0 : 0.0));
            CHECK(g == (k == CausalKind::Lightlike ? 1.0 : 0.0));
            CHECK(b == (k == CausalKind::Spacelike ? 1.0 : 0.0));
            ++v;
        } else if (tag == "f") {
            long i, j, k;
            REQUIRE(static_cast<bool>(ls >> i >> j >> k));
            CHECK(f < m.faces.size());
            CHECK(i == m.faces[f][0] + 1);
            CHECK(j == m.faces[f][1] + 1);
            CHECK(k == m.faces[f][2] + 1);
            ++f;
        } else {
            FAIL("unexpected OBJ line: " << line);
        }
    }
    CHECK(v == m.vertices.size());
    CHECK(f == m.faces.size());

    std::ostringstream csv;
    write_mesh_csv(m, csv);
    std::istringstream cin(csv.str());
    std::getline(cin, line);
    CHECK(line == "x,y,z,class,margin");
    std::size_t rows = 0;
    while (std::getline(cin, line)) rows += !line.empty();
    CHECK(rows == m.vertices.size());
}
