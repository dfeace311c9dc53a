#include <doctest.h>

#include <cmath>

#include "zmc/catalog.hpp"
#include "zmc/constraints.hpp"
#include "zmc/surface.hpp"

using namespace zmc;

namespace {

// Lorentzian mean curvature numerator of a level set from finite differences of F
// only: ⟨∇F,∇F⟩ΔF − ∇FᵗHess F∇F with ⟨a,b⟩ = a₁b₁ + a₂b₂ − a₃b₃, the Lorentzian
// gradient (F_x, F_y, −F_z) and Laplacian F_xx + F_yy − F_zz. Mixed partials vanish
// for separable F.
struct FdGeometry {
    Vec3 grad{};
    Vec3 hess{};
};

FdGeometry fd_geometry(const SeparableSurface& s, const Vec3& p) {
    FdGeometry g;
    const double h1 = 1e-6, h2 = 1e-4;
    const double f0 = eval_F(s, p);
    for (int i = 0; i < 3; ++i) {
        auto at = [&](double d) {
            Vec3 q = p;
            q[i] += d;
            return eval_F(s, q);
        };
        g.grad[i] = (at(h1) - at(-h1)) / (2 * h1);
        g.hess[i] = (at(h2) - 2 * f0 + at(-h2)) / (h2 * h2);
    }
    return g;
}

}  // namespace

TEST_CASE("sampled points lie on the surface and inside the box") {
    for (const char* name : {"3.2-sin", "scherk-spacelike", "4.2.1-v-surface", "k-neg-example-2"}) {
        CAPTURE(name);
        const CatalogEntry e = instantiate(name);
        const auto pts = sample_on_surface(e.surface, 200, 42);
        CHECK(pts.size() == 200);
        for (const Vec3& p : pts) {
            CHECK(e.surface.box().contains(p, 1e-12));
            CHECK(std::abs(eval_F(e.surface, p)) <= 1e-9);
        }
    }
}

TEST_CASE("mean curvature numerator vanishes against a finite difference oracle") {
    for (const char* name : {"3.1-exp-same-sign", "helicoid-elliptic", "4.1.4", "4.3-m1", "k-neg-example-1"}) {
        CAPTURE(name);
        const CatalogEntry e = instantiate(name);
        int used = 0;
        for (const Vec3& p : sample_on_surface(e.surface, 100, 8)) {
            const FdGeometry g = fd_geometry(e.surface, p);
            const Vec3& d = g.grad;
            const double norm = d[0] * d[0] + d[1] * d[1] - d[2] * d[2];
            if (std::abs(norm) < 1e-3 * (d[0] * d[0] + d[1] * d[1] + d[2] * d[2])) continue;
            const double lap = g.hess[0] + g.hess[1] - g.hess[2];
            const double quad = d[0] * d[0] * g.hess[0] + d[1] * d[1] * g.hess[1] + d[2] * d[2] * g.hess[2];
            const double scale = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) *
                                 std::max({std::abs(g.hess[0]), std::abs(g.hess[1]), std::abs(g.hess[2]), 1e-12});
            CHECK(std::abs(norm * lap - quad) / scale <= 1e-4);

            const MeanCurvatureNumerator n = mean_curvature_numerator(e.surface, p);
            CHECK(n.relative() <= 1e-7);
            CHECK(std::abs(n.eq1 + n.elm1) <= 1e-9 * std::max(n.scale, 1.0));
            ++used;
        }
        CHECK(used > 50);
    }
}

TEST_CASE("analytic derivatives agree with differences of F") {
    const CatalogEntry e = instantiate("scherk-timelike");
    for (const Vec3& p : sample_on_surface(e.surface, 50, 1)) {
        const DerivativeCrossCheck c = derivative_crosscheck(e.surface, p);
        CHECK(c.gradient <= 1e-5);
        CHECK(c.hessian <= 1e-5);
    }
}

TEST_CASE("causal class agrees with closed form derivatives") {
    const CatalogEntry e = instantiate("4.1.4");
    REQUIRE(e.has_closed_forms());
    int checked = 0;
    for (const Vec3& p : sample_on_surface(e.surface, 200, 3)) {
        Vec3 d{};
        for (int i = 0; i < 3; ++i) {
            const auto& f = e.closed_forms[i];
            d[i] = (f(p[i] + 1e-6) - f(p[i] - 1e-6)) / 2e-6;
        }
        const double margin = (d[0] * d[0] + d[1] * d[1] - d[2] * d[2]) / (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        if (std::abs(margin) < 1e-4) continue;
        const CausalClass c = causal_classify(e.surface, p);
        CHECK(c.margin == doctest::Approx(margin).epsilon(1e-6).scale(1.0));
        CHECK(c.kind == (margin > 0 ? CausalKind::Timelike : CausalKind::Spacelike));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("surface errors") {
    const CatalogEntry e = instantiate("scherk-spacelike");
    const auto pts = sample_on_surface(e.surface, 1, 5);
    Vec3 off = pts[0];
    off[2] += 0.1;
    REQUIRE(std::abs(eval_F(e.surface, off)) > 1e-6);
    CHECK_THROWS_AS(mean_curvature_numerator(e.surface, off), OffSurface);

    ConstantsTriple bad = e.surface.constants();
    bad.a[1] += 0.01;
    const SeparableSurface& s = e.surface;
    CHECK_THROWS_AS(SeparableSurface(bad, {s.profile(Axis::X), s.profile(Axis::Y), s.profile(Axis::Z)}, s.box()),
                    ConstraintViolation);
}

TEST_CASE("zmc residual A vanishes identically") {
    for (const std::string& name : entry_names()) {
        CAPTURE(name);
        const SeparableSurface& s = instantiate(name).surface;
        for (double u : {-0.7, 0.0, 0.4}) {
            for (double v : {-0.3, 0.2, 0.9}) {
                CHECK(std::abs(zmc_residual_A(s, u, v)) <= 1e-9 * zmc_residual_A_scale(s, u, v));
            }
        }
    }
}

TEST_CASE("third coordinate roots satisfy F = 0") {
    const CatalogEntry e = instantiate("3.3-sinh");
    const Box& b = e.surface.box();
    int roots = 0;
    for (int i = 1; i < 8; ++i) {
        for (int j = 1; j < 8; ++j) {
            const double x = b.lo[0] + (b.hi[0] - b.lo[0]) * i / 8.0;
            const double y = b.lo[1] + (b.hi[1] - b.lo[1]) * j / 8.0;
            try {
                for (double z : solve_third_coordinate(e.surface, Axis::Z, {x, y})) {
                    CHECK(b.along(Axis::Z).contains(z));
                    CHECK(std::abs(eval_F(e.surface, {x, y, z})) <= 1e-10);
                    ++roots;
                }
            } catch (const NoRoot&) {
            }
        }
    }
    CHECK(roots > 0);
}

TEST_CASE("rescaled surface is the dilation") {
    // small λ stretches the profile rows (k̃ = k/|λ|), which stresses the end-point
    // expansions of the elliptic entries
    for (const char* name : {"helicoid-hyperbolic", "4.2.1-v-surface", "4.2.2-m-surface"}) {
        CAPTURE(name);
        const CatalogEntry e = instantiate(name);
        for (double lambda : {0.2, 0.5, 3.0, -2.0}) {
            CAPTURE(lambda);
            const SeparableSurface r = e.surface.rescaled(lambda);
            CHECK(residual_norm(r.constants()) <= 1e-11);
            for (const Vec3& p : sample_on_surface(e.surface, 20, 2)) {
                const Vec3 q{lambda * p[0], lambda * p[1], lambda * p[2]};
                CHECK(std::abs(eval_F(r, q)) <= 1e-12 * std::max(1.0, std::abs(lambda)));
            }
        }
    }
}
