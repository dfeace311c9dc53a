#include "zmc/surface.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "zmc/constraints.hpp"

namespace zmc {

SeparableSurface::SeparableSurface(ConstantsTriple constants, std::array<Profile, 3> profiles, Box box)
    : SeparableSurface(std::move(constants), std::move(profiles), box, true) {}

SeparableSurface SeparableSurface::unchecked(ConstantsTriple constants, std::array<Profile, 3> profiles,
                                             Box box) {
    return SeparableSurface(std::move(constants), std::move(profiles), box, false);
}

SeparableSurface::SeparableSurface(ConstantsTriple constants, std::array<Profile, 3> profiles, Box box,
                                   bool validate)
    : constants_(std::move(constants)), profiles_(std::move(profiles)), box_(box) {
    for (Axis a : kAxes) {
        const Profile& p = profiles_[index(a)];
        if (p.axis() != a) throw ConstraintViolation("profile stored under the wrong axis");
        if (!validate) continue;
        if (!(p.coeffs() == constants_.row(a)) || !(p.kcase() == constants_.kcase)) {
            throw ConstraintViolation(std::string("profile for axis ") + to_string(a) +
                                      " does not use the surface constants");
        }
    }
    if (validate) {
        const double r = residual_norm(constants_);
        if (!(r < 1e-12)) {
            throw ConstraintViolation("constraint residual max-norm " + std::to_string(r) + " exceeds 1e-12");
        }
    }
}

SurfacePoint SeparableSurface::point(const Vec3& p) const {
    SurfacePoint sp;
    sp.position = p;
    std::array<double, 3> vals{};
    for (Axis a : kAxes) {
        const ProfileJet j = profiles_[index(a)].evaluate(p[index(a)]);
        vals[index(a)] = j.u;
        sp.grad[index(a)] = j.d1;
        sp.hess[index(a)] = j.d2;
    }
    sp.u = vals[0];
    sp.v = vals[1];
    sp.w = vals[2];
    sp.on_surface_residual = std::abs(sp.u + sp.v + sp.w);
    return sp;
}

SeparableSurface SeparableSurface::rescaled(double lambda) const {
    const ConstantsTriple c = rescale(constants_, lambda);
    std::array<Profile, 3> ps{profiles_[0].rescaled(lambda), profiles_[1].rescaled(lambda),
                              profiles_[2].rescaled(lambda)};
    Box b;
    for (int i = 0; i < 3; ++i) {
        const double l = lambda * box_.lo[i], h = lambda * box_.hi[i];
        b.lo[i] = std::min(l, h);
        b.hi[i] = std::max(l, h);
    }
    return SeparableSurface(c, std::move(ps), b, false);
}

double eval_F(const SeparableSurface& s, const Vec3& p) {
    double sum = 0.0;
    for (Axis a : kAxes) sum += s.profile(a).value(p[index(a)]);
    return sum;
}

namespace {

struct Xs {
    double X, X1, Y, Y1, Z, Z1;
};

Xs formal(const SeparableSurface& s, double u, double v) {
    const ConstantsTriple& k = s.constants();
    const double w = -u - v;
    return {eval_X(k.row(Axis::X), k.kcase, u, 0), eval_X(k.row(Axis::X), k.kcase, u, 1),
            eval_X(k.row(Axis::Y), k.kcase, v, 0), eval_X(k.row(Axis::Y), k.kcase, v, 1),
            eval_X(k.row(Axis::Z), k.kcase, w, 0), eval_X(k.row(Axis::Z), k.kcase, w, 1)};
}

}  // namespace

double zmc_residual_A(const SeparableSurface& s, double u, double v) {
    const Xs e = formal(s, u, v);
    return (e.Y - e.Z) * e.X1 + (e.X - e.Z) * e.Y1 - (e.X + e.Y) * e.Z1;
}

double zmc_residual_A_scale(const SeparableSurface& s, double u, double v) {
    const Xs e = formal(s, u, v);
    const double m = std::max({std::abs(e.X), std::abs(e.Y), std::abs(e.Z), 1.0});
    return m * m * m;
}

MeanCurvatureNumerator mean_curvature_numerator(const SeparableSurface& s, const Vec3& p,
                                                double on_surface_tol) {
    const SurfacePoint sp = s.point(p);
    if (sp.on_surface_residual > on_surface_tol) {
        throw OffSurface("point is off the surface: |F| = " + std::to_string(sp.on_surface_residual));
    }
    const double fx = sp.grad[0], fy = sp.grad[1], fz = sp.grad[2];
    const double fxx = sp.hess[0], fyy = sp.hess[1], fzz = sp.hess[2];
    const double fx2 = fx * fx, fy2 = fy * fy, fz2 = fz * fz;
    const double lorentz = fx2 + fy2 - fz2;
    if (std::abs(lorentz) < 1e-12) throw DegeneratePoint("lightlike point: mean curvature is undefined");

    MeanCurvatureNumerator out;
    out.eq1 = fxx * (fy2 - fz2) + fyy * (fx2 - fz2) - fzz * (fx2 + fy2);
    // Lorentzian gradient (Fx, Fy, −Fz), Laplacian Fxx + Fyy − Fzz.
    const Vec3 gl{fx, fy, -fz};
    const double laplace = fxx + fyy - fzz;
    const double quad = gl[0] * fxx * gl[0] + gl[1] * fyy * gl[1] + gl[2] * fzz * gl[2];
    out.elm1 = -lorentz * laplace + quad;
    out.scale = (fx2 + fy2 + fz2) * std::max({std::abs(fxx), std::abs(fyy), std::abs(fzz)});
    return out;
}

CausalClass causal_classify(const SeparableSurface& s, const Vec3& p, double tol) {
    Vec3 g{};
    for (Axis a : kAxes) g[index(a)] = s.profile(a).evaluate(p[index(a)]).d1;
    const double fx2 = g[0] * g[0], fy2 = g[1] * g[1], fz2 = g[2] * g[2];
    const double denom = fx2 + fy2 + fz2;
    const double margin = denom > 0.0 ? (fx2 + fy2 - fz2) / denom : 0.0;
    return CausalClass::from_margin(margin, tol);
}

DerivativeCrossCheck derivative_crosscheck(const SeparableSurface& s, const Vec3& p) {
    const SurfacePoint sp = s.point(p);
    DerivativeCrossCheck out;
    for (Axis a : kAxes) {
        const int i = index(a);
        auto F = [&](double d) {
            Vec3 q = p;
            q[i] += d;
            return eval_F(s, q);
        };
        const double F0 = F(0.0);
        constexpr double h1 = 1e-5, h2 = 1e-4;
        const double g = (F(h1) - F(-h1)) / (2 * h1);
        auto second = [&](double h) { return (F(h) - 2 * F0 + F(-h)) / (h * h); };
        const double hs = (4 * second(h2) - second(2 * h2)) / 3;
        out.gradient = std::max(out.gradient, std::abs(g - sp.grad[i]) / std::max(1.0, std::abs(sp.grad[i])));
        out.hessian = std::max(out.hessian, std::abs(hs - sp.hess[i]) / std::max(1.0, std::abs(sp.hess[i])));
    }
    return out;
}

std::vector<double> solve_third_coordinate(const SeparableSurface& s, Axis unknown,
                                           const std::array<double, 2>& known,
                                           std::optional<Interval> window) {
    double sum = 0.0;
    int j = 0;
    for (Axis a : kAxes) {
        if (a == unknown) continue;
        sum += s.profile(a).value(known[j++]);
    }
    const double target = -sum;
    const Profile& p = s.profile(unknown);
    const Interval dom = p.u_domain();
    const bool at_turning = (target == dom.lo && p.u_lower_end().kind == EndKind::Turning) ||
                            (target == dom.hi && p.u_upper_end().kind == EndKind::Turning);
    if (!dom.contains_open(target) && !at_turning) {
        throw NoRoot(std::string("profile for axis ") + to_string(unknown) + " never takes the value " +
                     std::to_string(target));
    }
    const Interval win = window.value_or(s.box().along(unknown));
    std::vector<double> out;
    const Interval ext = p.extended_range();
    for (double t : p.coordinates_for_value(target, win)) {
        if (ext.contains(t)) out.push_back(t);
    }
    return out;
}

std::vector<Vec3> sample_on_surface(const SeparableSurface& s, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Box& b = s.box();
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    const std::array<Axis, 3> order{Axis::Z, Axis::Y, Axis::X};
    long attempts = 0;
    const long budget = 400L * std::max(count, 1);
    while (static_cast<int>(out.size()) < count && attempts < budget) {
        const Axis unknown = order[static_cast<std::size_t>(attempts % 3)];
        ++attempts;
        std::array<double, 2> known{};
        Vec3 p{};
        int j = 0;
        for (Axis a : kAxes) {
            if (a == unknown) continue;
            const int i = index(a);
            p[i] = b.lo[i] + unit(rng) * (b.hi[i] - b.lo[i]);
            known[j++] = p[i];
        }
        std::vector<double> roots;
        try {
            roots = solve_third_coordinate(s, unknown, known);
        } catch (const NoRoot&) {
            continue;
        } catch (const DomainError&) {
            continue;
        }
        if (roots.empty()) continue;
        const auto pick = static_cast<std::size_t>(unit(rng) * static_cast<double>(roots.size()));
        p[index(unknown)] = roots[std::min(pick, roots.size() - 1)];
        out.push_back(p);
    }
    return out;
}

LocusReport lightlike_locus_check(const SeparableSurface& s, const Line& line, double tol) {
    LocusReport r;
    r.line = line;
    const Interval span = line.clip(s.box());
    if (!(span.lo < span.hi)) return r;
    constexpr int n = 32;
    for (int i = 0; i < n; ++i) {
        const Vec3 p = line.at(span.lo + (i + 0.5) / n * (span.hi - span.lo));
        try {
            const SurfacePoint sp = s.point(p);
            r.max_abs_F = std::max(r.max_abs_F, sp.on_surface_residual);
            r.max_abs_margin = std::max(r.max_abs_margin, std::abs(causal_classify(s, p).margin));
        } catch (const DomainError&) {
            r.max_abs_F = INFINITY;
        }
        ++r.samples;
    }
    r.pass = r.samples == n && r.max_abs_F < tol && r.max_abs_margin < tol;
    return r;
}

}  // namespace zmc
