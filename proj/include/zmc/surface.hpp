#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "zmc/core.hpp"
#include "zmc/profiles.hpp"

namespace zmc {

struct SurfacePoint {
    Vec3 position{};
    double u = 0.0, v = 0.0, w = 0.0;
    Vec3 grad{};
    /// Diagonal of Hess F (the mixed partials of a separable F vanish).
    Vec3 hess{};
    double on_surface_residual = 0.0;
};

/// F(x, y, z) = f(x) + g(y) + h(z) built from three profiles of one constants triple.
class SeparableSurface {
public:
    /// Throws ConstraintViolation if the constraint residuals exceed 1e-12 or a profile's
    /// coefficients differ from its row of `constants`.
    SeparableSurface(ConstantsTriple constants, std::array<Profile, 3> profiles, Box box);

    /// No constraint validation; for fixtures that are deliberately not zero mean curvature.
    static SeparableSurface unchecked(ConstantsTriple constants, std::array<Profile, 3> profiles, Box box);

    const ConstantsTriple& constants() const noexcept { return constants_; }
    const Profile& profile(Axis a) const noexcept { return profiles_[index(a)]; }
    const Box& box() const noexcept { return box_; }

    SurfacePoint point(const Vec3& p) const;

    /// λ·S: profiles f̃(x) = λf(x/λ), constants rescaled, box dilated.
    SeparableSurface rescaled(double lambda) const;

private:
    SeparableSurface(ConstantsTriple constants, std::array<Profile, 3> profiles, Box box, bool validate);

    ConstantsTriple constants_;
    std::array<Profile, 3> profiles_;
    Box box_;
};

double eval_F(const SeparableSurface& s, const Vec3& p);

/// A = (Y−Z)X' + (X−Z)Y' − (X+Y)Z' at (u, v, w = −u−v), evaluated formally.
double zmc_residual_A(const SeparableSurface& s, double u, double v);
/// The scale max(|X|, |Y|, |Z|, 1)³ used to make A relative.
double zmc_residual_A_scale(const SeparableSurface& s, double u, double v);

struct MeanCurvatureNumerator {
    /// f''(g'²−h'²) + g''(f'²−h'²) − h''(f'²+g'²)
    double eq1 = 0.0;
    /// −⟨∇F,∇F⟩·ΔF + ∇Fᵗ·Hess F·∇F with the Lorentzian gradient; equals −eq1.
    double elm1 = 0.0;
    /// (f'²+g'²+h'²)·max(|f''|, |g''|, |h''|), for relative comparisons.
    double scale = 0.0;

    double relative() const noexcept { return std::abs(eq1) / std::max(scale, 1e-300); }
};

/// Throws OffSurface if |F| > on_surface_tol, DegeneratePoint on lightlike points.
MeanCurvatureNumerator mean_curvature_numerator(const SeparableSurface& s, const Vec3& p,
                                                double on_surface_tol = 1e-8);

CausalClass causal_classify(const SeparableSurface& s, const Vec3& p, double tol = kLightlikeTol);

/// Largest relative deviation of the analytic gradient (resp. Hessian diagonal) from
/// centered differences of F with steps 1e-5 (resp. 1e-4 with one Richardson step).
struct DerivativeCrossCheck {
    double gradient = 0.0;
    double hessian = 0.0;
};
DerivativeCrossCheck derivative_crosscheck(const SeparableSurface& s, const Vec3& p);

/// All t with F = 0 when the two other coordinates are fixed to `known` (given in
/// axis order, skipping `unknown`). Roots are restricted to `window`, by default the
/// surface box. Throws NoRoot if the required profile value is outside the profile's range.
std::vector<double> solve_third_coordinate(const SeparableSurface& s, Axis unknown,
                                           const std::array<double, 2>& known,
                                           std::optional<Interval> window = {});

/// Random on-surface points in the box: two coordinates uniform, the third solved.
std::vector<Vec3> sample_on_surface(const SeparableSurface& s, int count, std::uint64_t seed);

struct LocusReport {
    Line line;
    double max_abs_F = 0.0;
    double max_abs_margin = 0.0;
    int samples = 0;
    bool pass = false;
};

/// Samples 32 points of `line` inside the box; passes if max |F| and max |margin| are
/// below `tol`.
LocusReport lightlike_locus_check(const SeparableSurface& s, const Line& line, double tol = 1e-7);

}  // namespace zmc
