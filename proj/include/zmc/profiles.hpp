#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zmc/core.hpp"
#include "zmc/radical_integral.hpp"

namespace zmc {

// ─── the first-order profile functions X, Y, Z ───────────────────────────────

/// order-th derivative of X(u) = a + b·e^{ku} + c·e^{−ku} (K>0),
/// a + b·cos(ku) + c·sin(ku) (K<0) or a + b·u + c·u² (K=0).
double eval_X(const RowCoeffs& coeffs, const CaseK& kcase, double u, int order = 0);

/// (u, order) ↦ X^{(order)}(u).
using XEvaluator = std::function<double(double u, int order)>;

XEvaluator make_evaluator(const RowCoeffs& coeffs, const CaseK& kcase);

/// max |X'''/X' − K| over the samples, skipping points with |X'| < 1e-8.
/// Throws AllSamplesDegenerate if every sample was skipped.
double kk_ratio_check(const XEvaluator& x, double K, std::span<const double> u_samples);
double kk_ratio_check(const RowCoeffs& coeffs, const CaseK& kcase, std::span<const double> u_samples);

/// Real roots of X near `hint` with multiplicities. For K<0 only the roots within
/// two periods of the hint are listed.
std::vector<Root> roots_of_X(const RowCoeffs& coeffs, const CaseK& kcase, double hint);

/// Real roots of A·t² + B·t + C (a double root is reported once with multiplicity 2).
std::vector<Root> solve_quadratic(double A, double B, double C);

// ─── Profile ─────────────────────────────────────────────────────────────────

/// Fixes the integration constant: the profile passes through f(x0) = u0.
struct Anchor {
    double x0 = 0.0;
    double u0 = 0.0;
};

/// f, f', f'' at one coordinate value.
struct ProfileJet {
    double u = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// One coordinate function f with f'² = X(f), recovered from ∫ du/√X(u) = ±(x − x0).
///
/// The primary branch is the monotone solution on one positivity interval of X.
/// A simple zero of X at a finite coordinate is a turning point, through which the
/// solution continues by reflection; with turning points at both ends the profile
/// is periodic. A translation period may also be declared for profiles whose closed
/// form repeats (e.g. −log sin y).
class Profile {
public:
    struct Spec {
        Axis axis = Axis::X;
        RowCoeffs coeffs;
        CaseK kcase = CaseK::zero();
        int sign = 1;
        Anchor anchor;
        /// Interior point selecting the positivity component; defaults to anchor.u0.
        std::optional<double> u_hint;
        std::optional<double> period;
        std::string closed_form;
    };

    explicit Profile(Spec spec);

    Axis axis() const noexcept { return spec_.axis; }
    const RowCoeffs& coeffs() const noexcept { return spec_.coeffs; }
    const CaseK& kcase() const noexcept { return spec_.kcase; }
    int sign() const noexcept { return spec_.sign; }
    const Anchor& anchor() const noexcept { return spec_.anchor; }
    const std::string& closed_form() const noexcept { return spec_.closed_form; }
    const Spec& spec() const noexcept { return spec_; }

    /// X^{(order)}(u); order 0 uses the end-point expansion near a root of X.
    double X(double u, int order = 0) const;

    /// Positivity interval of X on which this profile lives.
    Interval u_domain() const noexcept { return integral_->domain(); }
    const RadicalEnd& u_lower_end() const noexcept { return integral_->lower_end(); }
    const RadicalEnd& u_upper_end() const noexcept { return integral_->upper_end(); }

    /// Coordinate range of the primary branch (possibly infinite).
    Interval coordinate_range() const noexcept { return {xa_, xb_}; }
    /// Range after reflection through turning points (infinite if periodic).
    Interval extended_range() const noexcept;
    bool turning_at_lower() const noexcept { return turn_a_; }
    bool turning_at_upper() const noexcept { return turn_b_; }
    std::optional<double> period() const noexcept { return period_; }

    /// x on the primary branch with f(x) = u.
    double coordinate_from_u(double u) const;
    /// u = f(x) for x on the primary branch.
    double u_from_coordinate(double x) const;

    /// f, f', f'' anywhere on the extended domain.
    ProfileJet evaluate(double x) const;
    double value(double x) const { return evaluate(x).u; }

    /// Every coordinate x with f(x) = u: the primary solution, its reflections, and,
    /// for periodic profiles, all translates inside `window`.
    std::vector<double> coordinates_for_value(double u, std::optional<Interval> window = {}) const;

    /// Same profile with the dilation f̃(x) = λ·f(x/λ) applied.
    Profile rescaled(double lambda) const;

private:
    std::pair<double, int> reduce(double x) const;

    Spec spec_;
    std::shared_ptr<const RadicalIntegral> integral_;
    double phi0_ = 0.0;  // ∫ from the integration center to u0
    double xa_ = 0.0, xb_ = 0.0;
    bool turn_a_ = false, turn_b_ = false;
    std::optional<double> period_;
    bool natural_period_ = false;
};

/// max over samples of |f'(x)² − X(f(x))| and |2f''(x) − X'(f(x))|, with f' from a
/// centered difference (h = 1e-5) and f'' from centered second differences at
/// h = 1e-4 and 2h combined by one Richardson step.
double derivative_identity_check(const std::function<double(double)>& f, const XEvaluator& x_of_u,
                                 std::span<const double> x_samples);
double derivative_identity_check(const Profile& profile, std::span<const double> x_samples);

// ─── elliptic kernels ────────────────────────────────────────────────────────

/// scale · ∫_{base}^{t} dτ/√(q4·τ⁴ + q2·τ² + q0).
struct EllipticKernel {
    double q4 = 0.0;
    double q2 = 0.0;
    double q0 = 0.0;
    double base = 0.0;
    double scale = 1.0;

    double Q(double tau) const noexcept { return (q4 * tau * tau + q2) * tau * tau + q0; }
};

/// Q = τ⁴ − 1 from τ₀ = 1; inverse V with V(0) = 1.
EllipticKernel v_kernel() noexcept;
/// Q = 1 − τ⁴ from τ₀ = 0; inverse M with M(0) = 0.
EllipticKernel m_kernel() noexcept;
/// Q = 1 − τ² + τ⁴ from τ₀ = 0.
EllipticKernel f_kernel() noexcept;
/// Q = 1 + τ² + τ⁴ from τ₀ = 0.
EllipticKernel g_kernel() noexcept;

/// Kernel of a K>0 profile in τ = e^{ku/2}: du/√X(u) = (2/k)·dτ/√(bτ⁴ + aτ² + c).
EllipticKernel kernel_for_profile(const RowCoeffs& coeffs, const CaseK& kcase, double base_u);

/// Precomputed positivity interval and range of one kernel.
class EllipticIntegral {
public:
    explicit EllipticIntegral(const EllipticKernel& kernel);

    const EllipticKernel& kernel() const noexcept { return kernel_; }
    /// Positivity interval of Q containing (or adjacent to) the base point.
    Interval domain() const noexcept { return integral_->domain(); }
    /// Values of forward() at the ends of the domain.
    Interval range() const noexcept;

    double forward(double t) const;
    double inverse(double xi) const;

private:
    EllipticKernel kernel_;
    std::unique_ptr<RadicalIntegral> integral_;
    double base_offset_ = 0.0;
};

double elliptic_forward(const EllipticKernel& kernel, double t);
double elliptic_inverse(const EllipticKernel& kernel, double xi);

/// Inverses of the four named kernels (shared, built on first use).
double V(double xi);
double M(double psi);
double Fcal(double xi);
double Gcal(double xi);

const EllipticIntegral& v_integral();
const EllipticIntegral& m_integral();
const EllipticIntegral& f_integral();
const EllipticIntegral& g_integral();

/// ∫_0^1 dτ/√(1−τ⁴): the M-kernel's half range.
double lemniscate_quarter();

}  // namespace zmc
