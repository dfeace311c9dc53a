#pragma once

#include <array>
#include <functional>
#include <vector>

#include "zmc/core.hpp"

namespace zmc {

/// How ∫ dt/√P(t) behaves at one end of a positivity interval of P.
enum class EndKind {
    Turning,             ///< finite simple zero: integrable (t−t*)^(−1/2) singularity
    DoubleZero,          ///< finite double zero: logarithmic divergence
    InfiniteDivergent,   ///< ±∞, integral diverges
    InfiniteConvergent,  ///< ±∞, integral converges
};

struct RadicalEnd {
    double at = 0.0;
    EndKind kind = EndKind::InfiniteDivergent;

    bool integrable() const noexcept {
        return kind == EndKind::Turning || kind == EndKind::InfiniteConvergent;
    }
};

/// A real root of P with its multiplicity (1 or 2).
struct Root {
    double at;
    int multiplicity;
};

/// Component of {P > 0} containing `hint`, given all real roots of P near it.
/// Infinite ends take the supplied convergence flags.
std::pair<RadicalEnd, RadicalEnd> positivity_component(const std::vector<Root>& roots, double hint,
                                                       bool lower_infinite_converges,
                                                       bool upper_infinite_converges);

/// Φ(t) = ∫_c^t dτ/√P(τ) on one positivity interval (lo, hi) of P.
///
/// Each half of the interval is integrated in a regularizing variable s ≥ 0:
/// t = end ∓ (√D − s)² at a simple zero, t = end ∓ D·e^{−s} at a double zero and
/// t = c ± s toward ±∞. The integrand in s is bounded at simple zeros and tends to
/// a constant at double zeros. Close to a finite end, P is evaluated from its
/// Taylor expansion there to avoid cancellation.
class RadicalIntegral {
public:
    /// P^{(order)}(t) for order 0..14.
    using Poly = std::function<double(double t, int order)>;

    RadicalIntegral(Poly p, RadicalEnd lower, RadicalEnd upper, double center);

    Interval domain() const noexcept { return {halves_[0].end.at, halves_[1].end.at}; }
    const RadicalEnd& lower_end() const noexcept { return halves_[0].end; }
    const RadicalEnd& upper_end() const noexcept { return halves_[1].end; }
    double center() const noexcept { return center_; }

    /// Φ(t). Integrable ends may be passed exactly and give the limit value.
    double integral(double t) const;
    /// Φ between two points, integrated directly (no detour through the center).
    double integral_between(double t0, double t1) const;
    /// Values of Φ at the two ends (±∞ where divergent).
    Interval range() const noexcept { return {-halves_[0].total, halves_[1].total}; }
    /// t with Φ(t) = y by safeguarded Newton in the regularized variable.
    double inverse(double y) const;
    /// P(t), using the end expansion where that is more accurate.
    double value(double t) const;

private:
    struct Half {
        int dir = 1;
        RadicalEnd end;
        double D = INFINITY;       // |end − center|
        double root_D = INFINITY;  // √D for turning ends
        double s_end = INFINITY;
        double total = INFINITY;   // ∫ over the whole half
        double limit = 0.0;        // integrand value at the end (finite kinds)
        std::array<double, 15> taylor{};  // P^{(n)}(end)/n!
        double taylor_radius = 0.0;       // offsets below this use the expansion
    };

    const Half& half_for(double t) const noexcept { return t >= center_ ? halves_[1] : halves_[0]; }
    double s_of(const Half& h, double t) const;
    double t_of(const Half& h, double s) const;
    double integrand(const Half& h, double s) const;
    static constexpr int kTaylorOrder = 14;
    static double taylor_radius(const Half& h);
    double value_near(const Half& h, double e) const;
    /// P at distance e inside the end of h.
    double value_at_offset(const Half& h, double e) const;
    double half_integral(const Half& h, double s0, double s1) const;
    void check_inside(double t) const;

    Poly p_;
    double center_;
    std::array<Half, 2> halves_;
};

}  // namespace zmc
