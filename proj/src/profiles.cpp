#include "zmc/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace zmc {

// ─── X and its roots ─────────────────────────────────────────────────────────

double eval_X(const RowCoeffs& coeffs, const CaseK& kcase, double u, int order) {
    if (order < 0) throw DomainError("eval_X: negative derivative order");
    const auto [a, b, c] = coeffs;
    switch (kcase.kind()) {
        case CaseK::Kind::Positive: {
            const double k = kcase.k();
            const double kn = std::pow(k, order);
            const double sgn = (order % 2 == 0) ? 1.0 : -1.0;
            double v = 0.0;
            if (b != 0.0) v += b * kn * std::exp(k * u);
            if (c != 0.0) v += sgn * c * kn * std::exp(-k * u);
            return order == 0 ? a + v : v;
        }
        case CaseK::Kind::Negative: {
            const double k = kcase.k();
            const double kn = std::pow(k, order);
            const double cs = std::cos(k * u), sn = std::sin(k * u);
            double v = 0.0;
            switch (order % 4) {
                case 0: v = b * cs + c * sn; break;
                case 1: v = -b * sn + c * cs; break;
                case 2: v = -b * cs - c * sn; break;
                default: v = b * sn - c * cs; break;
            }
            v *= kn;
            return order == 0 ? a + v : v;
        }
        case CaseK::Kind::Zero:
            switch (order) {
                case 0: return a + u * (b + c * u);
                case 1: return b + 2.0 * c * u;
                case 2: return 2.0 * c;
                default: return 0.0;
            }
    }
    return 0.0;
}

XEvaluator make_evaluator(const RowCoeffs& coeffs, const CaseK& kcase) {
    return [coeffs, kcase](double u, int order) { return eval_X(coeffs, kcase, u, order); };
}

double kk_ratio_check(const XEvaluator& x, double K, std::span<const double> u_samples) {
    double worst = 0.0;
    bool any = false;
    for (double u : u_samples) {
        const double d1 = x(u, 1);
        if (std::abs(d1) < 1e-8) continue;
        any = true;
        worst = std::max(worst, std::abs(x(u, 3) / d1 - K));
    }
    if (!any) throw AllSamplesDegenerate("kk_ratio_check: X' vanishes at every sample");
    return worst;
}

double kk_ratio_check(const RowCoeffs& coeffs, const CaseK& kcase, std::span<const double> u_samples) {
    return kk_ratio_check(make_evaluator(coeffs, kcase), kcase.value(), u_samples);
}

std::vector<Root> solve_quadratic(double A, double B, double C) {
    std::vector<Root> out;
    if (A == 0.0) {
        if (B != 0.0) out.push_back({-C / B, 1});
        return out;
    }
    const double disc = B * B - 4.0 * A * C;
    const double tol = 1e-14 * (B * B + std::abs(4.0 * A * C));
    if (disc < -tol) return out;
    if (std::abs(disc) <= tol) {
        out.push_back({-B / (2.0 * A), 2});
        return out;
    }
    const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
    const double r1 = q / A;
    const double r2 = C / q;
    out.push_back({std::min(r1, r2), 1});
    out.push_back({std::max(r1, r2), 1});
    return out;
}

std::vector<Root> roots_of_X(const RowCoeffs& coeffs, const CaseK& kcase, double hint) {
    const auto [a, b, c] = coeffs;
    std::vector<Root> out;
    switch (kcase.kind()) {
        case CaseK::Kind::Positive: {
            // b·E² + a·E + c = 0 with E = e^{ku} > 0
            for (const Root& r : solve_quadratic(b, a, c)) {
                if (r.at > 0.0) out.push_back({std::log(r.at) / kcase.k(), r.multiplicity});
            }
            break;
        }
        case CaseK::Kind::Zero:
            out = solve_quadratic(c, b, a);
            break;
        case CaseK::Kind::Negative: {
            // X = a + R·cos(ku − φ)
            const double R = std::hypot(b, c);
            if (R == 0.0) break;
            const double ratio = -a / R;
            if (std::abs(ratio) > 1.0 + 1e-14) break;
            const double k = kcase.k();
            const double phi = std::atan2(c, b);
            const double two_pi = 2.0 * std::numbers::pi;
            const bool doubled = std::abs(std::abs(ratio) - 1.0) <= 1e-14;
            const double theta = doubled ? (ratio > 0 ? 0.0 : std::numbers::pi)
                                         : std::acos(std::clamp(ratio, -1.0, 1.0));
            const double n0 = std::floor((k * hint - phi) / two_pi);
            for (double n = n0 - 2; n <= n0 + 2; n += 1.0) {
                if (doubled) {
                    out.push_back({(phi + theta + two_pi * n) / k, 2});
                } else {
                    out.push_back({(phi + theta + two_pi * n) / k, 1});
                    out.push_back({(phi - theta + two_pi * n) / k, 1});
                }
            }
            break;
        }
    }
    std::sort(out.begin(), out.end(), [](const Root& l, const Root& r) { return l.at < r.at; });
    return out;
}

namespace {

bool infinite_converges(const RowCoeffs& coeffs, const CaseK& kcase, int dir) {
    if (kcase.kind() != CaseK::Kind::Positive) return false;
    return dir > 0 ? coeffs.b > 0.0 : coeffs.c > 0.0;
}

/// Interior point of (lo, hi) adjacent to `end`, used as the integration center
/// when the natural choice sits on the boundary.
double interior_from(double end, double other, int dir) {
    if (std::isfinite(other)) return 0.5 * (end + other);
    return end + dir * std::max(1.0, 0.5 * std::abs(end));
}

/// Hint strictly inside a positivity component near `u`.
double positive_hint(const std::function<double(double)>& P, double u) {
    if (P(u) > 0.0) return u;
    const double step = 1e-3 * std::max(1.0, std::abs(u));
    for (double d : {step, -step, 10 * step, -10 * step}) {
        if (P(u + d) > 0.0) return u + d;
    }
    throw DomainError("no positivity interval of X next to u = " + std::to_string(u));
}

}  // namespace

// ─── Profile ─────────────────────────────────────────────────────────────────

Profile::Profile(Spec spec) : spec_(std::move(spec)) {
    if (spec_.sign != 1 && spec_.sign != -1) throw DomainError("Profile: sign must be ±1");
    const RowCoeffs coeffs = spec_.coeffs;
    const CaseK kcase = spec_.kcase;
    auto P0 = [&](double u) { return eval_X(coeffs, kcase, u, 0); };
    const double hint = positive_hint(P0, spec_.u_hint.value_or(spec_.anchor.u0));

    const auto [lo, hi] = positivity_component(roots_of_X(coeffs, kcase, hint), hint,
                                               infinite_converges(coeffs, kcase, -1),
                                               infinite_converges(coeffs, kcase, 1));
    double u0 = spec_.anchor.u0;
    for (const RadicalEnd& e : {lo, hi}) {
        if (e.kind == EndKind::Turning && std::abs(u0 - e.at) <= 1e-12 * std::max(1.0, std::abs(u0))) {
            u0 = e.at;
        }
    }
    spec_.anchor.u0 = u0;
    double center = u0;
    if (u0 == lo.at || u0 == hi.at) {
        const RadicalEnd& e = (u0 == lo.at) ? lo : hi;
        if (e.kind != EndKind::Turning) {
            throw DomainError("Profile: anchor value u0 = " + std::to_string(u0) +
                              " is a non-integrable end of the domain of X");
        }
        center = (u0 == lo.at) ? interior_from(lo.at, hi.at, 1) : interior_from(hi.at, lo.at, -1);
    } else if (!(u0 > lo.at && u0 < hi.at)) {
        throw DomainError("Profile: anchor value u0 = " + std::to_string(u0) +
                          " is not in the positivity interval of X containing the hint");
    }

    integral_ = std::make_shared<const RadicalIntegral>(make_evaluator(coeffs, kcase), lo, hi, center);
    phi0_ = integral_->integral(u0);

    const Interval range = integral_->range();
    const double x_lo = spec_.anchor.x0 + spec_.sign * (range.lo - phi0_);
    const double x_hi = spec_.anchor.x0 + spec_.sign * (range.hi - phi0_);
    if (spec_.sign > 0) {
        xa_ = x_lo;
        xb_ = x_hi;
        turn_a_ = lo.kind == EndKind::Turning;
        turn_b_ = hi.kind == EndKind::Turning;
    } else {
        xa_ = x_hi;
        xb_ = x_lo;
        turn_a_ = hi.kind == EndKind::Turning;
        turn_b_ = lo.kind == EndKind::Turning;
    }

    if (turn_a_ && turn_b_) {
        natural_period_ = true;
        period_ = 2.0 * (xb_ - xa_);
    } else if (spec_.period) {
        const Interval ext = extended_range();
        if (!(*spec_.period > 0.0) || !ext.finite() || ext.width() > *spec_.period * (1 + 1e-12)) {
            throw DomainError("Profile: declared period does not fit the extended domain");
        }
        period_ = spec_.period;
    }
}

double Profile::X(double u, int order) const {
    if (order == 0 && u_domain().contains(u)) return integral_->value(u);
    return eval_X(spec_.coeffs, spec_.kcase, u, order);
}

Interval Profile::extended_range() const noexcept {
    if (natural_period_) return {};
    const double lo = turn_a_ ? 2.0 * xa_ - xb_ : xa_;
    const double hi = turn_b_ ? 2.0 * xb_ - xa_ : xb_;
    return {lo, hi};
}

double Profile::coordinate_from_u(double u) const {
    return spec_.anchor.x0 + spec_.sign * integral_->integral_between(spec_.anchor.u0, u);
}

double Profile::u_from_coordinate(double x) const {
    if (std::isnan(x) || x < xa_ || x > xb_) {
        throw DomainError(std::string("coordinate ") + to_string(spec_.axis) + " = " +
                          std::to_string(x) + " is outside the primary branch [" +
                          std::to_string(xa_) + ", " + std::to_string(xb_) + "]");
    }
    try {
        return integral_->inverse(phi0_ + spec_.sign * (x - spec_.anchor.x0));
    } catch (const RangeError& e) {
        throw DomainError(e.what());
    }
}

std::pair<double, int> Profile::reduce(double x) const {
    if (!std::isfinite(x)) throw DomainError("profile evaluated at a non-finite coordinate");
    if (natural_period_) {
        const double L = xb_ - xa_;
        double t = x - xa_;
        t -= *period_ * std::floor(t / *period_);
        if (t <= L) return {std::min(xa_ + t, xb_), 1};
        return {std::max(xb_ - (t - L), xa_), -1};
    }
    const Interval ext = extended_range();
    double xr = x;
    if (period_) xr = x - *period_ * std::floor((x - ext.lo) / *period_);
    const bool inside = (xr > ext.lo || (xr == ext.lo && std::isfinite(xa_) && !turn_a_ && xr == xa_)) &&
                        (xr < ext.hi || (xr == ext.hi && std::isfinite(xb_) && !turn_b_ && xr == xb_));
    if (!inside) {
        throw DomainError(std::string("coordinate ") + to_string(spec_.axis) + " = " +
                          std::to_string(x) + " is outside the domain of the profile");
    }
    if (xr > xb_) return {std::max(2.0 * xb_ - xr, xa_), -1};
    if (xr < xa_) return {std::min(2.0 * xa_ - xr, xb_), -1};
    return {xr, 1};
}

ProfileJet Profile::evaluate(double x) const {
    const auto [xp, parity] = reduce(x);
    const double u = u_from_coordinate(xp);
    const double Xu = std::max(0.0, integral_->value(u));
    return {u, parity * spec_.sign * std::sqrt(Xu), 0.5 * eval_X(spec_.coeffs, spec_.kcase, u, 1)};
}

std::vector<double> Profile::coordinates_for_value(double u, std::optional<Interval> window) const {
    const double x = coordinate_from_u(u);
    std::vector<double> base{x};
    if (turn_b_) base.push_back(2.0 * xb_ - x);
    if (turn_a_ && !natural_period_) base.push_back(2.0 * xa_ - x);

    std::vector<double> out;
    if (period_ && window && window->finite()) {
        const double P = *period_;
        for (double b : base) {
            const double n_lo = std::ceil((window->lo - b) / P - 1e-12);
            const double n_hi = std::floor((window->hi - b) / P + 1e-12);
            for (double n = n_lo; n <= n_hi; n += 1.0) out.push_back(b + n * P);
        }
    } else {
        for (double b : base) {
            if (!window || window->contains(b)) out.push_back(b);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double l, double r) { return std::abs(l - r) <= 1e-12 * std::max(1.0, std::abs(l)); }),
              out.end());
    return out;
}

Profile Profile::rescaled(double lambda) const {
    if (!std::isfinite(lambda) || lambda == 0.0) {
        throw InvalidScale("scale factor must be finite and nonzero");
    }
    Spec s = spec_;
    const RowCoeffs r = spec_.coeffs;
    switch (spec_.kcase.kind()) {
        case CaseK::Kind::Positive:
            s.kcase = CaseK::positive(spec_.kcase.k() / std::abs(lambda));
            if (lambda < 0) s.coeffs = {r.a, r.c, r.b};
            break;
        case CaseK::Kind::Negative:
            s.kcase = CaseK::negative(spec_.kcase.k() / std::abs(lambda));
            if (lambda < 0) s.coeffs = {r.a, r.b, -r.c};
            break;
        case CaseK::Kind::Zero:
            s.coeffs = {r.a, r.b / lambda, r.c / (lambda * lambda)};
            break;
    }
    s.anchor = {lambda * spec_.anchor.x0, lambda * spec_.anchor.u0};
    s.u_hint = lambda * integral_->center();
    if (spec_.period && !natural_period_) s.period = std::abs(lambda) * *spec_.period;
    if (!spec_.closed_form.empty()) {
        s.closed_form = std::to_string(lambda) + "·[" + spec_.closed_form + "](x/" + std::to_string(lambda) + ")";
    }
    return Profile(std::move(s));
}

double derivative_identity_check(const std::function<double(double)>& f, const XEvaluator& x_of_u,
                                 std::span<const double> x_samples) {
    constexpr double h1 = 1e-5;
    constexpr double h2 = 1e-4;
    double worst = 0.0;
    for (double x : x_samples) {
        const double f0 = f(x);
        const double d1 = (f(x + h1) - f(x - h1)) / (2.0 * h1);
        auto second = [&](double h) { return (f(x + h) - 2.0 * f0 + f(x - h)) / (h * h); };
        const double d2 = (4.0 * second(h2) - second(2.0 * h2)) / 3.0;
        worst = std::max(worst, std::abs(d1 * d1 - x_of_u(f0, 0)));
        worst = std::max(worst, std::abs(2.0 * d2 - x_of_u(f0, 1)));
    }
    return worst;
}

double derivative_identity_check(const Profile& profile, std::span<const double> x_samples) {
    return derivative_identity_check([&](double x) { return profile.value(x); },
                                     [&](double u, int order) { return profile.X(u, order); }, x_samples);
}

// ─── elliptic kernels ────────────────────────────────────────────────────────

EllipticKernel v_kernel() noexcept { return {1.0, 0.0, -1.0, 1.0, 1.0}; }
EllipticKernel m_kernel() noexcept { return {-1.0, 0.0, 1.0, 0.0, 1.0}; }
EllipticKernel f_kernel() noexcept { return {1.0, -1.0, 1.0, 0.0, 1.0}; }
EllipticKernel g_kernel() noexcept { return {1.0, 1.0, 1.0, 0.0, 1.0}; }

EllipticKernel kernel_for_profile(const RowCoeffs& coeffs, const CaseK& kcase, double base_u) {
    if (kcase.kind() != CaseK::Kind::Positive) {
        throw DomainError("kernel_for_profile: only K > 0 profiles reduce to a quartic kernel");
    }
    const double k = kcase.k();
    return {coeffs.b, coeffs.a, coeffs.c, std::exp(0.5 * k * base_u), 2.0 / k};
}

namespace {

double quartic(const EllipticKernel& q, double t, int order) {
    switch (order) {
        case 0: return q.Q(t);
        case 1: return (4.0 * q.q4 * t * t + 2.0 * q.q2) * t;
        case 2: return 12.0 * q.q4 * t * t + 2.0 * q.q2;
        case 3: return 24.0 * q.q4 * t;
        case 4: return 24.0 * q.q4;
        default: return 0.0;
    }
}

std::vector<Root> quartic_roots(const EllipticKernel& q) {
    std::vector<Root> out;
    for (const Root& r : solve_quadratic(q.q4, q.q2, q.q0)) {
        if (r.at > 0.0) {
            const double t = std::sqrt(r.at);
            out.push_back({-t, r.multiplicity});
            out.push_back({t, r.multiplicity});
        } else if (r.at == 0.0) {
            out.push_back({0.0, 2 * r.multiplicity});
        }
    }
    std::sort(out.begin(), out.end(), [](const Root& l, const Root& r) { return l.at < r.at; });
    return out;
}

}  // namespace

EllipticIntegral::EllipticIntegral(const EllipticKernel& kernel) : kernel_(kernel) {
    if (!(kernel.scale != 0.0) || !std::isfinite(kernel.scale)) {
        throw DomainError("elliptic kernel scale must be finite and nonzero");
    }
    const auto roots = quartic_roots(kernel);
    const double t0 = kernel.base;
    double hint = t0;
    if (!(kernel.Q(t0) > 0.0)) {
        // base sits on a root: take the neighbouring interval where Q > 0
        double above = INFINITY, below = -INFINITY;
        for (const Root& r : roots) {
            if (r.at > t0) above = std::min(above, r.at);
            if (r.at < t0) below = std::max(below, r.at);
        }
        const double up = std::isfinite(above) ? 0.5 * (t0 + above) : t0 + 1.0;
        const double down = std::isfinite(below) ? 0.5 * (t0 + below) : t0 - 1.0;
        if (kernel.Q(up) > 0.0) {
            hint = up;
        } else if (kernel.Q(down) > 0.0) {
            hint = down;
        } else {
            throw DomainError("elliptic kernel: Q is not positive next to the base point");
        }
    }
    const bool conv = kernel.q4 > 0.0;
    const auto [lo, hi] = positivity_component(roots, hint, conv, conv);
    if (t0 == lo.at || t0 == hi.at) {
        const RadicalEnd& e = (t0 == lo.at) ? lo : hi;
        if (e.kind != EndKind::Turning) throw DomainError("elliptic kernel: base is a non-integrable end");
    }
    const double center = (t0 > lo.at && t0 < hi.at) ? t0 : hint;
    integral_ = std::make_unique<RadicalIntegral>(
        [k = kernel](double t, int order) { return quartic(k, t, order); }, lo, hi, center);
    base_offset_ = integral_->integral(t0);
}

Interval EllipticIntegral::range() const noexcept {
    const Interval r = integral_->range();
    const double lo = kernel_.scale * (r.lo - base_offset_);
    const double hi = kernel_.scale * (r.hi - base_offset_);
    return {std::min(lo, hi), std::max(lo, hi)};
}

double EllipticIntegral::forward(double t) const {
    return kernel_.scale * integral_->integral_between(kernel_.base, t);
}

double EllipticIntegral::inverse(double xi) const {
    return integral_->inverse(base_offset_ + xi / kernel_.scale);
}

double elliptic_forward(const EllipticKernel& kernel, double t) { return EllipticIntegral(kernel).forward(t); }

double elliptic_inverse(const EllipticKernel& kernel, double xi) { return EllipticIntegral(kernel).inverse(xi); }

const EllipticIntegral& v_integral() {
    static const EllipticIntegral e(v_kernel());
    return e;
}
const EllipticIntegral& m_integral() {
    static const EllipticIntegral e(m_kernel());
    return e;
}
const EllipticIntegral& f_integral() {
    static const EllipticIntegral e(f_kernel());
    return e;
}
const EllipticIntegral& g_integral() {
    static const EllipticIntegral e(g_kernel());
    return e;
}

double V(double xi) { return v_integral().inverse(xi); }
double M(double psi) { return m_integral().inverse(psi); }
double Fcal(double xi) { return f_integral().inverse(xi); }
double Gcal(double xi) { return g_integral().inverse(xi); }

double lemniscate_quarter() {
    static const double L = m_integral().forward(1.0);
    return L;
}

}  // namespace zmc
