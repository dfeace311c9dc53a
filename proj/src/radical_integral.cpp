#include "zmc/radical_integral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zmc/quadrature.hpp"

namespace zmc {

std::pair<RadicalEnd, RadicalEnd> positivity_component(const std::vector<Root>& roots, double hint,
                                                       bool lower_infinite_converges,
                                                       bool upper_infinite_converges) {
    RadicalEnd lo{-INFINITY, lower_infinite_converges ? EndKind::InfiniteConvergent
                                                      : EndKind::InfiniteDivergent};
    RadicalEnd hi{INFINITY, upper_infinite_converges ? EndKind::InfiniteConvergent
                                                     : EndKind::InfiniteDivergent};
    for (const Root& r : roots) {
        const EndKind kind = r.multiplicity >= 2 ? EndKind::DoubleZero : EndKind::Turning;
        if (r.at == hint) throw DomainError("positivity_component: hint lies on a root");
        if (r.at < hint && r.at > lo.at) lo = {r.at, kind};
        if (r.at > hint && r.at < hi.at) hi = {r.at, kind};
    }
    return {lo, hi};
}

RadicalIntegral::RadicalIntegral(Poly p, RadicalEnd lower, RadicalEnd upper, double center)
    : p_(std::move(p)), center_(center) {
    if (!(lower.at < center && center < upper.at)) {
        throw DomainError("RadicalIntegral: center " + std::to_string(center) +
                          " is not inside the interval");
    }
    if (!(p_(center, 0) > 0.0)) throw DomainError("RadicalIntegral: P(center) must be positive");

    halves_[0].dir = -1;
    halves_[0].end = lower;
    halves_[1].dir = 1;
    halves_[1].end = upper;
    for (Half& h : halves_) {
        if (std::isfinite(h.end.at)) {
            h.D = std::abs(h.end.at - center_);
            double factorial = 1.0;
            h.taylor[0] = 0.0;
            for (int n = 1; n <= kTaylorOrder; ++n) {
                factorial *= n;
                h.taylor[n] = p_(h.end.at, n) / factorial;
            }
            h.taylor_radius = taylor_radius(h);
        }
        switch (h.end.kind) {
            case EndKind::Turning:
                if (h.taylor[1] == 0.0) throw DomainError("RadicalIntegral: turning end with P'=0");
                h.root_D = std::sqrt(h.D);
                h.s_end = h.root_D;
                h.limit = 2.0 / std::sqrt(std::abs(h.taylor[1]));
                break;
            case EndKind::DoubleZero:
                if (h.taylor[2] == 0.0) throw DomainError("RadicalIntegral: double zero with P''=0");
                h.limit = 1.0 / std::sqrt(std::abs(h.taylor[2]));
                break;
            case EndKind::InfiniteDivergent:
            case EndKind::InfiniteConvergent:
                break;
        }
    }
    for (Half& h : halves_) {
        if (h.end.kind == EndKind::Turning || h.end.kind == EndKind::InfiniteConvergent) {
            h.total = half_integral(h, 0.0, h.s_end);
        }
    }
}

double RadicalIntegral::taylor_radius(const Half& h) {
    // Largest offset at which the two highest retained terms are below 1e-17 of the
    // leading one. Both are needed: odd or even functions such as sinh have every
    // other coefficient zero, and a vanishing last term says nothing about the next.
    int lead = 1;
    while (lead < kTaylorOrder && h.taylor[lead] == 0.0) ++lead;
    double r = 0.25 * h.D;
    for (int n = kTaylorOrder - 1; n <= kTaylorOrder; ++n) {
        const double t = std::abs(h.taylor[n]);
        if (t > 0.0 && lead < n) r = std::min(r, std::pow(1e-17 * std::abs(h.taylor[lead]) / t, 1.0 / (n - lead)));
    }
    return r;
}

double RadicalIntegral::value_near(const Half& h, double e) const {
    const double x = -h.dir * e;
    double sum = 0.0;
    for (int n = kTaylorOrder; n >= 1; --n) sum = (sum + h.taylor[n]) * x;
    return sum;
}

double RadicalIntegral::value_at_offset(const Half& h, double e) const {
    if (e < h.taylor_radius) return value_near(h, e);
    return p_(h.end.at - h.dir * e, 0);
}

double RadicalIntegral::value(double t) const {
    const Half& h = half_for(t);
    if (std::isfinite(h.end.at)) return value_at_offset(h, std::abs(h.end.at - t));
    return p_(t, 0);
}

double RadicalIntegral::integrand(const Half& h, double s) const {
    switch (h.end.kind) {
        case EndKind::Turning: {
            const double r = h.root_D - s;
            if (r <= 0.0) return h.limit;
            const double P = value_at_offset(h, r * r);
            if (!(P > 0.0)) return h.limit;
            return 2.0 * r / std::sqrt(P);
        }
        case EndKind::DoubleZero: {
            const double e = h.D * std::exp(-s);
            if (e == 0.0) return h.limit;
            const double P = value_at_offset(h, e);
            if (!(P > 0.0)) return h.limit;
            return e / std::sqrt(P);
        }
        case EndKind::InfiniteDivergent:
        case EndKind::InfiniteConvergent: {
            const double P = p_(center_ + h.dir * s, 0);
            if (std::isinf(P)) return 0.0;
            if (!(P > 0.0)) {
                throw DomainError("RadicalIntegral: P is not positive inside its interval at t=" +
                                  std::to_string(center_ + h.dir * s));
            }
            return 1.0 / std::sqrt(P);
        }
    }
    return 0.0;
}

double RadicalIntegral::s_of(const Half& h, double t) const {
    switch (h.end.kind) {
        case EndKind::Turning: {
            const double e = std::abs(h.end.at - t);
            return std::clamp(h.root_D - std::sqrt(e), 0.0, h.root_D);
        }
        case EndKind::DoubleZero: {
            const double e = std::abs(h.end.at - t);
            return std::max(0.0, std::log(h.D / e));
        }
        case EndKind::InfiniteDivergent:
        case EndKind::InfiniteConvergent:
            return std::abs(t - center_);
    }
    return 0.0;
}

double RadicalIntegral::t_of(const Half& h, double s) const {
    switch (h.end.kind) {
        case EndKind::Turning: {
            const double r = h.root_D - s;
            return h.end.at - h.dir * r * r;
        }
        case EndKind::DoubleZero:
            return h.end.at - h.dir * h.D * std::exp(-s);
        case EndKind::InfiniteDivergent:
        case EndKind::InfiniteConvergent:
            return center_ + h.dir * s;
    }
    return center_;
}

double RadicalIntegral::half_integral(const Half& h, double s0, double s1) const {
    if (s0 == s1) return 0.0;
    auto g = [&](double s) { return integrand(h, s); };
    if (std::isinf(s1)) return quad::integrate_to_infinity(g, s0).value;
    return quad::integrate(g, s0, s1).value;
}

void RadicalIntegral::check_inside(double t) const {
    if (std::isnan(t) || t < halves_[0].end.at || t > halves_[1].end.at) {
        throw DomainError("point " + std::to_string(t) + " lies outside the positivity interval (" +
                          std::to_string(halves_[0].end.at) + ", " +
                          std::to_string(halves_[1].end.at) + ")");
    }
}

double RadicalIntegral::integral(double t) const {
    check_inside(t);
    if (t == center_) return 0.0;
    const Half& h = half_for(t);
    if (t == h.end.at) {
        if (!h.end.integrable()) {
            throw DomainError("integral diverges at the end point " + std::to_string(t));
        }
        return h.dir * h.total;
    }
    return h.dir * half_integral(h, 0.0, s_of(h, t));
}

double RadicalIntegral::integral_between(double t0, double t1) const {
    check_inside(t0);
    check_inside(t1);
    const Half& h0 = half_for(t0);
    const Half& h1 = half_for(t1);
    if (&h0 == &h1 && t0 != h0.end.at && t1 != h1.end.at) {
        return h0.dir * half_integral(h0, s_of(h0, t0), s_of(h0, t1));
    }
    return integral(t1) - integral(t0);
}

double RadicalIntegral::inverse(double y) const {
    if (std::isnan(y)) throw RangeError("inverse: NaN argument");
    if (y == 0.0) return center_;
    const Half& h = y > 0.0 ? halves_[1] : halves_[0];
    const double target = std::abs(y);
    if (target >= h.total) {
        if (h.end.kind == EndKind::Turning && target <= h.total * (1.0 + 1e-14) + 1e-14) {
            return h.end.at;
        }
        throw RangeError("inverse: value " + std::to_string(y) + " outside the range (" +
                         std::to_string(-halves_[0].total) + ", " +
                         std::to_string(halves_[1].total) + ")");
    }

    // Bracket [a, b] in s with G(a) ≤ target ≤ G(b).
    double a = 0.0, Ga = 0.0;
    double b = h.s_end, Gb = h.total;
    if (!std::isfinite(b)) {
        double s = 1.0;
        double G = half_integral(h, 0.0, s);
        int doublings = 0;
        while (G < target) {
            a = s;
            Ga = G;
            const double next = 2.0 * s;
            G += half_integral(h, s, next);
            s = next;
            if (++doublings > 1100 || !std::isfinite(s)) {
                throw RangeError("inverse: could not bracket value " + std::to_string(y));
            }
        }
        b = s;
        Gb = G;
    }

    double cur = (target - Ga <= Gb - target) ? a : b;
    double Gcur = (cur == a) ? Ga : Gb;
    for (int iter = 0; iter < 200; ++iter) {
        const double slope = integrand(h, cur);
        double next = cur + (target - Gcur) / slope;
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        const double Gnext = Gcur + half_integral(h, cur, next);
        if (Gnext < target) {
            a = next;
            Ga = Gnext;
        } else {
            b = next;
            Gb = Gnext;
        }
        const bool done = std::abs(next - cur) <= 8e-16 * std::max(1.0, std::abs(next)) ||
                          Gnext == target || b - a <= 8e-16 * std::max(1.0, std::abs(b));
        cur = next;
        Gcur = Gnext;
        if (done) break;
    }
    if (std::abs(Gcur - target) > 1e-10 * std::max(1.0, target)) {
        throw NoConvergence("inverse: residual " + std::to_string(Gcur - target) +
                            " after safeguarded Newton");
    }
    return t_of(h, cur);
}

}  // namespace zmc
