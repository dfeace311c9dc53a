#include "zmc/core.hpp"

#include <algorithm>

namespace zmc {

const char* to_string(Axis a) noexcept {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
    }
    return "?";
}

bool Box::contains(const Vec3& p, double slack) const noexcept {
    for (int i = 0; i < 3; ++i) {
        if (p[i] < lo[i] - slack || p[i] > hi[i] + slack) return false;
    }
    return true;
}

double Box::diagonal() const noexcept {
    return std::hypot(hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]);
}

Interval Line::clip(const Box& box) const noexcept {
    Interval t{-INFINITY, INFINITY};
    for (int i = 0; i < 3; ++i) {
        const double d = direction[i];
        if (d == 0.0) {
            if (point[i] < box.lo[i] || point[i] > box.hi[i]) return {1.0, 0.0};
            continue;
        }
        double t0 = (box.lo[i] - point[i]) / d;
        double t1 = (box.hi[i] - point[i]) / d;
        if (t0 > t1) std::swap(t0, t1);
        t.lo = std::max(t.lo, t0);
        t.hi = std::min(t.hi, t1);
    }
    return t;
}

CaseK CaseK::positive(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("CaseK: k must be positive");
    return CaseK{Kind::Positive, k};
}

CaseK CaseK::negative(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("CaseK: k must be positive");
    return CaseK{Kind::Negative, k};
}

double CaseK::value() const noexcept {
    switch (kind_) {
        case Kind::Positive: return k_ * k_;
        case Kind::Negative: return -k_ * k_;
        case Kind::Zero: return 0.0;
    }
    return 0.0;
}

std::string to_string(const CaseK& c) {
    switch (c.kind()) {
        case CaseK::Kind::Positive: return "positive(k=" + std::to_string(c.k()) + ")";
        case CaseK::Kind::Negative: return "negative(k=" + std::to_string(c.k()) + ")";
        case CaseK::Kind::Zero: return "zero";
    }
    return "?";
}

CaseK::Kind parse_case_kind(std::string_view s) {
    if (s == "pos" || s == "positive") return CaseK::Kind::Positive;
    if (s == "neg" || s == "negative") return CaseK::Kind::Negative;
    if (s == "zero") return CaseK::Kind::Zero;
    throw DomainError("unknown case '" + std::string(s) + "' (expected pos, neg or zero)");
}

std::array<double, 9> ConstantsTriple::flat() const noexcept {
    return {a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]};
}

ConstantsTriple ConstantsTriple::from_flat(CaseK kcase, const std::array<double, 9>& v) noexcept {
    ConstantsTriple t;
    t.kcase = kcase;
    t.a = {v[0], v[1], v[2]};
    t.b = {v[3], v[4], v[5]};
    t.c = {v[6], v[7], v[8]};
    return t;
}

namespace {
constexpr std::array<std::string_view, 9> kConstantNames{"a1", "a2", "a3", "b1", "b2",
                                                         "b3", "c1", "c2", "c3"};
}

std::string_view constant_name(int flat_index) { return kConstantNames.at(flat_index); }

int constant_index(std::string_view name) {
    for (int i = 0; i < 9; ++i) {
        if (kConstantNames[i] == name) return i;
    }
    throw InvalidFreeze("unknown constant name '" + std::string(name) + "'");
}

CausalClass CausalClass::from_margin(double margin, double tol) noexcept {
    if (margin < -tol) return {CausalKind::Spacelike, margin};
    if (margin > tol) return {CausalKind::Timelike, margin};
    return {CausalKind::Lightlike, margin};
}

const char* to_string(CausalKind k) noexcept {
    switch (k) {
        case CausalKind::Spacelike: return "Spacelike";
        case CausalKind::Timelike: return "Timelike";
        case CausalKind::Lightlike: return "Lightlike";
    }
    return "?";
}

const char* to_string(ExpectedClass e) noexcept {
    switch (e) {
        case ExpectedClass::Spacelike: return "Spacelike";
        case ExpectedClass::Timelike: return "Timelike";
        case ExpectedClass::Mixed: return "Mixed";
    }
    return "?";
}

}  // namespace zmc
