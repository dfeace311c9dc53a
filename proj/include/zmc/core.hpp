#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zmc {

// ─── errors ───────────────────────────────────────────────────────────────────

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ZMC_DEFINE_ERROR(Name)                 \
    class Name : public Error {                \
    public:                                    \
        using Error::Error;                    \
    };

ZMC_DEFINE_ERROR(DomainError)
ZMC_DEFINE_ERROR(RangeError)
ZMC_DEFINE_ERROR(QuadratureFailure)
ZMC_DEFINE_ERROR(NoConvergence)
ZMC_DEFINE_ERROR(InvalidScale)
ZMC_DEFINE_ERROR(InvalidFreeze)
ZMC_DEFINE_ERROR(ParamOutOfRange)
ZMC_DEFINE_ERROR(OffSurface)
ZMC_DEFINE_ERROR(DegeneratePoint)
ZMC_DEFINE_ERROR(NoRoot)
ZMC_DEFINE_ERROR(AllSamplesDegenerate)
ZMC_DEFINE_ERROR(UnknownEntry)
ZMC_DEFINE_ERROR(EmptyLevelSet)
ZMC_DEFINE_ERROR(IOFailure)
ZMC_DEFINE_ERROR(ConstraintViolation)

#undef ZMC_DEFINE_ERROR

// ─── small vector types ──────────────────────────────────────────────────────

using Vec3 = std::array<double, 3>;

enum class Axis { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

inline constexpr int index(Axis a) noexcept { return static_cast<int>(a); }
const char* to_string(Axis a) noexcept;

struct Interval {
    double lo = -INFINITY;
    double hi = INFINITY;

    bool contains(double t) const noexcept { return t >= lo && t <= hi; }
    bool contains_open(double t) const noexcept { return t > lo && t < hi; }
    double width() const noexcept { return hi - lo; }
    bool finite() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }
};

struct Box {
    Vec3 lo{};
    Vec3 hi{};

    Interval along(Axis a) const noexcept { return {lo[index(a)], hi[index(a)]}; }
    bool contains(const Vec3& p, double slack = 0.0) const noexcept;
    double diagonal() const noexcept;
};

/// Parametric straight line point + t·direction.
struct Line {
    Vec3 point{};
    Vec3 direction{};

    Vec3 at(double t) const noexcept {
        return {point[0] + t * direction[0], point[1] + t * direction[1],
                point[2] + t * direction[2]};
    }
    /// Parameter interval of the part of the line inside `box` (empty if lo > hi).
    Interval clip(const Box& box) const noexcept;
};

// ─── the case constant K ─────────────────────────────────────────────────────

/// Sign class of K = X'''/X'. Positive means K = k², Negative means K = −k².
class CaseK {
public:
    enum class Kind { Positive, Zero, Negative };

    static CaseK positive(double k);
    static CaseK negative(double k);
    static CaseK zero() noexcept { return CaseK{Kind::Zero, 0.0}; }

    Kind kind() const noexcept { return kind_; }
    /// Zero for Kind::Zero.
    double k() const noexcept { return k_; }
    /// Signed value K (k², 0 or −k²).
    double value() const noexcept;

    bool operator==(const CaseK&) const = default;

private:
    CaseK(Kind kind, double k) : kind_(kind), k_(k) {}
    Kind kind_;
    double k_;
};

std::string to_string(const CaseK& c);
/// Parses "pos", "positive", "neg", "negative", "zero".
CaseK::Kind parse_case_kind(std::string_view s);

/// One (a_i, b_i, c_i) row: the coefficients of X, Y or Z.
struct RowCoeffs {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    bool operator==(const RowCoeffs&) const = default;
};

/// The nine solution constants together with the case constant.
struct ConstantsTriple {
    CaseK kcase = CaseK::zero();
    Vec3 a{};
    Vec3 b{};
    Vec3 c{};

    RowCoeffs row(Axis axis) const noexcept {
        const int i = index(axis);
        return {a[i], b[i], c[i]};
    }
    /// Flat view in the order a1 a2 a3 b1 b2 b3 c1 c2 c3.
    std::array<double, 9> flat() const noexcept;
    static ConstantsTriple from_flat(CaseK kcase, const std::array<double, 9>& v) noexcept;

    bool operator==(const ConstantsTriple&) const = default;
};

/// Name of the i-th flat entry ("a1" .. "c3").
std::string_view constant_name(int flat_index);
/// Inverse of constant_name; throws InvalidFreeze for unknown names.
int constant_index(std::string_view name);

// ─── causal character ────────────────────────────────────────────────────────

enum class CausalKind { Spacelike, Timelike, Lightlike };

struct CausalClass {
    CausalKind kind = CausalKind::Lightlike;
    /// (f'²+g'²−h'²)/(f'²+g'²+h'²); zero where the gradient vanishes.
    double margin = 0.0;

    /// Spacelike ⇔ margin < −tol, Timelike ⇔ margin > tol, else Lightlike.
    static CausalClass from_margin(double margin, double tol) noexcept;
};

const char* to_string(CausalKind k) noexcept;

/// What a catalog entry claims about its causal character off the lightlike loci.
enum class ExpectedClass { Spacelike, Timelike, Mixed };

const char* to_string(ExpectedClass e) noexcept;

/// Default classification tolerance on the normalized margin.
inline constexpr double kLightlikeTol = 1e-8;

}  // namespace zmc
