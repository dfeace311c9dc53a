#include "zmc/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "zmc/constraints.hpp"

namespace zmc {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

using Fn = std::function<double(double)>;

struct AxisDef {
    int sign = 1;
    Anchor anchor;
    std::optional<double> hint;
    std::optional<double> period;
    std::string text;
    Fn closed;
};

struct Built {
    ConstantsTriple k;
    std::array<AxisDef, 3> axes;
    std::optional<Box> box;
    ExpectedClass cls = ExpectedClass::Mixed;
    std::vector<Line> loci;
    std::string implicit;
    std::vector<PeriodClaim> periods;
    bool quadrature = true;
    /// False for family members whose causal class the source does not state.
    bool class_stated = true;
};

using Builder = Built (*)(const Params&);

struct Family {
    std::string name;
    std::string section;
    std::vector<ParamSpec> params;
    Builder build;
};

struct EntryDef {
    std::string name;
    std::vector<std::string> aliases;
    std::string family;
    Params fixed;
};

ConstantsTriple triple(CaseK kcase, Vec3 a, Vec3 b, Vec3 c) { return {kcase, a, b, c}; }

Box box(Vec3 lo, Vec3 hi) { return {lo, hi}; }

Line line(Vec3 p, Vec3 d) { return {p, d}; }

bool is(double v, double target) { return std::abs(v - target) <= 1e-14 * std::max(1.0, std::abs(target)); }

const Fn log_sinh = [](double t) { return std::log(std::sinh(t)); };
const Fn neg_log_sinh = [](double t) { return -std::log(std::sinh(t)); };
const Fn log_cosh = [](double t) { return std::log(std::cosh(t)); };
const Fn neg_log_cosh = [](double t) { return -std::log(std::cosh(t)); };
const Fn log_sin = [](double t) { return std::log(std::sin(t)); };
const Fn neg_log_sin = [](double t) { return -std::log(std::sin(t)); };

// log V(|z|/√2): the positive-K profile with Z(w) = sinh(2w).
const Fn log_V = [](double z) { return std::log(V(std::abs(z) / kSqrt2)); };

// log M(y/√2) continued by reflection across its maximum at y = √2·L and with period 4√2·L.
const Fn log_M = [](double y) {
    const double L = lemniscate_quarter();
    double psi = y / kSqrt2;
    psi -= 4 * L * std::floor(psi / (4 * L));
    if (psi > 2 * L) return std::nan("");
    if (psi > L) psi = 2 * L - psi;
    return std::log(M(psi));
};

const Fn lifted_atan_sinh_sqrt2 = [](double t) { return kPi / 2 + 2 * std::atan(std::sinh(t / kSqrt2)); };

// ─── K = 0 ───────────────────────────────────────────────────────────────────

Built exp_same_sign(const Params& p) {
    const double c1 = p.at("c1"), c2 = p.at("c2");
    if (!(c1 > 0 && c2 > 0)) throw ParamOutOfRange("c1 and c2 must be positive");
    const double c3 = c1 * c2 / (c1 + c2);
    const double r1 = std::sqrt(c1), r2 = std::sqrt(c2), r3 = std::sqrt(c3);
    Built b;
    b.k = triple(CaseK::zero(), {0, 0, 0}, {0, 0, 0}, {c1, c2, c3});
    b.axes[0] = {1, {0, 1}, {}, {}, "exp(√c1·x)", [r1](double x) { return std::exp(r1 * x); }};
    b.axes[1] = {1, {0, 1}, {}, {}, "exp(√c2·y)", [r2](double y) { return std::exp(r2 * y); }};
    b.axes[2] = {-1, {0, -1}, {}, {}, "−exp(√c3·z)", [r3](double z) { return -std::exp(r3 * z); }};
    const double zmax = std::log(std::exp(2 * r1) + std::exp(2 * r2)) / r3;
    const double zmin = std::log(std::exp(-2 * r1) + std::exp(-2 * r2)) / r3;
    b.box = box({-2, -2, std::floor(2 * zmin) / 2 - 0.5}, {2, 2, std::ceil(2 * zmax) / 2});
    b.cls = ExpectedClass::Timelike;
    // c1·u = c2·v, i.e. √c1·x + log c1 = √c2·y + log c2
    b.loci.push_back(line({0, (std::log(c1) - std::log(c2)) / r2, (std::log(c1 + c2) - std::log(c2)) / r3},
                          {1, r1 / r2, r1 / r3}));
    b.implicit = "exp(√c1·x) + exp(√c2·y) = exp(√c3·z)";
    return b;
}

Built exp_opposite_sign(const Params&) {
    Built b;
    b.k = triple(CaseK::zero(), {0, 0, 0}, {0, 0, 0}, {1, 1, 0.5});
    b.axes[0] = {1, {0, 1}, {}, {}, "exp(x)", [](double x) { return std::exp(x); }};
    b.axes[1] = {-1, {0, -1}, {}, {}, "−exp(y)", [](double y) { return -std::exp(y); }};
    b.axes[2] = {1, {0, 1}, {}, {}, "exp(z/√2)", [](double z) { return std::exp(z / kSqrt2); }};
    b.box = box({-2, -2, -2}, {2, 3, 2});
    b.cls = ExpectedClass::Timelike;
    b.implicit = "exp(x) − exp(y) + exp(z/√2) = 0";
    return b;
}

Built sin_triple(const Params& p) {
    const double beta2 = p.at("beta2");
    if (!(beta2 > 0)) throw ParamOutOfRange("beta2 must be positive (alpha² = 1 + beta²)");
    const double alpha2 = 1 + beta2;
    const double al = std::sqrt(alpha2), be = std::sqrt(beta2);
    Built b;
    b.k = triple(CaseK::zero(), {alpha2 * beta2, alpha2 * beta2 * beta2, alpha2 * alpha2 * beta2}, {0, 0, 0},
                 {-alpha2 * beta2, -alpha2, -beta2});
    b.axes[0] = {1, {0, 0}, {}, {}, "sin(αβx)", [=](double x) { return std::sin(al * be * x); }};
    b.axes[1] = {1, {0, 0}, {}, {}, "β²sin(αy)", [=](double y) { return beta2 * std::sin(al * y); }};
    b.axes[2] = {1, {0, 0}, {}, {}, "α²sin(βz)", [=](double z) { return alpha2 * std::sin(be * z); }};
    b.box = box({-kPi / (al * be), -kPi / al, -kPi / be}, {kPi / (al * be), kPi / al, kPi / be});
    b.cls = ExpectedClass::Spacelike;
    // lightlike where g = β²·f, i.e. y = βx or y = π/α − βx
    b.loci.push_back(line({0, 0, 0}, {1, be, -al}));
    b.loci.push_back(line({0, 0, kPi / be}, {1, be, al}));
    b.loci.push_back(line({0, kPi / al, 0}, {1, -be, -al}));
    b.loci.push_back(line({0, kPi / al, -kPi / be}, {1, -be, al}));
    b.implicit = "sin(αβx) + β²sin(αy) + α²sin(βz) = 0";
    b.periods = {{Axis::X, 2 * kPi / (al * be)}, {Axis::Y, 2 * kPi / al}, {Axis::Z, 2 * kPi / be}};
    return b;
}

Built cosh_triple(const Params& p) {
    const double beta2 = p.at("beta2");
    if (!(beta2 > 0)) throw ParamOutOfRange("beta2 must be positive (alpha² = 1 + beta²)");
    const double alpha2 = 1 + beta2;
    const double al = std::sqrt(alpha2), be = std::sqrt(beta2);
    Built b;
    b.k = triple(CaseK::zero(), {-alpha2 * beta2, -alpha2 * beta2 * beta2, -alpha2 * alpha2 * beta2}, {0, 0, 0},
                 {alpha2 * beta2, alpha2, beta2});
    // each anchor sits on a root of its row, so the hints step into the positive side
    b.axes[0] = {1, {0, 1}, 1.001, {}, "cosh(αβx)", [=](double x) { return std::cosh(al * be * x); }};
    b.axes[1] = {1, {0, beta2}, 1.001 * beta2, {}, "β²cosh(αy)",
                 [=](double y) { return beta2 * std::cosh(al * y); }};
    b.axes[2] = {-1, {0, -alpha2}, -1.001 * alpha2, {}, "−α²cosh(βz)",
                 [=](double z) { return -alpha2 * std::cosh(be * z); }};
    b.box = box({-2.1 / (al * be), -2.1 / al, -2.5 / be}, {2.1 / (al * be), 2.1 / al, 2.5 / be});
    b.cls = ExpectedClass::Timelike;
    for (double sy : {1.0, -1.0}) {
        for (double sz : {1.0, -1.0}) b.loci.push_back(line({0, 0, 0}, {1, sy * be, sz * al}));
    }
    b.implicit = "cosh(αβx) + β²cosh(αy) − α²cosh(βz) = 0";
    return b;
}

Built sinh_pair(const Params& p) {
    const double a = p.at("a"), c = p.at("c");
    if (!(a > 0 && c > 0)) throw ParamOutOfRange("a and c must be positive");
    const double s = std::sqrt(a / (2 * c)), r = std::sqrt(2 * c);
    const double sz = std::sqrt(2 * a / c), rz = std::sqrt(c);
    Built b;
    b.k = triple(CaseK::zero(), {a, a, 2 * a}, {0, 0, 0}, {2 * c, 2 * c, c});
    b.axes[0] = {1, {0, 0}, {}, {}, "√(a/2c)·sinh(√(2c)x)", [=](double x) { return s * std::sinh(r * x); }};
    b.axes[1] = {1, {0, 0}, {}, {}, "√(a/2c)·sinh(√(2c)y)", [=](double y) { return s * std::sinh(r * y); }};
    b.axes[2] = {1, {0, 0}, {}, {}, "√(2a/c)·sinh(√c·z)", [=](double z) { return sz * std::sinh(rz * z); }};
    const double e = 2 / std::sqrt(c);
    b.box = box({-e, -e, -1.6 * e}, {e, e, 1.6 * e});
    b.cls = ExpectedClass::Timelike;
    b.loci.push_back(line({0, 0, 0}, {1, 1, -kSqrt2}));
    b.implicit = "sinh(√2x) + sinh(√2y) + 2sinh(z) = 0 (a = c = 1)";
    return b;
}

Built sin_pair(const Params&) {
    Built b;
    b.k = triple(CaseK::zero(), {1, 1, 2}, {0, 0, 0}, {-2, -2, -1});
    const Fn f = [](double t) { return std::sin(kSqrt2 * t) / kSqrt2; };
    b.axes[0] = {1, {0, 0}, {}, {}, "sin(√2x)/√2", f};
    b.axes[1] = {1, {0, 0}, {}, {}, "sin(√2y)/√2", f};
    b.axes[2] = {1, {0, 0}, {}, {}, "√2·sin(z)", [](double z) { return kSqrt2 * std::sin(z); }};
    const double q = kPi / kSqrt2;
    b.box = box({-q, -q, -kPi}, {q, q, kPi});
    b.cls = ExpectedClass::Spacelike;
    b.loci = {line({0, 0, 0}, {1, 1, -kSqrt2}), line({0, 0, kPi}, {1, 1, kSqrt2}),
              line({0, q, 0}, {1, -1, -kSqrt2}), line({0, q, -kPi}, {1, -1, kSqrt2})};
    b.implicit = "sin(√2x) + sin(√2y) + 2sin(z) = 0";
    return b;
}

Built cosh_pair(const Params&) {
    Built b;
    b.k = triple(CaseK::zero(), {-1, -1, -2}, {0, 0, 0}, {2, 2, 1});
    const Fn f = [](double t) { return std::cosh(kSqrt2 * t) / kSqrt2; };
    b.axes[0] = {1, {0, 1 / kSqrt2}, {1.0}, {}, "cosh(√2x)/√2", f};
    b.axes[1] = {1, {0, 1 / kSqrt2}, {1.0}, {}, "cosh(√2y)/√2", f};
    b.axes[2] = {-1, {0, -kSqrt2}, {-2.0}, {}, "−√2·cosh(z)", [](double z) { return -kSqrt2 * std::cosh(z); }};
    b.box = box({-1.5, -1.5, -2.5}, {1.5, 1.5, 2.5});
    b.cls = ExpectedClass::Timelike;
    for (double sy : {1.0, -1.0}) {
        for (double sz : {1.0, -1.0}) b.loci.push_back(line({0, 0, 0}, {1, sy, sz * kSqrt2}));
    }
    b.implicit = "cosh(√2x) + cosh(√2y) − 2cosh(z) = 0";
    return b;
}

// ─── K > 0, elementary profiles ──────────────────────────────────────────────

const AxisDef kLogSinh{1, {std::asinh(1.0), 0}, {}, {}, "log(sinh)", log_sinh};
const AxisDef kNegLogSinh{-1, {std::asinh(1.0), 0}, {}, {}, "−log(sinh)", neg_log_sinh};
const AxisDef kLogCosh{1, {0, 0}, {1.0}, {}, "log(cosh)", log_cosh};
const AxisDef kNegLogCosh{-1, {0, 0}, {-1.0}, {}, "−log(cosh)", neg_log_cosh};
const AxisDef kLogSin{1, {kPi / 2, 0}, {-1.0}, {2 * kPi}, "log(sin)", log_sin};
const AxisDef kNegLogSin{-1, {kPi / 2, 0}, {1.0}, {2 * kPi}, "−log(sin)", neg_log_sin};

double require_unit(const Params& p) {
    const double m = p.at("m");
    if (!is(m, 1) && !is(m, -1)) throw ParamOutOfRange("m must be 1 or -1");
    return m;
}

Built quad_411(const Params& p) {
    const double m = require_unit(p);
    Built b;
    b.k = triple(CaseK::positive(2), {1, 1, 1}, {0, 0, -m}, {1, m, 0});
    b.axes[0] = kLogSinh;
    if (m > 0) {
        b.axes[1] = kLogSinh;
        b.axes[2] = kNegLogCosh;
        b.box = box({0.1, 0.1, -3}, {3, 3, 3});
        b.implicit = "sinh(x)sinh(y)=cosh(z)";
    } else {
        b.axes[1] = kLogCosh;
        b.axes[2] = kNegLogSinh;
        b.box = box({0.1, -2, 0.1}, {3, 2, 4.5});
        b.loci.push_back(line({0, 0, 0}, {1, 0, 1}));
        b.implicit = "sinh(x)cosh(y)=sinh(z)";
    }
    b.cls = ExpectedClass::Timelike;
    return b;
}

Built quad_412(const Params& p) {
    const double m = require_unit(p);
    Built b;
    b.k = triple(CaseK::positive(2), {1, 1, 1}, {0, 0, m}, {-1, m, 0});
    b.axes[0] = kLogCosh;
    if (m > 0) {
        b.axes[1] = kLogSinh;
        b.axes[2] = kNegLogSinh;
        b.box = box({-2, 0.1, 0.1}, {2, 3, 4.5});
        b.loci.push_back(line({0, 0, 0}, {0, 1, 1}));
        b.implicit = "cosh(x)sinh(y)=sinh(z)";
    } else {
        b.axes[1] = kLogCosh;
        b.axes[2] = kNegLogCosh;
        b.box = box({-2, -2, -4}, {2, 2, 4});
        b.loci = {line({0, 0, 0}, {0, 1, 1}), line({0, 0, 0}, {0, 1, -1}), line({0, 0, 0}, {1, 0, 1}),
                  line({0, 0, 0}, {1, 0, -1})};
        b.implicit = "cosh(x)cosh(y)=cosh(z)";
    }
    b.cls = ExpectedClass::Timelike;
    return b;
}

Built scherk_spacelike(const Params&) {
    Built b;
    b.k = triple(CaseK::positive(2), {-1, -1, -1}, {0, 0, 1}, {1, 1, 0});
    b.axes = {kLogSin, kLogSin, kNegLogSin};
    b.box = box({0.05, 0.05, 0.05}, {kPi - 0.05, kPi - 0.05, kPi - 0.05});
    b.cls = ExpectedClass::Spacelike;
    b.loci = {line({kPi / 2, 0, 0}, {0, 1, 1}), line({kPi / 2, 0, kPi}, {0, 1, -1}),
              line({0, kPi / 2, 0}, {1, 0, 1}), line({0, kPi / 2, kPi}, {1, 0, -1})};
    b.implicit = "sin(x)sin(y)=sin(z)";
    b.periods = {{Axis::X, 2 * kPi}, {Axis::Y, 2 * kPi}};
    return b;
}

Built helicoid_elliptic(const Params&) {
    Built b;
    b.k = triple(CaseK::positive(2), {0, 0, 2}, {1, 0, 1}, {0, 1, 1});
    b.axes[0] = {1, {-1, 0}, {}, {}, "−log(−x)", [](double x) { return -std::log(-x); }};
    b.axes[1] = {1, {1, 0}, {}, {}, "log(y)", [](double y) { return std::log(y); }};
    b.axes[2] = {1, {kPi / 4, 0}, {}, {}, "log(tan(z))", [](double z) { return std::log(std::tan(z)); }};
    b.box = box({-3, 0.05, 0.05}, {-0.05, 3, kPi / 2 - 0.05});
    b.cls = ExpectedClass::Mixed;
    b.implicit = "x=−y·tan(z)";
    return b;
}

Built helicoid_hyperbolic(const Params&) {
    Built b;
    b.k = triple(CaseK::positive(2), {0, -2, 0}, {1, 1, 0}, {0, 1, 1});
    b.axes[0] = {1, {-1, 0}, {}, {}, "−log(−x)", [](double x) { return -std::log(-x); }};
    b.axes[1] = {-1, {-1, std::log(std::tanh(1.0))}, {}, {}, "log(−tanh(y))",
                 [](double y) { return std::log(-std::tanh(y)); }};
    b.axes[2] = {1, {1, 0}, {}, {}, "log(z)", [](double z) { return std::log(z); }};
    b.box = box({-3, -3, 0.05}, {-0.05, -0.05, 3});
    b.cls = ExpectedClass::Timelike;
    b.implicit = "x=z·tanh(y)";
    return b;
}

Built tanh_triple(const Params&) {
    Built b;
    b.k = triple(CaseK::positive(2), {-2, -2, -1}, {1, 1, 0.5}, {1, 1, 0.5});
    const Fn lt = [](double t) { return std::log(std::tanh(t)); };
    b.axes[0] = {1, {1, std::log(std::tanh(1.0))}, {}, {}, "log(tanh(x))", lt};
    b.axes[1] = {1, {1, std::log(std::tanh(1.0))}, {}, {}, "log(tanh(y))", lt};
    b.axes[2] = {-1, {kSqrt2, -std::log(std::tanh(1.0))}, {}, {}, "−log(tanh(z/√2))",
                 [](double z) { return -std::log(std::tanh(z / kSqrt2)); }};
    b.box = box({0.05, 0.05, 0.02}, {3, 3, 4});
    b.cls = ExpectedClass::Mixed;
    b.implicit = "tanh(x)tanh(y)=tanh(z/√2)";
    return b;
}

// ─── K > 0 with one elliptic profile ─────────────────────────────────────────

Built family_421(const Params& p) {
    const double m = p.at("m");
    if (!(m > 0)) {
        throw ParamOutOfRange("m must be positive: for m <= 0, Z(w) = (2m-1) + m e^{2w} + (m-1) e^{-2w} is never positive");
    }
    Built b;
    b.k = triple(CaseK::positive(2), {1, -1, 2 * m - 1}, {0, 1, m}, {1, 0, m - 1});
    b.axes[0] = kLogSinh;
    b.axes[1] = kNegLogSin;
    b.cls = ExpectedClass::Timelike;
    b.implicit = "log(sinh(x)) − log(sin(y)) + h(z) = 0";
    if (m < 1) {
        const double wstar = 0.5 * std::log((1 - m) / m);
        b.axes[2] = {1, {0, wstar}, {wstar + 1}, {}, "turning at z = 0", {}};
        b.quadrature = false;
        b.box = box({0.02, 0.05, -1.8}, {1.5, kPi - 0.05, 1.8});
        b.class_stated = false;
        if (is(m, 0.5)) {
            b.class_stated = true;
            b.axes[2].text = "log(V(|z|/√2))";
            b.axes[2].closed = log_V;
            b.implicit = "sinh(x)V(z/√2)=sin(y)";
        }
    } else if (is(m, 1)) {
        b.axes[2] = kNegLogSinh;
        b.box = box({0.05, 0.05, 0.05}, {3, kPi - 0.05, 4});
        b.loci.push_back(line({0, kPi / 2, 0}, {1, 0, 1}));
        b.implicit = "sinh(x)=sin(y)sinh(z)";
        b.periods = {{Axis::Y, 2 * kPi}};
    } else {
        b.axes[2] = {-1, {0, 0}, {}, {}, "elliptic", {}};
        b.quadrature = false;
        b.class_stated = false;
    }
    return b;
}

Built family_422(const Params& p) {
    const double m = p.at("m");
    const double L = lemniscate_quarter();
    Built b;
    b.k = triple(CaseK::positive(2), {1, 1 - 2 * m, 1}, {1, m - 1, 0}, {0, m, 1});
    b.axes[0] = kNegLogSinh;
    b.axes[2] = kLogSinh;
    b.cls = ExpectedClass::Timelike;
    b.implicit = "−log(sinh(x)) + g(y) + log(sinh(z)) = 0";
    if (is(m, 0)) {
        b.axes[1] = kNegLogCosh;
        b.box = box({0.1, -2, 0.1}, {3, 2, 4.5});
        b.loci.push_back(line({0, 0, 0}, {1, 0, 1}));
        b.implicit = "sinh(x)cosh(y)=sinh(z)";
    } else if (is(m, 1)) {
        b.axes[1] = kLogSin;
        b.box = box({0.05, 0.05, 0.05}, {3, kPi - 0.05, 4.5});
        b.loci.push_back(line({0, kPi / 2, 0}, {1, 0, 1}));
        b.implicit = "sinh(x)=sin(y)sinh(z)";
        b.periods = {{Axis::Y, 2 * kPi}};
    } else if (is(m, 0.5)) {
        b.axes[1] = {1, {kSqrt2 * L, 0}, {-1.0}, {4 * kSqrt2 * L}, "log(M(y/√2))", log_M};
        b.quadrature = false;
        b.box = box({0.05, 0.05, 0.05}, {3, 2 * kSqrt2 * L - 0.05, 4.5});
        b.loci.push_back(line({0, kSqrt2 * L, 0}, {1, 0, 1}));
        b.implicit = "sinh(z)M(y/√2)=sinh(x)";
        b.periods = {{Axis::Y, 4 * kSqrt2 * L}};
    } else {
        b.axes[1] = {-1, {0, 0}, {-1e-3}, {}, "elliptic", {}};
        b.quadrature = false;
        b.class_stated = false;
    }
    return b;
}

Built family_423a(const Params& p) {
    const double m = p.at("m");
    Built b;
    b.k = triple(CaseK::positive(2), {-1, 1, m}, {0, -1, (1 - m) / 2}, {1, 0, (-1 - m) / 2});
    b.axes[0] = kLogSin;
    b.axes[1] = kNegLogCosh;
    b.implicit = "log(sin(x)) − log(cosh(y)) + h(z) = 0";
    b.cls = ExpectedClass::Mixed;
    if (is(m, 1)) {
        b.axes[2] = {1, {0, 0}, {}, {}, "log(cosh)", log_cosh};
        b.box = box({0.05, -2, -2.5}, {kPi - 0.05, 2, 2.5});
        b.loci = {line({kPi / 2, 0, 0}, {0, 1, 1}), line({kPi / 2, 0, 0}, {0, 1, -1})};
        b.cls = ExpectedClass::Timelike;
        b.implicit = "sin(x)cosh(z)=cosh(y)";
    } else {
        b.axes[2] = {1, {0, 0}, {1e-3}, {}, "elliptic", {}};
        b.quadrature = false;
        b.class_stated = is(m, 0);
        if (is(m, 0)) {
            b.axes[2].text = "log(V(|z|/√2))";
            b.axes[2].closed = log_V;
            b.box = box({0.05, -2, -1.8}, {kPi - 0.05, 2, 1.8});
            b.implicit = "sin(x)V(z/√2)=cosh(y)";
        }
    }
    return b;
}

Built family_423b(const Params& p) {
    const double m = p.at("m");
    const double L = lemniscate_quarter();
    Built b;
    b.k = triple(CaseK::positive(2), {-1, m, -1}, {0, -(m + 1) / 2, 1}, {1, (1 - m) / 2, 0});
    b.axes[0] = kLogSin;
    b.axes[2] = kNegLogSin;
    b.implicit = "log(sin(x)) + g(y) − log(sin(z)) = 0";
    b.cls = ExpectedClass::Spacelike;
    if (is(m, 1)) {
        b.axes[1] = kNegLogCosh;
        b.box = box({0.05, -2, 0.05}, {kPi - 0.05, 2, kPi - 0.05});
        b.loci = {line({0, 0, 0}, {1, 0, 1}), line({0, 0, kPi}, {1, 0, -1})};
        b.implicit = "sin(x)=cosh(y)sin(z)";
    } else if (is(m, 0)) {
        b.axes[1] = {1, {kSqrt2 * L, 0}, {-1.0}, {4 * kSqrt2 * L}, "log(M(y/√2))", log_M};
        b.quadrature = false;
        b.box = box({0.05, 0.05, 0.05}, {kPi - 0.05, 2 * kSqrt2 * L - 0.05, kPi - 0.05});
        b.loci = {line({0, kSqrt2 * L, 0}, {1, 0, 1}), line({0, kSqrt2 * L, kPi}, {1, 0, -1})};
        b.implicit = "sin(x)M(y/√2)=sin(z)";
        b.periods = {{Axis::Y, 4 * kSqrt2 * L}};
    } else {
        b.axes[1] = {-1, {0, 0}, {-1e-3}, {}, "elliptic", {}};
        b.quadrature = false;
        b.class_stated = false;
    }
    return b;
}

Built family_43(const Params& p) {
    const double m = p.at("m");
    const double m2 = m * m;
    Built b;
    b.k = triple(CaseK::positive(2), {1 - 2 * m2, -1, 1}, {m2 * m2, 1, 1}, {1, m2, m2});
    b.quadrature = false;
    b.cls = ExpectedClass::Mixed;
    if (is(m, 1)) {
        const double xf = f_integral().forward(1.0);
        const double xg = g_integral().forward(1.0);
        const Fn lf = [](double t) { return std::log(Fcal(t)); };
        b.axes[0] = {1, {xf, 0}, {}, {}, "log(𝓕(x))", lf};
        b.axes[1] = {1, {xf, 0}, {}, {}, "log(𝓕(y))", lf};
        b.axes[2] = {1, {xg, 0}, {}, {}, "log(𝓖(z))", [](double t) { return std::log(Gcal(t)); }};
        b.implicit = "𝓕(x)𝓕(y)𝓖(z)=1";
    } else {
        b.axes[0] = {1, {0, 0.5}, {0.5}, {}, "elliptic", {}};
        b.axes[1] = {1, {0, 0.5}, {0.5}, {}, "elliptic", {}};
        b.axes[2] = {1, {0, 0.5}, {0.5}, {}, "elliptic", {}};
        b.implicit = "f(x) + g(y) + h(z) = 0 with quartic elliptic profiles";
        b.class_stated = false;
    }
    return b;
}

// ─── K < 0 ───────────────────────────────────────────────────────────────────

Built kneg_1(const Params&) {
    Built b;
    b.k = triple(CaseK::negative(1), {1, 1, 0.5}, {0, 0, 0.5}, {1, 1, 0});
    b.axes[0] = {1, {0, kPi / 2}, {}, {}, "π/2 + 2·atan(sinh(x/√2))", lifted_atan_sinh_sqrt2};
    b.axes[1] = {1, {0, kPi / 2}, {}, {}, "π/2 + 2·atan(sinh(y/√2))", lifted_atan_sinh_sqrt2};
    b.axes[2] = {1, {0, 0}, {}, {}, "2·atan(sinh(z/2))", [](double z) { return 2 * std::atan(std::sinh(z / 2)); }};
    b.box = box({-4, -4, -6}, {4, 4, 6});
    b.cls = ExpectedClass::Timelike;
    b.implicit = "(sinh(x/√2)sinh(y/√2)−1)/(sinh(x/√2)+sinh(y/√2))=−sinh(z/2)";
    return b;
}

Built kneg_2(const Params&) {
    Built b;
    b.k = triple(CaseK::negative(1), {0.5, 1, 1.0 / 3}, {0.5, 0, 0}, {0, 1, 1.0 / 3});
    b.axes[0] = {1, {0, 0}, {}, {}, "2·atan(sinh(x/2))", [](double x) { return 2 * std::atan(std::sinh(x / 2)); }};
    b.axes[1] = {1, {0, kPi / 2}, {}, {}, "π/2 + 2·atan(sinh(y/√2))", lifted_atan_sinh_sqrt2};
    const double r6 = std::sqrt(6.0);
    b.axes[2] = {1, {0, kPi / 2}, {}, {}, "π/2 + 2·atan(sinh(z/√6))",
                 [r6](double z) { return kPi / 2 + 2 * std::atan(std::sinh(z / r6)); }};
    b.box = box({-6, -4, -8}, {6, 4, 8});
    b.cls = ExpectedClass::Timelike;
    b.implicit = "(sinh(y/√2)sinh(z/√6)−1)/(sinh(y/√2)+sinh(z/√6))=−sinh(x/2)";
    return b;
}

const std::vector<Family>& families() {
    static const std::vector<Family> f = {
        {"3.1-exp-same-sign", "3.1", {{"c1", 1, "c1 > 0"}, {"c2", 1, "c2 > 0"}}, exp_same_sign},
        {"3.1-exp-opposite-sign", "3.1", {}, exp_opposite_sign},
        {"3.2-sin", "3.2", {{"beta2", 1, "beta2 > 0, alpha2 = 1 + beta2"}}, sin_triple},
        {"3.2-cosh", "3.2", {{"beta2", 1, "beta2 > 0, alpha2 = 1 + beta2"}}, cosh_triple},
        {"3.3-sinh", "3.3", {{"a", 1, "a > 0"}, {"c", 1, "c > 0"}}, sinh_pair},
        {"3.3-sin", "3.3", {}, sin_pair},
        {"3.3-cosh", "3.3", {}, cosh_pair},
        {"4.1.1", "4.1.1", {{"m", 1, "m = ±1"}}, quad_411},
        {"4.1.2", "4.1.2", {{"m", 1, "m = ±1"}}, quad_412},
        {"scherk-spacelike", "4.1.2", {}, scherk_spacelike},
        {"helicoid-elliptic", "4.1.3", {}, helicoid_elliptic},
        {"helicoid-hyperbolic", "4.1.3", {}, helicoid_hyperbolic},
        {"4.1.4", "4.1.4", {}, tanh_triple},
        {"4.2.1", "4.2.1", {{"m", 1, "m > 0 (Z positive)"}}, family_421},
        {"4.2.2", "4.2.2", {{"m", 0.5, "any real m"}}, family_422},
        {"4.2.3a", "4.2.3", {{"m", 1, "any real m"}}, family_423a},
        {"4.2.3b", "4.2.3", {{"m", 1, "any real m"}}, family_423b},
        {"4.3", "4.3", {{"m", 1, "any real m"}}, family_43},
        {"k-neg-example-1", "5.1", {}, kneg_1},
        {"k-neg-example-2", "5.2", {}, kneg_2},
    };
    return f;
}

const std::vector<EntryDef>& entries() {
    static const std::vector<EntryDef> e = {
        {"3.1-exp-same-sign", {"exp-same-sign"}, "3.1-exp-same-sign", {}},
        {"3.1-exp-opposite-sign", {"exp-opposite-sign"}, "3.1-exp-opposite-sign", {}},
        {"3.2-sin", {"sin-triple"}, "3.2-sin", {}},
        {"3.2-cosh", {"cosh-triple"}, "3.2-cosh", {}},
        {"3.3-sinh", {}, "3.3-sinh", {}},
        {"3.3-sin", {}, "3.3-sin", {}},
        {"3.3-cosh", {}, "3.3-cosh", {}},
        {"4.1.1-m1", {}, "4.1.1", {{"m", 1}}},
        {"4.1.1-m-1", {"scherk-timelike-second-kind"}, "4.1.1", {{"m", -1}}},
        {"4.1.2-m1", {}, "4.1.2", {{"m", 1}}},
        {"scherk-timelike", {"4.1.2-m-1", "scherk-timelike-first-kind"}, "4.1.2", {{"m", -1}}},
        {"scherk-spacelike", {}, "scherk-spacelike", {}},
        {"helicoid-elliptic", {"4.1.3-elliptic-helicoid"}, "helicoid-elliptic", {}},
        {"helicoid-hyperbolic", {"4.1.3-hyperbolic-helicoid"}, "helicoid-hyperbolic", {}},
        {"4.1.4", {"tanh-triple"}, "4.1.4", {}},
        {"4.2.1-v-surface", {"4.2.1-m0.5"}, "4.2.1", {{"m", 0.5}}},
        {"4.2.1-m1", {}, "4.2.1", {{"m", 1}}},
        {"4.2.2-m0", {}, "4.2.2", {{"m", 0}}},
        {"4.2.2-m1", {}, "4.2.2", {{"m", 1}}},
        {"4.2.2-m-surface", {"4.2.2-m0.5"}, "4.2.2", {{"m", 0.5}}},
        {"4.2.3a-m1", {}, "4.2.3a", {{"m", 1}}},
        {"4.2.3a-v-surface", {"4.2.3a-m0"}, "4.2.3a", {{"m", 0}}},
        {"4.2.3b-m1", {}, "4.2.3b", {{"m", 1}}},
        {"4.2.3b-m-surface", {"4.2.3b-m0"}, "4.2.3b", {{"m", 0}}},
        {"4.3-m1", {}, "4.3", {{"m", 1}}},
        {"k-neg-example-1", {"5.1"}, "k-neg-example-1", {}},
        {"k-neg-example-2", {"5.2"}, "k-neg-example-2", {}},
    };
    return e;
}

const Family& family_named(std::string_view name) {
    for (const Family& f : families()) {
        if (f.name == name) return f;
    }
    throw UnknownEntry("unknown catalog family: " + std::string(name));
}

/// Box along the profiles' extended ranges, trimmed away from singular ends.
Box auto_box(const std::array<Profile, 3>& ps) {
    Box b;
    for (Axis a : kAxes) {
        const Profile& p = ps[index(a)];
        Interval r = p.extended_range();
        const double x0 = p.anchor().x0;
        if (!std::isfinite(r.lo)) r.lo = x0 - 3;
        if (!std::isfinite(r.hi)) r.hi = x0 + 3;
        r.lo = std::max(r.lo, x0 - 3);
        r.hi = std::min(r.hi, x0 + 3);
        const double pad = 0.02 * r.width();
        b.lo[index(a)] = r.lo + pad;
        b.hi[index(a)] = r.hi - pad;
    }
    return b;
}

CatalogEntry build(const std::string& name, const Family& fam, const Params& params) {
    Params full;
    for (const ParamSpec& ps : fam.params) full[ps.name] = ps.default_value;
    for (const auto& [k, v] : params) {
        if (!full.contains(k)) throw ParamOutOfRange("entry " + name + " has no parameter '" + k + "'");
        if (!std::isfinite(v)) throw ParamOutOfRange("parameter '" + k + "' must be finite");
        full[k] = v;
    }
    Built b = fam.build(full);

    std::vector<Profile> ps;
    for (Axis a : kAxes) {
        const AxisDef& d = b.axes[index(a)];
        Profile::Spec spec{a, b.k.row(a), b.k.kcase, d.sign, d.anchor, d.hint, d.period, d.text};
        try {
            ps.emplace_back(std::move(spec));
        } catch (const DomainError& e) {
            throw ParamOutOfRange(std::string("profile for axis ") + to_string(a) + " cannot be built: " + e.what());
        }
    }
    std::array<Profile, 3> profiles{ps[0], ps[1], ps[2]};
    const Box bx = b.box.value_or(auto_box(profiles));

    CatalogEntry e{name,
                   fam.name,
                   fam.section,
                   b.implicit,
                   SeparableSurface(b.k, profiles, bx),
                   b.cls,
                   b.loci,
                   fam.params,
                   full,
                   {b.axes[0].closed, b.axes[1].closed, b.axes[2].closed},
                   {b.axes[0].text, b.axes[1].text, b.axes[2].text},
                   b.periods,
                   b.quadrature,
                   b.class_stated};
    if (!b.class_stated) {
        // No claim to check against: record what the surface does on a fixed sample.
        int spacelike = 0, timelike = 0;
        for (const Vec3& p : sample_on_surface(e.surface, 400, 1)) {
            const CausalKind k = causal_classify(e.surface, p).kind;
            spacelike += k == CausalKind::Spacelike;
            timelike += k == CausalKind::Timelike;
        }
        e.expected_class = spacelike && timelike ? ExpectedClass::Mixed
                           : spacelike           ? ExpectedClass::Spacelike
                                                 : ExpectedClass::Timelike;
    }
    return e;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string join3(const Vec3& v) { return fmt(v[0]) + " " + fmt(v[1]) + " " + fmt(v[2]); }

}  // namespace

std::vector<EntrySummary> list_entries() {
    std::vector<EntrySummary> out;
    for (const EntryDef& d : entries()) {
        const CatalogEntry e = instantiate(d.name);
        out.push_back({e.name, e.section_ref, e.implicit_string});
    }
    return out;
}

std::vector<std::string> entry_names() {
    std::vector<std::string> out;
    for (const EntryDef& d : entries()) out.push_back(d.name);
    return out;
}

std::vector<std::string> accepted_names() {
    std::vector<std::string> out;
    for (const EntryDef& d : entries()) {
        out.push_back(d.name);
        out.insert(out.end(), d.aliases.begin(), d.aliases.end());
    }
    for (const Family& f : families()) {
        if (std::find(out.begin(), out.end(), f.name) == out.end()) out.push_back(f.name);
    }
    return out;
}

CatalogEntry instantiate(std::string_view name, const Params& params) {
    for (const EntryDef& d : entries()) {
        const bool hit = d.name == name || std::find(d.aliases.begin(), d.aliases.end(), name) != d.aliases.end();
        if (!hit) continue;
        Params merged = d.fixed;
        for (const auto& [k, v] : params) merged[k] = v;
        return build(d.name, family_named(d.family), merged);
    }
    for (const Family& f : families()) {
        if (f.name == name) return build(f.name, f, params);
    }
    throw UnknownEntry("unknown catalog entry: " + std::string(name));
}

double closed_form_crosscheck(const CatalogEntry& entry, int n_samples) {
    double worst = 0.0;
    for (Axis a : kAxes) {
        const auto& cf = entry.closed_forms[index(a)];
        if (!cf) continue;
        const Profile& p = entry.surface.profile(a);
        Interval r = entry.surface.box().along(a);
        const Interval ext = p.extended_range();
        r.lo = std::max(r.lo, ext.lo);
        r.hi = std::min(r.hi, ext.hi);
        for (int i = 0; i < n_samples; ++i) {
            const double x = r.lo + (i + 0.5) / n_samples * r.width();
            worst = std::max(worst, std::abs(p.value(x) - cf(x)));
        }
    }
    return worst;
}

double closed_form_crosscheck(std::string_view name, int n_samples) {
    return closed_form_crosscheck(instantiate(name), n_samples);
}

double period_check(const CatalogEntry& entry, const PeriodClaim& claim, int n_samples) {
    double worst = 0.0;
    for (const Vec3& p : sample_on_surface(entry.surface, n_samples, 7)) {
        Vec3 q = p;
        q[index(claim.axis)] += claim.period;
        worst = std::max(worst, std::abs(eval_F(entry.surface, q) - eval_F(entry.surface, p)));
    }
    return worst;
}

std::string serialize_record(const std::string& name, const ConstantsTriple& k, const std::array<int, 3>& signs,
                             const Params& params, const std::optional<Box>& box, const std::vector<Line>& loci,
                             const std::string& section, const std::string& implicit) {
    std::ostringstream os;
    os << "[entry]\n";
    os << "name = " << name << "\n";
    if (!section.empty()) os << "section = " << section << "\n";
    if (!implicit.empty()) os << "implicit = " << implicit << "\n";
    os << "case = " << to_string(k.kcase) << "\n";
    os << "k = " << fmt(k.kcase.k()) << "\n";
    os << "a = " << join3(k.a) << "\n";
    os << "b = " << join3(k.b) << "\n";
    os << "c = " << join3(k.c) << "\n";
    os << "signs = " << signs[0] << " " << signs[1] << " " << signs[2] << "\n";
    os << "params =";
    for (const auto& [pk, pv] : params) os << " " << pk << "=" << fmt(pv);
    os << "\n";
    if (box) os << "box = " << join3(box->lo) << " " << join3(box->hi) << "\n";
    for (const Line& l : loci) os << "locus = " << join3(l.point) << " " << join3(l.direction) << "\n";
    os << "\n";
    return os.str();
}

std::string serialize_catalog() {
    std::ostringstream os;
    os << "# zmc catalog v1\n"
          "# Each [entry] record: name, section, implicit, case (positive|zero|negative), k,\n"
          "# a/b/c rows (a1 a2 a3 etc.), signs of the three profiles, params (name=value),\n"
          "# box (lo_x lo_y lo_z hi_x hi_y hi_z), and zero or more locus lines (point, direction).\n\n";
    for (const EntryDef& d : entries()) {
        const CatalogEntry e = instantiate(d.name);
        const SeparableSurface& s = e.surface;
        os << serialize_record(e.name, s.constants(),
                               {s.profile(Axis::X).sign(), s.profile(Axis::Y).sign(), s.profile(Axis::Z).sign()},
                               e.params, s.box(), e.lightlike_loci, e.section_ref, e.implicit_string);
    }
    return os.str();
}

}  // namespace zmc
