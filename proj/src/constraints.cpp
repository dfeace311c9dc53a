#include "zmc/constraints.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "zmc/profiles.hpp"

namespace zmc {

Residuals residuals(const ConstantsTriple& k) {
    const auto [a1, a2, a3] = k.a;
    const auto [b1, b2, b3] = k.b;
    const auto [c1, c2, c3] = k.c;
    switch (k.kcase.kind()) {
        case CaseK::Kind::Positive:
            return {(a2 - a3) * c1 + 2 * b2 * b3, (a1 - a3) * c2 + 2 * b1 * b3,
                    (a2 - a3) * b1 + 2 * c2 * c3, (a1 - a3) * b2 + 2 * c1 * c3,
                    (a1 + a2) * b3 + 2 * c1 * c2, (a1 + a2) * c3 + 2 * b1 * b2};
        case CaseK::Kind::Negative:
            return {(a2 - a3) * c1 - b3 * c2 - b2 * c3, (a1 - a3) * c2 - b3 * c1 - b1 * c3,
                    (a2 - a3) * b1 + b2 * b3 - c2 * c3, (a1 - a3) * b2 + b1 * b3 - c1 * c3,
                    (a1 + a2) * b3 + b1 * b2 - c1 * c2, (a1 + a2) * c3 - b2 * c1 - b1 * c2};
        case CaseK::Kind::Zero:
            return {a1 * (b2 - b3) + a2 * (b1 - b3) - a3 * (b1 + b2),
                    b1 * b2 + b2 * b3 + 2 * c1 * (a2 - a3) + 2 * c3 * (a1 + a2),
                    b1 * b2 + b1 * b3 + 2 * c2 * (a1 - a3) + 2 * c3 * (a1 + a2),
                    c1 * (b2 + b3) + c3 * (b1 - b2),
                    c2 * (b1 + b3) - c3 * (b1 - b2),
                    c1 * c2 - c1 * c3 - c2 * c3};
    }
    return {};
}

double residual_norm(const ConstantsTriple& constants) {
    double m = 0.0;
    for (double r : residuals(constants)) m = std::max(m, std::abs(r));
    return m;
}

std::array<double, 3> residuals_secondary(const ConstantsTriple& k, double u, double v,
                                          const std::optional<std::array<Interval, 3>>& domains) {
    const double w = -u - v;
    if (domains) {
        const std::array<double, 3> at{u, v, w};
        for (Axis ax : kAxes) {
            if (!(*domains)[index(ax)].contains_open(at[index(ax)])) {
                throw DomainError(std::string("residuals_secondary: argument for axis ") + to_string(ax) +
                                  " = " + std::to_string(at[index(ax)]) + " leaves its positivity interval");
            }
        }
    }
    auto d = [&](Axis ax, double t, int order) { return eval_X(k.row(ax), k.kcase, t, order); };
    const double X = d(Axis::X, u, 0), X1 = d(Axis::X, u, 1), X2 = d(Axis::X, u, 2);
    const double Y = d(Axis::Y, v, 0), Y1 = d(Axis::Y, v, 1), Y2 = d(Axis::Y, v, 2);
    const double Z = d(Axis::Z, w, 0), Z1 = d(Axis::Z, w, 1), Z2 = d(Axis::Z, w, 2);
    return {(Y - Z) * X2 - (X - Z) * Y2 - (X1 - Y1) * Z1,
            (Y1 + Z1) * X1 + (X - Z) * Y2 + Z2 * (X + Y),
            (Y - Z) * X2 + (X1 + Z1) * Y1 + (X + Y) * Z2};
}

FreezeMask parse_freeze(std::string_view spec) {
    FreezeMask mask{};
    while (!spec.empty()) {
        const auto comma = spec.find(',');
        std::string_view item = spec.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) mask[constant_index(item)] = true;
        if (comma == std::string_view::npos) break;
        spec.remove_prefix(comma + 1);
    }
    return mask;
}

namespace {

double max_abs(const Residuals& r) {
    double m = 0.0;
    for (double x : r) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

ConstantsTriple solve_from_seed(const CaseK& kcase, const ConstantsTriple& seed, const FreezeMask& frozen,
                                const SolveOptions& options) {
    const int n_frozen = static_cast<int>(std::count(frozen.begin(), frozen.end(), true));
    if (n_frozen < 3) {
        throw InvalidFreeze("solve_from_seed: at least 3 of the 9 constants must be frozen, got " +
                            std::to_string(n_frozen));
    }
    std::vector<int> free_idx;
    for (int i = 0; i < 9; ++i) {
        if (!frozen[i]) free_idx.push_back(i);
    }
    std::array<double, 9> x = seed.flat();
    auto eval = [&](const std::array<double, 9>& v) { return residuals(ConstantsTriple::from_flat(kcase, v)); };

    Residuals r = eval(x);
    double norm = max_abs(r);
    for (int iter = 0; iter < options.max_iterations && norm >= options.tolerance; ++iter) {
        if (free_idx.empty()) break;
        // Every residual is a quadratic polynomial, so a unit central difference is exact.
        Eigen::MatrixXd J(6, static_cast<Eigen::Index>(free_idx.size()));
        for (std::size_t j = 0; j < free_idx.size(); ++j) {
            auto xp = x, xm = x;
            xp[free_idx[j]] += 1.0;
            xm[free_idx[j]] -= 1.0;
            const Residuals rp = eval(xp), rm = eval(xm);
            for (int i = 0; i < 6; ++i) J(i, static_cast<Eigen::Index>(j)) = 0.5 * (rp[i] - rm[i]);
        }
        Eigen::VectorXd rhs(6);
        for (int i = 0; i < 6; ++i) rhs(i) = -r[i];
        const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(rhs);

        double t = 1.0;
        bool accepted = false;
        for (int halvings = 0; halvings < 40; ++halvings, t *= 0.5) {
            auto trial = x;
            for (std::size_t j = 0; j < free_idx.size(); ++j) {
                trial[free_idx[j]] += t * step(static_cast<Eigen::Index>(j));
            }
            const Residuals rt = eval(trial);
            const double nt = max_abs(rt);
            if (nt < norm) {
                x = trial;
                r = rt;
                norm = nt;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    if (!(norm < options.tolerance)) {
        throw NoConvergence("solve_from_seed: residual max-norm " + std::to_string(norm) +
                            " after damped Newton iterations");
    }
    return ConstantsTriple::from_flat(kcase, x);
}

ConstantsTriple rescale(const ConstantsTriple& constants, double lambda) {
    if (!std::isfinite(lambda) || lambda == 0.0) {
        throw InvalidScale("rescale: lambda must be finite and nonzero");
    }
    ConstantsTriple out = constants;
    switch (constants.kcase.kind()) {
        case CaseK::Kind::Positive:
            out.kcase = CaseK::positive(constants.kcase.k() / std::abs(lambda));
            if (lambda < 0) std::swap(out.b, out.c);
            break;
        case CaseK::Kind::Negative:
            out.kcase = CaseK::negative(constants.kcase.k() / std::abs(lambda));
            if (lambda < 0) {
                for (double& c : out.c) c = -c;
            }
            break;
        case CaseK::Kind::Zero:
            for (double& b : out.b) b /= lambda;
            for (double& c : out.c) c /= lambda * lambda;
            break;
    }
    return out;
}

}  // namespace zmc
