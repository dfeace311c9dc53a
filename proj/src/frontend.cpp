#include "zmc/frontend.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "zmc/mesh.hpp"

namespace zmc {

namespace {

double parse_number(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParamOutOfRange("not a number: '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::pair<std::string_view, double*>> tolerance_fields(Tolerances& t) {
    return {{"constraints", &t.constraints},
            {"zmc_a", &t.zmc_a},
            {"mean_curvature", &t.mean_curvature},
            {"derivatives", &t.derivatives},
            {"kk_ratio", &t.kk_ratio},
            {"locus", &t.locus},
            {"closed_form", &t.closed_form},
            {"period", &t.period},
            {"elliptic_identity", &t.elliptic_identity},
            {"homothety", &t.homothety},
            {"lightlike", &t.lightlike}};
}

CheckResult below(std::string name, double value, double threshold, std::string note = {}) {
    return {std::move(name), value, threshold, value < threshold, std::move(note)};
}

/// Interior sample points of the profile's u-domain, at most 3 away from u0.
std::vector<double> u_samples(const Profile& p, int n) {
    Interval d = p.u_domain();
    const double u0 = p.anchor().u0;
    d.lo = std::max(d.lo, u0 - 3.0);
    d.hi = std::min(d.hi, u0 + 3.0);
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(d.lo + (i + 0.5) / n * d.width());
    return out;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

Tolerances apply_tolerance_overrides(Tolerances base, std::string_view spec) {
    if (spec.find('=') == std::string_view::npos) {
        const double scale = parse_number(spec);
        if (!(scale > 0.0) || !std::isfinite(scale)) throw ParamOutOfRange("tolerance scale must be positive");
        for (auto& [name, field] : tolerance_fields(base)) *field *= scale;
        return base;
    }
    while (!spec.empty()) {
        const std::size_t comma = spec.find(',');
        std::string_view item = spec.substr(0, comma);
        spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) throw ParamOutOfRange("expected name=value in '" + std::string(item) + "'");
        std::string_view key = item.substr(0, eq);
        while (!key.empty() && key.front() == ' ') key.remove_prefix(1);
        while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
        bool found = false;
        for (auto& [name, field] : tolerance_fields(base)) {
            if (name == key) {
                const double v = parse_number(item.substr(eq + 1));
                if (!(v >= 0.0) || !std::isfinite(v)) {
                    throw ParamOutOfRange("tolerance " + std::string(key) + " must be finite and non-negative");
                }
                *field = v;
                found = true;
            }
        }
        if (!found) throw ParamOutOfRange("unknown tolerance '" + std::string(key) + "'");
    }
    return base;
}

bool VerifyReport::pass() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

ClassTally tally_classes(const SeparableSurface& s, const std::vector<Vec3>& points, ExpectedClass expected,
                         double tol) {
    ClassTally t;
    for (const Vec3& p : points) {
        switch (causal_classify(s, p, tol).kind) {
            case CausalKind::Spacelike: ++t.spacelike; break;
            case CausalKind::Timelike: ++t.timelike; break;
            case CausalKind::Lightlike: ++t.lightlike; break;
        }
    }
    switch (expected) {
        case ExpectedClass::Spacelike:
            t.misclassified = t.timelike;
            t.matches = t.misclassified == 0 && t.spacelike > 0;
            break;
        case ExpectedClass::Timelike:
            t.misclassified = t.spacelike;
            t.matches = t.misclassified == 0 && t.timelike > 0;
            break;
        case ExpectedClass::Mixed:
            t.matches = t.spacelike > 0 && t.timelike > 0;
            break;
    }
    return t;
}

double homothety_check(const SeparableSurface& s, const std::vector<Vec3>& points, double lambda) {
    const SeparableSurface r = s.rescaled(lambda);
    double worst = 0.0;
    for (const Vec3& p : points) {
        const Vec3 q{lambda * p[0], lambda * p[1], lambda * p[2]};
        worst = std::max(worst, std::abs(eval_F(r, q)));
    }
    return worst;
}

VerifyReport verify_entry(const CatalogEntry& entry, const VerifyOptions& o) {
    VerifyReport rep;
    rep.entry = entry.name;
    const SeparableSurface& s = entry.surface;
    const Tolerances& tol = o.tol;
    std::mt19937_64 rng(o.seed);

    rep.checks.push_back(below("constraints", residual_norm(s.constants()), tol.constraints));

    {
        std::uniform_real_distribution<double> U(-2.0, 2.0);
        double worst = 0.0;
        for (int i = 0; i < o.a_samples; ++i) {
            const double u = U(rng), v = U(rng);
            worst = std::max(worst, std::abs(zmc_residual_A(s, u, v)) / zmc_residual_A_scale(s, u, v));
        }
        rep.checks.push_back(below("zmc_residual_A", worst, tol.zmc_a));
    }

    {
        double worst = 0.0;
        std::string note;
        for (Axis a : kAxes) {
            try {
                const auto us = u_samples(s.profile(a), 64);
                worst = std::max(worst, kk_ratio_check(s.profile(a).coeffs(), s.constants().kcase, us));
            } catch (const AllSamplesDegenerate&) {
                note += std::string(note.empty() ? "" : "; ") + to_string(a) + ": X' vanishes on every sample";
            }
        }
        rep.checks.push_back(below("kk_ratio", worst, tol.kk_ratio, note));
    }

    const std::vector<Vec3> pts = sample_on_surface(s, o.surface_samples, o.seed);
    if (int(pts.size()) < o.surface_samples) {
        rep.checks.push_back({"surface_samples", double(pts.size()), double(o.surface_samples), false,
                              "could not place every sample on the surface"});
    }

    {
        double worst = 0.0, worst_d = 0.0;
        int degenerate = 0;
        for (const Vec3& p : pts) {
            try {
                worst = std::max(worst, mean_curvature_numerator(s, p).relative());
            } catch (const DegeneratePoint&) {
                ++degenerate;
            }
            const DerivativeCrossCheck d = derivative_crosscheck(s, p);
            worst_d = std::max({worst_d, d.gradient, d.hessian});
        }
        rep.checks.push_back(below("mean_curvature", worst, tol.mean_curvature,
                                   std::to_string(pts.size() - degenerate) + " points" +
                                       (degenerate ? ", " + std::to_string(degenerate) + " degenerate skipped" : "")));
        rep.checks.push_back(below("derivative_crosscheck", worst_d, tol.derivatives));
    }

    {
        const ClassTally t = tally_classes(s, pts, entry.expected_class, tol.lightlike);
        CheckResult c{"causal_class", double(t.misclassified), 0.0, t.matches,
                      std::string("expected ") + to_string(entry.expected_class) + ": " +
                          std::to_string(t.spacelike) + " spacelike, " + std::to_string(t.timelike) +
                          " timelike, " + std::to_string(t.lightlike) + " lightlike"};
        rep.checks.push_back(c);
    }

    for (std::size_t i = 0; i < entry.lightlike_loci.size(); ++i) {
        const LocusReport r = lightlike_locus_check(s, entry.lightlike_loci[i], tol.locus);
        CheckResult c = below("lightlike_locus[" + std::to_string(i) + "]", std::max(r.max_abs_F, r.max_abs_margin),
                              tol.locus, std::to_string(r.samples) + " points");
        c.pass = r.pass;
        rep.checks.push_back(c);
    }

    if (entry.closed_forms[0] || entry.closed_forms[1] || entry.closed_forms[2]) {
        rep.checks.push_back(
            below("closed_form", closed_form_crosscheck(entry, o.closed_form_samples), tol.closed_form));

        // The ODE f'² = X(f) checked on the elliptic closed forms themselves.
        if (!entry.quadrature_solvable) {
            double worst = 0.0;
            for (Axis a : kAxes) {
                const auto& cf = entry.closed_forms[index(a)];
                if (!cf) continue;
                Interval r = s.box().along(a);
                const Interval ext = s.profile(a).extended_range();
                r.lo = std::max(r.lo, ext.lo);
                r.hi = std::min(r.hi, ext.hi);
                std::vector<double> xs;
                for (int i = 0; i < 50; ++i) xs.push_back(r.lo + r.width() * (0.1 + 0.8 * (i + 0.5) / 50));
                worst = std::max(worst, derivative_identity_check(cf, make_evaluator(s.profile(a).coeffs(),
                                                                                      s.constants().kcase),
                                                                  xs));
            }
            rep.checks.push_back(below("elliptic_identity", worst, tol.elliptic_identity));
        }
    }

    for (const PeriodClaim& pc : entry.periods) {
        rep.checks.push_back(below(std::string("period[") + to_string(pc.axis) + "]",
                                   period_check(entry, pc, 100), tol.period, fmt("%.17g", pc.period)));
    }

    if (o.homothety_lambdas > 0) {
        std::uniform_real_distribution<double> L(std::log(0.25), std::log(4.0));
        std::bernoulli_distribution neg(0.25);
        const std::vector<Vec3> sub(pts.begin(), pts.begin() + std::min<std::size_t>(pts.size(), 25));
        double worst = 0.0, worst_k = 0.0;
        for (int i = 0; i < o.homothety_lambdas; ++i) {
            const double lambda = (neg(rng) ? -1.0 : 1.0) * std::exp(L(rng));
            worst = std::max(worst, homothety_check(s, sub, lambda));
            const double K = s.constants().kcase.value();
            const double Kt = rescale(s.constants(), lambda).kcase.value();
            if (K != 0.0) worst_k = std::max(worst_k, std::abs(Kt * lambda * lambda - K) / std::abs(K));
            else worst_k = std::max(worst_k, std::abs(Kt));
        }
        rep.checks.push_back(below("homothety", worst, tol.homothety));
        rep.checks.push_back(below("homothety_K", worst_k, 1e-15));
    }

    if (o.mesh) {
        try {
            const Mesh m = extract_level_set(s, o.mesh_resolution);
            const MeshAudit a = audit_mesh(m, s);
            CheckResult c = below("mesh_audit", a.worst_ratio, 1.0,
                                  std::to_string(m.vertices.size()) + " vertices, " + std::to_string(m.faces.size()) +
                                      " faces");
            c.pass = a.pass;
            rep.checks.push_back(c);
        } catch (const EmptyLevelSet& e) {
            rep.checks.push_back({"mesh_audit", INFINITY, 1.0, false, e.what()});
        }
    }
    return rep;
}

void write_report(const VerifyReport& report, std::ostream& out) {
    out << (report.pass() ? "PASS " : "FAIL ") << report.entry << '\n';
    char buf[256];
    for (const CheckResult& c : report.checks) {
        std::snprintf(buf, sizeof buf, "  %-4s %-24s %11.3e  (limit %.1e)", c.pass ? "ok" : "FAIL", c.name.c_str(),
                      c.value, c.threshold);
        out << buf;
        if (!c.note.empty()) out << "  " << c.note;
        out << '\n';
    }
}

std::vector<ClassifiedPoint> classify_grid(const SeparableSurface& s, int res) {
    if (res < 1) throw ParamOutOfRange("grid resolution must be at least 1");
    std::vector<ClassifiedPoint> out;
    const Box& box = s.box();
    for (Axis unknown : {Axis::Z, Axis::Y, Axis::X}) {
        std::array<int, 2> known{};
        int n = 0;
        for (Axis a : kAxes) {
            if (a != unknown) known[n++] = index(a);
        }
        for (int i = 0; i < res; ++i) {
            for (int j = 0; j < res; ++j) {
                const double c0 = box.lo[known[0]] + (i + 0.5) / res * (box.hi[known[0]] - box.lo[known[0]]);
                const double c1 = box.lo[known[1]] + (j + 0.5) / res * (box.hi[known[1]] - box.lo[known[1]]);
                std::vector<double> roots;
                try {
                    roots = solve_third_coordinate(s, unknown, {c0, c1});
                } catch (const NoRoot&) {
                    continue;
                } catch (const DomainError&) {
                    continue;
                }
                for (double t : roots) {
                    ClassifiedPoint cp;
                    cp.p[known[0]] = c0;
                    cp.p[known[1]] = c1;
                    cp.p[index(unknown)] = t;
                    const CausalClass c = causal_classify(s, cp.p);
                    cp.kind = c.kind;
                    cp.margin = c.margin;
                    const double u = s.profile(Axis::X).value(cp.p[0]);
                    const double v = s.profile(Axis::Y).value(cp.p[1]);
                    cp.a_residual = std::abs(zmc_residual_A(s, u, v)) / zmc_residual_A_scale(s, u, v);
                    out.push_back(cp);
                }
            }
        }
    }
    return out;
}

void write_classify_csv(const std::vector<ClassifiedPoint>& points, std::ostream& out) {
    out << "x,y,z,class,margin,A_residual\n";
    char buf[200];
    for (const ClassifiedPoint& c : points) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%s,%.6e,%.3e\n", c.p[0], c.p[1], c.p[2], to_string(c.kind),
                      c.margin, c.a_residual);
        out << buf;
    }
}

ConstantsTriple parse_seed(std::string_view text, std::string_view case_name) {
    const CaseK::Kind kind = parse_case_kind(case_name);
    double k = 1.0;
    std::array<double, 9> flat{};
    std::istringstream in{std::string(text)};
    if (text.find('=') != std::string_view::npos) {
        std::array<bool, 3> seen{};
        std::string line;
        while (std::getline(in, line)) {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos || line.starts_with('#')) continue;
            std::string key = line.substr(0, eq);
            key.erase(std::remove(key.begin(), key.end(), ' '), key.end());
            std::istringstream vals(line.substr(eq + 1));
            if (key == "k") {
                vals >> k;
                continue;
            }
            const int row = key == "a" ? 0 : key == "b" ? 1 : key == "c" ? 2 : -1;
            if (row < 0) continue;
            for (int i = 0; i < 3; ++i) {
                if (!(vals >> flat[3 * row + i])) throw ParamOutOfRange("seed row '" + key + "' needs three numbers");
            }
            seen[row] = true;
        }
        if (!(seen[0] && seen[1] && seen[2])) throw ParamOutOfRange("seed record needs a, b and c rows");
    } else {
        for (double& v : flat) {
            if (!(in >> v)) throw ParamOutOfRange("seed needs nine numbers a1 a2 a3 b1 b2 b3 c1 c2 c3");
        }
    }
    CaseK kcase = CaseK::zero();
    if (kind == CaseK::Kind::Positive) kcase = CaseK::positive(k);
    if (kind == CaseK::Kind::Negative) kcase = CaseK::negative(k);
    return ConstantsTriple::from_flat(kcase, flat);
}

bool is_rotational(const ConstantsTriple& k, double tol) {
    if (k.kcase.kind() != CaseK::Kind::Zero) return false;
    return std::any_of(k.c.begin(), k.c.end(), [tol](double c) { return std::abs(c) <= tol; });
}

}  // namespace zmc
