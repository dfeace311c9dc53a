#include "zmc/quadrature.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "zmc/core.hpp"

namespace zmc::quad {

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Kronrod abscissae; the odd-indexed ones are the 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const double ah = std::abs(half);
    double err = std::abs((resk - resg) * half);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = 2.220446049250313e-16;
    if (resabs > 1e-290 / (50 * eps)) err = std::max(50 * eps * resabs, err);
    return {a, b, resk * half, err};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
    if (a == b) return {};
    if (a > b) {
        Result r = integrate(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    std::priority_queue<Panel> heap;
    Panel first = gk15(f, a, b);
    double total = first.value;
    double error = first.error;
    heap.push(first);
    int n = 1;
    while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) && n < opt.max_intervals) {
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
        heap.pop();
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    // Re-sum to shed the drift of incremental updates.
    double sum = 0.0, err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    if (!std::isfinite(sum) || err > std::max(opt.fail_tol, opt.rel_tol * std::abs(sum))) {
        throw QuadratureFailure("adaptive quadrature on [" + std::to_string(a) + ", " +
                                std::to_string(b) + "] stopped with error estimate " +
                                fmt_g(err));
    }
    return {sum, err, n};
}

Result integrate_to_infinity(const Integrand& f, double a, const Options& opt) {
    auto mapped = [&](double r) {
        const double one_minus = 1.0 - r;
        const double s = a + r / one_minus;
        const double v = f(s);
        if (v == 0.0) return 0.0;
        return v / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, opt);
}

}  // namespace zmc::quad
