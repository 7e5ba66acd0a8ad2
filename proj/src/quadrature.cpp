#include "fkwell/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>
#include <algorithm>

namespace fkwell {

namespace {

// G7/K15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};

constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};

// Gauss weights attach to the odd-indexed Kronrod nodes.
constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fx = f(c + h * kKronrodNodes[i]);
        k += kKronrodWeights[i] * fx;
        if (i % 2 == 1) g += kGaussWeights[i / 2] * fx;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = k * h;
    const double diff = std::fabs((k - g) * h);
    p.error = diff;
    return p;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& q) {
    if (a == b) return 0.0;
    std::vector<Panel> panels;
    panels.push_back(evaluate_panel(f, a, b));
    int splits = 0;
    while (true) {
        double total = 0.0, err = 0.0;
        for (const auto& p : panels) {
            total += p.value;
            err += p.error;
        }
        if (err <= q.abs_tol || err <= q.rel_tol * std::fabs(total)) return total;
        if (splits >= q.max_subdivisions)
            throw std::runtime_error("quadrature: subdivision budget exhausted");
        // Split the worst panel.
        auto it = std::max_element(
            panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.error < y.error; });
        const double pa = it->a, pb = it->b, mid = 0.5 * (pa + pb);
        *it = evaluate_panel(f, pa, mid);
        panels.push_back(evaluate_panel(f, mid, pb));
        ++splits;
    }
}

double integrate_half_line(const std::function<double(double)>& f, double a,
                           const QuadratureSpec& q) {
    auto g = [&](double u) {
        const double omu = 1.0 - u;
        const double t = a + u / omu;
        return f(t) / (omu * omu);
    };
    // Keep away from u = 1 where the map blows up; the integrand must
    // have vanished long before that for decaying f.
    return integrate(g, 0.0, 1.0 - 1e-14, q);
}

}  // namespace fkwell
