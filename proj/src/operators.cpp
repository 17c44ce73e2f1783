#include "gmorrey/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmorrey/numerics.hpp"

namespace gmorrey {

namespace {

//! Per-node cumulative sums of a per-cell quantity over the nested balls
//! B(x, r_k): one pass bins every cell by the first node exceeding its
//! distance, then a prefix sum turns bins into ball sums.
struct BallScan {
    std::vector<double> sums;
    std::vector<std::size_t> counts;
};

BallScan scan_balls(const Grid& g, const Point& x, const RadiusGrid& rg,
                    const std::vector<double>& cell_quantity) {
    const std::size_t k = rg.size();
    BallScan out;
    out.sums.assign(k, 0.0);
    out.counts.assign(k, 0);
    const auto& nodes = rg.nodes;
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
        const double d = g.distance(i, x);
        // cell belongs to the ball at node r iff d < r
        const auto b = static_cast<std::size_t>(
            std::upper_bound(nodes.begin(), nodes.end(), d) - nodes.begin());
        if (b == k) continue;
        out.sums[b] += cell_quantity[i];
        out.counts[b] += 1;
    }
    for (std::size_t j = 1; j < k; ++j) {
        out.sums[j] += out.sums[j - 1];
        out.counts[j] += out.counts[j - 1];
    }
    return out;
}

ScalarField maximal_core(const ScalarField& f, const double* alpha, const RadiusGrid& rg) {
    const Grid& g = f.grid;
    const std::size_t cells = g.cell_count();
    const double n = static_cast<double>(g.dim());
    const double hn = g.cell_measure();

    std::vector<double> absf(cells);
    for (std::size_t i = 0; i < cells; ++i) absf[i] = std::abs(f.values[i]) * hn;

    const double half_cell_volume = ball_volume(g.dim(), g.h / 2.0);
    std::vector<double> out(cells, 0.0);
    for (std::size_t i = 0; i < cells; ++i) {
        const Point x = g.center(i);
        const BallScan scan = scan_balls(g, x, rg, absf);
        if (scan.counts.back() == 0)
            throw std::runtime_error("maximal: every radius node gives an empty ball");

        const double a = alpha ? alpha[i] : 0.0;
        // smallest resolvable radius: the single-cell average
        double best = std::pow(half_cell_volume, a / n) * std::abs(f.values[i]);
        for (std::size_t k = 0; k < rg.size(); ++k) {
            if (scan.counts[k] == 0) continue;  // empty ball, skip the node
            const double vol = ball_volume(g.dim(), rg.nodes[k]);
            best = std::max(best, std::pow(vol, a / n - 1.0) * scan.sums[k]);
        }
        out[i] = best;
    }
    return ScalarField(g, std::move(out));
}

double self_cell_kernel_integral(int n, double h, double a) {
    if (n == 1) return 2.0 * std::pow(h / 2.0, a) / a;
    // area-equivalent disc of the square cell
    const double rho = h / std::sqrt(3.14159265358979323846);
    return 2.0 * 3.14159265358979323846 * std::pow(rho, a) / a;
}

}  // namespace

ScalarField maximal(const ScalarField& f, const RadiusGrid& rg) {
    return maximal_core(f, nullptr, rg);
}

ScalarField fractional_maximal(const ScalarField& f, const OrderField& alpha,
                               const RadiusGrid& rg) {
    if (!f.grid.same_layout(alpha.grid))
        throw std::invalid_argument("field and order must share the grid");
    return maximal_core(f, alpha.values.data(), rg);
}

ScalarField riesz_potential(const ScalarField& f, const OrderField& alpha) {
    const Grid& g = f.grid;
    if (!g.same_layout(alpha.grid))
        throw std::invalid_argument("field and order must share the grid");
    const double n = static_cast<double>(g.dim());
    for (double a : alpha.values)
        if (!(a > 0.0 && a < n))
            throw std::invalid_argument("riesz potential needs 0 < alpha(x) < n");

    const std::size_t cells = g.cell_count();
    const double hn = g.cell_measure();
    std::vector<double> out(cells, 0.0);
    for (std::size_t i = 0; i < cells; ++i) {
        const Point x = g.center(i);
        const double a = alpha.values[i];
        KahanSum s;
        for (std::size_t j = 0; j < cells; ++j) {
            if (j == i) continue;
            const double fj = f.values[j];
            if (fj == 0.0) continue;
            s.add(fj * std::pow(g.distance(j, x), a - n) * hn);
        }
        s.add(f.values[i] * self_cell_kernel_integral(g.dim(), g.h, a));
        out[i] = s.value();
    }
    return ScalarField(g, std::move(out));
}

ScalarField weighted_riesz(const ScalarField& f, const OrderField& alpha) {
    if (!alpha.has_gamma())
        throw std::invalid_argument("weighted riesz needs gamma (attach a decay constant)");
    ScalarField base = riesz_potential(f, alpha);
    const Grid& g = f.grid;
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
        const Point x = g.center(i);
        const double ax = g.dim() == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
        base.values[i] *= std::pow(1.0 + ax, -alpha.gamma[i]);
    }
    return base;
}

RadialFunction dual_hardy(const RadialFunction& g, const RadialFunction& u,
                          const RadialFunction& v) {
    if (!g.radius_grid.same_nodes(u.radius_grid) || !g.radius_grid.same_nodes(v.radius_grid))
        throw std::invalid_argument("dual hardy operands must share the radius grid");
    const RadiusGrid& rg = g.radius_grid;
    const std::size_t k = rg.size();
    std::vector<double> out(k, 0.0);
    KahanSum tail;
    for (std::size_t j = k; j-- > 0;) {
        tail.add(g.values[j] * u.values[j] * rg.dr[j]);
        out[j] = v.values[j] * tail.value();
    }
    return RadialFunction(rg, std::move(out));
}

}  // namespace gmorrey
