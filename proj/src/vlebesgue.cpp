#include "gmorrey/vlebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gmorrey/numerics.hpp"

namespace gmorrey {

namespace {

constexpr std::uint64_t kPairSeed = 0x4D4F52;
constexpr std::size_t kExhaustivePairLimit = 2048;
constexpr std::size_t kRandomPairs = 1000000;

void check_region(const ScalarField& f, const ExponentField& p, const Region& region) {
    if (!f.grid.same_layout(p.grid))
        throw std::invalid_argument("field and exponent must share the grid");
    if (region.empty()) throw std::invalid_argument("region must be nonempty");
}

}  // namespace

Region whole_domain(const Grid& g) {
    Region r(g.cell_count());
    std::iota(r.begin(), r.end(), std::size_t{0});
    return r;
}

double modular(const ScalarField& f, const ExponentField& p, const Region& region) {
    check_region(f, p, region);
    const double hn = f.grid.cell_measure();
    KahanSum s;
    for (std::size_t i : region) {
        const double a = std::abs(f.values[i]);
        if (a == 0.0) continue;
        s.add(std::pow(a, p.values[i]) * hn);
    }
    return s.value();
}

LuxemburgResult luxemburg_norm(const ScalarField& f, const ExponentField& p,
                               const Region& region, const LuxemburgOptions& opts) {
    check_region(f, p, region);
    const double hn = f.grid.cell_measure();

    const auto J = [&](double eta) -> double {
        KahanSum s;
        for (std::size_t i : region) {
            const double a = std::abs(f.values[i]);
            if (a == 0.0) continue;
            const double term = std::pow(a / eta, p.values[i]) * hn;
            if (!std::isfinite(term)) return std::numeric_limits<double>::infinity();
            s.add(term);
        }
        return s.value();
    };

    const double j1 = J(1.0);
    if (j1 == 0.0) return {0.0, 0, 0.0};
    const double eta0 = std::pow(std::max(j1, 1.0), 1.0 / p.p_minus);
    const auto res = solve_decreasing_unit(J, eta0, opts.rel_tol, opts.max_iter);
    return {res.root, res.iterations, std::abs(J(res.root) - 1.0)};
}

ExponentField conjugate_exponent(const ExponentField& p) {
    if (!(p.p_minus > 1.0)) throw std::invalid_argument("conjugate requires p_minus > 1");
    std::vector<double> v(p.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = p.values[i] / (p.values[i] - 1.0);
    std::optional<double> pinf;
    if (p.p_inf) pinf = *p.p_inf / (*p.p_inf - 1.0);
    return ExponentField(p.grid, std::move(v), pinf);
}

double holder_check(const ScalarField& f, const ScalarField& g, const ExponentField& p,
                    const Region& region) {
    check_region(f, p, region);
    if (!g.grid.same_layout(f.grid)) throw std::invalid_argument("fields must share the grid");

    const double hn = f.grid.cell_measure();
    KahanSum prod;
    for (std::size_t i : region) prod.add(f.values[i] * g.values[i] * hn);

    const double nf = luxemburg_norm(f, p, region).norm;
    const double ng = luxemburg_norm(g, conjugate_exponent(p), region).norm;
    if (nf == 0.0 || ng == 0.0) return 0.0;

    const double conj_minus = p.p_plus / (p.p_plus - 1.0);
    const double c_p = 1.0 / p.p_minus + 1.0 / conj_minus;
    return prod.value() / (c_p * nf * ng);
}

double log_condition_constant(const ExponentField& p) {
    const Grid& g = p.grid;
    const std::size_t n = g.cell_count();
    if (n < 2) throw std::invalid_argument("log condition needs at least 2 cells");

    double best = 0.0;
    const auto consider = [&](std::size_t i, std::size_t j) {
        const Point xi = g.center(i);
        const double d = g.distance(j, xi);
        if (d <= 0.0 || d > 0.5) return;
        best = std::max(best, std::abs(p.values[i] - p.values[j]) * (-std::log(d)));
    };

    if (n <= kExhaustivePairLimit) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) consider(i, j);
    } else {
        Rng rng(kPairSeed);
        for (std::size_t k = 0; k < kRandomPairs; ++k) {
            const auto i = static_cast<std::size_t>(rng.index(n));
            const auto j = static_cast<std::size_t>(rng.index(n));
            if (i != j) consider(i, j);
        }
    }
    return best;
}

double decay_condition_constant(const ExponentField& p) {
    if (!p.p_inf) throw std::invalid_argument("decay condition needs p(inf)");
    const Grid& g = p.grid;
    double best = 0.0;
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
        const Point x = g.center(i);
        const double ax = g.dim() == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
        best = std::max(best, std::abs(p.values[i] - *p.p_inf) * std::log(std::exp(1.0) + ax));
    }
    return best;
}

double eta_p(const ExponentField& p, std::size_t cell, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("eta_p needs r > 0");
    const double n = static_cast<double>(p.grid.dim());
    if (r <= 1.0) return n / p.values[cell];
    if (!p.p_inf) throw std::invalid_argument("eta_p with r > 1 needs p(inf)");
    return n / *p.p_inf;
}

double eta_p(const ExponentField& p, const Point& x, double r) {
    return eta_p(p, p.grid.cell_at(x), r);
}

double BucketedModular::eval(double eta) const {
    KahanSum s;
    for (std::size_t v = 0; v < coeffs.size(); ++v) {
        if (coeffs[v] == 0.0) continue;
        const double term = coeffs[v] * std::pow(eta, -(*p_values)[v]);
        if (!std::isfinite(term)) return std::numeric_limits<double>::infinity();
        s.add(term);
    }
    return s.value();
}

bool BucketedModular::empty_mass() const {
    for (double c : coeffs)
        if (c != 0.0) return false;
    return true;
}

LuxemburgResult luxemburg_from_modular(const BucketedModular& J, double p_minus,
                                       double eta_warm, const LuxemburgOptions& opts) {
    if (J.empty_mass()) return {0.0, 0, 0.0};
    const auto eval = [&](double eta) { return J.eval(eta); };
    double eta0;
    if (eta_warm > 0.0) {
        eta0 = eta_warm;
    } else {
        const double j1 = J.eval(1.0);
        eta0 = std::pow(std::max(j1, 1.0), 1.0 / p_minus);
    }
    const auto res = solve_decreasing_unit(eval, eta0, opts.rel_tol, opts.max_iter);
    return {res.root, res.iterations, std::abs(J.eval(res.root) - 1.0)};
}

}  // namespace gmorrey
