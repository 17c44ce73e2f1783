#include "gmorrey/numerics.hpp"

#include <cmath>
#include <limits>

namespace gmorrey {

BisectionResult solve_decreasing_unit(const std::function<double(double)>& J, double eta0,
                                      double rel_tol, int max_iter) {
    int it = 0;
    double lo, hi;
    if (J(eta0) > 1.0) {
        lo = eta0;
        hi = eta0;
        do {
            hi *= 2.0;
            if (++it > max_iter) throw NonConvergence("bracketing failed (growing)", lo, hi);
        } while (J(hi) > 1.0);
    } else {
        hi = eta0;
        lo = eta0;
        do {
            lo *= 0.5;
            if (++it > max_iter) throw NonConvergence("bracketing failed (shrinking)", lo, hi);
        } while (J(lo) <= 1.0);
    }
    // invariant: J(lo) > 1 >= J(hi)
    while (hi - lo > rel_tol * hi) {
        if (++it > max_iter) throw NonConvergence("bisection failed to converge", lo, hi);
        const double mid = 0.5 * (lo + hi);
        if (J(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), it};
}

double fitted_exponent(double ra, double ga, double rb, double gb) {
    return std::log(gb / ga) / std::log(rb / ra);
}

double power_segment_integral(double ra, double ga, double rb, double gb) {
    if (!(ga > 0.0) || !(gb > 0.0)) return 0.5 * (ga + gb) * (rb - ra);
    if (!std::isfinite(ga) || !std::isfinite(gb))
        return std::numeric_limits<double>::infinity();
    const double q = fitted_exponent(ra, ga, rb, gb);
    if (std::abs(q + 1.0) < kExponentMargin) return ga * ra * std::log(rb / ra);
    return (gb * rb - ga * ra) / (q + 1.0);
}

double integrate_power_segments(std::span<const double> r, std::span<const double> g,
                                std::size_t lo, std::size_t hi) {
    KahanSum s;
    for (std::size_t j = lo + 1; j <= hi; ++j)
        s.add(power_segment_integral(r[j - 1], g[j - 1], r[j], g[j]));
    return s.value();
}

PowerExtension power_tail(double ra, double ga, double rb, double gb) {
    PowerExtension out;
    if (!(gb > 0.0)) return out;  // integrand decayed to zero
    if (!std::isfinite(gb) || !std::isfinite(ga)) {
        out.divergent = true;
        out.exponent = std::numeric_limits<double>::infinity();
        return out;
    }
    if (!(ga > 0.0)) return out;  // no slope information; nothing added
    const double q = fitted_exponent(ra, ga, rb, gb);
    out.exponent = q;
    if (q >= -1.0 - kExponentMargin) {
        out.divergent = true;
        return out;
    }
    out.value = gb * rb / (-(q + 1.0));
    return out;
}

PowerExtension power_head(double ra, double ga, double rb, double gb) {
    PowerExtension out;
    if (!(ga > 0.0)) return out;
    if (!std::isfinite(ga) || !std::isfinite(gb)) {
        out.divergent = true;
        out.exponent = std::numeric_limits<double>::infinity();
        return out;
    }
    if (!(gb > 0.0)) return out;
    const double q = fitted_exponent(ra, ga, rb, gb);
    out.exponent = q;
    if (q <= -1.0 + kExponentMargin) {
        out.divergent = true;
        return out;
    }
    out.value = ga * ra / (q + 1.0);
    return out;
}

}  // namespace gmorrey
