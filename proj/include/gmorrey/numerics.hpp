#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

namespace gmorrey {

//! Compensated (Kahan) accumulator; keeps cell-sum reductions independent of
//! association order well below 1e-12 relative.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;

    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

struct NonConvergence : std::runtime_error {
    double bracket_lo;
    double bracket_hi;
    NonConvergence(const std::string& what, double lo, double hi)
        : std::runtime_error(what + " (last bracket [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "])"),
          bracket_lo(lo),
          bracket_hi(hi) {}
};

struct BisectionResult {
    double root = 0.0;
    int iterations = 0;
};

//! Root of J(eta) = 1 for a strictly decreasing J, by bracketing
//! (doubling/halving from eta0) followed by bisection down to relative
//! bracket width rel_tol. Throws NonConvergence past max_iter steps.
BisectionResult solve_decreasing_unit(const std::function<double(double)>& J, double eta0,
                                      double rel_tol, int max_iter);

//! Quadrature on positive integrands sampled on an increasing grid:
//! each segment is integrated under a local power-law fit (exact whenever the
//! integrand is a pure power), with analytic extensions of the first/last
//! segment toward 0 and infinity. Extensions report divergence through the
//! fitted exponent instead of producing a value.
struct PowerExtension {
    double value = 0.0;
    bool divergent = false;
    double exponent = 0.0;
};

double fitted_exponent(double ra, double ga, double rb, double gb);
double power_segment_integral(double ra, double ga, double rb, double gb);
double integrate_power_segments(std::span<const double> r, std::span<const double> g,
                                std::size_t lo, std::size_t hi);
PowerExtension power_tail(double ra, double ga, double rb, double gb);
PowerExtension power_head(double ra, double ga, double rb, double gb);

//! Fitted exponents within this margin of the convergence boundary are
//! treated as divergent (the boundary itself diverges).
inline constexpr double kExponentMargin = 1e-9;

//! Deterministic uniform generator. Draws come from the raw mt19937_64
//! stream so sequences are identical across platforms.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    std::uint64_t index(std::uint64_t n) { return gen() % n; }
};

}  // namespace gmorrey
