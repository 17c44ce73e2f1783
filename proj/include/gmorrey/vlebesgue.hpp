#pragma once

#include <vector>

#include "gmorrey/fields.hpp"

namespace gmorrey {

using Region = std::vector<std::size_t>;

Region whole_domain(const Grid& g);

//! J_{p(.)}(f) over the region: sum of |f(x)|^{p(x)} h^n. The sampled
//! fields are piecewise constant on cells, so this is the exact modular of
//! the corresponding simple function.
double modular(const ScalarField& f, const ExponentField& p, const Region& region);

struct LuxemburgResult {
    double norm = 0.0;
    int iterations = 0;
    double residual = 0.0;  // |J(f/norm) - 1| for f != 0
};

struct LuxemburgOptions {
    double rel_tol = 1e-12;
    int max_iter = 200;
};

//! inf{eta > 0 : J(f/eta) <= 1} by bracketing + bisection on the strictly
//! decreasing map eta -> J(f/eta); 0 for f identically zero on the region.
LuxemburgResult luxemburg_norm(const ScalarField& f, const ExponentField& p,
                               const Region& region, const LuxemburgOptions& opts = {});

//! p'(x) = p(x) / (p(x) - 1) pointwise; requires p_minus > 1.
ExponentField conjugate_exponent(const ExponentField& p);

//! integral of f*g over the region divided by C(p) ||f||_{p(.)} ||g||_{p'(.)}
//! with C(p) = 1/p_minus + 1/p'_minus. Zero by convention when either norm
//! vanishes. The harness asserts ratio <= 1.
double holder_check(const ScalarField& f, const ScalarField& g, const ExponentField& p,
                    const Region& region);

//! Smallest admissible local log-condition constant over sampled pairs:
//! max of |p(x)-p(y)| * (-ln|x-y|) over pairs with 0 < |x-y| <= 1/2.
//! All pairs for grids up to 2048 cells, a seeded random subset beyond.
double log_condition_constant(const ExponentField& p);

//! Decay-condition constant estimate sup_x |p(x) - p(inf)| * ln(e + |x|)
//! (quotient form). Requires p_inf.
double decay_condition_constant(const ExponentField& p);

//! eta_p(x, r) = n/p(x) for r <= 1 and n/p(inf) for r > 1.
double eta_p(const ExponentField& p, std::size_t cell, double r);
double eta_p(const ExponentField& p, const Point& x, double r);

//! Modular as a function of eta through per-exponent-value buckets:
//! J(f/eta) = sum_v coeff_v eta^{-p_v}. Lets ball profiles reuse cumulative
//! coefficients across nested balls.
struct BucketedModular {
    const std::vector<double>* p_values = nullptr;
    std::vector<double> coeffs;

    double eval(double eta) const;
    double mass() const { return eval(1.0); }
    bool empty_mass() const;
};

//! Same bracketing + bisection as luxemburg_norm, driven by a bucketed
//! modular. eta_warm (when > 0) seeds the bracket from below.
LuxemburgResult luxemburg_from_modular(const BucketedModular& J, double p_minus,
                                       double eta_warm, const LuxemburgOptions& opts);

}  // namespace gmorrey
