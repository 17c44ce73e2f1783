#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gmorrey/fields.hpp"
#include "gmorrey/vlebesgue.hpp"

namespace gmorrey {

//! Weight w(x, r) on (cells x radius nodes). Three forms:
//!   Power  - w(x,r) = amplitude(x) * r^{beta(x)}
//!   Table  - explicit samples at the radius nodes (single row broadcast or
//!            one row per cell)
//!   Lambda - w(x,r) = r^{-lambda(x)/p(x) + eta_p(x,r)}, evaluated against
//!            the exponent field supplied at call time
//! Sampled values must be strictly positive.
struct RadialWeight {
    enum class Kind { Power, Table, Lambda };
    Kind kind = Kind::Power;

    std::vector<double> beta;       // Power; broadcast when size() == 1
    std::vector<double> amplitude;  // Power; empty means 1
    std::vector<std::vector<double>> table;
    std::vector<double> lambda;     // Lambda; broadcast when size() == 1

    static RadialWeight power(double beta_value, double amplitude_value = 1.0);
    static RadialWeight power_field(std::vector<double> beta,
                                    std::vector<double> amplitude = {});
    static RadialWeight table_radial(std::vector<double> samples);
    static RadialWeight table_full(std::vector<std::vector<double>> samples);
    static RadialWeight lambda_form(std::vector<double> lambda, int n);

    double value(std::size_t cell, std::size_t node, double r,
                 const ExponentField* p) const;
    double beta_at(std::size_t cell) const;
    double amplitude_at(std::size_t cell) const;
    RadialWeight scaled(double c) const;
};

//! The triple (p(.), theta(.), w(.)) plus radius grid that fully describes a
//! global Morrey-type norm. theta == nullopt means the L_infinity (sup)
//! norm on the radius axis.
struct MorreySpaceSpec {
    ExponentField p;
    std::optional<RadialExponent> theta;
    RadialWeight w;
    RadiusGrid radius_grid;

    const Domain& domain() const { return p.grid.domain; }
};

//! Luxemburg norms of f restricted to B~(x, r_k) for every radius node;
//! non-decreasing in r, zero on empty balls.
RadialFunction local_norm_profile(const ScalarField& f, const ExponentField& p,
                                  const Point& x, const RadiusGrid& rg,
                                  const LuxemburgOptions& opts = {});

//! Internal workhorse behind the norms: profile values for one center.
std::vector<double> ball_norm_profile(const ScalarField& f, const ExponentField& p,
                                      const Point& x, const RadiusGrid& rg,
                                      const LuxemburgOptions& opts = {});

//! sup over (centers, radius nodes) of t^{-lambda(x)/p(x)} ||f||_{p(.), B~(x,t)}.
double variable_morrey_lambda_norm(const ScalarField& f, const ExponentField& p,
                                   const std::vector<double>& lambda, const RadiusGrid& rg,
                                   const LuxemburgOptions& opts = {});

enum class MorreyNormalization { Bounded, Unbounded };

//! Generalized Morrey norm: sup over (x, r) of
//!   Bounded:   r^{-n/p(x)} / w(x,r) * ||f||_{p(.), B~(x,r)}
//!   Unbounded: ||f||_{p(.), B~(x,r)} / w(x,r)
double generalized_morrey_norm(const ScalarField& f, const ExponentField& p,
                               const RadialWeight& w, MorreyNormalization normalization,
                               const RadiusGrid& rg, const LuxemburgOptions& opts = {});

//! Global Morrey-type norm: sup over centers of the L_{theta(.)} norm (on
//! the truncated radius grid, dr weights inside the modular) of
//! w(x,r) r^{-eta_p(x,r)} ||f||_{p(.), B~(x,r)}. theta == nullopt takes the
//! sup over radius nodes instead and coincides with the sup-form
//! generalized norm.
double gm_norm(const ScalarField& f, const MorreySpaceSpec& spec,
               const LuxemburgOptions& opts = {});

//! gm_norm with the substituted weight w(x,r) = r^{-lambda(x)/p(x)+eta_p(x,r)}.
double gm_lambda_norm(const ScalarField& f, const ExponentField& p,
                      const std::optional<RadialExponent>& theta,
                      const std::vector<double>& lambda, const RadiusGrid& rg,
                      const LuxemburgOptions& opts = {});

struct NonemptinessReport {
    double value = 0.0;         // sup_x ||w(x,.)||_{L_theta(.)} on the truncated grid
    bool finite = true;
    double sensitivity = 1.0;   // value at r_max over value at r_max/2
    double tail_exponent = 0.0; // fitted exponent of the modular integrand
    std::size_t witness_cell = 0;
};

//! Nonemptiness condition for the space: finiteness of
//! sup_x ||w(x,.)||_{L_theta(.)(0,inf)}. Divergence is reported, not thrown.
NonemptinessReport nonemptiness_check(const MorreySpaceSpec& spec,
                                      const LuxemburgOptions& opts = {});

//! Luxemburg norm of a sampled radial function in L_{theta(.)} with dr
//! quadrature weights inside the modular, starting at node `from`.
//! When tail_extend is set, the modular gets an analytic power-fit tail
//! beyond r_max; a fitted tail exponent at the divergence boundary marks
//! the result divergent (the norm is then the truncated value).
struct RadialLuxResult {
    double norm = 0.0;
    bool tail_divergent = false;
    double tail_exponent = 0.0;
};

RadialLuxResult radial_luxemburg(std::span<const double> phi,
                                 std::span<const double> theta, const RadiusGrid& rg,
                                 std::size_t from, bool tail_extend,
                                 const LuxemburgOptions& opts = {});

}  // namespace gmorrey
