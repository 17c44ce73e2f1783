#pragma once

#include <string>
#include <vector>

#include "gmorrey/fields.hpp"
#include "gmorrey/morrey.hpp"

namespace gmorrey {

//! Suffix essinf construction: tilde(r) = min of theta over the window
//! [r, a) for r < a (windows half-open, essinf = min over nodes inside),
//! and the tail constant for r >= a.
RadialExponent tilde_theta(const RadialExponent& theta);

//! Outcome of a sufficient-condition integral. `value` is the computed
//! supremum on the truncated radius grid (with analytic power-fit head/tail
//! extensions where convergent); `finite` is the verdict. sensitivity is
//! the ratio between the values at r_max and r_max/2 truncation; > 1.5
//! (or a symbolic power-weight gate, or a divergent inner/head extension)
//! flips the verdict to divergent.
struct ConditionReport {
    double value = 0.0;
    bool finite = true;
    double sensitivity = 1.0;
    double witness_x = 0.0;
    double witness_t = 0.0;
    std::vector<double> sup_per_t;  // per-t supremum over the sampled centers
    std::string note;
};

//! Nested condition integral on (w1, w2): sup over (x, t) of
//! int_0^t w2(x,r)^{theta2(r)} ( int_t^inf (1/(w1(x,s) s))^{c(r)} ds )^{theta2(r)/c(r)} dr
//! with c = conjugate of tilde theta1. Requires the ordering
//! tilde theta1 <= theta2 at every node.
ConditionReport condition_A(const RadialWeight& w1, const RadialWeight& w2,
                            const RadialExponent& theta1, const RadialExponent& theta2,
                            const Grid& grid, const std::vector<std::size_t>& x_cells,
                            const RadiusGrid& rg);

struct PowerConditionReport {
    ConditionReport closed_form;  // the power-weight display evaluated directly
    double gate_value = 0.0;      // inf/sup of the exponent gate quantity
    bool gate_pass = false;
    ConditionReport general;      // nested-quadrature evaluation on the same data
};

//! Power-weight specialisation w1 = w2 = r^{beta(x)}: evaluates the
//! exponent gate inf_{x,r} (beta(x)+1) [tilde theta1(r)]' > 1 exactly, the
//! closed-form integral obtained from the inner power integral, and the
//! general nested quadrature as a cross-check.
PowerConditionReport condition_A_power(const std::vector<double>& beta,
                                       const RadialExponent& theta1,
                                       const RadialExponent& theta2, const Grid& grid,
                                       const std::vector<std::size_t>& x_cells,
                                       const RadiusGrid& rg);

//! Same nested integral with inner integrand (s^{alpha(x)-1}/w1(x,s))^{c(r)}.
//! Requires alpha > 0 and sup alpha(x) p(x) < n against the supplied p.
ConditionReport condition_T(const RadialWeight& w1, const RadialWeight& w2,
                            const RadialExponent& theta1, const RadialExponent& theta2,
                            const OrderField& alpha, const ExponentField& p,
                            const Grid& grid, const std::vector<std::size_t>& x_cells,
                            const RadiusGrid& rg);

//! Power-weight specialisation of condition_T; the gate is
//! sup_{x,r} (alpha - beta(x) - 1) [tilde theta1(r)]' < -1 and the literal
//! integral display is evaluated and reported as-is.
PowerConditionReport condition_T_power(const std::vector<double>& beta,
                                       const RadialExponent& theta1,
                                       const RadialExponent& theta2,
                                       const OrderField& alpha, const ExponentField& p,
                                       const Grid& grid,
                                       const std::vector<std::size_t>& x_cells,
                                       const RadiusGrid& rg);

//! Hardy condition for the dual operator: sup over t of
//! int_0^t v(x)^{theta2(x)} ( int_t^inf u(tau)^{c(x)} dtau )^{theta2(x)/c(x)} dx,
//! c = conjugate of tilde theta1. condition_A reduces to this under
//! u(t) = 1/(t w1(x,t)), v(r) = w2(x,r) at fixed x.
ConditionReport condition_G(const RadialFunction& u, const RadialFunction& v,
                            const RadialExponent& theta1, const RadialExponent& theta2);

//! Smallest constant in the sup/essinf comparison for the maximal operator:
//! max over (x, r) of [sup_{t>=r} essinf_{s>=t} w1(x,s) / t^{eta_p(x,t)}]
//! divided by w2(x,r) / r^{eta_p(x,r)}. essinf/sup windows are evaluated
//! over the grid nodes in the closed window.
double spanne_condition_maximal(const RadialWeight& w1, const RadialWeight& w2,
                                const ExponentField& p, const Grid& grid,
                                const std::vector<std::size_t>& x_cells,
                                const RadiusGrid& rg);

//! Integral comparison for the potential: max over (x, r) of
//! int_r^inf essinf_{t<=s} w1(x,s) / t^{1+eta_p(x,t)} dt divided by
//! w2(x,r) / r^{eta_q(x,r)}, with q the Sobolev exponent of (p, alpha).
ConditionReport spanne_condition_potential(const RadialWeight& w1, const RadialWeight& w2,
                                           const ExponentField& p, const ExponentField& q,
                                           const Grid& grid,
                                           const std::vector<std::size_t>& x_cells,
                                           const RadiusGrid& rg);

//! q(x) from 1/q(x) = 1/p(x) - alpha(x)/n; rejects sup alpha(x)p(x) >= n.
//! alpha(x) == 0 copies p(x) through unchanged.
ExponentField sobolev_exponent(const ExponentField& p, const OrderField& alpha);

//! Weight condition for the singular operator: sup over x of the
//! L_{theta2(.)}(0,inf) norm in r of
//! w2(x,r) * || 1/(t w1(x,t)) ||_{L_{theta1'(.)}(r,inf)}
//! (nested Luxemburg norms on the radius grid, analytic tail extensions,
//! divergence verdicts from the fitted tail exponents).
ConditionReport singular_condition(const RadialWeight& w1, const RadialWeight& w2,
                                   const RadialExponent& theta1,
                                   const RadialExponent& theta2, const Grid& grid,
                                   const std::vector<std::size_t>& x_cells,
                                   const RadiusGrid& rg);

}  // namespace gmorrey
