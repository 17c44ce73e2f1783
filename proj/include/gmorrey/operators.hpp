#pragma once

#include "gmorrey/fields.hpp"

namespace gmorrey {

//! Hardy--Littlewood maximal function: at each grid point the maximum over
//! the radius nodes of |B(x,r)|^{-1} * sum_{B~(x,r)} |f| h^n, where the sum
//! runs over the ball intersected with the computational box while the
//! normalisation uses the full ball measure. The single-cell value |f(x)|
//! is always a candidate (the smallest resolvable radius), so Mf >= |f| on
//! the grid.
ScalarField maximal(const ScalarField& f, const RadiusGrid& rg);

//! Fractional maximal function of variable order: maximum over radius nodes
//! of |B(x,r)|^{-1 + alpha(x)/n} * sum_{B~(x,r)} |f| h^n. With alpha == 0
//! this is bit-identical to maximal().
ScalarField fractional_maximal(const ScalarField& f, const OrderField& alpha,
                               const RadiusGrid& rg);

//! Riesz potential of variable order: sum over cells y != x of
//! f(y) |x-y|^{alpha(x)-n} h^n plus the analytic kernel integral over the
//! cell containing x times f(x). Integrates over the whole computational
//! box; requires 0 < alpha(x) < n.
ScalarField riesz_potential(const ScalarField& f, const OrderField& alpha);

//! (1+|x|)^{-gamma(x)} * riesz_potential(f)(x); gamma must have been
//! attached to alpha via a decay constant.
ScalarField weighted_riesz(const ScalarField& f, const OrderField& alpha);

//! Dual Hardy operator on the radius grid: v(r_k) * sum_{r_j >= r_k}
//! g(r_j) u(r_j) dr_j (right-closed tail quadrature).
RadialFunction dual_hardy(const RadialFunction& g, const RadialFunction& u,
                          const RadialFunction& v);

}  // namespace gmorrey
