#include "gmorrey/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "gmorrey/numerics.hpp"

namespace gmorrey {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_ordering(const RadialExponent& th1, const RadialExponent& th2) {
    if (!th1.radius_grid.same_nodes(th2.radius_grid))
        throw std::invalid_argument("theta1 and theta2 must share the radius grid");
    for (std::size_t k = 0; k < th1.radius_grid.size(); ++k) {
        if (th1.tilde[k] > th2.values[k] + 1e-12)
            throw std::invalid_argument(
                "exponent ordering violated at r = " + std::to_string(th1.radius_grid.nodes[k]) +
                ": tilde theta1 = " + std::to_string(th1.tilde[k]) +
                " > theta2 = " + std::to_string(th2.values[k]));
    }
}

struct HardyEval {
    double value = 0.0;
    std::size_t witness_t = 0;
    bool inner_divergent = false;
    bool head_divergent = false;
    std::vector<double> per_t;
};

//! sup over t-nodes of int_0^t v^{theta2} (int_t^rmax+ u^{c})^{theta2/c} dr on
//! the first `len` nodes. Inner integrals carry an analytic power-fit tail;
//! the outer integral an analytic head toward 0. Divergent extensions
//! contribute nothing and raise a flag.
HardyEval hardy_eval(const RadiusGrid& rg, std::size_t len, std::span<const double> u,
                     std::span<const double> v, std::span<const double> theta2,
                     std::span<const double> conj1) {
    if (len < 2) throw std::invalid_argument("condition quadrature needs at least 2 nodes");
    const auto& r = rg.nodes;

    // distinct inner exponents (one per node at most; usually just one)
    std::vector<double> cs(conj1.begin(), conj1.begin() + static_cast<std::ptrdiff_t>(len));
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::vector<std::size_t> c_index(len);
    for (std::size_t j = 0; j < len; ++j)
        c_index[j] = static_cast<std::size_t>(
            std::lower_bound(cs.begin(), cs.end(), conj1[j]) - cs.begin());

    HardyEval out;
    // inner[ci][t] = int over s in [r_t, infinity) of u(s)^{c}
    std::vector<std::vector<double>> inner(cs.size(), std::vector<double>(len, 0.0));
    std::vector<double> g(len);
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
        for (std::size_t j = 0; j < len; ++j) g[j] = u[j] > 0.0 ? std::pow(u[j], cs[ci]) : 0.0;
        const auto tail = power_tail(r[len - 2], g[len - 2], r[len - 1], g[len - 1]);
        if (tail.divergent) out.inner_divergent = true;
        double acc = tail.divergent ? 0.0 : tail.value;
        inner[ci][len - 1] = acc;
        for (std::size_t j = len - 1; j-- > 0;) {
            acc += power_segment_integral(r[j], g[j], r[j + 1], g[j + 1]);
            inner[ci][j] = acc;
        }
    }

    std::vector<double> m(len);
    out.per_t.assign(len, 0.0);
    for (std::size_t t = 0; t < len; ++t) {
        const std::size_t top = std::max<std::size_t>(t, 1);
        for (std::size_t j = 0; j <= top; ++j) {
            const double inn = inner[c_index[j]][t];
            const double outer_pow = inn > 0.0 ? std::pow(inn, theta2[j] / conj1[j]) : 0.0;
            m[j] = std::pow(v[j], theta2[j]) * outer_pow;
        }
        const auto head = power_head(r[0], m[0], r[1], m[1]);
        if (head.divergent) out.head_divergent = true;
        KahanSum a;
        a.add(head.divergent ? 0.0 : head.value);
        for (std::size_t j = 1; j <= t; ++j)
            a.add(power_segment_integral(r[j - 1], m[j - 1], r[j], m[j]));
        out.per_t[t] = a.value();
        if (a.value() > out.value) {
            out.value = a.value();
            out.witness_t = t;
        }
    }
    return out;
}

struct SymbolicGate {
    bool applicable = false;
    bool divergent = false;
    std::string note;
};

bool constant_span(std::span<const double> xs) {
    for (double x : xs)
        if (x != xs[0]) return false;
    return true;
}

//! Exact convergence analysis for power weights under constant theta:
//! inner tail exponent q, outer head exponent e and the total t-exponent E
//! of the condition integrand are all rational expressions in (beta, theta).
SymbolicGate power_symbolic(const RadialWeight& w1, const RadialWeight& w2,
                            const RadialExponent& th1, const RadialExponent& th2,
                            const std::vector<std::size_t>& x_cells, double alpha_shift_base,
                            const OrderField* alpha) {
    SymbolicGate out;
    if (w1.kind != RadialWeight::Kind::Power || w2.kind != RadialWeight::Kind::Power) return out;
    if (!constant_span(th2.values) || !constant_span(th1.tilde_conj)) return out;
    out.applicable = true;
    const double th = th2.values[0];
    const double c = th1.tilde_conj[0];
    for (std::size_t cell : x_cells) {
        const double b1 = w1.beta_at(cell);
        const double b2 = w2.beta_at(cell);
        const double shift = alpha ? alpha->values[cell] : alpha_shift_base;
        const double q = (shift - 1.0 - b1) * c;       // inner integrand s-exponent
        const double e = b2 * th;                       // outer integrand r-exponent at fixed t
        const double total = e + 1.0 + (q + 1.0) * th / c;  // t-exponent of the sup integrand
        if (q >= -1.0 - kExponentMargin) {
            out.divergent = true;
            out.note = "inner tail exponent " + std::to_string(q) + " >= -1";
            return out;
        }
        if (e <= -1.0 + kExponentMargin) {
            out.divergent = true;
            out.note = "outer head exponent " + std::to_string(e) + " <= -1";
            return out;
        }
        if (total > kExponentMargin) {
            out.divergent = true;
            out.note = "sup grows like t^" + std::to_string(total);
            return out;
        }
    }
    return out;
}

ConditionReport nested_condition(
    const Grid& grid, const std::vector<std::size_t>& x_cells, const RadiusGrid& rg,
    const RadialExponent& th1, const RadialExponent& th2,
    const std::function<double(std::size_t, std::size_t)>& u_fn,
    const std::function<double(std::size_t, std::size_t)>& v_fn, const SymbolicGate& symbolic) {
    check_ordering(th1, th2);
    if (!th1.radius_grid.same_nodes(rg))
        throw std::invalid_argument("theta and the radius grid must share nodes");
    if (x_cells.empty()) throw std::invalid_argument("no sample centers given");

    const std::size_t k = rg.size();
    const std::size_t half_len = rg.truncated(rg.r_max / 2.0).size();

    ConditionReport rep;
    rep.sup_per_t.assign(k, 0.0);
    double half_best = 0.0;
    bool inner_div = false, head_div = false;
    std::vector<double> u(k), v(k);
    for (std::size_t cell : x_cells) {
        for (std::size_t j = 0; j < k; ++j) {
            u[j] = u_fn(cell, j);
            v[j] = v_fn(cell, j);
        }
        const auto full = hardy_eval(rg, k, u, v, th2.values, th1.tilde_conj);
        const auto half = hardy_eval(rg, half_len, u, v, th2.values, th1.tilde_conj);
        inner_div |= full.inner_divergent;
        head_div |= full.head_divergent;
        for (std::size_t t = 0; t < k; ++t)
            rep.sup_per_t[t] = std::max(rep.sup_per_t[t], full.per_t[t]);
        if (full.value > rep.value) {
            rep.value = full.value;
            rep.witness_x = grid.center(cell)[0];
            rep.witness_t = rg.nodes[full.witness_t];
        }
        half_best = std::max(half_best, half.value);
    }

    rep.sensitivity = half_best > 0.0 && std::isfinite(rep.value) ? rep.value / half_best : 1.0;
    rep.finite = std::isfinite(rep.value) && !inner_div && !head_div && rep.sensitivity <= 1.5;
    if (inner_div) rep.note = "inner tail integral divergent at the truncation level";
    else if (head_div) rep.note = "outer integrand not integrable near 0";
    else if (rep.sensitivity > 1.5) rep.note = "value grows under doubled truncation";
    if (symbolic.applicable && symbolic.divergent) {
        rep.finite = false;
        if (rep.note.empty()) rep.note = symbolic.note;
    }
    return rep;
}

double weight_value(const RadialWeight& w, std::size_t cell, std::size_t node, double r) {
    return w.value(cell, node, r, nullptr);
}

}  // namespace

RadialExponent tilde_theta(const RadialExponent& theta) {
    return RadialExponent(theta.radius_grid, theta.tilde, theta.a);
}

ConditionReport condition_A(const RadialWeight& w1, const RadialWeight& w2,
                            const RadialExponent& theta1, const RadialExponent& theta2,
                            const Grid& grid, const std::vector<std::size_t>& x_cells,
                            const RadiusGrid& rg) {
    const auto sym = power_symbolic(w1, w2, theta1, theta2, x_cells, 0.0, nullptr);
    const auto u = [&](std::size_t cell, std::size_t j) {
        return 1.0 / (weight_value(w1, cell, j, rg.nodes[j]) * rg.nodes[j]);
    };
    const auto v = [&](std::size_t cell, std::size_t j) {
        return weight_value(w2, cell, j, rg.nodes[j]);
    };
    return nested_condition(grid, x_cells, rg, theta1, theta2, u, v, sym);
}

ConditionReport condition_T(const RadialWeight& w1, const RadialWeight& w2,
                            const RadialExponent& theta1, const RadialExponent& theta2,
                            const OrderField& alpha, const ExponentField& p, const Grid& grid,
                            const std::vector<std::size_t>& x_cells, const RadiusGrid& rg) {
    if (!(alpha.alpha_minus > 0.0))
        throw std::invalid_argument("condition requires alpha > 0");
    if (!(alpha_p_sup(alpha, p) < static_cast<double>(grid.dim())))
        throw std::invalid_argument("condition requires sup alpha(x) p(x) < n");
    const auto sym = power_symbolic(w1, w2, theta1, theta2, x_cells, 0.0, &alpha);
    const auto u = [&](std::size_t cell, std::size_t j) {
        const double s = rg.nodes[j];
        return std::pow(s, alpha.values[cell] - 1.0) / weight_value(w1, cell, j, s);
    };
    const auto v = [&](std::size_t cell, std::size_t j) {
        return weight_value(w2, cell, j, rg.nodes[j]);
    };
    return nested_condition(grid, x_cells, rg, theta1, theta2, u, v, sym);
}

ConditionReport condition_G(const RadialFunction& u, const RadialFunction& v,
                            const RadialExponent& theta1, const RadialExponent& theta2) {
    if (!u.radius_grid.same_nodes(v.radius_grid))
        throw std::invalid_argument("u and v must share the radius grid");
    check_ordering(theta1, theta2);
    const RadiusGrid& rg = u.radius_grid;
    if (!theta1.radius_grid.same_nodes(rg))
        throw std::invalid_argument("theta and the radius grid must share nodes");

    const std::size_t k = rg.size();
    const std::size_t half_len = rg.truncated(rg.r_max / 2.0).size();
    const auto full = hardy_eval(rg, k, u.values, v.values, theta2.values, theta1.tilde_conj);
    const auto half = hardy_eval(rg, half_len, u.values, v.values, theta2.values,
                                 theta1.tilde_conj);

    ConditionReport rep;
    rep.value = full.value;
    rep.witness_t = rg.nodes[full.witness_t];
    rep.sup_per_t = full.per_t;
    rep.sensitivity = half.value > 0.0 && std::isfinite(full.value) ? full.value / half.value : 1.0;
    rep.finite = std::isfinite(rep.value) && !full.inner_divergent && !full.head_divergent &&
                 rep.sensitivity <= 1.5;
    if (full.inner_divergent) rep.note = "inner tail integral divergent at the truncation level";
    else if (full.head_divergent) rep.note = "outer integrand not integrable near 0";
    else if (rep.sensitivity > 1.5) rep.note = "value grows under doubled truncation";
    return rep;
}

namespace {

//! Shared driver for the power-weight corollaries: the inner integral is
//! replaced by its closed form t^{(shift-1-beta) c + 1} / ((beta+1-shift) c - 1),
//! so the display reduces to a single radial integral per (x, t).
PowerConditionReport power_condition(const std::vector<double>& beta,
                                     const RadialExponent& th1, const RadialExponent& th2,
                                     double gate_sign, const OrderField* alpha,
                                     double alpha_const, const Grid& grid,
                                     const std::vector<std::size_t>& x_cells,
                                     const RadiusGrid& rg,
                                     const std::function<ConditionReport()>& general) {
    check_ordering(th1, th2);
    const std::size_t k = rg.size();
    const std::size_t half_len = rg.truncated(rg.r_max / 2.0).size();
    const auto& r = rg.nodes;
    const auto beta_at = [&](std::size_t cell) {
        return beta.size() == 1 ? beta[0] : beta.at(cell);
    };

    PowerConditionReport out;
    // gate: inf over (x, r) of (beta+1) c for the maximal-type condition
    // (pass when > 1), sup of (alpha - beta - 1) c for the potential type
    // (pass when < -1)
    double gate = gate_sign > 0 ? kInf : -kInf;
    for (std::size_t cell : x_cells) {
        const double a = alpha ? alpha->values[cell] : alpha_const;
        for (std::size_t j = 0; j < k; ++j) {
            const double c = th1.tilde_conj[j];
            if (gate_sign > 0)
                gate = std::min(gate, (beta_at(cell) + 1.0) * c);
            else
                gate = std::max(gate, (a - beta_at(cell) - 1.0) * c);
        }
    }
    out.gate_value = gate;
    out.gate_pass = gate_sign > 0 ? gate > 1.0 : gate < -1.0;

    bool head_div = false;
    bool denom_invalid = false;
    double half_best = 0.0;
    std::vector<double> m(k);
    out.closed_form.sup_per_t.assign(k, 0.0);
    for (std::size_t cell : x_cells) {
        const double b = beta_at(cell);
        const double a = alpha ? alpha->values[cell] : alpha_const;
        for (std::size_t len : {k, half_len}) {
            double best = 0.0;
            double best_t = r[0];
            for (std::size_t t = 0; t < len; ++t) {
                const std::size_t top = std::max<std::size_t>(t, 1);
                bool valid = true;
                for (std::size_t j = 0; j <= top; ++j) {
                    const double c = th1.tilde_conj[j];
                    const double th = th2.values[j];
                    const double denom = (b + 1.0 - a) * c - 1.0;
                    if (denom <= 0.0) {
                        valid = false;
                        break;
                    }
                    const double texp = ((a - b - 1.0) * c + 1.0) * th / c;
                    m[j] = std::pow(r[j], th * b) * std::pow(r[t], texp) /
                           std::pow(denom, th / c);
                }
                if (!valid) {
                    denom_invalid = true;
                    continue;
                }
                const auto head = power_head(r[0], m[0], r[1], m[1]);
                if (head.divergent) head_div = true;
                KahanSum acc;
                acc.add(head.divergent ? 0.0 : head.value);
                for (std::size_t j = 1; j <= t; ++j)
                    acc.add(power_segment_integral(r[j - 1], m[j - 1], r[j], m[j]));
                if (len == k)
                    out.closed_form.sup_per_t[t] =
                        std::max(out.closed_form.sup_per_t[t], acc.value());
                if (acc.value() > best) {
                    best = acc.value();
                    best_t = r[t];
                }
            }
            if (len == k) {
                if (best > out.closed_form.value) {
                    out.closed_form.value = best;
                    out.closed_form.witness_x = grid.center(cell)[0];
                    out.closed_form.witness_t = best_t;
                }
            } else {
                half_best = std::max(half_best, best);
            }
        }
    }

    out.closed_form.sensitivity =
        half_best > 0.0 ? out.closed_form.value / half_best : 1.0;
    out.closed_form.finite = !denom_invalid && !head_div && out.gate_pass &&
                             out.closed_form.sensitivity <= 1.5 &&
                             std::isfinite(out.closed_form.value);
    if (denom_invalid) out.closed_form.note = "inner integral divergent (gate fails)";
    else if (head_div) out.closed_form.note = "outer integrand not integrable near 0";
    else if (out.closed_form.sensitivity > 1.5)
        out.closed_form.note = "value grows under doubled truncation";

    out.general = general();
    return out;
}

}  // namespace

PowerConditionReport condition_A_power(const std::vector<double>& beta,
                                       const RadialExponent& theta1,
                                       const RadialExponent& theta2, const Grid& grid,
                                       const std::vector<std::size_t>& x_cells,
                                       const RadiusGrid& rg) {
    const RadialWeight w = beta.size() == 1 ? RadialWeight::power(beta[0])
                                            : RadialWeight::power_field(beta);
    return power_condition(beta, theta1, theta2, +1.0, nullptr, 0.0, grid, x_cells, rg,
                           [&] { return condition_A(w, w, theta1, theta2, grid, x_cells, rg); });
}

PowerConditionReport condition_T_power(const std::vector<double>& beta,
                                       const RadialExponent& theta1,
                                       const RadialExponent& theta2, const OrderField& alpha,
                                       const ExponentField& p, const Grid& grid,
                                       const std::vector<std::size_t>& x_cells,
                                       const RadiusGrid& rg) {
    const RadialWeight w = beta.size() == 1 ? RadialWeight::power(beta[0])
                                            : RadialWeight::power_field(beta);
    return power_condition(beta, theta1, theta2, -1.0, &alpha, 0.0, grid, x_cells, rg, [&] {
        return condition_T(w, w, theta1, theta2, alpha, p, grid, x_cells, rg);
    });
}

double spanne_condition_maximal(const RadialWeight& w1, const RadialWeight& w2,
                                const ExponentField& p, const Grid& grid,
                                const std::vector<std::size_t>& x_cells, const RadiusGrid& rg) {
    if (x_cells.empty()) throw std::invalid_argument("no sample centers given");
    for (std::size_t cell : x_cells)
        if (cell >= grid.cell_count()) throw std::invalid_argument("sample center out of range");
    const std::size_t k = rg.size();
    double best = 0.0;
    std::vector<double> suffix_min(k), suffix_max(k);
    for (std::size_t cell : x_cells) {
        // essinf over [t, infinity): suffix minimum of w1 over the nodes
        double m = kInf;
        for (std::size_t j = k; j-- > 0;) {
            m = std::min(m, weight_value(w1, cell, j, rg.nodes[j]));
            suffix_min[j] = m;
        }
        // sup over t >= r of essinf / t^{eta_p}
        double s = 0.0;
        for (std::size_t j = k; j-- > 0;) {
            s = std::max(s, suffix_min[j] * std::pow(rg.nodes[j], -eta_p(p, cell, rg.nodes[j])));
            suffix_max[j] = s;
        }
        for (std::size_t j = 0; j < k; ++j) {
            const double denom = weight_value(w2, cell, j, rg.nodes[j]) *
                                 std::pow(rg.nodes[j], -eta_p(p, cell, rg.nodes[j]));
            best = std::max(best, suffix_max[j] / denom);
        }
    }
    return best;
}

ConditionReport spanne_condition_potential(const RadialWeight& w1, const RadialWeight& w2,
                                           const ExponentField& p, const ExponentField& q,
                                           const Grid& grid,
                                           const std::vector<std::size_t>& x_cells,
                                           const RadiusGrid& rg) {
    if (x_cells.empty()) throw std::invalid_argument("no sample centers given");
    const std::size_t k = rg.size();
    const std::size_t half_len = rg.truncated(rg.r_max / 2.0).size();
    const auto& r = rg.nodes;

    ConditionReport rep;
    bool tail_div = false;
    double half_best = 0.0;
    std::vector<double> suffix_min(k), integrand(k);
    for (std::size_t cell : x_cells) {
        double m = kInf;
        for (std::size_t j = k; j-- > 0;) {
            m = std::min(m, weight_value(w1, cell, j, r[j]));
            suffix_min[j] = m;
        }
        for (std::size_t j = 0; j < k; ++j)
            integrand[j] = suffix_min[j] * std::pow(r[j], -1.0 - eta_p(p, cell, r[j]));

        for (std::size_t len : {k, half_len}) {
            // tail of the truncated integrand (suffix_min is flat there, so
            // the fit sees the pure power decay)
            const auto tail = power_tail(r[len - 2], integrand[len - 2], r[len - 1],
                                         integrand[len - 1]);
            if (len == k && tail.divergent) tail_div = true;
            double acc = tail.divergent ? 0.0 : tail.value;
            double best = 0.0, best_t = r[0];
            std::vector<double> num(len);
            num[len - 1] = acc;
            for (std::size_t j = len - 1; j-- > 0;) {
                acc += power_segment_integral(r[j], integrand[j], r[j + 1], integrand[j + 1]);
                num[j] = acc;
            }
            for (std::size_t j = 0; j < len; ++j) {
                const double denom = weight_value(w2, cell, j, r[j]) *
                                     std::pow(r[j], -eta_p(q, cell, r[j]));
                const double val = num[j] / denom;
                if (val > best) {
                    best = val;
                    best_t = r[j];
                }
            }
            if (len == k) {
                if (best > rep.value) {
                    rep.value = best;
                    rep.witness_x = grid.center(cell)[0];
                    rep.witness_t = best_t;
                }
            } else {
                half_best = std::max(half_best, best);
            }
        }
    }
    rep.sensitivity = half_best > 0.0 ? rep.value / half_best : 1.0;
    rep.finite = !tail_div && rep.sensitivity <= 1.5 && std::isfinite(rep.value);
    if (tail_div) rep.note = "tail integral divergent at the truncation level";
    else if (rep.sensitivity > 1.5) rep.note = "value grows under doubled truncation";
    return rep;
}

ExponentField sobolev_exponent(const ExponentField& p, const OrderField& alpha) {
    const double n = static_cast<double>(p.grid.dim());
    if (!(alpha_p_sup(alpha, p) < n))
        throw std::invalid_argument("sobolev exponent requires sup alpha(x) p(x) < n");
    std::vector<double> q(p.values.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double a = alpha.values[i];
        q[i] = a == 0.0 ? p.values[i] : 1.0 / (1.0 / p.values[i] - a / n);
    }
    std::optional<double> q_inf;
    if (p.p_inf && alpha.alpha_inf) {
        const double a = *alpha.alpha_inf;
        q_inf = a == 0.0 ? *p.p_inf : 1.0 / (1.0 / *p.p_inf - a / n);
    }
    return ExponentField(p.grid, std::move(q), q_inf);
}

ConditionReport singular_condition(const RadialWeight& w1, const RadialWeight& w2,
                                   const RadialExponent& theta1, const RadialExponent& theta2,
                                   const Grid& grid, const std::vector<std::size_t>& x_cells,
                                   const RadiusGrid& rg) {
    if (x_cells.empty()) throw std::invalid_argument("no sample centers given");
    if (!theta1.radius_grid.same_nodes(rg) || !theta2.radius_grid.same_nodes(rg))
        throw std::invalid_argument("theta and the radius grid must share nodes");
    const std::size_t k = rg.size();
    const RadiusGrid half = rg.truncated(rg.r_max / 2.0);

    std::vector<double> conj1(k);
    for (std::size_t j = 0; j < k; ++j)
        conj1[j] = theta1.values[j] / (theta1.values[j] - 1.0);

    ConditionReport rep;
    bool inner_div = false, outer_div = false;
    double half_best = 0.0;
    std::vector<double> u(k), phi(k);
    for (std::size_t cell : x_cells) {
        for (std::size_t j = 0; j < k; ++j)
            u[j] = 1.0 / (rg.nodes[j] * weight_value(w1, cell, j, rg.nodes[j]));

        for (const bool half_run : {false, true}) {
            const RadiusGrid& grid_r = half_run ? half : rg;
            const std::size_t len = grid_r.size();
            double tail_q_outer = -kInf;
            for (std::size_t j = 0; j < len; ++j) {
                const auto in = radial_luxemburg(std::span(u).first(len),
                                                 std::span(conj1).first(len), grid_r, j, true);
                if (!half_run && in.tail_divergent) inner_div = true;
                phi[j] = weight_value(w2, cell, j, grid_r.nodes[j]) * in.norm;
            }
            const auto outer = radial_luxemburg(std::span(phi).first(len),
                                                std::span(theta2.values).first(len), grid_r, 0,
                                                true);
            tail_q_outer = outer.tail_exponent;
            if (half_run) {
                half_best = std::max(half_best, outer.norm);
            } else {
                if (outer.tail_divergent) outer_div = true;
                if (outer.norm > rep.value) {
                    rep.value = outer.norm;
                    rep.witness_x = grid.center(cell)[0];
                    rep.witness_t = tail_q_outer;  // fitted outer exponent as diagnostic
                }
            }
        }
    }
    rep.sensitivity = half_best > 0.0 ? rep.value / half_best : 1.0;
    rep.finite = !inner_div && !outer_div && rep.sensitivity <= 1.5 && std::isfinite(rep.value);
    if (inner_div) rep.note = "inner norm divergent at the truncation level";
    else if (outer_div) rep.note = "outer norm divergent at the truncation level";
    else if (rep.sensitivity > 1.5) rep.note = "value grows under doubled truncation";
    return rep;
}

}  // namespace gmorrey
