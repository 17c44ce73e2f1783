#include "gmorrey/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gmorrey/numerics.hpp"
#include "gmorrey/operators.hpp"
#include "gmorrey/vlebesgue.hpp"

namespace gmorrey {

namespace {

double radial_distance(const Grid& g, std::size_t cell, const Point& c) {
    return g.distance(cell, c);
}

double abs_coord(const Grid& g, std::size_t cell) {
    const Point x = g.center(cell);
    return g.dim() == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
}

}  // namespace

// --- FieldSpec ---

ScalarField FieldSpec::sample(const Grid& g) const {
    std::vector<double> v(g.cell_count(), 0.0);
    switch (kind) {
        case Kind::Constant:
            std::fill(v.begin(), v.end(), value);
            break;
        case Kind::IndicatorBall:
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = radial_distance(g, i, center) < radius ? 1.0 : 0.0;
            break;
        case Kind::Power:
            for (std::size_t i = 0; i < v.size(); ++i) {
                const double d = radial_distance(g, i, center);
                if (d < radius) v[i] = std::pow(std::max(d, 1e-9), -exponent);
            }
            break;
        case Kind::GaussianSum:
            for (std::size_t i = 0; i < v.size(); ++i) {
                double s = 0.0;
                for (const auto& comp : gaussians) {
                    const double d = radial_distance(g, i, comp.center) / comp.width;
                    s += comp.amplitude * std::exp(-d * d);
                }
                v[i] = s;
            }
            break;
        case Kind::Table:
            if (table.size() != v.size())
                throw std::invalid_argument("table field does not match the grid");
            v = table;
            break;
    }
    if (scale != 1.0)
        for (double& x : v) x *= scale;
    return ScalarField(g, std::move(v));
}

FieldSpec FieldSpec::constant(double c) {
    FieldSpec f;
    f.kind = Kind::Constant;
    f.value = c;
    return f;
}

FieldSpec FieldSpec::indicator_ball(Point c, double r) {
    FieldSpec f;
    f.kind = Kind::IndicatorBall;
    f.center = c;
    f.radius = r;
    return f;
}

FieldSpec FieldSpec::power_bump(Point c, double exponent, double radius) {
    FieldSpec f;
    f.kind = Kind::Power;
    f.center = c;
    f.exponent = exponent;
    f.radius = radius;
    return f;
}

// --- ExponentSpec ---

ExponentField ExponentSpec::sample(const Grid& g) const {
    std::vector<double> v(g.cell_count());
    std::optional<double> pinf;
    switch (kind) {
        case Kind::Constant:
            std::fill(v.begin(), v.end(), value);
            pinf = p_inf_value > 0.0 ? p_inf_value : value;
            break;
        case Kind::TwoStep:
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = g.center(i)[0] < split ? left : right;
            if (p_inf_value > 0.0) pinf = p_inf_value;
            break;
        case Kind::LogDecay:
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = p_inf_value +
                       amplitude / std::log(std::exp(1.0) + abs_coord(g, i));
            pinf = p_inf_value;
            break;
        case Kind::Table:
            if (table.size() != v.size())
                throw std::invalid_argument("table exponent does not match the grid");
            v = table;
            if (p_inf_value > 0.0) pinf = p_inf_value;
            break;
    }
    return ExponentField(g, std::move(v), pinf);
}

ExponentSpec ExponentSpec::constant(double p) {
    ExponentSpec s;
    s.kind = Kind::Constant;
    s.value = p;
    return s;
}

ExponentSpec ExponentSpec::two_step(double left, double right, double split, double p_inf) {
    ExponentSpec s;
    s.kind = Kind::TwoStep;
    s.left = left;
    s.right = right;
    s.split = split;
    s.p_inf_value = p_inf;
    return s;
}

ExponentSpec ExponentSpec::log_decay(double p_inf, double amplitude) {
    ExponentSpec s;
    s.kind = Kind::LogDecay;
    s.p_inf_value = p_inf;
    s.amplitude = amplitude;
    return s;
}

// --- OrderSpec ---

OrderField OrderSpec::sample(const Grid& g) const {
    std::vector<double> v(g.cell_count());
    std::optional<double> ainf;
    switch (kind) {
        case Kind::Constant:
            std::fill(v.begin(), v.end(), value);
            ainf = value;
            break;
        case Kind::SinBump:
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = base + amplitude * std::sin(frequency * g.center(i)[0]);
            ainf = base;
            break;
    }
    return OrderField(g, std::move(v), ainf);
}

OrderSpec OrderSpec::constant(double a) {
    OrderSpec s;
    s.kind = Kind::Constant;
    s.value = a;
    return s;
}

OrderSpec OrderSpec::sin_bump(double base, double amplitude, double frequency) {
    OrderSpec s;
    s.kind = Kind::SinBump;
    s.base = base;
    s.amplitude = amplitude;
    s.frequency = frequency;
    return s;
}

// --- TestFamily ---

std::vector<FieldSpec> TestFamily::members(const Domain& domain, double p_plus) const {
    Rng rng(seed);
    const double ext = domain.extent();
    const double n = static_cast<double>(domain.n);
    const auto random_center = [&] {
        Point c{{0.0, 0.0}};
        for (int ax = 0; ax < domain.n; ++ax) {
            const auto k = static_cast<std::size_t>(ax);
            c[k] = rng.uniform(domain.lo[k] + 0.08 * ext, domain.hi[k] - 0.08 * ext);
        }
        return c;
    };

    std::vector<FieldSpec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (kind == "ball-indicators") {
            out.push_back(FieldSpec::indicator_ball(random_center(), rng.uniform(0.04, 0.15) * ext));
        } else if (kind == "power-bumps") {
            const double beta = 0.9 * (n / p_plus) * rng.uniform(0.05, 1.0);
            out.push_back(FieldSpec::power_bump(random_center(), beta, rng.uniform(0.05, 0.18) * ext));
        } else if (kind == "random-smooth") {
            FieldSpec f;
            f.kind = FieldSpec::Kind::GaussianSum;
            for (int c = 0; c < 3; ++c)
                f.gaussians.push_back({random_center(), rng.uniform(0.03, 0.12) * ext,
                                       rng.uniform(-1.0, 1.0)});
            out.push_back(std::move(f));
        } else {
            throw std::invalid_argument("unknown family kind: " + kind);
        }
    }
    return out;
}

// --- verification ---

std::vector<Point> default_centers(const Grid& g) {
    std::vector<Point> out;
    if (g.dim() == 1) {
        const double fr[9] = {0.02, 0.14, 0.26, 0.38, 0.50, 0.62, 0.74, 0.86, 0.98};
        for (double f : fr) {
            Point x{{g.domain.lo[0] + f * g.domain.extent(), 0.0}};
            out.push_back(g.center(g.cell_at(x)));
        }
    } else {
        const double fr[3] = {0.06, 0.50, 0.94};
        for (double fy : fr)
            for (double fx : fr) {
                Point x{{g.domain.lo[0] + fx * g.domain.extent(),
                         g.domain.lo[1] + fy * g.domain.extent()}};
                out.push_back(g.center(g.cell_at(x)));
            }
    }
    return out;
}

namespace {

struct RatioPass {
    std::vector<RatioSample> samples;
    double cmax = 0.0;
    std::size_t zero_rhs = 0;
};

//! LHS profile of op_field in lhs_exp against the tail integral (or tail sup
//! for sup_form) of the f-profile, weighted by the eta exponent of rhs_eta.
RatioPass local_ratios(std::size_t member, const ScalarField& op_field,
                       const ExponentField& lhs_exp, const ScalarField& f,
                       const ExponentField& p, const ExponentField& rhs_eta, bool sup_form,
                       const std::vector<Point>& centers, const RadiusGrid& rg,
                       const LuxemburgOptions& opts) {
    RatioPass out;
    const std::size_t k = rg.size();
    for (const Point& x : centers) {
        const auto lhs_prof = ball_norm_profile(op_field, lhs_exp, x, rg, opts);
        const auto rhs_prof = ball_norm_profile(f, p, x, rg, opts);
        const std::size_t cell = f.grid.cell_at(x);
        for (std::size_t t = 0; t < k; ++t) {
            const double tt = rg.nodes[t];
            if (sup_form ? (tt >= rg.r_max / 2.0) : (tt > rg.r_max / 2.0)) break;
            double rhs = 0.0;
            if (sup_form) {
                double sup = 0.0;
                for (std::size_t j = 0; j < k; ++j)
                    if (rg.nodes[j] > 2.0 * tt)
                        sup = std::max(sup, std::pow(rg.nodes[j], -eta_p(rhs_eta, cell, rg.nodes[j])) *
                                                rhs_prof[j]);
                rhs = std::pow(tt, eta_p(rhs_eta, cell, tt)) * sup;
            } else {
                KahanSum s;
                for (std::size_t j = t + 1; j < k; ++j)
                    s.add(std::pow(rg.nodes[j], -eta_p(rhs_eta, cell, rg.nodes[j]) - 1.0) *
                          rhs_prof[j] * rg.dr[j]);
                // analytic tail with the profile saturated at its last value
                const double eta_end = eta_p(rhs_eta, cell, rg.r_max);
                s.add(rhs_prof[k - 1] * std::pow(rg.r_max, -eta_end) / eta_end);
                rhs = std::pow(tt, eta_p(rhs_eta, cell, tt)) * s.value();
            }
            const double lhs = lhs_prof[t];
            if (rhs == 0.0) {
                if (lhs > 0.0) out.zero_rhs += 1;
                continue;
            }
            const double ratio = lhs / rhs;
            out.samples.push_back({member, x[0], x[1], tt, lhs, rhs, ratio});
            out.cmax = std::max(out.cmax, ratio);
        }
    }
    return out;
}

enum class CheckKind { Embedding, MaximalSup, MaximalIntegral, Riesz, WeightedRiesz };

double family_constant(CheckKind kind, const VerifyConfig& cfg, std::size_t cells,
                       std::vector<RatioSample>* keep_samples, std::size_t* zero_rhs) {
    const Grid g = make_grid(cfg.domain, cells);
    const ExponentField p = cfg.p_spec.sample(g);
    const auto centers = default_centers(g);
    const auto members = cfg.family.members(cfg.domain, p.p_plus);

    ExponentField lhs_exp = p;
    OrderField alpha = cfg.alpha_spec.sample(g);
    if (kind == CheckKind::Riesz || kind == CheckKind::WeightedRiesz) {
        if (kind == CheckKind::WeightedRiesz)
            alpha.attach_decay_constant(decay_condition_constant(p));
        lhs_exp = sobolev_exponent(p, alpha);
    }

    double cmax = 0.0;
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
        const ScalarField f = members[mi].sample(g);
        ScalarField op_field = f;
        switch (kind) {
            case CheckKind::Embedding:
                break;
            case CheckKind::MaximalSup:
            case CheckKind::MaximalIntegral:
                op_field = maximal(f, cfg.radius_grid);
                break;
            case CheckKind::Riesz:
                op_field = riesz_potential(f, alpha);
                break;
            case CheckKind::WeightedRiesz:
                op_field = weighted_riesz(f, alpha);
                break;
        }
        const bool sup_form = kind == CheckKind::MaximalSup;
        auto pass = local_ratios(mi, op_field, lhs_exp, f, p, lhs_exp, sup_form, centers,
                                 cfg.radius_grid, cfg.lux);
        cmax = std::max(cmax, pass.cmax);
        if (zero_rhs) *zero_rhs += pass.zero_rhs;
        if (keep_samples)
            keep_samples->insert(keep_samples->end(), pass.samples.begin(), pass.samples.end());
    }
    return cmax;
}

VerifyReport run_check(const std::string& id, CheckKind kind, const VerifyConfig& cfg) {
    VerifyReport rep;
    rep.id = id;
    rep.domain = cfg.domain;
    rep.base_cells = cfg.cells;
    rep.radius_grid = cfg.radius_grid;
    rep.family = cfg.family;
    rep.tolerance = cfg.lux.rel_tol;
    rep.constant = family_constant(kind, cfg, cfg.cells, &rep.samples, &rep.zero_rhs_failures);
    rep.constant_refined = family_constant(kind, cfg, cfg.cells * 2, nullptr, nullptr);
    rep.pass = std::isfinite(rep.constant) && rep.zero_rhs_failures == 0 &&
               rep.constant_refined <= 2.0 * rep.constant;
    return rep;
}

}  // namespace

VerifyReport verify_local_embedding(const VerifyConfig& cfg) {
    return run_check("local-embedding", CheckKind::Embedding, cfg);
}

MaximalVerifyReports verify_maximal_local(const VerifyConfig& cfg) {
    MaximalVerifyReports out;
    out.sup_form = run_check("maximal-local-sup", CheckKind::MaximalSup, cfg);
    out.integral_form = run_check("maximal-local-integral", CheckKind::MaximalIntegral, cfg);
    return out;
}

VerifyReport verify_riesz_local(const VerifyConfig& cfg) {
    return run_check("riesz-local", CheckKind::Riesz, cfg);
}

VerifyReport verify_weighted_riesz_local(const VerifyConfig& cfg) {
    return run_check("weighted-riesz-local", CheckKind::WeightedRiesz, cfg);
}

// --- operator norm estimation ---

ScalarField apply_operator(const OperatorSpec& op, const ScalarField& f, const ExponentField& p,
                           const RadiusGrid& rg) {
    switch (op.kind) {
        case OperatorSpec::Kind::Identity:
            return f;
        case OperatorSpec::Kind::Maximal:
            return maximal(f, rg);
        case OperatorSpec::Kind::FractionalMaximal: {
            if (!op.alpha) throw std::invalid_argument("fractional maximal needs alpha");
            return fractional_maximal(f, op.alpha->sample(f.grid), rg);
        }
        case OperatorSpec::Kind::Riesz: {
            if (!op.alpha) throw std::invalid_argument("riesz needs alpha");
            return riesz_potential(f, op.alpha->sample(f.grid));
        }
        case OperatorSpec::Kind::WeightedRiesz: {
            if (!op.alpha) throw std::invalid_argument("weighted riesz needs alpha");
            OrderField alpha = op.alpha->sample(f.grid);
            alpha.attach_decay_constant(decay_condition_constant(p));
            return weighted_riesz(f, alpha);
        }
    }
    throw std::logic_error("unreachable operator kind");
}

OperatorNormReport estimate_operator_norm(const OperatorSpec& op, const MorreySpaceSpec& src,
                                          const MorreySpaceSpec& dst,
                                          const std::vector<FieldSpec>& family_members,
                                          const Grid& grid, const LuxemburgOptions& opts) {
    const bool potential_type = op.kind == OperatorSpec::Kind::FractionalMaximal ||
                                op.kind == OperatorSpec::Kind::Riesz ||
                                op.kind == OperatorSpec::Kind::WeightedRiesz;
    if (potential_type) {
        const ExponentField q = sobolev_exponent(src.p, op.alpha->sample(grid));
        for (std::size_t i = 0; i < q.values.size(); ++i)
            if (std::abs(q.values[i] - dst.p.values[i]) > 1e-9)
                throw std::invalid_argument(
                    "destination exponent must be the Sobolev exponent of the source");
    }

    OperatorNormReport rep;
    for (std::size_t mi = 0; mi < family_members.size(); ++mi) {
        const ScalarField f = family_members[mi].sample(grid);
        const double src_norm = gm_norm(f, src, opts);
        if (src_norm == 0.0) {
            rep.skipped += 1;
            continue;
        }
        const ScalarField g = apply_operator(op, f, src.p, src.radius_grid);
        const double dst_norm = gm_norm(g, dst, opts);
        const double ratio = dst_norm / src_norm;
        rep.members.push_back({mi, src_norm, dst_norm, ratio});
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    return rep;
}

}  // namespace gmorrey
