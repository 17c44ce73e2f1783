#include "gmorrey/morrey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gmorrey/numerics.hpp"

namespace gmorrey {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

// --- RadialWeight ---

RadialWeight RadialWeight::power(double beta_value, double amplitude_value) {
    require(amplitude_value > 0.0, "power weight amplitude must be positive");
    RadialWeight w;
    w.kind = Kind::Power;
    w.beta = {beta_value};
    w.amplitude = {amplitude_value};
    return w;
}

RadialWeight RadialWeight::power_field(std::vector<double> beta, std::vector<double> amplitude) {
    require(!beta.empty(), "power weight needs beta samples");
    for (double a : amplitude) require(a > 0.0, "power weight amplitude must be positive");
    RadialWeight w;
    w.kind = Kind::Power;
    w.beta = std::move(beta);
    w.amplitude = std::move(amplitude);
    return w;
}

RadialWeight RadialWeight::table_radial(std::vector<double> samples) {
    require(!samples.empty(), "table weight needs samples");
    for (double v : samples) require(v > 0.0, "weight samples must be positive");
    RadialWeight w;
    w.kind = Kind::Table;
    w.table.push_back(std::move(samples));
    return w;
}

RadialWeight RadialWeight::table_full(std::vector<std::vector<double>> samples) {
    require(!samples.empty(), "table weight needs samples");
    for (const auto& row : samples)
        for (double v : row) require(v > 0.0, "weight samples must be positive");
    RadialWeight w;
    w.kind = Kind::Table;
    w.table = std::move(samples);
    return w;
}

RadialWeight RadialWeight::lambda_form(std::vector<double> lambda, int n) {
    require(!lambda.empty(), "lambda weight needs samples");
    for (double l : lambda)
        require(l >= 0.0 && l <= static_cast<double>(n), "lambda must lie in [0, n]");
    RadialWeight w;
    w.kind = Kind::Lambda;
    w.lambda = std::move(lambda);
    return w;
}

double RadialWeight::beta_at(std::size_t cell) const {
    return beta.size() == 1 ? beta[0] : beta.at(cell);
}

double RadialWeight::amplitude_at(std::size_t cell) const {
    if (amplitude.empty()) return 1.0;
    return amplitude.size() == 1 ? amplitude[0] : amplitude.at(cell);
}

double RadialWeight::value(std::size_t cell, std::size_t node, double r,
                           const ExponentField* p) const {
    switch (kind) {
        case Kind::Power:
            return amplitude_at(cell) * std::pow(r, beta_at(cell));
        case Kind::Table: {
            const auto& row = table.size() == 1 ? table[0] : table.at(cell);
            return row.at(node);
        }
        case Kind::Lambda: {
            require(p != nullptr, "lambda weight needs the exponent field");
            const double l = lambda.size() == 1 ? lambda[0] : lambda.at(cell);
            const double px = p->values[cell];
            return std::pow(r, -l / px + eta_p(*p, cell, r));
        }
    }
    return 0.0;
}

RadialWeight RadialWeight::scaled(double c) const {
    require(c > 0.0, "weight scale must be positive");
    RadialWeight out = *this;
    if (kind == Kind::Power) {
        if (out.amplitude.empty()) out.amplitude.assign(out.beta.size(), 1.0);
        for (double& a : out.amplitude) a *= c;
    } else if (kind == Kind::Table) {
        for (auto& row : out.table)
            for (double& v : row) v *= c;
    } else {
        throw std::invalid_argument("lambda weights cannot be rescaled");
    }
    return out;
}

// --- profiles ---

std::vector<double> ball_norm_profile(const ScalarField& f, const ExponentField& p,
                                      const Point& x, const RadiusGrid& rg,
                                      const LuxemburgOptions& opts) {
    require(f.grid.same_layout(p.grid), "field and exponent must share the grid");
    const Grid& g = f.grid;
    const std::size_t k = rg.size();
    const std::size_t nv = p.distinct_values.size();
    const double hn = g.cell_measure();
    const auto& nodes = rg.nodes;

    // coefficient of eta^{-p_v} binned by the first node beyond the cell distance
    std::vector<double> coeff(k * nv, 0.0);
    std::vector<std::size_t> cnt(k, 0);
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
        const double d = g.distance(i, x);
        const auto b = static_cast<std::size_t>(
            std::upper_bound(nodes.begin(), nodes.end(), d) - nodes.begin());
        if (b == k) continue;
        cnt[b] += 1;
        const double a = std::abs(f.values[i]);
        if (a == 0.0) continue;
        coeff[b * nv + p.value_index[i]] += std::pow(a, p.values[i]) * hn;
    }
    for (std::size_t j = 1; j < k; ++j) {
        cnt[j] += cnt[j - 1];
        for (std::size_t v = 0; v < nv; ++v) coeff[j * nv + v] += coeff[(j - 1) * nv + v];
    }

    std::vector<double> prof(k, 0.0);
    BucketedModular J;
    J.p_values = &p.distinct_values;
    double warm = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        if (cnt[j] == 0) continue;
        J.coeffs.assign(coeff.begin() + static_cast<std::ptrdiff_t>(j * nv),
                        coeff.begin() + static_cast<std::ptrdiff_t>((j + 1) * nv));
        const auto res = luxemburg_from_modular(J, p.p_minus, warm, opts);
        prof[j] = res.norm;
        if (res.norm > 0.0) warm = res.norm;
    }
    return prof;
}

RadialFunction local_norm_profile(const ScalarField& f, const ExponentField& p, const Point& x,
                                  const RadiusGrid& rg, const LuxemburgOptions& opts) {
    return RadialFunction(rg, ball_norm_profile(f, p, x, rg, opts));
}

// --- radial Luxemburg norm ---

RadialLuxResult radial_luxemburg(std::span<const double> phi, std::span<const double> theta,
                                 const RadiusGrid& rg, std::size_t from, bool tail_extend,
                                 const LuxemburgOptions& opts) {
    const std::size_t k = rg.size();
    require(phi.size() == k && theta.size() == k, "radial data must align with the grid");
    require(from < k, "start node out of range");

    RadialLuxResult out;
    bool any = false;
    for (std::size_t j = from; j < k; ++j)
        if (phi[j] != 0.0) any = true;
    if (!any) return out;

    // fitted exponent of the modular integrand on the last grid segment
    // (eta = 1); valid for every eta when theta is constant on the tail
    double tail_q = -std::numeric_limits<double>::infinity();
    if (k >= 2) {
        const double ga = std::pow(std::abs(phi[k - 2]), theta[k - 2]);
        const double gb = std::pow(std::abs(phi[k - 1]), theta[k - 1]);
        if (ga > 0.0 && gb > 0.0) tail_q = fitted_exponent(rg.nodes[k - 2], ga, rg.nodes[k - 1], gb);
    }
    out.tail_exponent = tail_q;
    out.tail_divergent = tail_q >= -1.0 - kExponentMargin;

    const bool add_tail = tail_extend && !out.tail_divergent && std::isfinite(tail_q);
    const auto J = [&](double eta) -> double {
        KahanSum s;
        for (std::size_t j = from; j < k; ++j) {
            const double a = std::abs(phi[j]);
            if (a == 0.0) continue;
            const double term = std::pow(a / eta, theta[j]) * rg.dr[j];
            if (!std::isfinite(term)) return std::numeric_limits<double>::infinity();
            s.add(term);
        }
        if (add_tail) {
            const double m_end = std::pow(std::abs(phi[k - 1]) / eta, theta[k - 1]);
            s.add(m_end * rg.nodes[k - 1] / (-(tail_q + 1.0)));
        }
        return s.value();
    };

    double theta_minus = theta[from];
    for (std::size_t j = from; j < k; ++j) theta_minus = std::min(theta_minus, theta[j]);
    const double j1 = J(1.0);
    if (j1 == 0.0) return out;
    const double eta0 = std::pow(std::max(j1, 1.0), 1.0 / theta_minus);
    out.norm = solve_decreasing_unit(J, eta0, opts.rel_tol, opts.max_iter).root;
    return out;
}

// --- norms ---

double variable_morrey_lambda_norm(const ScalarField& f, const ExponentField& p,
                                   const std::vector<double>& lambda, const RadiusGrid& rg,
                                   const LuxemburgOptions& opts) {
    const Grid& g = f.grid;
    require(lambda.size() == 1 || lambda.size() == g.cell_count(),
            "lambda must be scalar or per-cell");
    double best = 0.0;
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        const auto prof = ball_norm_profile(f, p, g.center(c), rg, opts);
        const double l = lambda.size() == 1 ? lambda[0] : lambda[c];
        const double lp = l / p.values[c];
        for (std::size_t j = 0; j < rg.size(); ++j)
            best = std::max(best, std::pow(rg.nodes[j], -lp) * prof[j]);
    }
    return best;
}

double generalized_morrey_norm(const ScalarField& f, const ExponentField& p,
                               const RadialWeight& w, MorreyNormalization normalization,
                               const RadiusGrid& rg, const LuxemburgOptions& opts) {
    const Grid& g = f.grid;
    const double n = static_cast<double>(g.dim());
    double best = 0.0;
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        const auto prof = ball_norm_profile(f, p, g.center(c), rg, opts);
        for (std::size_t j = 0; j < rg.size(); ++j) {
            const double r = rg.nodes[j];
            const double wv = w.value(c, j, r, &p);
            const double q = normalization == MorreyNormalization::Bounded
                                 ? std::pow(r, -n / p.values[c]) / wv * prof[j]
                                 : prof[j] / wv;
            best = std::max(best, q);
        }
    }
    return best;
}

double gm_norm(const ScalarField& f, const MorreySpaceSpec& spec, const LuxemburgOptions& opts) {
    const Grid& g = f.grid;
    require(g.same_layout(spec.p.grid), "field and space spec must share the grid");
    const RadiusGrid& rg = spec.radius_grid;
    if (spec.theta) require(spec.theta->radius_grid.same_nodes(rg), "theta grid mismatch");

    std::vector<double> phi(rg.size());
    double best = 0.0;
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        const auto prof = ball_norm_profile(f, spec.p, g.center(c), rg, opts);
        for (std::size_t j = 0; j < rg.size(); ++j) {
            const double r = rg.nodes[j];
            phi[j] = spec.w.value(c, j, r, &spec.p) * std::pow(r, -eta_p(spec.p, c, r)) * prof[j];
        }
        double val;
        if (!spec.theta) {
            val = *std::max_element(phi.begin(), phi.end());
        } else {
            val = radial_luxemburg(phi, spec.theta->values, rg, 0, false, opts).norm;
        }
        best = std::max(best, val);
    }
    return best;
}

double gm_lambda_norm(const ScalarField& f, const ExponentField& p,
                      const std::optional<RadialExponent>& theta,
                      const std::vector<double>& lambda, const RadiusGrid& rg,
                      const LuxemburgOptions& opts) {
    MorreySpaceSpec spec{p, theta, RadialWeight::lambda_form(lambda, p.grid.dim()), rg};
    return gm_norm(f, spec, opts);
}

NonemptinessReport nonemptiness_check(const MorreySpaceSpec& spec, const LuxemburgOptions& opts) {
    const Grid& g = spec.p.grid;
    const RadiusGrid& rg = spec.radius_grid;
    const RadiusGrid half = rg.truncated(rg.r_max / 2.0);

    NonemptinessReport out;
    double best_half = 0.0;
    std::vector<double> phi(rg.size());
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        for (std::size_t j = 0; j < rg.size(); ++j)
            phi[j] = spec.w.value(c, j, rg.nodes[j], &spec.p);

        double val, val_half, tail_q;
        if (!spec.theta) {
            val = *std::max_element(phi.begin(), phi.end());
            val_half = *std::max_element(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(half.size()));
            const double ga = phi[rg.size() - 2];
            const double gb = phi[rg.size() - 1];
            tail_q = (ga > 0.0 && gb > 0.0)
                         ? fitted_exponent(rg.nodes[rg.size() - 2], ga, rg.nodes[rg.size() - 1], gb)
                         : -std::numeric_limits<double>::infinity();
            // sup norm diverges iff the weight grows at infinity
            if (tail_q > kExponentMargin) out.finite = false;
        } else {
            const auto full = radial_luxemburg(phi, spec.theta->values, rg, 0, false, opts);
            const auto part = radial_luxemburg(std::span(phi).first(half.size()),
                                               std::span(spec.theta->values).first(half.size()),
                                               half, 0, false, opts);
            val = full.norm;
            val_half = part.norm;
            tail_q = full.tail_exponent;
            if (full.tail_divergent) out.finite = false;
        }
        if (val > out.value) {
            out.value = val;
            out.witness_cell = c;
            out.tail_exponent = tail_q;
        }
        best_half = std::max(best_half, val_half);
    }
    out.sensitivity = best_half > 0.0 ? out.value / best_half : 1.0;
    if (out.sensitivity > 1.5) out.finite = false;
    return out;
}

}  // namespace gmorrey
