#include "gmorrey/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gmorrey {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

// --- Domain ---

Domain Domain::interval(double a, double b) {
    Domain d;
    d.n = 1;
    d.lo = {a, 0.0};
    d.hi = {b, 0.0};
    d.validate();
    return d;
}

Domain Domain::square(double a, double b) {
    Domain d;
    d.n = 2;
    d.lo = {a, a};
    d.hi = {b, b};
    d.validate();
    return d;
}

Domain Domain::real_line(double r_max) {
    Domain d = interval(-r_max, r_max);
    d.unbounded = true;
    d.truncation_radius = r_max;
    d.validate();
    return d;
}

Domain Domain::plane(double r_max) {
    Domain d = square(-r_max, r_max);
    d.unbounded = true;
    d.truncation_radius = r_max;
    d.validate();
    return d;
}

double Domain::diameter() const {
    const double e = extent();
    return n == 1 ? e : e * std::sqrt(2.0);
}

bool Domain::contains(const Point& x) const {
    for (int i = 0; i < n; ++i) {
        if (x[static_cast<std::size_t>(i)] < lo[static_cast<std::size_t>(i)] ||
            x[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)])
            return false;
    }
    return true;
}

void Domain::validate() const {
    require(n == 1 || n == 2, "domain dimension must be 1 or 2");
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        require(lo[k] < hi[k], "degenerate domain box: lo >= hi");
        require(std::isfinite(lo[k]) && std::isfinite(hi[k]), "non-finite domain box");
    }
    if (n == 2)
        require(std::abs((hi[0] - lo[0]) - (hi[1] - lo[1])) <= 1e-12 * extent(),
                "box extent must match on every axis");
    if (unbounded) require(truncation_radius > 0.0, "unbounded domain needs R_max > 0");
}

// --- Grid ---

std::size_t Grid::cell_count() const {
    return domain.n == 1 ? points_per_axis : points_per_axis * points_per_axis;
}

double Grid::cell_measure() const { return domain.n == 1 ? h : h * h; }

Point Grid::center(std::size_t idx) const {
    if (domain.n == 1) return {domain.lo[0] + (static_cast<double>(idx) + 0.5) * h, 0.0};
    const std::size_t i = idx % points_per_axis;
    const std::size_t j = idx / points_per_axis;
    return {domain.lo[0] + (static_cast<double>(i) + 0.5) * h,
            domain.lo[1] + (static_cast<double>(j) + 0.5) * h};
}

std::size_t Grid::cell_at(const Point& x) const {
    const auto clamp_axis = [&](int axis) {
        const auto k = static_cast<std::size_t>(axis);
        auto i = static_cast<long long>(std::floor((x[k] - domain.lo[k]) / h));
        i = std::max<long long>(0, std::min<long long>(i, static_cast<long long>(points_per_axis) - 1));
        return static_cast<std::size_t>(i);
    };
    if (domain.n == 1) return clamp_axis(0);
    return clamp_axis(1) * points_per_axis + clamp_axis(0);
}

double Grid::distance(std::size_t idx, const Point& x) const {
    const Point c = center(idx);
    if (domain.n == 1) return std::abs(c[0] - x[0]);
    return std::hypot(c[0] - x[0], c[1] - x[1]);
}

bool Grid::same_layout(const Grid& other) const {
    return domain.n == other.domain.n && points_per_axis == other.points_per_axis &&
           domain.lo == other.domain.lo && domain.hi == other.domain.hi;
}

Grid make_grid(const Domain& domain, std::size_t points_per_axis) {
    domain.validate();
    require(points_per_axis >= 2, "grid needs at least 2 points per axis");
    Grid g;
    g.domain = domain;
    g.points_per_axis = points_per_axis;
    g.h = domain.extent() / static_cast<double>(points_per_axis);
    return g;
}

// --- ScalarField ---

ScalarField::ScalarField(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    require(values.size() == grid.cell_count(), "field length must equal cell count");
    for (double x : values) require(std::isfinite(x), "field samples must be finite");
}

ScalarField ScalarField::constant(const Grid& g, double c) {
    return ScalarField(g, std::vector<double>(g.cell_count(), c));
}

// --- ExponentField ---

ExponentField::ExponentField(Grid g, std::vector<double> v, std::optional<double> p_infinity)
    : grid(g), values(std::move(v)), p_inf(p_infinity) {
    require(values.size() == grid.cell_count(), "exponent length must equal cell count");
    p_minus = std::numeric_limits<double>::infinity();
    p_plus = 0.0;
    for (double x : values) {
        require(std::isfinite(x) && x > 1.0, "exponent samples must satisfy 1 < p(x) < inf");
        p_minus = std::min(p_minus, x);
        p_plus = std::max(p_plus, x);
    }
    // p(inf) is part of the essential range of p over the unbounded set
    if (p_inf) {
        require(std::isfinite(*p_inf) && *p_inf > 1.0, "p(inf) must satisfy 1 < p(inf) < inf");
        p_minus = std::min(p_minus, *p_inf);
        p_plus = std::max(p_plus, *p_inf);
    }

    distinct_values = values;
    std::sort(distinct_values.begin(), distinct_values.end());
    distinct_values.erase(std::unique(distinct_values.begin(), distinct_values.end()),
                          distinct_values.end());
    value_index.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto it =
            std::lower_bound(distinct_values.begin(), distinct_values.end(), values[i]);
        value_index[i] = static_cast<std::uint32_t>(it - distinct_values.begin());
    }
}

ExponentField ExponentField::constant(const Grid& g, double p) {
    return ExponentField(g, std::vector<double>(g.cell_count(), p), p);
}

double ExponentField::at(const Point& x) const { return values[grid.cell_at(x)]; }

// --- OrderField ---

OrderField::OrderField(Grid g, std::vector<double> v, std::optional<double> alpha_infinity)
    : grid(g), values(std::move(v)), alpha_inf(alpha_infinity) {
    require(values.size() == grid.cell_count(), "order length must equal cell count");
    alpha_minus = std::numeric_limits<double>::infinity();
    alpha_plus = 0.0;
    const double n = static_cast<double>(grid.dim());
    for (double x : values) {
        require(std::isfinite(x) && x >= 0.0 && x < n,
                "order samples must satisfy 0 <= alpha(x) < n");
        alpha_minus = std::min(alpha_minus, x);
        alpha_plus = std::max(alpha_plus, x);
    }
}

OrderField OrderField::constant(const Grid& g, double alpha) {
    return OrderField(g, std::vector<double>(g.cell_count(), alpha), alpha);
}

void OrderField::attach_decay_constant(double a_inf) {
    require(a_inf >= 0.0 && std::isfinite(a_inf), "decay constant must be finite and >= 0");
    const double n = static_cast<double>(grid.dim());
    gamma.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        gamma[i] = a_inf * values[i] * (1.0 - values[i] / n);
    a_inf_used = a_inf;
}

double alpha_p_sup(const OrderField& alpha, const ExponentField& p) {
    require(alpha.grid.same_layout(p.grid), "order and exponent fields must share the grid");
    double s = 0.0;
    for (std::size_t i = 0; i < alpha.values.size(); ++i)
        s = std::max(s, alpha.values[i] * p.values[i]);
    return s;
}

// --- RadiusGrid ---

RadiusGrid::RadiusGrid(double rmin, double rmax, std::size_t count) : r_min(rmin), r_max(rmax) {
    require(rmin > 0.0 && std::isfinite(rmin), "radius grid needs r_min > 0");
    require(rmax > rmin && std::isfinite(rmax), "radius grid needs r_max > r_min");
    require(count >= 8, "radius grid needs at least 8 nodes");

    nodes.resize(count);
    const double span = std::log(rmax / rmin);
    for (std::size_t i = 0; i < count; ++i)
        nodes[i] = rmin * std::exp(span * static_cast<double>(i) / static_cast<double>(count - 1));
    nodes.front() = rmin;
    nodes.back() = rmax;

    // the eta_p branch and the condition integrals switch at r = 1; pin a node there
    if (rmin < 1.0 && rmax > 1.0) {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), 1.0);
        if (it == nodes.end() || *it != 1.0) {
            if (it != nodes.end() && std::abs(*it - 1.0) < 1e-9)
                *it = 1.0;
            else if (it != nodes.begin() && std::abs(*(it - 1) - 1.0) < 1e-9)
                *(it - 1) = 1.0;
            else
                nodes.insert(it, 1.0);
        }
    }

    for (std::size_t i = 1; i < nodes.size(); ++i)
        require(nodes[i] > nodes[i - 1], "radius nodes must be strictly increasing");

    dr.resize(nodes.size());
    dr[0] = nodes[0];
    for (std::size_t i = 1; i < nodes.size(); ++i) dr[i] = nodes[i] - nodes[i - 1];
}

std::size_t RadiusGrid::first_node_at_least(double r) const {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), r) -
                                    nodes.begin());
}

std::size_t RadiusGrid::last_node_at_most(double r) const {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
    require(it != nodes.begin(), "radius below the grid");
    return static_cast<std::size_t>(it - nodes.begin()) - 1;
}

RadiusGrid RadiusGrid::truncated(double new_r_max) const {
    require(new_r_max > nodes[1], "truncation would leave fewer than two nodes");
    RadiusGrid out;
    out.r_min = r_min;
    for (std::size_t i = 0; i < nodes.size() && nodes[i] <= new_r_max; ++i) {
        out.nodes.push_back(nodes[i]);
        out.dr.push_back(dr[i]);
    }
    out.r_max = out.nodes.back();
    return out;
}

bool RadiusGrid::same_nodes(const RadiusGrid& other) const { return nodes == other.nodes; }

// --- RadialFunction ---

RadialFunction::RadialFunction(RadiusGrid rg, std::vector<double> v)
    : radius_grid(std::move(rg)), values(std::move(v)) {
    require(values.size() == radius_grid.size(), "radial values must align with the grid");
    for (double x : values) require(std::isfinite(x), "radial samples must be finite");
}

RadialFunction RadialFunction::constant(const RadiusGrid& rg, double c) {
    return RadialFunction(rg, std::vector<double>(rg.size(), c));
}

// --- RadialExponent ---

RadialExponent::RadialExponent(RadiusGrid rg, std::vector<double> v, double a_)
    : radius_grid(std::move(rg)), values(std::move(v)), a(a_) {
    const std::size_t k = radius_grid.size();
    require(values.size() == k, "radial exponent must align with the grid");
    require(a >= radius_grid.r_min && a <= radius_grid.r_max,
            "tail cutoff a must lie within the radius grid span");

    theta_minus = std::numeric_limits<double>::infinity();
    theta_plus = 0.0;
    for (double t : values) {
        require(std::isfinite(t) && t > 1.0, "radial exponent must satisfy 1 < theta < inf");
        theta_minus = std::min(theta_minus, t);
        theta_plus = std::max(theta_plus, t);
    }

    const std::size_t tail_start = radius_grid.first_node_at_least(a);
    require(tail_start < k, "no radius node beyond the cutoff a");
    tail_value = values[tail_start];
    for (std::size_t i = tail_start; i < k; ++i)
        require(std::abs(values[i] - tail_value) <= 1e-12 * tail_value,
                "theta must be constant beyond the cutoff a");

    // suffix essinf over [r, a): min over nodes in the half-open window
    tilde.assign(k, tail_value);
    for (std::size_t i = tail_start; i-- > 0;) {
        const bool next_in_window = (i + 1 < tail_start);
        tilde[i] = next_in_window ? std::min(values[i], tilde[i + 1]) : values[i];
    }
    tilde_conj.resize(k);
    for (std::size_t i = 0; i < k; ++i) tilde_conj[i] = tilde[i] / (tilde[i] - 1.0);
}

RadialExponent RadialExponent::constant(const RadiusGrid& rg, double theta) {
    return RadialExponent(rg, std::vector<double>(rg.size(), theta), rg.r_min);
}

// --- balls ---

double ball_volume(int n, double r) { return n == 1 ? 2.0 * r : 3.14159265358979323846 * r * r; }

BallCells ball_cells(const Grid& grid, const Point& x, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
    if (!grid.domain.contains(x)) throw std::invalid_argument("ball center outside the domain box");

    BallCells out;
    const std::size_t cells = grid.cell_count();
    for (std::size_t i = 0; i < cells; ++i)
        if (grid.distance(i, x) < r) out.cells.push_back(i);
    out.full_measure = ball_volume(grid.dim(), r);
    out.discrete_measure = static_cast<double>(out.cells.size()) * grid.cell_measure();
    return out;
}

}  // namespace gmorrey
