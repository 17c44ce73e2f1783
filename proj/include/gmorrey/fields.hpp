#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace gmorrey {

using Point = std::array<double, 2>;

//! Open subset of R^n (n = 1 or 2) realised as an axis-aligned box.
//! Unbounded domains are handled through a computational box
//! [-truncation_radius, truncation_radius]^n together with an explicit
//! tail value p(inf) on the exponent fields living on them.
struct Domain {
    int n = 1;
    std::array<double, 2> lo{{-1.0, -1.0}};
    std::array<double, 2> hi{{1.0, 1.0}};
    bool unbounded = false;
    double truncation_radius = 0.0;

    static Domain interval(double a, double b);
    static Domain square(double a, double b);
    static Domain real_line(double r_max);
    static Domain plane(double r_max);

    double extent() const { return hi[0] - lo[0]; }
    double diameter() const;
    bool contains(const Point& x) const;
    void validate() const;
};

//! Uniform lattice of cell centers over the domain box. The spacing is the
//! same on every axis; each cell carries measure h^n.
struct Grid {
    Domain domain;
    std::size_t points_per_axis = 0;
    double h = 0.0;

    int dim() const { return domain.n; }
    std::size_t cell_count() const;
    double cell_measure() const;
    Point center(std::size_t idx) const;
    std::size_t cell_at(const Point& x) const;
    double distance(std::size_t idx, const Point& x) const;
    bool same_layout(const Grid& other) const;
};

Grid make_grid(const Domain& domain, std::size_t points_per_axis);

//! Real-valued function sampled at cell centers.
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    ScalarField(Grid g, std::vector<double> v);
    static ScalarField constant(const Grid& g, double c);

    double operator[](std::size_t i) const { return values[i]; }
};

//! Variable exponent p(.) with 1 < p_minus <= p(x) <= p_plus < infinity.
//! p_inf is the tail value p(inf), required by radial machinery whenever a
//! radius above 1 is involved. a_p / a_inf hold declared (or estimated)
//! log- and decay-condition constants.
struct ExponentField {
    Grid grid;
    std::vector<double> values;
    double p_minus = 0.0;
    double p_plus = 0.0;
    std::optional<double> p_inf;
    std::optional<double> a_p;
    std::optional<double> a_inf;

    // distinct sample values with a per-cell index into them; used by the
    // modular-in-eta evaluations (see vlebesgue).
    std::vector<double> distinct_values;
    std::vector<std::uint32_t> value_index;

    ExponentField() = default;
    ExponentField(Grid g, std::vector<double> v, std::optional<double> p_infinity = {});
    static ExponentField constant(const Grid& g, double p);

    double operator[](std::size_t i) const { return values[i]; }
    double at(const Point& x) const;
};

//! Variable order alpha(.) with 0 <= alpha(x) < n. gamma holds the derived
//! weight exponent A_inf * alpha(x) * (1 - alpha(x)/n) once a decay constant
//! has been attached.
struct OrderField {
    Grid grid;
    std::vector<double> values;
    double alpha_minus = 0.0;
    double alpha_plus = 0.0;
    std::optional<double> alpha_inf;
    std::vector<double> gamma;
    std::optional<double> a_inf_used;

    OrderField() = default;
    OrderField(Grid g, std::vector<double> v, std::optional<double> alpha_infinity = {});
    static OrderField constant(const Grid& g, double alpha);

    void attach_decay_constant(double a_inf);
    bool has_gamma() const { return !gamma.empty(); }
    double operator[](std::size_t i) const { return values[i]; }
};

//! sup_x alpha(x) p(x) over the shared grid.
double alpha_p_sup(const OrderField& alpha, const ExponentField& p);

//! Log-spaced discretisation of the radius half-line (0, infinity),
//! truncated to [r_min, r_max]. A node at r = 1 is inserted when the span
//! crosses it, so the eta_p branch switch never falls inside a segment.
//! dr[k] = nodes[k] - nodes[k-1] (dr[0] = nodes[0]) makes right-endpoint
//! tail sums exact adjoints of the forward ones.
struct RadiusGrid {
    double r_min = 0.0;
    double r_max = 0.0;
    std::vector<double> nodes;
    std::vector<double> dr;

    RadiusGrid() = default;
    RadiusGrid(double r_min, double r_max, std::size_t count);

    std::size_t size() const { return nodes.size(); }
    //! first index with nodes[i] >= r (== size() when none)
    std::size_t first_node_at_least(double r) const;
    //! index of the largest node <= r; throws if r < nodes[0]
    std::size_t last_node_at_most(double r) const;
    RadiusGrid truncated(double new_r_max) const;
    bool same_nodes(const RadiusGrid& other) const;
};

//! Function sampled on the nodes of a RadiusGrid.
struct RadialFunction {
    RadiusGrid radius_grid;
    std::vector<double> values;

    RadialFunction() = default;
    RadialFunction(RadiusGrid rg, std::vector<double> v);
    static RadialFunction constant(const RadiusGrid& rg, double c);

    double operator[](std::size_t i) const { return values[i]; }
};

//! Variable exponent theta(.) on the radius half-line, constant equal to
//! tail_value beyond the cutoff a. tilde holds the suffix essinf field
//! (essinf over [r, a), the tail constant beyond a) and tilde_conj its
//! pointwise conjugate.
struct RadialExponent {
    RadiusGrid radius_grid;
    std::vector<double> values;
    double a = 0.0;
    double tail_value = 0.0;
    double theta_minus = 0.0;
    double theta_plus = 0.0;
    std::vector<double> tilde;
    std::vector<double> tilde_conj;

    RadialExponent() = default;
    RadialExponent(RadiusGrid rg, std::vector<double> v, double a);
    static RadialExponent constant(const RadiusGrid& rg, double theta);

    double operator[](std::size_t i) const { return values[i]; }
};

//! |B(x,r)| = v_n r^n with v_1 = 2, v_2 = pi.
double ball_volume(int n, double r);

struct BallCells {
    std::vector<std::size_t> cells;
    double full_measure = 0.0;      // |B(x,r)|
    double discrete_measure = 0.0;  // #cells * h^n
};

//! Cells whose center lies within (strictly) Euclidean distance r of x,
//! together with the full-ball measure and the discrete measure of the
//! intersection with the domain box. May be empty for small r when x is
//! not a cell center.
BallCells ball_cells(const Grid& grid, const Point& x, double r);

}  // namespace gmorrey
