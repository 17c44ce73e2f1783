#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gmorrey/conditions.hpp"
#include "gmorrey/fields.hpp"
#include "gmorrey/morrey.hpp"

namespace gmorrey {

//! Analytic field descriptor; can be sampled on any grid, so verification
//! runs can refine the mesh without losing the function.
struct FieldSpec {
    enum class Kind { Constant, Power, IndicatorBall, GaussianSum, Table };
    struct Gaussian {
        Point center{{0.0, 0.0}};
        double width = 1.0;
        double amplitude = 1.0;
    };

    Kind kind = Kind::Constant;
    double value = 0.0;                  // Constant
    Point center{{0.0, 0.0}};            // Power / IndicatorBall
    double radius = 0.0;
    double exponent = 0.0;               // Power: |x-c|^{-exponent} inside radius
    std::vector<Gaussian> gaussians;     // GaussianSum
    std::vector<double> table;           // Table (grid-bound)
    double scale = 1.0;                  // multiplies every sample

    ScalarField sample(const Grid& g) const;
    static FieldSpec constant(double c);
    static FieldSpec indicator_ball(Point c, double r);
    static FieldSpec power_bump(Point c, double exponent, double radius);
};

//! Analytic exponent descriptor.
struct ExponentSpec {
    enum class Kind { Constant, TwoStep, LogDecay, Table };
    Kind kind = Kind::Constant;
    double value = 2.0;                 // Constant
    double left = 2.0, right = 3.0;     // TwoStep around split on axis 0
    double split = 0.0;
    double p_inf_value = 0.0;           // tail value; 0 means "derive"
    double amplitude = 0.0;             // LogDecay: p(x) = p_inf + amplitude/ln(e+|x|)
    std::vector<double> table;

    ExponentField sample(const Grid& g) const;
    static ExponentSpec constant(double p);
    static ExponentSpec two_step(double left, double right, double split, double p_inf);
    static ExponentSpec log_decay(double p_inf, double amplitude);
};

//! Analytic order descriptor.
struct OrderSpec {
    enum class Kind { Constant, SinBump };
    Kind kind = Kind::Constant;
    double value = 0.25;
    double base = 0.25, amplitude = 0.0, frequency = 1.0;  // base + amplitude*sin(freq*x0)

    OrderField sample(const Grid& g) const;
    static OrderSpec constant(double a);
    static OrderSpec sin_bump(double base, double amplitude, double frequency);
};

//! Deterministic family of test functions. The seed fixes every member;
//! p_plus bounds the decay exponents of power bumps so all members stay in
//! L_{p(.)} on the computational box.
struct TestFamily {
    std::string kind = "ball-indicators";  // | "power-bumps" | "random-smooth"
    std::size_t count = 8;
    std::uint64_t seed = 1;

    std::vector<FieldSpec> members(const Domain& domain, double p_plus) const;
};

struct RatioSample {
    std::size_t member = 0;
    double x0 = 0.0, x1 = 0.0;
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

//! One verified local inequality: per-(f, x, t) ratios, the estimated
//! constant C (max ratio) at the base grid and at the refined grid, and the
//! pass flag C finite && C(h/2) <= 2 C(h) && no RHS = 0 < LHS witnesses.
struct VerifyReport {
    std::string id;
    Domain domain;
    std::size_t base_cells = 0;
    RadiusGrid radius_grid;
    TestFamily family;
    double tolerance = 0.0;
    std::vector<RatioSample> samples;  // base grid
    double constant = 0.0;
    double constant_refined = 0.0;
    std::size_t zero_rhs_failures = 0;
    bool pass = false;
};

struct VerifyConfig {
    Domain domain;
    std::size_t cells = 1024;
    RadiusGrid radius_grid;
    TestFamily family;
    ExponentSpec p_spec;
    OrderSpec alpha_spec;  // used by the potential-type checks
    LuxemburgOptions lux;
};

//! 9 sample centers per axis sweep (near-boundary included), snapped to
//! cell centers.
std::vector<Point> default_centers(const Grid& g);

//! ||f||_{B~(x,t)} <= C t^{eta_p} int_t^inf r^{-eta_p-1} ||f||_{B~(x,r)} dr.
VerifyReport verify_local_embedding(const VerifyConfig& cfg);

//! Both local bounds for the maximal function: the sup-form RHS
//! (sup over r > 2t of r^{-eta_p} ||f||) and the integral-form RHS.
struct MaximalVerifyReports {
    VerifyReport sup_form;
    VerifyReport integral_form;
};
MaximalVerifyReports verify_maximal_local(const VerifyConfig& cfg);

//! ||I^a f||_{q(.), B~(x,t)} <= C t^{eta_q} int_t^inf r^{-eta_q-1} ||f||_{p(.)} dr
//! with constant order alpha and q the Sobolev exponent.
VerifyReport verify_riesz_local(const VerifyConfig& cfg);

//! Same inequality for (1+|x|)^{-gamma(x)} I^{alpha(.)} with variable order;
//! gamma is built from the decay constant of p.
VerifyReport verify_weighted_riesz_local(const VerifyConfig& cfg);

struct OperatorSpec {
    enum class Kind { Identity, Maximal, FractionalMaximal, Riesz, WeightedRiesz };
    Kind kind = Kind::Maximal;
    std::optional<OrderSpec> alpha;
};

struct MemberRatio {
    std::size_t member = 0;
    double src_norm = 0.0;
    double dst_norm = 0.0;
    double ratio = 0.0;
};

struct OperatorNormReport {
    double max_ratio = 0.0;
    std::vector<MemberRatio> members;
    std::size_t skipped = 0;  // zero source norm
};

//! Max of ||op f||_dst / ||f||_src over the family; members with zero
//! source norm are skipped. For the potential-type operators the
//! destination exponent must be the Sobolev exponent of the source.
OperatorNormReport estimate_operator_norm(const OperatorSpec& op, const MorreySpaceSpec& src,
                                          const MorreySpaceSpec& dst,
                                          const std::vector<FieldSpec>& family_members,
                                          const Grid& grid,
                                          const LuxemburgOptions& opts = {});

ScalarField apply_operator(const OperatorSpec& op, const ScalarField& f,
                           const ExponentField& p, const RadiusGrid& rg);

}  // namespace gmorrey
