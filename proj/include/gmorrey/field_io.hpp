#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gmorrey/conditions.hpp"
#include "gmorrey/harness.hpp"

namespace gmorrey {

// --- CSV field I/O: one row per cell "x0[,x1],value" plus header ---
void write_field_csv(const ScalarField& f, std::ostream& out);
ScalarField read_field_csv(const Grid& g, std::istream& in);

// --- JSON descriptors ---
nlohmann::json to_json(const Domain& d);
Domain domain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RadiusGrid& rg);
RadiusGrid radius_grid_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FieldSpec& f);
FieldSpec field_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExponentSpec& p);
ExponentSpec exponent_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OrderSpec& a);
OrderSpec order_spec_from_json(const nlohmann::json& j);

//! Radial exponent descriptor: constant | two-step | table, with cutoff a.
struct RadialExponentSpec {
    enum class Kind { Constant, TwoStep, Table };
    Kind kind = Kind::Constant;
    double value = 2.0;
    double inner = 2.0, outer = 2.0, split = 1.0;
    double a = 0.0;  // 0 means r_min (constant tail everywhere)
    std::vector<double> table;

    RadialExponent bind(const RadiusGrid& rg) const;
    static RadialExponentSpec constant(double theta);
};

nlohmann::json to_json(const RadialExponentSpec& t);
RadialExponentSpec radial_exponent_spec_from_json(const nlohmann::json& j);

//! Weight descriptor. "exp-decay" binds to a table of exp(-rate * r)
//! samples on the target radius grid.
struct WeightSpec {
    enum class Kind { Power, PowerField, Table, Lambda, ExpDecay };
    Kind kind = Kind::Power;
    double beta = 0.0;
    double amplitude = 1.0;
    std::vector<double> beta_field;
    std::vector<double> radial_table;
    double lambda = 0.0;
    double rate = 1.0;

    RadialWeight bind(const RadiusGrid& rg, int n) const;
    static WeightSpec power(double beta, double amplitude = 1.0);
    static WeightSpec exp_decay(double rate);
};

nlohmann::json to_json(const WeightSpec& w);
WeightSpec weight_spec_from_json(const nlohmann::json& j);

//! Space spec on the wire: p / theta ("inf" or descriptor) / w / domain /
//! grid size / radius grid.
struct MorreySpaceSpecFile {
    ExponentSpec p;
    bool theta_infinite = false;
    RadialExponentSpec theta;
    WeightSpec w;
    Domain domain;
    std::size_t grid_cells = 1024;
    double r_min = 0.0;  // 0 means h
    double r_max = 0.0;  // 0 means 4 * diameter
    std::size_t radii = 64;

    MorreySpaceSpec bind(const Grid& g) const;
    RadiusGrid make_radius_grid(const Grid& g) const;
};

nlohmann::json to_json(const MorreySpaceSpecFile& s);
MorreySpaceSpecFile space_spec_from_json(const nlohmann::json& j);

// --- reports ---
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const NonemptinessReport& r);
nlohmann::json to_json(const VerifyReport& r);
nlohmann::json to_json(const OperatorNormReport& r);

void write_verify_csv(const VerifyReport& r, std::ostream& out);

//! Deterministic emission: canonical key order (nlohmann objects iterate
//! sorted), shortest-roundtrip numbers, trailing newline.
void emit_json(const nlohmann::json& j, std::ostream& out);
void emit_report_file(const nlohmann::json& j, const std::string& path);

}  // namespace gmorrey
