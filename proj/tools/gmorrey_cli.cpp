// Command-line front end: norms, operator evaluation, condition checks and
// inequality verification over JSON/CSV files.
//
// Exit codes: 0 = pass / finite, 2 = divergent / fail, 1 = usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmorrey/conditions.hpp"
#include "gmorrey/field_io.hpp"
#include "gmorrey/harness.hpp"
#include "gmorrey/operators.hpp"
#include "gmorrey/vlebesgue.hpp"

using namespace gmorrey;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;

//! Inline JSON (starts with '{') or a path to a JSON file.
json load_json_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw std::runtime_error("cannot open " + arg);
    json j;
    in >> j;
    return j;
}

void write_output(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        emit_json(j, std::cout);
    } else {
        emit_report_file(j, out_path);
    }
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        out << text;
    }
}

struct CommonOpts {
    int n = 1;
    std::size_t grid = 0;     // 0 = dimension default
    std::size_t radii = 0;    // 0 = dimension default
    double rmin = 0.0;        // 0 = h
    double rmax = 0.0;        // 0 = dimension default
    double box = 4.0;         // computational box [-box, box]^n
    std::string field;
    std::string p_arg = R"({"kind":"constant","value":2.0})";
    std::string out;
    std::string format = "json";
    double tol = 1e-12;

    Domain domain() const { return n == 1 ? Domain::real_line(box) : Domain::plane(box); }
    std::size_t cells() const { return grid ? grid : (n == 1 ? 1024 : 96); }
    Grid make() const { return make_grid(domain(), cells()); }
    RadiusGrid radius(const Grid& g) const {
        return RadiusGrid(rmin > 0.0 ? rmin : g.h, rmax > 0.0 ? rmax : 8.0,
                          radii ? radii : (n == 1 ? 64 : 32));
    }
    LuxemburgOptions lux() const { return LuxemburgOptions{tol, 200}; }
    ScalarField load_field(const Grid& g) const {
        if (field.empty()) throw CLI::ValidationError("--field is required");
        if (field.size() > 4 && field.substr(field.size() - 4) == ".csv") {
            std::ifstream in(field);
            if (!in) throw std::runtime_error("cannot open " + field);
            return read_field_csv(g, in);
        }
        return field_spec_from_json(load_json_arg(field)).sample(g);
    }
    ExponentField load_p(const Grid& g) const {
        return exponent_spec_from_json(load_json_arg(p_arg)).sample(g);
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_field = true) {
    cmd->add_option("--n", o.n, "dimension (1 or 2)")->check(CLI::Range(1, 2));
    cmd->add_option("--grid", o.grid, "cells per axis (default 1024 / 96)");
    cmd->add_option("--radii", o.radii, "radius nodes (default 64 / 32)");
    cmd->add_option("--rmin", o.rmin, "smallest radius (default h)");
    cmd->add_option("--rmax", o.rmax, "largest radius (default 8)");
    cmd->add_option("--box", o.box, "computational box half-width (default 4)");
    if (with_field) cmd->add_option("--field", o.field, "field: JSON descriptor, file, or .csv");
    cmd->add_option("--p", o.p_arg, "exponent descriptor (JSON or file)");
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tol", o.tol, "Luxemburg solver relative tolerance");
}

std::vector<std::size_t> center_cells(const Grid& g) {
    std::vector<std::size_t> cells;
    for (const Point& x : default_centers(g)) cells.push_back(g.cell_at(x));
    return cells;
}

json radius_meta(const RadiusGrid& rg) {
    return {{"r_min", rg.r_min}, {"r_max", rg.r_max}, {"nodes", rg.nodes.size()}};
}

// --- norm ---

int run_norm(const CommonOpts& o, const std::string& which, double lambda,
             const std::string& w_arg, const std::string& normalization) {
    const Grid g = o.make();
    const auto f = o.load_field(g);
    const auto p = o.load_p(g);
    const RadiusGrid rg = o.radius(g);

    json rep;
    rep["which"] = which;
    rep["grid_cells"] = o.cells();
    rep["tolerance"] = o.tol;
    if (which == "luxemburg") {
        const auto res = luxemburg_norm(f, p, whole_domain(g), o.lux());
        rep["norm"] = res.norm;
        rep["iterations"] = res.iterations;
        rep["residual"] = res.residual;
    } else if (which == "morrey-lambda") {
        rep["norm"] = variable_morrey_lambda_norm(f, p, {lambda}, rg, o.lux());
        rep["lambda"] = lambda;
        rep["truncation"] = radius_meta(rg);
    } else if (which == "generalized") {
        const auto w = weight_spec_from_json(load_json_arg(w_arg)).bind(rg, g.dim());
        const auto kind = normalization == "bounded" ? MorreyNormalization::Bounded
                                                     : MorreyNormalization::Unbounded;
        rep["norm"] = generalized_morrey_norm(f, p, w, kind, rg, o.lux());
        rep["normalization"] = normalization;
        rep["truncation"] = radius_meta(rg);
    } else {
        throw CLI::ValidationError("unknown --which: " + which);
    }
    write_output(rep, o.out);
    return kExitOk;
}

// --- operator evaluation ---

int run_operator(const CommonOpts& o, const std::string& name, double alpha, bool weighted) {
    const Grid g = o.make();
    const auto f = o.load_field(g);
    ScalarField result = f;
    if (name == "maximal") {
        result = maximal(f, o.radius(g));
    } else if (name == "fracmax") {
        result = fractional_maximal(f, OrderField::constant(g, alpha), o.radius(g));
    } else {
        auto a = OrderField::constant(g, alpha);
        if (weighted) {
            a.attach_decay_constant(decay_condition_constant(o.load_p(g)));
            result = weighted_riesz(f, a);
        } else {
            result = riesz_potential(f, a);
        }
    }
    std::ostringstream csv;
    write_field_csv(result, csv);
    write_text(csv.str(), o.out);
    return kExitOk;
}

// --- gm-norm ---

int run_gm_norm(const CommonOpts& o, const std::string& spec_arg) {
    const auto file_spec = space_spec_from_json(load_json_arg(spec_arg));
    const Grid g = make_grid(file_spec.domain, file_spec.grid_cells);
    const auto spec = file_spec.bind(g);
    const auto f = o.load_field(g);

    json rep;
    rep["norm"] = gm_norm(f, spec, o.lux());
    rep["grid_cells"] = file_spec.grid_cells;
    rep["truncation"] = radius_meta(spec.radius_grid);
    rep["theta_infinite"] = !spec.theta.has_value();
    rep["nonempty"] = to_json(nonemptiness_check(spec, o.lux()));
    write_output(rep, o.out);
    return kExitOk;
}

// --- check-condition ---

int run_condition(const CommonOpts& o, const std::string& which, const std::string& spec_arg) {
    const json j = load_json_arg(spec_arg);
    const Domain domain = j.contains("domain") ? domain_from_json(j.at("domain")) : o.domain();
    const Grid g = make_grid(domain, j.value("grid", o.cells()));
    const RadiusGrid rg = j.contains("radius_grid") ? radius_grid_from_json(j.at("radius_grid"))
                                                    : o.radius(g);
    const auto cells = center_cells(g);

    const auto theta1 = radial_exponent_spec_from_json(j.at("theta1")).bind(rg);
    const auto theta2 = radial_exponent_spec_from_json(j.at("theta2")).bind(rg);
    const auto w1 = weight_spec_from_json(j.at("w1")).bind(rg, g.dim());
    const auto w2 = weight_spec_from_json(j.at("w2")).bind(rg, g.dim());

    ConditionReport rep;
    if (which == "A") {
        rep = condition_A(w1, w2, theta1, theta2, g, cells, rg);
    } else if (which == "T") {
        const auto alpha = order_spec_from_json(j.at("alpha")).sample(g);
        const auto p = exponent_spec_from_json(j.at("p")).sample(g);
        rep = condition_T(w1, w2, theta1, theta2, alpha, p, g, cells, rg);
    } else if (which == "G") {
        std::vector<double> uv(rg.size()), vv(rg.size());
        const auto wu = weight_spec_from_json(j.at("u")).bind(rg, g.dim());
        const auto wv = weight_spec_from_json(j.at("v")).bind(rg, g.dim());
        for (std::size_t k = 0; k < rg.size(); ++k) {
            uv[k] = wu.value(0, k, rg.nodes[k], nullptr);
            vv[k] = wv.value(0, k, rg.nodes[k], nullptr);
        }
        rep = condition_G(RadialFunction(rg, uv), RadialFunction(rg, vv), theta1, theta2);
    } else if (which == "spanne") {
        const auto p = exponent_spec_from_json(j.at("p")).sample(g);
        if (j.contains("alpha")) {
            const auto alpha = order_spec_from_json(j.at("alpha")).sample(g);
            const auto q = sobolev_exponent(p, alpha);
            rep = spanne_condition_potential(w1, w2, p, q, g, cells, rg);
        } else {
            rep.value = spanne_condition_maximal(w1, w2, p, g, cells, rg);
            rep.finite = std::isfinite(rep.value);
        }
    } else if (which == "singular") {
        rep = singular_condition(w1, w2, theta1, theta2, g, cells, rg);
    } else {
        throw CLI::ValidationError("unknown condition: " + which);
    }

    json out = to_json(rep);
    out["condition"] = which;
    out["truncation"] = radius_meta(rg);
    write_output(out, o.out);
    return rep.finite ? kExitOk : kExitFail;
}

// --- verify ---

TestFamily parse_family(const std::string& text) {
    TestFamily fam;
    if (text.empty()) return fam;
    std::stringstream ss(text);
    std::string tok;
    if (std::getline(ss, tok, ',')) fam.kind = tok;
    if (std::getline(ss, tok, ',')) fam.count = static_cast<std::size_t>(std::stoul(tok));
    if (std::getline(ss, tok, ',')) fam.seed = std::stoull(tok);
    return fam;
}

int run_verify(const CommonOpts& o, const std::string& which, const std::string& family_arg,
               const std::string& spec_arg) {
    if (which == "opnorm") {
        const Grid g = o.make();
        const RadiusGrid rg = o.radius(g);
        OperatorSpec op{OperatorSpec::Kind::Maximal, {}};
        MorreySpaceSpec src{ExponentField::constant(g, 2.0), RadialExponent::constant(rg, 2.0),
                            RadialWeight::power(0.0), rg};
        MorreySpaceSpec dst = src;
        if (!spec_arg.empty()) {
            const json j = load_json_arg(spec_arg);
            src = space_spec_from_json(j.at("src")).bind(g);
            dst = space_spec_from_json(j.at("dst")).bind(g);
            const std::string op_name = j.value("op", "maximal");
            if (op_name == "maximal") op.kind = OperatorSpec::Kind::Maximal;
            else if (op_name == "identity") op.kind = OperatorSpec::Kind::Identity;
            else if (op_name == "fracmax") op.kind = OperatorSpec::Kind::FractionalMaximal;
            else if (op_name == "riesz") op.kind = OperatorSpec::Kind::Riesz;
            else if (op_name == "weighted-riesz") op.kind = OperatorSpec::Kind::WeightedRiesz;
            else throw CLI::ValidationError("unknown op: " + op_name);
            if (j.contains("alpha")) op.alpha = order_spec_from_json(j.at("alpha"));
        }
        const auto fam = parse_family(family_arg);
        const auto members = fam.members(g.domain, src.p.p_plus);
        const auto rep = estimate_operator_norm(op, src, dst, members, g, o.lux());
        json out = to_json(rep);
        out["id"] = "opnorm";
        out["family"] = {{"kind", fam.kind}, {"count", fam.count}, {"seed", fam.seed}};
        write_output(out, o.out);
        return std::isfinite(rep.max_ratio) ? kExitOk : kExitFail;
    }

    VerifyConfig cfg;
    cfg.domain = o.domain();
    cfg.cells = o.cells();
    const Grid g = o.make();
    cfg.radius_grid = o.radius(g);
    cfg.family = parse_family(family_arg);
    cfg.p_spec = exponent_spec_from_json(load_json_arg(o.p_arg));
    cfg.alpha_spec = OrderSpec::constant(0.25);
    cfg.lux = o.lux();

    VerifyReport rep;
    if (which == "lemma21") {
        rep = verify_local_embedding(cfg);
    } else if (which == "thm24") {
        rep = verify_maximal_local(cfg).sup_form;
    } else if (which == "eq27") {
        rep = verify_maximal_local(cfg).integral_form;
    } else if (which == "eq28") {
        rep = verify_riesz_local(cfg);
    } else if (which == "eq29") {
        cfg.p_spec = ExponentSpec::log_decay(2.0, 0.4);
        cfg.alpha_spec = OrderSpec::sin_bump(0.25, 0.1, 1.0);
        rep = verify_weighted_riesz_local(cfg);
    } else {
        throw CLI::ValidationError("unknown verification: " + which);
    }

    if (o.format == "csv") {
        std::ostringstream csv;
        write_verify_csv(rep, csv);
        write_text(csv.str(), o.out);
    } else {
        write_output(to_json(rep), o.out);
    }
    return rep.pass ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variable-exponent Morrey-type norms, operators and condition checks"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string which, w_arg, normalization = "unbounded", spec_arg;
    std::string family_arg = "ball-indicators,8,1";
    double lambda = 0.0, alpha = 0.25;
    bool weighted = false;

    auto* norm = app.add_subcommand("norm", "Luxemburg / Morrey norms of a field");
    add_common(norm, o);
    norm->add_option("--which", which, "luxemburg|morrey-lambda|generalized")
        ->default_val("luxemburg");
    norm->add_option("--lambda", lambda, "lambda for the Morrey norm");
    norm->add_option("--w", w_arg, "weight descriptor for the generalized norm");
    norm->add_option("--normalization", normalization, "bounded|unbounded")
        ->check(CLI::IsMember({"bounded", "unbounded"}));

    auto* mx = app.add_subcommand("maximal", "maximal function of a field (CSV out)");
    add_common(mx, o);

    auto* fm = app.add_subcommand("fracmax", "fractional maximal function (CSV out)");
    add_common(fm, o);
    fm->add_option("--alpha", alpha, "order alpha");

    auto* rz = app.add_subcommand("riesz", "riesz potential (CSV out)");
    add_common(rz, o);
    rz->add_option("--alpha", alpha, "order alpha");
    rz->add_flag("--weighted", weighted, "apply the (1+|x|)^{-gamma(x)} weight");

    auto* gm = app.add_subcommand("gm-norm", "global Morrey-type norm from a space spec");
    add_common(gm, o);
    gm->add_option("--spec", spec_arg, "space spec JSON (file or inline)")->required();

    auto* cc = app.add_subcommand("check-condition", "sufficient-condition integrals");
    add_common(cc, o, false);
    cc->add_option("--which", which, "A|T|G|spanne|singular")->required();
    cc->add_option("--spec", spec_arg, "condition inputs JSON (file or inline)")->required();

    auto* vf = app.add_subcommand("verify", "inequality and boundedness checks");
    add_common(vf, o, false);
    vf->add_option("--which", which, "lemma21|thm24|eq27|eq28|eq29|opnorm")->required();
    vf->add_option("--family", family_arg, "test family kind,count,seed");
    vf->add_option("--spec", spec_arg, "opnorm space specs JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (norm->parsed()) return run_norm(o, which, lambda, w_arg, normalization);
        if (mx->parsed()) return run_operator(o, "maximal", alpha, false);
        if (fm->parsed()) return run_operator(o, "fracmax", alpha, false);
        if (rz->parsed()) return run_operator(o, "riesz", alpha, weighted);
        if (gm->parsed()) return run_gm_norm(o, spec_arg);
        if (cc->parsed()) return run_condition(o, which, spec_arg);
        if (vf->parsed()) return run_verify(o, which, family_arg, spec_arg);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
