#include "gmorrey/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gmorrey {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

nlohmann::json finite_or_tag(double x) {
    if (std::isfinite(x)) return x;
    return x > 0 ? "inf" : "-inf";
}

}  // namespace

void write_field_csv(const ScalarField& f, std::ostream& out) {
    const Grid& g = f.grid;
    out << (g.dim() == 1 ? "x0,value\n" : "x0,x1,value\n");
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
        const Point x = g.center(i);
        if (g.dim() == 1)
            out << fmt(x[0]) << ',' << fmt(f.values[i]) << '\n';
        else
            out << fmt(x[0]) << ',' << fmt(x[1]) << ',' << fmt(f.values[i]) << '\n';
    }
}

ScalarField read_field_csv(const Grid& g, std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
    std::vector<double> v(g.cell_count());
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (row >= v.size()) throw std::runtime_error("CSV has more rows than cells");
        std::stringstream ss(line);
        std::string tok;
        Point x{{0.0, 0.0}};
        for (int ax = 0; ax < g.dim(); ++ax) {
            if (!std::getline(ss, tok, ',')) throw std::runtime_error("short CSV row");
            x[static_cast<std::size_t>(ax)] = std::stod(tok);
        }
        if (!std::getline(ss, tok, ',')) throw std::runtime_error("short CSV row");
        const std::size_t cell = g.cell_at(x);
        if (g.distance(cell, x) > g.h / 4.0)
            throw std::runtime_error("CSV coordinates do not match the grid");
        v[cell] = std::stod(tok);
        ++row;
    }
    if (row != v.size()) throw std::runtime_error("CSV has fewer rows than cells");
    return ScalarField(g, std::move(v));
}

// --- Domain / RadiusGrid ---

nlohmann::json to_json(const Domain& d) {
    nlohmann::json j;
    j["n"] = d.n;
    j["box"] = nlohmann::json::array();
    for (int ax = 0; ax < d.n; ++ax)
        j["box"].push_back({d.lo[static_cast<std::size_t>(ax)], d.hi[static_cast<std::size_t>(ax)]});
    j["unbounded"] = d.unbounded;
    if (d.unbounded) j["truncation_radius"] = d.truncation_radius;
    return j;
}

Domain domain_from_json(const nlohmann::json& j) {
    Domain d;
    d.n = j.at("n").get<int>();
    const auto& box = j.at("box");
    for (int ax = 0; ax < d.n; ++ax) {
        d.lo[static_cast<std::size_t>(ax)] = box.at(static_cast<std::size_t>(ax)).at(0).get<double>();
        d.hi[static_cast<std::size_t>(ax)] = box.at(static_cast<std::size_t>(ax)).at(1).get<double>();
    }
    d.unbounded = j.value("unbounded", false);
    d.truncation_radius = j.value("truncation_radius", 0.0);
    d.validate();
    return d;
}

nlohmann::json to_json(const RadiusGrid& rg) {
    return {{"r_min", rg.r_min}, {"r_max", rg.r_max}, {"nodes", rg.nodes.size()}};
}

RadiusGrid radius_grid_from_json(const nlohmann::json& j) {
    return RadiusGrid(j.at("r_min").get<double>(), j.at("r_max").get<double>(),
                      j.value("nodes", std::size_t{64}));
}

// --- FieldSpec ---

nlohmann::json to_json(const FieldSpec& f) {
    nlohmann::json j;
    switch (f.kind) {
        case FieldSpec::Kind::Constant:
            j["kind"] = "constant";
            j["value"] = f.value;
            break;
        case FieldSpec::Kind::IndicatorBall:
            j["kind"] = "indicator-ball";
            j["center"] = {f.center[0], f.center[1]};
            j["radius"] = f.radius;
            break;
        case FieldSpec::Kind::Power:
            j["kind"] = "power";
            j["center"] = {f.center[0], f.center[1]};
            j["radius"] = f.radius;
            j["exponent"] = f.exponent;
            break;
        case FieldSpec::Kind::GaussianSum: {
            j["kind"] = "gaussian-sum";
            auto arr = nlohmann::json::array();
            for (const auto& c : f.gaussians)
                arr.push_back({{"center", {c.center[0], c.center[1]}},
                               {"width", c.width},
                               {"amplitude", c.amplitude}});
            j["components"] = arr;
            break;
        }
        case FieldSpec::Kind::Table:
            j["kind"] = "table";
            j["values"] = f.table;
            break;
    }
    if (f.scale != 1.0) j["scale"] = f.scale;
    return j;
}

FieldSpec field_spec_from_json(const nlohmann::json& j) {
    FieldSpec f;
    const std::string kind = j.at("kind").get<std::string>();
    const auto read_center = [&](const nlohmann::json& c) {
        Point x{{0.0, 0.0}};
        for (std::size_t ax = 0; ax < c.size() && ax < 2; ++ax) x[ax] = c.at(ax).get<double>();
        return x;
    };
    if (kind == "constant") {
        f.kind = FieldSpec::Kind::Constant;
        f.value = j.at("value").get<double>();
    } else if (kind == "indicator-ball") {
        f.kind = FieldSpec::Kind::IndicatorBall;
        f.center = read_center(j.at("center"));
        f.radius = j.at("radius").get<double>();
    } else if (kind == "power") {
        f.kind = FieldSpec::Kind::Power;
        f.center = read_center(j.at("center"));
        f.radius = j.at("radius").get<double>();
        f.exponent = j.at("exponent").get<double>();
    } else if (kind == "gaussian-sum") {
        f.kind = FieldSpec::Kind::GaussianSum;
        for (const auto& c : j.at("components"))
            f.gaussians.push_back({read_center(c.at("center")), c.at("width").get<double>(),
                                   c.at("amplitude").get<double>()});
    } else if (kind == "table") {
        f.kind = FieldSpec::Kind::Table;
        f.table = j.at("values").get<std::vector<double>>();
    } else {
        throw std::invalid_argument("unknown field kind: " + kind);
    }
    f.scale = j.value("scale", 1.0);
    return f;
}

// --- ExponentSpec ---

nlohmann::json to_json(const ExponentSpec& p) {
    nlohmann::json j;
    switch (p.kind) {
        case ExponentSpec::Kind::Constant:
            j["kind"] = "constant";
            j["value"] = p.value;
            break;
        case ExponentSpec::Kind::TwoStep:
            j["kind"] = "two-step";
            j["left"] = p.left;
            j["right"] = p.right;
            j["split"] = p.split;
            break;
        case ExponentSpec::Kind::LogDecay:
            j["kind"] = "log-decay";
            j["amplitude"] = p.amplitude;
            break;
        case ExponentSpec::Kind::Table:
            j["kind"] = "table";
            j["values"] = p.table;
            break;
    }
    if (p.p_inf_value > 0.0) j["p_inf"] = p.p_inf_value;
    return j;
}

ExponentSpec exponent_spec_from_json(const nlohmann::json& j) {
    ExponentSpec p;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        p.kind = ExponentSpec::Kind::Constant;
        p.value = j.at("value").get<double>();
    } else if (kind == "two-step") {
        p.kind = ExponentSpec::Kind::TwoStep;
        p.left = j.at("left").get<double>();
        p.right = j.at("right").get<double>();
        p.split = j.value("split", 0.0);
    } else if (kind == "log-decay") {
        p.kind = ExponentSpec::Kind::LogDecay;
        p.amplitude = j.at("amplitude").get<double>();
    } else if (kind == "table") {
        p.kind = ExponentSpec::Kind::Table;
        p.table = j.at("values").get<std::vector<double>>();
    } else {
        throw std::invalid_argument("unknown exponent kind: " + kind);
    }
    p.p_inf_value = j.value("p_inf", 0.0);
    return p;
}

// --- OrderSpec ---

nlohmann::json to_json(const OrderSpec& a) {
    nlohmann::json j;
    if (a.kind == OrderSpec::Kind::Constant) {
        j["kind"] = "constant";
        j["value"] = a.value;
    } else {
        j["kind"] = "sin-bump";
        j["base"] = a.base;
        j["amplitude"] = a.amplitude;
        j["frequency"] = a.frequency;
    }
    return j;
}

OrderSpec order_spec_from_json(const nlohmann::json& j) {
    OrderSpec a;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        a.kind = OrderSpec::Kind::Constant;
        a.value = j.at("value").get<double>();
    } else if (kind == "sin-bump") {
        a.kind = OrderSpec::Kind::SinBump;
        a.base = j.at("base").get<double>();
        a.amplitude = j.at("amplitude").get<double>();
        a.frequency = j.value("frequency", 1.0);
    } else {
        throw std::invalid_argument("unknown order kind: " + kind);
    }
    return a;
}

// --- RadialExponentSpec ---

RadialExponent RadialExponentSpec::bind(const RadiusGrid& rg) const {
    const double cutoff = a > 0.0 ? a : rg.r_min;
    std::vector<double> v(rg.size());
    switch (kind) {
        case Kind::Constant:
            std::fill(v.begin(), v.end(), value);
            break;
        case Kind::TwoStep:
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = rg.nodes[i] < split ? inner : outer;
            break;
        case Kind::Table:
            if (table.size() != v.size())
                throw std::invalid_argument("theta table does not match the radius grid");
            v = table;
            break;
    }
    return RadialExponent(rg, std::move(v), cutoff);
}

RadialExponentSpec RadialExponentSpec::constant(double theta) {
    RadialExponentSpec t;
    t.kind = Kind::Constant;
    t.value = theta;
    return t;
}

nlohmann::json to_json(const RadialExponentSpec& t) {
    nlohmann::json j;
    switch (t.kind) {
        case RadialExponentSpec::Kind::Constant:
            j["kind"] = "constant";
            j["value"] = t.value;
            break;
        case RadialExponentSpec::Kind::TwoStep:
            j["kind"] = "two-step";
            j["inner"] = t.inner;
            j["outer"] = t.outer;
            j["split"] = t.split;
            break;
        case RadialExponentSpec::Kind::Table:
            j["kind"] = "table";
            j["values"] = t.table;
            break;
    }
    if (t.a > 0.0) j["a"] = t.a;
    return j;
}

RadialExponentSpec radial_exponent_spec_from_json(const nlohmann::json& j) {
    RadialExponentSpec t;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        t.kind = RadialExponentSpec::Kind::Constant;
        t.value = j.at("value").get<double>();
    } else if (kind == "two-step") {
        t.kind = RadialExponentSpec::Kind::TwoStep;
        t.inner = j.at("inner").get<double>();
        t.outer = j.at("outer").get<double>();
        t.split = j.at("split").get<double>();
    } else if (kind == "table") {
        t.kind = RadialExponentSpec::Kind::Table;
        t.table = j.at("values").get<std::vector<double>>();
    } else {
        throw std::invalid_argument("unknown theta kind: " + kind);
    }
    t.a = j.value("a", 0.0);
    return t;
}

// --- WeightSpec ---

RadialWeight WeightSpec::bind(const RadiusGrid& rg, int n) const {
    switch (kind) {
        case Kind::Power:
            return RadialWeight::power(beta, amplitude);
        case Kind::PowerField:
            return RadialWeight::power_field(beta_field);
        case Kind::Table:
            if (radial_table.size() != rg.size())
                throw std::invalid_argument("weight table does not match the radius grid");
            return RadialWeight::table_radial(radial_table);
        case Kind::Lambda:
            return RadialWeight::lambda_form({lambda}, n);
        case Kind::ExpDecay: {
            std::vector<double> v(rg.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-rate * rg.nodes[i]);
            return RadialWeight::table_radial(std::move(v));
        }
    }
    throw std::logic_error("unreachable weight kind");
}

WeightSpec WeightSpec::power(double beta, double amplitude) {
    WeightSpec w;
    w.kind = Kind::Power;
    w.beta = beta;
    w.amplitude = amplitude;
    return w;
}

WeightSpec WeightSpec::exp_decay(double rate) {
    WeightSpec w;
    w.kind = Kind::ExpDecay;
    w.rate = rate;
    return w;
}

nlohmann::json to_json(const WeightSpec& w) {
    nlohmann::json j;
    switch (w.kind) {
        case WeightSpec::Kind::Power:
            j["kind"] = "power";
            j["beta"] = w.beta;
            if (w.amplitude != 1.0) j["amplitude"] = w.amplitude;
            break;
        case WeightSpec::Kind::PowerField:
            j["kind"] = "power-field";
            j["beta"] = w.beta_field;
            break;
        case WeightSpec::Kind::Table:
            j["kind"] = "table";
            j["radial"] = w.radial_table;
            break;
        case WeightSpec::Kind::Lambda:
            j["kind"] = "lambda";
            j["lambda"] = w.lambda;
            break;
        case WeightSpec::Kind::ExpDecay:
            j["kind"] = "exp-decay";
            j["rate"] = w.rate;
            break;
    }
    return j;
}

WeightSpec weight_spec_from_json(const nlohmann::json& j) {
    WeightSpec w;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") {
        w.kind = WeightSpec::Kind::Power;
        w.beta = j.at("beta").get<double>();
        w.amplitude = j.value("amplitude", 1.0);
    } else if (kind == "power-field") {
        w.kind = WeightSpec::Kind::PowerField;
        w.beta_field = j.at("beta").get<std::vector<double>>();
    } else if (kind == "table") {
        w.kind = WeightSpec::Kind::Table;
        w.radial_table = j.at("radial").get<std::vector<double>>();
    } else if (kind == "lambda") {
        w.kind = WeightSpec::Kind::Lambda;
        w.lambda = j.at("lambda").get<double>();
    } else if (kind == "exp-decay") {
        w.kind = WeightSpec::Kind::ExpDecay;
        w.rate = j.value("rate", 1.0);
    } else {
        throw std::invalid_argument("unknown weight kind: " + kind);
    }
    return w;
}

// --- MorreySpaceSpecFile ---

RadiusGrid MorreySpaceSpecFile::make_radius_grid(const Grid& g) const {
    const double rmin = r_min > 0.0 ? r_min : g.h;
    const double rmax = r_max > 0.0 ? r_max : 4.0 * g.domain.diameter();
    return RadiusGrid(rmin, rmax, radii);
}

MorreySpaceSpec MorreySpaceSpecFile::bind(const Grid& g) const {
    MorreySpaceSpec s;
    s.p = p.sample(g);
    s.radius_grid = make_radius_grid(g);
    s.w = w.bind(s.radius_grid, g.dim());
    if (!theta_infinite) s.theta = theta.bind(s.radius_grid);
    return s;
}

nlohmann::json to_json(const MorreySpaceSpecFile& s) {
    nlohmann::json j;
    j["p"] = to_json(s.p);
    j["theta"] = s.theta_infinite ? nlohmann::json("inf") : to_json(s.theta);
    j["w"] = to_json(s.w);
    j["domain"] = to_json(s.domain);
    j["grid"] = s.grid_cells;
    nlohmann::json rj;
    if (s.r_min > 0.0) rj["r_min"] = s.r_min;
    if (s.r_max > 0.0) rj["r_max"] = s.r_max;
    rj["nodes"] = s.radii;
    j["radius_grid"] = rj;
    return j;
}

MorreySpaceSpecFile space_spec_from_json(const nlohmann::json& j) {
    MorreySpaceSpecFile s;
    s.p = exponent_spec_from_json(j.at("p"));
    if (j.at("theta").is_string() && j.at("theta").get<std::string>() == "inf")
        s.theta_infinite = true;
    else
        s.theta = radial_exponent_spec_from_json(j.at("theta"));
    s.w = weight_spec_from_json(j.at("w"));
    s.domain = domain_from_json(j.at("domain"));
    s.grid_cells = j.value("grid", std::size_t{1024});
    if (j.contains("radius_grid")) {
        const auto& rj = j.at("radius_grid");
        s.r_min = rj.value("r_min", 0.0);
        s.r_max = rj.value("r_max", 0.0);
        s.radii = rj.value("nodes", std::size_t{64});
    }
    return s;
}

// --- reports ---

nlohmann::json to_json(const ConditionReport& r) {
    nlohmann::json j;
    j["value"] = finite_or_tag(r.value);
    j["finite"] = r.finite;
    j["sensitivity"] = finite_or_tag(r.sensitivity);
    j["witness"] = {{"x", r.witness_x}, {"t", r.witness_t}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

nlohmann::json to_json(const NonemptinessReport& r) {
    nlohmann::json j;
    j["value"] = finite_or_tag(r.value);
    j["finite"] = r.finite;
    j["sensitivity"] = finite_or_tag(r.sensitivity);
    j["tail_exponent"] = finite_or_tag(r.tail_exponent);
    j["witness_cell"] = r.witness_cell;
    return j;
}

nlohmann::json to_json(const VerifyReport& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["grid_cells"] = r.base_cells;
    j["radius_grid"] = to_json(r.radius_grid);
    j["constant"] = finite_or_tag(r.constant);
    j["constant_refined"] = finite_or_tag(r.constant_refined);
    j["zero_rhs_failures"] = r.zero_rhs_failures;
    j["pass"] = r.pass;
    auto arr = nlohmann::json::array();
    for (const auto& s : r.samples)
        arr.push_back({{"member", s.member},
                       {"x", s.x0},
                       {"t", s.t},
                       {"lhs", s.lhs},
                       {"rhs", s.rhs},
                       {"ratio", s.ratio}});
    j["samples"] = arr;
    return j;
}

nlohmann::json to_json(const OperatorNormReport& r) {
    nlohmann::json j;
    j["max_ratio"] = finite_or_tag(r.max_ratio);
    j["skipped"] = r.skipped;
    auto arr = nlohmann::json::array();
    for (const auto& m : r.members)
        arr.push_back({{"member", m.member},
                       {"src_norm", m.src_norm},
                       {"dst_norm", m.dst_norm},
                       {"ratio", m.ratio}});
    j["members"] = arr;
    return j;
}

void write_verify_csv(const VerifyReport& r, std::ostream& out) {
    out << "member,x,t,lhs,rhs,ratio\n";
    for (const auto& s : r.samples)
        out << s.member << ',' << fmt(s.x0) << ',' << fmt(s.t) << ',' << fmt(s.lhs) << ','
            << fmt(s.rhs) << ',' << fmt(s.ratio) << '\n';
}

void emit_json(const nlohmann::json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

void emit_report_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    emit_json(j, out);
    if (!out.good()) throw std::runtime_error("write failed for " + path);
}

}  // namespace gmorrey
