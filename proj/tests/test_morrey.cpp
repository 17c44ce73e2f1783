#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gmorrey/morrey.hpp"
#include "gmorrey/numerics.hpp"
#include "oracles.hpp"

using namespace gmorrey;

namespace {

//! sup-form global norm sup_{x,r} w(x,r) r^{-eta_p} ||f||_{B~(x,r)}; the
//! theta = infinity reduction target, evaluated by the same profile path.
double sup_form_norm(const ScalarField& f, const ExponentField& p, const RadialWeight& w,
                     const RadiusGrid& rg) {
    double best = 0.0;
    for (std::size_t c = 0; c < f.grid.cell_count(); ++c) {
        const auto prof = ball_norm_profile(f, p, f.grid.center(c), rg);
        for (std::size_t j = 0; j < rg.size(); ++j)
            best = std::max(best, w.value(c, j, rg.nodes[j], &p) *
                                      std::pow(rg.nodes[j], -eta_p(p, c, rg.nodes[j])) * prof[j]);
    }
    return best;
}

//! Fully independent constant-(p, theta) global Morrey norm: two explicit
//! loops with power sums, no Luxemburg solves anywhere.
double brute_force_gm_constant(const ScalarField& f, double p, double theta,
                               const RadialWeight& w, const RadiusGrid& rg) {
    const Grid& g = f.grid;
    double best = 0.0;
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        const Point x = g.center(c);
        double radial_mod = 0.0;
        for (std::size_t j = 0; j < rg.size(); ++j) {
            const double r = rg.nodes[j];
            double ball_mod = 0.0;
            for (std::size_t i = 0; i < g.cell_count(); ++i)
                if (g.distance(i, x) < r)
                    ball_mod += std::pow(std::abs(f.values[i]), p) * g.cell_measure();
            const double prof = std::pow(ball_mod, 1.0 / p);
            const double n_over_p = static_cast<double>(g.dim()) / p;
            const double phi = w.value(c, j, r, nullptr) * std::pow(r, -n_over_p) * prof;
            radial_mod += std::pow(phi, theta) * rg.dr[j];
        }
        best = std::max(best, std::pow(radial_mod, 1.0 / theta));
    }
    return best;
}

}  // namespace

TEST_CASE("local norm profile: closed form, zero field, monotonicity") {
    const Grid g = make_grid(Domain::interval(-1.0, 1.0), 512);
    const auto p = ExponentField::constant(g, 2.0);
    const RadiusGrid rg(20.0 * g.h, 4.0, 32);
    const Point x = g.center(g.cell_at({0.05, 0.0}));

    const auto prof = local_norm_profile(ScalarField::constant(g, 1.0), p, x, rg);
    for (std::size_t j = 0; j < rg.size(); ++j) {
        const double r = rg.nodes[j];
        if (r < 0.55)  // ball inside the domain
            CHECK(prof.values[j] == doctest::Approx(std::sqrt(2.0 * r)).epsilon(0.03));
        if (j > 0) CHECK(prof.values[j] >= prof.values[j - 1] - 1e-12);
    }

    const auto zero = local_norm_profile(ScalarField::constant(g, 0.0), p, x, rg);
    for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("variable morrey lambda norm") {
    const Grid g = make_grid(Domain::interval(-1.0, 1.0), 512);
    const auto p = ExponentField::constant(g, 2.0);
    const RadiusGrid rg(25.0 * g.h, 4.0, 32);

    SUBCASE("lambda = 0 reduces to the full-domain norm") {
        Rng rng(4);
        const auto f = oracle::random_field(g, rng);
        const double got = variable_morrey_lambda_norm(f, p, {0.0}, rg);
        const double full = luxemburg_norm(f, p, whole_domain(g)).norm;
        CHECK(got == doctest::Approx(full).epsilon(1e-10));
    }

    SUBCASE("f = 1, lambda = 1: flat profile sqrt(2)") {
        const double got =
            variable_morrey_lambda_norm(ScalarField::constant(g, 1.0), p, {1.0}, rg);
        CHECK(got == doctest::Approx(std::sqrt(2.0)).epsilon(0.03));
    }

    SUBCASE("zero field") {
        CHECK(variable_morrey_lambda_norm(ScalarField::constant(g, 0.0), p, {1.0}, rg) == 0.0);
    }
}

TEST_CASE("generalized morrey norm: both normalizations") {
    const Grid g = make_grid(Domain::interval(-1.0, 1.0), 256);
    const auto p = ExponentField::constant(g, 2.0);
    const RadiusGrid rg(20.0 * g.h, 8.0, 32);  // r_max covers the domain from every center
    Rng rng(9);
    const auto f = oracle::random_field(g, rng);

    SUBCASE("unbounded form with w = 1 is the full-domain norm") {
        const double got = generalized_morrey_norm(f, p, RadialWeight::power(0.0),
                                                   MorreyNormalization::Unbounded, rg);
        CHECK(got == doctest::Approx(luxemburg_norm(f, p, whole_domain(g)).norm).epsilon(1e-10));
    }

    SUBCASE("bounded form, w = r^{-1/2}, f = 1 gives sqrt(2)") {
        const double got =
            generalized_morrey_norm(ScalarField::constant(g, 1.0), p,
                                    RadialWeight::power(-0.5), MorreyNormalization::Bounded, rg);
        CHECK(got == doctest::Approx(std::sqrt(2.0)).epsilon(0.03));
    }

    SUBCASE("zero field") {
        CHECK(generalized_morrey_norm(ScalarField::constant(g, 0.0), p, RadialWeight::power(0.0),
                                      MorreyNormalization::Unbounded, rg) == 0.0);
    }
}

TEST_CASE("gm norm: theta = infinity reduction is exact") {
    const Grid g = make_grid(Domain::interval(-1.0, 1.0), 128);
    const auto p = ExponentField::constant(g, 2.0);
    const RadiusGrid rg(g.h, 4.0, 24);
    Rng rng(12);
    const auto f = oracle::random_field(g, rng);
    const auto w = RadialWeight::power(0.25);

    MorreySpaceSpec spec{p, std::nullopt, w, rg};
    CHECK(gm_norm(f, spec) == sup_form_norm(f, p, w, rg));  // bitwise
}

TEST_CASE("gm norm: weight cancellation gives the indicator norm") {
    const Grid g = make_grid(Domain::interval(-2.0, 2.0), 256);
    const auto p = ExponentField::constant(g, 2.0);
    const RadiusGrid rg(g.h, 16.0, 48);
    std::vector<double> v(g.cell_count(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = g.center(i)[0];
        if (x > 0.0 && x < 1.0) v[i] = 1.0;
    }
    const ScalarField f(g, std::move(v));

    // w = r^{1/2} cancels r^{-eta} (eta = 1/2 everywhere for p = 2)
    MorreySpaceSpec spec{p, std::nullopt, RadialWeight::power(0.5), rg};
    CHECK(gm_norm(f, spec) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gm_norm(ScalarField::constant(g, 0.0), spec) == 0.0);
}

TEST_CASE("gm lambda norm: substitution identity and direct formula") {
    const Grid g = make_grid(Domain::interval(-1.0, 1.0), 128);
    const auto p = ExponentField::constant(g, 2.5);
    const RadiusGrid rg(g.h, 4.0, 24);
    Rng rng(21);
    const auto f = oracle::random_field(g, rng);
    const std::vector<double> lambda{0.4};

    SUBCASE("definitional substitution is the same call (theta = inf)") {
        const auto w = RadialWeight::lambda_form(lambda, 1);
        MorreySpaceSpec spec{p, std::nullopt, w, rg};
        CHECK(gm_lambda_norm(f, p, std::nullopt, lambda, rg) == gm_norm(f, spec));
    }

    SUBCASE("matches the displayed r^{-lambda/p} form") {
        // direct route: sup_x || r^{-lambda/p} profile ||_inf
        double direct = 0.0;
        for (std::size_t c = 0; c < g.cell_count(); ++c) {
            const auto prof = ball_norm_profile(f, p, g.center(c), rg);
            for (std::size_t j = 0; j < rg.size(); ++j)
                direct = std::max(direct, std::pow(rg.nodes[j], -lambda[0] / p.values[c]) *
                                              prof[j]);
        }
        CHECK(gm_lambda_norm(f, p, std::nullopt, lambda, rg) ==
              doctest::Approx(direct).epsilon(1e-12));
    }

    SUBCASE("lambda outside [0, n] is rejected") {
        CHECK_THROWS_AS(RadialWeight::lambda_form({1.5}, 1), std::invalid_argument);
    }
}

TEST_CASE("gm norm with finite theta: constant case against brute force") {
    const Grid g = make_grid(Domain::interval(-1.0, 1.0), 128);
    const auto p = ExponentField::constant(g, 2.0);
    const RadiusGrid rg(g.h, 4.0, 16);
    Rng rng(30);
    const auto f = oracle::random_field(g, rng);
    const auto w = RadialWeight::power(0.3);

    MorreySpaceSpec spec{p, RadialExponent::constant(rg, 2.0), w, rg};
    const double got = gm_norm(f, spec);
    const double ref = brute_force_gm_constant(f, 2.0, 2.0, w, rg);
    CHECK(got == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("gm norm is a norm: homogeneity, triangle, monotonicity") {
    const Grid g = make_grid(Domain::interval(-1.0, 1.0), 64);
    const auto p = ExponentField::constant(g, 2.2);
    const RadiusGrid rg(g.h, 4.0, 16);
    MorreySpaceSpec spec{p, RadialExponent::constant(rg, 1.8), RadialWeight::power(0.2), rg};

    Rng rng(44);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = oracle::random_field(g, rng);
        const auto h = oracle::random_field(g, rng);
        const double nf = gm_norm(f, spec);
        const double nh = gm_norm(h, spec);

        ScalarField cf = f;
        for (double& x : cf.values) x *= 7.5;
        CHECK(gm_norm(cf, spec) == doctest::Approx(7.5 * nf).epsilon(1e-9));

        ScalarField sum = f;
        for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += h.values[i];
        CHECK(gm_norm(sum, spec) <= nf + nh + 1e-9 * (nf + nh));

        ScalarField dominated = f;
        for (double& x : dominated.values) x *= 0.6;
        CHECK(gm_norm(dominated, spec) <= nf + 1e-10);
    }
}

TEST_CASE("nonemptiness check") {
    const Grid g = make_grid(Domain::interval(-1.0, 1.0), 32);
    const auto p = ExponentField::constant(g, 2.0);
    const RadiusGrid rg(0.01, 16.0, 48);
    const auto theta = RadialExponent::constant(rg, 2.0);

    SUBCASE("exponentially decaying weight is accepted") {
        std::vector<double> wv(rg.size());
        for (std::size_t j = 0; j < rg.size(); ++j) wv[j] = std::exp(-rg.nodes[j]);
        MorreySpaceSpec spec{p, theta, RadialWeight::table_radial(wv), rg};
        const auto rep = nonemptiness_check(spec);
        CHECK(rep.finite);
        CHECK(rep.value > 0.0);
        CHECK(rep.sensitivity < 1.05);
    }

    SUBCASE("growing power weight is flagged divergent through the tail") {
        MorreySpaceSpec spec{p, theta, RadialWeight::power(0.5), rg};
        const auto rep = nonemptiness_check(spec);
        CHECK_FALSE(rep.finite);
    }

    SUBCASE("constant weight diverges in L_2(0, inf) as well") {
        MorreySpaceSpec spec{p, theta, RadialWeight::power(0.0), rg};
        CHECK_FALSE(nonemptiness_check(spec).finite);
    }

    SUBCASE("zero weights cannot be constructed") {
        CHECK_THROWS_AS(RadialWeight::table_radial(std::vector<double>(rg.size(), 0.0)),
                        std::invalid_argument);
    }
}
