#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reabc/epidemic.hpp"
#include "reabc/stats.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace reabc;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("sellke hand trace: infection before first removal") {
    // n = 2, beta = 1, g = (2, 3), threshold 1: pressure reaches 1 at t = 1,
    // so individual 2 is infected there and removed at 1 + 3 = 4.
    SimulatedEpidemic sim = sellke_simulate(2, 1.0, {2.0, 3.0}, {1.0});
    REQUIRE(sim.removal_times.size() == 2);
    CHECK(sim.removal_times[0] == doctest::Approx(2.0));
    CHECK(sim.removal_times[1] == doctest::Approx(4.0));
    CHECK(sim.final_size() == 2);
    CHECK(sim.total_pressure == doctest::Approx(5.0)); // beta * (g1 + g2)
}

TEST_CASE("sellke hand trace: epidemic dies after the first removal") {
    // threshold 5 exceeds the total pressure 2 exerted by individual 1
    SimulatedEpidemic sim = sellke_simulate(2, 1.0, {2.0, 3.0}, {5.0});
    CHECK(sim.removal_times[0] == doctest::Approx(2.0));
    CHECK(sim.removal_times[1] == kInf);
    CHECK(sim.final_size() == 1);
    CHECK(sim.total_pressure == doctest::Approx(2.0));
}

TEST_CASE("zero infection pressure removes only the first individual") {
    std::vector<double> g = {1.5, 2.0, 3.0, 4.0};
    std::vector<double> p = {0.4, 0.9, 2.2};
    SimulatedEpidemic sim = sellke_simulate(4, 0.0, g, p);
    CHECK(sim.removal_times[0] == doctest::Approx(1.5));
    for (int i = 1; i < 4; ++i) CHECK(sim.removal_times[i] == kInf);
    CHECK(sim.total_pressure == 0.0);
}

TEST_CASE("total pressure equals beta times the removed infectious periods") {
    Rng rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 12;
        const double beta = rng.uniform(0.0, 0.5);
        std::vector<double> g(n), p(n - 1);
        for (double& v : g) v = exponential_quantile(rng.open01(), 1.0);
        for (double& v : p) v = exponential_quantile(rng.open01(), 1.0);
        SimulatedEpidemic sim = sellke_simulate(n, beta, g, p);

        double expected = 0.0;
        for (int i = 0; i < n; ++i) {
            if (std::isfinite(sim.removal_times[i])) expected += g[i];
        }
        expected *= beta;
        CHECK(sim.total_pressure == doctest::Approx(expected).epsilon(1e-9));

        // thresholds reported ascending
        for (std::size_t i = 1; i < sim.sorted_thresholds.size(); ++i) {
            CHECK(sim.sorted_thresholds[i] >= sim.sorted_thresholds[i - 1]);
        }
    }
}

TEST_CASE("gillespie with no infections always has final size 1") {
    Rng rng(67);
    for (int i = 0; i < 50; ++i) {
        GillespieResult r = gillespie_simulate(10, 0.0, 1.0, rng);
        CHECK(r.final_size == 1);
        CHECK(r.removal_times.size() == 1);
    }
}

TEST_CASE("gillespie with near-instant removal rarely spreads") {
    Rng rng(71);
    int spread = 0;
    for (int i = 0; i < 200; ++i) {
        if (gillespie_simulate(10, 2.0, 1e7, rng).final_size > 1) ++spread;
    }
    CHECK(spread <= 2);
}

TEST_CASE("sellke and gillespie final-size distributions agree for Markov SIR") {
    const int n = 10;
    const double lambda = 2.0, gamma = 1.0;
    const int replicates = 10000;

    Rng grng(73);
    std::vector<int> gillespie_sizes;
    for (int i = 0; i < replicates; ++i) {
        gillespie_sizes.push_back(gillespie_simulate(n, lambda, gamma, grng).final_size);
    }

    std::vector<int> sellke_sizes;
    for (int i = 0; i < replicates; ++i) {
        Rng rng = make_stream(79, static_cast<std::uint64_t>(i));
        std::vector<double> g(n), p(n - 1);
        for (double& v : g) v = exponential_quantile(rng.open01(), gamma);
        for (double& v : p) v = exponential_quantile(rng.open01(), 1.0);
        sellke_sizes.push_back(sellke_simulate(n, lambda / n, g, p).final_size());
    }

    CHECK(chi_square_two_sample_pvalue(gillespie_sizes, sellke_sizes) > 0.01);
}

TEST_CASE("bin_floor5") {
    CHECK(bin_floor5(0.0) == 0.0);
    CHECK(bin_floor5(4.99) == 0.0);
    CHECK(bin_floor5(12.3) == 10.0);
    CHECK(bin_floor5(5.0) == 5.0);
    CHECK_THROWS_AS(bin_floor5(-1.0), std::invalid_argument);
}

TEST_CASE("composite distance cases") {
    RemovalData obs;
    obs.population = 5;
    obs.times = {0.0, 2.0, 5.0};

    SimulatedEpidemic sim;
    sim.sorted_thresholds = {0.3, 0.7, 1.4, 2.6};
    sim.total_pressure = 1.9;

    SUBCASE("identical removal pattern gives the matched Euclidean distance") {
        sim.removal_times = {1.0, 3.0, 6.0, kInf, kInf};
        CHECK(sir_distance(sim, obs, 1000.0) == doctest::Approx(0.0)); // s = (0,2,5) both
        sim.removal_times = {1.0, 3.5, 6.0, kInf, kInf};
        // s_sim = (0, 2.5, 5): distance sqrt(0.25)
        CHECK(sir_distance(sim, obs, 1000.0) == doctest::Approx(0.5));
    }
    SUBCASE("one extra simulated removal adds k + total pressure - threshold") {
        sim.removal_times = {1.0, 3.0, 6.0, 7.0, kInf}; // nu = 4, nu_obs = 3
        const double d0 = 0.0;
        CHECK(sir_distance(sim, obs, 1000.0) ==
              doctest::Approx(d0 + 1000.0 + 1.9 - sim.sorted_thresholds[3]));
    }
    SUBCASE("one missing simulated removal adds k + threshold") {
        sim.removal_times = {1.0, 3.0, kInf, kInf, kInf}; // nu = 2, nu_obs = 3
        // matched part: s_obs (0,2) vs s_sim (0,2) -> 0
        CHECK(sir_distance(sim, obs, 1000.0) ==
              doctest::Approx(1000.0 + sim.sorted_thresholds[2]));
    }
    SUBCASE("binned variant compares 5-day bins") {
        sim.removal_times = {1.0, 4.0, 7.0, kInf, kInf}; // s_sim = (0, 3, 6)
        // bins: obs (0, 0, 5), sim (0, 0, 5) -> 0
        CHECK(sir_distance(sim, obs, 1000.0, true) == doctest::Approx(0.0));
        sim.removal_times = {1.0, 4.0, 12.0, kInf, kInf}; // s_sim = (0, 3, 11)
        // bins: obs (0, 0, 5), sim (0, 0, 10) -> 5
        CHECK(sir_distance(sim, obs, 1000.0, true) == doctest::Approx(5.0));
    }
}

TEST_CASE("reproduction number per variant") {
    CHECK(*basic_reproduction_number(EpidemicVariant::markov, {2.0, 2.0}) ==
          doctest::Approx(1.0));
    CHECK(*basic_reproduction_number(EpidemicVariant::binned_markov, {3.0, 2.0}) ==
          doctest::Approx(1.5));
    CHECK(*basic_reproduction_number(EpidemicVariant::gamma_infectious, {1.0, 2.0, 3.0}) ==
          doctest::Approx(1.5));
    CHECK_FALSE(basic_reproduction_number(EpidemicVariant::weibull_pressure, {1.0, 2.0, 3.0})
                    .has_value());
}

TEST_CASE("variant distributions") {
    CHECK(infectious_period_distribution(EpidemicVariant::markov, {1.0, 0.5}).mean() ==
          doctest::Approx(2.0));
    CHECK(infectious_period_distribution(EpidemicVariant::gamma_infectious, {1.0, 0.5, 3.0})
              .mean() == doctest::Approx(6.0));
    CHECK(pressure_distribution(EpidemicVariant::markov, {1.0, 0.5}).mean() ==
          doctest::Approx(1.0));
    CHECK(pressure_distribution(EpidemicVariant::weibull_pressure, {1.0, 0.5, 1.0}).mean() ==
          doctest::Approx(1.0));
    CHECK(epidemic_param_dim(EpidemicVariant::markov) == 2);
    CHECK(epidemic_param_dim(EpidemicVariant::weibull_pressure) == 3);
    CHECK(epidemic_variant_from_name("gamma-infectious") == EpidemicVariant::gamma_infectious);
    CHECK_THROWS_AS(epidemic_variant_from_name("nope"), std::invalid_argument);
}

TEST_CASE("removal data loader") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "reabc_test_removals.txt";

    SUBCASE("happy path with comments") {
        std::ofstream out(path);
        out << "# source: synthetic\n120\n0\n13\n7\n2\n";
        out.close();
        RemovalData data = load_removal_data(path.string());
        CHECK(data.population == 120);
        REQUIRE(data.removals() == 4);
        CHECK(data.times == std::vector<double>{0.0, 13.0, 20.0, 22.0});
    }
    SUBCASE("first inter-removal time must be zero") {
        std::ofstream out(path);
        out << "120\n5\n13\n";
        out.close();
        CHECK_THROWS_AS(load_removal_data(path.string()), std::runtime_error);
    }
    SUBCASE("negative gaps rejected") {
        std::ofstream out(path);
        out << "120\n0\n-2\n";
        out.close();
        CHECK_THROWS_AS(load_removal_data(path.string()), std::runtime_error);
    }
    SUBCASE("more removals than population rejected") {
        std::ofstream out(path);
        out << "2\n0\n1\n1\n";
        out.close();
        CHECK_THROWS_AS(load_removal_data(path.string()), std::runtime_error);
    }
    fs::remove(path);
}

TEST_CASE("epidemic model basics") {
    RemovalData obs;
    obs.population = 20;
    obs.times = {0.0, 1.0, 3.0, 4.5};
    EpidemicModelConfig cfg;
    cfg.variant = EpidemicVariant::gamma_infectious;
    cfg.data = obs;
    EpidemicModel model(cfg);

    CHECK(model.param_dim() == 3);
    CHECK(model.latent_dim() == 39);

    // exponential(0.1) priors on every parameter
    const double expect = 3.0 * std::log(0.1) - 0.1 * (1.0 + 2.0 + 3.0);
    CHECK(model.prior_log_density({1.0, 2.0, 3.0}) == doctest::Approx(expect));
    CHECK(model.prior_log_density({1.0, -2.0, 3.0}) ==
          -std::numeric_limits<double>::infinity());

    Rng rng(83);
    ParamVector draw = model.prior_sample(rng);
    REQUIRE(draw.size() == 3);
    for (double v : draw) CHECK(v > 0.0);

    LatentVector x(39);
    for (double& v : x) v = rng.uniform01();
    const ParamVector theta = {1.5, 0.4, 2.0};
    const double d = model.phi(theta, x);
    CHECK(d >= 0.0);
    CHECK(model.phi(theta, x) == d); // deterministic
    CHECK(model.phi({1.5, -0.4, 2.0}, x) == kInf);
}

TEST_CASE("distance is continuous in the latents where the removal count is stable") {
    RemovalData obs;
    obs.population = 15;
    obs.times = {0.0, 1.0, 2.0, 4.0, 7.0};
    EpidemicModelConfig cfg;
    cfg.variant = EpidemicVariant::markov;
    cfg.data = obs;
    EpidemicModel model(cfg);
    const ParamVector theta = {2.0, 0.5};

    Rng rng(89);
    const double delta = 1e-7;
    int probes = 0;
    for (int trial = 0; trial < 40 && probes < 10; ++trial) {
        LatentVector x(model.latent_dim());
        for (double& v : x) v = rng.uniform(0.05, 0.95);
        int coord = static_cast<int>(rng.below(model.latent_dim()));
        LatentVector x2 = x;
        x2[coord] += delta;

        const int nu1 = model.simulate(theta, x).final_size();
        const int nu2 = model.simulate(theta, x2).final_size();
        if (nu1 != nu2) continue; // skip probes that cross a removal-count jump
        ++probes;
        CHECK(std::fabs(model.phi(theta, x2) - model.phi(theta, x)) < 1e-3);
    }
    CHECK(probes == 10);
}
