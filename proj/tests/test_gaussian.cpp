#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reabc/distributions.hpp"
#include "reabc/gaussian_model.hpp"
#include "reabc/stats.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace reabc;

namespace {

std::vector<double> draw_observations(double sigma, int n, std::uint64_t seed) {
    Rng rng = make_stream(seed, 0xce5a);
    LatentVector u(n);
    for (double& v : u) v = rng.open01();
    return gaussian_simulate(sigma, u);
}

// Posterior moments by Simpson quadrature of sigma^-n exp(-ss/(2 sigma^2))
// over the prior support; the ground truth for MH output.
void quadrature_posterior(const std::vector<double>& y_obs, double upper, double& mean_out,
                          double& sd_out) {
    double ss = 0.0;
    for (double y : y_obs) ss += y * y;
    const double n = static_cast<double>(y_obs.size());
    auto log_post = [&](double sigma) { return -n * std::log(sigma) - ss / (2.0 * sigma * sigma); };

    // normalise by the maximum to keep exponentials in range
    const int grid = 200001;
    double peak = -1e300;
    for (int i = 1; i < grid; ++i) {
        double sigma = upper * i / grid;
        peak = std::max(peak, log_post(sigma));
    }
    double z = 0.0, m1 = 0.0, m2 = 0.0;
    for (int i = 1; i < grid; ++i) {
        double sigma = upper * i / grid;
        double w = std::exp(log_post(sigma) - peak) * ((i % 2 == 1) ? 4.0 : 2.0);
        z += w;
        m1 += w * sigma;
        m2 += w * sigma * sigma;
    }
    mean_out = m1 / z;
    sd_out = std::sqrt(m2 / z - (m1 / z) * (m1 / z));
}

} // namespace

TEST_CASE("simulator maps the median latent to zero") {
    LatentVector x(25, 0.5);
    for (double sigma : {0.0, 1.0, 3.0, 9.9}) {
        for (double y : gaussian_simulate(sigma, x)) CHECK(y == doctest::Approx(0.0));
    }
}

TEST_CASE("simulator at sigma zero is the zero vector") {
    Rng rng(3);
    LatentVector x(25);
    for (double& v : x) v = rng.uniform01();
    for (double y : gaussian_simulate(0.0, x)) CHECK(y == 0.0);
}

TEST_CASE("inverse-CDF identity at a known quantile") {
    LatentVector x(4, normal_cdf(1.0));
    std::vector<double> y = gaussian_simulate(3.0, x);
    for (double v : y) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("distance at sigma zero is the data norm") {
    GaussianModelConfig cfg;
    cfg.y_obs = draw_observations(3.0, 25, 1);
    cfg.n_obs = 25;
    GaussianModel model(cfg);
    double norm = 0.0;
    for (double y : cfg.y_obs) norm += y * y;
    norm = std::sqrt(norm);
    LatentVector x(25, 0.25);
    CHECK(model.phi({0.0}, x) == doctest::Approx(norm).epsilon(1e-12));
}

TEST_CASE("sorted distance never exceeds the raw distance") {
    // sorting both vectors is the L2-optimal pairing
    GaussianModelConfig raw_cfg;
    raw_cfg.y_obs = draw_observations(3.0, 25, 2);
    raw_cfg.n_obs = 25;
    GaussianModelConfig sorted_cfg = raw_cfg;
    sorted_cfg.distance = GaussianDistance::sorted_euclidean;
    GaussianModel raw(raw_cfg), sorted_model(sorted_cfg);

    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        LatentVector x(25);
        for (double& v : x) v = rng.uniform01();
        double sigma = rng.uniform(0.0, 10.0);
        CHECK(sorted_model.phi({sigma}, x) <= raw.phi({sigma}, x) + 1e-12);
    }
}

TEST_CASE("phi is deterministic") {
    GaussianModelConfig cfg;
    cfg.y_obs = draw_observations(3.0, 25, 7);
    cfg.n_obs = 25;
    GaussianModel model(cfg);
    Rng rng(11);
    LatentVector x(25);
    for (double& v : x) v = rng.uniform01();
    double first = model.phi({2.5}, x);
    for (int i = 0; i < 10; ++i) CHECK(model.phi({2.5}, x) == first);
}

TEST_CASE("exact likelihood peaks at the scale MLE and is scale equivariant") {
    GaussianModelConfig cfg;
    cfg.y_obs = draw_observations(3.0, 25, 13);
    cfg.n_obs = 25;
    GaussianModel model(cfg);

    double ss = 0.0;
    for (double y : cfg.y_obs) ss += y * y;
    const double sigma_hat = std::sqrt(ss / 25.0);

    auto grid_argmax = [](const GaussianModel& m) {
        double best = -1e300, arg = 0.0;
        for (int i = 1; i < 5000; ++i) {
            double sigma = 10.0 * i / 5000.0;
            double ll = m.exact_log_likelihood(sigma);
            if (ll > best) {
                best = ll;
                arg = sigma;
            }
        }
        return arg;
    };
    CHECK(grid_argmax(model) == doctest::Approx(sigma_hat).epsilon(0.002));

    GaussianModelConfig doubled = cfg;
    for (double& y : doubled.y_obs) y *= 2.0;
    GaussianModel model2(doubled);
    CHECK(grid_argmax(model2) == doctest::Approx(2.0 * sigma_hat).epsilon(0.002));
}

TEST_CASE("exact MH posterior matches the quadrature oracle") {
    std::vector<double> y_obs = draw_observations(3.0, 25, 17);
    double quad_mean = 0.0, quad_sd = 0.0;
    quadrature_posterior(y_obs, 10.0, quad_mean, quad_sd);
    CHECK(std::fabs(quad_mean - 3.0) < 3.0 * quad_sd);

    ExactMhConfig cfg;
    cfg.initial_sigma = 3.0;
    cfg.iterations = 50000;
    cfg.proposal_sd = 0.8;
    Trace trace = exact_gaussian_mh(y_obs, cfg, 19);
    std::vector<double> chain = trace.component(0);
    CHECK(mean(chain) == doctest::Approx(quad_mean).epsilon(0.02));
    CHECK(sample_sd(chain) == doctest::Approx(quad_sd).epsilon(0.1));

    for (double sigma : chain) {
        CHECK(sigma > 0.0);
        CHECK(sigma < 10.0);
    }
}

TEST_CASE("column file round trip") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "reabc_test_column.csv";
    std::vector<double> values = {1.25, -3.5e-8, 9.993, 0.0};
    save_column(path.string(), values, "test data\nsecond line");
    std::vector<double> loaded = load_column(path.string());
    REQUIRE(loaded.size() == values.size());
    for (std::size_t i = 0; i < values.size(); ++i) CHECK(loaded[i] == values[i]);
    fs::remove(path);
}

TEST_CASE("model rejects mismatched configuration") {
    GaussianModelConfig cfg;
    cfg.y_obs = {1.0, 2.0};
    cfg.n_obs = 25;
    CHECK_THROWS_AS(GaussianModel{cfg}, std::invalid_argument);
}
