#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "colsafe/app/config.hpp"

using namespace colsafe;
using namespace colsafe::app;

TEST(Config, DefaultsFromEmptyDocument) {
    const auto c = parse_config("{}");
    EXPECT_EQ(c, ExperimentConfig{});
}

TEST(Config, ParsesEverySection) {
    const auto c = parse_config(R"(
problem:
  name: lqr
  sigma: 0.02
  resolution: 31
method: gp-safeopt
compare: [colsafe]
kernel:
  family: truncated-matern32
  bandwidth: 0.5
  length_scale: 0.2
confidence:
  delta: 0.1
  sigma: 0.03
  lipschitz: 1.75
gp:
  length_scale: 0.15
  signal_variance: 0.1
  noise_variance: 1.0e-3
  scale: 3
run:
  budget: 50
  seed: 12345678901234
  output: somewhere
  repeats: 4
  wall_times: false
concentration:
  deltas: [0.2]
  lengths: [10, 20]
  trials: 30
  sigma: 2
  noise: [rademacher]
  bound_multiplier: 0.5
  etas: [0.25]
  martingale_length: 3
  martingale_trials: 40
)");
    EXPECT_EQ(c.problem.name, "lqr");
    EXPECT_EQ(c.problem.sigma, 0.02);
    EXPECT_EQ(c.problem.resolution, Index(31));
    EXPECT_EQ(c.method, "gp-safeopt");
    EXPECT_EQ(c.compare, std::vector<std::string>{"colsafe"});
    EXPECT_EQ(c.kernel.family, KernelFamily::TruncatedMatern32);
    EXPECT_EQ(c.kernel.length_scale, 0.2);
    EXPECT_EQ(c.delta, 0.1);
    EXPECT_EQ(c.sigma, 0.03);
    EXPECT_EQ(c.lipschitz, 1.75);
    EXPECT_EQ(c.gp.scale, 3.0);
    EXPECT_EQ(c.budget, 50u);
    EXPECT_EQ(c.seed, 12345678901234u);
    EXPECT_EQ(c.output, "somewhere");
    EXPECT_EQ(c.repeats, 4u);
    EXPECT_FALSE(c.wall_times);
    EXPECT_EQ(c.concentration.lengths, (std::vector<Index>{10, 20}));
    EXPECT_EQ(c.concentration.noise, std::vector<NoiseFamily>{NoiseFamily::Rademacher});
    EXPECT_EQ(c.concentration.martingale_trials, 40u);
}

TEST(Config, UnknownKeyNamesKeyAndLine) {
    try {
        parse_config("kernel:\n  family: boxcar\n  bandwith: 0.2\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), "kernel.bandwith");
        EXPECT_EQ(e.line(), 3);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(parse_config("colour: red\n"), ConfigError);
}

TEST(Config, RejectsInvalidValues) {
    for (const char* bad : {"confidence:\n  delta: 1.5\n", "confidence:\n  delta: zero\n",
                            "kernel:\n  bandwidth: -1\n", "kernel:\n  family: gaussian\n", "run:\n  budget: 0\n",
                            "run:\n  repeats: 0\n", "method: random\n", "concentration:\n  noise: [cauchy]\n",
                            "problem: [1, 2]\n", "gp:\n  scale: 0\n", "a: [unclosed\n"}) {
        EXPECT_THROW(parse_config(bad), ConfigError) << bad;
    }
}

TEST(Config, MissingFileIsAConfigError) {
    EXPECT_THROW(load_config("/nonexistent/colsafe.yaml"), ConfigError);
}

// serialize → parse is the identity on randomly drawn configurations.
TEST(Config, RoundTripProperty) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> U(1e-3, 0.999);
    for (int trial = 0; trial < 200; ++trial) {
        ExperimentConfig c;
        c.problem.name = trial % 2 ? "lqr" : "synthetic-2d";
        if (trial % 3) c.problem.sigma = U(rng);
        if (trial % 5) c.problem.resolution = 2 + rng() % 50;
        c.method = trial % 4 ? "colsafe" : "gp-safeopt";
        c.compare = trial % 2 ? std::vector<std::string>{"gp-safeopt"} : std::vector<std::string>{"colsafe", "gp-safeopt"};
        c.kernel.family = static_cast<KernelFamily>(rng() % 3);
        c.kernel.bandwidth = U(rng);
        c.kernel.length_scale = U(rng);
        c.delta = U(rng);
        if (trial % 2) c.sigma = U(rng) / 7.0;
        if (trial % 3 == 1) c.lipschitz = 1.0 / U(rng);
        c.gp.length_scale = U(rng);
        c.gp.signal_variance = U(rng);
        c.gp.noise_variance = U(rng) * 1e-3;
        c.gp.scale = 1.0 + U(rng);
        c.budget = 1 + rng() % 1000;
        c.seed = rng();
        c.output = "out/run_" + std::to_string(trial);
        c.repeats = 1 + rng() % 8;
        c.wall_times = trial % 2 == 0;
        c.concentration.deltas = {U(rng), U(rng)};
        c.concentration.lengths = {Index(1 + rng() % 100)};
        c.concentration.trials = 1 + rng() % 1000;
        c.concentration.sigma = U(rng);
        c.concentration.noise = {trial % 2 ? NoiseFamily::Gaussian : NoiseFamily::Rademacher};
        c.concentration.bound_multiplier = U(rng) * 2;
        c.concentration.etas = {U(rng) - 0.5};
        const auto text = serialize_config(c);
        EXPECT_EQ(parse_config(text), c) << text;
    }
}

TEST(Config, ShippedConfigsParse) {
    Index count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(COLSAFE_CONFIG_DIR)) {
        if (entry.path().extension() != ".yaml") continue;
        EXPECT_NO_THROW(load_config(entry.path().string())) << entry.path();
        ++count;
    }
    EXPECT_GE(count, 5u);
}
