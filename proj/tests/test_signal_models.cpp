#include <doctest.h>

#include <cmath>

#include "gesp/errors.hpp"
#include "gesp/signal_models.hpp"

using namespace gesp;

namespace {

SignalModelSpec spec_of(SignalModel model, std::size_t n, std::size_t k) {
  SignalModelSpec s;
  s.model = model;
  s.n = n;
  s.k = k;
  return s;
}

std::size_t nonzeros(const ComplexVec& x) {
  std::size_t c = 0;
  for (const auto& v : x) c += v != Complex{0.0, 0.0};
  return c;
}

}  // namespace

TEST_CASE("sample_support edge cases") {
  Rng rng(1);
  CHECK(sample_support(5, 5, rng).values() == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK_THROWS_AS(sample_support(4, 5, rng), InvalidInput);

  Rng a(77), b(77);
  const auto s1 = sample_support(100, 1, a);
  CHECK(s1.size() == 1);
  CHECK(s1 == sample_support(100, 1, b));
}

TEST_CASE("sample_support marginals are uniform") {
  Rng rng(2024);
  std::vector<std::size_t> counts(20, 0);
  const std::size_t draws = 100000;
  for (std::size_t t = 0; t < draws; ++t) {
    const auto s = sample_support(20, 5, rng);
    REQUIRE(s.size() == 5);
    for (auto i : s) ++counts[i];
  }
  for (auto c : counts) {
    const double freq = static_cast<double>(c) / static_cast<double>(draws);
    CHECK(std::abs(freq - 0.25) <= 0.02);
  }
}

TEST_CASE("binary signal magnitudes") {
  Rng rng(3);
  const auto sig = generate(spec_of(SignalModel::binary, 8, 4), rng);
  CHECK(nonzeros(sig.vector) == 4);
  for (auto i : sig.support) CHECK(sig.vector[i] == Complex{0.5, 0.0});
}

TEST_CASE("example1 signal has the stated structure function") {
  Rng rng(4);
  const auto sig = generate(spec_of(SignalModel::example1, 256, 64), rng);
  CHECK(nonzeros(sig.vector) == 64);
  CHECK(std::abs(structure_function(sig.profile, 1) - 8.0) <= 1e-12 * 8.0);
  CHECK(std::abs(structure_function(sig.profile, 8) - 2.0) <= 1e-12 * 2.0);
  CHECK(structure_function(sig.profile, 64) == doctest::Approx(1.0).epsilon(1e-12));

  // first entry carries ||x||^2 / sqrt(k)
  CHECK(sig.profile.sorted_sq_mags()[0] == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("example1 and example2 across all valid k") {
  Rng rng(5);
  for (std::size_t r : {1u, 2u, 3u}) {
    const std::size_t k = r * r * r * r * r * r;
    const auto sig = generate(spec_of(SignalModel::example1, k, k), rng);
    const double sk = static_cast<double>(r * r * r);
    CHECK(structure_function(sig.profile, 1) == doctest::Approx(sk).epsilon(1e-12));
    CHECK(structure_function(sig.profile, r * r * r) ==
          doctest::Approx(static_cast<double>(r)).epsilon(1e-12));
  }
  for (std::size_t r : {1u, 2u, 3u, 4u}) {
    const std::size_t k = r * r * r * r;
    const auto sig = generate(spec_of(SignalModel::example2, 2 * k, k), rng);
    const double kd = static_cast<double>(k);
    // s(1) = k^(3/4), s(k^(1/4)) = sqrt(k), s(sqrt(k)) = k^(1/3)
    if (k >= 16) {
      CHECK(structure_function(sig.profile, 1) ==
            doctest::Approx(std::pow(kd, 0.75)).epsilon(1e-12));
      CHECK(structure_function(sig.profile, r) == doctest::Approx(std::sqrt(kd)).epsilon(1e-12));
      CHECK(std::abs(structure_function(sig.profile, r * r) - std::cbrt(kd)) <= 1e-10);
    }
    CHECK(structure_function(sig.profile, k) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("example2 energy table for k = 16") {
  const auto f = example2_energy_fractions(16);
  REQUIRE(f.size() == 16);
  // by hand: the top 2 each carry 16^(-3/4) = 1/8, the next 2 share
  // 16^(-1/3) - 1/4, the last 12 share 1 - 16^(-1/3)
  const double c = std::cbrt(16.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    sum += f[i];
    if (i < 2) {
      CHECK(f[i] == doctest::Approx(0.125).epsilon(1e-12));
    } else if (i < 4) {
      CHECK(f[i] == doctest::Approx((1.0 / c - 0.25) / 2.0).epsilon(1e-12));
      CHECK(f[i] == doctest::Approx(0.073425).epsilon(1e-5));
    } else {
      CHECK(f[i] == doctest::Approx((1.0 - 1.0 / c) / 12.0).epsilon(1e-12));
      CHECK(f[i] == doctest::Approx(0.0502625).epsilon(1e-5));
    }
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(6);
  const auto sig = generate(spec_of(SignalModel::example2, 64, 16), rng);
  CHECK(structure_function(sig.profile, 1) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(structure_function(sig.profile, 2) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(structure_function(sig.profile, 4) - c) <= 1e-10);
}

TEST_CASE("model-specific k constraints") {
  Rng rng(7);
  CHECK_THROWS_AS(generate(spec_of(SignalModel::example1, 128, 8), rng), InvalidInput);
  CHECK_THROWS_AS(generate(spec_of(SignalModel::example1, 128, 16), rng), InvalidInput);
  CHECK_THROWS_AS(generate(spec_of(SignalModel::example2, 128, 8), rng), InvalidInput);
  CHECK_THROWS_AS(generate(spec_of(SignalModel::example2, 128, 4), rng), InvalidInput);
  CHECK_THROWS_AS(generate(spec_of(SignalModel::gaussian, 4, 5), rng), InvalidInput);

  auto bad_decay = spec_of(SignalModel::exp_decay, 10, 4);
  bad_decay.decay = 1.0;
  CHECK_THROWS_AS(bad_decay.validate(), InvalidInput);
  auto bad_norm = spec_of(SignalModel::gaussian, 10, 4);
  bad_norm.target_norm = 0.0;
  CHECK_THROWS_AS(bad_norm.validate(), InvalidInput);
}

TEST_CASE("exp_decay prefix energies") {
  Rng rng(8);
  for (double beta : {0.3, 0.7, 0.95}) {
    auto spec = spec_of(SignalModel::exp_decay, 50, 12);
    spec.decay = beta;
    const auto sig = generate(spec, rng);
    CHECK(nonzeros(sig.vector) == 12);
    for (std::size_t p = 1; p <= 12; ++p) {
      const double expected = (1.0 - std::pow(beta, double(p))) / (1.0 - std::pow(beta, 12.0));
      CHECK(std::abs(sig.profile.top_energy(p) / sig.profile.total_energy() - expected) <= 1e-10);
    }
  }
}

TEST_CASE("norm, sparsity and profile invariants for every model") {
  Rng rng(9);
  const std::pair<SignalModel, std::size_t> cases[] = {
      {SignalModel::gaussian, 10}, {SignalModel::binary, 10},   {SignalModel::exp_decay, 10},
      {SignalModel::example1, 64}, {SignalModel::example2, 16},
  };
  for (const auto& [model, k] : cases) {
    for (double target : {1.0, 3.5, 1e-3}) {
      auto spec = spec_of(model, 128, k);
      spec.target_norm = target;
      const auto sig = generate(spec, rng);
      CHECK(std::abs(norm(sig.vector) - target) <= 1e-12 * target);
      CHECK(nonzeros(sig.vector) == k);
      CHECK(sig.support.size() == k);
      for (std::size_t i = 0; i < sig.vector.size(); ++i) {
        if (!sig.support.contains(i)) CHECK(sig.vector[i] == Complex{0.0, 0.0});
      }
      const auto again = magnitude_profile(sig.vector);
      for (std::size_t i = 0; i < again.size(); ++i) {
        CHECK(again.sorted_sq_mags()[i] == doctest::Approx(sig.profile.sorted_sq_mags()[i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("generation is reproducible from the seed") {
  for (auto model : {SignalModel::gaussian, SignalModel::exp_decay, SignalModel::example2}) {
    const auto spec = spec_of(model, 64, 16);
    Rng a(123), b(123);
    CHECK(generate(spec, a).vector == generate(spec, b).vector);
  }
}

TEST_CASE("gaussian nonzeros have complex-Gaussian magnitude kurtosis") {
  // E|g|^4 / (E|g|^2)^2 = 2 for a circular complex Gaussian. Per-signal
  // rescaling to unit norm shifts this only slightly at k = 32.
  Rng rng(10);
  double m2 = 0.0, m4 = 0.0;
  std::size_t count = 0;
  for (int t = 0; t < 4000; ++t) {
    const auto sig = generate(spec_of(SignalModel::gaussian, 64, 32), rng);
    for (auto i : sig.support) {
      const double a = std::norm(sig.vector[i]);
      m2 += a;
      m4 += a * a;
      ++count;
    }
  }
  m2 /= static_cast<double>(count);
  m4 /= static_cast<double>(count);
  CHECK(m4 / (m2 * m2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("model names round-trip") {
  for (auto model : {SignalModel::gaussian, SignalModel::binary, SignalModel::exp_decay,
                     SignalModel::example1, SignalModel::example2}) {
    CHECK(parse_signal_model(to_string(model)) == model);
  }
  CHECK_THROWS(parse_signal_model("laplace"));
}

TEST_CASE("exact_root") {
  CHECK(exact_root(64, 6) == 2);
  CHECK(exact_root(64, 2) == 8);
  CHECK(exact_root(729, 6) == 3);
  CHECK(exact_root(16, 4) == 2);
  CHECK(exact_root(8, 2) == 0);
  CHECK(exact_root(1, 6) == 1);
}
