#include <doctest.h>

#include <random>

#include "stacklab/statics.hpp"
#include "test_support.hpp"

using namespace stacklab;
using stacklab::testing::two_cubes;

TEST_CASE("interface_margin examples") {
  const Scene single = stack_planar<double>({1}, {1}, {0});
  CHECK(interface_margin(single, 0).margin == doctest::Approx(0.5));

  const Scene s = two_cubes(0.6);
  // Interface 1: region [0.1, 0.5], top com 0.6.
  CHECK(interface_margin(s, 1).margin == doctest::Approx(-0.1).epsilon(1e-12));
  // Interface 0: combined com 0.3 inside [-0.5, 0.5].
  CHECK(interface_margin(s, 0).margin == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(interface_margin(s, 2), UsageError);
  CHECK_THROWS_AS(interface_margin(two_cubes(1.2), 0), UsageError);
}

TEST_CASE("analyze_stability: offset pair is unstable at interface 1") {
  const auto r = analyze_stability(two_cubes(0.6));
  CHECK_FALSE(r.stable);
  REQUIRE(r.first_violation);
  CHECK(*r.first_violation == 1);
  CHECK(r.min_margin == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(r.margins.size() == 2);
}

TEST_CASE("analyze_stability: three-cube cantilever") {
  const Scene s = stack_planar<double>({1, 1, 1}, {1, 1, 1}, {0, 0.25, 0.65});
  const auto r = analyze_stability(s);
  CHECK(r.stable);
  CHECK_FALSE(r.first_violation);
  CHECK(r.margins[2].margin == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r.margins[1].margin == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(r.margins[0].margin == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(r.min_margin == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("aligned identical cubes have every margin equal to half the width") {
  for (int h = 1; h <= 8; ++h) {
    const double w = 0.8;
    const Scene s = stack_planar<double>(std::vector<double>(h, w), std::vector<double>(h, w),
                                         std::vector<double>(h, 0.0));
    const auto r = analyze_stability(s);
    CHECK(r.stable);
    for (const auto& m : r.margins) CHECK(m.margin == doctest::Approx(w / 2));
  }
}

TEST_CASE("zero margin counts as stable") {
  const auto r = analyze_stability(two_cubes(0.5));
  CHECK(r.min_margin == 0.0);
  CHECK(r.stable);
}

TEST_CASE("stability_label") {
  CHECK(stability_label(two_cubes(0.0)));
  CHECK_FALSE(stability_label(two_cubes(0.6)));
}

TEST_CASE("3D margin is the minimum over axes") {
  const Scene s = stack_bodies<double>(Dim::Three, {{1, 1, 1}, {1, 1, 1}}, {{0, 0}, {0.1, 0.4}});
  const auto r = analyze_stability(s);
  CHECK(r.margins[1].margin == doctest::Approx(0.1));
  CHECK(r.margins[0].margin == doctest::Approx(0.3));
}

TEST_CASE("stability invariances on random towers") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> shift(-3.0, 3.0);
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Dim dim = trial % 2 ? Dim::Three : Dim::Two;
    const Scene s = stacklab::testing::random_tower(rng, dim, 2 + trial % 5);
    const auto base = analyze_stability(s);

    const auto moved = analyze_stability(translate_horizontal(s, Eigen::Vector2d(shift(rng), shift(rng))));
    CHECK(moved.stable == base.stable);
    for (std::size_t k = 0; k < s.size(); ++k) CHECK(std::abs(moved.margins[k].margin - base.margins[k].margin) < 1e-12);

    const auto mirrored = analyze_stability(mirror_x(s));
    CHECK(mirrored.stable == base.stable);
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(std::abs(mirrored.margins[k].margin - base.margins[k].margin) < 1e-12);
    }

    const double f = scale(rng);
    Scene scaled = s;
    for (auto& b : scaled.bodies) {
      b.center *= f;
      b.shape.size *= f;
      if (dim == Dim::Two) b.shape.size.y() = 1.0;
    }
    const auto sr = analyze_stability(scaled);
    CHECK(sr.stable == base.stable);
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(sr.margins[k].margin == doctest::Approx(f * base.margins[k].margin).epsilon(1e-9));
    }
  }
}

TEST_CASE("top margin decreases strictly as the top body slides outward") {
  // Equal widths at the top interface, so the support edge is the lower
  // body's edge for any nonzero offset.
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> extent(0.5, 1.5);
  std::uniform_real_distribution<double> start(0.0, 0.3);
  for (int trial = 0; trial < 100; ++trial) {
    const double w0 = extent(rng), w1 = extent(rng);
    const double offset0 = start(rng) * w1;
    double previous = 0;
    for (int step = 0; step < 10; ++step) {
      const double offset = offset0 + 0.05 * w1 * step;
      const Scene s = stack_planar<double>({w0, w1, w1}, {extent(rng), 1.0, 1.0}, {0.0, 0.1, 0.1 + offset});
      const double m = interface_margin(s, 2).margin;
      if (step > 0) CHECK(m < previous);
      previous = m;
    }
  }
}

TEST_CASE("verdict agrees with the torque oracle outside the degeneracy band") {
  std::mt19937_64 rng(23);
  int compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Dim dim = trial % 2 ? Dim::Three : Dim::Two;
    const Scene s = stacklab::testing::random_tower(rng, dim, 2 + trial % 5);
    const auto r = analyze_stability(s);
    if (std::abs(r.min_margin) < 1e-9) continue;
    CHECK(r.stable == oracle::torque_stable(stacklab::testing::to_raw(s), horizontal_axes(dim)));
    ++compared;
  }
  CHECK(compared > 450);
}
