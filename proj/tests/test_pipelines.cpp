#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "skinmorph/morphology.hpp"
#include "skinmorph/pipelines.hpp"

using namespace skinmorph;

TEST_CASE("baseline examples") {
  CHECK(postprocess_baseline(BinaryMask::zeros(224, 224)) == BinaryMask::zeros(224, 224));
  CHECK(postprocess_baseline(BinaryMask::ones(224, 224)) == BinaryMask::ones(224, 224));
  CHECK(postprocess_baseline(oracle::rect(64, 64, 30, 30, 32, 32)) == BinaryMask::zeros(64, 64));
}

TEST_CASE("baseline matches the reference") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = oracle::random_blobs(rng, 48, 40, 5, 0.03);
    CHECK(postprocess_baseline(m) == oracle::baseline(m));
  }
}

TEST_CASE("remove_background") {
  const PipelineConfig cfg;
  const auto full = BinaryMask::ones(50, 50);
  CHECK(remove_background(full, full, cfg).mask == BinaryMask::zeros(50, 50));

  // Frame around a face: the frame survives the heavy erosion, the face does not.
  auto bw = BinaryMask::ones(100, 100);
  oracle::paint_rect(bw, 20, 20, 79, 79, false);
  oracle::paint_rect(bw, 45, 45, 54, 54);
  const auto ebw = erode(bw, make_disk(12));
  const auto r = remove_background(bw, ebw, cfg);
  CHECK_FALSE(r.empty_background);
  CHECK(r.mask == oracle::pixel_minus(bw, oracle::dilate(ebw, 6)));
  const auto face = oracle::rect(100, 100, 45, 45, 54, 54);
  CHECK(is_subset(face, r.mask));
  CHECK(is_subset(r.mask, bw));

  // Two equal components: the first in raster order is removed.
  BinaryMask two(40, 20);
  oracle::paint_rect(two, 25, 2, 29, 6);
  oracle::paint_rect(two, 2, 10, 6, 14);
  const auto removed = remove_background(two, two, cfg).mask;
  CHECK(removed == oracle::rect(40, 20, 2, 10, 6, 14));

  const auto empty = remove_background(bw, BinaryMask::zeros(100, 100), cfg);
  CHECK(empty.empty_background);
  CHECK(empty.mask == bw);
}

TEST_CASE("adaptive examples") {
  const ThresholdParams p;
  const auto zero = postprocess_adaptive(BinaryMask::zeros(64, 64), p);
  CHECK(zero.cls == PatternClass::E);
  CHECK(zero.mask == BinaryMask::zeros(64, 64));

  const auto one = postprocess_adaptive(BinaryMask::ones(64, 64), p);
  CHECK(one.cls == PatternClass::A);
  CHECK(one.mask == BinaryMask::zeros(64, 64));

  // A lone solid blob with no border contact is class B and keeps its core.
  BinaryMask blob(64, 64);
  oracle::paint_disk(blob, 32, 32, 20);
  const auto r = postprocess_adaptive(blob, p);
  CHECK(r.cls == PatternClass::B);
  CHECK(r.mask == oracle::pixel_and(blob, oracle::dilate(oracle::remove_small(oracle::erode(blob, 6), 100), 6)));
  CHECK(is_subset(erode(blob, make_disk(1)), r.mask));
}

TEST_CASE("adaptive matches the reference and is a subset") {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = oracle::random_blobs(rng, 56, 48, std::uniform_int_distribution<int>(1, 8)(rng), 0.02);
    ThresholdParams p;
    p.a1 = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
    p.a2 = p.a1 / 4;
    p.b1 = std::uniform_int_distribution<int>(1, 6)(rng);
    p.b2 = std::uniform_int_distribution<int>(1, 6)(rng);
    const auto r = postprocess_adaptive(m, p);
    CHECK(is_subset(r.mask, m));
    CHECK(r.mask == oracle::adaptive(m, {p.a1, p.a2, p.b1, p.b2, p.c1}));
    CHECK(postprocess_adaptive(m, p).mask == r.mask);
  }
}

TEST_CASE("classes B, C and D share one sequence") {
  std::mt19937 rng(33);
  const PipelineConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = oracle::random_blobs(rng, 60, 60, 6, 0.05);
    const auto ebw = erode(m, make_disk(12));
    const auto b = postprocess_class(m, PatternClass::B, ebw, cfg).mask;
    CHECK(postprocess_class(m, PatternClass::C, ebw, cfg).mask == b);
    CHECK(postprocess_class(m, PatternClass::D, ebw, cfg).mask == b);
    CHECK(is_subset(postprocess_class(m, PatternClass::A, ebw, cfg).mask, m));
  }
}
