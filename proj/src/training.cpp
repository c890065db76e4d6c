#include "skinmorph/training.hpp"

#include <cmath>
#include <set>

#include "skinmorph/error.hpp"
#include "skinmorph/parallel.hpp"
#include "skinmorph/pipelines.hpp"

namespace skinmorph {

namespace {

std::vector<double> range(double start, double step, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(std::round((start + step * i) * 1e6) / 1e6);
  }
  return out;
}

std::vector<int> int_range(int start, int step, int stop) {
  std::vector<int> out;
  for (int v = start; v <= stop; v += step) out.push_back(v);
  return out;
}

template <typename T>
std::vector<T> sorted_unique(const std::vector<T>& v) {
  std::set<T> s(v.begin(), v.end());
  return {s.begin(), s.end()};
}

double pooled_f1(const ConfusionCounts& pooled, std::uint64_t truth_pixels) {
  if (truth_pixels == 0) return 0.0;
  return f1(pooled);
}

}  // namespace

GridSpec GridSpec::default_grid() {
  GridSpec g;
  g.a1 = range(0.10, 0.05, 9);
  g.a2 = range(0.02, 0.02, 5);
  g.b1 = int_range(4, 2, 20);
  g.b2 = int_range(20, 4, 60);
  g.c1 = range(0.15, 0.05, 11);
  return g;
}

GridSpec GridSpec::single(const ThresholdParams& p) {
  return {{p.a1}, {p.a2}, {p.b1}, {p.b2}, {p.c1}};
}

void GridSpec::validate() const {
  if (a1.empty() || a2.empty() || b1.empty() || b2.empty() || c1.empty()) {
    throw Error("grid: every parameter needs at least one candidate");
  }
  for (double v : a1)
    if (!(v >= 0.0 && v <= 1.0)) throw Error("grid: a1 candidates must lie in [0, 1]");
  for (double v : a2)
    if (!(v >= 0.0 && v <= 1.0)) throw Error("grid: a2 candidates must lie in [0, 1]");
  for (double v : c1)
    if (!(v >= 0.0 && v <= 1.0)) throw Error("grid: c1 candidates must lie in [0, 1]");
  for (int v : b1)
    if (v < 1) throw Error("grid: b1 candidates must be >= 1");
  for (int v : b2)
    if (v < 1) throw Error("grid: b2 candidates must be >= 1");
}

std::vector<ThresholdParams> GridSpec::points() const {
  validate();
  std::vector<ThresholdParams> out;
  for (double va1 : sorted_unique(a1))
    for (double va2 : sorted_unique(a2)) {
      if (va2 >= va1) continue;
      for (int vb1 : sorted_unique(b1))
        for (int vb2 : sorted_unique(b2))
          for (double vc1 : sorted_unique(c1)) out.push_back({va1, va2, vb1, vb2, vc1});
    }
  return out;
}

double objective(const ThresholdParams& params, std::span<const TrainingSample> corpus,
                 const PipelineConfig& config) {
  if (corpus.empty()) throw Error("objective: empty corpus");
  ConfusionCounts pooled;
  std::uint64_t truth = 0;
  for (const auto& s : corpus) {
    const AdaptiveResult r = postprocess_adaptive(s.prediction, params, config);
    pooled += confusion(r.mask, s.truth);
    truth += foreground_count(s.truth);
  }
  return pooled_f1(pooled, truth);
}

const ConfusionCounts& PreparedSample::counts_for(PatternClass c) const {
  switch (c) {
    case PatternClass::A:
      return as_a;
    case PatternClass::E:
      return as_e;
    default:
      return as_bcd;
  }
}

PreparedSample prepare_sample(const TrainingSample& s, const PipelineConfig& config) {
  if (!s.prediction.same_shape(s.truth)) {
    throw Error("training sample: prediction " + shape_string(s.prediction) +
                " and truth " + shape_string(s.truth) + " differ in size");
  }
  PreparedSample p;
  p.features = compute_features(s.prediction, config);
  const BinaryMask ebw = detail::heavy_erosion(s.prediction, config);
  auto run = [&](PatternClass c) {
    return confusion(postprocess_class(s.prediction, c, ebw, config).mask, s.truth);
  };
  p.as_a = run(PatternClass::A);
  p.as_bcd = run(PatternClass::B);
  p.as_e = run(PatternClass::E);
  p.truth_pixels = foreground_count(s.truth);
  return p;
}

std::vector<PreparedSample> prepare_corpus(std::span<const TrainingSample> corpus,
                                           const PipelineConfig& config, int jobs) {
  config.validate();
  std::vector<PreparedSample> out(corpus.size());
  parallel_for(corpus.size(), jobs,
               [&](std::size_t i) { out[i] = prepare_sample(corpus[i], config); });
  return out;
}

double prepared_objective(const ThresholdParams& params,
                          std::span<const PreparedSample> samples) {
  if (samples.empty()) throw Error("objective: empty corpus");
  ConfusionCounts pooled;
  std::uint64_t truth = 0;
  for (const auto& s : samples) {
    pooled += s.counts_for(assign_class(s.features, params));
    truth += s.truth_pixels;
  }
  return pooled_f1(pooled, truth);
}

SearchResult grid_search(const GridSpec& grid, std::span<const PreparedSample> samples,
                         int jobs) {
  if (samples.empty()) throw Error("grid_search: empty corpus");
  const std::vector<ThresholdParams> points = grid.points();
  if (points.empty()) throw Error("grid_search: grid has no valid point (need a2 < a1)");

  std::vector<double> scores(points.size());
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    scores[i] = prepared_objective(points[i], samples);
  });

  SearchResult best;
  best.params = points[0];
  best.score = scores[0];
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (scores[i] > best.score || (scores[i] == best.score && points[i] < best.params)) {
      best.params = points[i];
      best.score = scores[i];
    }
  }
  best.evaluated = points.size();
  std::uint64_t truth = 0;
  for (const auto& s : samples) truth += s.truth_pixels;
  best.no_positive_truth = truth == 0;
  return best;
}

SearchResult grid_search(const GridSpec& grid, std::span<const TrainingSample> corpus,
                         const PipelineConfig& config, int jobs) {
  grid.validate();
  const auto prepared = prepare_corpus(corpus, config, jobs);
  return grid_search(grid, prepared, jobs);
}

std::map<std::string, SearchResult> leave_one_dataset_out(
    const GridSpec& grid, const std::map<std::string, std::vector<TrainingSample>>& corpora,
    const PipelineConfig& config, int jobs) {
  if (corpora.size() < 2) {
    throw Error("leave-one-dataset-out needs at least 2 datasets, got " +
                std::to_string(corpora.size()));
  }
  grid.validate();
  std::map<std::string, std::vector<PreparedSample>> prepared;
  for (const auto& [id, samples] : corpora) {
    prepared[id] = prepare_corpus(samples, config, jobs);
  }
  std::map<std::string, SearchResult> out;
  for (const auto& [held_out, unused] : prepared) {
    std::vector<PreparedSample> pool;
    for (const auto& [id, samples] : prepared) {
      if (id != held_out) pool.insert(pool.end(), samples.begin(), samples.end());
    }
    out[held_out] = grid_search(grid, pool, jobs);
  }
  return out;
}

}  // namespace skinmorph
