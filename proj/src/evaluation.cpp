#include "skinmorph/evaluation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "skinmorph/error.hpp"

namespace skinmorph {

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt) {
  if (!pred.same_shape(gt)) {
    throw Error("confusion: dimension mismatch " + shape_string(pred) + " vs " +
                shape_string(gt));
  }
  ConfusionCounts c;
  auto p = pred.words();
  auto g = gt.words();
  for (std::size_t i = 0; i < p.size(); ++i) {
    c.tp += static_cast<std::uint64_t>(std::popcount(p[i] & g[i]));
    c.fp += static_cast<std::uint64_t>(std::popcount(p[i] & ~g[i]));
    c.fn += static_cast<std::uint64_t>(std::popcount(~p[i] & g[i]));
  }
  // Padding bits are zero in both masks, so ~p & ~g would count them; derive tn.
  c.tn = static_cast<std::uint64_t>(pred.pixel_count()) - c.tp - c.fp - c.fn;
  return c;
}

double f1(const ConfusionCounts& c) {
  const double denom = 2.0 * static_cast<double>(c.tp) + static_cast<double>(c.fn) +
                       static_cast<double>(c.fp);
  if (denom == 0.0) return 1.0;
  return 2.0 * static_cast<double>(c.tp) / denom;
}

DatasetScore dataset_f1(std::span<const ConfusionCounts> per_image,
                        std::optional<std::span<const std::string>> groups) {
  if (per_image.empty()) throw Error("dataset_f1: no images");
  DatasetScore out;
  for (const auto& c : per_image) out.pooled += c;
  if (!groups) {
    out.value = f1(out.pooled);
    return out;
  }
  if (groups->size() != per_image.size()) {
    throw Error("dataset_f1: group key count does not match image count");
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < per_image.size(); ++i) {
    const std::string& key = (*groups)[i];
    auto [it, inserted] = index.try_emplace(key, out.groups.size());
    if (inserted) out.groups.push_back({key, {}, 0.0});
    out.groups[it->second].counts += per_image[i];
  }
  double sum = 0.0;
  for (auto& g : out.groups) {
    g.f1 = f1(g.counts);
    sum += g.f1;
  }
  out.value = sum / static_cast<double>(out.groups.size());
  return out;
}

double average_precision(std::span<const ScoredLabel> items) {
  std::vector<ScoredLabel> sorted(items.begin(), items.end());
  const auto positives = static_cast<std::size_t>(
      std::count_if(sorted.begin(), sorted.end(), [](const auto& s) { return s.positive; }));
  if (positives == 0) throw Error("average_precision: no positive items");
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });

  double ap = 0.0;
  std::size_t tp = 0;
  std::size_t seen = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t block_tp = 0;
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].score == sorted[i].score) {
      block_tp += sorted[j].positive ? 1 : 0;
      ++j;
    }
    tp += block_tp;
    seen += j - i;
    if (block_tp > 0) {
      const double precision = static_cast<double>(tp) / static_cast<double>(seen);
      ap += precision * static_cast<double>(block_tp) / static_cast<double>(positives);
    }
    i = j;
  }
  return 100.0 * ap;
}

std::vector<double> average_ranks(std::span<const double> values, bool descending,
                                  double tie_tolerance) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() &&
           std::abs(values[order[j]] - values[order[i]]) <= tie_tolerance) {
      ++j;
    }
    // Positions i..j-1 hold ranks i+1..j.
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

namespace {

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                    Alternative alternative, double tie_tolerance) {
  if (x.size() != y.size()) throw Error("wilcoxon: samples differ in length");
  if (x.size() < 5) throw Error("wilcoxon: need at least 5 pairs");

  std::vector<double> diffs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    if (std::abs(d) > tie_tolerance) diffs.push_back(d);
  }
  WilcoxonResult out;
  out.n = diffs.size();
  if (diffs.empty()) {
    out.degenerate = true;
    return out;
  }

  std::vector<double> magnitudes(diffs.size());
  std::transform(diffs.begin(), diffs.end(), magnitudes.begin(),
                 [](double d) { return std::abs(d); });
  const std::vector<double> ranks = average_ranks(magnitudes, false, tie_tolerance);
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    (diffs[i] > 0 ? out.w_plus : out.w_minus) += ranks[i];
  }

  const std::size_t n = diffs.size();
  double p_low = 0.0;   // P(W+ <= observed)
  double p_high = 0.0;  // P(W+ >= observed)
  if (n <= 20) {
    // Average ranks are multiples of 1/2, so doubled ranks are integers and
    // the null distribution of 2*W+ is a subset-sum count.
    std::vector<int> doubled(n);
    int total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      doubled[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
      total += doubled[i];
    }
    std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
    ways[0] = 1.0;
    for (int r : doubled) {
      for (int s = total; s >= r; --s) ways[s] += ways[s - r];
    }
    const double all = std::ldexp(1.0, static_cast<int>(n));
    const long observed = std::lround(2.0 * out.w_plus);
    for (long s = 0; s <= total; ++s) {
      if (s <= observed) p_low += ways[s];
      if (s >= observed) p_high += ways[s];
    }
    p_low /= all;
    p_high /= all;
  } else {
    out.exact = false;
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
    std::vector<double> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i);
      var -= (t * t * t - t) / 48.0;
      i = j;
    }
    const double sd = std::sqrt(var);
    p_high = normal_upper_tail((out.w_plus - mean - 0.5) / sd);
    p_low = 1.0 - normal_upper_tail((out.w_plus - mean + 0.5) / sd);
  }

  switch (alternative) {
    case Alternative::TwoSided:
      out.p_value = std::min(1.0, 2.0 * std::min(p_low, p_high));
      break;
    case Alternative::Greater:
      out.p_value = std::min(1.0, p_high);
      break;
    case Alternative::Less:
      out.p_value = std::min(1.0, p_low);
      break;
  }
  return out;
}

GlobalRank global_rank(const std::vector<std::vector<double>>& table) {
  if (table.empty()) throw Error("global_rank: empty table");
  const std::size_t methods = table.front().size();
  if (methods == 0) throw Error("global_rank: no methods");
  GlobalRank out;
  out.mean_rank.assign(methods, 0.0);
  for (std::size_t d = 0; d < table.size(); ++d) {
    if (table[d].size() != methods) {
      throw Error("global_rank: dataset row " + std::to_string(d) + " has " +
                  std::to_string(table[d].size()) + " values, expected " +
                  std::to_string(methods));
    }
    for (double v : table[d]) {
      if (std::isnan(v)) throw Error("global_rank: missing value in row " + std::to_string(d));
    }
    const auto ranks = average_ranks(table[d], true);
    for (std::size_t m = 0; m < methods; ++m) out.mean_rank[m] += ranks[m];
  }
  for (double& r : out.mean_rank) r /= static_cast<double>(table.size());
  out.rank = average_ranks(out.mean_rank, false, 1e-12);
  return out;
}

}  // namespace skinmorph
