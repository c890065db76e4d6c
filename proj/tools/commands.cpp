#include "commands.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "skinmorph/classification.hpp"
#include "skinmorph/dataset_io.hpp"
#include "skinmorph/error.hpp"
#include "skinmorph/evaluation.hpp"
#include "skinmorph/parallel.hpp"
#include "skinmorph/params_io.hpp"
#include "skinmorph/pipelines.hpp"
#include "skinmorph/results.hpp"
#include "skinmorph/training.hpp"
#include "staging.hpp"

namespace fs = std::filesystem;

namespace skinmorph::cli {

namespace {

std::string num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

PipelineConfig load_config(const CommonOptions& c) {
  return c.config.empty() ? PipelineConfig{} : load_pipeline_config(c.config);
}

BinaryMask load_prediction(const fs::path& path, std::optional<int> tau) {
  if (tau) return threshold(decode_probability_map(path), *tau);
  return decode_mask(path);
}

// Runs `load` for every entry and reports every failure at once.
template <typename T, typename Load>
std::vector<T> load_all(const DatasetManifest& m, int jobs, Load&& load) {
  std::vector<std::optional<T>> slots(m.entries.size());
  std::vector<std::string> errors(m.entries.size());
  parallel_for(m.entries.size(), jobs, [&](std::size_t i) {
    try {
      slots[i] = load(m.entries[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  std::ostringstream msg;
  std::size_t failed = 0;
  for (const auto& e : errors) {
    if (e.empty()) continue;
    msg << "\n  " << e;
    ++failed;
  }
  if (failed) {
    throw Error("failed to load " + std::to_string(failed) + " of " +
                std::to_string(m.entries.size()) + " entries:" + msg.str());
  }
  std::vector<T> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// Hash over the hashes of every file a manifest points at, in entry order.
std::uint64_t inputs_hash(const DatasetManifest& m) {
  std::string joined;
  for (const auto& e : m.entries) {
    joined += hex64(content_hash(m.resolve(e.prediction)));
    if (m.metric == MetricKind::F1) joined += hex64(content_hash(m.resolve(e.truth)));
    joined += '\n';
  }
  return fnv1a(joined);
}

fs::path output_relative(const std::string& prediction) {
  const fs::path p = fs::path(prediction).lexically_normal();
  if (p.is_absolute()) return p.filename();
  for (const auto& part : p) {
    if (part == "..") return p.filename();
  }
  return p;
}

struct Timing {
  double total = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  void add(double s) {
    total += s;
    max = std::max(max, s);
    ++count;
  }
};

void print_timing(const Timing& t) {
  if (t.count == 0) return;
  std::cout << std::fixed << std::setprecision(6) << "time per image: mean "
            << t.total / static_cast<double>(t.count) << " s, max " << t.max << " s over "
            << t.count << " images\n"
            << std::defaultfloat;
}

struct Labelled {
  std::string id;
  std::vector<TrainingSample> samples;
  std::uint64_t hash = 0;
};

Labelled load_training_set(const std::string& path, const CommonOptions& c) {
  const DatasetManifest m = load_manifest(path);
  if (m.metric != MetricKind::F1) {
    throw Error(path + ": training needs ground-truth masks, got an ap manifest");
  }
  Labelled out;
  out.id = m.id;
  out.hash = content_hash(path);
  out.samples = load_all<TrainingSample>(m, c.jobs, [&](const ManifestEntry& e) {
    TrainingSample s{load_prediction(m.resolve(e.prediction), c.tau),
                     decode_mask(m.resolve(e.truth)), m.id};
    if (!s.prediction.same_shape(s.truth)) {
      throw Error(e.prediction + ": size " + shape_string(s.prediction) +
                  " does not match ground truth " + shape_string(s.truth));
    }
    return s;
  });
  return out;
}

Alternative parse_alternative(const std::string& s) {
  if (s == "two-sided") return Alternative::TwoSided;
  if (s == "greater") return Alternative::Greater;
  if (s == "less") return Alternative::Less;
  throw Error("alternative must be two-sided, greater or less, got '" + s + "'");
}

}  // namespace

int run_postprocess(const PostprocessOptions& o) {
  if (o.mode != "adaptive" && o.mode != "baseline") {
    throw Error("mode must be adaptive or baseline, got '" + o.mode + "'");
  }
  const bool adaptive = o.mode == "adaptive";
  if (adaptive && o.params.empty()) throw Error("adaptive mode needs --params");
  const PipelineConfig config = load_config(o.common);
  const ThresholdParams params = adaptive ? load_params(o.params) : ThresholdParams{};
  const DatasetManifest m = load_manifest(o.manifest);

  std::vector<fs::path> outputs;
  std::set<fs::path> seen;
  for (const auto& e : m.entries) {
    outputs.push_back(output_relative(e.prediction));
    if (!seen.insert(outputs.back()).second) {
      throw Error("two entries map to the same output file " + outputs.back().string());
    }
    if (outputs.back() == "manifest.txt" || outputs.back() == "postprocess.tsv") {
      throw Error(e.prediction + ": output name clashes with a report file");
    }
  }

  const auto inputs = load_all<BinaryMask>(m, o.common.jobs, [&](const ManifestEntry& e) {
    return load_prediction(m.resolve(e.prediction), o.common.tau);
  });

  struct Result {
    BinaryMask mask;
    std::optional<AdaptiveResult> adaptive;
    double seconds = 0.0;
  };
  std::vector<Result> results(inputs.size());
  parallel_for(inputs.size(), o.common.jobs, [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    if (adaptive) {
      auto r = postprocess_adaptive(inputs[i], params, config);
      results[i].mask = r.mask;
      results[i].adaptive = std::move(r);
    } else {
      results[i].mask = postprocess_baseline(inputs[i], config);
    }
    results[i].seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });

  StagedOutput staged(o.out);
  std::ostringstream log;
  log << "# skinmorph postprocess\n";
  log << "# manifest " << o.manifest << " fnv " << hex64(content_hash(o.manifest)) << "\n";
  log << "# mode " << o.mode << "\n";
  if (adaptive) log << "# params " << to_string(params) << "\n";
  if (o.common.tau) log << "# tau " << *o.common.tau << "\n";
  log << "prediction\toutput\tclass\tsr\tcc\tbsr\tinput_fnv\toutput_fnv\n";

  DatasetManifest out_manifest = m;
  Timing timing;
  std::map<char, std::size_t> class_counts;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& e = m.entries[i];
    const fs::path staged_path = staged.stage(outputs[i]);
    encode_mask(staged_path, results[i].mask);
    timing.add(results[i].seconds);

    log << e.prediction << '\t' << outputs[i].generic_string() << '\t';
    if (const auto& a = results[i].adaptive) {
      const char c = to_char(a->cls);
      ++class_counts[c];
      log << c << '\t' << num(a->features.sr) << '\t'
          << (a->features.cc ? std::to_string(*a->features.cc) : "-") << '\t'
          << (a->features.bsr ? num(*a->features.bsr) : "-");
      std::cout << e.prediction << "\tclass " << c << (a->empty_background ? " (empty background)" : "")
                << "\n";
    } else {
      log << "-\t-\t-\t-";
    }
    log << '\t' << hex64(content_hash(m.resolve(e.prediction))) << '\t'
        << hex64(content_hash(staged_path)) << '\n';

    out_manifest.entries[i].prediction = outputs[i].generic_string();
    if (m.metric == MetricKind::F1) {
      out_manifest.entries[i].truth = fs::absolute(m.resolve(e.truth)).lexically_normal().string();
    }
  }
  write_file_atomic(staged.stage("postprocess.tsv"), log.str());
  write_file_atomic(staged.stage("manifest.txt"), serialize_manifest(out_manifest));
  staged.commit();

  std::cout << "wrote " << results.size() << " masks to " << o.out << "\n";
  if (adaptive) {
    std::cout << "classes:";
    for (const auto& [c, n] : class_counts) std::cout << ' ' << c << '=' << n;
    std::cout << "\n";
  }
  print_timing(timing);
  return 0;
}

int run_train(const TrainOptions& o) {
  if (o.protocol != "em" && o.protocol != "tm") {
    throw Error("protocol must be em or tm, got '" + o.protocol + "'");
  }
  if (o.protocol == "em" && o.manifests.size() != 1) {
    throw Error("em training takes exactly one manifest, got " +
                std::to_string(o.manifests.size()));
  }
  if (o.protocol == "tm" && o.manifests.size() < 2) {
    throw Error("tm training needs at least two manifests, got " +
                std::to_string(o.manifests.size()));
  }
  const PipelineConfig config = load_config(o.common);
  const GridSpec grid = o.grid.empty() ? GridSpec::default_grid() : load_grid(o.grid);
  const std::size_t grid_size = grid.points().size();

  std::vector<Labelled> sets;
  std::vector<std::vector<PreparedSample>> prepared;
  std::set<std::string> ids;
  for (const auto& path : o.manifests) {
    sets.push_back(load_training_set(path, o.common));
    if (!ids.insert(sets.back().id).second) throw Error("dataset id '" + sets.back().id + "' given twice");
    prepared.push_back(prepare_corpus(sets.back().samples, config, o.common.jobs));
  }

  auto describe = [&](const SearchResult& r, const std::vector<std::size_t>& used) {
    std::ostringstream os;
    os << o.protocol << " training on";
    for (auto i : used) os << ' ' << sets[i].id << " (" << sets[i].samples.size() << " images, fnv " << hex64(sets[i].hash) << ")";
    os << "\nf1 " << num(r.score) << " over " << r.evaluated << " grid points";
    return os.str();
  };
  auto search = [&](const std::vector<std::size_t>& used) {
    std::vector<PreparedSample> pool;
    for (auto i : used) pool.insert(pool.end(), prepared[i].begin(), prepared[i].end());
    SearchResult r = grid_search(grid, pool, o.common.jobs);
    if (r.no_positive_truth) throw Error("ground truth has no foreground pixels; nothing to fit");
    return r;
  };

  if (o.protocol == "em") {
    const SearchResult r = search({0});
    write_file_atomic(o.out, format_params(r.params, describe(r, {0})));
    std::cout << "best " << to_string(r.params) << " f1 " << num(r.score) << " (" << grid_size
              << " grid points)\nwrote " << o.out << "\n";
    return 0;
  }

  const fs::path out(o.out);
  const fs::path dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
  StagedOutput staged(dir);
  for (std::size_t held = 0; held < sets.size(); ++held) {
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (i != held) used.push_back(i);
    const SearchResult r = search(used);
    const std::string name = out.stem().string() + "_" + sets[held].id + out.extension().string();
    write_file_atomic(staged.stage(name), format_params(r.params, "held out " + sets[held].id + "\n" + describe(r, used)));
    std::cout << "held out " << sets[held].id << ": best " << to_string(r.params) << " f1 " << num(r.score)
              << " (" << grid_size << " grid points) -> " << (dir / name).string() << "\n";
  }
  staged.commit();
  return 0;
}

int run_eval(const EvalOptions& o) {
  const DatasetManifest m = load_manifest(o.manifest);
  std::ostringstream report;
  report << "# skinmorph eval\n";
  report << "# manifest " << o.manifest << " fnv " << hex64(content_hash(o.manifest)) << "\n";
  report << "# inputs fnv " << hex64(inputs_hash(m)) << "\n";
  report << "# metric " << to_string(m.metric) << "\n";
  if (o.common.tau) report << "# tau " << *o.common.tau << "\n";

  double value = 0.0;
  std::cout << "dataset " << m.id << " (" << m.entries.size() << " images)\n";
  if (m.metric == MetricKind::F1) {
    const auto counts = load_all<ConfusionCounts>(m, o.common.jobs, [&](const ManifestEntry& e) {
      const BinaryMask pred = load_prediction(m.resolve(e.prediction), o.common.tau);
      const BinaryMask gt = decode_mask(m.resolve(e.truth));
      if (!pred.same_shape(gt)) {
        throw Error(e.prediction + ": size " + shape_string(pred) + " does not match ground truth " +
                    shape_string(gt));
      }
      return confusion(pred, gt);
    });
    std::optional<std::vector<std::string>> keys;
    if (m.grouped()) {
      keys.emplace();
      for (const auto& e : m.entries) keys->push_back(*e.group);
    }
    const DatasetScore s =
        keys ? dataset_f1(counts, std::span<const std::string>(*keys)) : dataset_f1(counts);
    value = s.value;
    const auto& c = s.pooled;
    report << "# counts tp " << c.tp << " fp " << c.fp << " fn " << c.fn << " tn " << c.tn << "\n";
    std::cout << "tp " << c.tp << "  fp " << c.fp << "  fn " << c.fn << "  tn " << c.tn << "\n";
    if (!s.groups.empty()) {
      std::cout << "group\ttp\tfp\tfn\ttn\tf1\n";
      for (const auto& g : s.groups) {
        const auto& gc = g.counts;
        std::cout << g.key << '\t' << gc.tp << '\t' << gc.fp << '\t' << gc.fn << '\t' << gc.tn << '\t'
                  << num(g.f1) << "\n";
        report << "# group " << g.key << " tp " << gc.tp << " fp " << gc.fp << " fn " << gc.fn
               << " tn " << gc.tn << " f1 " << num(g.f1) << "\n";
      }
      std::cout << "f1 (mean over " << s.groups.size() << " groups) " << num(value) << "\n";
    } else {
      std::cout << "f1 " << num(value) << "\n";
    }
  } else {
    const auto items = load_all<ScoredLabel>(m, o.common.jobs, [&](const ManifestEntry& e) {
      const BinaryMask pred = load_prediction(m.resolve(e.prediction), o.common.tau);
      return ScoredLabel{static_cast<double>(foreground_count(pred)) /
                             static_cast<double>(pred.pixel_count()),
                         e.truth == *m.positive_label};
    });
    std::size_t positives = 0;
    for (const auto& it : items) positives += it.positive;
    value = average_precision(items);
    report << "# positives " << positives << " of " << items.size() << "\n";
    std::cout << "positives " << positives << " of " << items.size() << "\nap " << num(value) << "\n";
  }

  if (!o.out.empty()) {
    ResultTable t;
    t.datasets = {m.id};
    t.methods = {o.method};
    t.values = {{value}};
    write_file_atomic(o.out, report.str() + format_result_table(t));
  }
  return 0;
}

int run_compare(const CompareOptions& o) {
  const Alternative alt = parse_alternative(o.alternative);
  std::vector<ResultTable> parts;
  for (const auto& path : o.tables) parts.push_back(load_result_table(path));
  const ResultTable t = merge_tables(parts);
  if (t.methods.size() < 2) throw Error("compare needs at least two methods");

  const GlobalRank g = global_rank(t.values);
  std::ostringstream ranks;
  ranks << "method\tmean_rank\trank\n";
  std::cout << "global rank over " << t.datasets.size() << " datasets\n";
  std::cout << "method\tmean_rank\trank\n";
  for (std::size_t m = 0; m < t.methods.size(); ++m) {
    ranks << t.methods[m] << '\t' << num(g.mean_rank[m]) << '\t' << num(g.rank[m]) << '\n';
    std::cout << t.methods[m] << '\t' << num(g.mean_rank[m]) << '\t' << num(g.rank[m]) << '\n';
  }

  std::vector<std::pair<std::string, std::string>> pairs;
  if (o.pairs.empty()) {
    for (std::size_t i = 0; i < t.methods.size(); ++i)
      for (std::size_t j = i + 1; j < t.methods.size(); ++j) pairs.emplace_back(t.methods[i], t.methods[j]);
  } else {
    for (const auto& p : o.pairs) {
      const auto colon = p.find(':');
      if (colon == std::string::npos) throw Error("pair must be METHOD:METHOD, got '" + p + "'");
      pairs.emplace_back(p.substr(0, colon), p.substr(colon + 1));
      t.method_index(pairs.back().first);
      t.method_index(pairs.back().second);
    }
  }

  std::ostringstream tests;
  tests << "# alternative " << o.alternative << "\n";
  tests << "x\ty\tn\tw_plus\tw_minus\tp\texact\n";
  std::cout << "\nwilcoxon signed-rank (" << o.alternative << ")\n";
  std::cout << "x\ty\tn\tw_plus\tw_minus\tp\n";
  if (t.datasets.size() < 5) {
    std::cout << "skipped: needs at least 5 datasets, have " << t.datasets.size() << "\n";
  } else {
    for (const auto& [x, y] : pairs) {
      const auto r = wilcoxon_signed_rank(t.column(x), t.column(y), alt);
      tests << x << '\t' << y << '\t' << r.n << '\t' << num(r.w_plus) << '\t' << num(r.w_minus) << '\t'
            << num(r.p_value) << '\t' << (r.exact ? "exact" : "normal") << '\n';
      std::cout << x << '\t' << y << '\t' << r.n << '\t' << num(r.w_plus) << '\t' << num(r.w_minus) << '\t'
                << num(r.p_value) << (r.degenerate ? "\t(all differences zero)" : "") << '\n';
    }
  }

  if (!o.out.empty()) {
    StagedOutput staged(o.out);
    write_file_atomic(staged.stage("ranks.tsv"), ranks.str());
    write_file_atomic(staged.stage("wilcoxon.tsv"), tests.str());
    staged.commit();
  }
  return 0;
}

int run_classify(const ClassifyOptions& o) {
  const PipelineConfig config = load_config(o.common);
  const ThresholdParams params = o.params.empty() ? ThresholdParams{} : load_params(o.params);
  const BinaryMask m = load_prediction(o.mask, o.common.tau);
  const Classification c = classify(m, params, config);
  const FeatureSet f = compute_features(m, config);
  std::cout << "mask = " << o.mask << "\n";
  std::cout << "size = " << shape_string(m) << "\n";
  std::cout << "params = " << to_string(params) << "\n";
  std::cout << "class = " << to_char(c.cls) << "\n";
  std::cout << "sr = " << num(f.sr) << "\n";
  std::cout << "cc_eroded = " << f.cc_eroded << "\n";
  std::cout << "bsr_eroded = " << num(f.bsr_eroded) << "\n";
  std::cout << "cc_cleaned = " << f.cc_cleaned << "\n";
  return 0;
}

}  // namespace skinmorph::cli
