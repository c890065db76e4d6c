#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "skinmorph/error.hpp"

using namespace skinmorph::cli;

namespace {

void add_common(CLI::App* cmd, CommonOptions& c, bool with_jobs = true) {
  cmd->add_option("--config", c.config, "Pipeline overrides (key = value file)")->check(CLI::ExistingFile);
  cmd->add_option("--tau", c.tau, "Treat predictions as probability maps, foreground where value >= tau")
      ->check(CLI::Range(0, 255));
  if (with_jobs) cmd->add_option("--jobs,-j", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rule-based morphological post-processing of binary skin masks"};
  app.require_subcommand(1);

  PostprocessOptions post;
  auto* p = app.add_subcommand("postprocess", "Post-process every prediction in a manifest");
  p->add_option("--manifest", post.manifest, "Dataset manifest")->required()->check(CLI::ExistingFile);
  p->add_option("--params", post.params, "Threshold file (a1, a2, b1, b2, c1)")->check(CLI::ExistingFile);
  p->add_option("--mode", post.mode, "adaptive or baseline")->check(CLI::IsMember({"adaptive", "baseline"}));
  p->add_option("--out", post.out, "Output directory")->required();
  add_common(p, post.common);

  TrainOptions train;
  auto* t = app.add_subcommand("train", "Grid-search the class thresholds");
  t->add_option("--manifest", train.manifests, "Training manifest; repeat for tm")->required()->check(CLI::ExistingFile);
  t->add_option("--protocol", train.protocol, "em (one manifest) or tm (leave one dataset out)")
      ->check(CLI::IsMember({"em", "tm"}));
  t->add_option("--grid", train.grid, "Grid file; default grid when omitted")->check(CLI::ExistingFile);
  t->add_option("--out", train.out, "Params file; tm writes <stem>_<id><ext> per held-out dataset")->required();
  add_common(t, train.common);

  EvalOptions eval;
  auto* e = app.add_subcommand("eval", "Score predictions against ground truth");
  e->add_option("--manifest", eval.manifest, "Dataset manifest")->required()->check(CLI::ExistingFile);
  e->add_option("--method", eval.method, "Column name in the written result table");
  e->add_option("--out", eval.out, "Write a result table usable by compare");
  add_common(e, eval.common);

  CompareOptions cmp;
  auto* c = app.add_subcommand("compare", "Global rank and Wilcoxon tests over result tables");
  c->add_option("tables", cmp.tables, "Result tables (dataset rows, method columns)")
      ->required()
      ->check(CLI::ExistingFile);
  c->add_option("--pair", cmp.pairs, "METHOD_X:METHOD_Y to test; all pairs when omitted");
  c->add_option("--alternative", cmp.alternative, "two-sided, greater (x > y) or less")
      ->check(CLI::IsMember({"two-sided", "greater", "less"}));
  c->add_option("--out", cmp.out, "Directory for ranks.tsv and wilcoxon.tsv");

  ClassifyOptions cls;
  auto* k = app.add_subcommand("classify", "Print the features and class of one mask");
  k->add_option("mask", cls.mask, "Mask or probability map")->required()->check(CLI::ExistingFile);
  k->add_option("--params", cls.params, "Threshold file")->check(CLI::ExistingFile);
  add_common(k, cls.common, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*p) return run_postprocess(post);
    if (*t) return run_train(train);
    if (*e) return run_eval(eval);
    if (*c) return run_compare(cmp);
    if (*k) return run_classify(cls);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
