#pragma once

#include <optional>
#include <string>
#include <vector>

namespace skinmorph::cli {

struct CommonOptions {
  std::string config;  // pipeline overrides, optional
  int jobs = 1;
  std::optional<int> tau;  // predictions are probability maps when set
};

struct PostprocessOptions {
  CommonOptions common;
  std::string manifest;
  std::string params;
  std::string mode = "adaptive";
  std::string out;
};

struct TrainOptions {
  CommonOptions common;
  std::vector<std::string> manifests;
  std::string protocol = "em";
  std::string grid;
  std::string out;
};

struct EvalOptions {
  CommonOptions common;
  std::string manifest;
  std::string method = "score";
  std::string out;
};

struct CompareOptions {
  std::vector<std::string> tables;
  std::vector<std::string> pairs;
  std::string alternative = "two-sided";
  std::string out;
};

struct ClassifyOptions {
  CommonOptions common;
  std::string mask;
  std::string params;
};

int run_postprocess(const PostprocessOptions& o);
int run_train(const TrainOptions& o);
int run_eval(const EvalOptions& o);
int run_compare(const CompareOptions& o);
int run_classify(const ClassifyOptions& o);

}  // namespace skinmorph::cli
