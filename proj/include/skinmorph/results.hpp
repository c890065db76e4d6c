#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace skinmorph {

/// Scores of several methods on several datasets, higher is better.
///
///     # comment
///     dataset<TAB>method1<TAB>method2
///     ecu<TAB>0.81<TAB>0.79
struct ResultTable {
  std::vector<std::string> datasets;
  std::vector<std::string> methods;
  /// values[d][m]
  std::vector<std::vector<double>> values;

  std::size_t method_index(const std::string& name) const;
  std::vector<double> column(const std::string& method) const;
};

ResultTable parse_result_table(std::string_view text, const std::string& source = "<table>");
ResultTable load_result_table(const std::string& path);

/// Combines tables cell by cell. Dataset rows keep first-seen order; every
/// (dataset, method) cell must be given exactly once overall.
ResultTable merge_tables(const std::vector<ResultTable>& tables);

std::string format_result_table(const ResultTable& t);

}  // namespace skinmorph
