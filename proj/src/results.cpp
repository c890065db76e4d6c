#include "skinmorph/results.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "skinmorph/error.hpp"
#include "text_util.hpp"

namespace skinmorph {

std::size_t ResultTable::method_index(const std::string& name) const {
  const auto it = std::find(methods.begin(), methods.end(), name);
  if (it == methods.end()) throw Error("no method column '" + name + "'");
  return static_cast<std::size_t>(it - methods.begin());
}

std::vector<double> ResultTable::column(const std::string& method) const {
  const std::size_t m = method_index(method);
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& row : values) out.push_back(row[m]);
  return out;
}

ResultTable parse_result_table(std::string_view text, const std::string& source) {
  ResultTable t;
  bool header = true;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(source + ":" + std::to_string(line_no) + ": " + msg);
  };
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
    const auto cols = detail::split(line, '\t');
    if (header) {
      if (cols.size() < 2) fail("header needs a dataset column and at least one method");
      for (std::size_t i = 1; i < cols.size(); ++i) {
        std::string name(detail::trim(cols[i]));
        if (name.empty()) fail("empty method name");
        if (std::find(t.methods.begin(), t.methods.end(), name) != t.methods.end()) {
          fail("duplicate method '" + name + "'");
        }
        t.methods.push_back(std::move(name));
      }
      header = false;
      continue;
    }
    if (cols.size() != t.methods.size() + 1) {
      fail("expected " + std::to_string(t.methods.size() + 1) + " columns, got " +
           std::to_string(cols.size()));
    }
    std::string dataset(detail::trim(cols[0]));
    if (std::find(t.datasets.begin(), t.datasets.end(), dataset) != t.datasets.end()) {
      fail("duplicate dataset '" + dataset + "'");
    }
    std::vector<double> row;
    for (std::size_t i = 1; i < cols.size(); ++i) {
      const auto v = detail::parse_double(detail::trim(cols[i]));
      if (!v || std::isnan(*v)) fail("not a number: '" + std::string(cols[i]) + "'");
      row.push_back(*v);
    }
    t.datasets.push_back(std::move(dataset));
    t.values.push_back(std::move(row));
  }
  if (header) throw Error(source + ": empty table");
  return t;
}

ResultTable load_result_table(const std::string& path) {
  return parse_result_table(detail::read_file(path), path);
}

ResultTable merge_tables(const std::vector<ResultTable>& tables) {
  ResultTable out;
  std::map<std::pair<std::string, std::string>, double> cells;
  for (const auto& t : tables) {
    for (const auto& m : t.methods) {
      if (std::find(out.methods.begin(), out.methods.end(), m) == out.methods.end()) {
        out.methods.push_back(m);
      }
    }
    for (std::size_t d = 0; d < t.datasets.size(); ++d) {
      if (std::find(out.datasets.begin(), out.datasets.end(), t.datasets[d]) ==
          out.datasets.end()) {
        out.datasets.push_back(t.datasets[d]);
      }
      for (std::size_t m = 0; m < t.methods.size(); ++m) {
        if (!cells.emplace(std::pair{t.datasets[d], t.methods[m]}, t.values[d][m]).second) {
          throw Error("cell (" + t.datasets[d] + ", " + t.methods[m] + ") given twice");
        }
      }
    }
  }
  for (const auto& d : out.datasets) {
    std::vector<double> row;
    for (const auto& m : out.methods) {
      const auto it = cells.find({d, m});
      if (it == cells.end()) {
        throw Error("rows do not line up: no value for method '" + m + "' on dataset '" +
                    d + "'");
      }
      row.push_back(it->second);
    }
    out.values.push_back(std::move(row));
  }
  return out;
}

std::string format_result_table(const ResultTable& t) {
  std::ostringstream os;
  os << "dataset";
  for (const auto& m : t.methods) os << '\t' << m;
  os << '\n';
  for (std::size_t d = 0; d < t.datasets.size(); ++d) {
    os << t.datasets[d];
    for (double v : t.values[d]) os << '\t' << detail::format_double(v);
    os << '\n';
  }
  return os.str();
}

}  // namespace skinmorph
