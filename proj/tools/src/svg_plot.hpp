#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace somor::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // non-positive or non-finite points break the line
};

/// Log-log line plot with decade grid lines and a legend.
void write_loglog_svg(std::ostream& out, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Series>& series);

}  // namespace somor::cli
