#pragma once

// Nearest-mean classification of labeled points, in exact rationals.

#include "expl/explain.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace explainer::centroid {

using Vec = std::vector<Rational>;

struct LabeledDataset {
  std::vector<std::pair<Vec, std::string>> points;

  std::size_t dim() const { return points.empty() ? 0 : points.front().first.size(); }
  // Lines "c1,c2,...,label"; '#' starts a comment line. Coordinates are
  // integers or fractions p/q.
  static LabeledDataset parse_csv(std::string_view text);
  static LabeledDataset load_csv(const std::string& path);
  std::string to_csv() const;
};

class Tie : public Error {
 public:
  using Error::Error;
};

Rational parse_rational(std::string_view s);
std::string format_point(const Vec& v);

struct CentroidResult {
  std::string label;
  // Mean squared distance from the query to each class.
  std::map<std::string, Rational> mean_sq;
  explain::Explanation explanation;
  explain::ExplanationReport report;
};

// Label with the least mean squared distance. Throws DomainError on an empty
// dataset or a dimension mismatch, Tie when two labels share the minimum.
CentroidResult centroid_classify(const LabeledDataset& data, const Vec& point, const explain::Config& cfg = {});

}  // namespace explainer::centroid
