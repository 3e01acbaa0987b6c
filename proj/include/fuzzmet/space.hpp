#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fuzzmet/ext_real.hpp"

namespace fuzz {

enum class SpaceKind { finite, euclidean, line };

// A point of a ground space: an index into a finite space's table, a
// coordinate tuple in R^m, or a real number on the line.
using Point = std::variant<int, std::vector<double>, double>;

// The metric space the fuzzy sets live over.  Three backends: a finite
// space given by an explicit distance table, R^m with the euclidean metric,
// and the extended real line (whose subsets are interval unions and get a
// dedicated geometry backend).
class GroundSpace {
 public:
  // Validates eagerly: square table, symmetry, zero diagonal, positivity off
  // the diagonal, and the triangle inequality.  Throws std::invalid_argument.
  static std::shared_ptr<const GroundSpace> finite(
      std::vector<std::string> labels, std::vector<std::vector<double>> table);
  static std::shared_ptr<const GroundSpace> euclidean(int dim);
  static std::shared_ptr<const GroundSpace> line();

  SpaceKind kind() const { return kind_; }
  int size() const { return static_cast<int>(labels_.size()); }
  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  double table(int i, int j) const { return table_[i * size() + j]; }
  int label_index(const std::string& name) const;

  double distance(const Point& a, const Point& b) const;
  // True when the point's representation matches this space (finite index in
  // range, coordinate tuple of the right dimension, finite line coordinate).
  bool admits(const Point& p) const;

  // Structural equality of descriptions; computations across two documents
  // require compatible spaces.
  bool compatible(const GroundSpace& other) const;
  std::string describe() const;

 private:
  GroundSpace() = default;
  SpaceKind kind_ = SpaceKind::line;
  std::vector<std::string> labels_;  // finite
  std::vector<double> table_;        // finite, row-major
  int dim_ = 0;                      // euclidean
};

using SpacePtr = std::shared_ptr<const GroundSpace>;

// A point of the product space X x [0,1].
struct ProductPoint {
  Point base;
  double height;  // in [0,1]
};

// d((x,a),(y,b)) = d(x,y) + |a-b|.
double product_distance(const ProductPoint& p, const ProductPoint& q,
                        const GroundSpace& space);

// Canonical strict order on points (variant kind, then value); used to keep
// point sets sorted and deduplicated.
bool point_less(const Point& a, const Point& b);
std::string point_to_text(const Point& p, const GroundSpace& space);

}  // namespace fuzz
