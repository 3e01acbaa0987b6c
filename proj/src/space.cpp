#include "fuzzmet/space.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fuzz {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

std::shared_ptr<const GroundSpace> GroundSpace::finite(
    std::vector<std::string> labels, std::vector<std::vector<double>> table) {
  const std::size_t n = labels.size();
  require(n > 0, "finite space: at least one point required");
  require(table.size() == n, "finite space: table must be square");
  auto sp = std::shared_ptr<GroundSpace>(new GroundSpace());
  sp->kind_ = SpaceKind::finite;
  sp->labels_ = std::move(labels);
  sp->table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    require(table[i].size() == n, "finite space: table must be square");
    for (std::size_t j = 0; j < n; ++j) {
      double d = table[i][j];
      require(std::isfinite(d) && d >= 0.0,
              "finite space: distances must be finite and nonnegative");
      sp->table_[i * n + j] = d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    require(sp->table_[i * n + i] == 0.0, "finite space: nonzero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      require(sp->table_[i * n + j] == sp->table_[j * n + i],
              "finite space: table not symmetric");
      if (i != j)
        require(sp->table_[i * n + j] > 0.0,
                "finite space: distinct points at distance zero");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        require(sp->table_[i * n + k] <=
                    sp->table_[i * n + j] + sp->table_[j * n + k],
                "finite space: triangle inequality violated");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      require(sp->labels_[i] != sp->labels_[j],
              "finite space: duplicate point label");
  return sp;
}

std::shared_ptr<const GroundSpace> GroundSpace::euclidean(int dim) {
  require(dim >= 1, "euclidean space: dimension must be >= 1");
  auto sp = std::shared_ptr<GroundSpace>(new GroundSpace());
  sp->kind_ = SpaceKind::euclidean;
  sp->dim_ = dim;
  return sp;
}

std::shared_ptr<const GroundSpace> GroundSpace::line() {
  auto sp = std::shared_ptr<GroundSpace>(new GroundSpace());
  sp->kind_ = SpaceKind::line;
  return sp;
}

int GroundSpace::label_index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == name) return i;
  return -1;
}

bool GroundSpace::admits(const Point& p) const {
  switch (kind_) {
    case SpaceKind::finite: {
      const int* idx = std::get_if<int>(&p);
      return idx && *idx >= 0 && *idx < size();
    }
    case SpaceKind::euclidean: {
      const auto* c = std::get_if<std::vector<double>>(&p);
      if (!c || static_cast<int>(c->size()) != dim_) return false;
      for (double v : *c)
        if (!std::isfinite(v)) return false;
      return true;
    }
    case SpaceKind::line: {
      const double* x = std::get_if<double>(&p);
      return x && std::isfinite(*x);
    }
  }
  return false;
}

double GroundSpace::distance(const Point& a, const Point& b) const {
  switch (kind_) {
    case SpaceKind::finite: {
      require(admits(a) && admits(b), "distance: point does not belong to the space");
      return table(std::get<int>(a), std::get<int>(b));
    }
    case SpaceKind::euclidean: {
      require(admits(a) && admits(b), "distance: point does not belong to the space");
      const auto& x = std::get<std::vector<double>>(a);
      const auto& y = std::get<std::vector<double>>(b);
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) {
        double d = x[i] - y[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case SpaceKind::line: {
      require(admits(a) && admits(b), "distance: point does not belong to the space");
      return std::fabs(std::get<double>(a) - std::get<double>(b));
    }
  }
  throw std::logic_error("unreachable");
}

bool GroundSpace::compatible(const GroundSpace& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case SpaceKind::finite:
      return labels_ == other.labels_ && table_ == other.table_;
    case SpaceKind::euclidean:
      return dim_ == other.dim_;
    case SpaceKind::line:
      return true;
  }
  return false;
}

std::string GroundSpace::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case SpaceKind::finite:
      os << "finite space on " << size() << " points";
      break;
    case SpaceKind::euclidean:
      os << "euclidean R^" << dim_;
      break;
    case SpaceKind::line:
      os << "extended real line";
      break;
  }
  return os.str();
}

double product_distance(const ProductPoint& p, const ProductPoint& q,
                        const GroundSpace& space) {
  if (!(p.height >= 0.0 && p.height <= 1.0 && q.height >= 0.0 &&
        q.height <= 1.0))
    throw std::invalid_argument("product_distance: heights must lie in [0,1]");
  return space.distance(p.base, q.base) + std::fabs(p.height - q.height);
}

bool point_less(const Point& a, const Point& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  return a < b;  // variant's lexicographic compare on the common alternative
}

std::string point_to_text(const Point& p, const GroundSpace& space) {
  if (const int* idx = std::get_if<int>(&p)) {
    if (space.kind() == SpaceKind::finite && *idx >= 0 && *idx < space.size())
      return space.labels()[*idx];
    return "#" + std::to_string(*idx);
  }
  if (const auto* c = std::get_if<std::vector<double>>(&p)) {
    std::string s = "(";
    for (std::size_t i = 0; i < c->size(); ++i) {
      if (i) s += ",";
      s += format_double((*c)[i]);
    }
    return s + ")";
  }
  return format_double(std::get<double>(p));
}

}  // namespace fuzz
