#include "fuzzmet/compact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fuzz {

namespace {

void require_eps_positive(double eps) {
  if (!(eps > 0.0) || std::isinf(eps) || std::isnan(eps))
    throw std::invalid_argument("eps must be a positive finite number");
}

void require_eps_level(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("eps must lie strictly inside (0,1)");
}

void require_valid(const FuzzyElem& e, const std::string& what) {
  ValidationReport r = validate(e);
  if (!r.ok())
    throw std::invalid_argument(what + " is invalid: " + r.problems.front());
}

// Greedy net over a finite point list: repeatedly promote the worst-covered
// point to a center.
NetCertificate net_over_points(const GroundSpace& space,
                               const std::vector<Point>& pts, double eps) {
  NetCertificate cert;
  cert.eps = eps;
  cert.centers.push_back(pts.front());
  for (;;) {
    double worst = 0.0;
    std::size_t who = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& c : cert.centers)
        best = std::min(best, space.distance(pts[i], c));
      if (best > worst) {
        worst = best;
        who = i;
      }
    }
    if (worst <= eps) {
      cert.certified = true;
      cert.coverage = ExtReal(worst);
      return cert;
    }
    cert.centers.push_back(pts[who]);
  }
}

// Greedy net over a bounded interval union, using the exact directed
// Hausdorff witness as the farthest-point step.
NetCertificate net_over_intervals(const IntervalUnion& s, double eps) {
  NetCertificate cert;
  cert.eps = eps;
  IntervalUnion target = s.closure();
  cert.centers.push_back(Point(target.parts().front().lo));
  for (;;) {
    std::vector<double> xs;
    for (const Point& c : cert.centers) xs.push_back(std::get<double>(c));
    DirectedWitness w =
        union_directed_hausdorff_witness(target, IntervalUnion::points(xs));
    if (w.value <= ExtReal(eps)) {
      cert.certified = true;
      cert.coverage = w.value;
      return cert;
    }
    cert.centers.push_back(Point(*w.at));
  }
}

}  // namespace

CutSet union_at_level(const std::vector<FuzzyElem>& members, double alpha) {
  if (members.empty())
    throw std::invalid_argument("union at level: empty collection");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("union at level: level must lie in [0,1]");
  const SpacePtr& sp = elem_space(members.front());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!elem_space(members[i])->compatible(*sp))
      throw std::invalid_argument("union at level: member " +
                                  std::to_string(i + 1) +
                                  " lives over a different space");
    require_valid(members[i], "union at level: member " +
                                  std::to_string(i + 1));
  }
  CutSet acc = elem_cut(members.front(), alpha);
  for (std::size_t i = 1; i < members.size(); ++i)
    acc = cut_union(acc, elem_cut(members[i], alpha));
  return acc;
}

NetCertificate greedy_eps_net(const SpacePtr& space, const CutSet& set,
                              double eps) {
  if (!space) throw std::invalid_argument("net: null space");
  require_eps_positive(eps);
  if (cut_empty(set))
    throw std::domain_error("net: the set to cover is empty");

  NetCertificate cert;
  if (const auto* ps = std::get_if<PointSet>(&set)) {
    cert = net_over_points(*space, ps->pts, eps);
  } else {
    const auto& u = std::get<IntervalUnion>(set);
    if (!u.bounded()) {
      cert.eps = eps;
      cert.certified = false;
      cert.coverage = ExtReal::infinity();
      cert.note =
          "the set is unbounded, so it has no finite net at any radius";
    } else {
      cert = net_over_intervals(u, eps);
    }
  }
  cert.set_text = cut_to_text(set, *space);
  return cert;
}

bool verify_net_coverage(const SpacePtr& space, const CutSet& set,
                         const std::vector<Point>& centers, double eps) {
  if (!space) throw std::invalid_argument("net check: null space");
  require_eps_positive(eps);
  for (const Point& c : centers)
    if (!space->admits(c))
      throw std::invalid_argument(
          "net check: a center does not belong to the space");
  if (cut_empty(set)) return true;
  if (centers.empty()) return false;

  if (const auto* ps = std::get_if<PointSet>(&set)) {
    for (const Point& p : ps->pts) {
      bool covered = false;
      for (const Point& c : centers)
        if (space->distance(p, c) <= eps) {
          covered = true;
          break;
        }
      if (!covered) return false;
    }
    return true;
  }
  const auto& u = std::get<IntervalUnion>(set);
  std::vector<Interval> balls;
  balls.reserve(centers.size());
  for (const Point& c : centers) {
    if (!std::holds_alternative<double>(c))
      throw std::invalid_argument(
          "net check: interval sets need real-line centers");
    double x = std::get<double>(c);
    balls.push_back(Interval::closed(x - eps, x + eps));
  }
  return subset_of(u.closure(), IntervalUnion(std::move(balls)));
}

TotalBoundednessReport total_boundedness_report(
    const std::vector<FuzzyElem>& members, const std::vector<double>& levels,
    double eps) {
  require_eps_positive(eps);
  if (levels.empty())
    throw std::invalid_argument("total boundedness: no levels requested");
  if (members.empty())
    throw std::invalid_argument("total boundedness: empty collection");
  TotalBoundednessReport rep;
  rep.eps = eps;
  const SpacePtr& sp = elem_space(members.front());
  for (double a : levels) {
    NetCertificate cert = greedy_eps_net(sp, union_at_level(members, a), eps);
    cert.alpha = a;
    if (!cert.certified) rep.all_certified = false;
    rep.certificates.push_back(std::move(cert));
  }
  std::ostringstream os;
  if (rep.all_certified) {
    os << "all " << levels.size() << " requested level unions of the "
       << members.size() << "-member prefix admit finite " << format_double(eps)
       << "-nets (finite-prefix, fixed-resolution claim)";
  } else {
    os << "not certified:";
    for (const NetCertificate& c : rep.certificates)
      if (!c.certified) os << " level " << format_double(c.alpha) << " (" << c.note << ")";
  }
  rep.verdict = os.str();
  return rep;
}

StepFuzzySet flatten_below(const SendoElement& v, double eps) {
  require_eps_level(eps);
  require_valid(FuzzyElem(v), "flatten: input");
  std::vector<double> lv{eps};
  std::vector<CutSet> cuts{v.cut(0.0)};
  const StepFuzzySet& base = v.base();
  for (std::size_t i = 0; i < base.thresholds().size(); ++i)
    if (base.thresholds()[i] > eps) {
      lv.push_back(base.thresholds()[i]);
      cuts.push_back(base.cuts()[i]);
    }
  StepFuzzySet out(base.space(), std::move(lv), std::move(cuts));
  ExtReal moved = send_metric(FuzzyElem(v), FuzzyElem(out));
  if (!(moved <= ExtReal(eps) + ExtReal(1e-12)))
    throw std::logic_error("flatten: sendograph distance " + to_string(moved) +
                           " exceeds eps");
  return out;
}

StepFuzzySet truncate_above(const StepFuzzySet& u, double eps) {
  require_eps_level(eps);
  require_valid(FuzzyElem(u), "truncate: input");
  CutSet floor = u.cut(eps);
  if (!cut_bounded(floor))
    throw std::domain_error(
        "truncate: the cut at level " + format_double(eps) +
        " is unbounded, so no bounded-support step set can stay close");
  std::vector<double> lv{eps};
  std::vector<CutSet> cuts{std::move(floor)};
  for (std::size_t i = 0; i < u.thresholds().size(); ++i)
    if (u.thresholds()[i] > eps) {
      lv.push_back(u.thresholds()[i]);
      cuts.push_back(u.cuts()[i]);
    }
  StepFuzzySet out(u.space(), std::move(lv), std::move(cuts));
  ExtReal moved = end_metric(FuzzyElem(u), FuzzyElem(out));
  if (!(moved <= ExtReal(eps) + ExtReal(1e-12)))
    throw std::logic_error("truncate: endograph distance " + to_string(moved) +
                           " exceeds eps");
  return out;
}

StepFuzzySet project_to_grid(const StepFuzzySet& v, const CutSet& grid,
                             double eps) {
  require_eps_positive(eps);
  require_valid(FuzzyElem(v), "projection: input");
  const SpacePtr& sp = v.space();
  std::vector<Point> gpts;
  if (const auto* ps = std::get_if<PointSet>(&grid)) {
    if (sp->kind() == SpaceKind::line)
      throw std::invalid_argument(
          "projection: grid backend does not match the space");
    gpts = ps->pts;
  } else {
    if (sp->kind() != SpaceKind::line)
      throw std::invalid_argument(
          "projection: grid backend does not match the space");
    for (const Interval& part : std::get<IntervalUnion>(grid).parts()) {
      if (part.lo != part.hi)
        throw std::invalid_argument(
            "projection: the grid must be a finite point set");
      gpts.push_back(Point(part.lo));
    }
  }
  if (gpts.empty()) throw std::invalid_argument("projection: empty grid");
  for (const Point& p : gpts)
    if (!sp->admits(p))
      throw std::invalid_argument(
          "projection: a grid point does not belong to the space");

  ExtReal anchor = cut_hausdorff(*sp, grid, v.cut(0.0));
  if (!(anchor < ExtReal(eps)))
    throw std::domain_error(
        "projection: the grid sits at Hausdorff distance " + to_string(anchor) +
        " from the support, not strictly inside eps = " + format_double(eps));

  auto project_one = [&](const CutSet& cut) -> CutSet {
    std::vector<Point> kept;
    for (const Point& p : gpts)
      if (cut_point_distance(*sp, p, cut) <= ExtReal(eps)) kept.push_back(p);
    if (sp->kind() == SpaceKind::line) {
      std::vector<Interval> parts;
      parts.reserve(kept.size());
      for (const Point& p : kept)
        parts.push_back(Interval::point(std::get<double>(p)));
      return CutSet(IntervalUnion(std::move(parts)));
    }
    return CutSet(PointSet(std::move(kept)));
  };

  std::vector<CutSet> cuts;
  cuts.reserve(v.cuts().size());
  for (const CutSet& c : v.cuts()) cuts.push_back(project_one(c));
  StepFuzzySet out(sp, v.thresholds(), std::move(cuts));
  ValidationReport r = validate(out);
  if (!r.ok())
    throw std::logic_error("projection: result invalid: " + r.problems.front());
  ExtReal moved = sup_metric(FuzzyElem(v), FuzzyElem(out));
  if (!(moved <= ExtReal(eps) + ExtReal(1e-12)))
    throw std::logic_error("projection: supremum distance " + to_string(moved) +
                           " exceeds eps");
  return out;
}

ClosednessReport closedness_within(const std::vector<FuzzyElem>& members,
                                   const std::string& metric, double p) {
  ClosednessReport rep;
  rep.metric = metric;
  rep.p = p;
  auto dist = [&](const FuzzyElem& a, const FuzzyElem& b) -> ExtReal {
    if (metric == "hend") return end_metric(a, b);
    if (metric == "hsend") return send_metric(a, b);
    if (metric == "dinf") return sup_metric(a, b);
    if (metric == "dp") return dp_metric(a, b, p);
    throw std::invalid_argument("unknown metric '" + metric +
                                "' (available: hend, hsend, dinf, dp)");
  };
  std::size_t n = members.size();
  rep.matrix.assign(n, std::vector<ExtReal>(n, ExtReal(0.0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ExtReal d = dist(members[i], members[j]);
      rep.matrix[i][j] = d;
      rep.matrix[j][i] = d;
      if (d == ExtReal(0.0))
        rep.collisions.push_back(ClosednessReport::Collision{
            i, j, members[i] == members[j]});
    }
  return rep;
}

}  // namespace fuzz
