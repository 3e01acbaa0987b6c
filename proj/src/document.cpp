#include "fuzzmet/document.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace fuzz {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error("document: " + where + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) fail(where, "unknown field '" + it.key() + "'");
  }
}

double need_number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::string need_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

const Json& need_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

const Json& need_object(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  return j;
}

bool opt_flag(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return false;
  if (!it->is_boolean()) fail(where + "." + key, "expected true or false");
  return it->get<bool>();
}

// ---- space ----

SpacePtr space_from_json(const Json& j) {
  const std::string where = "space";
  need_object(j, where);
  std::string kind = need_string(need(j, "kind", where), where + ".kind");
  if (kind == "line") {
    check_keys(j, {"kind"}, where);
    return GroundSpace::line();
  }
  if (kind == "euclidean") {
    check_keys(j, {"kind", "dim"}, where);
    const Json& d = need(j, "dim", where);
    if (!d.is_number_integer() || d.get<int>() < 1)
      fail(where + ".dim", "expected a positive integer");
    return GroundSpace::euclidean(d.get<int>());
  }
  if (kind == "finite") {
    check_keys(j, {"kind", "labels", "table"}, where);
    std::vector<std::string> labels;
    for (const Json& l : need_array(need(j, "labels", where), where + ".labels"))
      labels.push_back(need_string(l, where + ".labels"));
    std::vector<std::vector<double>> table;
    for (const Json& row :
         need_array(need(j, "table", where), where + ".table")) {
      table.emplace_back();
      for (const Json& v : need_array(row, where + ".table"))
        table.back().push_back(need_number(v, where + ".table"));
    }
    try {
      return GroundSpace::finite(std::move(labels), std::move(table));
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
  }
  fail(where + ".kind",
       "unknown space kind '" + kind + "' (line, euclidean, finite)");
}

Json space_to_json(const GroundSpace& s) {
  Json j;
  switch (s.kind()) {
    case SpaceKind::line:
      j["kind"] = "line";
      break;
    case SpaceKind::euclidean:
      j["kind"] = "euclidean";
      j["dim"] = s.dim();
      break;
    case SpaceKind::finite: {
      j["kind"] = "finite";
      j["labels"] = s.labels();
      Json table = Json::array();
      for (int i = 0; i < s.size(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < s.size(); ++k) row.push_back(s.table(i, k));
        table.push_back(std::move(row));
      }
      j["table"] = std::move(table);
      break;
    }
  }
  return j;
}

// ---- interval parts and cuts ----

double endpoint_from_json(const Json& j, bool is_hi, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "+inf" && is_hi) return kInf;
    if (s == "-inf" && !is_hi) return -kInf;
    fail(where, "bad endpoint '" + s + "' (numbers, \"-inf\" for lo, "
                "\"+inf\" for hi)");
  }
  fail(where, "expected a number or an infinity sentinel");
}

Interval interval_from_json(const Json& j, const std::string& where) {
  need_object(j, where);
  check_keys(j, {"lo", "hi", "lo_open", "hi_open"}, where);
  double lo = endpoint_from_json(need(j, "lo", where), false, where + ".lo");
  double hi = endpoint_from_json(need(j, "hi", where), true, where + ".hi");
  bool lo_open = opt_flag(j, "lo_open", where) || std::isinf(lo);
  bool hi_open = opt_flag(j, "hi_open", where) || std::isinf(hi);
  try {
    return Interval::make(lo, hi, lo_open, hi_open);
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

Json interval_to_json(const Interval& part) {
  Json j;
  if (std::isinf(part.lo))
    j["lo"] = "-inf";
  else
    j["lo"] = part.lo;
  if (std::isinf(part.hi))
    j["hi"] = "+inf";
  else
    j["hi"] = part.hi;
  if (part.lo_open && !std::isinf(part.lo)) j["lo_open"] = true;
  if (part.hi_open && !std::isinf(part.hi)) j["hi_open"] = true;
  return j;
}

IntervalUnion union_from_json(const Json& j, const std::string& where) {
  std::vector<Interval> parts;
  std::size_t i = 0;
  for (const Json& p : need_array(j, where))
    parts.push_back(
        interval_from_json(p, where + "[" + std::to_string(i++) + "]"));
  return IntervalUnion(std::move(parts));
}

Point point_from_json(const Json& j, const GroundSpace& space,
                      const std::string& where) {
  switch (space.kind()) {
    case SpaceKind::finite: {
      std::string label = need_string(j, where);
      int idx = space.label_index(label);
      if (idx < 0) fail(where, "unknown label '" + label + "'");
      return Point(idx);
    }
    case SpaceKind::euclidean: {
      std::vector<double> xs;
      for (const Json& v : need_array(j, where))
        xs.push_back(need_number(v, where));
      if (static_cast<int>(xs.size()) != space.dim())
        fail(where, "expected " + std::to_string(space.dim()) +
                        " coordinates, got " + std::to_string(xs.size()));
      for (double x : xs)
        if (!std::isfinite(x)) fail(where, "coordinates must be finite");
      return Point(std::move(xs));
    }
    case SpaceKind::line: {
      double x = need_number(j, where);
      if (!std::isfinite(x)) fail(where, "line points must be finite");
      return Point(x);
    }
  }
  fail(where, "unreachable");
}

Json point_to_json(const Point& p, const GroundSpace& space) {
  switch (space.kind()) {
    case SpaceKind::finite:
      return Json(space.labels()[static_cast<std::size_t>(std::get<int>(p))]);
    case SpaceKind::euclidean:
      return Json(std::get<std::vector<double>>(p));
    case SpaceKind::line:
      return Json(std::get<double>(p));
  }
  return Json();
}

CutSet cut_from_json(const Json& j, const GroundSpace& space,
                     const std::string& where) {
  if (space.kind() == SpaceKind::line) return CutSet(union_from_json(j, where));
  std::vector<Point> pts;
  std::size_t i = 0;
  for (const Json& p : need_array(j, where))
    pts.push_back(
        point_from_json(p, space, where + "[" + std::to_string(i++) + "]"));
  return CutSet(PointSet(std::move(pts)));
}

Json cut_to_json(const CutSet& c, const GroundSpace& space) {
  Json j = Json::array();
  if (const auto* u = std::get_if<IntervalUnion>(&c)) {
    for (const Interval& part : u->parts()) j.push_back(interval_to_json(part));
  } else {
    for (const Point& p : std::get<PointSet>(c).pts)
      j.push_back(point_to_json(p, space));
  }
  return j;
}

// ---- sets ----

std::pair<std::vector<double>, std::vector<CutSet>> ladder_from_json(
    const Json& j, const SpacePtr& space, const std::string& where) {
  std::vector<double> thresholds;
  for (const Json& t :
       need_array(need(j, "thresholds", where), where + ".thresholds"))
    thresholds.push_back(need_number(t, where + ".thresholds"));
  std::vector<CutSet> cuts;
  std::size_t i = 0;
  for (const Json& c : need_array(need(j, "cuts", where), where + ".cuts"))
    cuts.push_back(cut_from_json(
        c, *space, where + ".cuts[" + std::to_string(i++) + "]"));
  return {std::move(thresholds), std::move(cuts)};
}

AnyFuzzySet set_from_json(const Json& j, const SpacePtr& space,
                          const std::string& where) {
  std::string kind = need_string(need(j, "kind", where), where + ".kind");
  try {
    if (kind == "steps") {
      check_keys(j, {"name", "kind", "thresholds", "cuts"}, where);
      auto [thresholds, cuts] = ladder_from_json(j, space, where);
      return StepFuzzySet(space, std::move(thresholds), std::move(cuts));
    }
    if (kind == "sendo") {
      check_keys(j, {"name", "kind", "thresholds", "cuts", "ghost"}, where);
      auto [thresholds, cuts] = ladder_from_json(j, space, where);
      CutSet ghost =
          cut_from_json(need(j, "ghost", where), *space, where + ".ghost");
      return SendoElement(
          StepFuzzySet(space, std::move(thresholds), std::move(cuts)),
          std::move(ghost));
    }
    if (kind == "bands") {
      check_keys(j, {"name", "kind", "pieces"}, where);
      std::vector<std::pair<IntervalUnion, double>> pieces;
      std::size_t i = 0;
      for (const Json& p :
           need_array(need(j, "pieces", where), where + ".pieces")) {
        std::string pw = where + ".pieces[" + std::to_string(i++) + "]";
        need_object(p, pw);
        check_keys(p, {"piece", "value"}, pw);
        IntervalUnion u =
            union_from_json(need(p, "piece", pw), pw + ".piece");
        double v = need_number(need(p, "value", pw), pw + ".value");
        pieces.emplace_back(std::move(u), v);
      }
      return BandFuzzySet(space, std::move(pieces));
    }
    if (kind == "discrete") {
      check_keys(j, {"name", "kind", "points"}, where);
      std::vector<std::pair<Point, double>> weighted;
      std::size_t i = 0;
      for (const Json& p :
           need_array(need(j, "points", where), where + ".points")) {
        std::string pw = where + ".points[" + std::to_string(i++) + "]";
        need_object(p, pw);
        check_keys(p, {"at", "value"}, pw);
        Point at = point_from_json(need(p, "at", pw), *space, pw + ".at");
        double v = need_number(need(p, "value", pw), pw + ".value");
        if (!(v >= 0.0 && v <= 1.0))
          fail(pw + ".value", "membership must lie in [0,1]");
        weighted.emplace_back(std::move(at), v);
      }
      // Convert the pointwise description to its ladder of cuts.  A missing
      // value-1 point still yields a loadable set; validation then reports
      // the normality problem.
      std::vector<double> thresholds;
      for (const auto& [at, v] : weighted)
        if (v > 0.0) thresholds.push_back(v);
      thresholds.push_back(1.0);
      std::sort(thresholds.begin(), thresholds.end());
      thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                       thresholds.end());
      std::vector<CutSet> cuts;
      for (double t : thresholds) {
        std::vector<Point> pts;
        for (const auto& [at, v] : weighted)
          if (v >= t) pts.push_back(at);
        if (space->kind() == SpaceKind::line) {
          std::vector<Interval> parts;
          for (const Point& p : pts)
            parts.push_back(Interval::point(std::get<double>(p)));
          cuts.push_back(CutSet(IntervalUnion(std::move(parts))));
        } else {
          cuts.push_back(CutSet(PointSet(std::move(pts))));
        }
      }
      return StepFuzzySet(space, std::move(thresholds), std::move(cuts));
    }
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  fail(where + ".kind", "unknown set kind '" + kind +
                            "' (steps, bands, discrete, sendo)");
}

Json set_to_json(const std::string& name, const AnyFuzzySet& s,
                 const GroundSpace& space) {
  Json j;
  j["name"] = name;
  if (const auto* u = std::get_if<StepFuzzySet>(&s)) {
    j["kind"] = "steps";
    j["thresholds"] = u->thresholds();
    Json cuts = Json::array();
    for (const CutSet& c : u->cuts()) cuts.push_back(cut_to_json(c, space));
    j["cuts"] = std::move(cuts);
  } else if (const auto* v = std::get_if<SendoElement>(&s)) {
    j["kind"] = "sendo";
    j["thresholds"] = v->base().thresholds();
    Json cuts = Json::array();
    for (const CutSet& c : v->base().cuts())
      cuts.push_back(cut_to_json(c, space));
    j["cuts"] = std::move(cuts);
    j["ghost"] = cut_to_json(v->ghost(), space);
  } else {
    const auto& b = std::get<BandFuzzySet>(s);
    j["kind"] = "bands";
    Json pieces = Json::array();
    for (const auto& [piece, value] : b.pieces()) {
      Json p;
      p["piece"] = cut_to_json(CutSet(piece), space);
      p["value"] = value;
      pieces.push_back(std::move(p));
    }
    j["pieces"] = std::move(pieces);
  }
  return j;
}

}  // namespace

const AnyFuzzySet* Document::find(const std::string& name) const {
  for (const auto& [n, s] : sets)
    if (n == name) return &s;
  return nullptr;
}

Document parse_document(const std::string& text, bool check_sets) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(std::string("document: JSON syntax: ") + e.what());
  }
  need_object(root, "document");
  check_keys(root, {"fuzzdoc", "space", "sets", "collections"}, "document");
  const Json& tag = need(root, "fuzzdoc", "document");
  if (!tag.is_number_integer() || tag.get<int>() != 1)
    fail("fuzzdoc", "unsupported version (expected 1)");

  Document doc;
  doc.space = space_from_json(need(root, "space", "document"));

  std::set<std::string> seen;
  std::size_t i = 0;
  for (const Json& js :
       need_array(need(root, "sets", "document"), "sets")) {
    std::string where = "sets[" + std::to_string(i++) + "]";
    need_object(js, where);
    std::string name = need_string(need(js, "name", where), where + ".name");
    if (name.empty()) fail(where + ".name", "empty name");
    if (!seen.insert(name).second)
      fail(where + ".name", "duplicate set name '" + name + "'");
    where += " ('" + name + "')";
    AnyFuzzySet s = set_from_json(js, doc.space, where);
    if (check_sets) {
      ValidationReport r = validate(s);
      if (!r.ok()) {
        std::string msg;
        for (const std::string& p : r.problems)
          msg += (msg.empty() ? "" : "; ") + p;
        fail(where, "fails validation: " + msg);
      }
    }
    doc.sets.emplace_back(std::move(name), std::move(s));
  }

  if (auto it = root.find("collections"); it != root.end()) {
    need_object(*it, "collections");
    for (auto c = it->begin(); c != it->end(); ++c) {
      std::string where = "collections." + c.key();
      std::vector<std::string> names;
      for (const Json& n : need_array(c.value(), where)) {
        std::string name = need_string(n, where);
        if (!doc.find(name))
          fail(where, "references unknown set '" + name + "'");
        names.push_back(std::move(name));
      }
      doc.collections.emplace_back(c.key(), std::move(names));
    }
  }
  return doc;
}

std::string serialize_document(const Document& doc) {
  Json root;
  root["fuzzdoc"] = 1;
  root["space"] = space_to_json(*doc.space);
  Json sets = Json::array();
  for (const auto& [name, s] : doc.sets)
    sets.push_back(set_to_json(name, s, *doc.space));
  root["sets"] = std::move(sets);
  if (!doc.collections.empty()) {
    Json cols;
    for (const auto& [name, members] : doc.collections) cols[name] = members;
    root["collections"] = std::move(cols);
  }
  return root.dump(2) + "\n";
}

FuzzyElem as_metric_operand(const AnyFuzzySet& s, const std::string& name) {
  if (const auto* u = std::get_if<StepFuzzySet>(&s)) return FuzzyElem(*u);
  if (const auto* v = std::get_if<SendoElement>(&s)) return FuzzyElem(*v);
  throw std::invalid_argument("set '" + name +
                              "' is a band description; bands support cuts "
                              "and classification only");
}

std::vector<std::pair<std::string, FuzzyElem>> collection_operands(
    const Document& doc, const std::string& collection) {
  for (const auto& [name, members] : doc.collections)
    if (name == collection) {
      std::vector<std::pair<std::string, FuzzyElem>> out;
      for (const std::string& m : members)
        out.emplace_back(m, as_metric_operand(*doc.find(m), m));
      return out;
    }
  throw std::invalid_argument("no collection named '" + collection + "'");
}

}  // namespace fuzz
