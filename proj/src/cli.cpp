#include "fuzzmet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "fuzzmet/compact.hpp"
#include "fuzzmet/document.hpp"
#include "fuzzmet/sequence.hpp"

namespace fuzz {
namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------- workers

int worker_count() {
  const char* s = std::getenv("FUZZMET_WORKERS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  long w = std::strtol(s, &end, 10);
  if (*end != '\0' || w < 1 || w > 256)
    throw std::invalid_argument(
        "FUZZMET_WORKERS must be an integer between 1 and 256");
  return static_cast<int>(w);
}

// Runs f(0), ..., f(n-1), possibly across worker threads.  Callers write
// results into pre-sized slots indexed by i, so the emitted output is the
// same no matter how the work was scheduled.
template <typename F>
void parallel_for(int n, F&& f) {
  int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto body = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// ------------------------------------------------------------- small utils

ordered_json ext_json(const ExtReal& v) {
  if (v.finite()) return ordered_json(v.value());
  return ordered_json("+inf");
}

ordered_json ext_array(const std::vector<ExtReal>& vs) {
  ordered_json a = ordered_json::array();
  for (const auto& v : vs) a.push_back(ext_json(v));
  return a;
}

ordered_json point_json(const GroundSpace& sp, const Point& pt) {
  switch (sp.kind()) {
    case SpaceKind::finite:
      return ordered_json(sp.labels()[static_cast<std::size_t>(std::get<int>(pt))]);
    case SpaceKind::euclidean: {
      ordered_json a = ordered_json::array();
      for (double c : std::get<std::vector<double>>(pt)) a.push_back(c);
      return a;
    }
    case SpaceKind::line:
      return ordered_json(std::get<double>(pt));
  }
  return {};
}

// a <= b up to additive rounding slack.
bool le_tol(const ExtReal& a, const ExtReal& b, double tol = 1e-12) {
  if (!b.finite()) return true;
  if (!a.finite()) return false;
  return a.value() <= b.value() + tol;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (tok.empty() || used != tok.size())
      throw std::invalid_argument(what + ": bad number '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

// "N" or "A..B", 1 <= A <= B.
std::pair<int, int> parse_range(const std::string& text) {
  auto bad = [&]() -> std::pair<int, int> {
    throw std::invalid_argument("--n: expected N or A..B with 1 <= A <= B, got '" +
                                text + "'");
  };
  auto to_int = [&](const std::string& part) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      bad();
    }
    if (used != part.size()) bad();
    return v;
  };
  auto pos = text.find("..");
  if (pos == std::string::npos) {
    int n = to_int(text);
    if (n < 1) bad();
    return {1, n};
  }
  int a = to_int(text.substr(0, pos));
  int b = to_int(text.substr(pos + 2));
  if (a < 1 || b < a) bad();
  return {a, b};
}

// ------------------------------------------------------------ doc loading

struct Session {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  std::string stdin_text;
  bool stdin_read = false;

  std::string slurp(const std::string& path) {
    if (path == "-") {
      if (!stdin_read) {
        std::ostringstream ss;
        ss << in.rdbuf();
        stdin_text = ss.str();
        stdin_read = true;
      }
      return stdin_text;
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("document: " + path + ": cannot open file");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
};

// Operand syntax: PATH or PATH#NAME, with "-" for stdin.  An empty path also
// means stdin: the argv preprocessor rewrites "-#NAME" to "#NAME" so the
// option parser does not mistake the operand for a flag.
std::pair<std::string, std::string> split_operand(const std::string& s) {
  auto pos = s.rfind('#');
  if (pos == std::string::npos) return {s, ""};
  std::string path = s.substr(0, pos);
  if (path.empty()) path = "-";
  return {path, s.substr(pos + 1)};
}

std::string names_of(const Document& doc) {
  std::string out;
  for (const auto& [name, set] : doc.sets) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

const std::pair<std::string, AnyFuzzySet>& pick_set(const Document& doc,
                                                    const std::string& which,
                                                    const std::string& operand) {
  if (!which.empty()) {
    for (const auto& entry : doc.sets)
      if (entry.first == which) return entry;
    throw std::invalid_argument(operand + ": no set named '" + which +
                                "' (available: " + names_of(doc) + ")");
  }
  if (doc.sets.size() == 1) return doc.sets.front();
  throw std::invalid_argument(operand + ": document has " +
                              std::to_string(doc.sets.size()) +
                              " sets; pick one with '#name' (available: " +
                              names_of(doc) + ")");
}

struct NamedElem {
  std::string name;
  FuzzyElem elem;
};

NamedElem load_elem(Session& s, const std::string& operand) {
  auto [path, setname] = split_operand(operand);
  Document doc = parse_document(s.slurp(path));
  const auto& [name, any] = pick_set(doc, setname, operand);
  return {name, as_metric_operand(any, name)};
}

// Members for net/seq: a named collection, the only collection, or every
// set in document order.
std::vector<std::pair<std::string, FuzzyElem>> load_members(
    Session& s, const std::string& operand) {
  auto [path, which] = split_operand(operand);
  Document doc = parse_document(s.slurp(path));
  if (!which.empty()) return collection_operands(doc, which);
  if (doc.collections.size() == 1)
    return collection_operands(doc, doc.collections.front().first);
  if (doc.collections.size() > 1) {
    std::string names;
    for (const auto& [name, members] : doc.collections) {
      if (!names.empty()) names += ", ";
      names += name;
    }
    throw std::invalid_argument(operand + ": document has several collections; " +
                                "pick one with '#name' (available: " + names + ")");
  }
  std::vector<std::pair<std::string, FuzzyElem>> out;
  for (const auto& [name, any] : doc.sets)
    out.emplace_back(name, as_metric_operand(any, name));
  if (out.empty()) throw std::invalid_argument(operand + ": document has no sets");
  return out;
}

std::string kind_name(const AnyFuzzySet& s) {
  if (std::holds_alternative<StepFuzzySet>(s)) return "steps";
  if (std::holds_alternative<BandFuzzySet>(s)) return "bands";
  return "sendo";
}

void emit(std::ostream& out, const ordered_json& doc) { out << doc.dump(2) << "\n"; }

// ----------------------------------------------------------------- validate

int cmd_validate(Session& s, const std::string& path) {
  Document doc = parse_document(s.slurp(path), /*check_sets=*/false);
  ordered_json rep;
  rep["report"] = "validate";
  rep["version"] = 1;
  rep["space"] = doc.space->describe();
  ordered_json sets = ordered_json::array();
  int valid = 0;
  for (const auto& [name, any] : doc.sets) {
    ValidationReport r = fuzz::validate(any);
    ordered_json e;
    e["name"] = name;
    e["kind"] = kind_name(any);
    e["valid"] = r.ok();
    e["flags"] = {{"usc", r.usc},
                  {"normal", r.normal},
                  {"uscg", r.uscg},
                  {"uscb", r.uscb}};
    e["problems"] = r.problems;
    if (const auto* se = std::get_if<SendoElement>(&any)) {
      bool img = is_arrow_image(*se);
      e["arrow_image"] = img;
      if (!img)
        e["note"] = "not an arrow image: the ghost set adds level-zero mass "
                    "beyond the closed support";
    }
    if (r.ok()) ++valid;
    sets.push_back(std::move(e));
  }
  rep["sets"] = std::move(sets);
  rep["valid_sets"] = valid;
  rep["total_sets"] = doc.sets.size();
  bool all = valid == static_cast<int>(doc.sets.size());
  rep["all_valid"] = all;
  emit(s.out, rep);
  return all ? 0 : 1;
}

// --------------------------------------------------------------------- dist

ordered_json directed_json(const Directed& d) {
  ordered_json e;
  e["ab"] = ext_json(d.uv);
  e["ba"] = ext_json(d.vu);
  e["value"] = ext_json(d.symmetric());
  return e;
}

int cmd_dist(Session& s, const std::string& metric, double p,
             const std::string& a, const std::string& b) {
  if (p < 1.0) throw std::invalid_argument("--p must be >= 1");
  NamedElem ea = load_elem(s, a);
  NamedElem eb = load_elem(s, b);
  MetricReport r = metric_report(ea.elem, eb.elem, {p});

  ordered_json rep;
  rep["report"] = "dist";
  rep["version"] = 1;
  rep["space"] = elem_space(ea.elem)->describe();
  rep["left"] = ea.name;
  rep["right"] = eb.name;
  rep["p"] = p;
  ordered_json ms;
  ms["h_end"] = directed_json(r.end);
  ms["h_send"] = directed_json(r.send);
  ms["d_inf"] = directed_json(r.sup);
  ms["h_zero"] = directed_json(r.zero);
  ms["d_p"] = directed_json(r.dp.front());
  rep["metrics"] = std::move(ms);

  // The inequality chain is recomputed on every report so a reader never has
  // to trust the evaluators blindly.
  ExtReal dp = r.dp.front().symmetric();
  bool c1 = le_tol(r.h_send(), r.d_inf());
  bool c2 = le_tol(r.h_end(), r.h_send());
  bool c3 = le_tol(r.h_zero(), r.h_send());
  bool c4 = le_tol(dp, r.d_inf());
  bool applicable = r.h_end() < ExtReal(1.0);
  bool c5 = !applicable || le_tol(r.h_send(), r.h_end() + r.h_zero());
  ordered_json checks;
  checks["hsend_le_dinf"] = c1;
  checks["hend_le_hsend"] = c2;
  checks["hzero_le_hsend"] = c3;
  checks["dp_le_dinf"] = c4;
  checks["hsend_le_hend_plus_hzero"] =
      applicable ? ordered_json(c5) : ordered_json(nullptr);
  rep["checks"] = std::move(checks);
  bool pass = c1 && c2 && c3 && c4 && c5;
  rep["checks_pass"] = pass;

  ExtReal selected = metric == "hend"    ? r.h_end()
                     : metric == "hsend" ? r.h_send()
                     : metric == "dinf"  ? r.d_inf()
                                         : dp;
  rep["result"] = {{"metric", metric}, {"value", ext_json(selected)}};
  emit(s.out, rep);
  return pass ? 0 : 1;
}

// ----------------------------------------------------------------- classify

int cmd_classify(Session& s, const std::string& path) {
  Document doc = parse_document(s.slurp(path));
  ordered_json rep;
  rep["report"] = "classify";
  rep["version"] = 1;
  rep["space"] = doc.space->describe();
  ordered_json sets = ordered_json::array();
  for (const auto& [name, any] : doc.sets) {
    ordered_json e;
    e["name"] = name;
    e["kind"] = kind_name(any);
    LevelSetReport lr;
    if (const auto* u = std::get_if<StepFuzzySet>(&any)) {
      lr = classify_levels(*u);
    } else if (const auto* bset = std::get_if<BandFuzzySet>(&any)) {
      lr = classify_levels(*bset);
    } else {
      lr = classify_levels(std::get<SendoElement>(any).base());
      e["note"] = "classified by the base set; ghost mass carries no levels";
    }
    e["D"] = lr.D.to_text();
    e["P"] = lr.P.to_text();
    e["P0"] = lr.P0.to_text();
    e["F"] = lr.F.to_text();
    sets.push_back(std::move(e));
  }
  rep["sets"] = std::move(sets);
  emit(s.out, rep);
  return 0;
}

// ---------------------------------------------------------------------- seq

void seq_csv(std::ostream& out, const SequenceDiagnostics& d, int n_first) {
  auto row = [&](const std::string& series, const std::string& key, int n,
                 const ExtReal& v) {
    out << series << "," << key << "," << n << "," << to_string(v) << "\n";
  };
  out << "series,key,n,value\n";
  const DecompositionReport& dec = d.decomposition;
  for (const auto& tr :
       {&dec.h_send, &dec.h_end, &dec.h_zero, &dec.d_inf, &dec.d_p})
    for (std::size_t i = 0; i < tr->values.size(); ++i)
      if (static_cast<int>(i) + 1 >= n_first)
        row("metric", tr->name, static_cast<int>(i) + 1, tr->values[i]);
  for (const auto& lt : d.levels)
    for (std::size_t i = 0; i < lt.values.size(); ++i)
      if (static_cast<int>(i) + 1 >= n_first)
        row("level", format_double(lt.alpha), static_cast<int>(i) + 1,
            lt.values[i]);
  for (const auto& g : d.gamma)
    for (std::size_t i = 0; i < g.inner.size(); ++i)
      if (static_cast<int>(i) + 1 >= n_first) {
        row("gamma_inner", format_double(g.alpha), static_cast<int>(i) + 1,
            g.inner[i]);
        row("gamma_outer", format_double(g.alpha), static_cast<int>(i) + 1,
            g.outer[i]);
      }
  for (std::size_t i = 0; i < d.equi_rc.delta.size(); ++i)
    row("equi_rc", format_double(d.equi_rc.delta[i]), d.equi_rc.witness[i],
        d.equi_rc.modulus[i]);
}

ordered_json seq_doc(const SequenceDiagnostics& d, const SequenceFamily& fam,
                     int n_first, double p) {
  ordered_json rep;
  rep["report"] = "seq";
  rep["version"] = 1;
  rep["family"] = d.family_id;
  rep["space"] = fam.space()->describe();
  rep["n_first"] = n_first;
  rep["n_last"] = d.N;
  rep["p"] = p;
  rep["resolution"] = fam.resolution();
  rep["tolerance"] = fam.metric_tolerance();
  rep["has_limit"] = fam.has_limit();
  if (fam.has_limit()) {
    const DecompositionReport& dec = d.decomposition;
    ordered_json rows = ordered_json::array();
    for (const auto& r : dec.rows) {
      if (r.n < n_first) continue;
      ordered_json e;
      e["n"] = r.n;
      e["h_send"] = ext_json(r.h_send);
      e["h_end"] = ext_json(r.h_end);
      e["h_zero"] = ext_json(r.h_zero);
      e["d_inf"] = ext_json(r.d_inf);
      e["d_p"] = ext_json(r.d_p);
      e["bound_applicable"] = r.bound_applicable;
      e["bound_holds"] = r.bound_holds;
      rows.push_back(std::move(e));
    }
    ordered_json verdicts;
    for (const auto* tr :
         {&dec.h_send, &dec.h_end, &dec.h_zero, &dec.d_inf, &dec.d_p})
      verdicts[tr->name] = tr->verdict.label;
    rep["decomposition"] = {{"rows", std::move(rows)},
                            {"verdicts", std::move(verdicts)},
                            {"bound_all_hold", dec.bound_all_hold}};
    ordered_json levels = ordered_json::array();
    for (const auto& lt : d.levels) {
      ordered_json e;
      e["alpha"] = lt.alpha;
      e["p0"] = lt.alpha_in_p0;
      e["values"] = ext_array(lt.values);
      e["verdict"] = lt.verdict.label;
      levels.push_back(std::move(e));
    }
    rep["levels"] = std::move(levels);
    ordered_json gam = ordered_json::array();
    for (const auto& g : d.gamma) {
      ordered_json e;
      e["alpha"] = g.alpha;
      e["inner"] = ext_array(g.inner);
      e["outer"] = ext_array(g.outer);
      e["inner_verdict"] = g.inner_verdict.label;
      e["outer_verdict"] = g.outer_verdict.label;
      gam.push_back(std::move(e));
    }
    rep["gamma"] = std::move(gam);
  }
  ordered_json rc = ordered_json::array();
  for (std::size_t i = 0; i < d.equi_rc.delta.size(); ++i) {
    ordered_json e;
    e["delta"] = d.equi_rc.delta[i];
    e["modulus"] = ext_json(d.equi_rc.modulus[i]);
    e["witness"] = d.equi_rc.witness[i];
    rc.push_back(std::move(e));
  }
  rep["equi_rc"] = std::move(rc);
  return rep;
}

int cmd_seq(Session& s, const std::string& family, const std::string& members,
            const std::string& range, int ladder, const std::string& limit,
            const std::string& levels_csv, const std::string& deltas_csv,
            double p, const std::string& format) {
  if (p < 1.0) throw std::invalid_argument("--p must be >= 1");
  if (family.empty() == members.empty())
    throw std::invalid_argument("pick exactly one of --family and --members");
  auto [n_first, n_last] = range.empty() ? std::pair<int, int>{1, 20}
                                         : parse_range(range);

  std::optional<SequenceFamily> fam;
  if (!family.empty()) {
    fam = SequenceFamily::gallery(family, ladder);
    if (!limit.empty()) {
      // Replace the built-in candidate: materialize the prefix and wrap it.
      std::vector<FuzzyElem> prefix;
      for (int n = 1; n <= n_last; ++n) prefix.push_back(fam->member(n));
      fam = SequenceFamily::from_members(family + "+limit", std::move(prefix),
                                         load_elem(s, limit).elem);
    }
  } else {
    auto named = load_members(s, members);
    std::vector<FuzzyElem> elems;
    for (auto& [name, e] : named) elems.push_back(std::move(e));
    std::optional<FuzzyElem> lim;
    if (!limit.empty()) lim = load_elem(s, limit).elem;
    fam = SequenceFamily::from_members(split_operand(members).second.empty()
                                           ? "members"
                                           : split_operand(members).second,
                                       std::move(elems), std::move(lim));
    n_last = std::min(n_last, fam->max_index());
    if (n_last < n_first)
      throw std::invalid_argument("--n: range starts past the last member");
  }

  std::vector<double> levels, deltas;
  if (!levels_csv.empty()) levels = parse_double_list(levels_csv, "--levels");
  if (!deltas_csv.empty()) deltas = parse_double_list(deltas_csv, "--deltas");
  SequenceDiagnostics d =
      run_sequence_diagnostics(*fam, n_last, levels, deltas, p);
  if (format == "csv")
    seq_csv(s.out, d, n_first);
  else
    emit(s.out, seq_doc(d, *fam, n_first, p));
  return 0;
}

// ---------------------------------------------------------------------- net

int cmd_net(Session& s, const std::string& operand, double eps,
            const std::string& levels_csv) {
  auto named = load_members(s, operand);
  std::vector<FuzzyElem> members;
  ordered_json names = ordered_json::array();
  for (auto& [name, e] : named) {
    names.push_back(name);
    members.push_back(std::move(e));
  }
  std::vector<double> levels = {0.0, 0.25, 0.5, 0.75, 1.0};
  if (!levels_csv.empty()) levels = parse_double_list(levels_csv, "--levels");

  TotalBoundednessReport rep = total_boundedness_report(members, levels, eps);
  const SpacePtr& sp = elem_space(members.front());

  ordered_json out;
  out["report"] = "net";
  out["version"] = 1;
  out["space"] = sp->describe();
  out["eps"] = eps;
  out["members"] = std::move(names);
  bool all_reverified = true;
  ordered_json rows = ordered_json::array();
  for (const auto& c : rep.certificates) {
    ordered_json e;
    e["alpha"] = c.alpha;
    e["certified"] = c.certified;
    e["coverage"] = ext_json(c.coverage);
    ordered_json centers = ordered_json::array();
    for (const auto& pt : c.centers) centers.push_back(point_json(*sp, pt));
    e["centers"] = std::move(centers);
    e["set"] = c.set_text;
    e["note"] = c.note;
    if (c.certified) {
      bool ok = verify_net_coverage(sp, union_at_level(members, c.alpha),
                                    c.centers, eps);
      e["reverified"] = ok;
      all_reverified = all_reverified && ok;
    }
    rows.push_back(std::move(e));
  }
  out["levels"] = std::move(rows);
  out["all_certified"] = rep.all_certified;
  out["independent_check"] = all_reverified;
  out["verdict"] = rep.verdict;
  emit(s.out, out);
  return rep.all_certified && all_reverified ? 0 : 1;
}

// ------------------------------------------------- flatten/truncate/project

void emit_result_doc(Session& s, const SpacePtr& sp, const std::string& name,
                     StepFuzzySet result) {
  Document doc;
  doc.space = sp;
  doc.sets.emplace_back(name, AnyFuzzySet(std::move(result)));
  s.out << serialize_document(doc);
}

int cmd_flatten(Session& s, const std::string& operand, double eps) {
  NamedElem in = load_elem(s, operand);
  SendoElement v = std::holds_alternative<SendoElement>(in.elem)
                       ? std::get<SendoElement>(in.elem)
                       : arrow_forward(std::get<StepFuzzySet>(in.elem));
  StepFuzzySet result = flatten_below(v, eps);
  ExtReal moved = send_metric(in.elem, FuzzyElem(result));
  s.err << "flatten: eps=" << format_double(eps) << " h_send(input, output)="
        << to_string(moved) << " (bound eps)\n";
  emit_result_doc(s, elem_space(in.elem), in.name, std::move(result));
  return 0;
}

int cmd_truncate(Session& s, const std::string& operand, double eps) {
  NamedElem in = load_elem(s, operand);
  if (!std::holds_alternative<StepFuzzySet>(in.elem))
    throw std::invalid_argument(
        "truncate expects a plain fuzzy set (ghost mass has no level to "
        "freeze); flatten the set first");
  StepFuzzySet result = truncate_above(std::get<StepFuzzySet>(in.elem), eps);
  ExtReal moved = end_metric(in.elem, FuzzyElem(result));
  s.err << "truncate: eps=" << format_double(eps) << " h_end(input, output)="
        << to_string(moved) << " (bound eps)\n";
  emit_result_doc(s, elem_space(in.elem), in.name, std::move(result));
  return 0;
}

int cmd_project(Session& s, const std::string& operand, double eps,
                const std::string& grid_operand,
                const std::string& grid_points) {
  NamedElem in = load_elem(s, operand);
  if (!std::holds_alternative<StepFuzzySet>(in.elem))
    throw std::invalid_argument("project expects a plain fuzzy set");
  const StepFuzzySet& v = std::get<StepFuzzySet>(in.elem);
  if (grid_operand.empty() == grid_points.empty())
    throw std::invalid_argument(
        "pick exactly one grid source: --grid FILE[#SET] or --grid-points "
        "x1,x2,...");
  CutSet grid;
  if (!grid_operand.empty()) {
    NamedElem g = load_elem(s, grid_operand);
    if (!elem_space(g.elem)->compatible(*elem_space(in.elem)))
      throw std::invalid_argument("grid set lives over a different space");
    grid = elem_cut(g.elem, 0.0);
  } else {
    if (v.space()->kind() != SpaceKind::line)
      throw std::invalid_argument("--grid-points only applies to line spaces");
    grid = IntervalUnion::points(parse_double_list(grid_points, "--grid-points"));
  }
  StepFuzzySet result = project_to_grid(v, grid, eps);
  ExtReal anchor = cut_hausdorff(*v.space(), grid, v.cut(0.0));
  ExtReal moved = sup_metric(in.elem, FuzzyElem(result));
  s.err << "project: eps=" << format_double(eps)
        << " anchor H(grid, support)=" << to_string(anchor)
        << " d_inf(input, output)=" << to_string(moved) << " (bound eps)\n";
  emit_result_doc(s, elem_space(in.elem), in.name, std::move(result));
  return 0;
}

// ------------------------------------------------------------------ gallery

struct GalleryRow {
  std::string check;
  ordered_json expected;
  ordered_json computed;
  bool pass = false;
};

void row_eq(std::vector<GalleryRow>& rows, const std::string& check,
            const ExtReal& want, const ExtReal& got) {
  rows.push_back({check, ext_json(want), ext_json(got), got == want});
}

std::vector<GalleryRow> gallery_pdr() {
  auto sp = GroundSpace::line();
  BandFuzzySet u(sp, {{IntervalUnion({Interval::closed(1.0, 3.0)}), 0.6},
                      {IntervalUnion({Interval::open(0.0, 1.0)}), 1.0}});
  LevelSetReport r = classify_levels(u);
  std::vector<GalleryRow> rows;
  auto unions_row = [&](const std::string& check, const IntervalUnion& want,
                        const IntervalUnion& got) {
    rows.push_back({check, want.to_text(), got.to_text(), want == got});
  };
  unions_row("D: levels where the cut escapes the closed strict cut",
             IntervalUnion({Interval::point(0.6)}), r.D);
  unions_row("P: levels where the closed strict cut is a proper subset",
             IntervalUnion(), r.P);
  unions_row("F: levels where cut and closed strict cut differ at all",
             IntervalUnion({Interval::open(0.0, 1.0)}), r.F);
  unions_row("P0: levels where the cut family jumps",
             IntervalUnion({Interval::point(0.6)}), r.P0);
  return rows;
}

std::vector<GalleryRow> gallery_remark45(int N) {
  SequenceFamily fam = SequenceFamily::gallery("remark45");
  std::vector<ExtReal> got(N, ExtReal(0.0));
  parallel_for(N, [&](int i) {
    got[i] = metric_report(fam.member(i + 1), fam.limit()).h_end();
  });
  std::vector<GalleryRow> rows;
  for (int n = 1; n <= N; ++n)
    row_eq(rows, "h_end(u_" + std::to_string(n) + ", u)", ExtReal(1.0 / n),
           got[n - 1]);
  auto gam = gamma_residuals(fam, {0.25}, N);
  const GammaResidual& g = gam.front();
  bool inner_ok = true, outer_ok = true;
  ordered_json outer_want = ordered_json::array();
  for (int n = 1; n <= N; ++n) {
    inner_ok = inner_ok && g.inner[n - 1] == ExtReal(0.0);
    ExtReal want(n <= 4 ? 1.0 : 0.0);
    outer_want.push_back(ext_json(want));
    outer_ok = outer_ok && g.outer[n - 1] == want;
  }
  rows.push_back({"level-0.25 residual, strict limit cut into member cuts",
                  "0 for every n", ext_array(g.inner), inner_ok});
  rows.push_back({"level-0.25 residual, member cuts into limit cut",
                  std::move(outer_want), ext_array(g.outer), outer_ok});
  return rows;
}

// Shared by snc and fnc: h_end trajectory at sampled indices with the
// ladder realization slack, plus an exact directed cut gap that stays +inf.
std::vector<GalleryRow> gallery_slow_family(
    const std::string& id, int N, double rate_factor, double gap_level,
    bool gap_limit_into_member, const std::string& gap_text) {
  SequenceFamily fam = SequenceFamily::gallery(id);
  double slack = 2.0 * fam.resolution();
  std::vector<int> idx;
  for (int k : {1, 2, 5, 10, 20, 50})
    if (k <= N) idx.push_back(k);
  if (idx.empty() || idx.back() != N) idx.push_back(N);
  std::vector<ExtReal> got(idx.size(), ExtReal(0.0));
  parallel_for(static_cast<int>(idx.size()), [&](int i) {
    got[i] = metric_report(fam.member(idx[i]), fam.limit()).h_end();
  });
  std::vector<GalleryRow> rows;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    double rate = 1.0 / (rate_factor * idx[i]);
    std::string check = "h_end(u_" + std::to_string(idx[i]) + ", u) <= " +
                        format_double(rate) + " + realization slack " +
                        format_double(slack);
    rows.push_back({check, "<= " + format_double(rate + slack),
                    ext_json(got[i]), le_tol(got[i], ExtReal(rate + slack))});
  }
  if (N >= 50) {
    std::size_t at = 0;
    while (idx[at] != 50) ++at;
    rows.push_back({"h_end(u_50, u) reaches the 0.02 mark (within slack " +
                        format_double(slack) + ")",
                    "< " + format_double(0.02 + slack), ext_json(got[at]),
                    got[at] < ExtReal(0.02 + slack)});
  }
  bool all_inf = true;
  for (int n = 1; n <= N; ++n) {
    CutSet member = fam.member_cut(n, gap_level);
    CutSet lim = fam.limit_cut(gap_level);
    ExtReal gap = gap_limit_into_member
                      ? cut_directed_hausdorff(*fam.space(), lim, member)
                      : cut_directed_hausdorff(*fam.space(), member, lim);
    all_inf = all_inf && !gap.finite();
  }
  rows.push_back({gap_text + " for every n = 1.." + std::to_string(N), "+inf",
                  all_inf ? "+inf" : "finite somewhere", all_inf});
  return rows;
}

std::vector<GalleryRow> gallery_snc(int N) {
  std::vector<GalleryRow> rows = gallery_slow_family(
      "snc", N, 3.0, 1.0 / 3.0, /*gap_limit_into_member=*/true,
      "directed cut gap at level 1/3, limit cut into member cut, = +inf");
  SequenceFamily fam = SequenceFamily::gallery("snc");
  EquiRcCurve curve = equi_rc_modulus(fam, std::min(N, 5), {0.05});
  rows.push_back({"equi-right-continuity modulus at delta=0.05 (witness n=" +
                      std::to_string(curve.witness.front()) + ")",
                  "+inf", ext_json(curve.modulus.front()),
                  !curve.modulus.front().finite()});
  return rows;
}

std::vector<GalleryRow> gallery_fnc(int N) {
  return gallery_slow_family(
      "fnc", N, 1.0, 1.0, /*gap_limit_into_member=*/false,
      "directed cut gap at level 1, member cut into limit cut, = +inf");
}

std::vector<GalleryRow> gallery_snp(int N, double p) {
  SequenceFamily fam = SequenceFamily::gallery("snp");
  std::vector<int> idx;
  for (int k = 1; k <= N; k *= 2) idx.push_back(k);
  std::vector<ExtReal> dp_got(idx.size(), ExtReal(0.0));
  std::vector<ExtReal> hs_got(idx.size(), ExtReal(0.0));
  parallel_for(static_cast<int>(idx.size()), [&](int i) {
    dp_got[i] = dp_via_oracle(fam.space(), fam.member_oracle(idx[i]),
                              fam.limit_oracle(), p, 10000)
                    .value;
    hs_got[i] = metric_report(fam.member(idx[i]), fam.limit()).h_send();
  });
  std::vector<GalleryRow> rows;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    int n = idx[i];
    double want = std::pow(n, 2.0 - 1.0 / p);
    bool ok = dp_got[i].finite() &&
              std::fabs(dp_got[i].value() - want) <= 0.01 * want;
    rows.push_back({"d_p(u_" + std::to_string(n) + ", u) within 1% of n^(2-1/p)",
                    want, ext_json(dp_got[i]), ok});
    rows.push_back({"h_send(u_" + std::to_string(n) + ", u) <= 1/n",
                    "<= " + format_double(1.0 / n), ext_json(hs_got[i]),
                    le_tol(hs_got[i], ExtReal(1.0 / n), 0.0)});
  }
  return rows;
}

std::vector<GalleryRow> gallery_nce(int N) {
  SequenceFamily fam = SequenceFamily::gallery("nce");
  std::vector<ExtReal> send_got(N, ExtReal(0.0));
  std::vector<ExtReal> step_got(N > 1 ? N - 1 : 0, ExtReal(0.0));
  parallel_for(N, [&](int i) {
    send_got[i] = metric_report(fam.member(i + 1), fam.limit()).h_send();
    if (i + 2 <= N)
      step_got[i] = metric_report(fam.member(i + 1), fam.member(i + 2)).d_inf();
  });
  std::vector<GalleryRow> rows;
  for (int n = 1; n <= N; ++n)
    row_eq(rows, "h_send(->u_" + std::to_string(n) + ", w)", ExtReal(1.0 / n),
           send_got[n - 1]);
  bool steps_one = true;
  for (const auto& v : step_got) steps_one = steps_one && v == ExtReal(1.0);
  rows.push_back({"d_inf(u_n, u_{n+1}) = 1 for n = 1.." + std::to_string(N - 1),
                  1.0, ext_array(step_got), steps_one});
  const auto& w = std::get<SendoElement>(fam.limit());
  rows.push_back({"the candidate w is an arrow image", false,
                  is_arrow_image(w), !is_arrow_image(w)});
  SendoElement last = arrow_forward(std::get<StepFuzzySet>(fam.member(N)));
  rows.push_back({"->u_" + std::to_string(N) + " is an arrow image", true,
                  is_arrow_image(last), is_arrow_image(last)});
  return rows;
}

std::vector<GalleryRow> gallery_platform(int N) {
  SequenceFamily fam = SequenceFamily::gallery("platform-fail");
  std::vector<double> levels = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  auto lts = level_decomposition_test(fam, levels, N);
  std::vector<GalleryRow> rows;
  for (const auto& lt : lts) {
    if (std::fabs(lt.alpha - 0.5) < 1e-12) {
      bool all_one = true;
      for (const auto& v : lt.values) all_one = all_one && v == ExtReal(1.0);
      rows.push_back({"H([u_n]_0.5, [u]_0.5) = 1 for every n (0.5 is a jump "
                      "level of the limit)",
                      1.0, ext_json(lt.verdict.tail_max),
                      all_one && lt.alpha_in_p0 && !lt.verdict.vanishes});
    } else {
      rows.push_back({"H([u_n]_" + format_double(lt.alpha) +
                          ", [u]_" + format_double(lt.alpha) + ") tail-vanishes",
                      0.0, ext_json(lt.verdict.tail_max),
                      lt.verdict.vanishes && !lt.alpha_in_p0});
    }
  }
  std::vector<ExtReal> got(N, ExtReal(0.0));
  parallel_for(N, [&](int i) {
    got[i] = metric_report(fam.member(i + 1), fam.limit()).h_end();
  });
  bool bounded = true;
  for (int n = 1; n <= N; ++n) bounded = bounded && le_tol(got[n - 1], ExtReal(1.0 / n));
  rows.push_back({"h_end(u_n, u) <= 1/n for every n = 1.." + std::to_string(N),
                  "<= 1/n", ext_array(got), bounded});
  return rows;
}

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names = {
      "pdr", "remark45", "snc", "fnc", "snp", "nce", "platform-fail"};
  return names;
}

ordered_json run_one_gallery(const std::string& name, std::optional<int> n_opt,
                             double p, bool& all_pass) {
  int n = 0;
  std::vector<GalleryRow> rows;
  if (name == "pdr") {
    rows = gallery_pdr();
  } else if (name == "remark45") {
    n = n_opt.value_or(8);
    rows = gallery_remark45(n);
  } else if (name == "snc") {
    n = n_opt.value_or(50);
    rows = gallery_snc(n);
  } else if (name == "fnc") {
    n = n_opt.value_or(50);
    rows = gallery_fnc(n);
  } else if (name == "snp") {
    n = n_opt.value_or(8);
    rows = gallery_snp(n, p);
  } else if (name == "nce") {
    n = n_opt.value_or(10);
    rows = gallery_nce(n);
  } else if (name == "platform-fail") {
    n = n_opt.value_or(40);
    rows = gallery_platform(n);
  } else {
    std::string known = "all";
    for (const auto& g : gallery_names()) known += ", " + g;
    throw std::invalid_argument("unknown gallery '" + name +
                                "' (known: " + known + ")");
  }
  ordered_json out;
  out["name"] = name;
  ordered_json params;
  if (n > 0) params["n"] = n;
  if (name == "snp") params["p"] = p;
  out["params"] = std::move(params);
  ordered_json jrows = ordered_json::array();
  bool pass = true;
  for (auto& r : rows) {
    ordered_json e;
    e["check"] = r.check;
    e["expected"] = std::move(r.expected);
    e["computed"] = std::move(r.computed);
    e["pass"] = r.pass;
    pass = pass && r.pass;
    jrows.push_back(std::move(e));
  }
  out["rows"] = std::move(jrows);
  out["all_pass"] = pass;
  all_pass = all_pass && pass;
  return out;
}

int cmd_gallery(Session& s, const std::string& name, std::optional<int> n_opt,
                double p) {
  if (p < 1.0) throw std::invalid_argument("--p must be >= 1");
  if (n_opt && *n_opt < 1) throw std::invalid_argument("--n must be >= 1");
  ordered_json rep;
  rep["report"] = "gallery";
  rep["version"] = 1;
  bool all_pass = true;
  if (name == "all") {
    rep["name"] = "all";
    ordered_json parts = ordered_json::array();
    for (const auto& g : gallery_names())
      parts.push_back(run_one_gallery(g, n_opt, p, all_pass));
    rep["galleries"] = std::move(parts);
  } else {
    rep = run_one_gallery(name, n_opt, p, all_pass);
    rep["report"] = "gallery";
    rep["version"] = 1;
    // Reorder so the tag fields lead; nlohmann keeps insertion order, so
    // rebuild with the header first.
    ordered_json fixed;
    fixed["report"] = "gallery";
    fixed["version"] = 1;
    for (auto& [key, value] : rep.items())
      if (key != "report" && key != "version") fixed[key] = std::move(value);
    rep = std::move(fixed);
  }
  rep["all_pass"] = all_pass;
  emit(s.out, rep);
  int checks = 0, good = 0;
  auto count = [&](const ordered_json& g) {
    for (const auto& r : g.at("rows")) {
      ++checks;
      if (r.at("pass").get<bool>()) ++good;
    }
  };
  if (name == "all")
    for (const auto& g : rep.at("galleries")) count(g);
  else
    count(rep);
  s.err << "gallery " << name << ": " << good << "/" << checks
        << " checks pass\n";
  return all_pass ? 0 : 1;
}

}  // namespace

// -------------------------------------------------------------- entry point

int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Session session{in, out, err, "", false};

  // "-#NAME" (a named set read from stdin) would otherwise be parsed as a
  // flag; strip the dash here and let split_operand map "" back to stdin.
  for (std::string& a : args)
    if (a.rfind("-#", 0) == 0) a.erase(0, 1);

  CLI::App app{"metrics, diagnostics and constructions for finitely "
               "represented fuzzy sets over metric spaces"};
  app.name("fuzzmet");
  app.require_subcommand(1);

  std::string v_file;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "check every set in a document against "
                                     "the representation contract");
  validate_cmd->add_option("file", v_file, "document path, or - for stdin")
      ->required();

  std::string d_metric, d_a, d_b;
  double d_p = 2.0;
  CLI::App* dist_cmd = app.add_subcommand(
      "dist", "all metrics between two sets, with the inequality-chain "
              "self-check");
  dist_cmd->add_option("--metric", d_metric, "headline metric")
      ->required()
      ->check(CLI::IsMember({"hend", "hsend", "dinf", "dp"}));
  dist_cmd->add_option("--p", d_p, "exponent for d_p (default 2)");
  dist_cmd->add_option("a", d_a, "left operand FILE[#SET]")->required();
  dist_cmd->add_option("b", d_b, "right operand FILE[#SET]")->required();

  std::string c_file;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "level-set classification D/P/P0/F for every set");
  classify_cmd->add_option("file", c_file, "document path, or - for stdin")
      ->required();

  std::string s_family, s_members, s_range, s_limit, s_levels, s_deltas;
  std::string s_format = "doc";
  int s_ladder = 400;
  double s_p = 2.0;
  CLI::App* seq_cmd = app.add_subcommand(
      "seq", "convergence diagnostics along a sequence of sets");
  seq_cmd->add_option("--family", s_family, "built-in family id");
  seq_cmd->add_option("--members", s_members,
                      "FILE[#COLLECTION] with the sequence members");
  seq_cmd->add_option("--n", s_range, "index range N or A..B (default 20)");
  seq_cmd->add_option("--ladder", s_ladder,
                      "realization levels for built-in families (default 400)")
      ->check(CLI::Range(2, 100000));
  seq_cmd->add_option("--limit", s_limit, "candidate limit FILE[#SET]");
  seq_cmd->add_option("--levels", s_levels, "comma-separated level grid");
  seq_cmd->add_option("--deltas", s_deltas,
                      "comma-separated deltas for the equi-rc modulus");
  seq_cmd->add_option("--p", s_p, "exponent for d_p (default 2)");
  seq_cmd->add_option("--format", s_format, "output format")
      ->check(CLI::IsMember({"csv", "doc"}));

  std::string n_file, n_levels;
  double n_eps = 0.0;
  CLI::App* net_cmd = app.add_subcommand(
      "net", "eps-net certificates for the level-cut unions of a collection");
  net_cmd->add_option("file", n_file, "FILE[#COLLECTION]")->required();
  net_cmd->add_option("--eps", n_eps, "net radius")->required();
  net_cmd->add_option("--levels", n_levels,
                      "comma-separated levels (default 0,0.25,0.5,0.75,1)");

  std::string f_file;
  double f_eps = 0.0;
  CLI::App* flatten_cmd = app.add_subcommand(
      "flatten", "absorb all levels below eps into the level-zero set");
  flatten_cmd->add_option("set", f_file, "FILE[#SET]")->required();
  flatten_cmd->add_option("--eps", f_eps, "level threshold")->required();

  std::string t_file;
  double t_eps = 0.0;
  CLI::App* truncate_cmd = app.add_subcommand(
      "truncate", "freeze all levels below eps at the level-eps cut");
  truncate_cmd->add_option("set", t_file, "FILE[#SET]")->required();
  truncate_cmd->add_option("--eps", t_eps, "level threshold")->required();

  std::string p_file, p_grid, p_points;
  double p_eps = 0.0;
  CLI::App* project_cmd = app.add_subcommand(
      "project", "snap a set onto a finite grid, level by level");
  project_cmd->add_option("set", p_file, "FILE[#SET]")->required();
  project_cmd->add_option("--eps", p_eps, "projection radius")->required();
  project_cmd->add_option("--grid", p_grid,
                          "FILE[#SET] whose level-0 set is the grid");
  project_cmd->add_option("--grid-points", p_points,
                          "comma-separated grid points (line spaces)");

  std::string g_name;
  int g_n = -1;
  double g_p = 2.0;
  CLI::App* gallery_cmd = app.add_subcommand(
      "gallery", "machine-checked reproduction of the worked examples");
  gallery_cmd->add_option("name", g_name, "gallery name, or 'all'")->required();
  gallery_cmd->add_option("--n", g_n, "sequence length / index budget");
  gallery_cmd->add_option("--p", g_p, "exponent for d_p galleries (default 2)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(validate_cmd)) return cmd_validate(session, v_file);
    if (app.got_subcommand(dist_cmd))
      return cmd_dist(session, d_metric, d_p, d_a, d_b);
    if (app.got_subcommand(classify_cmd)) return cmd_classify(session, c_file);
    if (app.got_subcommand(seq_cmd))
      return cmd_seq(session, s_family, s_members, s_range, s_ladder, s_limit,
                     s_levels, s_deltas, s_p, s_format);
    if (app.got_subcommand(net_cmd))
      return cmd_net(session, n_file, n_eps, n_levels);
    if (app.got_subcommand(flatten_cmd))
      return cmd_flatten(session, f_file, f_eps);
    if (app.got_subcommand(truncate_cmd))
      return cmd_truncate(session, t_file, t_eps);
    if (app.got_subcommand(project_cmd))
      return cmd_project(session, p_file, p_eps, p_grid, p_points);
    if (app.got_subcommand(gallery_cmd))
      return cmd_gallery(session, g_name,
                         g_n < 0 ? std::nullopt : std::optional<int>(g_n), g_p);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // unreachable: require_subcommand(1)
}

CliResult run_cli_capture(const std::vector<std::string>& args,
                          const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out, err;
  CliResult r;
  r.exit_code = run_cli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace fuzz
