#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jetmorse/cache.hpp"
#include "jetmorse/chern_ring.hpp"
#include "jetmorse/cone.hpp"
#include "jetmorse/morse.hpp"

namespace jetmorse::cli {

namespace {

using nlohmann::json;

enum class Format { kTable, kJson, kCsv };

// One command's output: the JSON document plus a flat table for the
// human-readable and CSV renderings.
struct Report {
  json doc;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void render(const Report& r, Format f, std::ostream& out) {
  if (f == Format::kJson) {
    out << r.doc.dump(2) << "\n";
    return;
  }
  if (f == Format::kCsv) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_field(r.columns[i]);
    out << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << "\n";
    }
    return;
  }
  std::vector<std::size_t> width(r.columns.size());
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    width[i] = r.columns[i].size();
    for (const auto& row : r.rows) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "  " : "") << cells[i];
      if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size(), ' ');
    }
    out << "\n";
  };
  line(r.columns);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& row : r.rows) line(row);
}

std::string decimal(double v, int digits = 8) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

json weight_json(const WeightVector& a) {
  json arr = json::array();
  for (const auto& v : a.entries()) arr.push_back(v.str());
  return arr;
}

struct CommonOptions {
  bool json = false;
  bool csv = false;
  [[nodiscard]] Format format() const { return json ? Format::kJson : csv ? Format::kCsv : Format::kTable; }
};

// ---- fg ----

struct FgOptions {
  int k = 1;
  std::string engine = "chern";
  std::string convention = "corrected";
  std::string eval;
  std::string cache_dir;
  bool no_cache = false;
};

IntersectionForm compute_form(int k, const std::string& engine, BoundaryConvention conv) {
  if (engine == "chern") {
    if (conv != BoundaryConvention::kCorrected)
      throw std::invalid_argument("the chern engine has no boundary convention; use --engine integral");
    return intersection_polynomials(k);
  }
  return fg_via_integrals(k, conv);
}

int run_fg(const FgOptions& o, Format fmt, std::ostream& out, std::ostream& err) {
  if (o.k < 1) throw std::invalid_argument("--k must be >= 1");
  const BoundaryConvention conv = parse_convention(o.convention);
  std::optional<ResultCache> cache;
  if (!o.no_cache) cache.emplace(o.cache_dir.empty() ? ResultCache::default_directory() : std::filesystem::path(o.cache_dir));

  IntersectionForm form;
  bool cached = false;
  if (o.engine == "both") {
    const IntersectionForm a = compute_form(o.k, "chern", BoundaryConvention::kCorrected);
    const IntersectionForm b = compute_form(o.k, "integral", conv);
    if (auto diff = first_difference(a, b)) {
      err << "engine mismatch at k=" << o.k << " (" << to_string(conv) << " convention): " << *diff << "\n";
      return kCheckFailed;
    }
    if (cache) {
      cache->store(CacheEntry::make(a, BoundaryConvention::kCorrected, "chern"));
      cache->store(CacheEntry::make(b, conv, "integral"));
    }
    form = a;
  } else if (o.engine == "chern" || o.engine == "integral") {
    const BoundaryConvention key = o.engine == "chern" ? BoundaryConvention::kCorrected : conv;
    if (cache) {
      (void)cache->load(o.k, key);  // cross-engine guard
      if (auto e = cache->load_entry(o.k, key, o.engine)) {
        form = e->form();
        cached = true;
      }
    }
    if (!cached) {
      form = compute_form(o.k, o.engine, conv);
      if (cache) cache->store(CacheEntry::make(form, key, o.engine));
    }
  } else {
    throw std::invalid_argument("unknown engine '" + o.engine + "' (chern, integral, both)");
  }

  Report r;
  r.doc = {{"k", o.k}, {"engine", o.engine}, {"convention", std::string(to_string(conv))}, {"cached", cached},
           {"F", form.F.to_string()}, {"G", form.G.to_string()},
           {"F_terms", form.F.to_json()}, {"G_terms", form.G.to_json()}};
  r.columns = {"k", "engine", "F", "G"};
  std::vector<std::string> row{std::to_string(o.k), o.engine, form.F.to_string(), form.G.to_string()};
  if (!o.eval.empty()) {
    const WeightVector a = WeightVector::parse(o.eval);
    if (a.order() != o.k) throw std::invalid_argument("--eval needs exactly k entries");
    const Rational f = form.F.evaluate(a.entries());
    const Rational g = form.G.evaluate(a.entries());
    json ev = {{"weight", weight_json(a)}, {"F", f.str()}, {"G", g.str()}, {"ratio", nullptr}};
    std::string ratio = "undefined";
    if (!g.is_zero()) {
      ev["ratio"] = (f / g).str();
      ratio = (f / g).str();
    }
    r.doc["evaluation"] = ev;
    r.columns.insert(r.columns.end(), {"weight", "F(a)", "G(a)", "F/G"});
    row.insert(row.end(), {a.str(), f.str(), g.str(), ratio});
  }
  r.rows.push_back(std::move(row));
  render(r, fmt, out);
  return kOk;
}

// ---- morse ----

struct MorseCliOptions {
  int k = 0;
  std::string weight;
  std::string model = "ball";
  int qmax = 1;
  std::string tol = "1/1000";
  std::size_t max_boxes = 2'000'000;
};

int run_morse(const MorseCliOptions& o, Format fmt, std::ostream& out, std::ostream&) {
  const SurfaceModel model = SurfaceModel::by_name(o.model);
  const WeightVector a = WeightVector::parse(o.weight);
  if (o.k != 0 && a.order() != o.k)
    throw std::invalid_argument("--weight has " + std::to_string(a.order()) + " entries but --k is " +
                                std::to_string(o.k));
  MorseOptions mo;
  mo.qmax = o.qmax;
  mo.tol = Rational::parse(o.tol);
  mo.max_boxes = o.max_boxes;
  const MorseResult res = restricted_morse_integral(a, model, mo);

  Report r;
  r.doc = {{"k", res.k}, {"weight", weight_json(a)}, {"model", res.model}, {"qmax", res.qmax}};
  std::string value_cell;
  if (res.exact) {
    r.doc["value"] = res.value.str();
    value_cell = res.value.str();
  } else {
    r.doc["value"] = {{"estimate", res.estimate()}, {"error_bound", res.error_bound()},
                      {"lo", res.lo.to_double()}, {"hi", res.hi.to_double()}};
    value_cell = decimal(res.estimate()) + " +/- " + decimal(res.error_bound(), 4);
  }
  std::string volume_cell;
  if (res.volume_lo == res.volume_hi) {
    r.doc["region_volume"] = res.volume_lo.str();
    volume_cell = res.volume_lo.str();
  } else {
    r.doc["region_volume"] = {{"lo", res.volume_lo.to_double()}, {"hi", res.volume_hi.to_double()}};
    volume_cell = "[" + decimal(res.volume_lo.to_double(), 5) + ", " + decimal(res.volume_hi.to_double(), 5) + "]";
  }
  std::string region_cell = "-";
  if (res.k == 2 && res.exact) {
    json bps = json::array(), segs = json::array();
    for (const auto& b : res.breakpoints) bps.push_back(b.str());
    region_cell.clear();
    for (const auto& s : res.region) {
      segs.push_back({s.lo.str(), s.hi.str()});
      region_cell += (region_cell.empty() ? "" : " u ") + std::string("[") + s.lo.short_str() + ", " +
                     s.hi.short_str() + "]";
    }
    if (region_cell.empty()) region_cell = "empty";
    r.doc["breakpoints"] = bps;
    r.doc["region"] = segs;
  }
  if (!res.exact) r.doc["boxes"] = res.boxes;
  r.columns = {"k", "weight", "model", "qmax", "value (c1^2)", "region volume", "region"};
  r.rows.push_back({std::to_string(res.k), a.str(), res.model, std::to_string(res.qmax), value_cell, volume_cell,
                    region_cell});
  render(r, fmt, out);
  return kOk;
}

// ---- mk ----

struct MkCliOptions {
  int k = 1;
  bool table = false;
  OptimizerConfig config;
};

json record_json(const MkRecord& m) {
  return {{"k", m.k},
          {"ratio", m.best_ratio.str()},
          {"ratio_decimal", m.best_ratio.to_double()},
          {"argmax", weight_json(m.argmax)},
          {"certified_lower_bound", m.certified_lower_bound.str()},
          {"lifted", m.lifted},
          {"seeds_used", m.seeds_used}};
}

int run_mk(const MkCliOptions& o, Format fmt, std::ostream& out, std::ostream&) {
  if (o.k < 1) throw std::invalid_argument("--k must be >= 1");
  const auto tab = mk_table(o.k, o.config);
  Report r;
  r.columns = {"k", "ratio", "decimal", "argmax", "certified", "seeds"};
  json arr = json::array();
  for (const auto& m : tab) {
    if (!o.table && m.k != o.k) continue;
    arr.push_back(record_json(m));
    r.rows.push_back({std::to_string(m.k), m.best_ratio.str(), decimal(m.best_ratio.to_double()), m.argmax.str(),
                      m.certified_lower_bound.str() + (m.lifted ? " (lifted)" : ""), std::to_string(m.seeds_used)});
  }
  r.doc = o.table ? arr : arr.at(0);
  render(r, fmt, out);
  return kOk;
}

// ---- check-surface ----

struct SurfaceCliOptions {
  std::string c1sq;
  std::string c2;
  int degree = 0;
  int kmax = 4;
  OptimizerConfig config;
};

int run_check_surface(const SurfaceCliOptions& o, Format fmt, std::ostream& out, std::ostream&) {
  SurfaceInvariants s;
  if (o.degree != 0) {
    if (!o.c1sq.empty() || !o.c2.empty())
      throw std::invalid_argument("give either --hypersurface-degree or --c1sq/--c2, not both");
    s = SurfaceInvariants::from_hypersurface_degree(o.degree);
  } else {
    if (o.c1sq.empty() || o.c2.empty()) throw std::invalid_argument("--c1sq and --c2 are both required");
    s = {Rational::parse(o.c1sq), Rational::parse(o.c2)};
  }
  if (o.kmax < 1) throw std::invalid_argument("--kmax must be >= 1");
  const JetOrderReport rep = jet_order_for_surface(s, o.kmax, o.config);

  Report r;
  r.doc = {{"c1sq", s.c1sq.str()}, {"c2", s.c2.str()}, {"ratio", rep.ratio.str()}, {"kmax", o.kmax},
           {"order", nullptr}, {"witness_weight", nullptr}, {"certified_bound", nullptr}};
  std::string order_cell = "none (ratio " + rep.ratio.short_str() + ")";
  std::string witness_cell = "-", bound_cell = "-";
  if (rep.order) {
    r.doc["order"] = *rep.order;
    r.doc["witness_weight"] = weight_json(*rep.witness);
    r.doc["certified_bound"] = rep.bound->str();
    order_cell = std::to_string(*rep.order);
    witness_cell = rep.witness->str();
    bound_cell = rep.bound->str();
  }
  r.columns = {"c1^2", "c2", "c2/c1^2", "order", "witness", "m_k bound"};
  r.rows.push_back({s.c1sq.short_str(), s.c2.short_str(), rep.ratio.short_str(), order_cell, witness_cell, bound_cell});
  render(r, fmt, out);
  return kOk;
}

// ---- selftest ----

int run_selftest(Format fmt, std::ostream& out, std::ostream&) {
  struct Check {
    std::string name;
    std::function<std::string()> run;  // empty string on success
  };
  auto expect = [](const Rational& got, const Rational& want) {
    return got == want ? std::string() : "got " + got.str() + ", expected " + want.str();
  };
  const std::vector<Check> checks = {
      {"u1^3 = c1^2 - c2",
       [&] {
         const auto f = intersection_polynomials(1);
         const std::vector<Rational> a{Rational(1)};
         return expect(f.F.evaluate(a), Rational(1)) + expect(f.G.evaluate(a), Rational(1));
       }},
      {"u2^4 = -c1^2 + 5 c2 (both engines)",
       [&] {
         std::string msg;
         const std::vector<Rational> a{Rational(0), Rational(1)};
         for (const auto& f : {intersection_polynomials(2), fg_via_integrals(2)})
           msg += expect(f.F.evaluate(a), Rational(-1)) + expect(f.G.evaluate(a), Rational(-5));
         return msg;
       }},
      {"(2u1 + u2)^4 = 39 c1^2 - 27 c2",
       [&] {
         const auto f = intersection_polynomials(2);
         const std::vector<Rational> a{Rational(2), Rational(1)};
         return expect(f.F.evaluate(a), Rational(39)) + expect(f.G.evaluate(a), Rational(27));
       }},
      {"engines agree for k <= 3",
       [&] {
         for (int k = 1; k <= 3; ++k)
           if (auto d = first_difference(intersection_polynomials(k), fg_via_integrals(k)))
             return "k=" + std::to_string(k) + ": " + *d;
         return std::string();
       }},
      {"ball quotient D = 2/9", [&] { return expect(ball_quotient_D(), Rational(2, 9)); }},
      {"morse k=1 (1) = 2/3",
       [&] { return expect(restricted_morse_integral({Rational(1)}, SurfaceModel::ball_quotient()).value, Rational(2, 3)); }},
      {"morse k=2 (0,1) = 8/27",
       [&] {
         return expect(restricted_morse_integral({Rational(0), Rational(1)}, SurfaceModel::ball_quotient()).value,
                       Rational(8, 27));
       }},
  };
  Report r;
  r.columns = {"check", "result", "detail"};
  r.doc = json::array();
  bool all = true;
  for (const auto& c : checks) {
    std::string detail;
    try {
      detail = c.run();
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    const bool pass = detail.empty();
    all = all && pass;
    r.doc.push_back({{"check", c.name}, {"pass", pass}, {"detail", detail}});
    r.rows.push_back({c.name, pass ? "PASS" : "FAIL", detail});
  }
  render(r, fmt, out);
  return all ? kOk : kCheckFailed;
}

void add_optimizer_options(CLI::App* sub, OptimizerConfig& c) {
  sub->add_option("--restarts", c.restarts, "Random restarts besides the canonical seed")->capture_default_str();
  sub->add_option("--seed", c.seed, "Seed for the restart generator")->capture_default_str();
  sub->add_option("--max-iters", c.max_iters, "Coordinate-ascent sweeps per start")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact intersection numbers and Morse integrals for jet towers over surfaces", "jetmorse"};
  app.require_subcommand(1);
  app.fallthrough();
  CommonOptions common;
  auto* fmt_json = app.add_flag("--json", common.json, "JSON output");
  app.add_flag("--csv", common.csv, "CSV output")->excludes(fmt_json);

  FgOptions fg;
  auto* fg_cmd = app.add_subcommand("fg", "Intersection polynomials F_k, G_k");
  fg_cmd->add_option("--k", fg.k, "Jet order")->required();
  fg_cmd->add_option("--engine", fg.engine, "chern | integral | both")->capture_default_str();
  fg_cmd->add_option("--convention", fg.convention, "Boundary convention for the integral engine")
      ->capture_default_str();
  fg_cmd->add_option("--eval", fg.eval, "Evaluate at a weight, e.g. 2,1");
  fg_cmd->add_option("--cache-dir", fg.cache_dir, "Cache directory (default: $JETMORSE_CACHE_DIR)");
  fg_cmd->add_flag("--no-cache", fg.no_cache, "Neither read nor write the cache");

  MorseCliOptions mo;
  auto* morse_cmd = app.add_subcommand("morse", "Restricted Morse integral on a constant-curvature model");
  morse_cmd->add_option("--k", mo.k, "Jet order (checked against the weight length)");
  morse_cmd->add_option("--weight", mo.weight, "Weight a_1,...,a_k")->required();
  morse_cmd->add_option("--model", mo.model, "Surface model")->capture_default_str();
  morse_cmd->add_option("--qmax", mo.qmax, "Largest admitted number of negative eigenvalues")->capture_default_str();
  morse_cmd->add_option("--tol", mo.tol, "Target half-width of the enclosure (k >= 3)")->capture_default_str();
  morse_cmd->add_option("--max-boxes", mo.max_boxes, "Subdivision budget")->capture_default_str();

  MkCliOptions mk;
  auto* mk_cmd = app.add_subcommand("mk", "Lower bound for sup F_k/G_k over the cone");
  mk_cmd->add_option("--k", mk.k, "Jet order")->required();
  mk_cmd->add_flag("--table", mk.table, "Print every order up to k");
  add_optimizer_options(mk_cmd, mk.config);

  SurfaceCliOptions so;
  auto* cs_cmd = app.add_subcommand("check-surface", "Smallest jet order certified for a surface");
  auto* c1 = cs_cmd->add_option("--c1sq", so.c1sq, "c_1^2 (rational)");
  auto* c2 = cs_cmd->add_option("--c2", so.c2, "c_2 (rational)");
  auto* deg = cs_cmd->add_option("--hypersurface-degree", so.degree, "Degree d >= 5 of a smooth surface in P^3");
  deg->excludes(c1)->excludes(c2);
  cs_cmd->add_option("--kmax", so.kmax, "Largest order tried")->capture_default_str();
  add_optimizer_options(cs_cmd, so.config);

  auto* self_cmd = app.add_subcommand("selftest", "Quick consistency checks");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const Format f = common.format();
  try {
    if (fg_cmd->parsed()) return run_fg(fg, f, out, err);
    if (morse_cmd->parsed()) return run_morse(mo, f, out, err);
    if (mk_cmd->parsed()) return run_mk(mk, f, out, err);
    if (cs_cmd->parsed()) return run_check_surface(so, f, out, err);
    if (self_cmd->parsed()) return run_selftest(f, out, err);
  } catch (const QuadratureBudgetError& e) {
    err << "error: " << e.what() << " (achieved half-width " << e.achieved_bound.to_double() << ")\n";
    return kCheckFailed;
  } catch (const CacheError& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace jetmorse::cli
