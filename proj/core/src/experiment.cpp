#include "pcops/experiment.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <iostream>

#include <json.hpp>

#include "format.hpp"
#include "pcops/errors.hpp"
#include "pcops/problems.hpp"
#include "pcops/trace_io.hpp"

namespace pcops {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
using detail::shortest;

constexpr double kReferenceTol = 1e-12;

// ---------------------------------------------------------------------------
// Field access with path-aware diagnostics.

class Doc {
 public:
  explicit Doc(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw ConfigError(path, "field '" + path + "': " + msg, locate(path));
  }

  // 1-based line of the first occurrence of the path's last key, 0 if absent.
  std::size_t locate(const std::string& path) const {
    std::string key = path.substr(path.find_last_of('.') + 1);
    key = key.substr(0, key.find('['));
    if (key.empty()) return 0;
    const auto pos = text_.find("\"" + key + "\"");
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + pos, '\n'));
  }

 private:
  std::string_view text_;
};

class Field {
 public:
  Field(const Doc& doc, const json& j, std::string path) : doc_(&doc), j_(&j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return *j_; }
  [[noreturn]] void fail(const std::string& msg) const { doc_->fail(path_, msg); }

  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

  Field at(const char* key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) doc_->fail(child(key), "required field is missing");
    return Field(*doc_, *it, child(key));
  }

  std::optional<Field> opt(const char* key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end() || it->is_null()) return std::nullopt;
    return Field(*doc_, *it, child(key));
  }

  Field index(std::size_t i) const {
    if (!j_->is_array() || i >= j_->size())
      fail("expected an array with at least " + std::to_string(i + 1) + " entries");
    return Field(*doc_, (*j_)[i], path_ + "[" + std::to_string(i) + "]");
  }

  double number() const {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
  }
  std::uint64_t uint() const {
    if (!j_->is_number_integer() || j_->get<std::int64_t>() < 0) fail("expected a non-negative integer");
    return j_->get<std::uint64_t>();
  }
  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }
  Vector vector() const {
    if (!j_->is_array() || j_->empty()) fail("expected a non-empty array of numbers");
    Vector v(static_cast<Index>(j_->size()));
    for (std::size_t i = 0; i < j_->size(); ++i) {
      if (!(*j_)[i].is_number()) index(i).fail("expected a number");
      v[static_cast<Index>(i)] = (*j_)[i].get<double>();
    }
    return v;
  }
  Matrix matrix() const {
    if (!j_->is_array() || j_->empty()) fail("expected a non-empty array of rows");
    const std::size_t rows = j_->size();
    const Vector first = index(0).vector();
    Matrix m(static_cast<Index>(rows), first.size());
    for (std::size_t r = 0; r < rows; ++r) {
      const Vector row = index(r).vector();
      if (row.size() != first.size()) index(r).fail("row length differs from row 0");
      m.row(static_cast<Index>(r)) = row.transpose();
    }
    return m;
  }

 private:
  std::string child(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const Doc* doc_;
  const json* j_;
  std::string path_;
};

template <class F>
auto guarded(const Field& f, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    f.fail(e.what());
  }
}

// ---------------------------------------------------------------------------
// Problem generators.

struct Problem {
  std::optional<SmoothConvexFn> smooth;
  std::optional<ProxableFn> prox;
  std::optional<ProxableFn> prox_f;
  std::optional<ProxableFn> prox_g;
  std::vector<ConvexSet> sets;
  std::optional<Index> dim;
};

SmoothConvexFn parse_spd_quadratic(const Field& f) {
  const Index n = static_cast<Index>(f.at("n").uint());
  if (n < 1) f.at("n").fail("must be >= 1");
  const std::uint64_t seed = f.has("seed") ? f.at("seed").uint() : 0;
  Vector eig;
  if (auto e = f.opt("eigenvalues")) {
    eig = e->vector();
    if (eig.size() != n) e->fail("expected " + std::to_string(n) + " eigenvalues");
    if ((eig.array() < 0.0).any()) e->fail("eigenvalues must be >= 0");
  } else {
    const Field s = f.at("spectrum");
    const double lo = s.index(0).number();
    const double hi = s.index(1).number();
    if (!(lo >= 0.0 && hi >= lo)) s.fail("spectrum must satisfy 0 <= lo <= hi");
    eig = linear_spectrum(n, lo, hi);
  }
  std::optional<Vector> b;
  if (auto bf = f.opt("b")) {
    b = bf->vector();
    if (b->size() != n) bf->fail("expected length " + std::to_string(n));
  }
  const double L = f.has("L") ? f.at("L").number() : 0.0;
  return guarded(f, [&] { return spd_quadratic(eig, seed, b ? &*b : nullptr, L); });
}

SmoothConvexFn parse_smooth(const Field& f) {
  const std::string kind = f.at("kind").string();
  if (kind == "spd_quadratic") return parse_spd_quadratic(f);
  if (kind == "quadratic") {
    Matrix A = f.at("A").matrix();
    Vector b = f.at("b").vector();
    const double L = f.at("L").number();
    return guarded(f, [&] { return SmoothConvexFn::quadratic(std::move(A), std::move(b), L); });
  }
  f.at("kind").fail("unknown smooth function kind '" + kind + "' (spd_quadratic, quadratic)");
}

Vector broadcast(const Field& f, Index dim, const char* what) {
  if (f.raw().is_number()) {
    if (dim < 1) f.fail(std::string("scalar ") + what + " needs problem.dim");
    return Vector::Constant(dim, f.number());
  }
  return f.vector();
}

ConvexSet parse_set(const Field& f, std::optional<Index> dim) {
  const std::string kind = f.at("kind").string();
  const Index d = dim.value_or(0);
  return guarded(f, [&] {
    if (kind == "box") return ConvexSet::box(broadcast(f.at("lo"), d, "lo"), broadcast(f.at("hi"), d, "hi"));
    if (kind == "halfspace") return ConvexSet::halfspace(f.at("a").vector(), f.at("b").number());
    if (kind == "hyperplane") return ConvexSet::hyperplane(f.at("a").vector(), f.at("b").number());
    if (kind == "ball") {
      Vector c = f.has("center") ? f.at("center").vector() : Vector();
      if (c.size() == 0) {
        if (d < 1) f.fail("ball without center needs problem.dim");
        c = Vector::Zero(d);
      }
      return ConvexSet::ball(std::move(c), f.at("radius").number());
    }
    f.at("kind").fail("unknown set kind '" + kind + "' (box, halfspace, ball, hyperplane)");
  });
}

ProxableFn parse_prox(const Field& f, const Problem& p) {
  const std::string kind = f.at("kind").string();
  return guarded(f, [&] {
    if (kind == "l1") return ProxableFn::l1(f.at("weight").number());
    if (kind == "zero") return ProxableFn::l1(0.0);
    if (kind == "half_norm_sq") return ProxableFn::half_norm_sq();
    if (kind == "indicator") return ProxableFn::indicator(parse_set(f.at("set"), p.dim));
    if (kind == "quadratic") return ProxableFn::quadratic(f.at("A").matrix(), f.at("b").vector());
    if (kind == "smooth") {
      if (!p.smooth) f.fail("'smooth' prox needs problem.smooth");
      return ProxableFn::quadratic(p.smooth->A(), p.smooth->b());
    }
    f.at("kind").fail("unknown prox function kind '" + kind +
                      "' (l1, zero, half_norm_sq, indicator, quadratic, smooth)");
  });
}

void parse_lasso(const Field& f, Problem& p) {
  LassoOptions o;
  o.n = static_cast<Index>(f.at("n").uint());
  o.m = f.has("m") ? static_cast<Index>(f.at("m").uint()) : 2 * o.n;
  o.nnz = f.has("nnz") ? static_cast<Index>(f.at("nnz").uint()) : std::min<Index>(5, o.n);
  if (o.n < 1 || o.m < 1) f.fail("n and m must be >= 1");
  if (o.nnz > o.n) f.at("nnz").fail("must not exceed n");
  if (auto w = f.opt("weight")) o.weight = w->number();
  if (auto w = f.opt("noise")) o.noise = w->number();
  if (auto w = f.opt("seed")) o.seed = w->uint();
  LassoInstance inst = guarded(f, [&] { return lasso(o); });
  p.smooth = inst.smooth;
  p.prox = inst.l1;
  p.prox_f = inst.smooth_prox;
  p.prox_g = inst.l1;
  p.dim = o.n;
}

Problem parse_problem(const Field& f) {
  Problem p;
  if (auto d = f.opt("dim")) {
    p.dim = static_cast<Index>(d->uint());
    if (*p.dim < 1) d->fail("must be >= 1");
  }
  if (auto g = f.opt("generator")) {
    const std::string kind = g->at("kind").string();
    if (kind != "lasso") g->at("kind").fail("unknown generator '" + kind + "' (lasso)");
    parse_lasso(*g, p);
  }
  if (auto s = f.opt("smooth")) {
    p.smooth = parse_smooth(*s);
    p.dim = p.dim.value_or(p.smooth->dim());
  }
  if (auto sets = f.opt("sets")) {
    if (!sets->raw().is_array()) sets->fail("expected an array of sets");
    for (std::size_t i = 0; i < sets->raw().size(); ++i) {
      p.sets.push_back(parse_set(sets->index(i), p.dim));
      p.dim = p.dim.value_or(p.sets.back().dim());
    }
  }
  if (auto q = f.opt("prox")) p.prox = parse_prox(*q, p);
  if (auto q = f.opt("prox_f")) p.prox_f = parse_prox(*q, p);
  if (auto q = f.opt("prox_g")) p.prox_g = parse_prox(*q, p);
  for (const auto* fn : {&p.prox, &p.prox_f, &p.prox_g})
    if (*fn && (*fn)->dim() && !p.dim) p.dim = (*fn)->dim();
  return p;
}

// ---------------------------------------------------------------------------
// Method parsing.

template <class T>
const T& need(const std::optional<T>& v, const Field& method, const char* what) {
  if (!v) method.fail(std::string("this method needs problem.") + what);
  return *v;
}

const ConvexSet& need_set(const Problem& p, std::size_t i, const Field& method) {
  if (p.sets.size() <= i)
    method.fail("this method needs at least " + std::to_string(i + 1) + " entries in problem.sets");
  return p.sets[i];
}

Index need_dim(const Problem& p, const Field& method) {
  if (!p.dim) method.fail("cannot infer the dimension; set problem.dim");
  return *p.dim;
}

double parse_gamma(const Field& m, const SmoothConvexFn& f) {
  if (auto g = m.opt("gamma")) return g->number();
  if (auto g = m.opt("gamma_L")) return g->number() / f.lipschitz();
  return default_gamma(f);
}

double opt_number(const Field& m, const char* key, double fallback) {
  auto v = m.opt(key);
  return v ? v->number() : fallback;
}

std::optional<double> opt_number(const Field& m, const char* key) {
  auto v = m.opt(key);
  if (!v) return std::nullopt;
  return v->number();
}

MethodSpec parse_method(const Field& m, const Problem& p) {
  const std::string kind = m.at("kind").string();
  if (kind == "identity") return method::Identity{need_dim(p, m)};
  if (kind == "gradient_descent") {
    const auto& f = need(p.smooth, m, "smooth");
    return method::GradientDescent{f, parse_gamma(m, f)};
  }
  if (kind == "relaxed_projection")
    return method::RelaxedProjection{need_set(p, 0, m), opt_number(m, "omega", kDefaultOmega)};
  if (kind == "alternating_projections")
    return method::AlternatingProjections{need_set(p, 0, m), need_set(p, 1, m)};
  if (kind == "projected_gd") {
    const auto& f = need(p.smooth, m, "smooth");
    return method::ProjectedGD{need_set(p, 0, m), f, parse_gamma(m, f), opt_number(m, "omega")};
  }
  if (kind == "proximal_point")
    return method::ProximalPoint{need(p.prox, m, "prox"), opt_number(m, "lambda", kDefaultLambda),
                                 need_dim(p, m)};
  if (kind == "relaxed_prox")
    return method::RelaxedProx{need(p.prox, m, "prox"), opt_number(m, "lambda", kDefaultLambda),
                               opt_number(m, "omega", kDefaultOmega), need_dim(p, m)};
  if (kind == "forward_backward") {
    const auto& f = need(p.smooth, m, "smooth");
    return method::ForwardBackward{f, need(p.prox, m, "prox"), parse_gamma(m, f),
                                   opt_number(m, "lambda", kDefaultLambda), opt_number(m, "omega")};
  }
  if (kind == "admm")
    return method::Admm{need(p.prox_f, m, "prox_f"), need(p.prox_g, m, "prox_g"),
                        opt_number(m, "lambda", kDefaultLambda), need_dim(p, m)};
  if (kind == "generalized_admm")
    return method::GeneralizedAdmm{need(p.prox_f, m, "prox_f"), need(p.prox_g, m, "prox_g"),
                                   opt_number(m, "lambda", kDefaultLambda), m.at("alpha").number(),
                                   need_dim(p, m)};
  m.at("kind").fail("unknown method kind '" + kind +
                    "' (identity, gradient_descent, relaxed_projection, alternating_projections, "
                    "projected_gd, proximal_point, relaxed_prox, forward_backward, admm, "
                    "generalized_admm)");
}

struct ProxUse {
  ProxableFn f;
  double lambda;
  Index dim;
};

struct ProxUsesOf {
  std::vector<ProxUse> operator()(const method::ProximalPoint& m) const { return {{m.g, m.lambda, m.dim}}; }
  std::vector<ProxUse> operator()(const method::RelaxedProx& m) const { return {{m.g, m.lambda, m.dim}}; }
  std::vector<ProxUse> operator()(const method::ForwardBackward& m) const {
    return {{m.g, m.lambda, m.f.dim()}};
  }
  std::vector<ProxUse> operator()(const method::Admm& m) const {
    return {{m.f, m.lambda, m.dim}, {m.g, m.lambda, m.dim}};
  }
  std::vector<ProxUse> operator()(const method::GeneralizedAdmm& m) const {
    return {{m.f, m.lambda, m.dim}, {m.g, m.lambda, m.dim}};
  }
  std::vector<ProxUse> operator()(const auto&) const { return {}; }
};

std::vector<ProxUse> prox_uses(const MethodSpec& spec) { return std::visit(ProxUsesOf{}, spec); }

std::string canonical_check(const Field& f) {
  const std::string name = f.string();
  static const std::vector<std::pair<std::string, std::string>> aliases = {
      {"lemma1", claim::kMonotoneDecrease},
      {"thm2", claim::kRateBound},
      {"thm4", "small-o"},
      {claim::kSmallOHardBound, "small-o"},
      {claim::kSmallOTrend, "small-o"},
  };
  for (const auto& [alias, canonical] : aliases)
    if (name == alias) return canonical;
  const auto& known = known_check_names();
  if (std::find(known.begin(), known.end(), name) != known.end()) return name;
  std::string list;
  for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
  f.fail("unknown claim id '" + name + "' (" + list + ")");
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// A run that ended on an exact fixed point would have produced zero residuals
// for every remaining step; materialise them so length preconditions hold.
IterationTrace padded_to_request(const IterationTrace& trace) {
  IterationTrace t = trace;
  if (t.residual_sq.empty() || t.residual_sq.back() != 0.0) return t;
  while (t.iterations() < t.requested) {
    t.residual_sq.push_back(0.0);
    t.points.push_back(t.points.back());
    if (t.dist_to_ref) t.dist_to_ref->push_back(t.dist_to_ref->back());
  }
  return t;
}

ClaimCheck failed_check(const std::string& id, std::uint64_t seed, const std::string& why) {
  return make_check(id, std::numeric_limits<double>::infinity(), 0.0, 0, seed, why);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(std::string_view text, std::string name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line =
        1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ConfigError("", std::string("malformed JSON: ") + e.what(), line);
  }
  const Doc doc(text);
  const Field root(doc, j, "");
  if (!j.is_object()) root.fail("top level must be a JSON object");

  ExperimentConfig c;
  c.name = std::move(name);
  if (auto n = root.opt("name")) c.name = n->string();
  c.config_hash = fnv1a_hex(text);

  const Problem problem = root.has("problem") ? parse_problem(root.at("problem")) : Problem{};
  const Field m = root.at("method");
  c.method = parse_method(m, problem);
  // Building enforces every parameter window.
  const OperatorExpr T = guarded(m, [&] { return build(c.method); });

  if (auto r = root.opt("run")) {
    if (auto n = r->opt("N")) c.iterations = n->uint();
    if (c.iterations < 1) r->at("N").fail("must be >= 1");
    if (auto s = r->opt("stop_tol")) c.stop_tol = s->number();
    if (!(c.stop_tol >= 0.0)) r->at("stop_tol").fail("must be >= 0");
    if (auto s = r->opt("seed")) c.seed = s->uint();
  }

  if (auto s = root.opt("start")) {
    if (s->raw().is_array()) {
      Vector x0 = s->vector();
      if (x0.size() != T.dim())
        s->fail("has dimension " + std::to_string(x0.size()) + ", method " + std::to_string(T.dim()));
      c.start = guarded(*s, [&] { return Point(std::move(x0)); });
    } else {
      RandomStart rs;
      if (auto rad = s->opt("radius")) rs.radius = rad->number();
      if (!(rs.radius > 0.0)) s->fail("radius must be > 0");
      c.start = rs;
    }
  }

  if (auto checks = root.opt("checks")) {
    if (!checks->raw().is_array()) checks->fail("expected an array of claim ids");
    for (std::size_t i = 0; i < checks->raw().size(); ++i) {
      const Field cf = checks->index(i);
      std::string id = canonical_check(cf);
      if (id == claim::kProxInclusion && prox_uses(c.method).empty())
        cf.fail("prox-inclusion needs a method built from proximal maps");
      if (id == claim::kNuEstimate || id == claim::kDefinition || id == claim::kMonotoneDecrease ||
          id == claim::kRateBound || id == "small-o") {
        if (!T.certificate().is_averaged_family())
          cf.fail("the method's certificate " + T.certificate().describe() + " carries no nu");
      }
      if (std::find(c.checks.begin(), c.checks.end(), id) == c.checks.end()) c.checks.push_back(id);
    }
  }
  if (auto p = root.opt("pairs")) c.pairs = p->uint();
  if (auto p = root.opt("samples")) c.samples = p->uint();
  if (c.pairs < 1) root.at("pairs").fail("must be >= 1");
  if (c.samples < 1) root.at("samples").fail("must be >= 1");

  if (auto o = root.opt("output")) {
    if (auto d = o->opt("dir")) c.output_dir = d->string();
    if (auto fm = o->opt("formats")) {
      if (!fm->raw().is_array()) fm->fail("expected an array of formats");
      c.write_csv = c.write_json = false;
      for (std::size_t i = 0; i < fm->raw().size(); ++i) {
        const std::string f = fm->index(i).string();
        if (f == "csv") c.write_csv = true;
        else if (f == "json") c.write_json = true;
        else fm->index(i).fail("unknown format '" + f + "' (csv, json)");
      }
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const IoError& e) {
    throw ConfigError("", e.what());
  }
  return parse_config(text, path.stem().string());
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& config, const RunOptions& options) {
  if (options.out_dir) return *options.out_dir;
  if (config.output_dir) return *config.output_dir;
  if (const char* env = std::getenv("PCOPS_OUT"); env && *env) return env;
  return "pcops_out";
}

int status_for(const VerificationReport& report) {
  return report.all_passed() ? exit_status::kOk : exit_status::kCheckFailed;
}

ExperimentResult execute(const ExperimentConfig& config, const RunOptions& options) {
  const std::uint64_t seed = options.seed.value_or(config.seed);
  const OperatorExpr T = build(config.method);

  ExperimentResult res;
  res.certificate = T.certificate();
  res.method = describe(config.method);

  const Point x0 = std::visit(
      [&](const auto& s) -> Point {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Point>) {
          return s;
        } else {
          return Point(GaussianSampler(T.dim(), seed, s.radius).next());
        }
      },
      config.start);

  res.trace = iterate(T, x0, config.iterations, config.stop_tol, seed);
  if (config.stop_tol == 0.0) res.trace = padded_to_request(res.trace);
  res.trace.method = res.method;

  std::string ref_failure;
  try {
    res.reference = find_fixed_point(T, x0, kReferenceTol);
    attach_reference(res.trace, res.reference->point);
  } catch (const NoConvergenceError& e) {
    ref_failure = e.what();
  } catch (const CertError& e) {
    ref_failure = e.what();
  }

  VerificationReport& report = res.report;
  report.config_hash = config.config_hash;
  report.seed = seed;
  report.build_id = build_identifier();

  const IterationTrace checked = padded_to_request(res.trace);
  const double nu = T.certificate().is_averaged_family() ? T.certificate().nu() : 0.0;
  const std::uint64_t pair_seed = seed + 1;
  const std::uint64_t prox_seed = seed + 2;

  for (const std::string& id : config.checks) {
    try {
      if (id == claim::kDefinition) {
        report.checks.push_back(check_definition(T, nu, config.pairs, pair_seed));
      } else if (id == claim::kNuEstimate) {
        report.checks.push_back(check_nu_estimate(T, config.pairs, pair_seed));
      } else if (id == claim::kMonotoneDecrease) {
        report.checks.push_back(check_monotone_decrease(checked, nu));
      } else if (id == claim::kRateBound) {
        if (!res.reference)
          report.checks.push_back(failed_check(id, seed, "no fixed-point reference: " + ref_failure));
        else
          report.checks.push_back(check_rate_bound(checked, nu, res.reference));
      } else if (id == "small-o") {
        if (!res.reference) {
          report.checks.push_back(
              failed_check(claim::kSmallOHardBound, seed, "no fixed-point reference: " + ref_failure));
        } else {
          SmallOCheck so = check_small_o_trend(checked, nu, res.reference);
          report.checks.push_back(std::move(so.hard_bound));
          if (so.trend) report.checks.push_back(std::move(*so.trend));
        }
      } else if (id == claim::kProxInclusion) {
        for (const ProxUse& u : prox_uses(config.method))
          report.checks.push_back(check_prox_inclusion(u.f, u.lambda, u.dim, config.samples, prox_seed));
      }
    } catch (const InputError& e) {
      report.checks.push_back(failed_check(id, seed, e.what()));
    }
  }
  res.status = status_for(report);

  const std::filesystem::path dir = resolve_output_dir(config, options);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  if (config.write_csv) {
    res.written.push_back(dir / (config.name + ".trace.csv"));
    emit_trace(res.trace, res.written.back(), TraceFormat::Csv);
  }
  if (config.write_json) {
    res.written.push_back(dir / (config.name + ".trace.json"));
    emit_trace(res.trace, res.written.back(), TraceFormat::Json);
  }
  res.written.push_back(dir / (config.name + ".report.json"));
  const std::string stamp = options.clock ? options.clock() : utc_now();
  write_text_file(res.written.back(), report_to_json(report, res, stamp));
  return res;
}

std::string report_to_json(const VerificationReport& report, const ExperimentResult& result,
                           std::string_view generated_at) {
  ojson j;
  j["generated_at"] = std::string(generated_at);
  j["provenance"] = {{"config_hash", report.config_hash},
                     {"seed", report.seed},
                     {"build", report.build_id}};
  j["method"] = result.method;
  j["certificate"] = result.certificate.describe();
  if (result.certificate.is_averaged_family() && !result.certificate.is_identity())
    j["certified_nu"] = result.certificate.nu();
  else
    j["certified_nu"] = nullptr;
  if (result.reference)
    j["reference"] = {{"residual", result.reference->residual},
                      {"iterations", result.reference->iterations}};
  else
    j["reference"] = nullptr;
  j["iterations"] = result.trace.iterations();
  j["summary"] = {{"passed", report.passed_count()},
                  {"failed", report.failed_count()},
                  {"total", report.checks.size()}};
  ojson checks = ojson::array();
  for (const ClaimCheck& c : report.checks) {
    ojson cj;
    cj["claim_id"] = c.claim_id;
    cj["passed"] = c.passed;
    cj["worst_residual"] = c.worst_residual;
    cj["tolerance"] = c.tolerance;
    cj["samples"] = c.samples;
    cj["seed"] = c.seed;
    cj["heuristic"] = c.heuristic;
    cj["context"] = c.context;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

int run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  std::ostream& out = options.out ? *options.out : std::cout;
  std::ostream& err = options.err ? *options.err : std::cerr;
  try {
    const ExperimentResult res = execute(config, options);
    if (!options.quiet) {
      out << res.method << "  " << res.certificate.describe() << "  iterations="
          << res.trace.iterations() << "\n";
      for (const ClaimCheck& c : res.report.checks)
        out << (c.passed ? "PASS " : "FAIL ") << c.claim_id << (c.heuristic ? " (heuristic)" : "")
            << "  worst=" << shortest(c.worst_residual) << "  tol=" << shortest(c.tolerance)
            << "  samples=" << c.samples << "\n";
      out << res.report.passed_count() << "/" << res.report.checks.size() << " checks passed\n";
    }
    return res.status;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return exit_status::kNumericError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return exit_status::kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_status::kConfigError;
  }
}

int run_experiment_file(const std::filesystem::path& path, const RunOptions& options) {
  std::ostream& err = options.err ? *options.err : std::cerr;
  ExperimentConfig config;
  try {
    config = load_config(path);
  } catch (const ConfigError& e) {
    err << path.string();
    if (e.line()) err << ":" << e.line();
    err << ": " << e.what() << "\n";
    return exit_status::kConfigError;
  }
  return run_experiment(config, options);
}

}  // namespace pcops
