#include "tcurves/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

#include "tcurves/errors.hpp"

namespace tcurves {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Ge: return ">=";
    case Relation::Gt: return ">";
    case Relation::Le: return "<=";
    case Relation::Lt: return "<";
    default: return "=";
  }
}

Relation parse_relation(std::string_view text) {
  if (text == ">=") return Relation::Ge;
  if (text == ">") return Relation::Gt;
  if (text == "<=") return Relation::Le;
  if (text == "<") return Relation::Lt;
  if (text == "=" || text == "==") return Relation::Eq;
  throw InputError("unknown relation '" + std::string(text) + "'");
}

bool SemialgebraicSet::has_strict() const {
  return std::any_of(constraints.begin(), constraints.end(),
                     [](const Constraint& c) { return c.rel == Relation::Gt || c.rel == Relation::Lt; });
}

SemialgebraicSet set_from_json(const Json& j) {
  try {
    SemialgebraicSet s;
    s.variables = VarList(j.at("variables").get<std::vector<std::string>>());
    for (const auto& c : j.at("constraints"))
      s.constraints.push_back({parse_polynomial(c.at("poly").get<std::string>(), s.variables),
                               parse_relation(c.at("rel").get<std::string>())});
    if (j.contains("label")) s.label = j.at("label").get<std::string>();
    if (s.constraints.empty()) throw InputError("a set needs at least one constraint");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed set description: ") + e.what());
  }
}

Json to_json(const SemialgebraicSet& s) {
  Json j;
  j["variables"] = s.variables.names();
  j["constraints"] = Json::array();
  for (const auto& c : s.constraints) j["constraints"].push_back({{"poly", c.poly.to_string()}, {"rel", to_string(c.rel)}});
  if (!s.label.empty()) j["label"] = s.label;
  return j;
}

SemialgebraicSet load_set(const std::string& path) { return set_from_json(read_json_file(path)); }

NumPoly::NumPoly(const Polynomial& p) : nvars_(p.nvars()) {
  for (const auto& [e, c] : p.terms()) {
    terms_.push_back({c.get_d(), e});
    for (auto v : e) max_exp_ = std::max(max_exp_, v);
  }
}

NumPoly NumPoly::combine(const Polynomial& p, const Polynomial& q, double t) {
  NumPoly a(p), b(q);
  for (auto& term : b.terms_) term.coeff *= t;
  a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
  a.max_exp_ = std::max(a.max_exp_, b.max_exp_);
  return a;
}

namespace {

thread_local std::vector<double> powers_buf;

void fill_powers(const std::vector<double>& x, unsigned max_exp) {
  std::size_t stride = max_exp + 1;
  powers_buf.assign(x.size() * stride, 1.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (unsigned k = 1; k <= max_exp; ++k) powers_buf[i * stride + k] = powers_buf[i * stride + k - 1] * x[i];
}

}  // namespace

double NumPoly::eval(const std::vector<double>& x, double* scale) const {
  fill_powers(x, max_exp_);
  std::size_t stride = max_exp_ + 1;
  double sum = 0, mag = 0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i) v *= powers_buf[i * stride + t.exp[i]];
    sum += v;
    mag += std::abs(v);
  }
  if (scale) *scale = mag;
  return sum;
}

double NumPoly::eval_grad(const std::vector<double>& x, std::vector<double>& grad, double* scale) const {
  fill_powers(x, max_exp_);
  std::size_t stride = max_exp_ + 1;
  grad.assign(nvars_, 0.0);
  double sum = 0, mag = 0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i) v *= powers_buf[i * stride + t.exp[i]];
    sum += v;
    mag += std::abs(v);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.exp[i] == 0) continue;
      double d = t.coeff * t.exp[i];
      for (std::size_t k = 0; k < nvars_; ++k) d *= powers_buf[k * stride + (k == i ? t.exp[k] - 1 : t.exp[k])];
      grad[i] += d;
    }
  }
  if (scale) *scale = mag;
  return sum;
}

namespace {

constexpr double kIneqTol = 1e-12;
constexpr double kEqTol = 1e-9;

// Signed slack: >= 0 inside (up to tolerance).
double slack(const NumConstraint& c, double v, double scale) {
  double tol = (c.rel == Relation::Eq ? kEqTol : kIneqTol) * scale;
  switch (c.rel) {
    case Relation::Ge:
    case Relation::Gt: return v + tol;
    case Relation::Le:
    case Relation::Lt: return -v + tol;
    default: return tol - std::abs(v);
  }
}

bool feasible(const std::vector<NumConstraint>& cs, const std::vector<double>& x) {
  for (const auto& c : cs) {
    double scale = 0, v = c.poly.eval(x, &scale);
    if (!(slack(c, v, scale) >= 0)) return false;
  }
  return true;
}

double norm(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

bool to_shell(std::vector<double>& x, double r) {
  double n = norm(x);
  if (!(n > 0) || !std::isfinite(n)) return false;
  for (double& v : x) v *= r / n;
  return true;
}

std::vector<double> random_direction(std::mt19937_64& rng, std::size_t n, double r) {
  std::normal_distribution<double> gauss;
  std::vector<double> x(n);
  do {
    for (double& v : x) v = gauss(rng);
  } while (!to_shell(x, r));
  return x;
}

// Newton steps along the sphere toward the most violated constraint.
bool project(const std::vector<NumConstraint>& cs, std::vector<double>& x, double r, std::mt19937_64& rng) {
  std::vector<double> grad, best_grad;
  const std::size_t n = x.size();
  for (int iter = 0; iter < 300; ++iter) {
    double worst = 0, best_v = 0;
    bool any = false;
    for (const auto& c : cs) {
      double scale = 0, v = c.poly.eval_grad(x, grad, &scale);
      if (!std::isfinite(v)) return false;
      if (slack(c, v, scale) >= 0) continue;
      // Tangential gradient.
      double radial = 0;
      for (std::size_t i = 0; i < n; ++i) radial += grad[i] * x[i];
      radial /= r * r;
      for (std::size_t i = 0; i < n; ++i) grad[i] -= radial * x[i];
      double gn = norm(grad);
      double dist = gn > 0 ? std::abs(v) / gn : std::numeric_limits<double>::infinity();
      if (!any || dist > worst) {
        worst = dist;
        best_v = v;
        best_grad = grad;
        any = true;
      }
    }
    if (!any) return true;
    double g2 = 0;
    for (double v : best_grad) g2 += v * v;
    if (!(g2 > 0) || !std::isfinite(worst)) {
      x = random_direction(rng, n, r);
      continue;
    }
    double step = std::min(1.0, 0.5 * r / worst);
    for (std::size_t i = 0; i < n; ++i) x[i] -= step * best_v * best_grad[i] / g2;
    if (!to_shell(x, r)) return false;
  }
  return feasible(cs, x);
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// Greedy farthest-point subset.
std::vector<std::vector<double>> spread_out(const std::vector<std::vector<double>>& pts, std::size_t k) {
  std::vector<std::vector<double>> chosen;
  if (pts.empty()) return chosen;
  std::vector<double> dist(pts.size(), std::numeric_limits<double>::infinity());
  std::size_t next = 0;
  while (chosen.size() < k) {
    chosen.push_back(pts[next]);
    double far = -1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      dist[i] = std::min(dist[i], sq_dist(pts[i], chosen.back()));
      if (dist[i] > far) {
        far = dist[i];
        next = i;
      }
    }
    if (far <= 0) break;
  }
  return chosen;
}

}  // namespace

ShellSample sample(const std::vector<NumConstraint>& cs, std::size_t nvars, double radius, std::uint64_t seed,
                   const SamplerConfig& config) {
  if (!(radius > 0)) throw InputError("sampling radius must be positive");
  if (config.count == 0) throw InputError("sample count must be positive");
  ShellSample out;
  out.radius = radius;
  std::mt19937_64 rng(seed);
  const std::size_t budget = config.count * config.retry_factor;
  while (out.points.size() < config.count && out.attempts < budget) {
    ++out.attempts;
    auto x = random_direction(rng, nvars, radius);
    if (feasible(cs, x)) out.points.push_back(std::move(x));
  }
  out.rejection_hits = out.points.size();
  if (out.points.size() < config.count && config.guided) {
    out.guided = true;
    std::vector<std::vector<double>> seeds = out.points;
    const std::size_t starts = std::max<std::size_t>(64, config.count / 10);
    for (std::size_t i = 0; i < starts && seeds.size() < 4 * starts; ++i) {
      auto x = random_direction(rng, nvars, radius);
      if (project(cs, x, radius, rng)) seeds.push_back(std::move(x));
    }
    auto chains = spread_out(seeds, 32);
    if (!chains.empty()) {
      std::vector<double> sigma(chains.size(), 0.1);
      std::normal_distribution<double> gauss;
      std::size_t proposals = 0;
      for (std::size_t i = out.points.size(); i < seeds.size() && out.points.size() < config.count; ++i)
        out.points.push_back(seeds[i]);
      std::size_t k = 0;
      while (out.points.size() < config.count && proposals < budget) {
        ++proposals;
        auto& p = chains[k];
        std::vector<double> q = p;
        for (double& v : q) v += sigma[k] * radius * gauss(rng);
        if (to_shell(q, radius) && feasible(cs, q)) {
          p = q;
          out.points.push_back(std::move(q));
          sigma[k] = std::min(1.0, sigma[k] * 1.5);
        } else {
          sigma[k] = std::max(1e-15, sigma[k] / 2);
        }
        k = (k + 1) % chains.size();
      }
      out.attempts += proposals;
    }
  }
  if (out.points.empty()) {
    out.diagnostic = "empty shell";
  } else if (out.points.size() < config.min_hits) {
    out.diagnostic = "under-sampled shell";
  }
  return out;
}

namespace {

std::vector<NumConstraint> compile(const SemialgebraicSet& set) {
  std::vector<NumConstraint> cs;
  for (const auto& c : set.constraints) cs.push_back({NumPoly(c.poly), c.rel});
  return cs;
}

struct Fit {
  double slope = 0, stderr_ = 0;
};

Fit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  double n = static_cast<double>(xs.size()), mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  Fit fit;
  fit.slope = sxy / sxx;
  if (xs.size() > 2) {
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double r = ys[i] - my - fit.slope * (xs[i] - mx);
      ss += r * r;
    }
    fit.stderr_ = std::sqrt(ss / (n - 2) / sxx);
  }
  return fit;
}

// Largest |f| over the hits, improved by feasible hill-climbing from the best few.
double shell_max(const std::vector<NumConstraint>& cs, const NumPoly& f, const ShellSample& s, std::uint64_t seed) {
  if (s.points.empty()) return 0;
  std::vector<std::pair<double, std::size_t>> vals;
  vals.reserve(s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) vals.emplace_back(std::abs(f.eval(s.points[i])), i);
  std::size_t top = std::min<std::size_t>(8, vals.size());
  std::partial_sort(vals.begin(), vals.begin() + static_cast<long>(top), vals.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
  double best = vals.front().first;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (std::size_t k = 0; k < top; ++k) {
    std::vector<double> p = s.points[vals[k].second];
    double v = vals[k].first, sigma = 0.05;
    for (int it = 0; it < 200; ++it) {
      std::vector<double> q = p;
      for (double& c : q) c += sigma * s.radius * gauss(rng);
      double fq = 0;
      if (to_shell(q, s.radius) && (fq = std::abs(f.eval(q))) > v && feasible(cs, q)) {
        p = std::move(q);
        v = fq;
        sigma = std::min(0.5, sigma * 1.5);
      } else {
        sigma = std::max(1e-15, sigma / 2);
      }
    }
    best = std::max(best, v);
  }
  return best;
}

std::vector<GrowthEstimate> estimate_on(const std::vector<NumConstraint>& cs, std::size_t nvars, bool strict,
                                        const std::vector<Polynomial>& fs, const OracleConfig& config) {
  std::vector<double> radii = config.radii.empty() ? default_radii(config.anchor) : config.radii;
  if (radii.size() < 2) throw InputError("at least two radii are needed");
  const long nshell = static_cast<long>(radii.size());
  std::vector<NumPoly> nf;
  for (const auto& f : fs) {
    if (f.nvars() != nvars) throw InputError("polynomial and set use different variables");
    nf.emplace_back(f);
  }
  std::vector<ShellSample> samples(radii.size());
  std::vector<std::vector<double>> maxima(radii.size(), std::vector<double>(fs.size(), 0.0));
  std::vector<std::exception_ptr> errors(radii.size());
  auto work = [&](long i) {
    try {
      std::uint64_t s = config.seed ^ static_cast<std::uint64_t>(i);
      samples[i] = sample(cs, nvars, radii[i], s, config.sampler);
      for (std::size_t k = 0; k < nf.size(); ++k) maxima[i][k] = shell_max(cs, nf[k], samples[i], s + 0x9e3779b97f4a7c15ULL * (k + 1));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (config.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < nshell; ++i) work(i);
  } else {
    for (long i = 0; i < nshell; ++i) work(i);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<GrowthEstimate> out(fs.size());
  for (std::size_t k = 0; k < fs.size(); ++k) {
    GrowthEstimate& est = out[k];
    if (strict) est.diagnostics.push_back("strict inequalities sampled as their closures");
    std::vector<double> xs, ys;
    std::size_t empty = 0, vanish = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const ShellSample& s = samples[i];
      ShellResult sr{radii[i], s.points.size(), s.guided, maxima[i][k], s.diagnostic};
      if (s.points.size() < config.sampler.min_hits) est.reliable = false;
      if (s.points.empty()) {
        ++empty;
      } else if (!(sr.max_abs > 0)) {
        ++vanish;
        if (sr.diagnostic.empty()) sr.diagnostic = "polynomial vanishes at every hit";
      } else {
        xs.push_back(std::log10(radii[i]));
        ys.push_back(std::log10(sr.max_abs));
      }
      est.shells.push_back(std::move(sr));
    }
    if (std::any_of(samples.begin(), samples.end(), [](const ShellSample& s) { return s.guided; }))
      est.diagnostics.push_back("guided sampling used on thin shells");
    if (empty == radii.size()) {
      est.empty = true;
      est.reliable = false;
      est.diagnostics.push_back("set appears empty at every radius");
    } else if (xs.size() < 2) {
      est.vanishes = vanish > 0;
      est.reliable = false;
      est.diagnostics.push_back("too few shells with nonzero values to fit a slope");
    } else {
      Fit fit = least_squares(xs, ys);
      est.slope = fit.slope;
      est.stderr_ = fit.stderr_;
      if (empty > 0) est.diagnostics.push_back("some shells are empty");
    }
  }
  return out;
}

}  // namespace

ShellSample sample(const SemialgebraicSet& set, double radius, std::uint64_t seed, const SamplerConfig& config) {
  return sample(compile(set), set.variables.size(), radius, seed, config);
}

std::vector<double> default_radii(Anchor anchor) {
  std::vector<double> r;
  for (int k = 0; k <= 8; ++k) r.push_back(std::pow(10.0, anchor == Anchor::Origin ? -1.0 - k / 2.0 : 1.0 + k / 2.0));
  return r;
}

std::vector<GrowthEstimate> estimate_exponents(const SemialgebraicSet& set, const std::vector<Polynomial>& fs,
                                               const OracleConfig& config) {
  return estimate_on(compile(set), set.variables.size(), set.has_strict(), fs, config);
}

GrowthEstimate estimate_exponent(const SemialgebraicSet& set, const Polynomial& f, const OracleConfig& config) {
  return estimate_exponents(set, {f}, config).front();
}

std::vector<double> default_probe_schedule(Anchor anchor, std::size_t count) {
  std::vector<double> ts;
  for (std::size_t k = 0; k < count; ++k) {
    double e = 1.0 + static_cast<double>(k) / 2.0;
    ts.push_back(std::pow(10.0, anchor == Anchor::Origin ? -e : e));
  }
  return ts;
}

GrowthEstimate probe_curve(const Branch& branch, const Polynomial& f, const std::vector<double>& ts) {
  if (ts.size() < 2) throw InputError("at least two parameter values are needed");
  for (const auto& c : branch.coordinates)
    if (!c.params().empty()) throw InputError("probe_curve needs a branch without parameters");
  if (f.nvars() != branch.coordinates.size()) throw InputError("polynomial and branch dimensions differ");
  GrowthEstimate est;
  if (compose(f, branch.coordinates).is_zero()) {
    est.vanishes = true;
    est.diagnostics.push_back("polynomial vanishes identically along the branch");
    return est;
  }
  NumPoly nf(f);
  std::vector<double> xs, ys;
  for (double t : ts) {
    if (!(t > 0)) throw InputError("parameter values must be positive");
    std::vector<double> x;
    for (const auto& c : branch.coordinates) {
      double v = 0;
      for (const auto& [k, a] : c.terms())
        v += a.constant_value().get_d() * std::pow(t, static_cast<double>(k) / c.ramification());
      x.push_back(v);
    }
    double fx = std::abs(nf.eval(x)), nx = norm(x);
    ShellResult sr{nx, 1, false, fx, ""};
    if (fx > 0 && nx > 0) {
      xs.push_back(std::log10(nx));
      ys.push_back(std::log10(fx));
    } else {
      sr.diagnostic = "zero value";
    }
    est.shells.push_back(sr);
  }
  if (xs.size() < 2) {
    est.reliable = false;
    return est;
  }
  Fit fit = least_squares(xs, ys);
  est.slope = fit.slope;
  est.stderr_ = fit.stderr_;
  return est;
}

SweepConfig sweep_from_json(const Json& j) {
  try {
    SweepConfig c;
    c.variables = VarList(j.at("variables").get<std::vector<std::string>>());
    for (const auto& s : j.at("f")) c.f.push_back(parse_polynomial(s.get<std::string>(), c.variables));
    for (const auto& s : j.at("g")) c.g.push_back(parse_polynomial(s.get<std::string>(), c.variables));
    if (c.f.size() != c.g.size() || c.f.empty()) throw InputError("f and g must be nonempty and of equal length");
    c.rel = parse_relation(j.value("rel", std::string(">=")));
    c.grid = j.at("grid").get<std::vector<std::vector<double>>>();
    for (const auto& t : c.grid)
      if (t.size() != c.f.size()) throw InputError("grid points must have one value per component of f");
    if (c.grid.empty()) throw InputError("empty parameter grid");
    c.oracle.anchor = parse_anchor(j.value("at", std::string("infinity")));
    if (j.contains("probes")) {
      for (const auto& s : j.at("probes")) c.probes.push_back(parse_polynomial(s.get<std::string>(), c.variables));
    } else {
      unsigned d = j.value("degree", 1u);
      for (const auto& e : monomials_up_to(c.variables.size(), d))
        if (total_degree(e) > 0) c.probes.push_back(Polynomial::monomial(c.variables, e, 1));
    }
    c.tolerance = j.value("tolerance", 0.25);
    c.oracle.seed = j.value("seed", std::uint64_t{42});
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed sweep description: ") + e.what());
  }
}

SweepReport stability_sweep(const SweepConfig& config) {
  SweepReport report;
  bool strict = config.rel == Relation::Gt || config.rel == Relation::Lt;
  for (const auto& t : config.grid) {
    std::vector<NumConstraint> cs;
    for (std::size_t i = 0; i < config.f.size(); ++i) cs.push_back({NumPoly::combine(config.f[i], config.g[i], t[i]), config.rel});
    report.cells.push_back({t, estimate_on(cs, config.variables.size(), strict, config.probes, config.oracle)});
  }
  for (std::size_t i = 0; i + 1 < report.cells.size(); ++i) {
    for (std::size_t k = 0; k < config.probes.size(); ++k) {
      const auto& a = report.cells[i].estimates[k];
      const auto& b = report.cells[i + 1].estimates[k];
      bool jump = a.empty != b.empty ||
                  (a.slope && b.slope && std::abs(*a.slope - *b.slope) > config.tolerance);
      if (jump) report.jumps.push_back({i, config.probes[k].to_string(), a.slope, b.slope});
    }
  }
  return report;
}

namespace {

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const GrowthEstimate& e) {
  Json j;
  j["slope"] = opt(e.slope);
  j["stderr"] = e.stderr_;
  j["reliable"] = e.reliable;
  j["empty"] = e.empty;
  j["vanishes"] = e.vanishes;
  j["shells"] = Json::array();
  for (const auto& s : e.shells) {
    Json sj{{"radius", s.radius}, {"hits", s.hits}, {"guided", s.guided}, {"max_abs", s.max_abs}};
    if (!s.diagnostic.empty()) sj["diagnostic"] = s.diagnostic;
    j["shells"].push_back(std::move(sj));
  }
  j["diagnostics"] = e.diagnostics;
  return j;
}

Json to_json(const SweepReport& r, const SweepConfig& config) {
  Json j;
  j["cells"] = Json::array();
  for (const auto& c : r.cells) {
    Json cj;
    cj["t"] = c.t;
    Json est = Json::object();
    for (std::size_t k = 0; k < config.probes.size(); ++k) {
      const auto& e = c.estimates[k];
      est[config.probes[k].to_string()] = {{"slope", opt(e.slope)}, {"empty", e.empty}, {"reliable", e.reliable}};
    }
    cj["estimates"] = std::move(est);
    j["cells"].push_back(std::move(cj));
  }
  j["jumps"] = Json::array();
  for (const auto& jp : r.jumps)
    j["jumps"].push_back({{"between", {r.cells[jp.from].t, r.cells[jp.from + 1].t}},
                          {"probe", jp.probe},
                          {"before", opt(jp.before)},
                          {"after", opt(jp.after)}});
  return j;
}

}  // namespace tcurves
