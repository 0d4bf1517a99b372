#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcurves/curves.hpp"
#include "tcurves/exec.hpp"
#include "tcurves/io.hpp"

namespace tcurves {

enum class Relation { Ge, Gt, Le, Lt, Eq };

std::string to_string(Relation r);
Relation parse_relation(std::string_view text);

struct Constraint {
  Polynomial poly;
  Relation rel = Relation::Ge;
};

// {x : poly rel 0 for every constraint}
struct SemialgebraicSet {
  VarList variables;
  std::vector<Constraint> constraints;
  std::string label;

  bool has_strict() const;
};

SemialgebraicSet set_from_json(const Json& j);
Json to_json(const SemialgebraicSet& s);
SemialgebraicSet load_set(const std::string& path);

// Polynomial with double coefficients, evaluated with its gradient.
class NumPoly {
 public:
  NumPoly() = default;
  explicit NumPoly(const Polynomial& p);
  // p + t*q over the same variables.
  static NumPoly combine(const Polynomial& p, const Polynomial& q, double t);

  std::size_t nvars() const { return nvars_; }
  double eval(const std::vector<double>& x, double* scale = nullptr) const;
  double eval_grad(const std::vector<double>& x, std::vector<double>& grad, double* scale = nullptr) const;

 private:
  struct Term {
    double coeff;
    std::vector<std::uint32_t> exp;
  };
  std::size_t nvars_ = 0;
  unsigned max_exp_ = 0;
  std::vector<Term> terms_;
};

struct NumConstraint {
  NumPoly poly;
  Relation rel = Relation::Ge;
};

struct SamplerConfig {
  std::size_t count = 4000;
  std::size_t retry_factor = 20;
  // Newton projection and random walks when rejection comes up short.
  bool guided = true;
  std::size_t min_hits = 400;
};

struct ShellSample {
  double radius = 0;
  std::vector<std::vector<double>> points;
  std::size_t rejection_hits = 0;
  std::size_t attempts = 0;
  bool guided = false;
  std::string diagnostic;
};

ShellSample sample(const std::vector<NumConstraint>& constraints, std::size_t nvars, double radius,
                   std::uint64_t seed, const SamplerConfig& config = {});
ShellSample sample(const SemialgebraicSet& set, double radius, std::uint64_t seed, const SamplerConfig& config = {});

std::vector<double> default_radii(Anchor anchor);

struct OracleConfig {
  Anchor anchor = Anchor::Infinity;
  std::vector<double> radii;  // empty: default schedule
  SamplerConfig sampler;
  std::uint64_t seed = 42;
  Exec exec = Exec::Parallel;
};

struct ShellResult {
  double radius = 0;
  std::size_t hits = 0;
  bool guided = false;
  // 0 when f vanishes at every hit; the shell then leaves the fit.
  double max_abs = 0;
  std::string diagnostic;
};

struct GrowthEstimate {
  std::optional<double> slope;
  double stderr_ = 0;
  bool reliable = true;
  bool empty = false;
  bool vanishes = false;
  std::vector<ShellResult> shells;
  std::vector<std::string> diagnostics;
};

// One estimate per polynomial, all from the same shell samples.
std::vector<GrowthEstimate> estimate_exponents(const SemialgebraicSet& set, const std::vector<Polynomial>& fs,
                                               const OracleConfig& config);
GrowthEstimate estimate_exponent(const SemialgebraicSet& set, const Polynomial& f, const OracleConfig& config);

// Slope of log|f(gamma(t))| against log|gamma(t)| on a parameter-free branch.
std::vector<double> default_probe_schedule(Anchor anchor, std::size_t count = 9);
GrowthEstimate probe_curve(const Branch& branch, const Polynomial& f, const std::vector<double>& ts);

// S_t = {f_i + t_i g_i rel 0 for all i}.
struct SweepConfig {
  VarList variables;
  std::vector<Polynomial> f;
  std::vector<Polynomial> g;
  Relation rel = Relation::Ge;
  std::vector<std::vector<double>> grid;
  std::vector<Polynomial> probes;
  double tolerance = 0.25;
  OracleConfig oracle;
};

struct SweepCell {
  std::vector<double> t;
  std::vector<GrowthEstimate> estimates;
};

struct SweepJump {
  std::size_t from = 0;  // cells from and from+1
  std::string probe;
  std::optional<double> before;
  std::optional<double> after;
};

struct SweepReport {
  std::vector<SweepCell> cells;
  std::vector<SweepJump> jumps;
};

SweepConfig sweep_from_json(const Json& j);
SweepReport stability_sweep(const SweepConfig& config);

Json to_json(const GrowthEstimate& e);
Json to_json(const SweepReport& r, const SweepConfig& config);

}  // namespace tcurves
