#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcurves/exec.hpp"
#include "tcurves/puiseux.hpp"

namespace tcurves {

struct Branch {
  std::string name;
  std::vector<ParamPuiseux> coordinates;
  std::vector<Polynomial> domain_excludes;
  // Truncated branches: the dropped remainder is O(t^error_exponent).
  std::optional<Rat> error_exponent;
  // Informational fields carried through from the branch generator.
  std::optional<std::int64_t> truncation;
  std::optional<ExtRat> residual_order;

  bool is_truncated() const { return error_exponent.has_value(); }
};

class CurveFamily {
 public:
  CurveFamily(VarList variables, VarList parameters, Anchor anchor, std::vector<Branch> branches);

  const VarList& variables() const { return variables_; }
  const VarList& parameters() const { return parameters_; }
  Anchor anchor() const { return anchor_; }
  const std::vector<Branch>& branches() const { return branches_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  unsigned ramification() const;

  // Throws DomainError when c makes an exclusion polynomial vanish.
  void check_domain(std::span<const Rat> c) const;
  // Concrete family at c (no parameters); branch names get the point appended.
  CurveFamily specialize(std::span<const Rat> c) const;

 private:
  VarList variables_;
  VarList parameters_;
  Anchor anchor_;
  std::vector<Branch> branches_;
  std::vector<std::string> warnings_;
};

GenericValue norm_order(const Branch& b);
GenericValue norm_degree(const Branch& b);

struct BranchValue {
  std::string name;
  ExtRat numerator;
  ExtRat denominator;
  ExtRat ratio;
  bool attains = false;
};

struct RelValue {
  ExtRat value;
  std::vector<BranchValue> per_branch;
  Polynomial certificate;
};

RelValue rel_mult(const Polynomial& f, const CurveFamily& fam, Exec exec = Exec::Serial);
RelValue rel_deg(const Polynomial& f, const CurveFamily& fam, Exec exec = Exec::Serial);
// Anchor-dispatching form of the two above.
RelValue rel_value(const Polynomial& f, const CurveFamily& fam, Exec exec = Exec::Serial);

// max(0, ceil(rel_deg)); DomainError when the value is +inf.
Int integer_rel_deg(const Polynomial& f, const CurveFamily& fam);

struct ParameterCheck {
  bool generic = true;
  std::vector<std::string> witnesses;
};

ParameterCheck check_parameter(const CurveFamily& fam, const Polynomial& f, std::span<const Rat> c);

}  // namespace tcurves
