#include "tcurves/plane_branches.hpp"

#include <algorithm>
#include <numeric>

#include "tcurves/errors.hpp"

namespace tcurves {

namespace {

using Dense = std::vector<Rat>;  // index = power

void trim(Dense& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Dense remainder(Dense a, const Dense& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

Rat eval(const Dense& p, const Rat& x) {
  Rat r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

// p / (x - r) for a root r.
Dense deflate(const Dense& p, const Rat& r) {
  Dense q(p.size() - 1);
  Rat carry = 0;
  for (std::size_t i = p.size() - 1; i > 0; --i) {
    carry = carry * r + p[i];
    q[i - 1] = carry;
  }
  return q;
}

// Number of distinct real roots (Sturm).
unsigned real_root_count(Dense p) {
  trim(p);
  if (p.size() <= 1) return 0;
  std::vector<Dense> seq{p};
  Dense d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  seq.push_back(d);
  while (true) {
    Dense r = remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& v : r) v = -v;
    seq.push_back(std::move(r));
  }
  auto changes = [&](bool at_plus) {
    int count = 0, last = 0;
    for (const auto& s : seq) {
      int sign = sgn(s.back());
      if (!at_plus && (s.size() - 1) % 2 == 1) sign = -sign;
      if (last != 0 && sign != last) ++count;
      last = sign;
    }
    return count;
  };
  return static_cast<unsigned>(changes(false) - changes(true));
}

std::vector<Int> divisors(Int n) {
  n = abs(n);
  std::vector<Int> small, large;
  for (Int i = 1; i * i <= n; ++i) {
    if (n % i != 0) continue;
    small.push_back(i);
    if (i * i != n) large.push_back(n / i);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::optional<Int> exact_root(const Int& v, unsigned k) {
  Int r;
  if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), k) == 0) return std::nullopt;
  return r;
}

struct Roots {
  std::vector<ParamCoeff> values;
  bool unsupported = false;
};

// Real k-th roots of b inside Q(c).
Roots kth_roots(const ParamCoeff& b, unsigned k) {
  Roots out;
  if (k == 1) {
    out.values.push_back(b);
    return out;
  }
  const VarList& params = b.params();
  Rat r;
  long m = 0;
  if (b.is_constant()) {
    r = b.constant_value();
  } else {
    if (params.size() != 1 || b.num().size() != 1 || b.den().size() != 1) {
      out.unsupported = true;
      return out;
    }
    const auto& [ne, nc] = b.num().leading_term();
    const auto& [de, dc] = b.den().leading_term();
    r = nc / dc;
    m = static_cast<long>(ne[0]) - static_cast<long>(de[0]);
    if (m % static_cast<long>(k) != 0) {
      out.unsupported = true;
      return out;
    }
  }
  bool even = k % 2 == 0;
  if (even && sgn(r) < 0) return out;
  Rat mag = abs(r);
  auto num = exact_root(mag.get_num(), k), den = exact_root(mag.get_den(), k);
  if (!num || !den) {
    out.unsupported = true;
    return out;
  }
  Rat root(*num, *den);
  root.canonicalize();
  if (sgn(r) < 0) root = -root;
  long mk = m / static_cast<long>(k);
  Exponent e{static_cast<std::uint32_t>(std::abs(mk))};
  ParamCoeff base = b.is_constant() ? ParamCoeff::constant(params, 1)
                    : mk >= 0 ? ParamCoeff(Polynomial::monomial(params, e, 1))
                              : ParamCoeff(Polynomial::constant(params, 1), Polynomial::monomial(params, e, 1));
  out.values.push_back(base.scaled(root));
  if (even) out.values.push_back(base.scaled(-root));
  return out;
}

// Nonzero real roots a of sum_j coeff_j a^j, where the exponents differ by
// multiples of g and the lowest one is j0.
Roots edge_roots(const NewtonEdge& edge) {
  unsigned j0 = edge.coefficients.begin()->first, g = 0;
  for (const auto& [j, c] : edge.coefficients) g = std::gcd(g, j - j0);
  std::map<unsigned, ParamCoeff> q;
  for (const auto& [j, c] : edge.coefficients) q.emplace((j - j0) / g, c);
  unsigned n = q.rbegin()->first;
  std::vector<ParamCoeff> bs;
  Roots out;
  if (n == 1) {
    bs.push_back(-(q.at(0) / q.at(1)));
  } else {
    const ParamCoeff& lead = q.at(n);
    Dense p(n + 1);
    for (const auto& [i, c] : q) {
      ParamCoeff ratio = c / lead;
      if (!ratio.is_constant()) {
        out.unsupported = true;
        return out;
      }
      p[i] = ratio.constant_value();
    }
    Int den_lcm = 1;
    for (const auto& v : p) den_lcm = lcm(den_lcm, v.get_den());
    Int a0 = Rat(p[0] * den_lcm).get_num(), an = Rat(p[n] * den_lcm).get_num();
    static const Int kLimit("1000000000000");
    if (abs(a0) <= kLimit && abs(an) <= kLimit) {
      for (const Int& num : divisors(a0)) {
        for (const Int& den : divisors(an)) {
          for (int s : {1, -1}) {
            Rat cand(num * s, den);
            cand.canonicalize();
            if (std::any_of(bs.begin(), bs.end(), [&](const ParamCoeff& x) { return x.constant_value() == cand; }))
              continue;
            if (p.size() < 2 || sgn(eval(p, cand)) != 0) continue;
            bs.push_back(ParamCoeff::constant(lead.params(), cand));
            while (p.size() >= 2 && sgn(eval(p, cand)) == 0) p = deflate(p, cand);
          }
        }
      }
    }
    if (real_root_count(p) > 0) out.unsupported = true;
  }
  for (const auto& b : bs) {
    Roots r = kth_roots(b, g);
    out.unsupported = out.unsupported || r.unsupported;
    out.values.insert(out.values.end(), r.values.begin(), r.values.end());
  }
  return out;
}

ExtRat extreme_exponent(const ParamPuiseux& s, Anchor anchor) {
  return anchor == Anchor::Infinity ? s.max_exponent() : s.min_exponent();
}

ParamCoeff coefficient_at(const ParamPuiseux& s, const Rat& r) {
  Rat key = r * s.ramification();
  if (key.get_den() != 1) return ParamCoeff(s.params());
  return s.coefficient(key.get_num().get_si());
}

std::vector<NewtonEdge> edges_of(const std::vector<ParamPuiseux>& h, Anchor anchor) {
  std::vector<std::pair<unsigned, Rat>> pts;
  for (unsigned j = 0; j < h.size(); ++j)
    if (!h[j].is_zero()) pts.emplace_back(j, extreme_exponent(h[j], anchor).value());
  bool inf = anchor == Anchor::Infinity;
  std::vector<NewtonEdge> edges;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      Rat e = -(pts[b].second - pts[a].second) / Rat(pts[b].first - pts[a].first);
      Rat level = pts[a].second + pts[a].first * e;
      bool supporting = true;
      for (const auto& [j, d] : pts) {
        Rat v = d + j * e;
        if (inf ? v > level : v < level) {
          supporting = false;
          break;
        }
      }
      if (!supporting) continue;
      if (std::any_of(edges.begin(), edges.end(), [&](const NewtonEdge& x) { return x.exponent == e; })) continue;
      NewtonEdge edge;
      edge.exponent = e;
      for (const auto& [j, d] : pts)
        if (d + j * e == level) edge.coefficients.emplace(j, coefficient_at(h[j], Rat(d)));
      edges.push_back(std::move(edge));
    }
  }
  std::sort(edges.begin(), edges.end(),
            [&](const NewtonEdge& x, const NewtonEdge& y) { return inf ? x.exponent > y.exponent : x.exponent < y.exponent; });
  return edges;
}

// H(t, y) as coefficient series of y^j; orientation 2 swaps the roles of x and y.
std::vector<ParamPuiseux> coefficient_series(const Polynomial& curve, int orientation, Anchor anchor) {
  VarList params{curve.variables()[2]};
  std::size_t solve = orientation == 1 ? 1 : 0, along = 1 - solve;
  std::vector<ParamPuiseux> h(curve.degree_in(solve) + 1, ParamPuiseux(params, 1, anchor));
  for (const auto& [e, c] : curve.terms()) {
    ParamCoeff coeff(Polynomial::monomial(params, Exponent{e[2]}, c));
    h[e[solve]].add_term(e[along], coeff);
  }
  return h;
}

std::vector<ParamPuiseux> substitute(const std::vector<ParamPuiseux>& h, const ParamPuiseux& tau) {
  std::vector<ParamPuiseux> powers{ParamPuiseux::constant(tau.params(), tau.anchor(), ParamCoeff::constant(tau.params(), 1))};
  for (std::size_t j = 1; j < h.size(); ++j) powers.push_back(powers.back() * tau);
  std::vector<ParamPuiseux> out(h.size(), ParamPuiseux(tau.params(), 1, tau.anchor()));
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (h[j].is_zero()) continue;
    for (std::size_t k = 0; k <= j; ++k) {
      Rat binom(Int(std::to_string(binomial(static_cast<unsigned>(j), static_cast<unsigned>(k)))));
      out[k] = out[k] + (h[j] * powers[j - k]).scaled(ParamCoeff::constant(tau.params(), binom));
    }
  }
  return out;
}

struct State {
  std::vector<ParamPuiseux> h;
  ParamPuiseux prefix;
  std::optional<Rat> last;
};

unsigned xy_degree(const Polynomial& curve) {
  unsigned d = 0;
  for (const auto& [e, c] : curve.terms()) d = std::max(d, e[0] + e[1]);
  return d;
}

}  // namespace

std::string NewtonEdge::to_string() const {
  const VarList& params = coefficients.begin()->second.params();
  std::string name = params.index_of("a") >= 0 ? "a_" : "a";
  std::vector<std::string> names{name};
  names.insert(names.end(), params.names().begin(), params.names().end());
  VarList vars(names);
  Polynomial dens = Polynomial::constant(params, 1);
  for (const auto& [j, c] : coefficients)
    if (!c.den().is_constant()) dens *= c.den();
  Polynomial out(vars);
  for (const auto& [j, c] : coefficients) {
    Polynomial num = *exact_divide(c.num() * dens, c.den());
    Exponent e(vars.size(), 0);
    e.front() = j;
    out += num.embed(vars) * Polynomial::monomial(vars, e, 1);
  }
  return out.to_string();
}

Polynomial level_curve(const std::string& text, const std::string& param) {
  if (param == "x" || param == "y") throw InputError("parameter name must differ from x and y");
  VarList vars{"x", "y", param};
  Polynomial g = parse_polynomial(text, vars);
  if (g.degree_in(2) == 0) g -= Polynomial::variable(vars, 2);
  if (g.degree_in(0) == 0 && g.degree_in(1) == 0) throw DomainError("curve does not involve x or y");
  return g;
}

std::vector<NewtonEdge> newton_polygon(const Polynomial& curve, Anchor anchor) {
  return edges_of(coefficient_series(curve, 1, anchor), anchor);
}

std::int64_t default_truncation(const Polynomial& curve) { return 4 * (static_cast<std::int64_t>(xy_degree(curve)) + 1); }

BranchExpansion expand_branches(const Polynomial& curve, Anchor anchor, std::optional<std::int64_t> truncation) {
  if (curve.nvars() != 3) throw InputError("curve must be given over x, y and one parameter");
  BranchExpansion out;
  out.variables = VarList{"x", "y"};
  out.params = VarList{curve.variables()[2]};
  out.anchor = anchor;
  out.curve = curve;
  out.truncation = truncation.value_or(default_truncation(curve));
  if (out.truncation <= 0) throw InputError("truncation order must be positive");
  const bool inf = anchor == Anchor::Infinity;
  const Rat limit = inf ? Rat(-out.truncation) : Rat(out.truncation);
  const VarList& params = out.params;
  ParamPuiseux t = ParamPuiseux::monomial(params, 1, anchor, 1, ParamCoeff::constant(params, 1));

  for (int orientation : {1, 2}) {
    unsigned count = 0;
    auto emit = [&](const ParamPuiseux& prefix, std::optional<Rat> err) {
      TruncatedBranch tb;
      tb.orientation = orientation;
      tb.exact = !err.has_value();
      tb.branch.name = std::string(orientation == 1 ? "y(x)#" : "x(y)#") + std::to_string(++count);
      tb.branch.coordinates = orientation == 1 ? std::vector{t, prefix} : std::vector{prefix, t};
      for (const auto& [k, c] : prefix.terms()) {
        if (c.den().is_constant()) continue;
        if (std::none_of(tb.branch.domain_excludes.begin(), tb.branch.domain_excludes.end(),
                         [&](const Polynomial& p) { return p == c.den(); }))
          tb.branch.domain_excludes.push_back(c.den());
      }
      tb.branch.error_exponent = err;
      tb.branch.truncation = out.truncation;
      tb.branch.residual_order = residual_check(tb, curve);
      for (const auto& other : out.branches)
        if (other.branch.coordinates == tb.branch.coordinates) return;
      out.branches.push_back(std::move(tb));
    };

    std::vector<State> stack;
    stack.push_back({coefficient_series(curve, orientation, anchor), ParamPuiseux(params, 1, anchor), std::nullopt});
    std::size_t steps = 0;
    while (!stack.empty()) {
      if (++steps > 100000) throw DomainError("branch expansion did not terminate");
      State s = std::move(stack.back());
      stack.pop_back();
      if (s.h[0].is_zero()) emit(s.prefix, std::nullopt);
      std::vector<Rat> omitted;
      std::vector<State> next;
      for (const NewtonEdge& edge : edges_of(s.h, anchor)) {
        const Rat& e = edge.exponent;
        if (s.last) {
          if (inf ? e >= *s.last : e <= *s.last) continue;
        } else if (orientation == 1) {
          if (!inf && sgn(e) <= 0) continue;
        } else {
          if (!inf || sgn(e) > 0) continue;
        }
        Roots roots = edge_roots(edge);
        if (inf ? e < limit : e > limit) {
          if (!roots.values.empty() || roots.unsupported) omitted.push_back(e);
          continue;
        }
        if (roots.unsupported)
          out.unsupported.push_back({orientation, e, edge.to_string(), s.prefix.to_string()});
        for (const ParamCoeff& a : roots.values) {
          unsigned q = static_cast<unsigned>(e.get_den().get_ui());
          ParamPuiseux tau = ParamPuiseux::monomial(params, q, anchor, e.get_num().get_si(), a);
          next.push_back({substitute(s.h, tau), s.prefix + tau, e});
        }
      }
      if (!omitted.empty())
        emit(s.prefix, inf ? *std::max_element(omitted.begin(), omitted.end())
                           : *std::min_element(omitted.begin(), omitted.end()));
      for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(std::move(*it));
    }
  }
  return out;
}

CurveFamily BranchExpansion::family() const {
  if (branches.empty()) {
    if (!unsupported.empty())
      throw UnsupportedExtension("every branch needs coefficients outside Q(" + params[0] + "); edge polynomial " +
                                 unsupported.front().edge_polynomial);
    throw DomainError("the curve has no real branch at " + to_string(anchor));
  }
  std::vector<Branch> bs;
  for (const auto& tb : branches) bs.push_back(tb.branch);
  return CurveFamily(variables, params, anchor, std::move(bs));
}

ExtRat residual_check(const TruncatedBranch& tb, const Polynomial& curve) {
  const Branch& b = tb.branch;
  const VarList& params = b.coordinates[0].params();
  Anchor anchor = b.coordinates[0].anchor();
  ParamCoeff c(Polynomial::variable(params, 0));
  std::vector<ParamPuiseux> arc{b.coordinates[0], b.coordinates[1], ParamPuiseux::constant(params, anchor, c)};
  ParamPuiseux residual = compose(curve, arc);
  bool inf = anchor == Anchor::Infinity;
  ExtRat order = inf ? residual.max_exponent() : residual.min_exponent();
  if (!b.error_exponent) {
    if (!residual.is_zero()) throw DomainError("exact branch " + b.name + " leaves residual " + residual.to_string());
    return order;
  }
  if (inf) {
    Rat n = 1;
    for (const auto& x : b.coordinates)
      if (!x.is_zero()) n = std::max(n, x.max_exponent().value());
    Rat bound = *b.error_exponent + Rat(static_cast<long>(xy_degree(curve)) - 1) * n;
    if (order > ExtRat(bound))
      throw DomainError("branch " + b.name + " residual degree " + order.to_string() + " exceeds " + to_string(bound));
  } else if (order < ExtRat(*b.error_exponent)) {
    throw DomainError("branch " + b.name + " residual order " + order.to_string() + " is below " +
                      to_string(*b.error_exponent));
  }
  return order;
}

}  // namespace tcurves
