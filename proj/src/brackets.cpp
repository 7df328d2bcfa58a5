#include "bvk/brackets.hpp"

#include <numeric>

namespace bvk {

int require_parity(const Element& a, const char* what) {
  auto p = a.parity();
  if (!p) {
    throw DomainError(std::string(what) + ": argument '" + to_string(a) +
                      "' is not homogeneous; decompose it with grade_decompose first");
  }
  return *p;
}

int require_parity(const Operator& op, const char* what) {
  if (op.is_zero()) return 0;
  auto p = operator_parity(op);
  if (!p) {
    throw DomainError(std::string(what) +
                      ": operator mixes even and odd degrees; split it with degree_components");
  }
  return *p;
}

namespace {

bool any_zero(std::span<const Element> args) {
  for (const auto& a : args) {
    if (a.is_zero()) return true;
  }
  return false;
}

std::vector<int> arg_parities(std::span<const Element> args, const char* what) {
  std::vector<int> p;
  p.reserve(args.size());
  for (const auto& a : args) p.push_back(require_parity(a, what));
  return p;
}

Element akman_rec(const Operator& op, int op_parity, std::vector<Element> args,
                  std::vector<int> parities) {
  const std::size_t n = args.size();
  if (n == 1) return apply(op, args[0]);
  // Split as F^{m+1}(a_1..a_m, b) with m = n-1.
  const std::size_t m = n - 1;
  const Element b = args[m];
  const int pb = parities[m];
  const Element an = args[m - 1];
  const int pn = parities[m - 1];

  std::vector<Element> first(args.begin(), args.begin() + static_cast<long>(m - 1));
  std::vector<int> first_p(parities.begin(), parities.begin() + static_cast<long>(m - 1));

  // F^m(a_1..a_{m-1}, a_m b)
  auto t1_args = first;
  auto t1_p = first_p;
  t1_args.push_back(multiply(an, b));
  t1_p.push_back(pn ^ pb);
  Element result = akman_rec(op, op_parity, std::move(t1_args), std::move(t1_p));

  // F^m(a_1..a_m) * b
  auto t2_args = first;
  auto t2_p = first_p;
  t2_args.push_back(an);
  t2_p.push_back(pn);
  result -= multiply(akman_rec(op, op_parity, std::move(t2_args), std::move(t2_p)), b);

  // sign * a_m * F^m(a_1..a_{m-1}, b)
  int exponent = op_parity;
  for (int p : first_p) exponent += p;
  exponent *= pn;
  auto t3_args = first;
  auto t3_p = first_p;
  t3_args.push_back(b);
  t3_p.push_back(pb);
  Element t3 = multiply(an, akman_rec(op, op_parity, std::move(t3_args), std::move(t3_p)));
  if (exponent & 1) {
    result += t3;
  } else {
    result -= t3;
  }
  return result;
}

}  // namespace

Element akman_bracket(const Operator& op, std::span<const Element> args) {
  if (args.empty()) throw DomainError("akman_bracket: needs at least one argument");
  const int op_parity = require_parity(op, "akman_bracket");
  auto parities = arg_parities(args, "akman_bracket");
  if (any_zero(args)) return Element(op.table());
  return akman_rec(op, op_parity, std::vector<Element>(args.begin(), args.end()),
                   std::move(parities));
}

Element koszul_bracket(const Operator& op, std::span<const Element> args) {
  if (args.empty()) throw DomainError("koszul_bracket: needs at least one argument");
  require_parity(op, "koszul_bracket");
  const auto parities = arg_parities(args, "koszul_bracket");
  Element result(op.table());
  if (any_zero(args)) return result;
  const int n = static_cast<int>(args.size());
  const std::vector<Degree> degrees(parities.begin(), parities.end());
  for (int k = 1; k <= n; ++k) {
    for (const auto& sigma : unshuffles(k, n)) {
      Element left = Element::unit(op.table());
      for (int i = 0; i < k; ++i) left = multiply(left, args[static_cast<std::size_t>(sigma.perm[static_cast<std::size_t>(i)])]);
      Element right = Element::unit(op.table());
      for (int i = k; i < n; ++i) right = multiply(right, args[static_cast<std::size_t>(sigma.perm[static_cast<std::size_t>(i)])]);
      Element term = multiply(apply(op, left), right);
      const int s = koszul_sign(degrees, sigma) * sign_pow(n - k);
      if (s > 0) {
        result += term;
      } else {
        result -= term;
      }
    }
  }
  return result;
}

Element bv_bracket(const Operator& delta, const Element& a, const Element& b) {
  if (a.is_zero() || b.is_zero()) return Element(delta.table());
  const int pa = require_parity(a, "bv_bracket");
  const std::vector<Element> args{a, b};
  Element f2 = akman_bracket(delta, args);
  return pa ? -f2 : f2;
}

namespace {

std::vector<Element> pool_elements(const Operator& op, const Budget& budget) {
  std::vector<Element> pool;
  for (auto& m : monomials_up_to(*op.table(), budget.max_degree)) {
    if (m.is_unit()) continue;  // brackets with the unit vanish once D(1) = 0
    pool.push_back(Element::monomial(op.table(), std::move(m)));
  }
  return pool;
}

std::vector<Element> pick(const std::vector<Element>& pool, const std::vector<std::size_t>& idx) {
  std::vector<Element> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(pool[i]);
  return out;
}

}  // namespace

OrderCertificate akman_order_check(const Operator& op, unsigned k, const Budget& budget) {
  require_parity(op, "akman_order_check");
  OrderCertificate cert;
  cert.claimed_order = k;
  const auto so = structural_order(op);
  cert.structural_bound = so.order;
  cert.degenerate = so.degenerate;

  const Element unit_image = constant_term(op);
  Operator normalized = op;
  if (!unit_image.is_zero()) {
    normalized -= Operator::multiplication(unit_image);
    cert.normalized = true;
  }

  const auto pool = pool_elements(op, budget);
  const auto sel = select_tuples(pool.size(), k + 1, budget, TupleMode::Multiset);
  cert.candidates = sel.candidates;
  cert.exhaustive = sel.exhaustive;
  cert.passed = true;
  for (const auto& idx : sel.tuples) {
    ++cert.tuples_tested;
    auto args = pick(pool, idx);
    Element v = koszul_bracket(normalized, args);
    if (!v.is_zero()) {
      cert.passed = false;
      cert.failure_witness = std::move(args);
      cert.failure_value = std::move(v);
      break;
    }
  }

  if (k == 0) {
    cert.sharp = !unit_image.is_zero();
    return cert;
  }
  const auto sharp_sel = select_tuples(pool.size(), k, budget, TupleMode::Multiset);
  for (const auto& idx : sharp_sel.tuples) {
    ++cert.sharpness_tested;
    auto args = pick(pool, idx);
    if (!koszul_bracket(normalized, args).is_zero()) {
      cert.sharp = true;
      cert.sharpness_witness = std::move(args);
      break;
    }
  }
  return cert;
}

OrderCertificate akman_order(const Operator& op, unsigned max_k, const Budget& budget) {
  OrderCertificate last;
  for (unsigned k = 0; k <= max_k; ++k) {
    last = akman_order_check(op, k, budget);
    if (last.passed) return last;
  }
  return last;
}

}  // namespace bvk
