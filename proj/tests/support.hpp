#pragma once

// Small fixtures shared by the unit tests.

#include "bvk/algebra.hpp"
#include "bvk/diffop.hpp"

#include <string>
#include <vector>

namespace bvk::test {

// x1..xn (degree 0) then xi1..xin (degree 1).
inline TablePtr polyvector_table(int n) {
  std::vector<Generator> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({"x" + std::to_string(i), 0});
  for (int i = 1; i <= n; ++i) gens.push_back({"xi" + std::to_string(i), 1});
  return make_table(std::move(gens));
}

inline Monomial mono(const TablePtr& t, std::initializer_list<std::pair<const char*, unsigned>> powers) {
  Monomial m(t->size());
  for (const auto& [name, e] : powers) m.exps[*t->find(name)] = e;
  return m;
}

inline Element el(const TablePtr& t, const std::string& s) { return parse_element(t, s); }

// coeff * mult * d^derivs given by generator names.
inline Operator op_term(const TablePtr& t, const Scalar& c,
                        std::initializer_list<std::pair<const char*, unsigned>> mult,
                        std::initializer_list<std::pair<const char*, unsigned>> derivs) {
  return Operator::term(t, c, mono(t, mult), mono(t, derivs));
}

inline Operator divergence(const TablePtr& t, int n) {
  Operator d(t);
  for (int i = 1; i <= n; ++i) {
    const std::string x = "x" + std::to_string(i), xi = "xi" + std::to_string(i);
    Monomial der(t->size());
    der.exps[*t->find(x)] = 1;
    der.exps[*t->find(xi)] = 1;
    d.add_term(Monomial(t->size()), der, 1);
  }
  return d;
}

inline std::vector<Element> monomial_elements(const TablePtr& t, unsigned max_total) {
  std::vector<Element> out;
  for (auto& m : monomials_up_to(*t, max_total)) out.push_back(Element::monomial(t, m));
  return out;
}

}  // namespace bvk::test
