#include "bvk/models.hpp"

#include "bvk/brackets.hpp"

#include <charconv>

namespace bvk {

namespace {

Monomial mono_of(const TablePtr& t, std::initializer_list<std::pair<const char*, unsigned>> powers) {
  Monomial m(t->size());
  for (const auto& [name, e] : powers) m.exps[*t->find(name)] = e;
  return m;
}

Operator term_of(const TablePtr& t, const Scalar& c,
                 std::initializer_list<std::pair<const char*, unsigned>> mult,
                 std::initializer_list<std::pair<const char*, unsigned>> derivs) {
  return Operator::term(t, c, mono_of(t, mult), mono_of(t, derivs));
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw DomainError("model parameter '" + key + "' is not an integer: '" + text + "'");
  }
  return v;
}

}  // namespace

bool has_polyvector_layout(const GeneratorTable& table) {
  const std::size_t n2 = table.size();
  if (n2 == 0 || n2 % 2 != 0) return false;
  const std::size_t n = n2 / 2;
  for (std::size_t i = 0; i < n; ++i) {
    if (table.is_odd(i) || !table.is_odd(n + i)) return false;
  }
  return true;
}

Operator divergence_operator(const TablePtr& table) {
  if (!has_polyvector_layout(*table)) {
    throw DomainError("divergence: the table needs n even generators followed by n odd ones");
  }
  const std::size_t n = table->size() / 2;
  Operator delta(table);
  for (std::size_t i = 0; i < n; ++i) {
    Monomial der(table->size());
    der.exps[i] = 1;
    der.exps[n + i] = 1;
    delta.add_term(Monomial(table->size()), der, 1);
  }
  return delta;
}

Model polyvector_model(int n) {
  if (n < 1) throw DomainError("polyvector_model: dimension must be at least 1");
  std::vector<Generator> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({"x" + std::to_string(i), 0});
  for (int i = 1; i <= n; ++i) gens.push_back({"xi" + std::to_string(i), 1});
  auto t = make_table(std::move(gens));
  return Model{"polyvector", t, divergence_operator(t), Operator(t),
               std::vector<int>(t->size(), 1)};
}

Element schouten_oracle(const Element& a, const Element& b) {
  const auto& t = a.table();
  if (*t != *b.table()) throw DomainError("schouten_oracle: elements from different tables");
  if (!has_polyvector_layout(*t)) {
    throw DomainError("schouten_oracle: the table needs the polyvector layout");
  }
  Element out(t);
  if (a.is_zero() || b.is_zero()) return out;
  const int pa = require_parity(a, "schouten_oracle");
  require_parity(b, "schouten_oracle");
  const std::size_t n = t->size() / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const Element first = partial_derivative(a, n + i) * partial_derivative(b, i);
    const Element second = partial_derivative(a, i) * partial_derivative(b, n + i);
    if (sign_pow(pa + 1) > 0) {
      out += first;
    } else {
      out -= first;
    }
    out -= second;
  }
  return out;
}

int calibrate_schouten_sign(const Model& polyvector) {
  const auto& t = polyvector.table;
  const Element xi1 = Element::generator(t, (*t)[t->size() / 2].name);
  const Element x1 = Element::generator(t, (*t)[0].name);
  const Element bv = bv_bracket(polyvector.D, xi1, x1);
  const Element sch = schouten_oracle(xi1, x1);
  if (bv == sch) return 1;
  if (bv == -sch) return -1;
  throw DomainError("calibrate_schouten_sign: the brackets disagree beyond a sign on (xi1, x1)");
}

Model exterior3_model() {
  auto t = make_table({{"xi1", 1}, {"xi2", 1}, {"xi3", 1}});
  return Model{"exterior3", t, term_of(t, 1, {}, {{"xi1", 1}, {"xi2", 1}, {"xi3", 1}}), Operator(t),
               std::vector<int>(3, 1)};
}

Operator schouten_adjoint(const Element& p) {
  const auto& t = p.table();
  if (!has_polyvector_layout(*t)) throw DomainError("schouten_adjoint: the table needs the polyvector layout");
  Operator out(t);
  if (p.is_zero()) return out;
  const int sign = sign_pow(require_parity(p, "schouten_adjoint") + 1);
  const std::size_t n = t->size() / 2;
  auto add = [&](const Element& mult, std::size_t gen, int s) {
    Monomial der(t->size());
    der.exps[gen] = 1;
    for (const auto& [m, c] : mult.terms()) out.add_term(m, der, s * c);
  };
  for (std::size_t i = 0; i < n; ++i) {
    add(partial_derivative(p, n + i), i, sign);
    add(partial_derivative(p, i), n + i, -1);
  }
  return out;
}

Model mixed_model() {
  Model m = polyvector_model(2);
  m.name = "mixed";
  m.d = schouten_adjoint(parse_element(m.table, "xi1*xi2"));
  m.D = m.d + m.D;
  return m;
}

Model poisson3_model() {
  Model m = polyvector_model(3);
  m.name = "poisson3";
  m.d = schouten_adjoint(parse_element(m.table, "x3*xi1*xi2"));
  m.D = m.d + m.D;
  return m;
}

Model order3_model() {
  auto t = make_table({{"x1", 0}, {"x2", 0}, {"xi1", 1}, {"xi2", 1}, {"xi3", 1}});
  const Operator d0 = term_of(t, 1, {{"xi1", 1}}, {{"x1", 1}});
  const Operator a = term_of(t, 1, {{"x2", 1}}, {{"xi1", 1}, {"xi2", 1}}) +
                     term_of(t, 1, {{"x1", 1}}, {{"xi1", 1}, {"xi3", 1}});
  const Operator one = Operator::identity(t);
  const Operator D = compose(compose(one - a, d0), one + a);
  return Model{"order3", t, D, d0, std::vector<int>(t->size(), 1)};
}

Model koszul_complex_model(const std::vector<unsigned>& exponents, bool with_laplacian) {
  if (exponents.empty()) throw DomainError("koszul_complex_model: needs at least one exponent");
  const std::size_t n = exponents.size();
  std::vector<Generator> gens;
  const bool single = n == 1;
  for (std::size_t i = 1; i <= n; ++i) gens.push_back({single ? "x" : "x" + std::to_string(i), 2});
  for (std::size_t i = 1; i <= n; ++i) {
    gens.push_back({single ? "xi" : "xi" + std::to_string(i),
                    2 * static_cast<Degree>(exponents[i - 1]) - 1});
  }
  auto t = make_table(std::move(gens));
  std::vector<int> weights(2 * n, 1);
  Operator d(t);
  for (std::size_t i = 0; i < n; ++i) {
    weights[n + i] = static_cast<int>(exponents[i]);
    Monomial mult(2 * n), der(2 * n);
    mult.exps[i] = exponents[i];
    der.exps[n + i] = 1;
    d.add_term(mult, der, 1);
  }
  Operator D = d;
  if (with_laplacian) D += divergence_operator(t);
  const auto sq = is_square_zero(D);
  if (!sq.square_zero) {
    throw DomainError("koszul_complex_model: D^2 = " + to_string(sq.square) + " is not zero");
  }
  return Model{"koszul", t, D, d, weights};
}

Operator converse_perturbation(const Model& polyvector) {
  const auto& t = polyvector.table;
  return polyvector.D + Operator::multiplication(Element::generator(t, (*t)[t->size() / 2].name));
}

std::vector<std::string> builtin_model_names() {
  return {"polyvector", "exterior3", "mixed", "poisson3", "order3", "koszul"};
}

Model builtin_model(const std::string& name, const std::map<std::string, std::string>& params) {
  auto reject_extra = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : params) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) throw DomainError("model '" + name + "' has no parameter '" + k + "'");
    }
  };
  if (name == "polyvector") {
    reject_extra({"n"});
    const auto it = params.find("n");
    if (it == params.end()) throw DomainError("model 'polyvector' needs n=<dimension>");
    return polyvector_model(parse_int("n", it->second));
  }
  if (name == "exterior3") {
    reject_extra({});
    return exterior3_model();
  }
  if (name == "mixed") {
    reject_extra({});
    return mixed_model();
  }
  if (name == "poisson3") {
    reject_extra({});
    return poisson3_model();
  }
  if (name == "order3") {
    reject_extra({});
    return order3_model();
  }
  if (name == "koszul") {
    reject_extra({"m", "laplacian"});
    const auto it = params.find("m");
    if (it == params.end()) throw DomainError("model 'koszul' needs m=<exponent>[,<exponent>...]");
    std::vector<unsigned> ms;
    std::size_t start = 0;
    const std::string& s = it->second;
    while (start <= s.size()) {
      const std::size_t comma = s.find(',', start);
      const std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      const int v = parse_int("m", part);
      if (v < 0) throw DomainError("model 'koszul': exponents must be nonnegative");
      ms.push_back(static_cast<unsigned>(v));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    bool lap = false;
    if (const auto l = params.find("laplacian"); l != params.end()) {
      const int v = parse_int("laplacian", l->second);
      if (v != 0 && v != 1) throw DomainError("model 'koszul': laplacian must be 0 or 1");
      lap = v == 1;
    }
    return koszul_complex_model(ms, lap);
  }
  throw DomainError("unknown builtin model '" + name + "'");
}

}  // namespace bvk
