#include "bvk/structures.hpp"

#include <algorithm>
#include <sstream>

namespace bvk {

namespace {

CheckEntry entry(std::string name) {
  CheckEntry e;
  e.name = std::move(name);
  return e;
}

void fail(CheckEntry& e, std::vector<Element> witness, Element residual, std::string detail) {
  e.verdict = Verdict::Fail;
  e.witness = std::move(witness);
  e.residual = std::move(residual);
  e.detail = std::move(detail);
}

Element signed_term(int sign, const Element& a) { return sign > 0 ? a : -a; }

std::string describe_selection(const TupleSelection& sel) {
  std::ostringstream os;
  os << sel.tuples.size() << " of " << sel.candidates << (sel.exhaustive ? " (exhaustive)" : " (sampled)");
  return os.str();
}

int element_parity(const Element& a) { return a.is_zero() ? 0 : require_parity(a, "check"); }

// Product-Leibniz defect of an operator of parity p: D(ab) - D(a)b - (-1)^{p|a|} a D(b).
Element leibniz_defect(const Operator& op, int p, const Element& a, const Element& b) {
  Element r = apply(op, a * b) - apply(op, a) * b;
  return r - signed_term(sign_pow(static_cast<long>(p) * element_parity(a)), a * apply(op, b));
}

// Bracket-derivation defect for an odd operator:
// D[a,b] - [Da,b] - (-1)^{|a|+1} [a,Db] with [a,b] = bv_bracket(B, a, b).
Element bracket_derivation_defect(const Operator& op, const Operator& B, const Element& a,
                                  const Element& b) {
  Element r = apply(op, bv_bracket(B, a, b)) - bv_bracket(B, apply(op, a), b);
  return r - signed_term(sign_pow(element_parity(a) + 1), bv_bracket(B, a, apply(op, b)));
}

Operator component(const std::map<Degree, Operator>& parts, Degree deg, const TablePtr& t) {
  const auto it = parts.find(deg);
  return it == parts.end() ? Operator(t) : it->second;
}

struct Truncated {};

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Untested:
      return "untested";
  }
  return "untested";
}

bool Report::passed() const { return !any_failed() && !any_untested(); }

bool Report::any_failed() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const CheckEntry& e) { return e.verdict == Verdict::Fail; });
}

bool Report::any_untested() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const CheckEntry& e) { return e.verdict == Verdict::Untested; });
}

const CheckEntry* Report::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

void Report::append(const Report& other, const std::string& prefix) {
  for (auto e : other.entries) {
    e.name = prefix + e.name;
    entries.push_back(std::move(e));
  }
}

std::vector<Element> monomial_pool(const TablePtr& table, std::uint32_t max_degree) {
  std::vector<Element> out;
  for (auto& m : monomials_up_to(*table, max_degree)) out.push_back(Element::monomial(table, std::move(m)));
  return out;
}

// ---------------------------------------------------------------- Gerstenhaber

Report check_gerstenhaber(const GerstenhaberOps& ops, const std::vector<Element>& pool,
                          const Budget& budget) {
  if (!ops.bracket || !ops.product) throw DomainError("check_gerstenhaber: bracket and product are required");
  std::vector<Element> items;
  for (const auto& a : pool) {
    if (a.is_zero()) continue;
    if (!a.degree()) throw DomainError("check_gerstenhaber: pool elements must be homogeneous");
    items.push_back(a);
  }
  auto norm = [&](const Element& x) { return ops.normalize ? ops.normalize(x) : x; };
  auto br = [&](const Element& a, const Element& b) { return norm(ops.bracket(a, b)); };
  auto pr = [&](const Element& a, const Element& b) { return norm(ops.product(a, b)); };
  auto s = [&](const Element& a) { return static_cast<long>(*a.degree() + ops.shift); };
  auto deg = [](const Element& a) { return static_cast<long>(*a.degree()); };

  Report rep;
  CheckEntry anti = entry("antisymmetry"), pdeg = entry("product-degree"), bdeg = entry("bracket-degree"),
             comm = entry("product-commutative");
  const auto pairs = select_tuples(items.size(), 2, budget, TupleMode::Ordered);
  for (const auto& idx : pairs.tuples) {
    const Element& a = items[idx[0]];
    const Element& b = items[idx[1]];
    const Element ab = br(a, b);
    const Element ba = br(b, a);
    ++anti.tested;
    if (anti.verdict == Verdict::Pass) {
      const Element r = norm(ab + signed_term(sign_pow(s(a) * s(b)), ba));
      if (!r.is_zero()) fail(anti, {a, b}, r, "[a,b] + (-1)^{s(a)s(b)}[b,a] != 0");
    }
    const Element p = pr(a, b);
    ++comm.tested;
    if (comm.verdict == Verdict::Pass) {
      const Element r = norm(p - signed_term(sign_pow(deg(a) * deg(b)), pr(b, a)));
      if (!r.is_zero()) fail(comm, {a, b}, r, "ab - (-1)^{|a||b|} ba != 0");
    }
    auto check_degree = [&](CheckEntry& e, const Element& v, int offset) {
      ++e.tested;
      if (e.verdict != Verdict::Pass || v.is_zero()) return;
      const auto dv = v.degree();
      if (!dv || static_cast<long>(*dv + ops.shift) != s(a) + s(b) + offset) {
        fail(e, {a, b}, v, "result degree does not match the declared offset " + std::to_string(offset));
      }
    };
    check_degree(pdeg, p, ops.product_offset);
    check_degree(bdeg, ab, ops.bracket_offset);
  }
  for (auto* e : {&anti, &pdeg, &bdeg, &comm}) {
    if (e->verdict == Verdict::Pass) e->detail = "pairs " + describe_selection(pairs);
  }

  CheckEntry jac = entry("jacobi"), leib = entry("leibniz"), assoc = entry("product-associative");
  const auto triples = select_tuples(items.size(), 3, budget, TupleMode::Ordered);
  for (const auto& idx : triples.tuples) {
    const Element& a = items[idx[0]];
    const Element& b = items[idx[1]];
    const Element& c = items[idx[2]];
    ++jac.tested;
    if (jac.verdict == Verdict::Pass) {
      const Element lhs = br(a, br(b, c));
      const Element rhs = br(br(a, b), c) + signed_term(sign_pow(s(a) * s(b)), br(b, br(a, c)));
      const Element r = norm(lhs - rhs);
      if (!r.is_zero()) fail(jac, {a, b, c}, r, "[a,[b,c]] - [[a,b],c] - (-1)^{s(a)s(b)}[b,[a,c]] != 0");
    }
    ++leib.tested;
    if (leib.verdict == Verdict::Pass) {
      const Element lhs = br(a, pr(b, c));
      const Element rhs = pr(br(a, b), c) + signed_term(sign_pow(deg(b) * deg(c)), pr(br(a, c), b));
      const Element r = norm(lhs - rhs);
      if (!r.is_zero()) fail(leib, {a, b, c}, r, "[a,bc] - [a,b]c - (-1)^{|b||c|}[a,c]b != 0");
    }
    ++assoc.tested;
    if (assoc.verdict == Verdict::Pass) {
      const Element r = norm(pr(pr(a, b), c) - pr(a, pr(b, c)));
      if (!r.is_zero()) fail(assoc, {a, b, c}, r, "(ab)c != a(bc)");
    }
  }
  for (auto* e : {&jac, &leib, &assoc}) {
    if (e->verdict == Verdict::Pass) e->detail = "triples " + describe_selection(triples);
  }
  for (auto* e : {&anti, &jac, &leib, &pdeg, &bdeg, &comm, &assoc}) {
    if (e->tested == 0 && e->verdict == Verdict::Pass) {
      e->verdict = Verdict::Untested;
      e->detail = "no tuples within budget";
    }
    rep.entries.push_back(std::move(*e));
  }
  return rep;
}

// ---------------------------------------------------------------- split

SplitResult degree_split(const Operator& D, const Budget& budget) {
  const auto sq = is_square_zero(D);
  if (!sq.square_zero) {
    throw DomainError("degree_split: D^2 = " + to_string(sq.square) + " is not zero");
  }
  const auto parts = degree_components(D);
  if (const auto it = parts.find(1); it != parts.end() && structural_order(it->second).order > 1) {
    throw DomainError("degree_split: the degree +1 part " + to_string(it->second) +
                      " has order above 1");
  }
  SplitResult out;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    const Degree deg = it->first;
    if (deg > 1 || parity(deg) == 0) {
      out.residual_components.emplace(deg, it->second);
      out.residual = true;
      continue;
    }
    SplitComponent c{static_cast<unsigned>((3 - deg) / 2), deg, it->second, {}};
    // certification needs monomials at least as long as the order
    Budget b = budget;
    b.max_degree = std::max<std::uint32_t>({b.max_degree, c.n, structural_order(c.op).order});
    c.certificate = akman_order_check(c.op, c.n, b);
    out.components.push_back(std::move(c));
  }
  return out;
}

Report split_identities(const SplitResult& split) {
  Report rep;
  if (split.components.empty()) return rep;
  const TablePtr t = split.components.front().op.table();
  unsigned max_n = 0;
  std::map<unsigned, const Operator*> by_n;
  for (const auto& c : split.components) {
    by_n[c.n] = &c.op;
    max_n = std::max(max_n, c.n);
  }
  for (unsigned s = 2; s <= 2 * max_n; ++s) {
    CheckEntry e = entry("identity s=" + std::to_string(s));
    Operator sum(t);
    std::string terms;
    for (unsigned a = 1; a < s; ++a) {
      const unsigned b = s - a;
      if (!by_n.count(a) || !by_n.count(b)) continue;
      sum += compose(*by_n[a], *by_n[b]);
      if (!terms.empty()) terms += " + ";
      terms += "D" + std::to_string(a) + "D" + std::to_string(b);
    }
    if (terms.empty()) continue;
    e.tested = 1;
    e.detail = terms + " = 0 (degree " + std::to_string(6 - 2 * static_cast<int>(s)) + ")";
    if (!sum.is_zero()) {
      e.verdict = Verdict::Fail;
      e.operator_residual = sum;
      e.detail = terms + " != 0";
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------- derivation lemma

Report check_derivation_lemma(const Operator& D, const Budget& budget) {
  Report rep;
  const TablePtr& t = D.table();
  CheckEntry pre = entry("hypotheses");
  pre.tested = 1;
  const auto sq = is_square_zero(D);
  if (!is_odd(D) || !operator_parity(D)) {
    pre.verdict = Verdict::Fail;
    pre.detail = "D is not odd";
  } else if (!sq.square_zero) {
    pre.verdict = Verdict::Fail;
    pre.operator_residual = sq.square;
    pre.detail = "D^2 != 0";
  } else {
    pre.detail = "D odd and square zero";
  }
  const bool ok = pre.verdict == Verdict::Pass;
  rep.entries.push_back(pre);
  if (!ok) return rep;

  const auto parts = degree_components(D);
  const Operator D1 = component(parts, 1, t);
  const auto pool = monomial_pool(t, budget.max_degree);
  const auto pairs = select_tuples(pool.size(), 2, budget, TupleMode::Ordered);

  CheckEntry i = entry("bracket-derivation");
  CheckEntry ii = entry("product-leibniz-failure");
  CheckEntry iii = entry("d1-product-leibniz");
  CheckEntry iv = entry("d1-bracket-derivation-failure");
  const bool higher = structural_order(D).order >= 2 || !constant_term(D).is_zero();
  bool iv_found = false;
  for (const auto& idx : pairs.tuples) {
    const Element& a = pool[idx[0]];
    const Element& b = pool[idx[1]];
    ++i.tested;
    if (i.verdict == Verdict::Pass) {
      const Element r = bracket_derivation_defect(D, D, a, b);
      if (!r.is_zero()) fail(i, {a, b}, r, "D[a,b] - [Da,b] - (-1)^{|a|+1}[a,Db] != 0");
    }
    if (higher && !ii.witness) {
      ++ii.tested;
      const Element r = leibniz_defect(D, 1, a, b);
      if (!r.is_zero()) {
        ii.witness = std::vector<Element>{a, b};
        ii.residual = r;
      }
    }
    ++iii.tested;
    if (iii.verdict == Verdict::Pass) {
      const Element r = leibniz_defect(D1, 1, a, b);
      if (!r.is_zero()) fail(iii, {a, b}, r, "D1(ab) - D1(a)b - (-1)^{|a|}aD1(b) != 0");
    }
    if (!iv_found) {
      ++iv.tested;
      const Element r = bracket_derivation_defect(D1, D, a, b);
      if (!r.is_zero()) {
        iv_found = true;
        iv.witness = std::vector<Element>{a, b};
        iv.residual = r;
      }
    }
  }
  const std::string sel = "pairs " + describe_selection(pairs);
  if (i.verdict == Verdict::Pass) i.detail = sel;
  if (!higher) {
    ii.detail = "vacuous: D is a derivation (order <= 1, D(1) = 0)";
  } else if (ii.witness) {
    ii.detail = "D fails product Leibniz on the witness pair";
  } else {
    ii.verdict = Verdict::Untested;
    ii.detail = "D has order >= 2 but no failing pair within budget";
  }
  if (iii.verdict == Verdict::Pass) iii.detail = sel;
  iv.detail = iv_found ? "D1 fails the bracket-derivation rule on the witness pair"
                       : "no failure within budget: D1 is a bracket derivation on every tested pair";
  for (auto* e : {&i, &ii, &iii, &iv}) rep.entries.push_back(std::move(*e));
  return rep;
}

// ---------------------------------------------------------------- BV-infinity

Report check_bvinfty(const Operator& d, const Operator& D, const Budget& budget) {
  Report rep;
  if (*d.table() != *D.table()) throw DomainError("check_bvinfty: d and D live on different tables");
  const TablePtr& t = D.table();

  CheckEntry deg = entry("d-degree");
  deg.tested = 1;
  for (const auto& [k, part] : degree_components(d)) {
    if (k != 1) {
      deg.verdict = Verdict::Fail;
      deg.operator_residual = part;
      deg.detail = "d has a component of degree " + std::to_string(k);
      break;
    }
  }
  if (deg.verdict == Verdict::Pass) deg.detail = d.is_zero() ? "d = 0" : "d has degree +1";
  rep.entries.push_back(deg);

  CheckEntry dsq = entry("d-square-zero");
  dsq.tested = 1;
  const auto ds = is_square_zero(d);
  if (!ds.square_zero) {
    dsq.verdict = Verdict::Fail;
    dsq.operator_residual = ds.square;
    dsq.detail = "d^2 != 0";
  } else {
    dsq.detail = "exact normal form";
  }
  rep.entries.push_back(dsq);

  // a normal-form operator is a derivation iff every term has exactly one derivative
  CheckEntry der = entry("d-derivation");
  der.tested = 1;
  Operator bad(t);
  for (const auto& term : d.term_list()) {
    if (term.derivs.total() != 1) bad.add_term(term.multiplier, term.derivs, term.coeff);
  }
  if (!bad.is_zero()) {
    der.verdict = Verdict::Fail;
    der.operator_residual = bad;
    der.detail = "terms without exactly one derivative";
    if (operator_parity(d)) {
      const int p = *operator_parity(d);
      const auto pool = monomial_pool(t, std::max<std::uint32_t>(budget.max_degree, structural_order(d).order));
      for (const auto& idx : select_tuples(pool.size(), 2, budget, TupleMode::Ordered).tuples) {
        const Element r = leibniz_defect(d, p, pool[idx[0]], pool[idx[1]]);
        if (!r.is_zero()) {
          der.witness = std::vector<Element>{pool[idx[0]], pool[idx[1]]};
          der.residual = r;
          break;
        }
      }
    }
  } else {
    der.detail = "first-order normal form";
  }
  rep.entries.push_back(der);

  CheckEntry odd = entry("D-odd");
  odd.tested = 1;
  if (!is_odd(D)) {
    odd.verdict = Verdict::Fail;
    for (const auto& [k, part] : degree_components(D)) {
      if (parity(k) == 0) {
        odd.operator_residual = part;
        odd.detail = "D has a component of even degree " + std::to_string(k);
        break;
      }
    }
  } else {
    odd.detail = "every degree component is odd";
  }
  rep.entries.push_back(odd);

  CheckEntry Dsq = entry("D-square-zero");
  Dsq.tested = 1;
  const auto s = is_square_zero(D);
  if (!s.square_zero) {
    Dsq.verdict = Verdict::Fail;
    Dsq.operator_residual = s.square;
    Dsq.detail = "D^2 != 0";
    if (s.witness) Dsq.witness = std::vector<Element>{Element::monomial(t, *s.witness)};
  } else {
    Dsq.detail = "exact normal form";
  }
  rep.entries.push_back(Dsq);

  CheckEntry tail = entry("negative-tail");
  tail.tested = 1;
  for (const auto& [k, part] : degree_components(D - d)) {
    if (k >= 0) {
      tail.verdict = Verdict::Fail;
      tail.operator_residual = part;
      tail.detail = "D - d has a component of degree " + std::to_string(k);
      break;
    }
  }
  if (tail.verdict == Verdict::Pass) tail.detail = "every component of D - d has negative degree";
  rep.entries.push_back(tail);
  return rep;
}

// ---------------------------------------------------------------- cohomology

Cohomology::Cohomology(Operator d, std::vector<int> weights, Window window)
    : d_(std::move(d)), weights_(std::move(weights)), window_(window) {
  const auto& t = *d_.table();
  if (weights_.size() != t.size()) throw DomainError("cohomology: weight vector length does not match the table");
  // validates the weights as a side effect
  (void)monomials_of_weight(t, weights_, 0);
  if (window_.min_weight > window_.max_weight) throw DomainError("cohomology: empty weight window");
  const auto parts = degree_components(d_);
  if (parts.size() > 1) throw DomainError("cohomology: d must be degree-homogeneous");
  bool first = true;
  for (const auto& [key, c] : d_.terms()) {
    const int s = weight_of(key.multiplier) - weight_of(key.derivs);
    if (first) {
      shift_ = s;
      first = false;
    } else if (s != shift_) {
      throw DomainError("cohomology: d must shift weight uniformly");
    }
  }
  const auto sq = is_square_zero(d_);
  if (!sq.square_zero) throw DomainError("cohomology: d^2 = " + to_string(sq.square) + " is not zero");
}

int Cohomology::weight_of(const Monomial& m) const {
  int w = 0;
  for (std::size_t i = 0; i < m.exps.size(); ++i) w += static_cast<int>(m.exps[i]) * weights_[i];
  return w;
}

std::map<SliceKey, Element> Cohomology::components(const Element& a) const {
  std::map<SliceKey, Element> out;
  const auto& t = a.table();
  for (const auto& [m, c] : a.terms()) {
    const SliceKey key{degree_of(*t, m), weight_of(m)};
    auto it = out.try_emplace(key, Element(t)).first;
    it->second.add_term(m, c);
  }
  return out;
}

const Cohomology::SliceData& Cohomology::data(SliceKey key) const {
  if (const auto it = cache_.find(key); it != cache_.end()) return *it->second;
  const auto& t = d_.table();
  const Degree dd = d_.is_zero() ? 1 : degree_components(d_).begin()->first;
  auto sd = std::make_unique<SliceData>();
  sd->slice.key = key;
  auto basis_of = [&](SliceKey k) {
    std::vector<Monomial> out;
    for (auto& m : monomials_of_weight(*t, weights_, k.weight)) {
      if (degree_of(*t, m) == k.degree) out.push_back(std::move(m));
    }
    return out;
  };
  auto above_cap = [&](int w) { return window_.cap_weight && w > *window_.cap_weight; };
  const SliceKey target{key.degree + dd, key.weight + shift_};
  const SliceKey source{key.degree - dd, key.weight - shift_};
  if (above_cap(key.weight) || above_cap(target.weight) || above_cap(source.weight)) {
    sd->slice.truncated = true;
    return *cache_.emplace(key, std::move(sd)).first->second;
  }
  sd->slice.basis = basis_of(key);
  const auto& basis = sd->slice.basis;
  for (std::size_t i = 0; i < basis.size(); ++i) sd->index.emplace(basis[i], i);

  auto matrix_of = [&](const std::vector<Monomial>& from, const std::vector<Monomial>& to) {
    std::map<Monomial, std::size_t> to_index;
    for (std::size_t i = 0; i < to.size(); ++i) to_index.emplace(to[i], i);
    Matrix m(to.size(), from.size());
    for (std::size_t c = 0; c < from.size(); ++c) {
      const Element image = apply(d_, Element::monomial(t, from[c]));
      for (const auto& [mono, coeff] : image.terms()) {
        m.at(to_index.at(mono), c) = coeff;
      }
    }
    return m;
  };

  const auto kernel = kernel_basis(matrix_of(basis, basis_of(target)));
  sd->slice.cycles = kernel.size();
  const Matrix into = matrix_of(basis_of(source), basis);
  // first pass: which cycles are independent modulo boundaries
  EchelonBasis probe(basis.size(), 0);
  for (std::size_t c = 0; c < into.cols(); ++c) probe.add_relation(into.column(c));
  sd->slice.boundaries = probe.size();
  std::vector<const Vector*> chosen;
  for (const auto& v : kernel) {
    if (probe.add_relation(v)) chosen.push_back(&v);
  }
  sd->classes = std::make_unique<EchelonBasis>(basis.size(), chosen.size());
  for (std::size_t c = 0; c < into.cols(); ++c) sd->classes->add_relation(into.column(c));
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    sd->classes->add_generator(*chosen[i], i);
    Element rep(t);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if ((*chosen[i])[j] != 0) rep.add_term(basis[j], (*chosen[i])[j]);
    }
    sd->slice.representatives.push_back(std::move(rep));
  }
  return *cache_.emplace(key, std::move(sd)).first->second;
}

const Slice& Cohomology::slice(SliceKey key) const { return data(key).slice; }

std::vector<const Slice*> Cohomology::window_slices() const {
  std::vector<SliceKey> keys;
  const auto& t = *d_.table();
  for (int w = window_.min_weight; w <= window_.max_weight; ++w) {
    for (const auto& m : monomials_of_weight(t, weights_, w)) keys.push_back({degree_of(t, m), w});
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<const Slice*> out;
  for (const auto& k : keys) out.push_back(&slice(k));
  return out;
}

std::optional<std::map<SliceKey, Vector>> Cohomology::classify(const Element& a) const {
  last_truncated_ = false;
  std::map<SliceKey, Vector> out;
  for (const auto& [key, part] : components(a)) {
    const auto& sd = data(key);
    if (sd.slice.truncated) {
      last_truncated_ = true;
      return std::nullopt;
    }
    Vector v(sd.slice.basis.size());
    for (const auto& [m, c] : part.terms()) v[sd.index.at(m)] = c;
    auto coords = sd.classes->coordinates(v);
    if (!coords) return std::nullopt;
    if (!is_zero(*coords)) out.emplace(key, std::move(*coords));
  }
  return out;
}

std::optional<Element> Cohomology::normalize(const Element& a) const {
  const auto cls = classify(a);
  if (!cls) return std::nullopt;
  Element out(a.table());
  for (const auto& [key, coords] : *cls) {
    const auto& reps = slice(key).representatives;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] != 0) out += coords[i] * reps[i];
    }
  }
  return out;
}

bool Cohomology::is_boundary(const Element& a) const {
  const auto cls = classify(a);
  return cls && cls->empty();
}

std::vector<std::pair<SliceKey, std::size_t>> cohomology_dimensions(const Cohomology& h) {
  std::vector<std::pair<SliceKey, std::size_t>> out;
  for (const auto* s : h.window_slices()) out.emplace_back(s->key, s->representatives.size());
  return out;
}

// ---------------------------------------------------------------- induced BV

InducedBvReport induced_bv(const Operator& d, const Operator& D, const std::vector<int>& weights,
                           const Window& window, const Budget& budget) {
  InducedBvReport out{Report{}, Operator(D.table()), {}};
  Report& rep = out.checks;
  const Report hyp = check_bvinfty(d, D, budget);
  rep.append(hyp, "bvinfty/");

  const TablePtr& t = D.table();
  out.d2 = component(degree_components(D), -1, t);
  const Operator& d2 = out.d2;

  CheckEntry anti = entry("anticommutator");
  anti.tested = 1;
  const Operator ac = anticommutator(d, d2);
  if (!ac.is_zero()) {
    anti.verdict = Verdict::Fail;
    anti.operator_residual = ac;
    anti.detail = "d D2 + D2 d != 0";
  } else {
    anti.detail = "d D2 + D2 d = 0 exactly";
  }
  rep.entries.push_back(anti);

  static const char* const kInduced[] = {"well-defined", "square-zero", "order<=2", "order-exact",
                                         "gerstenhaber"};
  auto skip_all = [&](const std::string& why) {
    for (const char* n : kInduced) {
      CheckEntry e = entry(n);
      e.verdict = Verdict::Untested;
      e.detail = why;
      rep.entries.push_back(std::move(e));
    }
  };
  if (hyp.any_failed() || anti.verdict == Verdict::Fail) {
    skip_all("skipped: the BV-infinity hypotheses fail");
    return out;
  }
  std::unique_ptr<Cohomology> h;
  try {
    h = std::make_unique<Cohomology>(d, weights, window);
  } catch (const DomainError& e) {
    skip_all(std::string("skipped: ") + e.what());
    return out;
  }

  // every slice reachable inside the window, and its representatives
  std::vector<Element> reps;
  CheckEntry wd = entry("well-defined");
  std::size_t wd_untested = 0;
  const Degree dd = d.is_zero() ? 1 : degree_components(d).begin()->first;
  for (const auto* s : h->window_slices()) {
    if (s->truncated) {
      ++wd_untested;
      continue;
    }
    for (std::size_t r = 0; r < s->representatives.size(); ++r) {
      const Element& rr = s->representatives[r];
      reps.push_back(rr);
      const Element img = apply(d2, rr);
      ++wd.tested;
      const auto cls = h->classify(img);
      if (!cls) {
        if (h->last_truncated()) {
          ++wd_untested;
        } else if (wd.verdict == Verdict::Pass) {
          fail(wd, {rr}, img, "D2 of a cycle is not a cycle");
        }
        continue;
      }
      out.images.push_back(InducedImage{s->key, r, *cls});
    }
    // boundaries must go to boundaries
    const SliceKey src{s->key.degree - dd, s->key.weight - h->weight_shift()};
    const Slice& source = h->slice(src);
    if (source.truncated) {
      ++wd_untested;
      continue;
    }
    for (const auto& m : source.basis) {
      const Element b = apply(d, Element::monomial(t, m));
      if (b.is_zero()) continue;
      const Element img = apply(d2, b);
      ++wd.tested;
      if (!h->is_boundary(img)) {
        if (h->last_truncated()) {
          ++wd_untested;
        } else if (wd.verdict == Verdict::Pass) {
          fail(wd, {b}, img, "D2 of a boundary is not a boundary");
        }
      }
    }
  }
  if (wd.verdict == Verdict::Pass) {
    wd.detail = std::to_string(wd.tested) + " cycles and boundaries";
    if (wd_untested > 0) {
      wd.verdict = Verdict::Untested;
      wd.detail += ", " + std::to_string(wd_untested) + " untested at the weight cap";
    }
  }
  rep.entries.push_back(wd);

  CheckEntry sq = entry("square-zero");
  std::size_t sq_untested = 0;
  for (const auto& r : reps) {
    const Element v = apply(d2, apply(d2, r));
    ++sq.tested;
    if (!h->is_boundary(v)) {
      if (h->last_truncated()) {
        ++sq_untested;
      } else if (sq.verdict == Verdict::Pass) {
        fail(sq, {r}, v, "D2 D2 of a representative is not a boundary");
      }
    }
  }
  if (sq.verdict == Verdict::Pass) {
    sq.detail = std::to_string(sq.tested) + " representatives";
    if (sq_untested > 0) {
      sq.verdict = Verdict::Untested;
      sq.detail += ", " + std::to_string(sq_untested) + " untested at the weight cap";
    }
  }
  rep.entries.push_back(sq);

  CheckEntry ord = entry("order<=2");
  std::size_t ord_untested = 0;
  const auto triples = select_tuples(reps.size(), 3, budget, TupleMode::Ordered);
  for (const auto& idx : triples.tuples) {
    const std::vector<Element> args{reps[idx[0]], reps[idx[1]], reps[idx[2]]};
    const Element v = koszul_bracket(d2, args);
    ++ord.tested;
    if (!h->is_boundary(v)) {
      if (h->last_truncated()) {
        ++ord_untested;
      } else if (ord.verdict == Verdict::Pass) {
        fail(ord, args, v, "F^3 of the induced operator is a nonzero class");
      }
    }
  }
  if (ord.verdict == Verdict::Pass) {
    ord.detail = "triples of representatives " + describe_selection(triples);
    if (ord_untested > 0) {
      ord.verdict = Verdict::Untested;
      ord.detail += ", " + std::to_string(ord_untested) + " untested at the weight cap";
    } else if (ord.tested == 0) {
      ord.detail = "vacuous: no representatives in the window";
    }
  }
  rep.entries.push_back(ord);

  CheckEntry exact = entry("order-exact");
  const auto pairs = select_tuples(reps.size(), 2, budget, TupleMode::Ordered);
  for (const auto& idx : pairs.tuples) {
    const std::vector<Element> args{reps[idx[0]], reps[idx[1]]};
    const Element v = koszul_bracket(d2, args);
    ++exact.tested;
    const auto cls = h->classify(v);
    if (cls && !cls->empty()) {
      exact.witness = args;
      exact.residual = v;
      break;
    }
  }
  exact.detail = exact.witness ? "order exactly 2: F^2 is a nonzero class on the witness pair"
                               : "no nonzero F^2 class within budget: order < 2 on the window";
  rep.entries.push_back(exact);

  GerstenhaberOps ops;
  ops.bracket = [&](const Element& a, const Element& b) { return bv_bracket(d2, a, b); };
  ops.product = [](const Element& a, const Element& b) { return a * b; };
  ops.normalize = [&](const Element& a) {
    auto n = h->normalize(a);
    if (!n) {
      if (h->last_truncated()) throw Truncated{};
      return a;
    }
    return *n;
  };
  try {
    Report g = check_gerstenhaber(ops, reps, budget);
    CheckEntry e = entry("gerstenhaber");
    for (const auto& sub : g.entries) e.tested += sub.tested;
    if (g.any_failed()) {
      for (const auto& sub : g.entries) {
        if (sub.verdict == Verdict::Fail) {
          e = sub;
          e.name = "gerstenhaber";
          e.detail = sub.name + ": " + sub.detail;
          break;
        }
      }
    } else if (reps.empty()) {
      e.detail = "vacuous: no representatives in the window";
    } else {
      e.detail = "antisymmetry, Jacobi, Leibniz and degree offsets on representatives";
    }
    rep.entries.push_back(std::move(e));
  } catch (const Truncated&) {
    CheckEntry e = entry("gerstenhaber");
    e.verdict = Verdict::Untested;
    e.detail = "a needed slice lies above the weight cap";
    rep.entries.push_back(std::move(e));
  }
  return out;
}

}  // namespace bvk
