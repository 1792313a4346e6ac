#include "lp/ast.hpp"

#include <algorithm>

namespace lp {

const char* sort_name(Sort s) { return s == Sort::Object ? "object" : "field"; }

Sort Term::sort() const {
  struct Visitor {
    Sort operator()(const ObjectVar&) const { return Sort::Object; }
    Sort operator()(const ObjectConst&) const { return Sort::Object; }
    Sort operator()(const FieldVar&) const { return Sort::Field; }
    Sort operator()(const FieldConst&) const { return Sort::Field; }
    Sort operator()(const ObjectApp&) const { return Sort::Object; }
    Sort operator()(const FieldApp&) const { return Sort::Field; }
    Sort operator()(const MeasureApp&) const { return Sort::Field; }
    Sort operator()(const ProbTerm&) const { return Sort::Field; }
  };
  return std::visit(Visitor{}, node_);
}

// ---------------------------------------------------------------------------
// Factories.

TermPtr object_var(std::string name, SourceSpan span) {
  return std::make_shared<Term>(ObjectVar{std::move(name)}, span);
}
TermPtr object_const(std::string name, SourceSpan span) {
  return std::make_shared<Term>(ObjectConst{std::move(name)}, span);
}
TermPtr field_var(std::string name, SourceSpan span) {
  return std::make_shared<Term>(FieldVar{std::move(name)}, span);
}
TermPtr field_const(Rational value, SourceSpan span) {
  return std::make_shared<Term>(FieldConst{std::move(value)}, span);
}
TermPtr named_field_const(std::string name, SourceSpan span) {
  return std::make_shared<Term>(FieldConst{std::move(name)}, span);
}
TermPtr object_app(std::string fn, std::vector<TermPtr> args, SourceSpan span) {
  return std::make_shared<Term>(ObjectApp{std::move(fn), std::move(args)}, span);
}
TermPtr field_app(std::string fn, std::vector<TermPtr> args, SourceSpan span) {
  return std::make_shared<Term>(FieldApp{std::move(fn), std::move(args)}, span);
}
TermPtr measure_app(std::string fn, std::vector<TermPtr> args, SourceSpan span) {
  return std::make_shared<Term>(MeasureApp{std::move(fn), std::move(args)}, span);
}
TermPtr prob_term(FormulaPtr body, std::vector<std::string> binders, SourceSpan span) {
  return std::make_shared<Term>(ProbTerm{std::move(body), nullptr, std::move(binders)}, span);
}
TermPtr cond_prob_term(FormulaPtr body, FormulaPtr given,
                       std::vector<std::string> binders, SourceSpan span) {
  return std::make_shared<Term>(
      ProbTerm{std::move(body), std::move(given), std::move(binders)}, span);
}

FormulaPtr pred(std::string name, std::vector<TermPtr> args, SourceSpan span) {
  return std::make_shared<Formula>(Pred{std::move(name), std::move(args)}, span);
}
FormulaPtr equal(TermPtr lhs, TermPtr rhs, Sort sort, SourceSpan span) {
  return std::make_shared<Formula>(Equal{std::move(lhs), std::move(rhs), sort}, span);
}
FormulaPtr geq(TermPtr lhs, TermPtr rhs, SourceSpan span) {
  return std::make_shared<Formula>(Geq{std::move(lhs), std::move(rhs)}, span);
}
FormulaPtr leq(TermPtr lhs, TermPtr rhs, SourceSpan span) {
  return std::make_shared<Formula>(Leq{std::move(lhs), std::move(rhs)}, span);
}
FormulaPtr lt(TermPtr lhs, TermPtr rhs, SourceSpan span) {
  return std::make_shared<Formula>(Lt{std::move(lhs), std::move(rhs)}, span);
}
FormulaPtr gt(TermPtr lhs, TermPtr rhs, SourceSpan span) {
  return std::make_shared<Formula>(Gt{std::move(lhs), std::move(rhs)}, span);
}
FormulaPtr in_interval(TermPtr value, TermPtr lo, TermPtr hi, SourceSpan span) {
  return std::make_shared<Formula>(
      InInterval{std::move(value), std::move(lo), std::move(hi)}, span);
}
FormulaPtr lnot(FormulaPtr body, SourceSpan span) {
  return std::make_shared<Formula>(Not{std::move(body)}, span);
}
FormulaPtr land(FormulaPtr lhs, FormulaPtr rhs, SourceSpan span) {
  return std::make_shared<Formula>(And{std::move(lhs), std::move(rhs)}, span);
}
FormulaPtr lor(FormulaPtr lhs, FormulaPtr rhs, SourceSpan span) {
  return std::make_shared<Formula>(Or{std::move(lhs), std::move(rhs)}, span);
}
FormulaPtr implies(FormulaPtr lhs, FormulaPtr rhs, SourceSpan span) {
  return std::make_shared<Formula>(Implies{std::move(lhs), std::move(rhs)}, span);
}
FormulaPtr forall(std::string var, Sort sort, FormulaPtr body, SourceSpan span) {
  return std::make_shared<Formula>(Forall{std::move(var), sort, std::move(body)}, span);
}
FormulaPtr exists(std::string var, Sort sort, FormulaPtr body, SourceSpan span) {
  return std::make_shared<Formula>(Exists{std::move(var), sort, std::move(body)}, span);
}

// ---------------------------------------------------------------------------
// Structural equality, span-blind.

namespace {

bool equal_args(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal_terms(a[i], b[i])) return false;
  return true;
}

}  // namespace

bool equal_terms(const Term& a, const Term& b) {
  if (a.node().index() != b.node().index()) return false;
  struct Visitor {
    const Term& other;
    bool operator()(const ObjectVar& x) const { return x.name == other.get_if<ObjectVar>()->name; }
    bool operator()(const ObjectConst& x) const { return x.name == other.get_if<ObjectConst>()->name; }
    bool operator()(const FieldVar& x) const { return x.name == other.get_if<FieldVar>()->name; }
    bool operator()(const FieldConst& x) const {
      const auto& y = *other.get_if<FieldConst>();
      if (x.value.index() != y.value.index()) return false;
      return x.is_literal() ? x.literal() == y.literal() : x.name() == y.name();
    }
    bool operator()(const ObjectApp& x) const {
      const auto& y = *other.get_if<ObjectApp>();
      return x.fn == y.fn && equal_args(x.args, y.args);
    }
    bool operator()(const FieldApp& x) const {
      const auto& y = *other.get_if<FieldApp>();
      return x.fn == y.fn && equal_args(x.args, y.args);
    }
    bool operator()(const MeasureApp& x) const {
      const auto& y = *other.get_if<MeasureApp>();
      return x.fn == y.fn && equal_args(x.args, y.args);
    }
    bool operator()(const ProbTerm& x) const {
      const auto& y = *other.get_if<ProbTerm>();
      if (x.binders != y.binders) return false;
      if ((x.given == nullptr) != (y.given == nullptr)) return false;
      if (!equal_formulas(x.body, y.body)) return false;
      return x.given == nullptr || equal_formulas(x.given, y.given);
    }
  };
  return std::visit(Visitor{b}, a.node());
}

bool equal_formulas(const Formula& a, const Formula& b) {
  if (a.node().index() != b.node().index()) return false;
  struct Visitor {
    const Formula& other;
    bool operator()(const Pred& x) const {
      const auto& y = *other.get_if<Pred>();
      return x.name == y.name && equal_args(x.args, y.args);
    }
    bool operator()(const Equal& x) const {
      const auto& y = *other.get_if<Equal>();
      return x.sort == y.sort && equal_terms(x.lhs, y.lhs) && equal_terms(x.rhs, y.rhs);
    }
    bool operator()(const Geq& x) const {
      const auto& y = *other.get_if<Geq>();
      return equal_terms(x.lhs, y.lhs) && equal_terms(x.rhs, y.rhs);
    }
    bool operator()(const Leq& x) const {
      const auto& y = *other.get_if<Leq>();
      return equal_terms(x.lhs, y.lhs) && equal_terms(x.rhs, y.rhs);
    }
    bool operator()(const Lt& x) const {
      const auto& y = *other.get_if<Lt>();
      return equal_terms(x.lhs, y.lhs) && equal_terms(x.rhs, y.rhs);
    }
    bool operator()(const Gt& x) const {
      const auto& y = *other.get_if<Gt>();
      return equal_terms(x.lhs, y.lhs) && equal_terms(x.rhs, y.rhs);
    }
    bool operator()(const InInterval& x) const {
      const auto& y = *other.get_if<InInterval>();
      return equal_terms(x.value, y.value) && equal_terms(x.lo, y.lo) &&
             equal_terms(x.hi, y.hi);
    }
    bool operator()(const Not& x) const {
      return equal_formulas(x.body, other.get_if<Not>()->body);
    }
    bool operator()(const And& x) const {
      const auto& y = *other.get_if<And>();
      return equal_formulas(x.lhs, y.lhs) && equal_formulas(x.rhs, y.rhs);
    }
    bool operator()(const Or& x) const {
      const auto& y = *other.get_if<Or>();
      return equal_formulas(x.lhs, y.lhs) && equal_formulas(x.rhs, y.rhs);
    }
    bool operator()(const Implies& x) const {
      const auto& y = *other.get_if<Implies>();
      return equal_formulas(x.lhs, y.lhs) && equal_formulas(x.rhs, y.rhs);
    }
    bool operator()(const Forall& x) const {
      const auto& y = *other.get_if<Forall>();
      return x.var == y.var && x.sort == y.sort && equal_formulas(x.body, y.body);
    }
    bool operator()(const Exists& x) const {
      const auto& y = *other.get_if<Exists>();
      return x.var == y.var && x.sort == y.sort && equal_formulas(x.body, y.body);
    }
  };
  return std::visit(Visitor{b}, a.node());
}

// ---------------------------------------------------------------------------
// Free variables.

namespace {

void collect_free(const Term& t, VarSet& out);
void collect_free(const Formula& f, VarSet& out);

void collect_free_args(const std::vector<TermPtr>& args, VarSet& out) {
  for (const auto& a : args) collect_free(*a, out);
}

void collect_free(const Term& t, VarSet& out) {
  struct Visitor {
    VarSet& out;
    void operator()(const ObjectVar& x) const { out.insert({x.name, Sort::Object}); }
    void operator()(const ObjectConst&) const {}
    void operator()(const FieldVar& x) const { out.insert({x.name, Sort::Field}); }
    void operator()(const FieldConst&) const {}
    void operator()(const ObjectApp& x) const { collect_free_args(x.args, out); }
    void operator()(const FieldApp& x) const { collect_free_args(x.args, out); }
    void operator()(const MeasureApp& x) const { collect_free_args(x.args, out); }
    void operator()(const ProbTerm& x) const {
      VarSet inner;
      collect_free(*x.body, inner);
      if (x.given) collect_free(*x.given, inner);
      for (const auto& b : x.binders) inner.erase({b, Sort::Object});
      out.insert(inner.begin(), inner.end());
    }
  };
  std::visit(Visitor{out}, t.node());
}

void collect_free(const Formula& f, VarSet& out) {
  struct Visitor {
    VarSet& out;
    void operator()(const Pred& x) const { collect_free_args(x.args, out); }
    void operator()(const Equal& x) const { collect_free(*x.lhs, out); collect_free(*x.rhs, out); }
    void operator()(const Geq& x) const { collect_free(*x.lhs, out); collect_free(*x.rhs, out); }
    void operator()(const Leq& x) const { collect_free(*x.lhs, out); collect_free(*x.rhs, out); }
    void operator()(const Lt& x) const { collect_free(*x.lhs, out); collect_free(*x.rhs, out); }
    void operator()(const Gt& x) const { collect_free(*x.lhs, out); collect_free(*x.rhs, out); }
    void operator()(const InInterval& x) const {
      collect_free(*x.value, out);
      collect_free(*x.lo, out);
      collect_free(*x.hi, out);
    }
    void operator()(const Not& x) const { collect_free(*x.body, out); }
    void operator()(const And& x) const { collect_free(*x.lhs, out); collect_free(*x.rhs, out); }
    void operator()(const Or& x) const { collect_free(*x.lhs, out); collect_free(*x.rhs, out); }
    void operator()(const Implies& x) const { collect_free(*x.lhs, out); collect_free(*x.rhs, out); }
    void operator()(const Forall& x) const {
      VarSet inner;
      collect_free(*x.body, inner);
      inner.erase({x.var, x.sort});
      out.insert(inner.begin(), inner.end());
    }
    void operator()(const Exists& x) const {
      VarSet inner;
      collect_free(*x.body, inner);
      inner.erase({x.var, x.sort});
      out.insert(inner.begin(), inner.end());
    }
  };
  std::visit(Visitor{out}, f.node());
}

}  // namespace

VarSet free_vars(const Term& t) {
  VarSet out;
  collect_free(t, out);
  return out;
}

VarSet free_vars(const Formula& f) {
  VarSet out;
  collect_free(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Core-form check.

bool is_core(const Term& t) {
  struct Visitor {
    bool operator()(const ObjectVar&) const { return true; }
    bool operator()(const ObjectConst&) const { return true; }
    bool operator()(const FieldVar&) const { return true; }
    bool operator()(const FieldConst&) const { return true; }
    bool operator()(const ObjectApp& x) const { return std::all_of(x.args.begin(), x.args.end(), [](const TermPtr& a) { return is_core(*a); }); }
    bool operator()(const FieldApp& x) const { return std::all_of(x.args.begin(), x.args.end(), [](const TermPtr& a) { return is_core(*a); }); }
    bool operator()(const MeasureApp& x) const { return std::all_of(x.args.begin(), x.args.end(), [](const TermPtr& a) { return is_core(*a); }); }
    bool operator()(const ProbTerm& x) const { return x.given == nullptr && is_core(*x.body); }
  };
  return std::visit(Visitor{}, t.node());
}

bool is_core(const Formula& f) {
  struct Visitor {
    bool operator()(const Pred& x) const { return std::all_of(x.args.begin(), x.args.end(), [](const TermPtr& a) { return is_core(*a); }); }
    bool operator()(const Equal& x) const { return is_core(*x.lhs) && is_core(*x.rhs); }
    bool operator()(const Geq& x) const { return is_core(*x.lhs) && is_core(*x.rhs); }
    bool operator()(const Leq&) const { return false; }
    bool operator()(const Lt&) const { return false; }
    bool operator()(const Gt&) const { return false; }
    bool operator()(const InInterval&) const { return false; }
    bool operator()(const Not& x) const { return is_core(*x.body); }
    bool operator()(const And& x) const { return is_core(*x.lhs) && is_core(*x.rhs); }
    bool operator()(const Or&) const { return false; }
    bool operator()(const Implies&) const { return false; }
    bool operator()(const Forall& x) const { return is_core(*x.body); }
    bool operator()(const Exists&) const { return false; }
  };
  return std::visit(Visitor{}, f.node());
}

// ---------------------------------------------------------------------------
// Desugaring (standard definitions plus Definition 1 for conditionals).

namespace {

std::vector<TermPtr> desugar_args(const std::vector<TermPtr>& args) {
  std::vector<TermPtr> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(desugar(a));
  return out;
}

}  // namespace

TermPtr desugar(const TermPtr& t) {
  const SourceSpan span = t->span();
  struct Visitor {
    const TermPtr& t;
    SourceSpan span;
    TermPtr operator()(const ObjectVar&) const { return t; }
    TermPtr operator()(const ObjectConst&) const { return t; }
    TermPtr operator()(const FieldVar&) const { return t; }
    TermPtr operator()(const FieldConst&) const { return t; }
    TermPtr operator()(const ObjectApp& x) const { return object_app(x.fn, desugar_args(x.args), span); }
    TermPtr operator()(const FieldApp& x) const { return field_app(x.fn, desugar_args(x.args), span); }
    TermPtr operator()(const MeasureApp& x) const { return measure_app(x.fn, desugar_args(x.args), span); }
    TermPtr operator()(const ProbTerm& x) const {
      FormulaPtr body = desugar(x.body);
      if (!x.given) return prob_term(body, x.binders, span);
      FormulaPtr given = desugar(x.given);
      // [a|b]{x} -> [a & b]{x} / [b]{x}
      return field_app("/",
                       {prob_term(land(body, given, span), x.binders, span),
                        prob_term(given, x.binders, span)},
                       span);
    }
  };
  return std::visit(Visitor{t, span}, t->node());
}

FormulaPtr desugar(const FormulaPtr& f) {
  const SourceSpan span = f->span();
  struct Visitor {
    SourceSpan span;
    FormulaPtr operator()(const Pred& x) const { return pred(x.name, desugar_args(x.args), span); }
    FormulaPtr operator()(const Equal& x) const { return equal(desugar(x.lhs), desugar(x.rhs), x.sort, span); }
    FormulaPtr operator()(const Geq& x) const { return geq(desugar(x.lhs), desugar(x.rhs), span); }
    FormulaPtr operator()(const Leq& x) const { return geq(desugar(x.rhs), desugar(x.lhs), span); }
    FormulaPtr operator()(const Lt& x) const { return lnot(geq(desugar(x.lhs), desugar(x.rhs), span), span); }
    FormulaPtr operator()(const Gt& x) const { return lnot(geq(desugar(x.rhs), desugar(x.lhs), span), span); }
    FormulaPtr operator()(const InInterval& x) const {
      TermPtr v = desugar(x.value);
      return land(geq(v, desugar(x.lo), span), geq(desugar(x.hi), v, span), span);
    }
    FormulaPtr operator()(const Not& x) const { return lnot(desugar(x.body), span); }
    FormulaPtr operator()(const And& x) const { return land(desugar(x.lhs), desugar(x.rhs), span); }
    FormulaPtr operator()(const Or& x) const {
      return lnot(land(lnot(desugar(x.lhs), span), lnot(desugar(x.rhs), span), span), span);
    }
    FormulaPtr operator()(const Implies& x) const {
      return lnot(land(desugar(x.lhs), lnot(desugar(x.rhs), span), span), span);
    }
    FormulaPtr operator()(const Forall& x) const { return forall(x.var, x.sort, desugar(x.body), span); }
    FormulaPtr operator()(const Exists& x) const {
      return lnot(forall(x.var, x.sort, lnot(desugar(x.body), span), span), span);
    }
  };
  return std::visit(Visitor{span}, f->node());
}

// ---------------------------------------------------------------------------
// Substitution.

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  for (unsigned i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

namespace {

std::set<std::string> names_to_avoid(const Substitution& mapping, const VarSet& body_free) {
  std::set<std::string> avoid;
  for (const auto& [name, sort] : body_free) avoid.insert(name);
  for (const auto& [key, term] : mapping) {
    avoid.insert(key);
    for (const auto& [name, sort] : free_vars(*term)) avoid.insert(name);
  }
  return avoid;
}

// Does any replacement term in the active mapping have `name` free?
bool would_capture(const std::string& name, const Substitution& mapping) {
  for (const auto& [key, term] : mapping) {
    for (const auto& [n, s] : free_vars(*term))
      if (n == name) return true;
  }
  return false;
}

TermPtr subst_term(const TermPtr& t, const Substitution& mapping);
FormulaPtr subst_formula(const FormulaPtr& f, const Substitution& mapping);

std::vector<TermPtr> subst_args(const std::vector<TermPtr>& args, const Substitution& mapping) {
  std::vector<TermPtr> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(subst_term(a, mapping));
  return out;
}

// Shared binder handling for quantifiers and probability-term vectors.
// Removes bound names from the mapping, renames binders a replacement term
// would capture, and returns the rewritten bodies.
struct BinderRewrite {
  std::vector<std::string> binders;
  Substitution inner;  // mapping to apply below the binder (includes renames)
};

BinderRewrite rewrite_binders(const std::vector<std::string>& binders, Sort binder_sort,
                              const Substitution& mapping, const VarSet& body_free) {
  Substitution active = mapping;
  for (const auto& b : binders) active.erase(b);

  BinderRewrite result;
  result.binders = binders;
  if (active.empty()) return result;

  std::set<std::string> avoid = names_to_avoid(active, body_free);
  for (auto& b : result.binders) avoid.insert(b);

  for (auto& b : result.binders) {
    if (!would_capture(b, active)) continue;
    std::string renamed = fresh_name(b, avoid);
    avoid.insert(renamed);
    active[b] = binder_sort == Sort::Object ? object_var(renamed) : field_var(renamed);
    b = renamed;
  }
  result.inner = std::move(active);
  return result;
}

TermPtr subst_term(const TermPtr& t, const Substitution& mapping) {
  if (mapping.empty()) return t;
  const SourceSpan span = t->span();
  struct Visitor {
    const TermPtr& t;
    const Substitution& mapping;
    SourceSpan span;
    TermPtr operator()(const ObjectVar& x) const {
      auto it = mapping.find(x.name);
      if (it == mapping.end()) return t;
      if (it->second->sort() != Sort::Object)
        throw Error(ErrorKind::SortMismatch,
                    "substituting a field term for object variable '" + x.name + "'", span);
      return it->second;
    }
    TermPtr operator()(const FieldVar& x) const {
      auto it = mapping.find(x.name);
      if (it == mapping.end()) return t;
      if (it->second->sort() != Sort::Field)
        throw Error(ErrorKind::SortMismatch,
                    "substituting an object term for field variable '" + x.name + "'", span);
      return it->second;
    }
    TermPtr operator()(const ObjectConst&) const { return t; }
    TermPtr operator()(const FieldConst&) const { return t; }
    TermPtr operator()(const ObjectApp& x) const { return object_app(x.fn, subst_args(x.args, mapping), span); }
    TermPtr operator()(const FieldApp& x) const { return field_app(x.fn, subst_args(x.args, mapping), span); }
    TermPtr operator()(const MeasureApp& x) const { return measure_app(x.fn, subst_args(x.args, mapping), span); }
    TermPtr operator()(const ProbTerm& x) const {
      VarSet body_free;
      body_free = free_vars(*x.body);
      if (x.given) {
        VarSet g = free_vars(*x.given);
        body_free.insert(g.begin(), g.end());
      }
      BinderRewrite rw = rewrite_binders(x.binders, Sort::Object, mapping, body_free);
      if (rw.inner.empty() && rw.binders == x.binders) return t;
      FormulaPtr body = subst_formula(x.body, rw.inner);
      FormulaPtr given = x.given ? subst_formula(x.given, rw.inner) : nullptr;
      return std::make_shared<Term>(ProbTerm{std::move(body), std::move(given), rw.binders}, span);
    }
  };
  return std::visit(Visitor{t, mapping, span}, t->node());
}

FormulaPtr subst_formula(const FormulaPtr& f, const Substitution& mapping) {
  if (mapping.empty()) return f;
  const SourceSpan span = f->span();
  struct Visitor {
    const FormulaPtr& f;
    const Substitution& mapping;
    SourceSpan span;
    FormulaPtr operator()(const Pred& x) const { return pred(x.name, subst_args(x.args, mapping), span); }
    FormulaPtr operator()(const Equal& x) const {
      return equal(subst_term(x.lhs, mapping), subst_term(x.rhs, mapping), x.sort, span);
    }
    FormulaPtr operator()(const Geq& x) const { return geq(subst_term(x.lhs, mapping), subst_term(x.rhs, mapping), span); }
    FormulaPtr operator()(const Leq& x) const { return leq(subst_term(x.lhs, mapping), subst_term(x.rhs, mapping), span); }
    FormulaPtr operator()(const Lt& x) const { return lt(subst_term(x.lhs, mapping), subst_term(x.rhs, mapping), span); }
    FormulaPtr operator()(const Gt& x) const { return gt(subst_term(x.lhs, mapping), subst_term(x.rhs, mapping), span); }
    FormulaPtr operator()(const InInterval& x) const {
      return in_interval(subst_term(x.value, mapping), subst_term(x.lo, mapping),
                         subst_term(x.hi, mapping), span);
    }
    FormulaPtr operator()(const Not& x) const { return lnot(subst_formula(x.body, mapping), span); }
    FormulaPtr operator()(const And& x) const {
      return land(subst_formula(x.lhs, mapping), subst_formula(x.rhs, mapping), span);
    }
    FormulaPtr operator()(const Or& x) const {
      return lor(subst_formula(x.lhs, mapping), subst_formula(x.rhs, mapping), span);
    }
    FormulaPtr operator()(const Implies& x) const {
      return implies(subst_formula(x.lhs, mapping), subst_formula(x.rhs, mapping), span);
    }
    FormulaPtr operator()(const Forall& x) const {
      BinderRewrite rw = rewrite_binders({x.var}, x.sort, mapping, free_vars(*x.body));
      if (rw.inner.empty() && rw.binders[0] == x.var) return f;
      return forall(rw.binders[0], x.sort, subst_formula(x.body, rw.inner), span);
    }
    FormulaPtr operator()(const Exists& x) const {
      BinderRewrite rw = rewrite_binders({x.var}, x.sort, mapping, free_vars(*x.body));
      if (rw.inner.empty() && rw.binders[0] == x.var) return f;
      return exists(rw.binders[0], x.sort, subst_formula(x.body, rw.inner), span);
    }
  };
  return std::visit(Visitor{f, mapping, span}, f->node());
}

}  // namespace

TermPtr substitute(const TermPtr& t, const Substitution& mapping) {
  return subst_term(t, mapping);
}

FormulaPtr substitute(const FormulaPtr& f, const Substitution& mapping) {
  return subst_formula(f, mapping);
}

// ---------------------------------------------------------------------------
// Constant generalization.

namespace {

bool mentions_const(const Term& t, const std::string& constant);
bool mentions_const(const Formula& f, const std::string& constant);

bool mentions_const_args(const std::vector<TermPtr>& args, const std::string& c) {
  return std::any_of(args.begin(), args.end(),
                     [&](const TermPtr& a) { return mentions_const(*a, c); });
}

bool mentions_const(const Term& t, const std::string& c) {
  struct Visitor {
    const std::string& c;
    bool operator()(const ObjectVar&) const { return false; }
    bool operator()(const ObjectConst& x) const { return x.name == c; }
    bool operator()(const FieldVar&) const { return false; }
    bool operator()(const FieldConst&) const { return false; }
    bool operator()(const ObjectApp& x) const { return mentions_const_args(x.args, c); }
    bool operator()(const FieldApp& x) const { return mentions_const_args(x.args, c); }
    bool operator()(const MeasureApp& x) const { return mentions_const_args(x.args, c); }
    bool operator()(const ProbTerm& x) const {
      return mentions_const(*x.body, c) || (x.given && mentions_const(*x.given, c));
    }
  };
  return std::visit(Visitor{c}, t.node());
}

bool mentions_const(const Formula& f, const std::string& c) {
  struct Visitor {
    const std::string& c;
    bool operator()(const Pred& x) const { return mentions_const_args(x.args, c); }
    bool operator()(const Equal& x) const { return mentions_const(*x.lhs, c) || mentions_const(*x.rhs, c); }
    bool operator()(const Geq& x) const { return mentions_const(*x.lhs, c) || mentions_const(*x.rhs, c); }
    bool operator()(const Leq& x) const { return mentions_const(*x.lhs, c) || mentions_const(*x.rhs, c); }
    bool operator()(const Lt& x) const { return mentions_const(*x.lhs, c) || mentions_const(*x.rhs, c); }
    bool operator()(const Gt& x) const { return mentions_const(*x.lhs, c) || mentions_const(*x.rhs, c); }
    bool operator()(const InInterval& x) const {
      return mentions_const(*x.value, c) || mentions_const(*x.lo, c) || mentions_const(*x.hi, c);
    }
    bool operator()(const Not& x) const { return mentions_const(*x.body, c); }
    bool operator()(const And& x) const { return mentions_const(*x.lhs, c) || mentions_const(*x.rhs, c); }
    bool operator()(const Or& x) const { return mentions_const(*x.lhs, c) || mentions_const(*x.rhs, c); }
    bool operator()(const Implies& x) const { return mentions_const(*x.lhs, c) || mentions_const(*x.rhs, c); }
    bool operator()(const Forall& x) const { return mentions_const(*x.body, c); }
    bool operator()(const Exists& x) const { return mentions_const(*x.body, c); }
  };
  return std::visit(Visitor{c}, f.node());
}

}  // namespace

FormulaPtr generalize(const FormulaPtr& f, const std::string& constant,
                      const std::string& var) {
  // Rename any binder named `var` that shadows an occurrence of the constant,
  // then replacing the constant by the variable is capture-free.
  struct Walker {
    const std::string& constant;
    const std::string& var;

    TermPtr walk(const TermPtr& t) const {
      const SourceSpan span = t->span();
      struct V {
        const Walker& w;
        const TermPtr& t;
        SourceSpan span;
        TermPtr operator()(const ObjectConst& x) const {
          return x.name == w.constant ? object_var(w.var, span) : t;
        }
        TermPtr operator()(const ObjectVar&) const { return t; }
        TermPtr operator()(const FieldVar&) const { return t; }
        TermPtr operator()(const FieldConst&) const { return t; }
        TermPtr operator()(const ObjectApp& x) const { return object_app(x.fn, w.walk_args(x.args), span); }
        TermPtr operator()(const FieldApp& x) const { return field_app(x.fn, w.walk_args(x.args), span); }
        TermPtr operator()(const MeasureApp& x) const { return measure_app(x.fn, w.walk_args(x.args), span); }
        TermPtr operator()(const ProbTerm& x) const {
          auto binders = x.binders;
          FormulaPtr body = x.body;
          FormulaPtr given = x.given;
          for (auto& b : binders) {
            if (b != w.var) continue;
            bool below = mentions_const(*body, w.constant) || (given && mentions_const(*given, w.constant));
            if (!below) continue;
            VarSet fv = free_vars(*body);
            if (given) {
              VarSet g = free_vars(*given);
              fv.insert(g.begin(), g.end());
            }
            std::set<std::string> avoid{w.var};
            for (const auto& [n, s] : fv) avoid.insert(n);
            for (const auto& ob : binders) avoid.insert(ob);
            std::string renamed = fresh_name(b, avoid);
            Substitution rename{{b, object_var(renamed)}};
            body = substitute(body, rename);
            if (given) given = substitute(given, rename);
            b = renamed;
          }
          return std::make_shared<Term>(
              ProbTerm{w.walk_formula(body), given ? w.walk_formula(given) : nullptr, binders}, span);
        }
      };
      return std::visit(V{*this, t, span}, t->node());
    }

    std::vector<TermPtr> walk_args(const std::vector<TermPtr>& args) const {
      std::vector<TermPtr> out;
      out.reserve(args.size());
      for (const auto& a : args) out.push_back(walk(a));
      return out;
    }

    FormulaPtr walk_formula(const FormulaPtr& f) const {
      const SourceSpan span = f->span();
      struct V {
        const Walker& w;
        const FormulaPtr& f;
        SourceSpan span;
        FormulaPtr operator()(const Pred& x) const { return pred(x.name, w.walk_args(x.args), span); }
        FormulaPtr operator()(const Equal& x) const { return equal(w.walk(x.lhs), w.walk(x.rhs), x.sort, span); }
        FormulaPtr operator()(const Geq& x) const { return geq(w.walk(x.lhs), w.walk(x.rhs), span); }
        FormulaPtr operator()(const Leq& x) const { return leq(w.walk(x.lhs), w.walk(x.rhs), span); }
        FormulaPtr operator()(const Lt& x) const { return lt(w.walk(x.lhs), w.walk(x.rhs), span); }
        FormulaPtr operator()(const Gt& x) const { return gt(w.walk(x.lhs), w.walk(x.rhs), span); }
        FormulaPtr operator()(const InInterval& x) const {
          return in_interval(w.walk(x.value), w.walk(x.lo), w.walk(x.hi), span);
        }
        FormulaPtr operator()(const Not& x) const { return lnot(w.walk_formula(x.body), span); }
        FormulaPtr operator()(const And& x) const { return land(w.walk_formula(x.lhs), w.walk_formula(x.rhs), span); }
        FormulaPtr operator()(const Or& x) const { return lor(w.walk_formula(x.lhs), w.walk_formula(x.rhs), span); }
        FormulaPtr operator()(const Implies& x) const {
          return implies(w.walk_formula(x.lhs), w.walk_formula(x.rhs), span);
        }
        FormulaPtr operator()(const Forall& x) const { return quantifier(x.var, x.sort, x.body, false); }
        FormulaPtr operator()(const Exists& x) const { return quantifier(x.var, x.sort, x.body, true); }

        FormulaPtr quantifier(const std::string& var, Sort sort, const FormulaPtr& body,
                              bool existential) const {
          std::string v = var;
          FormulaPtr b = body;
          if (v == w.var && sort == Sort::Object && mentions_const(*b, w.constant)) {
            std::set<std::string> avoid{w.var};
            for (const auto& [n, s] : free_vars(*b)) avoid.insert(n);
            std::string renamed = fresh_name(v, avoid);
            b = substitute(b, {{v, object_var(renamed)}});
            v = renamed;
          }
          FormulaPtr walked = w.walk_formula(b);
          return existential ? exists(v, sort, walked, span) : forall(v, sort, walked, span);
        }
      };
      return std::visit(V{*this, f, span}, f->node());
    }
  };
  return Walker{constant, var}.walk_formula(f);
}

}  // namespace lp
