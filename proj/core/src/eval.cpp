#include "lp/eval.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace lp {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp, std::uint64_t cap) {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && result > cap / base) return cap + 1;
    result *= base;
  }
  return result;
}

bool term_mentions_field_var(const Term& t, const std::string& var) {
  auto fv = free_vars(t);
  return fv.count({var, Sort::Field}) > 0;
}

// Environment with scoped rebinding.
class Env {
 public:
  explicit Env(const Assignment& sigma) : sigma_(sigma) {}

  const std::uint32_t* object(const std::string& var) const { return sigma_.object(var); }
  const Rational* field(const std::string& var) const { return sigma_.field(var); }

  void bind_object(const std::string& var, std::uint32_t v) { sigma_.set_object(var, v); }
  void bind_field(const std::string& var, const Rational& v) { sigma_.set_field(var, v); }

 private:
  Assignment sigma_;
};

class Evaluator {
 public:
  Evaluator(const LpStructure& s, const Vocabulary& vocab, const Assignment& sigma,
            const EvalOptions& opts)
      : s_(s), vocab_(vocab), env_(sigma),
        cap_(std::min(opts.max_enumeration, kMaxEnumeration)) {}

  bool formula(const Formula& f) {
    struct V {
      Evaluator& e;
      const Formula& f;
      bool operator()(const Pred& x) const { return e.s_.pred_holds(x.name, e.object_args(x.args)); }
      bool operator()(const Equal& x) const {
        if (x.sort == Sort::Object) return e.object(*x.lhs) == e.object(*x.rhs);
        return e.field(*x.lhs) == e.field(*x.rhs);
      }
      bool operator()(const Geq& x) const { return e.field(*x.lhs) >= e.field(*x.rhs); }
      bool operator()(const Not& x) const { return !e.formula(*x.body); }
      bool operator()(const And& x) const {
        // No short-circuit: an undefined conjunct is an error, not false.
        bool lhs = e.formula(*x.lhs);
        bool rhs = e.formula(*x.rhs);
        return lhs && rhs;
      }
      bool operator()(const Forall& x) const {
        if (x.sort == Sort::Object) return e.forall_object(x.var, *x.body);
        return e.forall_field(x.var, *x.body, f.span());
      }
      bool operator()(const Leq&) const { return sugar(); }
      bool operator()(const Lt&) const { return sugar(); }
      bool operator()(const Gt&) const { return sugar(); }
      bool operator()(const InInterval&) const { return sugar(); }
      bool operator()(const Or&) const { return sugar(); }
      bool operator()(const Implies&) const { return sugar(); }
      bool operator()(const Exists&) const { return sugar(); }
      [[noreturn]] bool sugar() const {
        throw Error(ErrorKind::Internal, "evaluator requires desugared input", f.span());
      }
    };
    return std::visit(V{*this, f}, f.node());
  }

  TermValue term(const Term& t) {
    if (t.sort() == Sort::Object) return object(t);
    return field(t);
  }

  Rational field(const Term& t) {
    struct V {
      Evaluator& e;
      const Term& t;
      Rational operator()(const FieldVar& x) const {
        const Rational* v = e.env_.field(x.name);
        if (!v)
          throw Error(ErrorKind::UnboundVariable, "field variable '" + x.name + "' is unbound",
                      t.span());
        return *v;
      }
      Rational operator()(const FieldConst& x) const {
        return x.is_literal() ? x.literal() : e.s_.field_const(x.name());
      }
      Rational operator()(const FieldApp& x) const {
        if (x.fn == "+" || x.fn == "-" || x.fn == "*" || x.fn == "/") {
          Rational lhs = e.field(*x.args[0]);
          Rational rhs = e.field(*x.args[1]);
          if (x.fn == "+") return lhs + rhs;
          if (x.fn == "-") return lhs - rhs;
          if (x.fn == "*") return lhs * rhs;
          if (rhs.is_zero())
            throw Error(ErrorKind::DivisionByZero, "division by zero", t.span());
          return lhs / rhs;
        }
        const FieldFuncHook* hook = e.vocab_.field_func_hook(x.fn);
        if (!hook)
          throw Error(ErrorKind::MissingHook,
                      "field function '" + x.fn + "' has no evaluation hook registered",
                      t.span());
        std::vector<Rational> args;
        args.reserve(x.args.size());
        for (const auto& a : x.args) args.push_back(e.field(*a));
        return (*hook)(args);
      }
      Rational operator()(const MeasureApp& x) const {
        return e.s_.apply_measuring(x.fn, e.object_args(x.args));
      }
      Rational operator()(const ProbTerm& x) const { return e.prob(x, t.span()); }
      Rational operator()(const ObjectVar&) const { return not_field(); }
      Rational operator()(const ObjectConst&) const { return not_field(); }
      Rational operator()(const ObjectApp&) const { return not_field(); }
      [[noreturn]] Rational not_field() const {
        throw Error(ErrorKind::SortMismatch, "expected a field term", t.span());
      }
    };
    return std::visit(V{*this, t}, t.node());
  }

  std::uint32_t object(const Term& t) {
    struct V {
      Evaluator& e;
      const Term& t;
      std::uint32_t operator()(const ObjectVar& x) const {
        const std::uint32_t* v = e.env_.object(x.name);
        if (!v)
          throw Error(ErrorKind::UnboundVariable,
                      "object variable '" + x.name + "' is unbound", t.span());
        return *v;
      }
      std::uint32_t operator()(const ObjectConst& x) const { return e.s_.object_const(x.name); }
      std::uint32_t operator()(const ObjectApp& x) const {
        return e.s_.apply_function(x.fn, e.object_args(x.args));
      }
      std::uint32_t operator()(const FieldVar&) const { return not_object(); }
      std::uint32_t operator()(const FieldConst&) const { return not_object(); }
      std::uint32_t operator()(const FieldApp&) const { return not_object(); }
      std::uint32_t operator()(const MeasureApp&) const { return not_object(); }
      std::uint32_t operator()(const ProbTerm&) const { return not_object(); }
      [[noreturn]] std::uint32_t not_object() const {
        throw Error(ErrorKind::SortMismatch, "expected an object term", t.span());
      }
    };
    return std::visit(V{*this, t}, t.node());
  }

 private:
  Tuple object_args(const std::vector<TermPtr>& args) {
    Tuple t;
    t.reserve(args.size());
    for (const auto& a : args) t.push_back(object(*a));
    return t;
  }

  // ([a]_x)^sigma = mu_n{ tuples | a holds under sigma(x/tuple) }.
  Rational prob(const ProbTerm& pt, SourceSpan span) {
    if (pt.given)
      throw Error(ErrorKind::Internal, "evaluator requires desugared input", span);
    const std::uint32_t n = s_.domain_size();
    const auto k = static_cast<std::uint32_t>(pt.binders.size());
    std::uint64_t needed = checked_pow(n, k, cap_);
    if (needed > cap_) {
      std::ostringstream os;
      os << "probability term needs " << n << "^" << k
         << " tuple evaluations, over the cap of " << cap_;
      throw Error(ErrorKind::EnumerationCapExceeded, os.str(), span);
    }

    Env saved = env_;
    Rational sum(0);
    Tuple tuple(k, 0);
    for (;;) {
      for (std::uint32_t i = 0; i < k; ++i) env_.bind_object(pt.binders[i], tuple[i]);
      if (formula(*pt.body)) {
        Rational w(1);
        for (std::uint32_t i = 0; i < k; ++i) w *= s_.weight(tuple[i]);
        sum += w;
      }
      std::uint32_t i = 0;
      while (i < k && ++tuple[i] == n) tuple[i++] = 0;
      if (i == k) break;
    }
    env_ = std::move(saved);
    return sum;
  }

  bool forall_object(const std::string& var, const Formula& body) {
    Env saved = env_;
    bool all = true;
    for (std::uint32_t i = 0; i < s_.domain_size(); ++i) {
      env_.bind_object(var, i);
      // Every instance is evaluated: an undefined instance is an error.
      if (!formula(body)) all = false;
    }
    env_ = std::move(saved);
    return all;
  }

  // --- universal quantification over the field ---

  // Collects the terms the field variable is compared against. Object
  // binders crossed on the way down are recorded so each partner can be
  // evaluated under every assignment of the binders it uses.
  struct Partner {
    const Term* term;
    std::vector<std::string> object_chain;
  };

  void scan_partner_side(const Term& t, const std::string& var,
                         std::vector<std::string>& object_chain,
                         std::set<std::string>& field_inner,
                         std::vector<Partner>& out, SourceSpan span) {
    struct V {
      Evaluator& e;
      const Term& t;
      const std::string& var;
      std::vector<std::string>& chain;
      std::set<std::string>& field_inner;
      std::vector<Partner>& out;
      SourceSpan span;
      void operator()(const FieldVar& x) const {
        if (x.name == var)
          throw Error(ErrorKind::FieldQuantifierUnsupported,
                      "field variable '" + var +
                          "' is used outside direct comparisons; cannot decide the quantifier",
                      span);
      }
      void operator()(const FieldApp& x) const {
        for (const auto& a : x.args)
          e.scan_partner_side(*a, var, chain, field_inner, out, span);
      }
      void operator()(const ProbTerm& x) const {
        auto extended = chain;
        extended.insert(extended.end(), x.binders.begin(), x.binders.end());
        e.collect_partners(*x.body, var, extended, field_inner, out);
        if (x.given) e.collect_partners(*x.given, var, extended, field_inner, out);
      }
      void operator()(const FieldConst&) const {}
      void operator()(const MeasureApp&) const {}  // object args cannot hold field vars
      void operator()(const ObjectVar&) const {}
      void operator()(const ObjectConst&) const {}
      void operator()(const ObjectApp&) const {}
    };
    std::visit(V{*this, t, var, object_chain, field_inner, out, span}, t.node());
  }

  void handle_atom(const TermPtr& lhs, const TermPtr& rhs, const std::string& var,
                   std::vector<std::string>& object_chain,
                   std::set<std::string>& field_inner,
                   std::vector<Partner>& out, SourceSpan span) {
    auto bare = [&](const TermPtr& t) {
      const auto* v = t->get_if<FieldVar>();
      return v && v->name == var;
    };
    bool l = bare(lhs), r = bare(rhs);
    if (l || r) {
      const TermPtr& partner = l ? rhs : lhs;
      if ((l && r) || term_mentions_field_var(*partner, var))
        throw Error(ErrorKind::FieldQuantifierUnsupported,
                    "field variable '" + var + "' compared against a term containing itself",
                    span);
      for (const auto& fv : free_vars(*partner)) {
        if (fv.second == Sort::Field && field_inner.count(fv.first))
          throw Error(ErrorKind::FieldQuantifierUnsupported,
                      "comparison partner mentions inner field variable '" + fv.first + "'",
                      span);
      }
      out.push_back(Partner{partner.get(), object_chain});
      return;
    }
    scan_partner_side(*lhs, var, object_chain, field_inner, out, span);
    scan_partner_side(*rhs, var, object_chain, field_inner, out, span);
  }

  void collect_partners(const Formula& f, const std::string& var,
                        std::vector<std::string> object_chain,
                        std::set<std::string>& field_inner,
                        std::vector<Partner>& out) {
    struct V {
      Evaluator& e;
      const Formula& f;
      const std::string& var;
      std::vector<std::string>& chain;
      std::set<std::string>& field_inner;
      std::vector<Partner>& out;
      void operator()(const Pred&) const {}       // object arguments only
      void operator()(const Equal& x) const {
        if (x.sort == Sort::Object) return;
        e.handle_atom(x.lhs, x.rhs, var, chain, field_inner, out, f.span());
      }
      void operator()(const Geq& x) const {
        e.handle_atom(x.lhs, x.rhs, var, chain, field_inner, out, f.span());
      }
      void operator()(const Not& x) const {
        e.collect_partners(*x.body, var, chain, field_inner, out);
      }
      void operator()(const And& x) const {
        e.collect_partners(*x.lhs, var, chain, field_inner, out);
        e.collect_partners(*x.rhs, var, chain, field_inner, out);
      }
      void operator()(const Forall& x) const {
        if (x.sort == Sort::Object) {
          auto extended = chain;
          extended.push_back(x.var);
          e.collect_partners(*x.body, var, extended, field_inner, out);
          return;
        }
        if (x.var == var) return;  // shadowed below
        field_inner.insert(x.var);
        e.collect_partners(*x.body, var, chain, field_inner, out);
        field_inner.erase(x.var);
      }
      void operator()(const Leq&) const { sugar(); }
      void operator()(const Lt&) const { sugar(); }
      void operator()(const Gt&) const { sugar(); }
      void operator()(const InInterval&) const { sugar(); }
      void operator()(const Or&) const { sugar(); }
      void operator()(const Implies&) const { sugar(); }
      void operator()(const Exists&) const { sugar(); }
      void sugar() const {
        throw Error(ErrorKind::Internal, "evaluator requires desugared input", f.span());
      }
    };
    std::visit(V{*this, f, var, object_chain, field_inner, out}, f.node());
  }

  // Values a partner takes under every assignment of the object binders it
  // actually uses.
  void partner_values(const Partner& p, std::vector<Rational>& values) {
    VarSet fv = free_vars(*p.term);
    std::vector<std::string> used;
    for (const auto& b : p.object_chain) {
      if (fv.count({b, Sort::Object}) &&
          std::find(used.begin(), used.end(), b) == used.end())
        used.push_back(b);
    }
    const std::uint32_t n = s_.domain_size();
    const auto k = static_cast<std::uint32_t>(used.size());
    std::uint64_t needed = checked_pow(n, k, cap_);
    if (needed > cap_)
      throw Error(ErrorKind::EnumerationCapExceeded,
                  "field-quantifier breakpoint collection exceeds the enumeration cap");
    Env saved = env_;
    Tuple tuple(k, 0);
    for (;;) {
      for (std::uint32_t i = 0; i < k; ++i) env_.bind_object(used[i], tuple[i]);
      values.push_back(field(*p.term));
      std::uint32_t i = 0;
      while (i < k && ++tuple[i] == n) tuple[i++] = 0;
      if (i == k) break;
    }
    env_ = std::move(saved);
  }

  bool forall_field(const std::string& var, const Formula& body, SourceSpan) {
    std::vector<Partner> partners;
    std::set<std::string> field_inner;
    collect_partners(body, var, {}, field_inner, partners);

    std::vector<Rational> values;
    for (const auto& p : partners) partner_values(p, values);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    // Representative points: every breakpoint, the midpoints between
    // consecutive ones, and one point beyond each extreme.
    std::vector<Rational> points;
    if (values.empty()) {
      points.push_back(Rational(0));
    } else {
      points.push_back(values.front() - Rational(1));
      for (std::size_t i = 0; i < values.size(); ++i) {
        points.push_back(values[i]);
        if (i + 1 < values.size())
          points.push_back((values[i] + values[i + 1]) / Rational(2));
      }
      points.push_back(values.back() + Rational(1));
    }

    Env saved = env_;
    bool all = true;
    for (const auto& p : points) {
      env_.bind_field(var, p);
      if (!formula(body)) all = false;
    }
    env_ = std::move(saved);
    return all;
  }

  const LpStructure& s_;
  const Vocabulary& vocab_;
  Env env_;
  std::uint64_t cap_;
};

}  // namespace

bool eval_formula(const LpStructure& structure, const Vocabulary& vocab,
                  const Assignment& sigma, const Formula& formula,
                  const EvalOptions& options) {
  return Evaluator(structure, vocab, sigma, options).formula(formula);
}

TermValue eval_term(const LpStructure& structure, const Vocabulary& vocab,
                    const Assignment& sigma, const Term& term,
                    const EvalOptions& options) {
  return Evaluator(structure, vocab, sigma, options).term(term);
}

Rational eval_field_term(const LpStructure& structure, const Vocabulary& vocab,
                         const Assignment& sigma, const Term& term,
                         const EvalOptions& options) {
  return Evaluator(structure, vocab, sigma, options).field(term);
}

}  // namespace lp
