#include <map>
#include <sstream>

#include "lp/vocabulary.hpp"

namespace lp {

namespace {

bool is_arith(const std::string& fn) {
  return fn == "+" || fn == "-" || fn == "*" || fn == "/";
}

// Sort checker. Variables may be used without declaration (the concrete
// syntax introduces object variables implicitly), but one name must stick
// to one sort and must not collide with a non-variable symbol.
class Checker {
 public:
  explicit Checker(const Vocabulary& vocab) : vocab_(vocab) {}

  void check(const Term& t) {
    struct V {
      Checker& c;
      const Term& t;
      void operator()(const ObjectVar& x) const { c.check_var(x.name, Sort::Object, t.span()); }
      void operator()(const FieldVar& x) const { c.check_var(x.name, Sort::Field, t.span()); }
      void operator()(const ObjectConst& x) const {
        c.require_kind(x.name, SymbolKind::ObjectConst, t.span());
      }
      void operator()(const FieldConst& x) const {
        if (!x.is_literal()) c.require_kind(x.name(), SymbolKind::FieldConst, t.span());
      }
      void operator()(const ObjectApp& x) const {
        c.require_kind(x.fn, SymbolKind::ObjectFunc, t.span());
        c.check_app(x.fn, x.args, c.vocab_.object_func_arity(x.fn), Sort::Object, t.span());
      }
      void operator()(const FieldApp& x) const {
        std::uint32_t arity;
        if (is_arith(x.fn)) {
          arity = 2;
        } else {
          c.require_kind(x.fn, SymbolKind::FieldFunc, t.span());
          arity = c.vocab_.field_func_arity(x.fn);
        }
        c.check_app(x.fn, x.args, arity, Sort::Field, t.span());
      }
      void operator()(const MeasureApp& x) const {
        c.require_kind(x.fn, SymbolKind::Measure, t.span());
        c.check_app(x.fn, x.args, c.vocab_.measure_arity(x.fn), Sort::Object, t.span());
      }
      void operator()(const ProbTerm& x) const {
        if (x.binders.empty())
          throw Error(ErrorKind::EmptyBinderVector,
                      "probability term needs at least one bound variable", t.span());
        std::set<std::string> seen;
        for (const auto& b : x.binders) {
          if (!seen.insert(b).second)
            throw Error(ErrorKind::DuplicateBoundVariable,
                        "variable '" + b + "' repeated in probability-term vector", t.span());
          c.check_binder_name(b, Sort::Object, t.span());
        }
        auto saved = c.bound_;
        for (const auto& b : x.binders) c.bound_[b] = Sort::Object;
        c.check(*x.body);
        if (x.given) c.check(*x.given);
        c.bound_ = std::move(saved);
      }
    };
    std::visit(V{*this, t}, t.node());
  }

  void check(const Formula& f) {
    struct V {
      Checker& c;
      const Formula& f;
      void operator()(const Pred& x) const {
        c.require_kind(x.name, SymbolKind::Pred, f.span());
        c.check_app(x.name, x.args, c.vocab_.pred_arity(x.name), Sort::Object, f.span());
      }
      void operator()(const Equal& x) const {
        c.check(*x.lhs);
        c.check(*x.rhs);
        if (x.lhs->sort() != x.sort || x.rhs->sort() != x.sort)
          throw Error(ErrorKind::SortMismatch,
                      std::string("'=' declared at sort ") + sort_name(x.sort) +
                          " applied to " + sort_name(x.lhs->sort()) + " and " +
                          sort_name(x.rhs->sort()) + " terms",
                      f.span());
      }
      void operator()(const Geq& x) const { c.check_field_pair("'>='", x.lhs, x.rhs, f.span()); }
      void operator()(const Leq& x) const { c.check_field_pair("'<='", x.lhs, x.rhs, f.span()); }
      void operator()(const Lt& x) const { c.check_field_pair("'<'", x.lhs, x.rhs, f.span()); }
      void operator()(const Gt& x) const { c.check_field_pair("'>'", x.lhs, x.rhs, f.span()); }
      void operator()(const InInterval& x) const {
        c.check_field_pair("'in'", x.value, x.lo, f.span());
        c.check(*x.hi);
        if (x.hi->sort() != Sort::Field)
          throw Error(ErrorKind::SortMismatch, "interval bound must be a field term", f.span());
      }
      void operator()(const Not& x) const { c.check(*x.body); }
      void operator()(const And& x) const { c.check(*x.lhs); c.check(*x.rhs); }
      void operator()(const Or& x) const { c.check(*x.lhs); c.check(*x.rhs); }
      void operator()(const Implies& x) const { c.check(*x.lhs); c.check(*x.rhs); }
      void operator()(const Forall& x) const { c.check_quantifier(x.var, x.sort, *x.body, f.span()); }
      void operator()(const Exists& x) const { c.check_quantifier(x.var, x.sort, *x.body, f.span()); }
    };
    std::visit(V{*this, f}, f.node());
  }

 private:
  void check_quantifier(const std::string& var, Sort sort, const Formula& body, SourceSpan span) {
    check_binder_name(var, sort, span);
    auto saved = bound_;
    bound_[var] = sort;
    check(body);
    bound_ = std::move(saved);
  }

  void check_field_pair(const char* op, const TermPtr& lhs, const TermPtr& rhs, SourceSpan span) {
    check(*lhs);
    check(*rhs);
    if (lhs->sort() != Sort::Field || rhs->sort() != Sort::Field)
      throw Error(ErrorKind::SortMismatch,
                  std::string(op) + " expects field terms, got " + sort_name(lhs->sort()) +
                      " and " + sort_name(rhs->sort()),
                  span);
  }

  void check_app(const std::string& name, const std::vector<TermPtr>& args,
                 std::uint32_t arity, Sort expected, SourceSpan span) {
    if (args.size() != arity) {
      std::ostringstream os;
      os << "'" << name << "' expects " << arity << " argument(s), got " << args.size();
      throw Error(ErrorKind::ArityMismatch, os.str(), span);
    }
    for (const auto& a : args) {
      check(*a);
      if (a->sort() != expected)
        throw Error(ErrorKind::SortMismatch,
                    "argument of '" + name + "' must be a " + sort_name(expected) +
                        " term, got a " + sort_name(a->sort()) + " term",
                    a->span().valid() ? a->span() : span);
    }
  }

  void require_kind(const std::string& name, SymbolKind expected, SourceSpan span) {
    auto kind = vocab_.kind_of(name);
    if (!kind)
      throw Error(ErrorKind::UnknownSymbol,
                  std::string("undeclared ") + symbol_kind_name(expected) + " '" + name + "'",
                  span);
    if (*kind != expected)
      throw Error(ErrorKind::SortMismatch,
                  "'" + name + "' is declared as " + symbol_kind_name(*kind) + ", used as " +
                      symbol_kind_name(expected),
                  span);
  }

  void check_binder_name(const std::string& name, Sort sort, SourceSpan span) {
    auto kind = vocab_.kind_of(name);
    SymbolKind var_kind = sort == Sort::Object ? SymbolKind::ObjectVar : SymbolKind::FieldVar;
    if (kind && *kind != SymbolKind::ObjectVar && *kind != SymbolKind::FieldVar)
      throw Error(ErrorKind::SortMismatch,
                  "bound variable '" + name + "' collides with declared " +
                      symbol_kind_name(*kind),
                  span);
    if (kind && *kind != var_kind)
      throw Error(ErrorKind::SortMismatch,
                  "'" + name + "' is declared as " + symbol_kind_name(*kind) + ", bound as " +
                      symbol_kind_name(var_kind),
                  span);
    note_var_sort(name, sort, span);
  }

  void check_var(const std::string& name, Sort sort, SourceSpan span) {
    auto it = bound_.find(name);
    if (it != bound_.end()) {
      if (it->second != sort)
        throw Error(ErrorKind::SortMismatch,
                    "variable '" + name + "' is bound at sort " + sort_name(it->second) +
                        ", used at sort " + sort_name(sort),
                    span);
      return;
    }
    auto kind = vocab_.kind_of(name);
    if (kind && *kind != SymbolKind::ObjectVar && *kind != SymbolKind::FieldVar)
      throw Error(ErrorKind::SortMismatch,
                  "'" + name + "' is declared as " + symbol_kind_name(*kind) +
                      ", used as a variable",
                  span);
    if (sort == Sort::Field) {
      // Free field variables must be declared; object variables are implicit.
      if (!kind || *kind != SymbolKind::FieldVar)
        throw Error(ErrorKind::UnknownSymbol,
                    "field variable '" + name + "' is not declared (use `field var " + name + ";`)",
                    span);
    } else if (kind && *kind == SymbolKind::FieldVar) {
      throw Error(ErrorKind::SortMismatch,
                  "'" + name + "' is declared as a field variable, used as an object variable",
                  span);
    }
    note_var_sort(name, sort, span);
  }

  void note_var_sort(const std::string& name, Sort sort, SourceSpan span) {
    auto [it, inserted] = var_sorts_.emplace(name, sort);
    if (!inserted && it->second != sort)
      throw Error(ErrorKind::SortMismatch,
                  "variable '" + name + "' used at both sorts", span);
  }

  const Vocabulary& vocab_;
  std::map<std::string, Sort> bound_;
  std::map<std::string, Sort> var_sorts_;
};

}  // namespace

void well_formed(const Term& t, const Vocabulary& vocab) {
  Checker(vocab).check(t);
}

void well_formed(const Formula& f, const Vocabulary& vocab) {
  Checker(vocab).check(f);
}

}  // namespace lp
