#include "lp/printer.hpp"

#include <sstream>

namespace lp {

namespace {

// Formula binding strength: quantifiers (maximal scope) < -> < or < and
// < ! < atoms. Terms: +,- < *,/ < primaries.
constexpr int kQuant = 0, kImplies = 1, kOr = 2, kAnd = 3, kNot = 4, kAtom = 5;
constexpr int kAdd = 1, kMul = 2, kPrimary = 3;

class Printer {
 public:
  explicit Printer(std::ostringstream& os) : os_(os) {}

  void formula(const Formula& f, int required, bool in_bracket) {
    int level = formula_level(f);
    if (level < required) {
      os_ << "(";
      formula(f, kQuant, in_bracket);
      os_ << ")";
      return;
    }
    struct V {
      Printer& p;
      bool inb;
      void operator()(const Pred& x) const {
        p.os_ << x.name << "(";
        p.args(x.args, inb);
        p.os_ << ")";
      }
      void operator()(const Equal& x) const { p.binary_cmp(x.lhs, "=", x.rhs, inb); }
      void operator()(const Geq& x) const { p.binary_cmp(x.lhs, ">=", x.rhs, inb); }
      void operator()(const Leq& x) const { p.binary_cmp(x.lhs, "<=", x.rhs, inb); }
      void operator()(const Lt& x) const { p.binary_cmp(x.lhs, "<", x.rhs, inb); }
      void operator()(const Gt& x) const { p.binary_cmp(x.lhs, ">", x.rhs, inb); }
      void operator()(const InInterval& x) const {
        p.term(*x.value, kAdd, inb);
        p.os_ << " in [";
        p.term(*x.lo, kAdd, inb);
        p.os_ << ", ";
        p.term(*x.hi, kAdd, inb);
        p.os_ << "]";
      }
      void operator()(const Not& x) const {
        p.os_ << "!";
        p.formula(*x.body, kNot, inb);
      }
      void operator()(const And& x) const {
        p.formula(*x.lhs, kAnd, inb);
        p.os_ << " & ";
        p.formula(*x.rhs, kAnd + 1, inb);
      }
      void operator()(const Or& x) const {
        p.formula(*x.lhs, kOr, inb);
        p.os_ << (inb ? " or " : " | ");
        p.formula(*x.rhs, kOr + 1, inb);
      }
      void operator()(const Implies& x) const {
        p.formula(*x.lhs, kImplies + 1, inb);
        p.os_ << " -> ";
        p.formula(*x.rhs, kImplies, inb);
      }
      void operator()(const Forall& x) const { p.quantifier("forall", x, inb); }
      void operator()(const Exists& x) const {
        p.os_ << "exists " << x.var << (x.sort == Sort::Field ? ":field" : "");
        const Formula* body = x.body.get();
        while (const auto* inner = body->get_if<Exists>()) {
          p.os_ << ", " << inner->var << (inner->sort == Sort::Field ? ":field" : "");
          body = inner->body.get();
        }
        p.os_ << ". ";
        p.formula(*body, kQuant, inb);
      }
    };
    std::visit(V{*this, in_bracket}, f.node());
  }

  void term(const Term& t, int required, bool in_bracket) {
    int level = term_level(t);
    if (level < required) {
      os_ << "(";
      term(t, kAdd, in_bracket);
      os_ << ")";
      return;
    }
    struct V {
      Printer& p;
      bool inb;
      void operator()(const ObjectVar& x) const { p.os_ << x.name; }
      void operator()(const ObjectConst& x) const { p.os_ << x.name; }
      void operator()(const FieldVar& x) const { p.os_ << x.name; }
      void operator()(const FieldConst& x) const {
        if (x.is_literal()) p.os_ << x.literal().str();
        else p.os_ << x.name();
      }
      void operator()(const ObjectApp& x) const { p.app(x.fn, x.args, inb); }
      void operator()(const FieldApp& x) const {
        if (x.fn == "+" || x.fn == "-") {
          p.term(*x.args[0], kAdd, inb);
          p.os_ << " " << x.fn << " ";
          p.term(*x.args[1], kAdd + 1, inb);
        } else if (x.fn == "*" || x.fn == "/") {
          p.term(*x.args[0], kMul, inb);
          p.os_ << " " << x.fn << " ";
          p.term(*x.args[1], kMul + 1, inb);
        } else {
          p.app(x.fn, x.args, inb);
        }
      }
      void operator()(const MeasureApp& x) const { p.app(x.fn, x.args, inb); }
      void operator()(const ProbTerm& x) const {
        p.os_ << "[";
        p.formula(*x.body, kQuant, true);
        if (x.given) {
          p.os_ << " | ";
          p.formula(*x.given, kQuant, true);
        }
        p.os_ << "]{";
        for (std::size_t i = 0; i < x.binders.size(); ++i) {
          if (i) p.os_ << ", ";
          p.os_ << x.binders[i];
        }
        p.os_ << "}";
      }
    };
    std::visit(V{*this, in_bracket}, t.node());
  }

 private:
  void quantifier(const char* kw, const Forall& q, bool inb) {
    os_ << kw << " " << q.var << (q.sort == Sort::Field ? ":field" : "");
    const Formula* body = q.body.get();
    while (const auto* inner = body->get_if<Forall>()) {
      os_ << ", " << inner->var << (inner->sort == Sort::Field ? ":field" : "");
      body = inner->body.get();
    }
    os_ << ". ";
    formula(*body, kQuant, inb);
  }

  void binary_cmp(const TermPtr& lhs, const char* op, const TermPtr& rhs, bool inb) {
    term(*lhs, kAdd, inb);
    os_ << " " << op << " ";
    term(*rhs, kAdd, inb);
  }

  void app(const std::string& fn, const std::vector<TermPtr>& as, bool inb) {
    os_ << fn << "(";
    args(as, inb);
    os_ << ")";
  }

  void args(const std::vector<TermPtr>& as, bool inb) {
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (i) os_ << ", ";
      term(*as[i], kAdd, inb);
    }
  }

  static int formula_level(const Formula& f) {
    struct V {
      int operator()(const Pred&) const { return kAtom; }
      int operator()(const Equal&) const { return kAtom; }
      int operator()(const Geq&) const { return kAtom; }
      int operator()(const Leq&) const { return kAtom; }
      int operator()(const Lt&) const { return kAtom; }
      int operator()(const Gt&) const { return kAtom; }
      int operator()(const InInterval&) const { return kAtom; }
      int operator()(const Not&) const { return kNot; }
      int operator()(const And&) const { return kAnd; }
      int operator()(const Or&) const { return kOr; }
      int operator()(const Implies&) const { return kImplies; }
      int operator()(const Forall&) const { return kQuant; }
      int operator()(const Exists&) const { return kQuant; }
    };
    return std::visit(V{}, f.node());
  }

  static int term_level(const Term& t) {
    if (const auto* app = t.get_if<FieldApp>()) {
      if (app->fn == "+" || app->fn == "-") return kAdd;
      if (app->fn == "*" || app->fn == "/") return kMul;
    }
    return kPrimary;
  }

  std::ostringstream& os_;
};

}  // namespace

std::string print(const Term& t) {
  std::ostringstream os;
  Printer(os).term(t, kQuant, false);
  return os.str();
}

std::string print(const Formula& f) {
  std::ostringstream os;
  Printer(os).formula(f, kQuant, false);
  return os.str();
}

}  // namespace lp
