#include "lp/belief.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "lp/parser.hpp"
#include "lp/printer.hpp"

namespace lp {

namespace {

// A ground literal: Pred over object constants, possibly negated.
const Pred* as_ground_literal(const Formula& f) {
  const Formula* body = &f;
  if (const auto* n = f.get_if<Not>()) body = n->body.get();
  const auto* p = body->get_if<Pred>();
  if (!p) return nullptr;
  for (const auto& a : p->args)
    if (!a->get_if<ObjectConst>()) return nullptr;
  return p;
}

bool mentions_constant(const Pred& p, const std::string& constant) {
  for (const auto& a : p.args)
    if (const auto* c = a->get_if<ObjectConst>(); c && c->name == constant) return true;
  return false;
}

bool contains_prob_term(const Formula& f);

bool contains_prob_term(const Term& t) {
  if (t.get_if<ProbTerm>()) return true;
  if (const auto* a = t.get_if<ObjectApp>()) {
    for (const auto& arg : a->args)
      if (contains_prob_term(*arg)) return true;
    return false;
  }
  if (const auto* a = t.get_if<FieldApp>()) {
    for (const auto& arg : a->args)
      if (contains_prob_term(*arg)) return true;
    return false;
  }
  if (const auto* a = t.get_if<MeasureApp>()) {
    for (const auto& arg : a->args)
      if (contains_prob_term(*arg)) return true;
  }
  return false;
}

bool contains_prob_term(const Formula& f) {
  struct V {
    bool operator()(const Pred& x) const { return any(x.args); }
    bool operator()(const Equal& x) const { return contains_prob_term(*x.lhs) || contains_prob_term(*x.rhs); }
    bool operator()(const Geq& x) const { return contains_prob_term(*x.lhs) || contains_prob_term(*x.rhs); }
    bool operator()(const Leq& x) const { return contains_prob_term(*x.lhs) || contains_prob_term(*x.rhs); }
    bool operator()(const Lt& x) const { return contains_prob_term(*x.lhs) || contains_prob_term(*x.rhs); }
    bool operator()(const Gt& x) const { return contains_prob_term(*x.lhs) || contains_prob_term(*x.rhs); }
    bool operator()(const InInterval& x) const {
      return contains_prob_term(*x.value) || contains_prob_term(*x.lo) || contains_prob_term(*x.hi);
    }
    bool operator()(const Not& x) const { return contains_prob_term(*x.body); }
    bool operator()(const And& x) const { return contains_prob_term(*x.lhs) || contains_prob_term(*x.rhs); }
    bool operator()(const Or& x) const { return contains_prob_term(*x.lhs) || contains_prob_term(*x.rhs); }
    bool operator()(const Implies& x) const { return contains_prob_term(*x.lhs) || contains_prob_term(*x.rhs); }
    bool operator()(const Forall& x) const { return contains_prob_term(*x.body); }
    bool operator()(const Exists& x) const { return contains_prob_term(*x.body); }
    static bool any(const std::vector<TermPtr>& args) {
      for (const auto& a : args)
        if (contains_prob_term(*a)) return true;
      return false;
    }
  };
  return std::visit(V{}, f.node());
}

}  // namespace

KnowledgeBase parse_kb(std::string_view text) {
  ParsedFile file = parse_file(text);
  KnowledgeBase kb;
  kb.vocab = std::move(file.vocab);
  for (const auto& stmt : file.statements) {
    if (!stmt.is_formula())
      throw Error(ErrorKind::OutsideFragment,
                  "a knowledge base holds sentences, not bare terms", stmt.span);
    const FormulaPtr& f = stmt.formula();
    if (as_ground_literal(*f)) {
      kb.ground_facts.push_back(f);
    } else if (contains_prob_term(*f)) {
      parse_fragment_sentence(f);  // validates; throws OutsideFragment
      kb.statistical.push_back(f);
    } else {
      throw Error(ErrorKind::OutsideFragment,
                  "knowledge base sentences are ground literals or statistical sentences",
                  stmt.span);
    }
  }
  return kb;
}

KnowledgeBase load_kb(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open knowledge base '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kb(buf.str());
}

FormulaPtr known_about(const KnowledgeBase& kb, const std::string& constant) {
  FormulaPtr conj;
  for (const auto& fact : kb.ground_facts) {
    const Pred* p = as_ground_literal(*fact);
    if (!p || !mentions_constant(*p, constant)) continue;
    conj = conj ? land(conj, fact) : fact;
  }
  if (!conj)
    throw Error(ErrorKind::NoGroundFacts,
                "nothing is known about '" + constant + "' in the knowledge base");
  return conj;
}

namespace {

// Every literal in the conjunction must be monadic over the constant for
// the constant-to-variable rewrite to land in the entailment fragment.
void require_monadic_facts(const Formula& conj, const std::string& constant) {
  if (const auto* a = conj.get_if<And>()) {
    require_monadic_facts(*a->lhs, constant);
    require_monadic_facts(*a->rhs, constant);
    return;
  }
  const Pred* p = as_ground_literal(conj);
  if (!p || p->args.size() != 1)
    throw Error(ErrorKind::OutsideFragment,
                "fact '" + print(conj) + "' about '" + constant +
                    "' is not monadic; direct inference handles monadic reference classes");
}

bool equivalent_over_atoms(const FormulaPtr& a, const FormulaPtr& b) {
  std::set<std::string> atom_set;
  struct C {
    static void run(const Formula& f, std::set<std::string>& out) {
      if (const auto* p = f.get_if<Pred>()) { out.insert(p->name); return; }
      if (const auto* n = f.get_if<Not>()) { run(*n->body, out); return; }
      if (const auto* x = f.get_if<And>()) { run(*x->lhs, out); run(*x->rhs, out); return; }
      if (const auto* x = f.get_if<Or>()) { run(*x->lhs, out); run(*x->rhs, out); return; }
      if (const auto* x = f.get_if<Implies>()) { run(*x->lhs, out); run(*x->rhs, out); }
    }
  };
  C::run(*a, atom_set);
  C::run(*b, atom_set);
  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  if (atoms.size() > 16) return false;  // not worth deciding; treated as unmatched
  for (std::uint32_t w = 0; w < (1u << atoms.size()); ++w)
    if (world_satisfies(*a, atoms, w) != world_satisfies(*b, atoms, w)) return false;
  return true;
}

}  // namespace

BeliefResult believe(const KnowledgeBase& kb, const FormulaPtr& target) {
  const auto* atom = target->get_if<Pred>();
  if (!atom)
    throw Error(ErrorKind::OutsideFragment, "the belief target must be a ground atom",
                target->span());
  if (atom->args.size() != 1 || !atom->args[0]->get_if<ObjectConst>())
    throw Error(ErrorKind::OutsideFragment,
                "the belief target must apply a monadic predicate to one object constant",
                target->span());
  const std::string constant = atom->args[0]->get_if<ObjectConst>()->name;

  FormulaPtr about = known_about(kb, constant);
  require_monadic_facts(*about, constant);

  // Substitute a fresh variable for the constant in target and reference
  // class alike. Object-variable names are reusable as binders; everything
  // else in the vocabulary is off limits.
  std::set<std::string> taken;
  for (const auto& n : kb.vocab.all_names())
    if (kb.vocab.kind_of(n) != SymbolKind::ObjectVar) taken.insert(n);
  std::string var = taken.count("x") ? fresh_name("x", taken) : "x";

  FormulaPtr general_target = generalize(target, constant, var);
  FormulaPtr reference = generalize(about, constant, var);

  TermPtr query = cond_prob_term(general_target, reference, {var});

  BeliefResult result;
  result.entailment = entail_sentences(kb.statistical, query);
  result.reference_class = reference;
  result.variable = var;
  result.provenance = kb.statistical;

  if (result.entailment.status == EntailResult::Status::Bounded) {
    result.vacuous = result.entailment.interval.lo == Rational(0) &&
                     result.entailment.interval.hi == Rational(1) &&
                     !result.entailment.lo_open && !result.entailment.hi_open;
    for (const auto& s : kb.statistical) {
      FragmentSentence fs = parse_fragment_sentence(s);
      if (fs.psi && equivalent_over_atoms(fs.psi, reference)) {
        result.reference_class_matched = true;
        break;
      }
    }
  }
  return result;
}

}  // namespace lp
