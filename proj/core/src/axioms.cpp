#include "lp/axioms.hpp"

#include <random>

#include "lp/eval.hpp"
#include "lp/printer.hpp"

namespace lp {

void SuiteReport::merge(const SuiteReport& other) {
  for (const auto& oc : other.checks) {
    CheckResult* mine = nullptr;
    for (auto& c : checks)
      if (c.name == oc.name) { mine = &c; break; }
    if (!mine) {
      checks.push_back(oc);
      continue;
    }
    mine->trials += oc.trials;
    mine->failures += oc.failures;
    mine->skipped += oc.skipped;
    if (mine->first_failure.empty()) mine->first_failure = oc.first_failure;
  }
}

namespace {

class FormulaGen {
 public:
  FormulaGen(std::mt19937_64& rng, std::vector<std::pair<std::string, std::uint32_t>> preds)
      : rng_(rng), preds_(std::move(preds)) {}

  FormulaPtr gen(const std::vector<std::string>& vars, std::uint32_t depth) {
    if (depth == 0 || draw(3) == 0) return leaf(vars);
    switch (draw(4)) {
      case 0: return lnot(gen(vars, depth - 1));
      case 1: return land(gen(vars, depth - 1), gen(vars, depth - 1));
      case 2: return lor(gen(vars, depth - 1), gen(vars, depth - 1));
      default: return implies(gen(vars, depth - 1), gen(vars, depth - 1));
    }
  }

  FormulaPtr leaf(const std::vector<std::string>& vars) {
    const auto& [name, arity] = preds_[draw(preds_.size())];
    std::vector<TermPtr> args;
    for (std::uint32_t i = 0; i < arity; ++i)
      args.push_back(object_var(vars[draw(vars.size())]));
    return pred(name, std::move(args));
  }

  std::uint64_t draw(std::uint64_t bound) { return rng_() % bound; }

 private:
  std::mt19937_64& rng_;
  std::vector<std::pair<std::string, std::uint32_t>> preds_;
};

class SuiteRunner {
 public:
  SuiteRunner(const Model& model, const AxiomSuiteParams& params)
      : model_(model), rng_(params.seed), pairs_(params.formula_pairs) {
    std::vector<std::pair<std::string, std::uint32_t>> preds;
    for (const auto& [name, arity] : model.vocab.preds()) preds.emplace_back(name, arity);
    if (preds.empty())
      throw Error(ErrorKind::FormatError, "the axiom suite needs at least one predicate");
    gen_.emplace(rng_, std::move(preds));
  }

  SuiteReport run() {
    add("P1 certainty of valid formulas");
    add("P2 nonnegativity");
    add("P3 complement");
    add("P4 subadditivity");
    add("P5 additivity on disjoint formulas");
    add("L1a mutual implication forces equal measure");
    add("L1b inclusion-exclusion");
    add("L2 Bayes' theorem");
    add("zero-one law for closed formulas");
    add("tautology irrelevance");
    add("binder permutation coherence");
    add("monotonicity under pointwise implication");

    for (std::uint32_t i = 0; i < pairs_; ++i) trial(i);
    return report_;
  }

 private:
  void add(std::string name) { report_.checks.push_back({std::move(name), 0, 0, 0, ""}); }
  CheckResult& check(std::size_t i) { return report_.checks[i]; }

  Rational ev(const TermPtr& t) {
    Assignment sigma;
    return eval_field_term(model_.structure, model_.vocab, sigma, *desugar(t));
  }
  bool evf(const FormulaPtr& f) {
    Assignment sigma;
    return eval_formula(model_.structure, model_.vocab, sigma, *desugar(f));
  }

  void record(std::size_t idx, bool ok, const std::string& detail) {
    CheckResult& c = check(idx);
    ++c.trials;
    if (!ok) {
      ++c.failures;
      if (c.first_failure.empty()) c.first_failure = detail;
    }
  }

  void skip(std::size_t idx) {
    ++check(idx).trials;
    ++check(idx).skipped;
  }

  void trial(std::uint32_t round) {
    // Binder vector: one or two distinct variables.
    std::vector<std::string> xs =
        gen_->draw(2) == 0 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
    FormulaPtr alpha = gen_->gen(xs, 2);
    FormulaPtr beta = gen_->gen(xs, 2);

    auto p = [&](const FormulaPtr& f) { return prob_term(f, xs); };
    auto p1 = [&](const FormulaPtr& f, const std::string& v) {
      return prob_term(f, {v});
    };

    // P1: if forall xs alpha holds then [alpha]_xs = 1. Every few rounds a
    // tautology is injected so the antecedent actually fires.
    {
      FormulaPtr gamma = (round % 5 == 0) ? lor(alpha, lnot(alpha)) : alpha;
      FormulaPtr closed = gamma;
      for (auto it = xs.rbegin(); it != xs.rend(); ++it)
        closed = forall(*it, Sort::Object, closed);
      if (evf(closed)) {
        Rational v = ev(p(gamma));
        record(0, v == Rational(1), "[" + print(gamma) + "] = " + v.str());
      } else {
        skip(0);
      }
    }

    Rational pa = ev(p(alpha));
    Rational pb = ev(p(beta));
    Rational pnota = ev(p(lnot(alpha)));
    Rational pab = ev(p(land(alpha, beta)));
    Rational paorb = ev(p(lor(alpha, beta)));

    record(1, pa >= Rational(0), "[" + print(alpha) + "] = " + pa.str());
    record(2, pa + pnota == Rational(1),
           "[a] + [!a] = " + (pa + pnota).str() + " for a = " + print(alpha));
    record(3, pa + pb >= paorb, "[a]+[b] = " + (pa + pb).str() + " < [a or b] = " + paorb.str());

    // P5 on the raw pair when the guard holds, and always on a disjoint
    // pair built from it.
    if (pab.is_zero()) {
      record(4, pa + pb == paorb, "additivity failed on disjoint pair");
    } else {
      FormulaPtr beta2 = land(beta, lnot(alpha));
      Rational pb2 = ev(p(beta2));
      Rational pu = ev(p(lor(alpha, beta2)));
      record(4, pa + pb2 == pu,
             "[a] + [b & !a] = " + (pa + pb2).str() + ", [a or (b & !a)] = " + pu.str());
    }

    // L1a with an extensionally equal variant; the random pair rarely
    // triggers the antecedent but is still checked when it does.
    {
      FormulaPtr beta1 = (round % 2 == 0) ? lnot(lnot(alpha)) : beta;
      Rational fwd = ev(p(implies(alpha, beta1)));
      Rational back = ev(p(implies(beta1, alpha)));
      if (fwd == Rational(1) && back == Rational(1)) {
        Rational vb = ev(p(beta1));
        record(5, pa == vb, "[a] = " + pa.str() + ", [b] = " + vb.str());
      } else {
        skip(5);
      }
    }

    record(6, paorb == pa + pb - pab,
           "[a or b] = " + paorb.str() + ", rhs = " + (pa + pb - pab).str());

    // L2: [b|a] = [a|b] * [b] / [a] whenever both conditionals are defined.
    if (!pa.is_zero() && !pb.is_zero()) {
      Rational lhs = pab / pa;
      Rational rhs = (pab / pb) * pb / pa;
      record(7, lhs == rhs, "Bayes mismatch: " + lhs.str() + " vs " + rhs.str());
    } else {
      skip(7);
    }

    // Zero-one law: a closed formula's probability term is 0 or 1 and
    // agrees with its truth value.
    {
      FormulaPtr body = gen_->gen({"x"}, 2);
      FormulaPtr closed = (round % 2 == 0) ? forall("x", Sort::Object, body)
                                           : lnot(forall("x", Sort::Object, lnot(body)));
      Rational v = ev(p1(closed, "z"));
      bool truth = evf(closed);
      record(8, v == (truth ? Rational(1) : Rational(0)),
             "[" + print(closed) + "]{z} = " + v.str());
    }

    // [a(x) & (P(y) or !P(y))]{x,y} = [a(x)]{x}.
    {
      FormulaPtr ax = gen_->gen({"x"}, 2);
      FormulaPtr taut = gen_->leaf({"y"});
      Rational lhs = ev(prob_term(land(ax, lor(taut, lnot(taut))), {"x", "y"}));
      Rational rhs = ev(prob_term(ax, {"x"}));
      record(9, lhs == rhs, "lhs = " + lhs.str() + ", rhs = " + rhs.str());
    }

    // [a]{x,y} = [a]{y,x}.
    {
      FormulaPtr axy = gen_->gen({"x", "y"}, 2);
      Rational lhs = ev(prob_term(axy, {"x", "y"}));
      Rational rhs = ev(prob_term(axy, {"y", "x"}));
      record(10, lhs == rhs, "permuted binders disagree on " + print(axy));
    }

    // alpha implies alpha-or-beta pointwise, so the measures are ordered.
    record(11, pa <= paorb, "[a] = " + pa.str() + " > [a or b] = " + paorb.str());
  }

  const Model& model_;
  std::mt19937_64 rng_;
  std::uint32_t pairs_;
  std::optional<FormulaGen> gen_;
  SuiteReport report_;
};

}  // namespace

SuiteReport axiom_suite(const Model& model, const AxiomSuiteParams& params) {
  return SuiteRunner(model, params).run();
}

SuiteReport run_axiom_campaign(const AxiomCampaignParams& params) {
  SuiteReport total;
  for (std::uint32_t i = 0; i < params.model_count; ++i) {
    RandomModelParams mp;
    std::uint32_t span = params.max_domain - params.min_domain + 1;
    mp.domain_size = params.min_domain + (i % span);
    mp.pred_arities = {1, 1, 1, 2};
    mp.weight_style = (i % 2 == 0) ? WeightStyle::Random : WeightStyle::Uniform;
    std::uint64_t model_seed = params.seed * 1000003ULL + i;
    Model model = generate_random(model_seed, mp);

    if (params.inject_bug) {
      // Double one weight without renormalizing; the measure axioms break.
      LpStructure::Data data = model.structure.data();
      data.weights[0] = data.weights[0] + Rational(1, 2);
      model.structure = LpStructure::unchecked(std::move(data));
    }

    AxiomSuiteParams sp;
    sp.seed = model_seed ^ 0x9e3779b97f4a7c15ULL;
    sp.formula_pairs = params.formula_pairs;
    total.merge(axiom_suite(model, sp));
  }
  return total;
}

}  // namespace lp
