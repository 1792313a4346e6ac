#include "lp/bayes.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "lp/eval.hpp"

namespace lp {

namespace {

constexpr std::uint32_t kMaxJointVars = 20;
constexpr std::uint32_t kMaxNegationUniformVars = 12;

std::uint32_t parent_mask(const BayesNet& net, std::uint32_t var,
                          std::uint32_t assignment) {
  std::uint32_t mask = 0;
  const auto& ps = net.parents(var);
  for (std::size_t j = 0; j < ps.size(); ++j)
    if ((assignment >> ps[j]) & 1u) mask |= 1u << j;
  return mask;
}

}  // namespace

BayesNet::BayesNet(Data data) : data_(std::move(data)) {
  const auto n = static_cast<std::uint32_t>(data_.vars.size());
  if (n == 0) throw Error(ErrorKind::FormatError, "a net needs at least one variable");
  if (data_.parents.size() != n || data_.cpt.size() != n)
    throw Error(ErrorKind::FormatError, "net tables out of step with the variable list");

  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < n; ++i)
    if (!index.emplace(data_.vars[i], i).second)
      throw Error(ErrorKind::FormatError, "duplicate variable '" + data_.vars[i] + "'");

  for (std::uint32_t i = 0; i < n; ++i) {
    std::set<std::uint32_t> seen;
    for (auto p : data_.parents[i]) {
      if (p >= i)
        throw Error(ErrorKind::FormatError,
                    "parent of '" + data_.vars[i] + "' must be declared earlier");
      if (!seen.insert(p).second)
        throw Error(ErrorKind::FormatError, "duplicate parent of '" + data_.vars[i] + "'");
    }
    const std::size_t rows = std::size_t{1} << data_.parents[i].size();
    if (data_.cpt[i].size() != rows) {
      std::ostringstream os;
      os << "variable '" << data_.vars[i] << "' needs " << rows
         << " cpt row(s), got " << data_.cpt[i].size();
      throw Error(ErrorKind::FormatError, os.str());
    }
    for (const auto& p : data_.cpt[i])
      if (p < Rational(0) || p > Rational(1))
        throw Error(ErrorKind::FormatError,
                    "cpt entry " + p.str() + " for '" + data_.vars[i] + "' outside [0, 1]");
  }
}

std::uint32_t BayesNet::var_index(const std::string& name) const {
  auto it = std::find(data_.vars.begin(), data_.vars.end(), name);
  if (it == data_.vars.end())
    throw Error(ErrorKind::UnknownSymbol, "unknown net variable '" + name + "'");
  return static_cast<std::uint32_t>(it - data_.vars.begin());
}

Rational BayesNet::joint_probability(std::uint32_t assignment) const {
  Rational p(1);
  for (std::uint32_t i = 0; i < size(); ++i) {
    const Rational& row = data_.cpt[i][parent_mask(*this, i, assignment)];
    if ((assignment >> i) & 1u) p *= row;
    else p *= Rational(1) - row;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Net files.

namespace {

struct NTok {
  enum Kind { Word, Number, Semi, Comma, Arrow, Pipe, Amp, Bang, Eq, End };
  Kind kind;
  std::string text;
  std::uint32_t line;
};

std::vector<NTok> net_scan(std::string_view src) {
  std::vector<NTok> out;
  std::size_t pos = 0;
  std::uint32_t line = 1;
  while (pos < src.size()) {
    char c = src[pos];
    if (c == '\n') { ++line; ++pos; continue; }
    if (std::isspace(static_cast<unsigned char>(c))) { ++pos; continue; }
    if (c == '#') {
      while (pos < src.size() && src[pos] != '\n') ++pos;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        ++pos;
      out.push_back({NTok::Word, std::string(src.substr(start, pos - start)), line});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < src.size() && (std::isdigit(static_cast<unsigned char>(src[pos])) ||
                                  src[pos] == '/' || src[pos] == '.'))
        ++pos;
      out.push_back({NTok::Number, std::string(src.substr(start, pos - start)), line});
      continue;
    }
    switch (c) {
      case ';': out.push_back({NTok::Semi, ";", line}); ++pos; break;
      case ',': out.push_back({NTok::Comma, ",", line}); ++pos; break;
      case '|': out.push_back({NTok::Pipe, "|", line}); ++pos; break;
      case '&': out.push_back({NTok::Amp, "&", line}); ++pos; break;
      case '!': out.push_back({NTok::Bang, "!", line}); ++pos; break;
      case '=': out.push_back({NTok::Eq, "=", line}); ++pos; break;
      case '<':
        if (pos + 1 < src.size() && src[pos + 1] == '-') {
          out.push_back({NTok::Arrow, "<-", line});
          pos += 2;
          break;
        }
        [[fallthrough]];
      default:
        throw Error(ErrorKind::FormatError,
                    std::string("unexpected character '") + c + "' in net file",
                    SourceSpan{pos, pos + 1, line, 1, line, 1});
    }
  }
  out.push_back({NTok::End, "", line});
  return out;
}

class NetParser {
 public:
  explicit NetParser(std::string_view text) : toks_(net_scan(text)) {}

  BayesNet run() {
    while (peek().kind != NTok::End) {
      std::string stmt = expect(NTok::Word, "statement (var, parents, cpt)").text;
      if (stmt == "var") parse_var();
      else if (stmt == "parents") parse_parents();
      else if (stmt == "cpt") parse_cpt();
      else fail("unknown statement '" + stmt + "'");
      expect(NTok::Semi, "';'");
    }
    return assemble();
  }

 private:
  void parse_var() {
    for (;;) {
      std::string name = expect(NTok::Word, "variable name").text;
      if (!index_.emplace(name, static_cast<std::uint32_t>(vars_.size())).second)
        fail("duplicate variable '" + name + "'");
      vars_.push_back(name);
      parents_.emplace_back();
      if (peek().kind != NTok::Comma) break;
      advance();
    }
  }

  void parse_parents() {
    std::uint32_t child = var(expect(NTok::Word, "child variable").text);
    expect(NTok::Arrow, "'<-'");
    if (!parents_[child].empty()) fail("parents of '" + vars_[child] + "' listed twice");
    for (;;) {
      parents_[child].push_back(var(expect(NTok::Word, "parent variable").text));
      if (peek().kind != NTok::Comma) break;
      advance();
    }
  }

  void parse_cpt() {
    std::uint32_t v = var(expect(NTok::Word, "variable").text);
    std::map<std::string, bool> condition;
    if (peek().kind == NTok::Pipe) {
      advance();
      for (;;) {
        bool positive = true;
        if (peek().kind == NTok::Bang) {
          advance();
          positive = false;
        }
        std::string name = expect(NTok::Word, "parent literal").text;
        if (!condition.emplace(name, positive).second)
          fail("parent '" + name + "' repeated in condition");
        if (peek().kind != NTok::Amp) break;
        advance();
      }
    }
    expect(NTok::Eq, "'='");
    Rational p = Rational::from_string(expect(NTok::Number, "probability").text);
    cpt_entries_.push_back({v, std::move(condition), std::move(p), peek().line});
  }

  BayesNet assemble() {
    BayesNet::Data d;
    d.vars = vars_;
    d.parents = parents_;
    d.cpt.resize(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
      d.cpt[i].assign(std::size_t{1} << parents_[i].size(), Rational(-1));

    for (const auto& e : cpt_entries_) {
      const auto& ps = parents_[e.var];
      if (e.condition.size() != ps.size())
        fail("cpt row for '" + vars_[e.var] + "' must mention every parent exactly once");
      std::uint32_t mask = 0;
      for (std::size_t j = 0; j < ps.size(); ++j) {
        auto it = e.condition.find(vars_[ps[j]]);
        if (it == e.condition.end())
          fail("cpt row for '" + vars_[e.var] + "' misses parent '" + vars_[ps[j]] + "'");
        if (it->second) mask |= 1u << j;
      }
      if (d.cpt[e.var][mask] != Rational(-1))
        fail("duplicate cpt row for '" + vars_[e.var] + "'");
      d.cpt[e.var][mask] = e.value;
    }
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (const auto& p : d.cpt[i])
        if (p == Rational(-1))
          fail("missing cpt row(s) for '" + vars_[i] + "'; every row must be given");
    return BayesNet(std::move(d));
  }

  std::uint32_t var(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) fail("unknown variable '" + name + "'");
    return it->second;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorKind::FormatError, msg, SourceSpan{0, 0, peek().line, 1, peek().line, 1});
  }

  const NTok& peek() const { return toks_[pos_]; }
  NTok advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  NTok expect(NTok::Kind kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return advance();
  }

  struct CptEntry {
    std::uint32_t var;
    std::map<std::string, bool> condition;
    Rational value;
    std::uint32_t line;
  };

  std::vector<NTok> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> vars_;
  std::vector<std::vector<std::uint32_t>> parents_;
  std::map<std::string, std::uint32_t> index_;
  std::vector<CptEntry> cpt_entries_;
};

}  // namespace

BayesNet parse_net(std::string_view text) { return NetParser(text).run(); }

BayesNet load_net(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open net file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_net(buf.str());
}

std::string format_net(const BayesNet& net) {
  std::ostringstream os;
  os << "var";
  for (std::uint32_t i = 0; i < net.size(); ++i)
    os << (i ? ", " : " ") << net.vars()[i];
  os << ";\n";
  for (std::uint32_t i = 0; i < net.size(); ++i) {
    if (net.parents(i).empty()) continue;
    os << "parents " << net.vars()[i] << " <- ";
    for (std::size_t j = 0; j < net.parents(i).size(); ++j)
      os << (j ? ", " : "") << net.vars()[net.parents(i)[j]];
    os << ";\n";
  }
  for (std::uint32_t i = 0; i < net.size(); ++i) {
    const auto& ps = net.parents(i);
    for (std::size_t mask = 0; mask < net.cpt(i).size(); ++mask) {
      os << "cpt " << net.vars()[i];
      if (!ps.empty()) {
        os << " | ";
        for (std::size_t j = 0; j < ps.size(); ++j) {
          if (j) os << " & ";
          if (!((mask >> j) & 1u)) os << "!";
          os << net.vars()[ps[j]];
        }
      }
      os << " = " << net.cpt(i)[mask].str() << ";\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Compilation to Lp.

Vocabulary net_vocabulary(const BayesNet& net) {
  Vocabulary vocab;
  for (const auto& v : net.vars()) vocab.declare_pred(v, 1);
  vocab.declare_object_var("x");
  return vocab;
}

namespace {

FormulaPtr literal(const std::string& var, bool positive) {
  FormulaPtr atom = pred(var, {object_var("x")});
  return positive ? atom : lnot(std::move(atom));
}

// Conjunction of a child's parents as signed literals, highest index first
// (the paper writes [X4 | X3 & X2]).
FormulaPtr parents_pattern(const BayesNet& net, std::uint32_t child,
                           const std::vector<bool>& signs) {
  const auto& ps = net.parents(child);
  FormulaPtr conj;
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    FormulaPtr lit = literal(net.vars()[*it], signs[*it]);
    conj = conj ? land(std::move(conj), std::move(lit)) : std::move(lit);
  }
  return conj;
}

TermPtr factor(const BayesNet& net, std::uint32_t child, const std::vector<bool>& signs) {
  FormulaPtr lit = literal(net.vars()[child], signs[child]);
  FormulaPtr pattern = parents_pattern(net, child, signs);
  if (pattern) return cond_prob_term(std::move(lit), std::move(pattern), {"x"});
  return prob_term(std::move(lit), {"x"});
}

}  // namespace

FormulaPtr signed_decomposition(const BayesNet& net, const std::vector<bool>& signs) {
  if (signs.size() != net.size())
    throw Error(ErrorKind::FormatError, "sign vector length does not match the net");

  FormulaPtr conj;
  for (std::uint32_t i = 0; i < net.size(); ++i) {
    FormulaPtr lit = literal(net.vars()[i], signs[i]);
    conj = conj ? land(std::move(conj), std::move(lit)) : std::move(lit);
  }
  TermPtr lhs = prob_term(std::move(conj), {"x"});

  TermPtr product;
  for (std::uint32_t i = net.size(); i-- > 0;) {
    TermPtr f = factor(net, i, signs);
    product = product ? field_app("*", {std::move(product), std::move(f)}) : std::move(f);
  }
  return equal(std::move(lhs), std::move(product), Sort::Field);
}

std::vector<FormulaPtr> net_to_lp(const BayesNet& net) {
  std::vector<FormulaPtr> out;
  out.push_back(signed_decomposition(net, std::vector<bool>(net.size(), true)));

  std::vector<bool> signs(net.size(), true);
  for (std::uint32_t i = 0; i < net.size(); ++i) {
    const auto& ps = net.parents(i);
    for (std::uint32_t mask = 0; mask < (1u << ps.size()); ++mask) {
      for (std::size_t j = 0; j < ps.size(); ++j) signs[ps[j]] = (mask >> j) & 1u;
      out.push_back(equal(factor(net, i, signs), field_const(net.cpt(i)[mask]), Sort::Field));
      for (auto p : ps) signs[p] = true;
    }
  }
  return out;
}

Model build_joint(const BayesNet& net) {
  if (net.size() > kMaxJointVars)
    throw Error(ErrorKind::TooManyVariables,
                "joint construction supports at most " + std::to_string(kMaxJointVars) +
                    " variables");
  const std::uint32_t n = net.size();
  const std::uint32_t count = 1u << n;

  Vocabulary vocab = net_vocabulary(net);
  LpStructure::Data data;
  for (std::uint32_t a = 0; a < count; ++a) {
    std::string name = "w";
    for (std::uint32_t i = 0; i < n; ++i) name += ((a >> i) & 1u) ? '1' : '0';
    data.domain.push_back(std::move(name));
    data.weights.push_back(net.joint_probability(a));
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    std::set<Tuple> tuples;
    for (std::uint32_t a = 0; a < count; ++a)
      if ((a >> i) & 1u) tuples.insert(Tuple{a});
    data.predicates.emplace(net.vars()[i], std::move(tuples));
  }
  return Model{vocab, LpStructure(std::move(data), vocab)};
}

SignedEquationRow check_signed_equation(const Model& model, const BayesNet& net,
                                        const std::vector<bool>& signs) {
  SignedEquationRow row;
  row.signs = signs;

  const FormulaPtr eq = signed_decomposition(net, signs);
  const auto* e = eq->get_if<Equal>();
  Assignment sigma;
  try {
    Rational lhs = eval_field_term(model.structure, model.vocab, sigma, *desugar(e->lhs));
    Rational rhs = eval_field_term(model.structure, model.vocab, sigma, *desugar(e->rhs));
    if (lhs == rhs) {
      row.status = SignedEquationRow::Status::Holds;
    } else {
      row.status = SignedEquationRow::Status::Fails;
      row.detail = "lhs = " + lhs.str() + ", rhs = " + rhs.str();
    }
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::DivisionByZero) throw;
    row.status = SignedEquationRow::Status::Undefined;
    row.detail = "a conditioning event has probability zero";
  }
  return row;
}

NegationUniformReport verify_negation_uniform(const BayesNet& net) {
  if (net.size() > kMaxNegationUniformVars)
    throw Error(ErrorKind::TooManyVariables,
                "negation-uniform verification supports at most " +
                    std::to_string(kMaxNegationUniformVars) + " variables");
  Model joint = build_joint(net);

  NegationUniformReport report;
  const std::uint32_t n = net.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<bool> signs(n);
    for (std::uint32_t i = 0; i < n; ++i) signs[i] = (mask >> i) & 1u;
    SignedEquationRow row = check_signed_equation(joint, net, signs);
    switch (row.status) {
      case SignedEquationRow::Status::Holds: ++report.holds; break;
      case SignedEquationRow::Status::Undefined: ++report.undefined; break;
      case SignedEquationRow::Status::Fails: ++report.fails; break;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

Rational query(const BayesNet& net, const BayesLiteral& target,
               const std::vector<BayesLiteral>& evidence) {
  if (net.size() > kMaxJointVars)
    throw Error(ErrorKind::TooManyVariables, "query supports at most 20 variables");
  const std::uint32_t t = net.var_index(target.var);
  std::vector<std::pair<std::uint32_t, bool>> ev;
  std::set<std::uint32_t> seen;
  for (const auto& lit : evidence) {
    std::uint32_t i = net.var_index(lit.var);
    if (!seen.insert(i).second)
      throw Error(ErrorKind::FormatError, "evidence mentions '" + lit.var + "' twice");
    ev.emplace_back(i, lit.positive);
  }

  Rational numerator(0), denominator(0);
  for (std::uint32_t a = 0; a < (1u << net.size()); ++a) {
    bool consistent = true;
    for (const auto& [i, positive] : ev)
      if (static_cast<bool>((a >> i) & 1u) != positive) { consistent = false; break; }
    if (!consistent) continue;
    Rational p = net.joint_probability(a);
    denominator += p;
    if (static_cast<bool>((a >> t) & 1u) == target.positive) numerator += p;
  }
  if (denominator.is_zero())
    throw Error(ErrorKind::ZeroProbabilityEvidence,
                "the evidence has probability zero in the joint");
  return numerator / denominator;
}

}  // namespace lp
