#include <fstream>
#include <sstream>

#include "lp/model.hpp"

namespace lp {

namespace {

// Minimal scanner for the model format: words, numbers, punctuation,
// '#' comments.
struct MTok {
  enum Kind { Word, Number, LBrace, RBrace, LParen, RParen, Comma, Colon, Eq, Arrow, Slash, End };
  Kind kind;
  std::string text;
  std::uint32_t line;
};

class MScan {
 public:
  explicit MScan(std::string_view src) : src_(src) {}

  std::vector<MTok> run() {
    std::vector<MTok> out;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') { ++line_; ++pos_; continue; }
      if (std::isspace(static_cast<unsigned char>(c))) { ++pos_; continue; }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          ++pos_;
        out.push_back({MTok::Word, std::string(src_.substr(start, pos_ - start)), line_});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '-' && pos_ + 1 < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        std::size_t start = pos_;
        if (c == '-') ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '/' || src_[pos_] == '.') &&
            pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
          ++pos_;
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        out.push_back({MTok::Number, std::string(src_.substr(start, pos_ - start)), line_});
        continue;
      }
      switch (c) {
        case '{': out.push_back({MTok::LBrace, "{", line_}); ++pos_; break;
        case '}': out.push_back({MTok::RBrace, "}", line_}); ++pos_; break;
        case '(': out.push_back({MTok::LParen, "(", line_}); ++pos_; break;
        case ')': out.push_back({MTok::RParen, ")", line_}); ++pos_; break;
        case ',': out.push_back({MTok::Comma, ",", line_}); ++pos_; break;
        case ':': out.push_back({MTok::Colon, ":", line_}); ++pos_; break;
        case '=': out.push_back({MTok::Eq, "=", line_}); ++pos_; break;
        case '/': out.push_back({MTok::Slash, "/", line_}); ++pos_; break;
        case '-':
          if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            out.push_back({MTok::Arrow, "->", line_});
            pos_ += 2;
            break;
          }
          [[fallthrough]];
        default:
          throw Error(ErrorKind::FormatError,
                      std::string("unexpected character '") + c + "' in model file",
                      SourceSpan{pos_, pos_ + 1, line_, 1, line_, 1});
      }
    }
    out.push_back({MTok::End, "", line_});
    return out;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
};

class ModelParser {
 public:
  explicit ModelParser(std::string_view text) : toks_(MScan(text).run()) {}

  Model run() {
    expect_word("domain");
    parse_domain();
    bool have_measure = false;
    while (peek().kind != MTok::End) {
      std::string section = expect(MTok::Word, "section name").text;
      if (section == "measure") {
        if (have_measure) fail("duplicate measure section");
        have_measure = true;
        parse_measure();
      } else if (section == "predicates") {
        parse_predicates();
      } else if (section == "functions") {
        parse_functions();
      } else if (section == "constants") {
        parse_constants();
      } else if (section == "measuring") {
        parse_measuring();
      } else {
        fail("unknown section '" + section + "'");
      }
    }
    if (!have_measure) {
      // Default: uniform.
      auto n = static_cast<long>(data_.domain.size());
      if (n == 0) fail("empty domain");
      data_.weights.assign(data_.domain.size(), Rational(1, n));
    }
    return Model{vocab_, LpStructure(std::move(data_), vocab_)};
  }

 private:
  void parse_domain() {
    expect(MTok::LBrace, "'{'");
    while (peek().kind == MTok::Word) {
      data_.domain.push_back(advance().text);
      index_.emplace(data_.domain.back(), static_cast<std::uint32_t>(data_.domain.size() - 1));
    }
    expect(MTok::RBrace, "'}'");
    if (data_.domain.empty()) fail("domain must list at least one individual");
    if (index_.size() != data_.domain.size()) fail("duplicate individual in domain");
  }

  void parse_measure() {
    expect(MTok::LBrace, "'{'");
    std::map<std::string, Rational> weights;
    while (peek().kind == MTok::Word) {
      std::string name = advance().text;
      expect(MTok::Colon, "':' after individual name");
      Rational w = number();
      if (!weights.emplace(name, w).second) fail("duplicate weight for '" + name + "'");
    }
    expect(MTok::RBrace, "'}'");
    data_.weights.clear();
    for (const auto& ind : data_.domain) {
      auto it = weights.find(ind);
      if (it == weights.end()) fail("measure misses individual '" + ind + "'");
      data_.weights.push_back(it->second);
      weights.erase(it);
    }
    if (!weights.empty()) fail("measure weights an unknown individual");
  }

  void parse_predicates() {
    expect(MTok::LBrace, "'{'");
    while (peek().kind == MTok::Word) {
      auto [name, arity] = name_arity();
      vocab_.declare_pred(name, arity);
      expect(MTok::LBrace, "'{'");
      std::set<Tuple> tuples;
      while (peek().kind == MTok::Word || peek().kind == MTok::LParen) {
        Tuple t = tuple(arity);
        if (!tuples.insert(std::move(t)).second) fail("duplicate tuple in '" + name + "'");
      }
      expect(MTok::RBrace, "'}'");
      data_.predicates.emplace(name, std::move(tuples));
    }
    expect(MTok::RBrace, "'}'");
  }

  void parse_functions() {
    expect(MTok::LBrace, "'{'");
    while (peek().kind == MTok::Word) {
      auto [name, arity] = name_arity();
      vocab_.declare_object_func(name, arity);
      expect(MTok::LBrace, "'{'");
      std::map<Tuple, std::uint32_t> table;
      while (peek().kind == MTok::Word || peek().kind == MTok::LParen) {
        Tuple t = tuple(arity);
        expect(MTok::Arrow, "'->'");
        std::uint32_t v = individual(expect(MTok::Word, "individual").text);
        if (!table.emplace(std::move(t), v).second) fail("duplicate entry in '" + name + "'");
      }
      expect(MTok::RBrace, "'}'");
      data_.functions.emplace(name, std::move(table));
    }
    expect(MTok::RBrace, "'}'");
  }

  void parse_constants() {
    expect(MTok::LBrace, "'{'");
    while (peek().kind == MTok::Word) {
      std::string cls = advance().text;
      std::string name = expect(MTok::Word, "constant name").text;
      expect(MTok::Eq, "'='");
      if (cls == "object") {
        vocab_.declare_object_const(name);
        data_.object_consts.emplace(name, individual(expect(MTok::Word, "individual").text));
      } else if (cls == "field") {
        vocab_.declare_field_const(name);
        data_.field_consts.emplace(name, number());
      } else {
        fail("constant class must be 'object' or 'field', got '" + cls + "'");
      }
    }
    expect(MTok::RBrace, "'}'");
  }

  void parse_measuring() {
    expect(MTok::LBrace, "'{'");
    while (peek().kind == MTok::Word) {
      auto [name, arity] = name_arity();
      vocab_.declare_measure(name, arity);
      expect(MTok::LBrace, "'{'");
      std::map<Tuple, Rational> table;
      while (peek().kind == MTok::Word || peek().kind == MTok::LParen) {
        Tuple t = tuple(arity);
        expect(MTok::Arrow, "'->'");
        Rational v = number();
        if (!table.emplace(std::move(t), v).second) fail("duplicate entry in '" + name + "'");
      }
      expect(MTok::RBrace, "'}'");
      data_.measuring.emplace(name, std::move(table));
    }
    expect(MTok::RBrace, "'}'");
  }

  std::pair<std::string, std::uint32_t> name_arity() {
    std::string name = advance().text;
    expect(MTok::Slash, "'/arity'");
    std::string a = expect(MTok::Number, "arity").text;
    for (char c : a)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("arity must be a plain integer");
    return {name, static_cast<std::uint32_t>(std::stoul(a))};
  }

  Tuple tuple(std::uint32_t arity) {
    Tuple t;
    if (peek().kind == MTok::Word) {
      t.push_back(individual(advance().text));
    } else {
      expect(MTok::LParen, "'('");
      for (;;) {
        t.push_back(individual(expect(MTok::Word, "individual").text));
        if (peek().kind != MTok::Comma) break;
        advance();
      }
      expect(MTok::RParen, "')'");
    }
    if (t.size() != arity) fail("tuple arity mismatch");
    return t;
  }

  std::uint32_t individual(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) fail("unknown individual '" + name + "'");
    return it->second;
  }

  Rational number() { return Rational::from_string(expect(MTok::Number, "number").text); }

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorKind::FormatError, msg,
                SourceSpan{0, 0, peek().line, 1, peek().line, 1});
  }

  const MTok& peek() const { return toks_[pos_]; }
  MTok advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  MTok expect(MTok::Kind kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return advance();
  }

  void expect_word(const char* w) {
    if (peek().kind != MTok::Word || peek().text != w)
      fail(std::string("expected '") + w + "' section first");
    advance();
  }

  std::vector<MTok> toks_;
  std::size_t pos_ = 0;
  Vocabulary vocab_;
  LpStructure::Data data_;
  std::map<std::string, std::uint32_t> index_;
};

std::string tuple_str(const LpStructure& s, const Tuple& t, bool parens) {
  std::ostringstream os;
  if (t.size() == 1 && !parens) {
    os << s.individual_name(t[0]);
    return os.str();
  }
  os << "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) os << ", ";
    os << s.individual_name(t[i]);
  }
  os << ")";
  return os.str();
}

}  // namespace

Model parse_model(std::string_view text) { return ModelParser(text).run(); }

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string format_model(const Vocabulary& vocab, const LpStructure& s) {
  std::ostringstream os;
  os << "domain {";
  for (const auto& name : s.domain()) os << " " << name;
  os << " }\n";

  os << "measure {";
  for (std::uint32_t i = 0; i < s.domain_size(); ++i)
    os << " " << s.individual_name(i) << ": " << s.weight(i).str();
  os << " }\n";

  if (!s.data().predicates.empty()) {
    os << "predicates {\n";
    for (const auto& [name, tuples] : s.data().predicates) {
      os << "  " << name << "/" << vocab.pred_arity(name) << " {";
      for (const auto& t : tuples) os << " " << tuple_str(s, t, false);
      os << " }\n";
    }
    os << "}\n";
  }

  if (!s.data().functions.empty()) {
    os << "functions {\n";
    for (const auto& [name, table] : s.data().functions) {
      os << "  " << name << "/" << vocab.object_func_arity(name) << " {";
      for (const auto& [t, v] : table)
        os << " " << tuple_str(s, t, true) << " -> " << s.individual_name(v);
      os << " }\n";
    }
    os << "}\n";
  }

  if (!s.data().object_consts.empty() || !s.data().field_consts.empty()) {
    os << "constants {\n";
    for (const auto& [name, v] : s.data().object_consts)
      os << "  object " << name << " = " << s.individual_name(v) << "\n";
    for (const auto& [name, v] : s.data().field_consts)
      os << "  field " << name << " = " << v.str() << "\n";
    os << "}\n";
  }

  if (!s.data().measuring.empty()) {
    os << "measuring {\n";
    for (const auto& [name, table] : s.data().measuring) {
      os << "  " << name << "/" << vocab.measure_arity(name) << " {";
      for (const auto& [t, v] : table)
        os << " " << tuple_str(s, t, true) << " -> " << v.str();
      os << " }\n";
    }
    os << "}\n";
  }
  return os.str();
}

void save_model(const Vocabulary& vocab, const LpStructure& structure,
                const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write model file '" + path + "'");
  out << format_model(vocab, structure);
  if (!out) throw Error(ErrorKind::IoError, "failed writing model file '" + path + "'");
}

}  // namespace lp
