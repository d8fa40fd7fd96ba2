#pragma once

// Network models: finite variable domains, parameters, one update rule per
// variable. Includes the .gdsm text format (parser and printer), parameter
// assignments, dependency-graph derivation and parameter promotion.
//
// Grammar (newlines are insignificant, '#' starts a comment):
//   model NAME
//   param NAME in {v, ...}
//   var NAME in {v, ...}        -- vertex ids follow declaration order
//   rule NAME := EXPR
//   EXPR := or-expr
//     precedence (loosest first): or, and, comparison (= != < <= > >=),
//     additive (+ -), unary (not, -), primary
//   primary := INT | NAME | ( EXPR ) | case (when EXPR => EXPR)+ else EXPR end

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdsk/error.hpp"
#include "sdsk/expression.hpp"
#include "sdsk/graph.hpp"

namespace sdsk {

struct Domain {
  std::vector<Value> values;  // sorted, distinct

  std::size_t size() const noexcept { return values.size(); }
  bool contains(Value v) const { return std::binary_search(values.begin(), values.end(), v); }
  std::optional<std::size_t> index_of(Value v) const {
    auto it = std::lower_bound(values.begin(), values.end(), v);
    if (it == values.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - values.begin());
  }
  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
    return out + "}";
  }
  friend bool operator==(const Domain&, const Domain&) = default;
};

struct Symbol {
  std::string name;
  Domain domain;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct NetworkModel {
  std::string name;
  std::vector<Symbol> variables;   // vertex i is variables[i - 1]
  std::vector<Symbol> parameters;
  std::vector<ExprPtr> rules;      // rules[i] updates variables[i]

  std::size_t size() const noexcept { return variables.size(); }

  std::optional<std::size_t> find_variable(const std::string& n) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i].name == n) return i;
    return std::nullopt;
  }
  std::optional<std::size_t> find_parameter(const std::string& n) const {
    for (std::size_t i = 0; i < parameters.size(); ++i)
      if (parameters[i].name == n) return i;
    return std::nullopt;
  }
};

// Variable and parameter lists equal, rules structurally identical.
inline bool structurally_equal(const NetworkModel& a, const NetworkModel& b) {
  if (a.name != b.name || a.variables != b.variables || a.parameters != b.parameters ||
      a.rules.size() != b.rules.size())
    return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i)
    if (!same_tree(a.rules[i], b.rules[i])) return false;
  return true;
}

// Values for every parameter, in declaration order.
struct ParameterAssignment {
  std::vector<Value> values;
  friend auto operator<=>(const ParameterAssignment&, const ParameterAssignment&) = default;
};

inline ParameterAssignment make_assignment(const NetworkModel& m,
                                           const std::map<std::string, Value>& named) {
  ParameterAssignment a;
  for (const auto& [name, value] : named)
    if (!m.find_parameter(name)) throw InputError("unknown parameter '" + name + "'");
  for (const auto& p : m.parameters) {
    auto it = named.find(p.name);
    if (it == named.end()) throw InputError("parameter '" + p.name + "' not assigned");
    if (!p.domain.contains(it->second))
      throw InputError("value " + std::to_string(it->second) + " outside domain of '" + p.name +
                       "'");
    a.values.push_back(it->second);
  }
  return a;
}

inline void validate_assignment(const NetworkModel& m, const ParameterAssignment& a) {
  if (a.values.size() != m.parameters.size())
    throw InputError("parameter assignment has wrong arity for model " + m.name);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (!m.parameters[i].domain.contains(a.values[i]))
      throw InputError("value " + std::to_string(a.values[i]) + " outside domain of '" +
                       m.parameters[i].name + "'");
}

// "k=v,k=v"
inline ParameterAssignment parse_assignment(const NetworkModel& m, const std::string& text) {
  std::map<std::string, Value> named;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("expected name=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
    try {
      std::size_t used = 0;
      std::string number = item.substr(eq + 1);
      Value v = std::stoi(number, &used);
      if (number.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
      named[key] = v;
    } catch (const std::logic_error&) {
      throw InputError("bad value in '" + item + "'");
    }
  }
  return make_assignment(m, named);
}

inline std::string to_string(const NetworkModel& m, const ParameterAssignment& a) {
  std::string out;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    out += (i ? "," : "") + m.parameters[i].name + "=" + std::to_string(a.values[i]);
  return out;
}

// Every assignment, first declared parameter varying slowest.
inline std::vector<ParameterAssignment> all_assignments(const NetworkModel& m) {
  std::vector<ParameterAssignment> out;
  ParameterAssignment current;
  auto rec = [&](auto& self, std::size_t i) -> void {
    if (i == m.parameters.size()) {
      out.push_back(current);
      return;
    }
    for (Value v : m.parameters[i].domain.values) {
      current.values.push_back(v);
      self(self, i + 1);
      current.values.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

namespace detail {

enum class Tok {
  end, name, model_name, integer,
  kw_model, kw_param, kw_var, kw_in, kw_rule, kw_case, kw_when, kw_else, kw_end,
  kw_and, kw_or, kw_not,
  lbrace, rbrace, comma, assign, arrow, lparen, rparen,
  eq, ne, lt, le, gt, ge, plus, minus,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline std::vector<Token> lex(const std::string& src) {
  static const std::unordered_map<std::string, Tok> keywords = {
      {"model", Tok::kw_model}, {"param", Tok::kw_param}, {"var", Tok::kw_var},
      {"in", Tok::kw_in},       {"rule", Tok::kw_rule},   {"case", Tok::kw_case},
      {"when", Tok::kw_when},   {"else", Tok::kw_else},   {"end", Tok::kw_end},
      {"and", Tok::kw_and},     {"or", Tok::kw_or},       {"not", Tok::kw_not},
  };
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string word = src.substr(i, j - i);
      advance(j - i);
      auto kw = keywords.find(word);
      out.push_back({kw == keywords.end() ? Tok::name : kw->second, word, l, cl});
      if (out.back().kind == Tok::kw_model) {
        // The model name runs to the next whitespace and may contain '-'.
        while (i < src.size() && (src[i] == ' ' || src[i] == '\t')) advance(1);
        std::size_t k = i;
        while (k < src.size() && !std::isspace(static_cast<unsigned char>(src[k])) && src[k] != '#') ++k;
        if (k == i) throw ParseError(ParseError::Kind::lex, line, col, "expected model name");
        out.push_back({Tok::model_name, src.substr(i, k - i), line, col});
        advance(k - i);
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j - i > 9) throw ParseError(ParseError::Kind::lex, l, cl, "integer literal too large");
      out.push_back({Tok::integer, src.substr(i, j - i), l, cl});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    struct Punct {
      const char* text;
      Tok kind;
    };
    static const Punct puncts[] = {
        {":=", Tok::assign}, {"=>", Tok::arrow}, {"!=", Tok::ne}, {"<=", Tok::le},
        {">=", Tok::ge},     {"{", Tok::lbrace}, {"}", Tok::rbrace}, {",", Tok::comma},
        {"(", Tok::lparen},  {")", Tok::rparen}, {"=", Tok::eq},     {"<", Tok::lt},
        {">", Tok::gt},      {"+", Tok::plus},   {"-", Tok::minus},
    };
    bool matched = false;
    for (const auto& p : puncts) {
      std::string text = p.text;
      if (src.compare(i, text.size(), text) == 0) {
        out.push_back({p.kind, text, l, cl});
        advance(text.size());
        matched = true;
        break;
      }
    }
    if (!matched)
      throw ParseError(ParseError::Kind::lex, l, cl, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  NetworkModel parse() {
    collect_declarations();
    NetworkModel m;
    expect(Tok::kw_model, "expected 'model NAME' header");
    m.name = tokens_[pos_++].text;
    std::vector<std::optional<ExprPtr>> rules(variables_.size());
    rule_locations_.assign(variables_.size(), {0, 0});
    while (peek().kind != Tok::end) {
      const Token& t = peek();
      if (t.kind == Tok::kw_param || t.kind == Tok::kw_var) {
        ++pos_;
        Symbol s;
        s.name = expect(Tok::name, "expected a name").text;
        expect(Tok::kw_in, "expected 'in'");
        s.domain = parse_domain();
        (t.kind == Tok::kw_param ? m.parameters : m.variables).push_back(std::move(s));
      } else if (t.kind == Tok::kw_rule) {
        ++pos_;
        const Token& target = expect(Tok::name, "expected a variable name");
        auto it = variables_.find(target.text);
        if (it == variables_.end()) {
          throw semantic(target, parameters_.count(target.text)
                                     ? "'" + target.text + "' is a parameter and cannot have a rule"
                                     : "rule for undeclared variable '" + target.text + "'");
        }
        expect(Tok::assign, "expected ':='");
        if (rules[it->second]) throw semantic(target, "duplicate rule for '" + target.text + "'");
        rule_locations_[it->second] = {target.line, target.column};
        rules[it->second] = parse_expr();
      } else {
        throw syntax(t, "expected 'param', 'var' or 'rule'");
      }
    }
    if (m.variables.empty()) throw ParseError(ParseError::Kind::semantic, 1, 1, "model declares no variables");
    for (std::size_t i = 0; i < m.variables.size(); ++i) {
      if (!rules[i])
        throw ParseError(ParseError::Kind::semantic, peek().line, peek().column,
                         "no rule for variable '" + m.variables[i].name + "'");
      m.rules.push_back(*rules[i]);
    }
    check_literals(m);
    return m;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  ParseError syntax(const Token& t, const std::string& msg) const {
    return ParseError(ParseError::Kind::syntax, t.line, t.column,
                      msg + (t.kind == Tok::end ? " (at end of input)" : ", found '" + t.text + "'"));
  }
  static ParseError semantic(const Token& t, const std::string& msg) {
    return ParseError(ParseError::Kind::semantic, t.line, t.column, msg);
  }

  const Token& expect(Tok kind, const char* msg) {
    if (peek().kind != kind) throw syntax(peek(), msg);
    return tokens_[pos_++];
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  // First pass: names and declaration order, so rules may precede declarations.
  void collect_declarations() {
    std::size_t nv = 0, np = 0;
    for (std::size_t k = 0; k + 1 < tokens_.size(); ++k) {
      const Token& t = tokens_[k];
      if (t.kind != Tok::kw_var && t.kind != Tok::kw_param) continue;
      const Token& n = tokens_[k + 1];
      if (n.kind != Tok::name) continue;
      if (variables_.count(n.text) || parameters_.count(n.text))
        throw semantic(n, "'" + n.text + "' declared twice");
      if (t.kind == Tok::kw_var)
        variables_[n.text] = nv++;
      else
        parameters_[n.text] = np++;
    }
  }

  Value parse_signed_integer() {
    bool negative = accept(Tok::minus);
    const Token& t = expect(Tok::integer, "expected an integer");
    Value v = std::stoi(t.text);
    return negative ? -v : v;
  }

  Domain parse_domain() {
    const Token& open = expect(Tok::lbrace, "expected '{'");
    Domain d;
    do {
      d.values.push_back(parse_signed_integer());
    } while (accept(Tok::comma));
    expect(Tok::rbrace, "expected '}'");
    std::sort(d.values.begin(), d.values.end());
    if (std::adjacent_find(d.values.begin(), d.values.end()) != d.values.end())
      throw semantic(open, "domain lists a value twice");
    return d;
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (accept(Tok::kw_or)) lhs = make_binary(BinaryOp::logical_or, lhs, parse_and());
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_comparison();
    while (accept(Tok::kw_and)) lhs = make_binary(BinaryOp::logical_and, lhs, parse_comparison());
    return lhs;
  }

  ExprPtr parse_comparison() {
    ExprPtr lhs = parse_additive();
    static const std::pair<Tok, BinaryOp> ops[] = {
        {Tok::eq, BinaryOp::eq}, {Tok::ne, BinaryOp::ne}, {Tok::lt, BinaryOp::lt},
        {Tok::le, BinaryOp::le}, {Tok::gt, BinaryOp::gt}, {Tok::ge, BinaryOp::ge},
    };
    for (auto [tok, op] : ops) {
      if (accept(tok)) {
        ExprPtr rhs = parse_additive();
        for (auto [tok2, op2] : ops)
          if (peek().kind == tok2) throw syntax(peek(), "comparisons do not chain; add parentheses");
        return make_binary(op, lhs, rhs);
      }
    }
    return lhs;
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_unary();
    while (true) {
      if (accept(Tok::plus)) {
        lhs = make_binary(BinaryOp::add, lhs, parse_unary());
      } else if (accept(Tok::minus)) {
        lhs = make_binary(BinaryOp::sub, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (accept(Tok::kw_not)) return make_not(parse_unary());
    if (peek().kind == Tok::minus) {
      ++pos_;
      if (peek().kind == Tok::integer) return make_literal(-std::stoi(tokens_[pos_++].text));
      return make_negate(parse_unary());
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::integer:
        ++pos_;
        return make_literal(std::stoi(t.text));
      case Tok::name: {
        ++pos_;
        if (auto v = variables_.find(t.text); v != variables_.end())
          return make_ref(Scope::variable, v->second, t.text);
        if (auto p = parameters_.find(t.text); p != parameters_.end())
          return make_ref(Scope::parameter, p->second, t.text);
        throw semantic(t, "undeclared symbol '" + t.text + "'");
      }
      case Tok::lparen: {
        ++pos_;
        ExprPtr inner = parse_expr();
        expect(Tok::rparen, "expected ')'");
        return inner;
      }
      case Tok::kw_case: {
        ++pos_;
        std::vector<CaseClause> clauses;
        while (accept(Tok::kw_when)) {
          ExprPtr cond = parse_expr();
          expect(Tok::arrow, "expected '=>'");
          clauses.push_back({cond, parse_expr()});
        }
        if (clauses.empty()) throw syntax(peek(), "expected 'when'");
        if (peek().kind == Tok::kw_end)
          throw semantic(peek(), "case has no 'else' branch and is not total");
        expect(Tok::kw_else, "expected 'when', 'else'");
        ExprPtr otherwise = parse_expr();
        expect(Tok::kw_end, "expected 'end'");
        return make_case(std::move(clauses), std::move(otherwise));
      }
      default:
        throw syntax(t, "expected an expression");
    }
  }

  // Literals produced as a rule's value, and literals compared for equality
  // against a symbol, must lie in the relevant domain.
  void check_literals(const NetworkModel& m) const {
    auto domain_of = [&](const SymbolRef& r) -> const Domain& {
      return r.scope == Scope::variable ? m.variables[r.index].domain : m.parameters[r.index].domain;
    };
    for (std::size_t i = 0; i < m.rules.size(); ++i) {
      const auto [line, column] = rule_locations_[i];
      auto produced = [&](auto& self, const Expression& e) -> void {
        if (const auto* lit = std::get_if<Literal>(&e.node)) {
          if (!m.variables[i].domain.contains(lit->value))
            throw ParseError(ParseError::Kind::semantic, line, column,
                             "rule for '" + m.variables[i].name + "' produces " +
                                 std::to_string(lit->value) + ", outside its domain " +
                                 m.variables[i].domain.to_string());
        } else if (const auto* c = std::get_if<Case>(&e.node)) {
          for (const auto& clause : c->clauses) self(self, *clause.value);
          self(self, *c->otherwise);
        }
      };
      produced(produced, *m.rules[i]);
      auto compared = [&](auto& self, const Expression& e) -> void {
        std::visit(overloaded{
                       [](const Literal&) {},
                       [](const SymbolRef&) {},
                       [&](const Not& n) { self(self, *n.operand); },
                       [&](const Negate& n) { self(self, *n.operand); },
                       [&](const Binary& b) {
                         if (b.op == BinaryOp::eq || b.op == BinaryOp::ne) {
                           const auto* ref = std::get_if<SymbolRef>(&b.lhs->node);
                           const auto* lit = std::get_if<Literal>(&b.rhs->node);
                           if (!ref) {
                             ref = std::get_if<SymbolRef>(&b.rhs->node);
                             lit = std::get_if<Literal>(&b.lhs->node);
                           }
                           if (ref && lit && !domain_of(*ref).contains(lit->value))
                             throw ParseError(ParseError::Kind::semantic, line, column,
                                              "rule for '" + m.variables[i].name + "' compares '" +
                                                  ref->name + "' with " + std::to_string(lit->value) +
                                                  ", outside its domain");
                         }
                         self(self, *b.lhs);
                         self(self, *b.rhs);
                       },
                       [&](const Case& c) {
                         for (const auto& clause : c.clauses) {
                           self(self, *clause.condition);
                           self(self, *clause.value);
                         }
                         self(self, *c.otherwise);
                       },
                   },
                   e.node);
      };
      compared(compared, *m.rules[i]);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, std::size_t> variables_, parameters_;
  std::vector<std::pair<std::size_t, std::size_t>> rule_locations_;
};

}  // namespace detail

inline NetworkModel parse_model(const std::string& text) { return detail::Parser(text).parse(); }

inline std::string serialize(const NetworkModel& m) {
  std::string out = "model " + m.name + "\n";
  for (const auto& p : m.parameters) out += "param " + p.name + " in " + p.domain.to_string() + "\n";
  for (const auto& v : m.variables) out += "var " + v.name + " in " + v.domain.to_string() + "\n";
  for (std::size_t i = 0; i < m.rules.size(); ++i)
    out += "rule " + m.variables[i].name + " := " + to_string(*m.rules[i]) + "\n";
  return out;
}

// FNV-1a of the serialized model, 16 hex digits.
inline std::string model_hash(const NetworkModel& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize(m)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

// Arc (j, i) for every variable x_j read by rule i; parameters are ignored.
inline RawDigraph dependency_digraph(const NetworkModel& m) {
  RawDigraph g;
  g.vertex_count = m.size();
  for (std::size_t i = 0; i < m.rules.size(); ++i) {
    std::vector<SymbolRef> refs;
    collect_refs(*m.rules[i], refs);
    for (const auto& r : refs)
      if (r.scope == Scope::variable)
        g.arcs.emplace_back(static_cast<Vertex>(r.index + 1), static_cast<Vertex>(i + 1));
  }
  return g;
}

inline SimpleGraph dependency_graph(const NetworkModel& m) {
  return combinatorialize(dependency_digraph(m));
}

// Parameters become trailing variables with identity rules; rules that read a
// parameter now read the new variable.
inline NetworkModel promote_parameters(const NetworkModel& m) {
  NetworkModel out;
  out.name = m.name + "-extended";
  out.variables = m.variables;
  out.variables.insert(out.variables.end(), m.parameters.begin(), m.parameters.end());
  const std::size_t n = m.size();
  auto rewrite = [&](auto& self, const ExprPtr& e) -> ExprPtr {
    return std::visit(
        overloaded{
            [&](const Literal&) { return e; },
            [&](const SymbolRef& r) {
              return r.scope == Scope::parameter ? make_ref(Scope::variable, n + r.index, r.name) : e;
            },
            [&](const Not& x) { return make_not(self(self, x.operand)); },
            [&](const Negate& x) { return make_negate(self(self, x.operand)); },
            [&](const Binary& b) { return make_binary(b.op, self(self, b.lhs), self(self, b.rhs)); },
            [&](const Case& c) {
              std::vector<CaseClause> clauses;
              for (const auto& cl : c.clauses)
                clauses.push_back({self(self, cl.condition), self(self, cl.value)});
              return make_case(std::move(clauses), self(self, c.otherwise));
            },
        },
        e->node);
  };
  for (const auto& r : m.rules) out.rules.push_back(rewrite(rewrite, r));
  for (std::size_t p = 0; p < m.parameters.size(); ++p)
    out.rules.push_back(make_ref(Scope::variable, n + p, m.parameters[p].name));
  return out;
}

inline SimpleGraph extended_graph(const NetworkModel& m) {
  return dependency_graph(promote_parameters(m));
}

}  // namespace sdsk
