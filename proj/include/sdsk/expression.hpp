#pragma once

// Expression trees for vertex update rules: integer literals, symbol
// references, arithmetic, comparisons, and/or/not with nonzero-is-true
// coercion, and guarded case lists evaluated first-match-wins.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sdsk/error.hpp"

namespace sdsk {

using Value = int;

struct Expression;
using ExprPtr = std::shared_ptr<const Expression>;

enum class Scope { variable, parameter };

enum class BinaryOp { add, sub, eq, ne, lt, le, gt, ge, logical_and, logical_or };

struct Literal {
  Value value;
};

struct SymbolRef {
  Scope scope;
  std::size_t index;  // position among the model's variables or parameters
  std::string name;
};

struct Not {
  ExprPtr operand;
};

struct Negate {
  ExprPtr operand;
};

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct CaseClause {
  ExprPtr condition;
  ExprPtr value;
};

struct Case {
  std::vector<CaseClause> clauses;
  ExprPtr otherwise;
};

struct Expression {
  std::variant<Literal, SymbolRef, Not, Negate, Binary, Case> node;
};

inline ExprPtr make_literal(Value v) { return std::make_shared<const Expression>(Expression{Literal{v}}); }
inline ExprPtr make_ref(Scope scope, std::size_t index, std::string name) {
  return std::make_shared<const Expression>(Expression{SymbolRef{scope, index, std::move(name)}});
}
inline ExprPtr make_not(ExprPtr e) { return std::make_shared<const Expression>(Expression{Not{std::move(e)}}); }
inline ExprPtr make_negate(ExprPtr e) {
  return std::make_shared<const Expression>(Expression{Negate{std::move(e)}});
}
inline ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expression>(Expression{Binary{op, std::move(lhs), std::move(rhs)}});
}
inline ExprPtr make_case(std::vector<CaseClause> clauses, ExprPtr otherwise) {
  return std::make_shared<const Expression>(Expression{Case{std::move(clauses), std::move(otherwise)}});
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline Value evaluate(const Expression& e, std::span<const Value> vars,
                      std::span<const Value> params) {
  return std::visit(
      overloaded{
          [](const Literal& lit) { return lit.value; },
          [&](const SymbolRef& ref) {
            auto values = ref.scope == Scope::variable ? vars : params;
            if (ref.index >= values.size()) throw InputError("unbound symbol " + ref.name);
            return values[ref.index];
          },
          [&](const Not& n) { return Value{evaluate(*n.operand, vars, params) == 0}; },
          [&](const Negate& n) { return -evaluate(*n.operand, vars, params); },
          [&](const Binary& b) -> Value {
            const Value lhs = evaluate(*b.lhs, vars, params);
            switch (b.op) {
              case BinaryOp::logical_and:
                return lhs != 0 && evaluate(*b.rhs, vars, params) != 0;
              case BinaryOp::logical_or:
                return lhs != 0 || evaluate(*b.rhs, vars, params) != 0;
              default:
                break;
            }
            const Value rhs = evaluate(*b.rhs, vars, params);
            switch (b.op) {
              case BinaryOp::add: return lhs + rhs;
              case BinaryOp::sub: return lhs - rhs;
              case BinaryOp::eq: return lhs == rhs;
              case BinaryOp::ne: return lhs != rhs;
              case BinaryOp::lt: return lhs < rhs;
              case BinaryOp::le: return lhs <= rhs;
              case BinaryOp::gt: return lhs > rhs;
              case BinaryOp::ge: return lhs >= rhs;
              default: return 0;
            }
          },
          [&](const Case& c) {
            for (const auto& clause : c.clauses)
              if (evaluate(*clause.condition, vars, params) != 0)
                return evaluate(*clause.value, vars, params);
            return evaluate(*c.otherwise, vars, params);
          },
      },
      e.node);
}

inline bool operator==(const Expression& a, const Expression& b);

inline bool same_tree(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

inline bool operator==(const Expression& a, const Expression& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Literal& x) { return x.value == std::get<Literal>(b.node).value; },
          [&](const SymbolRef& x) {
            const auto& y = std::get<SymbolRef>(b.node);
            return x.scope == y.scope && x.index == y.index && x.name == y.name;
          },
          [&](const Not& x) { return same_tree(x.operand, std::get<Not>(b.node).operand); },
          [&](const Negate& x) { return same_tree(x.operand, std::get<Negate>(b.node).operand); },
          [&](const Binary& x) {
            const auto& y = std::get<Binary>(b.node);
            return x.op == y.op && same_tree(x.lhs, y.lhs) && same_tree(x.rhs, y.rhs);
          },
          [&](const Case& x) {
            const auto& y = std::get<Case>(b.node);
            if (x.clauses.size() != y.clauses.size()) return false;
            for (std::size_t i = 0; i < x.clauses.size(); ++i)
              if (!same_tree(x.clauses[i].condition, y.clauses[i].condition) ||
                  !same_tree(x.clauses[i].value, y.clauses[i].value))
                return false;
            return same_tree(x.otherwise, y.otherwise);
          },
      },
      a.node);
}

// Every symbol the expression reads, in traversal order (may repeat).
inline void collect_refs(const Expression& e, std::vector<SymbolRef>& out) {
  std::visit(overloaded{
                 [](const Literal&) {},
                 [&](const SymbolRef& ref) { out.push_back(ref); },
                 [&](const Not& n) { collect_refs(*n.operand, out); },
                 [&](const Negate& n) { collect_refs(*n.operand, out); },
                 [&](const Binary& b) {
                   collect_refs(*b.lhs, out);
                   collect_refs(*b.rhs, out);
                 },
                 [&](const Case& c) {
                   for (const auto& clause : c.clauses) {
                     collect_refs(*clause.condition, out);
                     collect_refs(*clause.value, out);
                   }
                   collect_refs(*c.otherwise, out);
                 },
             },
             e.node);
}

// Binding strength, loosest first: or, and, comparison, additive, unary, primary.
namespace detail {

inline int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::logical_or: return 1;
    case BinaryOp::logical_and: return 2;
    case BinaryOp::add:
    case BinaryOp::sub: return 4;
    default: return 3;
  }
}

inline int precedence(const Expression& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) return precedence(b->op);
  if (std::holds_alternative<Not>(e.node) || std::holds_alternative<Negate>(e.node)) return 5;
  return 6;
}

inline const char* spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::eq: return "=";
    case BinaryOp::ne: return "!=";
    case BinaryOp::lt: return "<";
    case BinaryOp::le: return "<=";
    case BinaryOp::gt: return ">";
    case BinaryOp::ge: return ">=";
    case BinaryOp::logical_and: return "and";
    case BinaryOp::logical_or: return "or";
  }
  return "?";
}

}  // namespace detail

// Prints with the minimum parentheses needed to reparse to the same tree.
inline std::string to_string(const Expression& e) {
  auto wrap = [](const Expression& child, bool parens) {
    return parens ? "(" + to_string(child) + ")" : to_string(child);
  };
  return std::visit(
      overloaded{
          [](const Literal& lit) { return std::to_string(lit.value); },
          [](const SymbolRef& ref) { return ref.name; },
          [&](const Not& n) { return "not " + wrap(*n.operand, detail::precedence(*n.operand) < 5); },
          [&](const Negate& n) {
            // "-3" reads back as a literal, so a negated literal keeps its parentheses.
            const bool parens = detail::precedence(*n.operand) < 5 ||
                                std::holds_alternative<Literal>(n.operand->node);
            return "-" + wrap(*n.operand, parens);
          },
          [&](const Binary& b) {
            const int p = detail::precedence(b.op);
            const int lp = detail::precedence(*b.lhs), rp = detail::precedence(*b.rhs);
            // Comparisons do not chain; other operators associate to the left.
            const bool left = p == 3 ? lp <= p : lp < p;
            const bool right = rp <= p;
            return wrap(*b.lhs, left) + " " + detail::spelling(b.op) + " " + wrap(*b.rhs, right);
          },
          [&](const Case& c) {
            std::string out = "case";
            for (const auto& clause : c.clauses)
              out += " when " + to_string(*clause.condition) + " => " + to_string(*clause.value);
            return out + " else " + to_string(*c.otherwise) + " end";
          },
      },
      e.node);
}

}  // namespace sdsk
