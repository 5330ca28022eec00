#include "volx/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace volx::expr {

namespace {

ExprPtr number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::number;
  n->value = v;
  return n;
}

ExprPtr variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::variable;
  n->name = std::move(name);
  return n;
}

ExprPtr unary(ExprPtr inner) {
  if (inner->kind == NodeKind::number) return number(-inner->value);
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::unary_minus;
  n->lhs = std::move(inner);
  return n;
}

ExprPtr call(std::string fn, ExprPtr arg) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::call;
  n->name = std::move(fn);
  n->lhs = std::move(arg);
  return n;
}

bool is_number(const ExprPtr& e, double v) {
  return e->kind == NodeKind::number && e->value == v;
}

// binary node with constant folding of the trivial cases; keeps derivative
// output readable without doing real simplification
ExprPtr binary(char op, ExprPtr a, ExprPtr b) {
  if (a->kind == NodeKind::number && b->kind == NodeKind::number) {
    switch (op) {
      case '+': return number(a->value + b->value);
      case '-': return number(a->value - b->value);
      case '*': return number(a->value * b->value);
      case '/': if (b->value != 0.0) return number(a->value / b->value); break;
      case '^': return number(std::pow(a->value, b->value));
    }
  }
  switch (op) {
    case '+':
      if (is_number(a, 0.0)) return b;
      if (is_number(b, 0.0)) return a;
      break;
    case '-':
      if (is_number(b, 0.0)) return a;
      if (is_number(a, 0.0)) return unary(b);
      break;
    case '*':
      if (is_number(a, 0.0) || is_number(b, 0.0)) return number(0.0);
      if (is_number(a, 1.0)) return b;
      if (is_number(b, 1.0)) return a;
      break;
    case '/':
      if (is_number(a, 0.0)) return number(0.0);
      if (is_number(b, 1.0)) return a;
      break;
    case '^':
      if (is_number(b, 1.0)) return a;
      if (is_number(b, 0.0)) return number(1.0);
      break;
  }
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::binary;
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

// ---------------------------------------------------------------------------
// recursive-descent parser
// ---------------------------------------------------------------------------

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos); }

  // sum := product (('+' | '-') product)*
  ExprPtr parse_sum() {
    ExprPtr lhs = parse_product();
    while (true) {
      if (accept('+'))
        lhs = binary('+', lhs, parse_product());
      else if (accept('-'))
        lhs = binary('-', lhs, parse_product());
      else
        return lhs;
    }
  }

  // product := unary (('*' | '/') unary)*
  ExprPtr parse_product() {
    ExprPtr lhs = parse_unary();
    while (true) {
      if (accept('*'))
        lhs = binary('*', lhs, parse_unary());
      else if (accept('/'))
        lhs = binary('/', lhs, parse_unary());
      else
        return lhs;
    }
  }

  // unary := '-' unary | power      (so -x^2 parses as -(x^2))
  ExprPtr parse_unary() {
    if (accept('-')) return unary(parse_unary());
    return parse_power();
  }

  // power := atom ('^' unary)?      (right-associative)
  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (accept('^')) return binary('^', base, parse_unary());
    return base;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression");
    const char c = text[pos];
    if (c == '(') {
      ++pos;
      ExprPtr inner = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr parse_number() {
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
      ++pos;
    // optional exponent
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      std::size_t e = pos + 1;
      if (e < text.size() && (text[e] == '+' || text[e] == '-')) ++e;
      if (e < text.size() && std::isdigit(static_cast<unsigned char>(text[e]))) {
        pos = e;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      }
    }
    const std::string tok(text.substr(start, pos - start));
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return number(v);
    } catch (const std::exception&) {
      pos = start;
      fail("malformed number '" + tok + "'");
    }
  }

  ExprPtr parse_identifier() {
    const std::size_t start = pos;
    while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::string name(text.substr(start, pos - start));
    if (name == "sin" || name == "cos" || name == "exp") {
      if (!accept('(')) fail("expected '(' after function name");
      ExprPtr arg = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return call(name, arg);
    }
    if (name == "u" || name == "r") return variable(name);
    pos = start;
    fail("unknown identifier '" + name + "'");
  }
};

// precedence levels: 1 sum, 2 product, 3 unary minus, 4 power, 5 atoms
int precedence(const Node& n) {
  switch (n.kind) {
    case NodeKind::number:
      return std::signbit(n.value) ? 3 : 5;  // negative literals lex like unary minus
    case NodeKind::variable:
    case NodeKind::call:
      return 5;
    case NodeKind::unary_minus:
      return 3;
    case NodeKind::binary:
      switch (n.op) {
        case '+': case '-': return 1;
        case '*': case '/': return 2;
        case '^': return 4;
      }
  }
  return 5;
}

void print_rec(const ExprPtr& e, std::ostream& os, int parent_prec) {
  const int prec = precedence(*e);
  const bool need_parens = prec < parent_prec;
  if (need_parens) os << '(';
  switch (e->kind) {
    case NodeKind::number: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << e->value;
      os << tmp.str();
      break;
    }
    case NodeKind::variable:
      os << e->name;
      break;
    case NodeKind::unary_minus:
      os << '-';
      print_rec(e->lhs, os, 4);  // unary minus binds between * / and ^
      break;
    case NodeKind::call:
      os << e->name << '(';
      print_rec(e->lhs, os, 0);
      os << ')';
      break;
    case NodeKind::binary:
      // + - * / are left-associative: their right operand prints one level
      // up so that reparsing cannot reassociate. ^ is right-associative, so
      // its left operand gets the stricter level instead.
      if (e->op == '^') {
        print_rec(e->lhs, os, prec + 1);
        os << e->op;
        print_rec(e->rhs, os, prec);
      } else {
        print_rec(e->lhs, os, prec);
        os << e->op;
        print_rec(e->rhs, os, prec + 1);
      }
      break;
  }
  if (need_parens) os << ')';
}

}  // namespace

ExprPtr parse(std::string_view text) {
  Parser p{text};
  ExprPtr e = p.parse_sum();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

std::string print(const ExprPtr& e) {
  std::ostringstream os;
  print_rec(e, os, 0);
  return os.str();
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::number: return a->value == b->value;
    case NodeKind::variable: return a->name == b->name;
    case NodeKind::unary_minus: return equal(a->lhs, b->lhs);
    case NodeKind::call: return a->name == b->name && equal(a->lhs, b->lhs);
    case NodeKind::binary:
      return a->op == b->op && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
  return false;
}

ExprPtr derivative(const ExprPtr& e) {
  switch (e->kind) {
    case NodeKind::number:
      return number(0.0);
    case NodeKind::variable:
      return number(1.0);
    case NodeKind::unary_minus:
      return unary(derivative(e->lhs));
    case NodeKind::call: {
      ExprPtr inner = derivative(e->lhs);
      ExprPtr outer;
      if (e->name == "sin")
        outer = call("cos", e->lhs);
      else if (e->name == "cos")
        outer = unary(call("sin", e->lhs));
      else
        outer = call("exp", e->lhs);
      return binary('*', outer, inner);
    }
    case NodeKind::binary: {
      const ExprPtr& f = e->lhs;
      const ExprPtr& g = e->rhs;
      ExprPtr df = derivative(f);
      ExprPtr dg = derivative(g);
      switch (e->op) {
        case '+': return binary('+', df, dg);
        case '-': return binary('-', df, dg);
        case '*': return binary('+', binary('*', df, g), binary('*', f, dg));
        case '/':
          if (is_number(dg, 0.0)) return binary('/', df, g);
          return binary('/', binary('-', binary('*', df, g), binary('*', f, dg)),
                        binary('^', g, number(2.0)));
        case '^':
          // constant exponent: n f^(n-1) f'
          if (g->kind == NodeKind::number)
            return binary('*', binary('*', g, binary('^', f, number(g->value - 1.0))), df);
          // general case via exp(g ln f) is outside the grammar (no ln);
          // fall back to f^g (g' would need ln) -- reject
          throw NumericError("derivative: non-constant exponents are not differentiable "
                             "in this grammar");
      }
    }
  }
  return number(0.0);
}

double eval(const ExprPtr& e, double x) {
  switch (e->kind) {
    case NodeKind::number:
      return e->value;
    case NodeKind::variable:
      return x;
    case NodeKind::unary_minus:
      return -eval(e->lhs, x);
    case NodeKind::call: {
      const double a = eval(e->lhs, x);
      if (e->name == "sin") return std::sin(a);
      if (e->name == "cos") return std::cos(a);
      return std::exp(a);
    }
    case NodeKind::binary: {
      const double a = eval(e->lhs, x);
      const double b = eval(e->rhs, x);
      switch (e->op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/':
          if (b == 0.0) throw NumericError("eval: division by zero");
          return a / b;
        case '^':
          if (a == 0.0 && b < 0.0) throw NumericError("eval: 0^negative");
          return std::pow(a, b);
      }
    }
  }
  return 0.0;
}

std::string variable_name(const ExprPtr& e) {
  switch (e->kind) {
    case NodeKind::variable:
      return e->name;
    case NodeKind::unary_minus:
    case NodeKind::call:
      return variable_name(e->lhs);
    case NodeKind::binary: {
      const std::string l = variable_name(e->lhs);
      if (!l.empty()) return l;
      return variable_name(e->rhs);
    }
    default:
      return "";
  }
}

}  // namespace volx::expr
