#include "ellipsolve/expression.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "ellipsolve/errors.hpp"
#include "ellipsolve/special_functions.hpp"

namespace ellipsolve {

struct Expr::Node {
  Op op = Op::constant;
  double value = 0.0;
  Symbol sym = Symbol::xi;
  Fn fn = Fn::sqrt;
  JacobiKind jk = JacobiKind::sn;
  std::vector<Expr> kids;
  unsigned deps = 0;  // bit per Symbol
  std::size_t count = 1;
  int prec = 5;
  std::string text;
};

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string number_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string exponent_text(double p) {
  if (p == std::nearbyint(p)) {
    return p < 0 ? "(" + number_text(p) + ")" : number_text(p);
  }
  const double inv = 1.0 / p;
  if (inv == std::nearbyint(inv) && inv > 0) return "(1/" + number_text(inv) + ")";
  return "(" + number_text(p) + ")";
}

double jacobi_value(JacobiKind k, double u, double m) {
  if (!std::isfinite(u) || !(m >= 0.0 && m <= 1.0)) return kNaN;
  const Modulus mod(m);
  if (k == JacobiKind::ns_plus_cs) {
    const auto t = jacobi(u, mod);
    return t.cn >= 0.0 ? (1.0 + t.cn) / t.sn : t.sn / (1.0 - t.cn);
  }
  const auto t = jacobi(u, mod);
  switch (k) {
    case JacobiKind::sn: return t.sn;
    case JacobiKind::cn: return t.cn;
    case JacobiKind::dn: return t.dn;
    case JacobiKind::ns: return 1.0 / t.sn;
    case JacobiKind::cs: return t.cn / t.sn;
    case JacobiKind::ds: return t.dn / t.sn;
    case JacobiKind::sc: return t.sn / t.cn;
    case JacobiKind::sd: return t.sn / t.dn;
    case JacobiKind::nd: return 1.0 / t.dn;
    case JacobiKind::cd: return t.cn / t.dn;
    case JacobiKind::dc: return t.dn / t.cn;
    case JacobiKind::ns_plus_cs: break;
  }
  return kNaN;
}

double fn_value(Fn f, double x) {
  switch (f) {
    case Fn::sqrt: return std::sqrt(x);
    case Fn::exp: return std::exp(x);
    case Fn::sinh: return std::sinh(x);
    case Fn::cosh: return std::cosh(x);
    case Fn::tanh: return std::tanh(x);
    case Fn::coth: return 1.0 / std::tanh(x);
    case Fn::sin: return std::sin(x);
    case Fn::cos: return std::cos(x);
    case Fn::tan: return std::tan(x);
    case Fn::cot: return std::cos(x) / std::sin(x);
  }
  return kNaN;
}

double symbol_value(Symbol s, const Bindings& b, double xi) {
  switch (s) {
    case Symbol::c0: return b.c.c0;
    case Symbol::c1: return b.c.c1;
    case Symbol::c2: return b.c.c2;
    case Symbol::c3: return b.c.c3;
    case Symbol::c4: return b.c.c4;
    case Symbol::eps: return b.eps;
    case Symbol::m: return b.m;
    case Symbol::xi: return xi;
  }
  return kNaN;
}

}  // namespace

std::string_view to_string(Symbol s) {
  switch (s) {
    case Symbol::c0: return "c0";
    case Symbol::c1: return "c1";
    case Symbol::c2: return "c2";
    case Symbol::c3: return "c3";
    case Symbol::c4: return "c4";
    case Symbol::eps: return "eps";
    case Symbol::m: return "m";
    case Symbol::xi: return "xi";
  }
  return "?";
}

std::string_view to_string(Fn f) {
  switch (f) {
    case Fn::sqrt: return "sqrt";
    case Fn::exp: return "exp";
    case Fn::sinh: return "sinh";
    case Fn::cosh: return "cosh";
    case Fn::tanh: return "tanh";
    case Fn::coth: return "coth";
    case Fn::sin: return "sin";
    case Fn::cos: return "cos";
    case Fn::tan: return "tan";
    case Fn::cot: return "cot";
  }
  return "?";
}

std::string_view to_string(JacobiKind k) {
  switch (k) {
    case JacobiKind::sn: return "sn";
    case JacobiKind::cn: return "cn";
    case JacobiKind::dn: return "dn";
    case JacobiKind::ns: return "ns";
    case JacobiKind::cs: return "cs";
    case JacobiKind::ds: return "ds";
    case JacobiKind::sc: return "sc";
    case JacobiKind::sd: return "sd";
    case JacobiKind::nd: return "nd";
    case JacobiKind::cd: return "cd";
    case JacobiKind::dc: return "dc";
    case JacobiKind::ns_plus_cs: return "ns+cs";
  }
  return "?";
}

namespace {

std::string paren_if(const std::string& s, bool p) { return p ? "(" + s + ")" : s; }

}  // namespace

Expr::Expr(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = value;
  n->text = number_text(value);
  n->prec = value < 0 ? 3 : 5;
  node_ = std::move(n);
}

Expr Expr::symbol(Symbol s) {
  auto n = std::make_shared<Node>();
  n->op = Op::symbol;
  n->sym = s;
  n->deps = 1u << static_cast<unsigned>(s);
  n->text = std::string(to_string(s));
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

namespace {

template <class NodeT>
void adopt(NodeT& n, std::initializer_list<Expr> kids) {
  for (const auto& k : kids) {
    n.kids.push_back(k);
    n.count += k.size();
  }
}

}  // namespace

Expr Expr::function(Fn f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->op = Op::fn;
  n->fn = f;
  adopt(*n, {arg});
  n->deps = arg.node_->deps;
  n->text = std::string(to_string(f)) + "(" + arg.str() + ")";
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::jacobi(JacobiKind k, Expr arg, Expr modulus) {
  auto n = std::make_shared<Node>();
  n->op = Op::jacobi;
  n->jk = k;
  adopt(*n, {arg, modulus});
  n->deps = arg.node_->deps | modulus.node_->deps;
  const std::string args = "(" + arg.str() + ", " + modulus.str() + ")";
  if (k == JacobiKind::ns_plus_cs) {
    n->text = "(ns" + args + " + cs" + args + ")";
  } else {
    n->text = std::string(to_string(k)) + args;
  }
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::weierstrass(Expr z, Expr g2, Expr g3) {
  auto n = std::make_shared<Node>();
  n->op = Op::wp;
  adopt(*n, {z, g2, g3});
  n->deps = z.node_->deps | g2.node_->deps | g3.node_->deps;
  n->text = "wp(" + z.str() + "; " + g2.str() + ", " + g3.str() + ")";
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  adopt(*n, {lhs, rhs});
  n->deps = lhs.node_->deps | rhs.node_->deps;
  const int lp = lhs.node_->prec;
  const int rp = rhs.node_->prec;
  switch (op) {
    case Op::add:
      n->prec = 1;
      n->text = lhs.str() + " + " + paren_if(rhs.str(), rp < 1 || rp == 3);
      break;
    case Op::sub:
      n->prec = 1;
      n->text = lhs.str() + " - " + paren_if(rhs.str(), rp <= 1 || rp == 3);
      break;
    case Op::mul:
      n->prec = 2;
      n->text = paren_if(lhs.str(), lp < 2) + "*" + paren_if(rhs.str(), rp < 2 || rp == 3);
      break;
    case Op::div:
      n->prec = 2;
      n->text = paren_if(lhs.str(), lp < 2) + "/" + paren_if(rhs.str(), rp <= 3);
      break;
    default:
      throw DomainError("Expr::binary: not a binary operator");
  }
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::negate(Expr a) {
  auto n = std::make_shared<Node>();
  n->op = Op::neg;
  adopt(*n, {a});
  n->deps = a.node_->deps;
  n->prec = 3;
  n->text = "-" + paren_if(a.str(), a.node_->prec < 2);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::power(Expr base, double exponent) {
  auto n = std::make_shared<Node>();
  n->op = Op::pow;
  n->value = exponent;
  adopt(*n, {base});
  n->deps = base.node_->deps;
  n->prec = 4;
  n->text = paren_if(base.str(), base.node_->prec < 5) + "^" + exponent_text(exponent);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr operator+(Expr a, Expr b) { return Expr::binary(Op::add, a, b); }
Expr operator-(Expr a, Expr b) { return Expr::binary(Op::sub, a, b); }
Expr operator*(Expr a, Expr b) { return Expr::binary(Op::mul, a, b); }
Expr operator/(Expr a, Expr b) { return Expr::binary(Op::div, a, b); }

Expr operator-(Expr a) { return Expr::negate(a); }

Expr pow(Expr base, double exponent) { return Expr::power(base, exponent); }
Expr sqrt(Expr x) { return Expr::function(Fn::sqrt, x); }
Expr exp(Expr x) { return Expr::function(Fn::exp, x); }
Expr sinh(Expr x) { return Expr::function(Fn::sinh, x); }
Expr cosh(Expr x) { return Expr::function(Fn::cosh, x); }
Expr tanh(Expr x) { return Expr::function(Fn::tanh, x); }
Expr coth(Expr x) { return Expr::function(Fn::coth, x); }
Expr sin(Expr x) { return Expr::function(Fn::sin, x); }
Expr cos(Expr x) { return Expr::function(Fn::cos, x); }
Expr tan(Expr x) { return Expr::function(Fn::tan, x); }
Expr cot(Expr x) { return Expr::function(Fn::cot, x); }
Expr sn(Expr u, Expr m) { return Expr::jacobi(JacobiKind::sn, u, m); }
Expr cn(Expr u, Expr m) { return Expr::jacobi(JacobiKind::cn, u, m); }
Expr dn(Expr u, Expr m) { return Expr::jacobi(JacobiKind::dn, u, m); }
Expr ds(Expr u, Expr m) { return Expr::jacobi(JacobiKind::ds, u, m); }
Expr ns_plus_cs(Expr u, Expr m) { return Expr::jacobi(JacobiKind::ns_plus_cs, u, m); }
Expr wp(Expr z, Expr g2, Expr g3) { return Expr::weierstrass(z, g2, g3); }

Op Expr::op() const noexcept { return node_->op; }
double Expr::value() const noexcept { return node_->value; }
Symbol Expr::sym() const noexcept { return node_->sym; }
Fn Expr::fn() const noexcept { return node_->fn; }
JacobiKind Expr::jacobi_kind() const noexcept { return node_->jk; }
double Expr::exponent() const noexcept { return node_->value; }
const std::vector<Expr>& Expr::children() const noexcept { return node_->kids; }
const std::string& Expr::str() const noexcept { return node_->text; }
std::size_t Expr::size() const noexcept { return node_->count; }

bool Expr::depends_on(Symbol s) const noexcept {
  return (node_->deps >> static_cast<unsigned>(s)) & 1u;
}

double Expr::eval(const Bindings& b, double xi) const {
  return eval_impl(b, xi, nullptr, 0.0);
}

double Expr::eval_pinned(const Bindings& b, double xi, const Expr& key, double value) const {
  return eval_impl(b, xi, &key.str(), value);
}

double Expr::eval_impl(const Bindings& b, double xi, const std::string* key, double pinned) const {
  const Node& n = *node_;
  if (key && n.text == *key) return pinned;
  auto kid = [&](std::size_t i) { return n.kids[i].eval_impl(b, xi, key, pinned); };
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::symbol: return symbol_value(n.sym, b, xi);
    case Op::add: return kid(0) + kid(1);
    case Op::sub: return kid(0) - kid(1);
    case Op::mul: return kid(0) * kid(1);
    case Op::div: return kid(0) / kid(1);
    case Op::neg: return -kid(0);
    case Op::pow: {
      const double base = kid(0);
      if (n.value == 2.0) return base * base;
      if (n.value == 0.25 && base >= 0.0) return std::sqrt(std::sqrt(base));
      return std::pow(base, n.value);
    }
    case Op::fn: return fn_value(n.fn, kid(0));
    case Op::jacobi: return jacobi_value(n.jk, kid(0), kid(1));
    case Op::wp: {
      const double z = kid(0);
      const double g2 = kid(1);
      const double g3 = kid(2);
      if (!std::isfinite(z) || !std::isfinite(g2) || !std::isfinite(g3)) return kNaN;
      try {
        return WeierstrassP({g2, g3}).value(z, 0.0);
      } catch (const PoleError&) {
        return std::numeric_limits<double>::infinity();
      }
    }
  }
  return kNaN;
}

Expr Expr::node(std::size_t index) const {
  if (index == 0) return *this;
  --index;
  for (const auto& k : node_->kids) {
    if (index < k.size()) return k.node(index);
    index -= k.size();
  }
  throw DomainError("Expr::node: index out of range");
}

Expr Expr::replace(std::size_t index, const Expr& with) const {
  if (index == 0) return with;
  --index;
  std::vector<Expr> kids = node_->kids;
  bool done = false;
  for (auto& k : kids) {
    if (index < k.size()) {
      k = k.replace(index, with);
      done = true;
      break;
    }
    index -= k.size();
  }
  if (!done) throw DomainError("Expr::replace: index out of range");
  switch (node_->op) {
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: return binary(node_->op, kids[0], kids[1]);
    case Op::neg: return negate(kids[0]);
    case Op::pow: return power(kids[0], node_->value);
    case Op::fn: return function(node_->fn, kids[0]);
    case Op::jacobi: return jacobi(node_->jk, kids[0], kids[1]);
    case Op::wp: return weierstrass(kids[0], kids[1], kids[2]);
    default: break;
  }
  throw DomainError("Expr::replace: leaf has no children");
}

std::vector<Mutation> single_node_mutations(const Expr& e) {
  std::vector<Mutation> out;
  const std::size_t total = e.size();
  for (std::size_t i = 0; i < total; ++i) {
    const Expr n = e.node(i);
    auto add = [&](std::string from, std::string to, const Expr& repl) {
      out.push_back({i, from + " -> " + to, e.replace(i, repl)});
    };
    if (n.op() == Op::jacobi) {
      const JacobiKind k = n.jacobi_kind();
      if (k == JacobiKind::sn || k == JacobiKind::cn || k == JacobiKind::dn) {
        for (JacobiKind to : {JacobiKind::sn, JacobiKind::cn, JacobiKind::dn}) {
          if (to == k) continue;
          add(std::string(to_string(k)), std::string(to_string(to)),
              Expr::jacobi(to, n.children()[0], n.children()[1]));
        }
      }
    } else if (n.op() == Op::fn) {
      Fn to = n.fn();
      switch (n.fn()) {
        case Fn::tanh: to = Fn::coth; break;
        case Fn::coth: to = Fn::tanh; break;
        case Fn::tan: to = Fn::cot; break;
        case Fn::cot: to = Fn::tan; break;
        case Fn::sinh: to = Fn::cosh; break;
        case Fn::cosh: to = Fn::sinh; break;
        case Fn::sin: to = Fn::cos; break;
        case Fn::cos: to = Fn::sin; break;
        default: break;
      }
      if (to != n.fn()) {
        add(std::string(to_string(n.fn())), std::string(to_string(to)),
            Expr::function(to, n.children()[0]));
      }
    } else if (n.op() == Op::pow) {
      const double p = n.exponent();
      if (p == std::nearbyint(p)) {
        for (double q : {p - 1.0, p + 1.0}) {
          if (q == 0.0) continue;
          add("^" + exponent_text(p), "^" + exponent_text(q), Expr::power(n.children()[0], q));
        }
      }
    }
  }
  return out;
}

}  // namespace ellipsolve
