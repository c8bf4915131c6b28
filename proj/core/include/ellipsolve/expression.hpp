#pragma once

// Small expression trees for the closed-form catalog entries. Forms are
// compositions of named primitives over the symbols c0..c4, eps, m and xi,
// so a single node (a Jacobi kind, an exponent) can be swapped in place.

#include <memory>
#include <string>
#include <vector>

#include "ellipsolve/elliptic_core.hpp"

namespace ellipsolve {

struct Bindings {
  EllipticCoefficients c;
  double eps = 1.0;
  double m = 0.5;
};

enum class Symbol : unsigned char { c0, c1, c2, c3, c4, eps, m, xi };
enum class Op : unsigned char { constant, symbol, add, sub, mul, div, neg, pow, fn, jacobi, wp };
enum class Fn : unsigned char { sqrt, exp, sinh, cosh, tanh, coth, sin, cos, tan, cot };
enum class JacobiKind : unsigned char { sn, cn, dn, ns, cs, ds, sc, sd, nd, cd, dc, ns_plus_cs };

std::string_view to_string(Symbol s);
std::string_view to_string(Fn f);
std::string_view to_string(JacobiKind k);

class Expr {
 public:
  Expr(double value);  // NOLINT: constants convert implicitly
  Expr(int value) : Expr(static_cast<double>(value)) {}  // NOLINT

  static Expr symbol(Symbol s);
  static Expr function(Fn f, Expr arg);
  static Expr jacobi(JacobiKind k, Expr arg, Expr modulus);
  static Expr weierstrass(Expr z, Expr g2, Expr g3);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr power(Expr base, double exponent);
  static Expr negate(Expr a);

  // Non-finite results (sqrt of a negative, division by zero) propagate as
  // NaN/inf; nothing here throws for a pole.
  double eval(const Bindings& b, double xi = 0.0) const;

  Op op() const noexcept;
  double value() const noexcept;         // constant payload
  Symbol sym() const noexcept;           // symbol payload
  Fn fn() const noexcept;                // function payload
  JacobiKind jacobi_kind() const noexcept;
  double exponent() const noexcept;      // power payload
  const std::vector<Expr>& children() const noexcept;

  bool depends_on(Symbol s) const noexcept;
  const std::string& str() const noexcept;
  bool same_as(const Expr& other) const noexcept { return str() == other.str(); }

  // Pre-order node count, and copy with the k-th node (pre-order) replaced.
  std::size_t size() const noexcept;
  Expr replace(std::size_t index, const Expr& with) const;
  Expr node(std::size_t index) const;

  // Evaluate with every subtree structurally equal to `key` pinned to `value`.
  double eval_pinned(const Bindings& b, double xi, const Expr& key, double value) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  double eval_impl(const Bindings& b, double xi, const std::string* key, double pinned) const;

  std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);

Expr pow(Expr base, double exponent);
Expr sqrt(Expr x);
Expr exp(Expr x);
Expr sinh(Expr x);
Expr cosh(Expr x);
Expr tanh(Expr x);
Expr coth(Expr x);
Expr sin(Expr x);
Expr cos(Expr x);
Expr tan(Expr x);
Expr cot(Expr x);
Expr sn(Expr u, Expr m);
Expr cn(Expr u, Expr m);
Expr dn(Expr u, Expr m);
Expr ds(Expr u, Expr m);
Expr ns_plus_cs(Expr u, Expr m);
Expr wp(Expr z, Expr g2, Expr g3);

namespace sym {
inline const Expr c0 = Expr::symbol(Symbol::c0);
inline const Expr c1 = Expr::symbol(Symbol::c1);
inline const Expr c2 = Expr::symbol(Symbol::c2);
inline const Expr c3 = Expr::symbol(Symbol::c3);
inline const Expr c4 = Expr::symbol(Symbol::c4);
inline const Expr eps = Expr::symbol(Symbol::eps);
inline const Expr m = Expr::symbol(Symbol::m);
inline const Expr xi = Expr::symbol(Symbol::xi);
}  // namespace sym

struct Mutation {
  std::size_t index;        // pre-order position of the swapped node
  std::string description;  // e.g. "cn -> sn"
  Expr result;
};

// Every single-node edit considered by the errata resolver, in pre-order:
// sn/cn/dn swaps, tanh<->coth, tan<->cot, sinh<->cosh, sin<->cos, and
// integer exponents moved by one (never to zero).
std::vector<Mutation> single_node_mutations(const Expr& e);

}  // namespace ellipsolve
