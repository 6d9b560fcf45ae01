#pragma once

#include <memory>
#include <sstream>
#include <variant>

#include "modlab/idealization.hpp"
#include "modlab/intlattice.hpp"
#include "modlab/module.hpp"

namespace modlab {

/// Parsed instance document: one ring, one module over it, and named
/// submodules given by generator lists.  The integer world (ring Z) carries
/// lattices instead of finite submodules.
struct InstanceSpec {
  ModulePtr module;  // finite world (null for the integer world)
  std::vector<std::pair<std::string, Submodule>> subs;

  int int_ambient = 0;  // > 0 for the integer world
  bool int_regular_form = false;  // written as "module regular" (k = 1)
  std::vector<std::pair<std::string, IntLattice>> int_subs;

  std::string canonical_text;

  bool integer_world() const { return int_ambient > 0; }

  const Submodule* find_sub(const std::string& name) const {
    for (const auto& [n, s] : subs)
      if (n == name) return &s;
    return nullptr;
  }
  const IntLattice* find_int_sub(const std::string& name) const {
    for (const auto& [n, s] : int_subs)
      if (n == name) return &s;
    return nullptr;
  }
};

namespace specdetail {

struct Token {
  enum Kind { word, integer, lparen, rparen, lbracket, rbracket, comma, equals, eol, eof } kind;
  std::string text;
  long long value = 0;
  int line = 0;
  int col = 0;
};

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Token::Kind k, std::string t, long long v = 0) {
    out.push_back(Token{k, std::move(t), v, line, col});
  };
  bool line_has_tokens = false;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      if (line_has_tokens) push(Token::eol, "\\n");
      line_has_tokens = false;
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    line_has_tokens = true;
    const int tok_col = col;
    auto push_at = [&](Token::Kind k, std::string t, long long v = 0) {
      out.push_back(Token{k, std::move(t), v, line, tok_col});
    };
    if (c == '(') { push_at(Token::lparen, "("); ++i; ++col; continue; }
    if (c == ')') { push_at(Token::rparen, ")"); ++i; ++col; continue; }
    if (c == '[') { push_at(Token::lbracket, "["); ++i; ++col; continue; }
    if (c == ']') { push_at(Token::rbracket, "]"); ++i; ++col; continue; }
    if (c == ',') { push_at(Token::comma, ","); ++i; ++col; continue; }
    if (c == '=') { push_at(Token::equals, "="); ++i; ++col; continue; }
    if (c == '-' || (c >= '0' && c <= '9')) {
      size_t j = i + 1;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      std::string t = text.substr(i, j - i);
      if (t == "-") throw SpecError(line, tok_col, "stray '-'");
      long long v = 0;
      try {
        v = std::stoll(t);
      } catch (const std::exception&) {
        throw SpecError(line, tok_col, "integer out of range: " + t);
      }
      push_at(Token::integer, t, v);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_' || text[j] == '-'))
        ++j;
      push_at(Token::word, text.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    throw SpecError(line, tok_col, std::string("unexpected character '") + c + "'");
  }
  if (line_has_tokens) out.push_back(Token{Token::eol, "\\n", 0, line, col});
  out.push_back(Token{Token::eof, "", 0, line, col});
  return out;
}

/// Element literal: an integer or a tuple of literals.
struct Literal {
  long long value = 0;
  std::vector<Literal> tuple;
  bool is_tuple = false;
  int line = 0, col = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw SpecError(t.line, t.col, msg + " at '" + (t.kind == Token::eof ? "<eof>" : t.text) + "'");
  }
  Token expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k) fail(peek(), "expected " + what);
    return take();
  }
  bool accept(Token::Kind k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  void skip_eols() {
    while (peek().kind == Token::eol) ++pos_;
  }
  Token expect_word(const std::string& w) {
    if (peek().kind != Token::word || peek().text != w) fail(peek(), "expected '" + w + "'");
    return take();
  }

  Literal parse_literal() {
    Literal lit;
    lit.line = peek().line;
    lit.col = peek().col;
    if (peek().kind == Token::integer) {
      lit.value = take().value;
      return lit;
    }
    if (peek().kind == Token::lparen) {
      take();
      lit.is_tuple = true;
      lit.tuple.push_back(parse_literal());
      while (accept(Token::comma)) lit.tuple.push_back(parse_literal());
      expect(Token::rparen, "')'");
      return lit;
    }
    fail(peek(), "expected an element literal");
  }

  std::vector<Literal> parse_literal_list() {
    std::vector<Literal> out;
    expect(Token::lbracket, "'['");
    if (peek().kind != Token::rbracket) {
      out.push_back(parse_literal());
      while (accept(Token::comma)) out.push_back(parse_literal());
    }
    expect(Token::rbracket, "']'");
    return out;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// --- descriptor ASTs -------------------------------------------------------

struct RingExpr;
struct ModuleExpr;

struct RingExpr {
  enum Kind { zn, integers, product, quotient, idealize } kind;
  int modulus = 0;                     // zn
  std::unique_ptr<RingExpr> left;      // product/quotient/idealize base
  std::unique_ptr<RingExpr> right;     // product
  std::vector<Literal> ideal_gens;     // quotient
  std::unique_ptr<ModuleExpr> module;  // idealize
};

struct ModuleExpr {
  enum Kind { regular, cyclic, product, quotient, intlattice } kind;
  std::vector<int> orders;              // cyclic
  int ambient = 0;                      // intlattice
  std::unique_ptr<ModuleExpr> left;     // product/quotient base
  std::unique_ptr<ModuleExpr> right;    // product
  std::vector<Literal> sub_gens;        // quotient
};

class ModuleResolver;

/// Resolves element literals to carrier indices for a ring built from a
/// descriptor; mirrors the index layout of each construction.
class RingResolver {
 public:
  RingResolver(const RingExpr& e, const RingPtr& ring);
  static RingPtr build(const RingExpr& e);
  int resolve(const Literal& lit) const;

  RingPtr ring_;
  int modulus_ = 0;
  std::unique_ptr<RingResolver> left_, right_, base_;
  std::vector<int> coset_;
  std::unique_ptr<ModuleResolver> idz_module_;  // idealization component
};

class ModuleResolver {
 public:
  /// ring_expr is null exactly for integer-base cyclic modules; a regular
  /// module builds and owns its own ring resolver when none is supplied.
  ModuleResolver(const ModuleExpr& e, const RingExpr* ring_expr, const RingPtr& ring,
                 const RingResolver* ring_resolver) {
    switch (e.kind) {
      case ModuleExpr::regular:
        if (ring_resolver == nullptr) {
          owned_ring_res_ = std::make_unique<RingResolver>(*ring_expr, ring);
          ring_resolver = owned_ring_res_.get();
        }
        ring_res_ = ring_resolver;
        module_ = FiniteModule::regular(ring);
        break;
      case ModuleExpr::cyclic: {
        orders_ = e.orders;
        if (ring_expr == nullptr)
          module_ = FiniteModule::cyclic_over_integers(e.orders);
        else
          module_ = FiniteModule::cyclic_over_ring(ring, e.orders);
        shape_ = std::make_unique<detail::CyclicShape>(e.orders);
        break;
      }
      case ModuleExpr::product: {
        if (ring_expr == nullptr || ring_expr->kind != RingExpr::product)
          throw std::invalid_argument("module product requires a product base ring");
        RingPtr r1 = RingResolver::build(*ring_expr->left);
        RingPtr r2 = RingResolver::build(*ring_expr->right);
        left_ = std::make_unique<ModuleResolver>(*e.left, ring_expr->left.get(), r1, nullptr);
        right_ = std::make_unique<ModuleResolver>(*e.right, ring_expr->right.get(), r2, nullptr);
        module_ = FiniteModule::product(left_->module_, right_->module_);
        break;
      }
      case ModuleExpr::quotient: {
        base_ = std::make_unique<ModuleResolver>(*e.left, ring_expr, ring, ring_resolver);
        std::vector<int> gens;
        for (const auto& lit : e.sub_gens) gens.push_back(base_->resolve(lit));
        Submodule n = submodule_span(base_->module_, gens);
        module_ = FiniteModule::quotient(base_->module_, n);
        coset_ = additive_coset_map(
            base_->module_->size(),
            [&](int a, int b) { return base_->module_->add(a, b); }, n.elements);
        break;
      }
      case ModuleExpr::intlattice:
        throw std::logic_error("integer lattices have no finite resolver");
    }
  }

  int resolve(const Literal& lit) const {
    if (shape_) {
      std::vector<int> coord(orders_.size(), 0);
      if (!lit.is_tuple) {
        if (orders_.size() != 1) throw SpecError(lit.line, lit.col, "expected a tuple literal");
        long long v = lit.value % orders_[0];
        if (v < 0) v += orders_[0];
        coord[0] = static_cast<int>(v);
      } else {
        if (lit.tuple.size() != orders_.size())
          throw SpecError(lit.line, lit.col, "tuple arity does not match the cyclic factors");
        for (size_t i = 0; i < orders_.size(); ++i) {
          if (lit.tuple[i].is_tuple)
            throw SpecError(lit.tuple[i].line, lit.tuple[i].col, "expected an integer");
          long long v = lit.tuple[i].value % orders_[i];
          if (v < 0) v += orders_[i];
          coord[i] = static_cast<int>(v);
        }
      }
      return shape_->pack(coord);
    }
    if (ring_res_) return ring_res_->resolve(lit);  // regular module
    if (left_) {                                    // product module
      if (!lit.is_tuple || lit.tuple.size() != 2)
        throw SpecError(lit.line, lit.col, "expected a pair literal");
      return left_->resolve(lit.tuple[0]) * right_->module_->size() +
             right_->resolve(lit.tuple[1]);
    }
    if (base_) return coset_[base_->resolve(lit)];  // quotient module
    throw SpecError(lit.line, lit.col, "elements of this module cannot be written directly");
  }

  ModulePtr module_;
  const RingResolver* ring_res_ = nullptr;
  std::unique_ptr<RingResolver> owned_ring_res_;
  std::vector<int> orders_;
  std::unique_ptr<detail::CyclicShape> shape_;
  std::unique_ptr<ModuleResolver> left_, right_, base_;
  std::vector<int> coset_;
};

inline RingResolver::RingResolver(const RingExpr& e, const RingPtr& ring) : ring_(ring) {
  switch (e.kind) {
    case RingExpr::zn:
      modulus_ = e.modulus;
      break;
    case RingExpr::product:
      left_ = std::make_unique<RingResolver>(*e.left, build(*e.left));
      right_ = std::make_unique<RingResolver>(*e.right, build(*e.right));
      break;
    case RingExpr::quotient: {
      RingPtr base = build(*e.left);
      base_ = std::make_unique<RingResolver>(*e.left, base);
      std::vector<int> gens;
      for (const auto& lit : e.ideal_gens) gens.push_back(base_->resolve(lit));
      Ideal ideal = ideal_span(base, gens);
      if (ideal.is_whole())
        throw SpecError(e.ideal_gens.empty() ? 1 : e.ideal_gens.front().line,
                        e.ideal_gens.empty() ? 1 : e.ideal_gens.front().col,
                        "quotient by an improper ideal");
      coset_ = additive_coset_map(
          base->size(), [&](int a, int b) { return base->add(a, b); }, ideal.elements);
      break;
    }
    case RingExpr::idealize: {
      RingPtr base = build(*e.left);
      base_ = std::make_unique<RingResolver>(*e.left, base);
      idz_module_ =
          std::make_unique<ModuleResolver>(*e.module, e.left.get(), base, base_.get());
      break;
    }
    case RingExpr::integers:
      throw std::logic_error("the integer ring has no finite resolver");
  }
}

inline int RingResolver::resolve(const Literal& lit) const {
  if (modulus_ > 0) {
    if (lit.is_tuple) throw SpecError(lit.line, lit.col, "expected an integer");
    long long v = lit.value % modulus_;
    if (v < 0) v += modulus_;
    return static_cast<int>(v);
  }
  if (left_) {  // product
    if (!lit.is_tuple || lit.tuple.size() != 2)
      throw SpecError(lit.line, lit.col, "expected a pair literal");
    int a = left_->resolve(lit.tuple[0]);
    int b = right_->resolve(lit.tuple[1]);
    return a * right_->ring_->size() + b;
  }
  if (idz_module_) {  // idealization: (r, m) has index r*|M| + m
    if (!lit.is_tuple || lit.tuple.size() != 2)
      throw SpecError(lit.line, lit.col, "expected a pair literal");
    int r = base_->resolve(lit.tuple[0]);
    int m = idz_module_->resolve(lit.tuple[1]);
    return r * idz_module_->module_->size() + m;
  }
  if (base_) return coset_[base_->resolve(lit)];  // quotient
  throw SpecError(lit.line, lit.col, "elements of this ring cannot be written directly");
}

inline RingPtr RingResolver::build(const RingExpr& e) {
  switch (e.kind) {
    case RingExpr::zn:
      return FiniteRing::residue(e.modulus);
    case RingExpr::product:
      return FiniteRing::product(build(*e.left), build(*e.right));
    case RingExpr::quotient: {
      RingPtr base = build(*e.left);
      RingResolver res(*e.left, base);
      std::vector<int> gens;
      for (const auto& lit : e.ideal_gens) gens.push_back(res.resolve(lit));
      return FiniteRing::quotient(base, ideal_span(base, gens));
    }
    case RingExpr::idealize: {
      RingPtr base = build(*e.left);
      RingResolver res(*e.left, base);
      ModuleResolver mres(*e.module, e.left.get(), base, &res);
      return idealize(base, mres.module_).ring;
    }
    case RingExpr::integers:
      throw std::logic_error("the integer ring is not a finite ring");
  }
  throw std::logic_error("unreachable");
}

// --- grammar ---------------------------------------------------------------

inline std::unique_ptr<ModuleExpr> parse_module_expr(Parser& p);

inline std::unique_ptr<RingExpr> parse_ring_expr(Parser& p) {
  auto out = std::make_unique<RingExpr>();
  Token t = p.expect(Token::word, "a ring kind");
  if (t.text == "zn") {
    Token n = p.expect(Token::integer, "a modulus");
    if (n.value < 2) throw SpecError(n.line, n.col, "residue modulus must be at least 2");
    out->kind = RingExpr::zn;
    out->modulus = static_cast<int>(n.value);
    return out;
  }
  if (t.text == "Z") {
    out->kind = RingExpr::integers;
    return out;
  }
  if (t.text == "product") {
    out->kind = RingExpr::product;
    p.expect(Token::lparen, "'('");
    out->left = parse_ring_expr(p);
    p.expect(Token::rparen, "')'");
    p.expect(Token::lparen, "'('");
    out->right = parse_ring_expr(p);
    p.expect(Token::rparen, "')'");
    return out;
  }
  if (t.text == "quotient") {
    out->kind = RingExpr::quotient;
    p.expect(Token::lparen, "'('");
    out->left = parse_ring_expr(p);
    p.expect(Token::rparen, "')'");
    out->ideal_gens = p.parse_literal_list();
    return out;
  }
  if (t.text == "idealize") {
    out->kind = RingExpr::idealize;
    p.expect(Token::lparen, "'('");
    out->left = parse_ring_expr(p);
    p.expect(Token::rparen, "')'");
    p.expect(Token::lparen, "'('");
    out->module = parse_module_expr(p);
    p.expect(Token::rparen, "')'");
    return out;
  }
  p.fail(t, "unknown ring kind");
}

inline std::unique_ptr<ModuleExpr> parse_module_expr(Parser& p) {
  auto out = std::make_unique<ModuleExpr>();
  Token t = p.expect(Token::word, "a module kind");
  if (t.text == "regular") {
    out->kind = ModuleExpr::regular;
    return out;
  }
  if (t.text == "cyclic") {
    out->kind = ModuleExpr::cyclic;
    while (p.peek().kind == Token::integer) {
      Token o = p.take();
      if (o.value < 1) throw SpecError(o.line, o.col, "cyclic factor order must be positive");
      out->orders.push_back(static_cast<int>(o.value));
    }
    if (out->orders.empty()) p.fail(p.peek(), "expected cyclic factor orders");
    return out;
  }
  if (t.text == "intlattice") {
    out->kind = ModuleExpr::intlattice;
    Token k = p.expect(Token::integer, "an ambient rank");
    out->ambient = static_cast<int>(k.value);
    return out;
  }
  if (t.text == "product") {
    out->kind = ModuleExpr::product;
    p.expect(Token::lparen, "'('");
    out->left = parse_module_expr(p);
    p.expect(Token::rparen, "')'");
    p.expect(Token::lparen, "'('");
    out->right = parse_module_expr(p);
    p.expect(Token::rparen, "')'");
    return out;
  }
  if (t.text == "quotient") {
    out->kind = ModuleExpr::quotient;
    p.expect(Token::lparen, "'('");
    out->left = parse_module_expr(p);
    p.expect(Token::rparen, "')'");
    out->sub_gens = p.parse_literal_list();
    return out;
  }
  p.fail(t, "unknown module kind");
}

// --- canonical writers -----------------------------------------------------

inline std::string literal_text(const Literal& lit) {
  if (!lit.is_tuple) return std::to_string(lit.value);
  std::string s = "(";
  for (size_t i = 0; i < lit.tuple.size(); ++i) s += (i ? "," : "") + literal_text(lit.tuple[i]);
  return s + ")";
}

inline std::string module_text(const ModuleExpr& e);

inline std::string ring_text(const RingExpr& e) {
  switch (e.kind) {
    case RingExpr::zn: return "zn " + std::to_string(e.modulus);
    case RingExpr::integers: return "Z";
    case RingExpr::product:
      return "product (" + ring_text(*e.left) + ") (" + ring_text(*e.right) + ")";
    case RingExpr::quotient: {
      std::string s = "quotient (" + ring_text(*e.left) + ") [";
      for (size_t i = 0; i < e.ideal_gens.size(); ++i)
        s += (i ? "," : "") + literal_text(e.ideal_gens[i]);
      return s + "]";
    }
    case RingExpr::idealize:
      return "idealize (" + ring_text(*e.left) + ") (" + module_text(*e.module) + ")";
  }
  return "?";
}

inline std::string module_text(const ModuleExpr& e) {
  switch (e.kind) {
    case ModuleExpr::regular: return "regular";
    case ModuleExpr::cyclic: {
      std::string s = "cyclic";
      for (int o : e.orders) s += " " + std::to_string(o);
      return s;
    }
    case ModuleExpr::intlattice: return "intlattice " + std::to_string(e.ambient);
    case ModuleExpr::product:
      return "product (" + module_text(*e.left) + ") (" + module_text(*e.right) + ")";
    case ModuleExpr::quotient: {
      std::string s = "quotient (" + module_text(*e.left) + ") [";
      for (size_t i = 0; i < e.sub_gens.size(); ++i)
        s += (i ? "," : "") + literal_text(e.sub_gens[i]);
      return s + "]";
    }
  }
  return "?";
}

}  // namespace specdetail

/// Parse an instance document.  Known statements:
///   version 1            (optional, must come first)
///   ring <ring-expr>
///   module <module-expr>
///   sub NAME = [elem, ...]
inline InstanceSpec parse_spec(const std::string& text) {
  using namespace specdetail;
  Parser p(text);
  p.skip_eols();

  // optional version header
  if (p.peek().kind == Token::word && p.peek().text == "version") {
    p.take();
    Token v = p.expect(Token::integer, "a version number");
    if (v.value != 1) throw SpecError(v.line, v.col, "unsupported version");
    p.expect(Token::eol, "end of line");
    p.skip_eols();
  }

  p.expect_word("ring");
  auto ring_expr = parse_ring_expr(p);
  p.expect(Token::eol, "end of line");
  p.skip_eols();

  p.expect_word("module");
  auto module_expr = parse_module_expr(p);
  p.expect(Token::eol, "end of line");
  p.skip_eols();

  InstanceSpec spec;
  std::ostringstream canon;
  canon << "version 1\n";
  canon << "ring " << ring_text(*ring_expr) << "\n";

  const bool integer_ring = ring_expr->kind == RingExpr::integers;
  std::unique_ptr<RingResolver> ring_res;
  std::unique_ptr<ModuleResolver> mod_res;

  if (integer_ring) {
    if (module_expr->kind == ModuleExpr::regular) {
      spec.int_ambient = 1;
      spec.int_regular_form = true;
      canon << "module regular\n";
    } else if (module_expr->kind == ModuleExpr::intlattice) {
      if (module_expr->ambient < 1 || module_expr->ambient > IntLattice::kMaxAmbient)
        throw SpecError(1, 1, "ambient rank must be between 1 and 4");
      spec.int_ambient = module_expr->ambient;
      canon << "module intlattice " << spec.int_ambient << "\n";
    } else if (module_expr->kind == ModuleExpr::cyclic) {
      // finite abelian group as a module over the integers
      RingPtr dummy;
      mod_res = std::make_unique<ModuleResolver>(*module_expr, nullptr, dummy, nullptr);
      spec.module = mod_res->module_;
      canon << "module " << module_text(*module_expr) << "\n";
    } else {
      throw SpecError(1, 1, "ring Z supports the regular, intlattice and cyclic modules");
    }
  } else {
    RingPtr ring = RingResolver::build(*ring_expr);
    ring_res = std::make_unique<RingResolver>(*ring_expr, ring);
    mod_res = std::make_unique<ModuleResolver>(*module_expr, ring_expr.get(), ring,
                                               ring_res.get());
    spec.module = mod_res->module_;
    canon << "module " << module_text(*module_expr) << "\n";
  }

  // submodule statements
  while (true) {
    p.skip_eols();
    if (p.peek().kind == Token::eof) break;
    Token t = p.expect(Token::word, "'sub'");
    if (t.text != "sub") p.fail(t, "expected 'sub'");
    Token name = p.expect(Token::word, "a submodule name");
    if (spec.find_sub(name.text) || spec.find_int_sub(name.text))
      throw SpecError(name.line, name.col, "duplicate submodule name");
    p.expect(Token::equals, "'='");
    auto lits = p.parse_literal_list();
    if (p.peek().kind != Token::eof) p.expect(Token::eol, "end of line");

    canon << "sub " << name.text << " = [";
    for (size_t i = 0; i < lits.size(); ++i) canon << (i ? "," : "") << literal_text(lits[i]);
    canon << "]\n";

    if (spec.int_ambient > 0) {
      std::vector<std::vector<i64>> gens;
      for (const auto& lit : lits) {
        std::vector<i64> v;
        if (!lit.is_tuple) {
          if (spec.int_ambient != 1)
            throw SpecError(lit.line, lit.col, "expected a vector literal");
          v.push_back(lit.value);
        } else {
          if (static_cast<int>(lit.tuple.size()) != spec.int_ambient)
            throw SpecError(lit.line, lit.col, "vector arity does not match the ambient rank");
          for (const auto& c : lit.tuple) {
            if (c.is_tuple) throw SpecError(c.line, c.col, "expected an integer");
            v.push_back(c.value);
          }
        }
        gens.push_back(std::move(v));
      }
      spec.int_subs.emplace_back(name.text,
                                 IntLattice::from_generators(spec.int_ambient, gens));
    } else {
      std::vector<int> gens;
      for (const auto& lit : lits) gens.push_back(mod_res->resolve(lit));
      spec.subs.emplace_back(name.text, submodule_span(spec.module, gens));
    }
  }

  spec.canonical_text = canon.str();
  return spec;
}

}  // namespace modlab
