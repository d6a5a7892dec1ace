#include "intercon/netdsl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <fstream>
#include <sstream>

#include "intercon/simple.hpp"

namespace intercon {

namespace {

enum class Tok {
  end,
  ident,
  hat,
  dollar,
  at,
  qmark,
  state,
  state_next,
  lparen,
  rparen,
  comma,
  bang,
  amp,
  ampamp,
  bar,
  barbar,
  arrow,
  iff,
  eq,
  dot,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string where(std::string_view src, std::size_t pos) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < src.size(); ++i) {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_at = [&](std::size_t j) {
    std::size_t k = j;
    while (k < s.size() && ident_char(s[k])) ++k;
    return k;
  };
  while (true) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t start = i;
    char c = s[i];
    auto sigil = [&](Tok kind) {
      std::size_t k = ident_at(i + 1);
      if (k == i + 1) throw LoadError(where(s, start) + ": expected a name after '" + c + "'");
      out.push_back({kind, std::string(s.substr(i + 1, k - i - 1)), start});
      i = k;
    };
    if (ident_char(c)) {
      std::size_t k = ident_at(i);
      std::string word(s.substr(i, k - i));
      if (word == "state" && k < s.size() && (s[k] == '.' || s[k] == '\'')) {
        bool next = s[k] == '\'';
        std::size_t d = next ? k + 1 : k;
        if (d < s.size() && s[d] == '.') {
          std::size_t e = ident_at(d + 1);
          if (e > d + 1) {
            out.push_back({next ? Tok::state_next : Tok::state,
                           std::string(s.substr(d + 1, e - d - 1)), start});
            i = e;
            continue;
          }
        }
        throw LoadError(where(s, start) + ": malformed state variable");
      }
      out.push_back({Tok::ident, std::move(word), start});
      i = k;
      continue;
    }
    auto two = [&](const char* t) { return s.substr(i, 2) == t; };
    switch (c) {
      case '^': sigil(Tok::hat); continue;
      case '$': sigil(Tok::dollar); continue;
      case '@': sigil(Tok::at); continue;
      case '?': sigil(Tok::qmark); continue;
      case '(': out.push_back({Tok::lparen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::rparen, ")", start}); ++i; continue;
      case ',': out.push_back({Tok::comma, ",", start}); ++i; continue;
      case '!': out.push_back({Tok::bang, "!", start}); ++i; continue;
      case '=': out.push_back({Tok::eq, "=", start}); ++i; continue;
      case '.': out.push_back({Tok::dot, ".", start}); ++i; continue;
      case '&':
        if (two("&&")) {
          out.push_back({Tok::ampamp, "&&", start});
          i += 2;
        } else {
          out.push_back({Tok::amp, "&", start});
          ++i;
        }
        continue;
      case '|':
        if (two("||")) {
          out.push_back({Tok::barbar, "||", start});
          i += 2;
        } else {
          out.push_back({Tok::bar, "|", start});
          ++i;
        }
        continue;
      case '-':
        if (two("->")) {
          out.push_back({Tok::arrow, "->", start});
          i += 2;
          continue;
        }
        break;
      case '<':
        if (s.substr(i, 3) == "<->") {
          out.push_back({Tok::iff, "<->", start});
          i += 3;
          continue;
        }
        break;
      default: break;
    }
    throw LoadError(where(s, start) + ": unexpected character '" + std::string(1, c) + "'");
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, const ParseContext& ctx) : src_(src), toks_(lex(src)), ctx_(ctx) {}

  void set_lambda(const std::vector<std::string>& params, std::size_t formula_arity) {
    for (std::size_t i = 0; i < params.size(); ++i)
      lambda_[params[i]] = {static_cast<int>(i), i < formula_arity};
  }

  Formula formula() {
    Formula f = parse_iff();
    expect(Tok::end, "end of input");
    if (ctx_.check_polarity) check_polarity(f, true);
    return f;
  }

  Term term() {
    Term t = parse_term();
    expect(Tok::end, "end of input");
    return t;
  }

  std::vector<Term> term_list() {
    std::vector<Term> out;
    if (peek().kind == Tok::end) return out;
    out.push_back(parse_term());
    while (accept(Tok::comma)) out.push_back(parse_term());
    expect(Tok::end, "end of input");
    return out;
  }

  // Variables as listed in `vars =`: a bare name is a sync variable.
  std::vector<Var> var_list() {
    std::vector<Var> out;
    if (peek().kind == Tok::end) return out;
    do {
      const Token& t = peek();
      if (t.kind == Tok::ident) {
        out.push_back(Var::sync(t.text));
        ++at_;
        continue;
      }
      Term v = parse_term();
      if (v->kind != TermNode::Kind::var) fail(t, "expected a variable");
      out.push_back(v->var);
    } while (accept(Tok::comma));
    expect(Tok::end, "end of input");
    return out;
  }

  Lambda lambda(std::size_t formula_arity) {
    const Token& kw = peek();
    if (kw.kind != Tok::ident || kw.text != "lambda") fail(kw, "expected 'lambda'");
    ++at_;
    expect(Tok::lparen, "'('");
    std::vector<std::string> params;
    if (!accept(Tok::rparen)) {
      do {
        const Token& p = peek();
        if (p.kind != Tok::ident) fail(p, "expected a parameter name");
        params.push_back(p.text);
        ++at_;
      } while (accept(Tok::comma));
      expect(Tok::rparen, "')'");
    }
    if (params.size() < formula_arity)
      fail(kw, "lambda has fewer parameters than formula arguments");
    expect(Tok::dot, "'.'");
    set_lambda(params, formula_arity);
    Lambda l{params, formula_arity, formula()};
    return l;
  }

 private:
  struct Param {
    int index;
    bool formula;
  };

  const Token& peek() const { return toks_[at_]; }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++at_;
    return true;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw LoadError(where(src_, t.pos) + ": " + msg +
                    (t.kind == Tok::end ? " at end of input" : " near '" + t.text + "'"));
  }

  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(peek(), std::string("expected ") + what);
  }

  Formula parse_iff() {
    Formula l = parse_imp();
    while (accept(Tok::iff)) l = fm::iff(l, parse_imp());
    return l;
  }

  Formula parse_imp() {
    Formula l = parse_or();
    if (accept(Tok::arrow)) return fm::implies(l, parse_imp());
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (true) {
      const Token& t = peek();
      if (accept(Tok::bar)) {
        l = fm::lor(l, parse_and());
        bars_[l.get()] = t.pos;
      } else if (accept(Tok::barbar)) {
        l = fm::additive_or(l, parse_and());
      } else {
        return l;
      }
    }
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (true) {
      if (accept(Tok::amp)) {
        l = fm::overlap(l, parse_unary());
      } else if (accept(Tok::ampamp)) {
        l = fm::additive(l, parse_unary());
      } else {
        return l;
      }
    }
  }

  Formula parse_unary() {
    if (accept(Tok::bang)) return fm::neg(parse_unary());
    return parse_atom();
  }

  Formula parse_atom() {
    const Token& t = peek();
    if (accept(Tok::lparen)) {
      Formula f = parse_iff();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (t.kind == Tok::ident && (t.text == "true" || t.text == "false")) {
      ++at_;
      return t.text == "true" ? fm::truth() : fm::falsity();
    }
    if (auto eq = try_equality()) return eq;
    if (t.kind == Tok::at) {
      ++at_;
      return external_atom(t);
    }
    if (t.kind == Tok::ident) {
      ++at_;
      if (peek().kind == Tok::lparen) return fm::pred(t.text, parse_args());
      if (auto it = lambda_.find(t.text); it != lambda_.end()) {
        if (!it->second.formula) fail(t, "term parameter used as a formula");
        return fm::hole(it->second.index, t.text);
      }
      return fm::sync(t.text);
    }
    fail(t, "expected a formula");
  }

  Formula try_equality() {
    std::size_t save = at_;
    try {
      Term a = parse_term();
      if (accept(Tok::eq)) return fm::eq(a, parse_term());
    } catch (const LoadError&) {
    }
    at_ = save;
    return nullptr;
  }

  Formula external_atom(const Token& t) {
    const Signature* sig = nullptr;
    if (ctx_.externals) {
      auto it = ctx_.externals->find(t.text);
      if (it != ctx_.externals->end()) sig = &it->second;
    }
    if (sig && sig->kind == Signature::Kind::fun) fail(t, "external function used as a formula");
    if (!sig || sig->kind == Signature::Kind::pred) {
      std::vector<Term> args;
      if (peek().kind == Tok::lparen) args = parse_args();
      return fm::ext_pred(t.text, std::move(args));
    }
    std::vector<Formula> formulas;
    std::vector<Term> terms;
    std::size_t total = sig->formulas + sig->terms;
    if (peek().kind == Tok::lparen || total > 0) {
      expect(Tok::lparen, "'('");
      for (std::size_t i = 0; i < total; ++i) {
        if (i) expect(Tok::comma, "','");
        if (i < sig->formulas) {
          formulas.push_back(parse_iff());
        } else {
          terms.push_back(parse_term());
        }
      }
      expect(Tok::rparen, "')'");
    }
    return fm::ext_constr(t.text, std::move(formulas), std::move(terms));
  }

  std::vector<Term> parse_args() {
    expect(Tok::lparen, "'('");
    std::vector<Term> args;
    if (accept(Tok::rparen)) return args;
    do {
      args.push_back(parse_term());
    } while (accept(Tok::comma));
    expect(Tok::rparen, "')'");
    return args;
  }

  Term parse_term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::hat: ++at_; return term::dataflow(t.text);
      case Tok::dollar: ++at_; return term::var(Var::comm(t.text));
      case Tok::state: ++at_; return term::var(Var::state(t.text));
      case Tok::state_next: ++at_; return term::var(Var::state_next(t.text));
      case Tok::qmark: {
        ++at_;
        auto it = ctx_.params.find(t.text);
        if (it == ctx_.params.end()) fail(t, "unbound parameter");
        return it->second;
      }
      case Tok::at: ++at_; return term::external(t.text, parse_args());
      case Tok::ident: {
        if (t.text == "true" || t.text == "false") fail(t, "expected a term");
        ++at_;
        if (peek().kind == Tok::lparen) return term::apply(t.text, parse_args());
        if (auto it = lambda_.find(t.text); it != lambda_.end()) {
          if (it->second.formula) fail(t, "formula parameter used as a term");
          return term::hole(it->second.index, t.text);
        }
        if (t.text == GroundTerm::noflow().str()) return term::noflow();
        return term::constant(t.text);
      }
      default: fail(t, "expected a term");
    }
  }

  void check_polarity(const Formula& f, bool positive) const {
    if (positive) {
      if (auto it = bars_.find(f.get()); it != bars_.end())
        throw LoadError(where(src_, it->second) +
                        ": '|' in a positive position; use '||' for a disjunction here");
    }
    bool kid_pol = f->op == Op::negation ? !positive : positive;
    for (const auto& k : f->kids) check_polarity(k, kid_pol);
  }

  std::string_view src_;
  std::vector<Token> toks_;
  const ParseContext& ctx_;
  std::size_t at_ = 0;
  std::map<std::string, Param> lambda_;
  std::map<const FormulaNode*, std::size_t> bars_;
};

GroundTerm to_ground(const Term& t) {
  if (!is_ground(t) || has_externals(t)) throw LoadError("not a ground term: " + to_string(t));
  return GroundTerm(to_string(t));
}

}  // namespace

Formula parse_formula(std::string_view src, const ParseContext& ctx) {
  return Parser(src, ctx).formula();
}

Term parse_term(std::string_view src, const ParseContext& ctx) { return Parser(src, ctx).term(); }

GroundTerm parse_ground(std::string_view src) { return to_ground(parse_term(src)); }

Lambda parse_lambda(std::string_view src, std::size_t formula_arity, const ParseContext& ctx) {
  return Parser(src, ctx).lambda(formula_arity);
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
};

struct Section {
  std::string kind;  // universe, pred, primitive
  std::string name;
  std::size_t line;
  std::vector<Entry> entries;
};

std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

std::vector<Section> sections(std::string_view text, const std::string& name) {
  std::vector<Section> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  auto err = [&](std::size_t line, const std::string& msg) {
    return LoadError(name + ":" + std::to_string(line) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    if (trim(raw).empty()) continue;
    bool continuation = std::isspace(static_cast<unsigned char>(raw[0])) != 0;
    std::string line = trim(raw);
    if (line.front() == '[') {
      if (line.back() != ']') throw err(lineno, "unterminated section header");
      std::istringstream hs(line.substr(1, line.size() - 2));
      Section s;
      hs >> s.kind;
      std::getline(hs, s.name);
      s.name = trim(s.name);
      s.line = lineno;
      if (s.kind == "universe") {
        if (!s.name.empty()) throw err(lineno, "[universe] takes no name");
      } else if (s.kind == "pred" || s.kind == "primitive") {
        if (s.name.empty() || s.name.find(' ') != std::string::npos)
          throw err(lineno, "[" + s.kind + "] needs a single name");
      } else {
        throw err(lineno, "unknown section [" + s.kind + "]");
      }
      out.push_back(std::move(s));
      continue;
    }
    if (out.empty()) throw err(lineno, "entry outside of any section");
    if (continuation && !out.back().entries.empty()) {
      out.back().entries.back().value += " " + line;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw err(lineno, "expected 'key = value'");
    out.back().entries.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno});
  }
  return out;
}

// `?x` names in a state pattern, in order of first appearance.
std::vector<std::string> pattern_params(const std::string& pattern) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != '?') continue;
    std::size_t k = i + 1;
    while (k < pattern.size() && ident_char(pattern[k])) ++k;
    std::string n = pattern.substr(i + 1, k - i - 1);
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  return out;
}

Signature parse_signature(const std::string& spec, const std::function<LoadError(std::string)>& err) {
  Signature s;
  if (spec.empty() || spec == "pred") return s;
  if (spec == "fun") {
    s.kind = Signature::Kind::fun;
    return s;
  }
  unsigned l = 0, k = 0;
  char close = 0;
  std::istringstream in(spec);
  std::string head;
  std::getline(in, head, '(');
  if (trim(head) == "constr") {
    char comma = 0;
    if (in >> l >> comma >> k >> close && comma == ',' && close == ')') {
      s.kind = Signature::Kind::constr;
      s.formulas = l;
      s.terms = k;
      return s;
    }
  }
  throw err("unknown signature '" + spec + "' (use pred, fun or constr(l,k))");
}

}  // namespace

Network parse_network(std::string_view text, const std::string& name) {
  Network net;
  net.name = name;
  auto secs = sections(text, name);
  auto err_at = [&](std::size_t line, const std::string& msg) {
    return LoadError(name + ":" + std::to_string(line) + ": " + msg);
  };
  auto wrap = [&](std::size_t line, const auto& fn) {
    try {
      return fn();
    } catch (const LoadError& e) {
      throw err_at(line, e.what());
    } catch (const PreconditionError& e) {
      throw err_at(line, e.what());
    }
  };

  // Universe and ownership first: formulas need the data and the signatures.
  std::vector<GroundTerm> data;
  std::optional<GroundTerm> default_datum;
  bool seen_universe = false;
  for (const auto& s : secs) {
    if (s.kind == "universe") {
      if (seen_universe) throw err_at(s.line, "duplicate [universe]");
      seen_universe = true;
      for (const auto& e : s.entries) {
        if (e.key == "data") {
          data.clear();
          for (const auto& item : split_top(e.value))
            data.push_back(wrap(e.line, [&] { return parse_ground(item); }));
        } else if (e.key == "default") {
          default_datum = wrap(e.line, [&] { return parse_ground(e.value); });
        } else {
          throw err_at(e.line, "unknown universe key '" + e.key + "'");
        }
      }
    }
    if (s.kind == "primitive") {
      if (net.find(s.name)) throw err_at(s.line, "duplicate primitive '" + s.name + "'");
      Primitive p;
      p.id = s.name;
      net.primitives.push_back(std::move(p));
      for (const auto& e : s.entries) {
        if (e.key != "owns") continue;
        for (const auto& item : split_top(e.value)) {
          if (item.empty()) continue;
          std::string key = item, sig;
          if (auto c = item.find(':'); c != std::string::npos) {
            key = trim(item.substr(0, c));
            sig = trim(item.substr(c + 1));
          }
          if (key.size() < 2 || (key[0] != '@' && key[0] != '$'))
            throw err_at(e.line, "owned item must be '@symbol' or '$variable': " + item);
          if (net.ownership.count(key))
            throw err_at(e.line, key + " is owned by both '" + net.ownership[key] + "' and '" +
                                     s.name + "'");
          net.ownership[key] = s.name;
          net.primitives.back().owned.insert(key);
          if (key[0] == '@') {
            net.externals[key.substr(1)] =
                parse_signature(sig, [&](std::string m) { return err_at(e.line, m); });
          } else if (!sig.empty()) {
            throw err_at(e.line, "communication variables take no signature");
          }
        }
      }
    }
  }
  if (data.empty()) data.push_back(GroundTerm("unit"));
  net.universe = wrap(seen_universe ? secs.front().line : 1, [&] { return Universe(data); });
  if (default_datum) {
    std::size_t line = 1;
    for (const auto& s : secs)
      if (s.kind == "universe") line = s.line;
    wrap(line, [&] {
      net.universe.set_default_datum(*default_datum);
      return 0;
    });
  }

  // Predicate tables.
  std::map<std::string, std::size_t> arity;
  for (const auto& s : secs) {
    if (s.kind != "pred") continue;
    if (s.name == kEquality) throw err_at(s.line, "equality is built in");
    if (arity.count(s.name)) throw err_at(s.line, "duplicate table for '" + s.name + "'");
    std::optional<std::size_t> n;
    for (const auto& e : s.entries) {
      std::vector<GroundTerm> args;
      for (const auto& item : split_top(e.key)) {
        if (item.empty()) throw err_at(e.line, "empty argument");
        args.push_back(wrap(e.line, [&] { return parse_ground(item); }));
      }
      if (n && *n != args.size()) throw err_at(e.line, "arity differs from earlier rows");
      n = args.size();
      if (e.value != "true" && e.value != "false")
        throw err_at(e.line, "table value must be true or false");
      net.interp.set_internal(s.name, std::move(args), e.value == "true");
    }
    arity[s.name] = n.value_or(0);
  }

  // Primitives.
  std::size_t idx = 0;
  for (const auto& s : secs) {
    if (s.kind != "primitive") continue;
    Primitive& p = net.primitives[idx++];
    ParseContext ctx;
    ctx.externals = &net.externals;
    std::optional<std::string> kind;
    Formula rho = nullptr, eps = nullptr;
    std::optional<std::vector<Var>> vars;
    std::vector<std::pair<GroundTerm, Formula>> transitions;
    for (const auto& e : s.entries) {
      if (e.key == "kind") {
        kind = e.value;
      } else if (e.key == "vars") {
        vars = wrap(e.line, [&] {
          Parser parser(e.value, ctx);
          return parser.var_list();
        });
      } else if (e.key == "rho") {
        if (rho) throw err_at(e.line, "duplicate rho");
        rho = wrap(e.line, [&] { return parse_formula(e.value, ctx); });
      } else if (e.key == "eps") {
        if (eps) throw err_at(e.line, "duplicate eps");
        eps = wrap(e.line, [&] { return parse_formula(e.value, ctx); });
      } else if (e.key == "owns") {
      } else if (e.key == "endpoint") {
        p.endpoint = e.value;
      } else if (e.key.rfind("state ", 0) == 0) {
        std::string pattern = trim(e.key.substr(6));
        auto names = pattern_params(pattern);
        const auto& d = net.universe.data();
        std::size_t combos = 1;
        for (std::size_t i = 0; i < names.size(); ++i) combos *= d.size();
        for (std::size_t c = 0; c < combos; ++c) {
          ParseContext pc = ctx;
          std::size_t rest = c;
          for (std::size_t i = names.size(); i > 0; --i) {
            pc.params[names[i - 1]] = term::ground(d[rest % d.size()]);
            rest /= d.size();
          }
          GroundTerm q = wrap(e.line, [&] { return to_ground(parse_term(pattern, pc)); });
          Formula body = wrap(e.line, [&] { return parse_formula(e.value, pc); });
          for (const auto& tr : transitions)
            if (tr.first == q) throw err_at(e.line, "state " + q.str() + " defined twice");
          transitions.emplace_back(q, body);
        }
      } else {
        throw err_at(e.line, "unknown primitive key '" + e.key + "'");
      }
    }
    if (!kind) throw err_at(s.line, "primitive '" + p.id + "' needs a kind");
    if (*kind == "stateless") {
      p.kind = PrimitiveKind::stateless;
    } else if (*kind == "stateful") {
      p.kind = PrimitiveKind::stateful;
    } else if (*kind == "external") {
      p.kind = PrimitiveKind::external;
    } else {
      throw err_at(s.line, "unknown kind '" + *kind + "'");
    }
    if (!transitions.empty() && p.kind != PrimitiveKind::stateful)
      throw err_at(s.line, "only stateful primitives declare states");
    if (p.kind == PrimitiveKind::stateful) {
      if (transitions.empty()) throw err_at(s.line, "stateful primitive without states");
      std::vector<GroundTerm> domain;
      for (const auto& tr : transitions) domain.push_back(tr.first);
      net.universe.set_state_domain(p.id, domain);
      Formula machine = encode_state_machine(p.id, transitions);
      rho = rho ? fm::overlap(rho, machine) : machine;
      if (!eps) throw err_at(s.line, "stateful primitive needs an initial 'eps = state." + p.id +
                                         " = <state>'");
    }
    if (!rho) rho = fm::truth();
    if (!eps) eps = fm::truth();
    std::set<Var> declared;
    if (vars) {
      declared.insert(vars->begin(), vars->end());
      declared = flow_closure(declared);
    } else {
      declared = free_vars(rho);
      auto ev = free_vars(eps);
      declared.insert(ev.begin(), ev.end());
      declared = flow_closure(declared);
    }
    if (p.kind == PrimitiveKind::stateful) {
      declared.insert(Var::state(p.id));
      declared.insert(Var::state_next(p.id));
    }
    for (const auto& v : free_vars(rho))
      if (!declared.count(v))
        throw err_at(s.line, "rho of '" + p.id + "' uses " + to_string(v) + " outside vars");
    p.vars = declared;
    p.rho = rho;
    p.eps = eps;
  }

  // Every predicate needs a table.
  std::function<void(const Formula&, const std::string&)> check_preds =
      [&](const Formula& f, const std::string& prim) {
        if (f->op == Op::pred && f->name != kEquality && !arity.count(f->name))
          throw LoadError(name + ": primitive '" + prim + "' uses predicate '" + f->name +
                          "' without a [pred " + f->name + "] table");
        if (f->op == Op::pred && f->name != kEquality && arity[f->name] != f->terms.size())
          throw LoadError(name + ": predicate '" + f->name + "' used with arity " +
                          std::to_string(f->terms.size()) + " in '" + prim + "'");
        for (const auto& k : f->kids) check_preds(k, prim);
      };
  for (const auto& p : net.primitives) {
    check_preds(p.rho, p.id);
    check_preds(p.eps, p.id);
  }

  try {
    validate(net);
  } catch (const LoadError& e) {
    throw LoadError(name + ": " + e.what());
  }
  return net;
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str(), path.filename().string());
}

}  // namespace intercon
