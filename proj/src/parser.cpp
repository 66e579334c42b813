#include "fkppg/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>

namespace fkppg {

namespace {

enum class Tok : uint8_t {
  Ident,
  Number,
  KwVars,
  KwNode,
  KwScore,
  KwNil,
  KwTrans,
  KwWhen,
  KwDo,
  KwInit,
  KwBernoulli,
  KwNormal,
  KwUniform,
  KwChoice,
  KwAbs,
  KwMin,
  KwMax,
  KwInf,
  Arrow,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semi,
  Tilde,
  Assign,
  Plus,
  Minus,
  Star,
  Slash,
  EqEq,
  NotEq,
  Lt,
  Le,
  Gt,
  Ge,
  AndAnd,
  OrOr,
  Bang,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

const std::map<std::string, Tok, std::less<>> kKeywords = {
    {"vars", Tok::KwVars},         {"node", Tok::KwNode},     {"score", Tok::KwScore},
    {"nil", Tok::KwNil},           {"trans", Tok::KwTrans},   {"when", Tok::KwWhen},
    {"do", Tok::KwDo},             {"init", Tok::KwInit},     {"bernoulli", Tok::KwBernoulli},
    {"normal", Tok::KwNormal},     {"uniform", Tok::KwUniform}, {"choice", Tok::KwChoice},
    {"abs", Tok::KwAbs},           {"min", Tok::KwMin},       {"max", Tok::KwMax},
    {"inf", Tok::KwInf},
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::KwVars: return "'vars'";
    case Tok::KwNode: return "'node'";
    case Tok::KwScore: return "'score'";
    case Tok::KwNil: return "'nil'";
    case Tok::KwTrans: return "'trans'";
    case Tok::KwWhen: return "'when'";
    case Tok::KwDo: return "'do'";
    case Tok::KwInit: return "'init'";
    case Tok::KwBernoulli: return "'bernoulli'";
    case Tok::KwNormal: return "'normal'";
    case Tok::KwUniform: return "'uniform'";
    case Tok::KwChoice: return "'choice'";
    case Tok::KwAbs: return "'abs'";
    case Tok::KwMin: return "'min'";
    case Tok::KwMax: return "'max'";
    case Tok::KwInf: return "'inf'";
    case Tok::Arrow: return "'->'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Tilde: return "'~'";
    case Tok::Assign: return "':='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
    case Tok::End: return "end of input";
  }
  return "?";
}

[[noreturn]] void fail(ErrCode code, int line, int column, const std::string& message) {
  Error e(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message);
  e.line = line;
  e.column = column;
  throw e;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { tokenize(); }

  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  void tokenize() {
    size_t i = 0;
    int line = 1, col = 1;
    const size_t n = text_.size();
    auto advance = [&](size_t k) {
      for (size_t j = 0; j < k; ++j, ++i) {
        if (text_[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
    };
    while (i < n) {
      const char c = text_[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
        continue;
      }
      if (c == '#') {
        while (i < n && text_[i] != '\n') advance(1);
        continue;
      }
      const int tl = line, tc = col;
      auto push = [&](Tok kind, size_t len) {
        tokens_.push_back({kind, std::string(text_.substr(i, len)), 0.0, tl, tc});
        advance(len);
      };
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < n && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
        const std::string_view word = text_.substr(i, j - i);
        auto it = kKeywords.find(word);
        push(it == kKeywords.end() ? Tok::Ident : it->second, j - i);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < n && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        if (j < n && text_[j] == '.') {
          ++j;
          while (j < n && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        }
        if (j < n && (text_[j] == 'e' || text_[j] == 'E')) {
          size_t k = j + 1;
          if (k < n && (text_[k] == '+' || text_[k] == '-')) ++k;
          if (k < n && std::isdigit(static_cast<unsigned char>(text_[k]))) {
            while (k < n && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
            j = k;
          }
        }
        Token t{Tok::Number, std::string(text_.substr(i, j - i)), 0.0, tl, tc};
        t.number = std::strtod(t.text.c_str(), nullptr);
        tokens_.push_back(t);
        advance(j - i);
        continue;
      }
      auto two = [&](char a, char b) {
        return c == a && i + 1 < n && text_[i + 1] == b;
      };
      if (two('-', '>')) { push(Tok::Arrow, 2); continue; }
      if (two(':', '=')) { push(Tok::Assign, 2); continue; }
      if (two('=', '=')) { push(Tok::EqEq, 2); continue; }
      if (two('!', '=')) { push(Tok::NotEq, 2); continue; }
      if (two('<', '=')) { push(Tok::Le, 2); continue; }
      if (two('>', '=')) { push(Tok::Ge, 2); continue; }
      if (two('&', '&')) { push(Tok::AndAnd, 2); continue; }
      if (two('|', '|')) { push(Tok::OrOr, 2); continue; }
      switch (c) {
        case '{': push(Tok::LBrace, 1); continue;
        case '}': push(Tok::RBrace, 1); continue;
        case '(': push(Tok::LParen, 1); continue;
        case ')': push(Tok::RParen, 1); continue;
        case ',': push(Tok::Comma, 1); continue;
        case ';': push(Tok::Semi, 1); continue;
        case '~': push(Tok::Tilde, 1); continue;
        case '+': push(Tok::Plus, 1); continue;
        case '-': push(Tok::Minus, 1); continue;
        case '*': push(Tok::Star, 1); continue;
        case '/': push(Tok::Slash, 1); continue;
        case '<': push(Tok::Lt, 1); continue;
        case '>': push(Tok::Gt, 1); continue;
        case '!': push(Tok::Bang, 1); continue;
        default:
          fail(ErrCode::SyntaxError, line, col,
               std::string("unexpected character '") + c + "'");
      }
    }
    tokens_.push_back({Tok::End, "", 0.0, line, col});
  }

  std::string_view text_;
  std::vector<Token> tokens_;
};

struct BinOpInfo {
  Op op;
  int precedence;
};

// Lower number binds looser. Relational binds tighter than equality,
// mirroring C.
bool binop_info(Tok t, BinOpInfo& out) {
  switch (t) {
    case Tok::OrOr: out = {Op::Or, 1}; return true;
    case Tok::AndAnd: out = {Op::And, 2}; return true;
    case Tok::EqEq: out = {Op::Eq, 3}; return true;
    case Tok::NotEq: out = {Op::Ne, 3}; return true;
    case Tok::Lt: out = {Op::Lt, 4}; return true;
    case Tok::Le: out = {Op::Le, 4}; return true;
    case Tok::Gt: out = {Op::Gt, 4}; return true;
    case Tok::Ge: out = {Op::Ge, 4}; return true;
    case Tok::Plus: out = {Op::Add, 5}; return true;
    case Tok::Minus: out = {Op::Sub, 5}; return true;
    case Tok::Star: out = {Op::Mul, 6}; return true;
    case Tok::Slash: out = {Op::Div, 6}; return true;
    default: return false;
  }
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>* fixed_vars)
      : lexer_(text) {
    if (fixed_vars != nullptr) {
      for (uint32_t i = 0; i < fixed_vars->size(); ++i) {
        var_index_.emplace((*fixed_vars)[i], i);
      }
    }
  }

  ModelAst parse_model() {
    ModelAst ast;
    expect(Tok::KwVars, "a model starts with 'vars'");
    while (peek().kind == Tok::Ident) {
      const Token t = take();
      if (!var_index_.emplace(t.text, uint32_t(ast.variables.size())).second) {
        fail(ErrCode::SyntaxError, t.line, t.column, "duplicate variable '" + t.text + "'");
      }
      ast.variables.push_back(t.text);
    }
    if (ast.variables.empty()) {
      const Token& t = peek();
      fail(ErrCode::SyntaxError, t.line, t.column,
           "expected at least one variable name after 'vars', got " + got(t));
    }

    bool nil_seen = false;
    std::set<uint32_t> declared;
    std::vector<std::pair<Token, uint32_t>> checkpoint_refs;  // for post-hoc checks

    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::KwNode) {
        take();
        const Token idt = peek();
        const uint32_t id = natural("checkpoint id after 'node'");
        if (!declared.insert(id).second) {
          fail(ErrCode::DuplicateCheckpoint, idt.line, idt.column,
               "checkpoint " + std::to_string(id) + " declared twice");
        }
        CheckpointDecl decl{id, std::nullopt};
        if (peek().kind == Tok::KwScore) {
          take();
          decl.score = expression();
        }
        ast.checkpoints.push_back(std::move(decl));
      } else if (t.kind == Tok::KwNil) {
        take();
        const Token idt = peek();
        const uint32_t id = natural("checkpoint id after 'nil'");
        if (nil_seen) {
          fail(ErrCode::SyntaxError, idt.line, idt.column,
               "nil checkpoint already declared as " + std::to_string(ast.nil_id));
        }
        if (!declared.insert(id).second) {
          fail(ErrCode::DuplicateCheckpoint, idt.line, idt.column,
               "checkpoint " + std::to_string(id) + " declared twice");
        }
        nil_seen = true;
        ast.nil_id = id;
        ast.checkpoints.push_back({id, std::nullopt});
      } else if (t.kind == Tok::KwTrans) {
        take();
        TransitionDecl tr;
        const Token src_tok = peek();
        tr.source = natural("source checkpoint id");
        checkpoint_refs.emplace_back(src_tok, tr.source);
        expect(Tok::Arrow, "'->' between transition endpoints");
        const Token dst_tok = peek();
        tr.target = natural("target checkpoint id");
        checkpoint_refs.emplace_back(dst_tok, tr.target);
        expect(Tok::KwWhen, "'when' before the transition guard");
        tr.guard = expression();
        expect(Tok::KwDo, "'do' before the statement block");
        expect(Tok::LBrace, "'{' opening the statement block");
        while (peek().kind != Tok::RBrace) {
          tr.measure.statements.push_back(statement());
        }
        take();  // RBrace
        finalize_measure(tr.measure);
        ast.transitions.push_back(std::move(tr));
      } else {
        break;
      }
    }

    {
      const Token& t = peek();
      if (t.kind != Tok::KwInit) {
        fail(ErrCode::SyntaxError, t.line, t.column,
             "expected 'node', 'nil', 'trans' or 'init', got " + got(t));
      }
      take();
      const Token init_tok = peek();
      ast.initial_id = natural("initial checkpoint id after 'init'");
      checkpoint_refs.emplace_back(init_tok, ast.initial_id);
    }
    {
      const Token& t = peek();
      if (t.kind != Tok::End) {
        fail(ErrCode::SyntaxError, t.line, t.column, "trailing input after 'init', got " + got(t));
      }
    }

    if (!nil_seen) {
      const Token& t = peek();
      fail(ErrCode::MissingNil, t.line, t.column, "model declares no nil checkpoint");
    }
    for (const auto& [tok, id] : checkpoint_refs) {
      if (declared.count(id) == 0) {
        fail(ErrCode::SyntaxError, tok.line, tok.column,
             "reference to undeclared checkpoint " + std::to_string(id));
      }
    }
    return ast;
  }

  Expr parse_whole_expression() {
    Expr e = expression();
    const Token& t = peek();
    if (t.kind != Tok::End) {
      fail(ErrCode::SyntaxError, t.line, t.column, "trailing input after expression, got " + got(t));
    }
    return e;
  }

 private:
  const Token& peek() const { return lexer_.tokens()[pos_]; }
  Token take() { return lexer_.tokens()[pos_++]; }

  static std::string got(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  Token expect(Tok kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind) {
      fail(ErrCode::SyntaxError, t.line, t.column,
           "expected " + std::string(tok_name(kind)) + " (" + what + "), got " + got(t));
    }
    return take();
  }

  uint32_t natural(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::Number || t.text.find_first_of(".eE") != std::string::npos) {
      fail(ErrCode::SyntaxError, t.line, t.column, "expected " + what + ", got " + got(t));
    }
    const unsigned long v = std::strtoul(t.text.c_str(), nullptr, 10);
    if (v > 0xFFFFFFFFul) {
      fail(ErrCode::SyntaxError, t.line, t.column, what + " out of range: " + t.text);
    }
    take();
    return uint32_t(v);
  }

  Statement statement() {
    const Token name = expect(Tok::Ident, "variable name starting a statement");
    auto it = var_index_.find(name.text);
    if (it == var_index_.end()) {
      fail(ErrCode::UndeclaredVariable, name.line, name.column,
           "undeclared variable '" + name.text + "'");
    }
    Statement st;
    st.var = it->second;
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
      take();
      st.kind = Statement::Kind::Sample;
      st.dist = distribution();
    } else if (t.kind == Tok::Assign) {
      take();
      st.kind = Statement::Kind::Assign;
      st.expr = expression();
    } else {
      fail(ErrCode::SyntaxError, t.line, t.column, "expected '~' or ':=' after '" + name.text +
                                                       "', got " + got(t));
    }
    expect(Tok::Semi, "';' terminating the statement");
    return st;
  }

  DistSpec distribution() {
    const Token& t = peek();
    DistSpec d;
    size_t arity = 0;
    switch (t.kind) {
      case Tok::KwBernoulli: d.kind = DistKind::Bernoulli; arity = 1; break;
      case Tok::KwNormal: d.kind = DistKind::Normal; arity = 2; break;
      case Tok::KwUniform: d.kind = DistKind::Uniform; arity = 2; break;
      case Tok::KwChoice: d.kind = DistKind::Choice; arity = 0; break;
      default:
        fail(ErrCode::UnknownDistribution, t.line, t.column,
             "unknown distribution " + got(t) +
                 "; expected bernoulli, normal, uniform or choice");
    }
    take();
    expect(Tok::LParen, "'(' after the distribution name");
    d.params.push_back(expression());
    while (peek().kind == Tok::Comma) {
      take();
      d.params.push_back(expression());
    }
    const Token close = expect(Tok::RParen, "')' closing the parameter list");
    if (arity != 0 && d.params.size() != arity) {
      fail(ErrCode::SyntaxError, close.line, close.column,
           std::string(dist_kind_name(d.kind)) + " takes " + std::to_string(arity) +
               " parameter(s), got " + std::to_string(d.params.size()));
    }
    return d;
  }

  Expr expression() { return binary_rhs(unary(), 0); }

  Expr binary_rhs(Expr lhs, int min_prec) {
    while (true) {
      BinOpInfo info;
      if (!binop_info(peek().kind, info) || info.precedence < min_prec) return lhs;
      take();
      Expr rhs = unary();
      BinOpInfo next;
      while (binop_info(peek().kind, next) && next.precedence > info.precedence) {
        rhs = binary_rhs(std::move(rhs), next.precedence);
      }
      lhs = Expr::binary(info.op, std::move(lhs), std::move(rhs));
    }
  }

  Expr unary() {
    const Token& t = peek();
    if (t.kind == Tok::Minus) {
      take();
      return Expr::unary(Op::Neg, unary());
    }
    if (t.kind == Tok::Bang) {
      take();
      return Expr::unary(Op::Not, unary());
    }
    return primary();
  }

  Expr primary() {
    const Token t = take();
    switch (t.kind) {
      case Tok::Number:
        return Expr::literal(t.number);
      case Tok::KwInf:
        return Expr::literal(std::numeric_limits<double>::infinity());
      case Tok::Ident: {
        auto it = var_index_.find(t.text);
        if (it == var_index_.end()) {
          fail(ErrCode::UndeclaredVariable, t.line, t.column,
               "undeclared variable '" + t.text + "'");
        }
        return Expr::variable(it->second);
      }
      case Tok::LParen: {
        Expr e = expression();
        expect(Tok::RParen, "')' closing the parenthesized expression");
        return e;
      }
      case Tok::KwAbs: {
        expect(Tok::LParen, "'(' after 'abs'");
        Expr e = expression();
        expect(Tok::RParen, "')' closing 'abs'");
        return Expr::unary(Op::Abs, std::move(e));
      }
      case Tok::KwMin:
      case Tok::KwMax: {
        const Op op = t.kind == Tok::KwMin ? Op::Min : Op::Max;
        expect(Tok::LParen, "'(' after the function name");
        Expr a = expression();
        expect(Tok::Comma, "',' between the two arguments");
        Expr b = expression();
        expect(Tok::RParen, "')' closing the call");
        return Expr::binary(op, std::move(a), std::move(b));
      }
      default:
        fail(ErrCode::SyntaxError, t.line, t.column,
             "expected a number, variable, '(', 'abs', 'min', 'max' or 'inf', got " + got(t));
    }
  }

  Lexer lexer_;
  size_t pos_ = 0;
  std::map<std::string, uint32_t, std::less<>> var_index_;
};

}  // namespace

ModelAst parse_model(std::string_view text) {
  Parser p(text, nullptr);
  return p.parse_model();
}

Expr parse_expression(std::string_view text, const std::vector<std::string>& variables) {
  Parser p(text, &variables);
  return p.parse_whole_expression();
}

}  // namespace fkppg
