#include "perftower/parse.hpp"

#include "perftower/error.hpp"

#include <cctype>

namespace perftower {

namespace {

struct Token {
    enum class Kind { Integer, Ident, Plus, Minus, Star, Caret, LParen, RParen, Comma, Slash, LBracket, RBracket, End };
    Kind kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void error(const std::string& msg) const {
        throw ParseError(msg, tok_.line, tok_.col);
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            if (s_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= s_.size()) {
            tok_ = {Token::Kind::End, "", line_, col_};
            return;
        }
        char c = s_[pos_];
        auto single = [&](Token::Kind k) {
            tok_ = {k, std::string(1, c), line_, col_};
            ++pos_;
            ++col_;
        };
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
                ++col_;
            }
            tok_ = {Token::Kind::Integer, s_.substr(start, pos_ - start), line_, tok_.col};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                    s_[pos_] == '~')) {
                ++pos_;
                ++col_;
            }
            tok_ = {Token::Kind::Ident, s_.substr(start, pos_ - start), line_, tok_.col};
            return;
        }
        switch (c) {
        case '+': single(Token::Kind::Plus); return;
        case '-': single(Token::Kind::Minus); return;
        case '*': single(Token::Kind::Star); return;
        case '^': single(Token::Kind::Caret); return;
        case '(': single(Token::Kind::LParen); return;
        case ')': single(Token::Kind::RParen); return;
        case ',': single(Token::Kind::Comma); return;
        case '/': single(Token::Kind::Slash); return;
        case '[': single(Token::Kind::LBracket); return;
        case ']': single(Token::Kind::RBracket); return;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_{Token::Kind::End, "", 1, 1};
};

class PolyParser {
public:
    PolyParser(Lexer& lex, const AmbientPtr& amb) : lex_(lex), amb_(amb) {}

    Polynomial parse_expr() {
        bool neg = false;
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            neg = true;
        } else if (lex_.peek().kind == Token::Kind::Plus) {
            lex_.take();
        }
        Polynomial acc = parse_term();
        if (neg)
            acc = -acc;
        for (;;) {
            auto k = lex_.peek().kind;
            if (k == Token::Kind::Plus) {
                lex_.take();
                acc += parse_term();
            } else if (k == Token::Kind::Minus) {
                lex_.take();
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

private:
    bool starts_factor() const {
        auto k = lex_.peek().kind;
        return k == Token::Kind::Integer || k == Token::Kind::Ident ||
               k == Token::Kind::LParen;
    }

    Polynomial parse_term() {
        Polynomial acc = parse_factor();
        for (;;) {
            if (lex_.peek().kind == Token::Kind::Star) {
                lex_.take();
                acc = acc * parse_factor();
            } else if (starts_factor()) {
                acc = acc * parse_factor();
            } else {
                return acc;
            }
        }
    }

    Polynomial parse_factor() {
        Polynomial base = parse_base();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            if (lex_.peek().kind != Token::Kind::Integer)
                lex_.error("expected a non-negative integer exponent after '^'");
            Token e = lex_.take();
            return base.pow(std::stoull(e.text));
        }
        return base;
    }

    Polynomial parse_base() {
        Token t = lex_.peek();
        switch (t.kind) {
        case Token::Kind::Integer:
            lex_.take();
            return Polynomial::constant(amb_, mpz_class(t.text));
        case Token::Kind::Ident: {
            lex_.take();
            auto idx = amb_->var_index(t.text);
            if (!idx)
                throw ParseError("unknown variable '" + t.text + "' in ambient " +
                                     amb_->to_string(),
                                 t.line, t.col);
            return Polynomial::variable(amb_, *idx);
        }
        case Token::Kind::LParen: {
            lex_.take();
            Polynomial inner = parse_expr();
            if (lex_.peek().kind != Token::Kind::RParen)
                lex_.error("expected ')'");
            lex_.take();
            return inner;
        }
        default:
            lex_.error("expected a coefficient, variable, or '('");
        }
    }

    Lexer& lex_;
    const AmbientPtr& amb_;
};

} // namespace

Polynomial parse_polynomial(const std::string& text, const AmbientPtr& amb) {
    Lexer lex(text);
    PolyParser p(lex, amb);
    Polynomial r = p.parse_expr();
    if (lex.peek().kind != Token::Kind::End)
        lex.error("trailing input after polynomial");
    return r;
}

std::vector<Polynomial> parse_polynomial_list(const std::string& text, const AmbientPtr& amb) {
    std::vector<Polynomial> out;
    // Split on top-level commas only; parenthesised commas do not occur in
    // the polynomial grammar's factors except via '(' expr ')'.
    Lexer lex(text);
    if (lex.peek().kind == Token::Kind::End)
        return out;
    PolyParser p(lex, amb);
    out.push_back(p.parse_expr());
    while (lex.peek().kind == Token::Kind::Comma) {
        lex.take();
        out.push_back(p.parse_expr());
    }
    if (lex.peek().kind != Token::Kind::End)
        lex.error("trailing input after polynomial list");
    return out;
}

CoefficientRing parse_coeff_ring(const std::string& text) {
    Lexer lex(text);
    Token t = lex.take();
    if (t.kind != Token::Kind::Ident)
        throw ParseError("expected coefficient ring name", t.line, t.col);
    if (t.text == "Z") {
        if (lex.peek().kind == Token::Kind::Slash) {
            lex.take();
            Token m = lex.take();
            if (m.kind != Token::Kind::Integer)
                throw ParseError("expected modulus after 'Z/'", m.line, m.col);
            return CoefficientRing::integers_mod(mpz_class(m.text));
        }
        return CoefficientRing::integers();
    }
    if (t.text.size() > 1 && t.text[0] == 'F') {
        std::string digits = t.text.substr(1);
        for (char c : digits)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("bad prime field name '" + t.text + "'", t.line, t.col);
        return CoefficientRing::prime_field(mpz_class(digits));
    }
    throw ParseError("unknown coefficient ring '" + t.text + "'", t.line, t.col);
}

RingSpec parse_ring_spec(const std::string& text) {
    // COEFF '[' vars ']' ( '/' '(' polys ')' )?
    auto lb = text.find('[');
    if (lb == std::string::npos)
        throw ParseError("expected '[' in ring spec", 1, 1);
    CoefficientRing ring = parse_coeff_ring(text.substr(0, lb));
    auto rb = text.find(']', lb);
    if (rb == std::string::npos)
        throw ParseError("expected ']' in ring spec", 1, static_cast<int>(lb) + 1);

    std::vector<std::string> vars;
    {
        std::string inner = text.substr(lb + 1, rb - lb - 1);
        std::string cur;
        for (char c : inner) {
            if (c == ',') {
                if (!cur.empty())
                    vars.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur += c;
            }
        }
        if (!cur.empty())
            vars.push_back(cur);
    }
    AmbientPtr amb = Ambient::make(ring, vars);

    RingSpec spec{amb, {}};
    std::size_t pos = rb + 1;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos >= text.size())
        return spec;
    if (text[pos] != '/')
        throw ParseError("expected '/' before relations", 1, static_cast<int>(pos) + 1);
    ++pos;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos >= text.size() || text[pos] != '(' || text.back() != ')')
        throw ParseError("expected parenthesised relation list", 1, static_cast<int>(pos) + 1);
    spec.relations =
        parse_polynomial_list(text.substr(pos + 1, text.size() - pos - 2), amb);
    return spec;
}

} // namespace perftower
