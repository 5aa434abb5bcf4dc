#include "hsum/expr.hpp"

#include <cctype>

namespace hsum {

ParseError::ParseError(const std::string& msg, std::size_t pos, std::vector<std::string> exp)
    : std::runtime_error(msg), position(pos), expected(std::move(exp))
{
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip()
    {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }

    bool peek(char c)
    {
        skip();
        return i < s.size() && s[i] == c;
    }

    bool accept(char c)
    {
        if (!peek(c)) return false;
        ++i;
        return true;
    }

    [[noreturn]] void fail(std::vector<std::string> expected)
    {
        skip();
        std::string got = i < s.size() ? std::string("'") + s[i] + "'" : "end of input";
        std::string msg = "syntax error at position " + std::to_string(i) + ": unexpected " + got + ", expected ";
        for (std::size_t j = 0; j < expected.size(); ++j) msg += (j ? ", " : "") + expected[j];
        throw ParseError(msg, i, std::move(expected));
    }

    void expect(char c)
    {
        if (!accept(c)) fail({std::string("'") + c + "'"});
    }

    Expr expr()
    {
        std::vector<Expr> terms{term()};
        while (true) {
            if (accept('+'))
                terms.push_back(term());
            else if (accept('-'))
                terms.push_back(-term());
            else
                break;
        }
        return Expr::add(terms);
    }

    Expr term()
    {
        std::vector<Expr> f{factor()};
        while (true) {
            if (accept('*'))
                f.push_back(factor());
            else if (accept('/'))
                f.push_back(Expr::pow(factor(), Expr(-1)));
            else
                break;
        }
        return Expr::mul(f);
    }

    Expr factor()
    {
        bool neg = accept('-');
        Expr b = postfix();
        if (accept('^')) b = Expr::pow(b, factor());
        return neg ? -b : b;
    }

    Expr postfix()
    {
        Expr a = atom();
        while (accept('!')) a = Expr::factorial(a);
        return a;
    }

    std::vector<Expr> list()
    {
        expect('[');
        std::vector<Expr> out;
        if (accept(']')) return out;
        out.push_back(expr());
        while (accept(',')) out.push_back(expr());
        expect(']');
        return out;
    }

    Expr atom()
    {
        skip();
        if (i >= s.size()) fail({"number", "symbol", "'('"});
        char c = s[i];
        if (std::isdigit((unsigned char)c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            Integer n(s.substr(i, j - i));
            i = j;
            return Expr(Rational(n));
        }
        if (c == '(') {
            ++i;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha((unsigned char)c)) {
            std::size_t start = i, j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
            std::string name = s.substr(i, j - i);
            i = j;
            if (!peek('(')) return Expr::sym(name);
            ++i;
            return call(name, start);
        }
        fail({"number", "symbol", "'('"});
    }

    Expr call(const std::string& name, std::size_t start)
    {
        if (name == "hyperterm") {
            auto upper = list();
            expect(',');
            auto lower = list();
            expect(',');
            Expr arg = expr();
            expect(',');
            Expr k = expr();
            expect(')');
            return Expr::hyperterm(upper, lower, arg, k);
        }
        std::vector<Expr> args{expr()};
        while (accept(',')) args.push_back(expr());
        expect(')');
        auto arity = [&](std::size_t n) {
            if (args.size() != n)
                throw ParseError(name + " expects " + std::to_string(n) + " argument(s)", start, {});
        };
        if (name == "binomial") {
            arity(2);
            return Expr::binomial(args[0], args[1]);
        }
        if (name == "pochhammer") {
            arity(2);
            return Expr::pochhammer(args[0], args[1]);
        }
        if (name == "factorial") {
            arity(1);
            return Expr::factorial(args[0]);
        }
        if (name == "GAMMA" || name == "Gamma" || name == "gamma") {
            arity(1);
            return Expr::gamma(args[0]);
        }
        std::string head = name;
        if (head == "BesselJ") head = "besselj";
        if (head == "log") head = "ln";
        try {
            return Expr::func(head, std::move(args));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), start, {});
        }
    }
};

}  // namespace

Expr parse(const std::string& text)
{
    Parser p(text);
    Expr e = p.expr();
    p.skip();
    if (p.i != text.size()) p.fail({"operator", "end of input"});
    return e;
}

}  // namespace hsum
