#include "isoq/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

#include "isoq/error.hpp"

namespace isoq {

struct ExprNode {
    enum class Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow, Exp, Log };
    Kind kind = Kind::Num;
    cplx value{0.0, 0.0};
    int p = 1, q = 1;
    std::shared_ptr<const ExprNode> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;
using Kind = ExprNode::Kind;

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        NodePtr n = term();
        for (;;) {
            if (accept('+')) n = make(Kind::Add, n, term());
            else if (accept('-')) n = make(Kind::Sub, n, term());
            else return n;
        }
    }

    NodePtr term() {
        NodePtr n = factor();
        for (;;) {
            if (accept('*')) n = make(Kind::Mul, n, factor());
            else if (accept('/')) n = make(Kind::Div, n, factor());
            else return n;
        }
    }

    NodePtr factor() {
        if (accept('-')) return make(Kind::Neg, factor());
        NodePtr n = base();
        if (accept('^')) {
            auto pw = std::make_shared<ExprNode>();
            pw->kind = Kind::Pow;
            pw->a = n;
            exponent(pw->p, pw->q);
            return pw;
        }
        return n;
    }

    int integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    void exponent(int& p, int& q) {
        skip();
        if (accept('(')) {
            const bool neg = accept('-');
            p = integer();
            if (neg) p = -p;
            q = 1;
            if (accept('/')) q = integer();
            if (q == 0) fail("zero denominator in exponent");
            expect(')');
            return;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            p = integer();
            q = 1;
            if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
                fail("exponent must be an integer or a parenthesized p/q");
            return;
        }
        fail("expected exponent");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            } else {
                pos_ = save;
            }
        }
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::Num;
        try {
            std::size_t used = 0;
            const std::string text = s_.substr(start, pos_ - start);
            n->value = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            pos_ = start;
            fail("malformed number");
        }
        return n;
    }

    NodePtr base() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            NodePtr n = expr();
            expect(')');
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            if (id == "z") return make(Kind::Var);
            if (id == "i") {
                auto n = std::make_shared<ExprNode>();
                n->kind = Kind::Num;
                n->value = cplx(0.0, 1.0);
                return n;
            }
            if (id == "exp" || id == "log") {
                expect('(');
                NodePtr arg = expr();
                expect(')');
                return make(id == "exp" ? Kind::Exp : Kind::Log, arg);
            }
            pos_ = start;
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected character");
    }
};

// Branch hook: given a node and the principal value of its base, returns the extra argument to add.
using BranchHook = double (*)(void* ctx, const ExprNode* n, cplx base_value);

Jet eval_jet(const ExprNode* n, const Jet& z, BranchHook hook, void* ctx) {
    try {
        switch (n->kind) {
            case Kind::Num: return Jet::constant(z.base(), z.order(), n->value);
            case Kind::Var: return z;
            case Kind::Add: return eval_jet(n->a.get(), z, hook, ctx) + eval_jet(n->b.get(), z, hook, ctx);
            case Kind::Sub: return eval_jet(n->a.get(), z, hook, ctx) - eval_jet(n->b.get(), z, hook, ctx);
            case Kind::Mul: return eval_jet(n->a.get(), z, hook, ctx) * eval_jet(n->b.get(), z, hook, ctx);
            case Kind::Div: return eval_jet(n->a.get(), z, hook, ctx) / eval_jet(n->b.get(), z, hook, ctx);
            case Kind::Neg: return -eval_jet(n->a.get(), z, hook, ctx);
            case Kind::Exp: return exp(eval_jet(n->a.get(), z, hook, ctx));
            case Kind::Log: {
                Jet a = eval_jet(n->a.get(), z, hook, ctx);
                if (a.max_abs() > 0 && std::abs(a.value()) <= kZeroTol * a.max_abs())
                    throw Error(ErrorKind::BranchPointAtPoint, "log argument vanishes");
                Jet r = log(a);
                if (hook) r += cplx(0.0, hook(ctx, n, a.value()));
                return r;
            }
            case Kind::Pow: {
                Jet a = eval_jet(n->a.get(), z, hook, ctx);
                if (n->p % n->q == 0) return pow_int(a, n->p / n->q);
                Jet r = pow_rational(a, n->p, n->q);
                if (hook) r *= std::polar(1.0, hook(ctx, n, a.value()) * n->p / n->q);
                return r;
            }
        }
    } catch (const Error& e) {
        switch (e.kind()) {
            case ErrorKind::ZeroDenominator:
            case ErrorKind::DivisionByIdenticallyZero:
                throw Error(ErrorKind::PoleAtPoint, "expression has a pole at " + std::to_string(z.base().real()) + "+" +
                                                        std::to_string(z.base().imag()) + "i");
            case ErrorKind::BranchPointAtBase:
                throw Error(ErrorKind::BranchPointAtPoint, "expression has a branch point at " +
                                                               std::to_string(z.base().real()) + "+" +
                                                               std::to_string(z.base().imag()) + "i");
            default: throw;
        }
    }
    return z;
}

double continue_arg(void* ctx, const ExprNode* n, cplx b) {
    auto& args = *static_cast<std::unordered_map<const ExprNode*, double>*>(ctx);
    const double principal = std::arg(b);
    auto it = args.find(n);
    if (it == args.end()) {
        args[n] = principal;
        return 0.0;
    }
    // unwrap: choose the representative of arg(b) closest to the previous argument
    const double two_pi = 2.0 * std::numbers::pi;
    const double k = std::round((it->second - principal) / two_pi);
    const double cont = principal + k * two_pi;
    it->second = cont;
    return cont - principal;
}

}  // namespace

Expr::Expr(std::shared_ptr<const ExprNode> root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}

Expr Expr::constant(cplx c) {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Num;
    n->value = c;
    return Expr(n, "(" + std::to_string(c.real()) + "+" + std::to_string(c.imag()) + "*i)");
}

Expr Expr::variable() { return Expr(make(Kind::Var), "z"); }

Jet Expr::eval(const Jet& z) const {
    if (!root_) throw Error(ErrorKind::Validation, "empty expression");
    return eval_jet(root_.get(), z, nullptr, nullptr);
}

cplx Expr::eval(cplx z) const { return eval(Jet::constant(z, 0, z)).value(); }

Expr parse_expr(const std::string& src) {
    Parser p(src);
    return Expr(p.parse(), src);
}

Jet ContinuedEvaluator::eval(const Jet& z) {
    if (!expr_.valid()) throw Error(ErrorKind::Validation, "empty expression");
    return eval_jet(expr_.root(), z, continue_arg, &args_);
}

cplx ContinuedEvaluator::eval(cplx z) { return eval(Jet::constant(z, 0, z)).value(); }

}  // namespace isoq
