#pragma once

#include <memory>
#include <string>
#include <unordered_map>

#include "isoq/jets.hpp"

namespace isoq {

struct ExprNode;

// Meromorphic expression in z: literals, + - * /, integer and rational powers, exp, log.
class Expr {
public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const ExprNode> root, std::string source);

    static Expr constant(cplx c);
    static Expr variable();

    Jet eval(const Jet& z) const;
    cplx eval(cplx z) const;
    const std::string& source() const { return source_; }
    bool valid() const { return root_ != nullptr; }
    const ExprNode* root() const { return root_.get(); }

private:
    std::shared_ptr<const ExprNode> root_;
    std::string source_;
};

Expr parse_expr(const std::string& src);

// Follows a path of evaluation points, continuing every multivalued node (rational powers, log)
// from its previous value instead of jumping to the principal branch.
class ContinuedEvaluator {
public:
    explicit ContinuedEvaluator(Expr e) : expr_(std::move(e)) {}
    Jet eval(const Jet& z);
    cplx eval(cplx z);
    void reset() { args_.clear(); }

private:
    Expr expr_;
    std::unordered_map<const ExprNode*, double> args_;
};

}  // namespace isoq
