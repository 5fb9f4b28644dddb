#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boxmesh/errors.hpp"
#include "boxmesh/function.hpp"

namespace boxmesh {

/// Syntax error, unknown identifier or out-of-range variable. `position`
/// is 1-based; one past the last character means "at end of input".
class ParseError : public ArgumentError {
public:
    ParseError(const std::string& what, std::size_t position)
        : ArgumentError(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

enum class NodeKind : std::uint8_t { constant, variable, add, sub, mul, div, pow, neg, exp, log, sin, cos };

struct ExprNode {
    NodeKind kind = NodeKind::constant;
    double value = 0.0;  ///< constant
    int var = 0;         ///< variable, 0-based
    int lhs = -1;        ///< operand (unary) or left operand
    int rhs = -1;
};

/**
 * Parsed arithmetic expression over x1..xd.
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := unary (('*' | '/') unary)*
 *   unary   := '-' unary | power
 *   power   := primary ('^' ('-')* power)?      right associative
 *   primary := number | x<i> | fn '(' expr ')' | '(' expr ')'
 *   fn      := exp | log | sin | cos
 *
 * So -x1^2 is -(x1^2) and 2^-1 is allowed. Immutable after parsing.
 */
class Expression {
public:
    static Expression parse(std::string_view src, int dim);

    int dim() const { return dim_; }
    const std::vector<ExprNode>& nodes() const { return nodes_; }
    int root() const { return root_; }

    double operator()(std::span<const double> x) const;

    /// Fully parenthesised form; constants printed with %.17g.
    std::string to_string() const;

    /// Same tree shape, node kinds, variables and bitwise-equal constants.
    bool structurally_equal(const Expression& other) const;

private:
    int dim_ = 0;
    std::vector<ExprNode> nodes_;
    int root_ = -1;
    std::vector<int> program_;  // postfix order of node ids
};

/// TargetFunction with finite-difference derivatives and the sampling
/// modulus estimator. The Hessian diagonal is checked against `sig` at
/// `samples` seeded random points; a violation throws SignatureError naming
/// the witness.
TargetFunction to_target_function(const Expression& e, Signature sig, std::uint64_t seed = 1,
                                  int samples = 1000);

/// Weight from an expression; must be positive and finite at `samples`
/// seeded random points.
WeightFunction to_weight_function(const Expression& e, std::uint64_t seed = 1, int samples = 1000);

}  // namespace boxmesh
