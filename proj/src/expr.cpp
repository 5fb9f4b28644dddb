#include "boxmesh/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <random>
#include <sstream>

namespace boxmesh {

namespace {

class Parser {
public:
    Parser(std::string_view src, int dim, std::vector<ExprNode>& nodes) : src_(src), dim_(dim), nodes_(nodes) {}

    int parse_all() {
        skip_space();
        if (pos_ == src_.size()) fail("empty expression");
        const int root = parse_expr();
        skip_space();
        if (pos_ != src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_ + 1); }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int add(ExprNode n) {
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }

    int binary(NodeKind k, int l, int r) { return add(ExprNode{k, 0.0, 0, l, r}); }
    int unary(NodeKind k, int a) { return add(ExprNode{k, 0.0, 0, a, -1}); }

    int parse_expr() {
        int lhs = parse_term();
        while (true) {
            if (accept('+')) {
                lhs = binary(NodeKind::add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = binary(NodeKind::sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    int parse_term() {
        int lhs = parse_unary();
        while (true) {
            if (accept('*')) {
                lhs = binary(NodeKind::mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = binary(NodeKind::div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    int parse_unary() {
        if (accept('-')) return unary(NodeKind::neg, parse_unary());
        return parse_power();
    }

    int parse_exponent() {
        if (accept('-')) return unary(NodeKind::neg, parse_exponent());
        return parse_power();
    }

    int parse_power() {
        const int base = parse_primary();
        if (accept('^')) return binary(NodeKind::pow, base, parse_exponent());
        return base;
    }

    int parse_primary() {
        skip_space();
        if (pos_ == src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            const int inner = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        fail(std::string("unexpected '") + c + "'");
    }

    int parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                pos_ = p;
                digits();
            }
        }
        double v = 0.0;
        const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return add(ExprNode{NodeKind::constant, v, 0, -1, -1});
    }

    int parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string_view id = src_.substr(start, pos_ - start);
        if (id.size() >= 2 && id[0] == 'x' && id[1] != '0') {
            bool numeric = true;
            for (std::size_t i = 1; i < id.size(); ++i) numeric = numeric && std::isdigit(static_cast<unsigned char>(id[i]));
            if (numeric) {
                const int index = id.size() > 3 ? 1 << 20 : std::stoi(std::string(id.substr(1)));
                if (index > dim_) {
                    pos_ = start;
                    fail("variable " + std::string(id) + " exceeds dimension " + std::to_string(dim_));
                }
                return add(ExprNode{NodeKind::variable, 0.0, index - 1, -1, -1});
            }
        }
        NodeKind k;
        if (id == "exp") {
            k = NodeKind::exp;
        } else if (id == "log") {
            k = NodeKind::log;
        } else if (id == "sin") {
            k = NodeKind::sin;
        } else if (id == "cos") {
            k = NodeKind::cos;
        } else {
            pos_ = start;
            fail("unknown identifier '" + std::string(id) + "'");
        }
        if (!accept('(')) fail("expected '(' after " + std::string(id));
        const int arg = parse_expr();
        if (!accept(')')) fail("expected ')'");
        return unary(k, arg);
    }

    std::string_view src_;
    int dim_;
    std::vector<ExprNode>& nodes_;
    std::size_t pos_ = 0;
};

void postfix(const std::vector<ExprNode>& nodes, int id, std::vector<int>& out) {
    const auto& n = nodes[id];
    if (n.lhs >= 0) postfix(nodes, n.lhs, out);
    if (n.rhs >= 0) postfix(nodes, n.rhs, out);
    out.push_back(id);
}

void print(const std::vector<ExprNode>& nodes, int id, std::string& out) {
    const auto& n = nodes[id];
    auto bin = [&](const char* op) {
        out += '(';
        print(nodes, n.lhs, out);
        out += op;
        print(nodes, n.rhs, out);
        out += ')';
    };
    auto fn = [&](const char* name) {
        out += name;
        out += '(';
        print(nodes, n.lhs, out);
        out += ')';
    };
    switch (n.kind) {
        case NodeKind::constant: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            break;
        }
        case NodeKind::variable: out += "x" + std::to_string(n.var + 1); break;
        case NodeKind::add: bin(" + "); break;
        case NodeKind::sub: bin(" - "); break;
        case NodeKind::mul: bin(" * "); break;
        case NodeKind::div: bin(" / "); break;
        case NodeKind::pow: bin(" ^ "); break;
        case NodeKind::neg:
            out += "(-";
            print(nodes, n.lhs, out);
            out += ')';
            break;
        case NodeKind::exp: fn("exp"); break;
        case NodeKind::log: fn("log"); break;
        case NodeKind::sin: fn("sin"); break;
        case NodeKind::cos: fn("cos"); break;
    }
}

bool same_tree(const std::vector<ExprNode>& a, int ia, const std::vector<ExprNode>& b, int ib) {
    if ((ia < 0) != (ib < 0)) return false;
    if (ia < 0) return true;
    const auto& x = a[ia];
    const auto& y = b[ib];
    if (x.kind != y.kind) return false;
    if (x.kind == NodeKind::constant && std::memcmp(&x.value, &y.value, sizeof(double)) != 0) return false;
    if (x.kind == NodeKind::variable && x.var != y.var) return false;
    return same_tree(a, x.lhs, b, y.lhs) && same_tree(a, x.rhs, b, y.rhs);
}

std::string point_string(std::span<const double> x) {
    std::ostringstream os;
    os.precision(6);
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ')';
    return os.str();
}

}  // namespace

Expression Expression::parse(std::string_view src, int dim) {
    if (dim < 1 || dim > kMaxDim) throw ArgumentError("expression dimension must lie in [1, 8]");
    Expression e;
    e.dim_ = dim;
    Parser p(src, dim, e.nodes_);
    e.root_ = p.parse_all();
    postfix(e.nodes_, e.root_, e.program_);
    return e;
}

double Expression::operator()(std::span<const double> x) const {
    std::array<double, 64> fixed{};
    std::vector<double> heap;
    double* stack = fixed.data();
    if (program_.size() > fixed.size()) {
        heap.resize(program_.size());
        stack = heap.data();
    }
    int top = 0;
    for (int id : program_) {
        const auto& n = nodes_[id];
        switch (n.kind) {
            case NodeKind::constant: stack[top++] = n.value; break;
            case NodeKind::variable: stack[top++] = x[n.var]; break;
            case NodeKind::add: --top; stack[top - 1] += stack[top]; break;
            case NodeKind::sub: --top; stack[top - 1] -= stack[top]; break;
            case NodeKind::mul: --top; stack[top - 1] *= stack[top]; break;
            case NodeKind::div: --top; stack[top - 1] /= stack[top]; break;
            case NodeKind::pow: --top; stack[top - 1] = std::pow(stack[top - 1], stack[top]); break;
            case NodeKind::neg: stack[top - 1] = -stack[top - 1]; break;
            case NodeKind::exp: stack[top - 1] = std::exp(stack[top - 1]); break;
            case NodeKind::log: stack[top - 1] = std::log(stack[top - 1]); break;
            case NodeKind::sin: stack[top - 1] = std::sin(stack[top - 1]); break;
            case NodeKind::cos: stack[top - 1] = std::cos(stack[top - 1]); break;
        }
    }
    return stack[0];
}

std::string Expression::to_string() const {
    std::string out;
    print(nodes_, root_, out);
    return out;
}

bool Expression::structurally_equal(const Expression& other) const {
    return dim_ == other.dim_ && same_tree(nodes_, root_, other.nodes_, other.root_);
}

TargetFunction to_target_function(const Expression& e, Signature sig, std::uint64_t seed, int samples) {
    validate_signature(sig);
    if (sig.d != e.dim()) throw ArgumentError("signature dimension does not match the expression");
    auto shared = std::make_shared<const Expression>(e);
    TargetFunction f;
    f.name = e.to_string();
    f.signature = sig;
    f.value = [shared](std::span<const double> x) { return (*shared)(x); };

    const int d = sig.d;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(d);
    for (int s = 0; s < samples; ++s) {
        for (auto& v : x) v = u(rng);
        const double fx = f(x);
        if (!std::isfinite(fx)) {
            throw EvaluationError("expression is not finite at " + point_string(x));
        }
        f.check_signature_at(x);
    }
    return f;
}

WeightFunction to_weight_function(const Expression& e, std::uint64_t seed, int samples) {
    auto shared = std::make_shared<const Expression>(e);
    WeightFunction w;
    w.name = e.to_string();
    w.value = [shared](std::span<const double> x) { return (*shared)(x); };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(e.dim());
    for (int s = 0; s < samples; ++s) {
        for (auto& v : x) v = u(rng);
        const double v = w(x);
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ArgumentError("weight must be positive, but is " + std::to_string(v) + " at " + point_string(x));
        }
    }
    return w;
}

}  // namespace boxmesh
