#include "sgflow/expr.hpp"

#include <cmath>
#include <stdexcept>

namespace sgflow {

using Op = ExprOp;

Expr Expr::make(ExprOp op, std::vector<Expr> args, int index) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->index = index;
    n->args = std::move(args);
    return Expr(std::move(n));
}

Expr Expr::constant(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::constant;
    n->value = v;
    return Expr(std::move(n));
}

Expr Expr::variable(int index) {
    auto n = std::make_shared<Node>();
    n->op = Op::variable;
    n->index = index;
    return Expr(std::move(n));
}

Expr Expr::from_json(const nlohmann::json& j) {
    if (j.is_number()) return constant(j.get<double>());
    if (j.contains("var")) return variable(j.at("var").get<int>());
    const std::string op = j.at("op").get<std::string>();
    std::vector<Expr> args;
    for (const auto& a : j.value("args", nlohmann::json::array())) args.push_back(from_json(a));
    auto unary = [&](Op o) {
        if (args.size() != 1) throw std::invalid_argument("expr: " + op + " takes one argument");
        return make(o, std::move(args));
    };
    if (op == "add" || op == "mul") {
        if (args.size() < 2) throw std::invalid_argument("expr: " + op + " takes >= 2 arguments");
        Op o = op == "add" ? Op::add : Op::mul;
        Expr acc = args[0];
        for (std::size_t i = 1; i < args.size(); ++i) acc = make(o, {acc, args[i]});
        return acc;
    }
    if (op == "sub" || op == "div") {
        if (args.size() != 2) throw std::invalid_argument("expr: " + op + " takes 2 arguments");
        return make(op == "sub" ? Op::sub : Op::div, std::move(args));
    }
    if (op == "neg") return unary(Op::neg);
    if (op == "sin") return unary(Op::sin);
    if (op == "cos") return unary(Op::cos);
    if (op == "exp") return unary(Op::exp);
    if (op == "log") return unary(Op::log);
    if (op == "sqrt") return unary(Op::sqrt);
    if (op == "pow") {
        if (args.size() != 1) throw std::invalid_argument("expr: pow takes one base argument");
        return make(Op::pow_int, std::move(args), j.at("exponent").get<int>());
    }
    throw std::invalid_argument("expr: unknown op '" + op + "'");
}

double Expr::eval(const Vec& x) const {
    const Node& n = *node_;
    switch (n.op) {
        case Op::constant: return n.value;
        case Op::variable:
            if (n.index < 0 || std::size_t(n.index) >= x.size())
                throw std::out_of_range("expr: variable index out of range");
            return x[n.index];
        case Op::add: return n.args[0].eval(x) + n.args[1].eval(x);
        case Op::sub: return n.args[0].eval(x) - n.args[1].eval(x);
        case Op::mul: return n.args[0].eval(x) * n.args[1].eval(x);
        case Op::div: return n.args[0].eval(x) / n.args[1].eval(x);
        case Op::neg: return -n.args[0].eval(x);
        case Op::pow_int: return std::pow(n.args[0].eval(x), n.index);
        case Op::sin: return std::sin(n.args[0].eval(x));
        case Op::cos: return std::cos(n.args[0].eval(x));
        case Op::exp: return std::exp(n.args[0].eval(x));
        case Op::log: return std::log(n.args[0].eval(x));
        case Op::sqrt: return std::sqrt(n.args[0].eval(x));
    }
    throw std::logic_error("expr: unreachable");
}

Expr Expr::derivative(int var) const {
    const Node& n = *node_;
    auto C = [](double v) { return constant(v); };
    switch (n.op) {
        case Op::constant: return C(0.0);
        case Op::variable: return C(n.index == var ? 1.0 : 0.0);
        case Op::add: return make(Op::add, {n.args[0].derivative(var), n.args[1].derivative(var)});
        case Op::sub: return make(Op::sub, {n.args[0].derivative(var), n.args[1].derivative(var)});
        case Op::mul:
            return make(Op::add, {make(Op::mul, {n.args[0].derivative(var), n.args[1]}),
                                  make(Op::mul, {n.args[0], n.args[1].derivative(var)})});
        case Op::div:
            return make(Op::sub,
                        {make(Op::div, {n.args[0].derivative(var), n.args[1]}),
                         make(Op::div, {make(Op::mul, {n.args[0], n.args[1].derivative(var)}),
                                        make(Op::pow_int, {n.args[1]}, 2)})});
        case Op::neg: return make(Op::neg, {n.args[0].derivative(var)});
        case Op::pow_int:
            if (n.index == 0) return C(0.0);
            return make(Op::mul, {make(Op::mul, {C(double(n.index)),
                                                 make(Op::pow_int, {n.args[0]}, n.index - 1)}),
                                  n.args[0].derivative(var)});
        case Op::sin:
            return make(Op::mul, {make(Op::cos, {n.args[0]}), n.args[0].derivative(var)});
        case Op::cos:
            return make(Op::neg,
                        {make(Op::mul, {make(Op::sin, {n.args[0]}), n.args[0].derivative(var)})});
        case Op::exp:
            return make(Op::mul, {make(Op::exp, {n.args[0]}), n.args[0].derivative(var)});
        case Op::log: return make(Op::div, {n.args[0].derivative(var), n.args[0]});
        case Op::sqrt:
            return make(Op::div, {n.args[0].derivative(var),
                                  make(Op::mul, {C(2.0), make(Op::sqrt, {n.args[0]})})});
    }
    throw std::logic_error("expr: unreachable");
}

std::string Expr::to_string() const {
    const Node& n = *node_;
    switch (n.op) {
        case Op::constant: return std::to_string(n.value);
        case Op::variable: return "x" + std::to_string(n.index);
        case Op::add: return "(" + n.args[0].to_string() + " + " + n.args[1].to_string() + ")";
        case Op::sub: return "(" + n.args[0].to_string() + " - " + n.args[1].to_string() + ")";
        case Op::mul: return "(" + n.args[0].to_string() + " * " + n.args[1].to_string() + ")";
        case Op::div: return "(" + n.args[0].to_string() + " / " + n.args[1].to_string() + ")";
        case Op::neg: return "-(" + n.args[0].to_string() + ")";
        case Op::pow_int: return n.args[0].to_string() + "^" + std::to_string(n.index);
        case Op::sin: return "sin(" + n.args[0].to_string() + ")";
        case Op::cos: return "cos(" + n.args[0].to_string() + ")";
        case Op::exp: return "exp(" + n.args[0].to_string() + ")";
        case Op::log: return "log(" + n.args[0].to_string() + ")";
        case Op::sqrt: return "sqrt(" + n.args[0].to_string() + ")";
    }
    return "?";
}

}  // namespace sgflow
