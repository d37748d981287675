#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgflow/path_geometry.hpp"  // Vec

namespace sgflow {

enum class ExprOp { constant, variable, add, sub, mul, div, neg, pow_int, sin, cos, exp, log, sqrt };

// Expression tree over variables x0..x{d-1}. JSON encoding: a number
// literal, {"var": i}, or {"op": name, "args": [...]} (pow takes
// {"op":"pow","args":[base],"exponent":k}).
class Expr {
public:
    static Expr constant(double v);
    static Expr variable(int index);
    static Expr from_json(const nlohmann::json& j);

    double eval(const Vec& x) const;
    Expr derivative(int var) const;
    std::string to_string() const;

private:
    struct Node {
        ExprOp op;
        double value = 0.0;  // constant
        int index = 0;       // variable index / pow exponent
        std::vector<Expr> args;
    };
    std::shared_ptr<const Node> node_;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expr make(ExprOp op, std::vector<Expr> args, int index = 0);
};

}  // namespace sgflow
