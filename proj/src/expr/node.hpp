#pragma once

#include <vector>

#include "noether/expr.hpp"

namespace noether {

struct Expr::Node {
  Kind kind = Kind::Const;
  double value = 0.0;
  Var var{};
  Func func = Func::Sin;
  std::vector<Expr> children;
};

}  // namespace noether
