#pragma once

#include "expl/lang.hpp"

#include <ostream>
#include <utility>
#include <vector>

namespace explainer::lang::detail {

// Renames bound variables during printing; inactive for plain printing.
struct Renamer {
  bool active = false;
  std::vector<std::pair<std::string, std::string>> scope;

  std::string name(const std::string& v) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == v) return it->second;
    return v;
  }
  std::string bind(const std::string& v) {
    std::string fresh = active ? "#" + std::to_string(scope.size()) : v;
    scope.emplace_back(v, fresh);
    return fresh;
  }
  void unbind() { scope.pop_back(); }
};

void print_term(std::ostream& os, const Term& t, int minprec, Renamer& rn);

using Binders = std::vector<std::string>;
bool alpha_term(const Term& a, const Term& b, Binders& ba, Binders& bb);

}  // namespace explainer::lang::detail
