#pragma once

#include <stdexcept>
#include <string>

namespace subeuclid {

/// Raised when constraints admit no feasible structure. `vertex` names the
/// violating vertex when one can be identified, else -1.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what, int vertex = -1)
      : std::runtime_error(what), vertex_(vertex) {}
  int vertex() const { return vertex_; }

 private:
  int vertex_;
};

}  // namespace subeuclid
