#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bscfb {

// A bound or root was requested where the defining equation has no solution
// (e.g. the decision threshold t1 when 2R >= ln(1/p1), or a phase-I rate at
// or above capacity). The reason is a stable machine-readable slug; sweeps
// surface it verbatim as "infeasible:<reason>" instead of fabricating zeros.
class infeasible_error : public std::runtime_error {
  public:
    explicit infeasible_error(std::string reason)
        : std::runtime_error("infeasible: " + reason), reason_(std::move(reason)) {}
    const std::string& reason() const noexcept { return reason_; }

  private:
    std::string reason_;
};

// Root search could not bracket a sign change.
class bracket_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bscfb
