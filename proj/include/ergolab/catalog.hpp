#ifndef ERGOLAB_CATALOG_HPP
#define ERGOLAB_CATALOG_HPP

#include <string>
#include <vector>

#include "ergolab/system.hpp"

namespace ergolab {

// Built-in model systems. Each returns a fully populated SystemSpec that
// passes the finite-difference self-consistency check.
SystemSpec make_doubling();
SystemSpec make_rotation(double theta);
SystemSpec make_tent();
SystemSpec make_logistic(double mu);
SystemSpec make_cat();

/// Parses a CLI-style system description: a name token followed by
/// key=value parameters, e.g. {"logistic", "mu=4.0"} or {"rotation",
/// "theta=0.618"} or {"counterexample", "r=2", "lambda=2", "n0=5", "nmax=12"}.
SystemSpec make_system(const std::vector<std::string>& tokens);

/// Names understood by make_system.
std::vector<std::string> catalog_names();

}  // namespace ergolab

#endif
