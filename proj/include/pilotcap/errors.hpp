#ifndef PILOTCAP_ERRORS_HPP
#define PILOTCAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pilotcap {

/// Block length m outside the supported range (the pilot-fraction
/// formulas are singular at m = 2).
class block_length_error : public std::invalid_argument {
public:
  explicit block_length_error(const std::string& msg)
      : std::invalid_argument(msg) {}
};

/// Peak-power configuration admits no pilot count (kappa >= m).
class infeasible_config_error : public std::invalid_argument {
public:
  explicit infeasible_config_error(const std::string& msg)
      : std::invalid_argument(msg) {}
};

} // namespace pilotcap

#endif
