#pragma once
#include <stdexcept>

namespace grn {

// Exit-code mapping used by the CLI: ConfigError -> 2, DivergenceError -> 3,
// BracketError and ConvergenceError -> 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// lambda hit the Neumann spectrum of the diffusion operator: sinh(theta) ~ 0.
struct SingularKernelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace grn
