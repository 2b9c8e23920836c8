#pragma once
#include <optional>
#include <string>

namespace grn {

// Kinetic and geometric constants of the two-species feedback system on [0,1].
// m: mRNA, produced at the gene site x_M under Hill repression by p;
// p: protein, translated from m in the cytoplasm x >= l. Both decay at rate mu
// and diffuse with a common coefficient D (D is not a member here; it is the
// bifurcation parameter and is passed around separately).
struct ModelParams {
  double alpha_m = 1.0;   // transcription rate
  double alpha_p = 2.0;   // translation rate
  double mu = 0.03;       // decay rate of both species
  int h = 5;              // Hill coefficient
  double l = 0.5;         // nuclear membrane position
  double x_M = 0.1;       // gene site center
  double epsilon = 1e-3;  // regularized point-source half-width

  // invariants: 0 < x_M < l < 1, epsilon < min(x_M, l - x_M), rates > 0, h >= 1
  void validate() const;  // throws ConfigError
};

struct DiffusionRange {
  double d1 = 1e-7;
  double d2 = 0.1;
  double D = 1e-3;

  void validate() const;  // 0 < d1 <= D <= d2
};

// Flat key-value config: lines of "key = value", '#' comments.
// Recognized keys: alpha_m, alpha_p, mu, h, l, x_M, epsilon, D.
// Missing keys keep defaults. Unknown keys are a ConfigError.
struct RunConfig {
  ModelParams params;
  std::optional<double> D;
};

RunConfig load_config(const std::string& path);

}  // namespace grn
