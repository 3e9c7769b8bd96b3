#pragma once

#include <string>

#include "zsl/solver.hpp"

namespace zsl {

enum class Profile { zero, gaussian, mode, prepared_gaussian };

/// Analytic initial perturbation. Which fields are read depends on the
/// profile:
///   gaussian           u = amplitude exp(-|x - center|^2 / width^2), n = v = 0
///   mode               u = amplitude exp(i (kx x + ky y)) with integer mode
///                      numbers k, n = v = 0
///   prepared_gaussian  gaussian u with n = -|u|^2 - 2 Q Re u, v = 0
struct InitialSpec {
  Profile profile = Profile::zero;
  double amplitude = 0.1;
  double width = 2.0;
  double center[2] = {0.0, 0.0};
  int k[2] = {1, 0};

  void validate() const;
};

std::string to_string(Profile p);
/// Throws UsageError listing the valid names.
Profile profile_from_string(const std::string& name);

ZakharovState make_initial(const InitialSpec& spec, const Background& bg);

}  // namespace zsl
