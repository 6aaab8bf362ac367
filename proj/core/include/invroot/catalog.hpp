#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invroot/function_model.hpp"

namespace invroot::catalog {

/// Analytic families with exact f, f', f^-1, F and G.
enum class Family { kLog, kAffine, kExpShift, kCubeShift, kReciprocal };

std::string_view id(Family family);
std::optional<Family> family_from_id(std::string_view id);

struct FamilySpec {
  Family family;
  std::vector<double> params;
  Interval domain;
};

/// Documentation entry for one family.
struct FamilyInfo {
  Family family;
  std::string id;
  std::string formula;
  std::vector<std::string> parameter_names;
  std::vector<double> default_params;
  Interval default_domain;
  std::string admissibility;
  std::string monotonicity;
  std::string root;
  std::string closed_forms;
};

/// The five families in stable order: log, affine, exp-shift, cube-shift, reciprocal.
std::vector<FamilyInfo> list_families();

const FamilyInfo& info(Family family);

/// Default parameters and domain of a family.
FamilySpec default_spec(Family family);

/// Throws Error(kInvalidArgument) for inadmissible parameters or domains.
void check_admissible(const FamilySpec& spec);

/// Model with every capability in closed form.
FunctionModel instantiate(const FamilySpec& spec);

/// The family's documented root (may lie outside spec.domain).
double known_root(const FamilySpec& spec);

}  // namespace invroot::catalog
