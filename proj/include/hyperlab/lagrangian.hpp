#pragma once

// Lagrangians L(s, sigma_1, ..., sigma_{m+1}) and their partials.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "hyperlab/tensor_core.hpp"

namespace hyperlab {

namespace models {

/// L = sigma_1.
struct WaveMap {};

/// L = c1 sigma_1 + c2 sigma_2 + s. The default matches the normalized
/// action (1/2)|dphi|^2 + (1/4)|dphi ^ dphi|^2.
struct Skyrme {
  double c1 = 0.5;
  double c2 = 0.5;
};

/// L = sqrt(det(b Id + D)) - sqrt(b^{m+1}), on the component of
/// det(b Id + D) > 0 reached from D = 0.
struct BornInfeld {
  double b = 1.0;
};

/// L = sqrt(1 + sigma_1).
struct Membrane {};

/// L = (offset + sigma_index)^exponent, requires offset + sigma_index > 0.
/// offset = 0 gives power-law equations of state; exponent 1/2 with
/// offset b is the tachyonic fluid sqrt(b + sigma_3).
struct Fluid {
  int index = 3;
  double offset = 0.0;
  double exponent = 0.5;
};

/// L = sum_j coeffs[j-1] sigma_j + mass * s.
struct SigmaCombo {
  std::vector<double> coeffs;
  double mass = 0.0;
};

/// Arbitrary L(s, sigma). Missing partials are taken by central differences.
struct Custom {
  using ValueFn = std::function<double(double, const Vector&)>;
  using GradientFn = std::function<Vector(double, const Vector&)>;
  using HessianFn = std::function<Matrix(double, const Vector&)>;
  ValueFn value;
  GradientFn gradient;  // optional
  HessianFn hessian;    // optional
  std::string label = "custom";
};

}  // namespace models

using ModelKind = std::variant<models::WaveMap, models::Skyrme, models::BornInfeld, models::Membrane,
                               models::Fluid, models::SigmaCombo, models::Custom>;

struct ModelEval {
  double value = 0.0;
  Vector grad;     // dL/dsigma_j, j = 1..m+1
  double d_ds = 0.0;
  Matrix hessian;  // d2L/dsigma_i dsigma_j
};

class LagrangianModel {
 public:
  // Implicit from any catalog struct.
  template <typename T, typename = std::enable_if_t<std::is_constructible_v<ModelKind, T>>>
  LagrangianModel(T kind) : kind_(std::move(kind)) {}  // NOLINT

  const ModelKind& kind() const { return kind_; }
  std::string name() const;

  /// sigmas holds sigma_1..sigma_{m+1}. Throws DomainError outside the
  /// model's domain.
  ModelEval evaluate(double s, const Vector& sigmas) const;
  double value(double s, const Vector& sigmas) const;

  bool in_domain(double s, const Vector& sigmas) const;

 private:
  ModelKind kind_;
};

inline ModelEval eval_model(const LagrangianModel& model, double s, const Vector& sigmas) {
  return model.evaluate(s, sigmas);
}

/// L evaluated on a jet (sigmas recomputed from g, h and dphi).
double lagrangian_value(const LagrangianModel& model, const FieldJet& jet);

using ModelParams = std::map<std::string, double>;

/// Catalog lookup: "wave-map", "skyrme", "born-infeld", "membrane", "fluid",
/// "sigma-combo". Parameters: skyrme {c1, c2}; born-infeld {b}; fluid
/// {index, offset, exponent}; sigma-combo {c1.., cs}. Unknown names or
/// parameters throw InvalidInput.
LagrangianModel model_from_name(std::string_view name, const ModelParams& params = {});

/// L = sigma_j as a catalog model.
LagrangianModel sigma_model(int j);

}  // namespace hyperlab
