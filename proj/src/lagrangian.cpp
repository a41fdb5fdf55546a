#include "hyperlab/lagrangian.hpp"

#include <cmath>
#include <set>

namespace hyperlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sigma_at(const Vector& sigmas, int j) {
  return (j >= 1 && j <= sigmas.size()) ? sigmas(j - 1) : 0.0;
}

ModelEval zero_eval(Eigen::Index n) {
  ModelEval e;
  e.grad = Vector::Zero(n);
  e.hessian = Matrix::Zero(n, n);
  return e;
}

// det(b Id + t D) as a polynomial in the sigmas.
double shifted_determinant(double b, const Vector& sigmas, double t) {
  const auto n = sigmas.size();
  double acc = std::pow(b, static_cast<double>(n));
  double tj = 1.0;
  for (Eigen::Index j = 1; j <= n; ++j) {
    tj *= t;
    acc += std::pow(b, static_cast<double>(n - j)) * tj * sigmas(j - 1);
  }
  return acc;
}

ModelEval eval_custom(const models::Custom& m, double s, const Vector& sigmas) {
  if (!m.value) throw InvalidInput("custom model without a value function");
  const auto n = sigmas.size();
  ModelEval e = zero_eval(n);
  e.value = m.value(s, sigmas);

  auto step = [](double x, double base) { return base * std::max(1.0, std::abs(x)); };

  if (m.gradient) {
    e.grad = m.gradient(s, sigmas);
  } else {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double h = step(sigmas(j), 1e-5);
      Vector up = sigmas, dn = sigmas;
      up(j) += h;
      dn(j) -= h;
      e.grad(j) = (m.value(s, up) - m.value(s, dn)) / (2 * h);
    }
  }
  {
    const double h = step(s, 1e-5);
    e.d_ds = (m.value(s + h, sigmas) - m.value(s - h, sigmas)) / (2 * h);
  }

  if (m.hessian) {
    e.hessian = m.hessian(s, sigmas);
  } else if (m.gradient) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double h = step(sigmas(j), 1e-5);
      Vector up = sigmas, dn = sigmas;
      up(j) += h;
      dn(j) -= h;
      e.hessian.col(j) = (m.gradient(s, up) - m.gradient(s, dn)) / (2 * h);
    }
    e.hessian = (0.5 * (e.hessian + e.hessian.transpose())).eval();
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double hi = step(sigmas(i), 1e-4);
      for (Eigen::Index j = i; j < n; ++j) {
        const double hj = step(sigmas(j), 1e-4);
        auto f = [&](double di, double dj) {
          Vector x = sigmas;
          x(i) += di;
          x(j) += dj;
          return m.value(s, x);
        };
        double v;
        if (i == j) {
          v = (f(hi, 0) - 2 * e.value + f(-hi, 0)) / (hi * hi);
        } else {
          v = (f(hi, hj) - f(hi, -hj) - f(-hi, hj) + f(-hi, -hj)) / (4 * hi * hj);
        }
        e.hessian(i, j) = e.hessian(j, i) = v;
      }
    }
  }
  return e;
}

}  // namespace

std::string LagrangianModel::name() const {
  return std::visit(overloaded{
                        [](const models::WaveMap&) -> std::string { return "wave-map"; },
                        [](const models::Skyrme&) -> std::string { return "skyrme"; },
                        [](const models::BornInfeld&) -> std::string { return "born-infeld"; },
                        [](const models::Membrane&) -> std::string { return "membrane"; },
                        [](const models::Fluid&) -> std::string { return "fluid"; },
                        [](const models::SigmaCombo&) -> std::string { return "sigma-combo"; },
                        [](const models::Custom& c) -> std::string { return c.label; },
                    },
                    kind_);
}

ModelEval LagrangianModel::evaluate(double s, const Vector& sigmas) const {
  const auto n = sigmas.size();
  return std::visit(
      overloaded{
          [&](const models::WaveMap&) {
            ModelEval e = zero_eval(n);
            e.value = sigma_at(sigmas, 1);
            if (n >= 1) e.grad(0) = 1.0;
            return e;
          },
          [&](const models::Skyrme& m) {
            ModelEval e = zero_eval(n);
            e.value = m.c1 * sigma_at(sigmas, 1) + m.c2 * sigma_at(sigmas, 2) + s;
            if (n >= 1) e.grad(0) = m.c1;
            if (n >= 2) e.grad(1) = m.c2;
            e.d_ds = 1.0;
            return e;
          },
          [&](const models::BornInfeld& m) {
            if (!(m.b > 0)) throw InvalidInput("born-infeld requires b > 0");
            for (int k = 1; k <= 8; ++k) {
              if (shifted_determinant(m.b, sigmas, k / 8.0) <= 0.0) {
                throw DomainError("born-infeld: det(b Id + D) <= 0 along the scaling path");
              }
            }
            ModelEval e = zero_eval(n);
            const double det = shifted_determinant(m.b, sigmas, 1.0);
            const double root = std::sqrt(det);
            e.value = root - std::pow(m.b, 0.5 * static_cast<double>(n));
            Vector w(n);
            for (Eigen::Index j = 1; j <= n; ++j) w(j - 1) = std::pow(m.b, static_cast<double>(n - j));
            e.grad = w / (2 * root);
            e.hessian = -(w * w.transpose()) / (4 * det * root);
            return e;
          },
          [&](const models::Membrane&) {
            const double arg = 1.0 + sigma_at(sigmas, 1);
            if (arg <= 0.0) throw DomainError("membrane: 1 + sigma_1 <= 0");
            ModelEval e = zero_eval(n);
            const double root = std::sqrt(arg);
            e.value = root;
            if (n >= 1) {
              e.grad(0) = 0.5 / root;
              e.hessian(0, 0) = -0.25 / (arg * root);
            }
            return e;
          },
          [&](const models::Fluid& m) {
            const double arg = m.offset + sigma_at(sigmas, m.index);
            if (arg <= 0.0) throw DomainError("fluid: offset + sigma_index <= 0");
            ModelEval e = zero_eval(n);
            const double p = m.exponent;
            e.value = std::pow(arg, p);
            if (m.index >= 1 && m.index <= n) {
              e.grad(m.index - 1) = p * std::pow(arg, p - 1);
              e.hessian(m.index - 1, m.index - 1) = p * (p - 1) * std::pow(arg, p - 2);
            }
            return e;
          },
          [&](const models::SigmaCombo& m) {
            ModelEval e = zero_eval(n);
            for (std::size_t j = 0; j < m.coeffs.size(); ++j) {
              const int idx = static_cast<int>(j) + 1;
              e.value += m.coeffs[j] * sigma_at(sigmas, idx);
              if (idx <= n) e.grad(idx - 1) = m.coeffs[j];
            }
            e.value += m.mass * s;
            e.d_ds = m.mass;
            return e;
          },
          [&](const models::Custom& m) { return eval_custom(m, s, sigmas); },
      },
      kind_);
}

double LagrangianModel::value(double s, const Vector& sigmas) const {
  if (const auto* c = std::get_if<models::Custom>(&kind_)) return c->value(s, sigmas);
  return evaluate(s, sigmas).value;
}

bool LagrangianModel::in_domain(double s, const Vector& sigmas) const {
  try {
    return std::isfinite(value(s, sigmas));
  } catch (const DomainError&) {
    return false;
  }
}

double lagrangian_value(const LagrangianModel& model, const FieldJet& jet) {
  const StrainData sd = strain_invariants(jet);
  return model.value(jet.s(), sd.sigmas.tail(sd.sigmas.size() - 1));
}

LagrangianModel model_from_name(std::string_view name, const ModelParams& params) {
  auto check_keys = [&](std::set<std::string> allowed) {
    for (const auto& [k, v] : params) {
      if (!allowed.count(k)) throw InvalidInput("unknown parameter '" + k + "' for model " + std::string(name));
      if (!std::isfinite(v)) throw InvalidInput("parameter '" + k + "' is not finite");
    }
  };
  auto get = [&](const std::string& k, double fallback) {
    auto it = params.find(k);
    return it == params.end() ? fallback : it->second;
  };

  if (name == "wave-map") {
    check_keys({});
    return models::WaveMap{};
  }
  if (name == "skyrme") {
    check_keys({"c1", "c2"});
    models::Skyrme m{get("c1", 0.5), get("c2", 0.5)};
    if (!(m.c1 > 0 && m.c2 > 0)) throw InvalidInput("skyrme requires c1, c2 > 0");
    return m;
  }
  if (name == "born-infeld") {
    check_keys({"b"});
    models::BornInfeld m{get("b", 1.0)};
    if (!(m.b > 0)) throw InvalidInput("born-infeld requires b > 0");
    return m;
  }
  if (name == "membrane") {
    check_keys({});
    return models::Membrane{};
  }
  if (name == "fluid") {
    check_keys({"index", "offset", "exponent"});
    const double idx = get("index", 3);
    if (idx < 1 || idx != std::floor(idx)) throw InvalidInput("fluid index must be a positive integer");
    return models::Fluid{static_cast<int>(idx), get("offset", 0.0), get("exponent", 0.5)};
  }
  if (name == "sigma-combo") {
    models::SigmaCombo m;
    int highest = 0;
    for (const auto& [k, v] : params) {
      if (k == "cs") {
        m.mass = v;
      } else if (k.size() > 1 && k[0] == 'c' && k.find_first_not_of("0123456789", 1) == std::string::npos) {
        highest = std::max(highest, std::stoi(k.substr(1)));
      } else {
        throw InvalidInput("unknown parameter '" + k + "' for model sigma-combo");
      }
      if (!(v >= 0)) throw InvalidInput("sigma-combo coefficients must be nonnegative");
    }
    m.coeffs.assign(static_cast<std::size_t>(highest), 0.0);
    for (int j = 1; j <= highest; ++j) m.coeffs[j - 1] = get("c" + std::to_string(j), 0.0);
    return m;
  }
  throw InvalidInput("unknown model '" + std::string(name) + "'");
}

LagrangianModel sigma_model(int j) {
  models::SigmaCombo m;
  m.coeffs.assign(static_cast<std::size_t>(j), 0.0);
  m.coeffs.back() = 1.0;
  return m;
}

}  // namespace hyperlab
