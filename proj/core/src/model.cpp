#include "nlci/model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "nlci/quadrature.hpp"

namespace nlci {

DiffusionSpec DiffusionSpec::constant() {
  DiffusionSpec d;
  d.value = [](double) { return 1.0; };
  d.derivative = [](double) { return 0.0; };
  d.lower = 1.0;
  d.upper = 1.0;
  d.lipschitz = 0.0;
  d.name = "constant";
  return d;
}

DiffusionSpec DiffusionSpec::saturating() {
  DiffusionSpec d;
  d.value = [](double s) { return 1.0 + s / (1.0 + s); };
  d.derivative = [](double s) { return 1.0 / ((1.0 + s) * (1.0 + s)); };
  d.lower = 1.0;
  d.upper = 2.0;
  d.lipschitz = 1.0;
  d.name = "saturating";
  return d;
}

DiffusionSpec DiffusionSpec::from_table(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw std::invalid_argument("diffusion table needs at least 2 knots");
  std::sort(knots.begin(), knots.end());
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (knots[i].first == knots[i - 1].first) {
      throw std::invalid_argument("diffusion table has duplicate abscissae");
    }
  }
  double lo = knots.front().second, hi = knots.front().second, lip = 0.0;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    lo = std::min(lo, knots[i].second);
    hi = std::max(hi, knots[i].second);
    if (i > 0) {
      lip = std::max(lip, std::abs((knots[i].second - knots[i - 1].second) /
                                   (knots[i].first - knots[i - 1].first)));
    }
  }
  auto table = std::make_shared<std::vector<std::pair<double, double>>>(std::move(knots));
  DiffusionSpec d;
  d.value = [table](double s) {
    const auto& k = *table;
    if (s <= k.front().first) return k.front().second;
    if (s >= k.back().first) return k.back().second;
    auto it = std::upper_bound(k.begin(), k.end(), std::make_pair(s, -1e300));
    const auto [x1, y1] = *it;
    const auto [x0, y0] = *(it - 1);
    return y0 + (y1 - y0) * (s - x0) / (x1 - x0);
  };
  d.derivative = [table](double s) {
    const auto& k = *table;
    if (s <= k.front().first || s >= k.back().first) return 0.0;
    auto it = std::upper_bound(k.begin(), k.end(), std::make_pair(s, -1e300));
    const auto [x1, y1] = *it;
    const auto [x0, y0] = *(it - 1);
    return (y1 - y0) / (x1 - x0);
  };
  d.lower = lo;
  d.upper = hi;
  d.lipschitz = lip;
  d.name = "table";
  return d;
}

NonlinearitySpec NonlinearitySpec::cubic() {
  NonlinearitySpec f;
  f.value = [](double u) { return u - u * u * u; };
  f.derivative = [](double u) { return 1.0 - 3.0 * u * u; };
  f.second_derivative = [](double u) { return -6.0 * u; };
  f.antiderivative = [](double u) {
    const double u2 = u * u;
    return 0.5 * u2 - 0.25 * u2 * u2;
  };
  f.dissipativity_witness = 1.0;
  f.name = "cubic";
  return f;
}

ModelConfig::ModelConfig(DiffusionSpec d, NonlinearitySpec f, double lam)
    : diffusion(std::move(d)), nonlinearity(std::move(f)), lambda(lam) {
  if (!(lambda > 0.0)) throw std::invalid_argument("ModelConfig: lambda must be positive");
}

bool ValidationReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const HypothesisCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate_hypotheses(const ModelConfig& cfg, std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("validate_hypotheses: empty sample set");

  const auto& a = cfg.diffusion;
  const auto& f = cfg.nonlinearity;

  std::vector<double> s_samples;  // nonnegative arguments for a
  s_samples.reserve(samples.size());
  for (double u : samples) s_samples.push_back(std::abs(u));
  std::sort(s_samples.begin(), s_samples.end());

  ValidationReport report;
  auto add = [&report](std::string name, bool ok, std::optional<double> witness,
                       std::string detail) {
    report.checks.push_back({std::move(name), ok, witness, std::move(detail)});
  };

  {
    bool ok = true;
    std::optional<double> wit;
    for (double s : s_samples) {
      const double v = a.value(s);
      if (!(v >= a.lower - 1e-12 && v <= a.upper + 1e-12)) {
        ok = false;
        wit = s;
        break;
      }
    }
    add("a-bounds", ok, wit, "m <= a(s) <= M");
  }
  {
    bool ok = true;
    std::optional<double> wit;
    for (std::size_t i = 1; i < s_samples.size(); ++i) {
      if (a.value(s_samples[i]) < a.value(s_samples[i - 1]) - 1e-12) {
        ok = false;
        wit = s_samples[i];
        break;
      }
    }
    add("a-non-decreasing", ok, wit, "a(s2) >= a(s1) for s2 >= s1");
  }
  {
    bool ok = true;
    std::optional<double> wit;
    for (std::size_t i = 1; i < s_samples.size(); ++i) {
      const double ds = s_samples[i] - s_samples[i - 1];
      const double da = std::abs(a.value(s_samples[i]) - a.value(s_samples[i - 1]));
      if (da > a.lipschitz * ds + 1e-12) {
        ok = false;
        wit = s_samples[i];
        break;
      }
    }
    add("a-lipschitz", ok, wit, "|a(s2)-a(s1)| <= L |s2-s1|");
  }
  {
    bool ok = true;
    std::optional<double> wit;
    for (double u : samples) {
      const double scale = std::max(1.0, std::abs(f.value(u)));
      if (std::abs(f.value(-u) + f.value(u)) > 1e-10 * scale) {
        ok = false;
        wit = u;
        break;
      }
    }
    add("f-odd", ok, wit, "f(-u) = -f(u)");
  }
  {
    const bool ok = std::abs(f.derivative(0.0) - 1.0) <= 1e-12;
    add("f-prime-at-zero", ok, ok ? std::nullopt : std::optional<double>(0.0), "f'(0) = 1");
  }
  {
    bool ok = true;
    std::optional<double> wit;
    for (double u : samples) {
      if (u == 0.0) continue;
      if (!(f.second_derivative(u) * u < 0.0)) {
        ok = false;
        wit = u;
        break;
      }
    }
    add("f-concavity-pattern", ok, wit, "f''(u) u < 0 for u != 0");
  }
  {
    bool ok = true;
    std::optional<double> wit;
    for (double u : samples) {
      if (std::abs(u) < f.dissipativity_witness) continue;
      if (u == 0.0) continue;
      if (!(f.value(u) / u < 0.0)) {
        ok = false;
        wit = u;
        break;
      }
    }
    add("f-dissipativity", ok, wit, "f(u)/u < 0 for |u| >= u*");
  }
  {
    const bool ok = cfg.lambda > 0.0;
    add("lambda-positive", ok, ok ? std::nullopt : std::optional<double>(cfg.lambda),
        "lambda > 0");
  }
  return report;
}

double lyapunov(const GridFunction& u, const ModelConfig& cfg) {
  const double r = h1_seminorm_sq(u);
  const double diffusion_part = 0.5 * integrate_adaptive(cfg.diffusion.value, 0.0, r, 1e-10);
  double reaction = 0.0;
  for (double v : u.values()) reaction += cfg.nonlinearity.antiderivative(v);
  reaction *= u.grid().spacing();
  return diffusion_part - cfg.lambda * reaction;
}

}  // namespace nlci
