#include "paraweight/modulus.hpp"

#include <cmath>
#include <sstream>

#include "paraweight/errors.hpp"
#include "paraweight/quadrature.hpp"

namespace paraweight {

double Modulus::operator()(double s) const {
  if (!(s >= -1e-15 && s <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << "modulus '" << name << "' evaluated outside [0,1] at s = " << s;
    throw DomainError(os.str());
  }
  const double v = eval(std::min(std::max(s, 0.0), 1.0));
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "modulus '" << name << "' returned a non-finite value at s = " << s;
    throw EvaluationError(os.str());
  }
  return v;
}

std::string ValidationReport::summary() const {
  if (pass) return "pass";
  std::ostringstream os;
  os << "fail:";
  for (const auto& v : violations)
    os << " [" << v.property << " at s = " << v.where << ": " << v.detail
       << "]";
  return os.str();
}

ValidationReport validate_modulus(const Modulus& candidate) {
  constexpr int kGrid = 2048;
  constexpr int kSubgrid = 64;
  constexpr double kTol = 1e-12;

  ValidationReport report;
  auto flag = [&report](const std::string& prop, double where,
                        const std::string& detail) {
    // one witness per property keeps the report readable
    for (const auto& v : report.violations)
      if (v.property == prop) return;
    report.violations.push_back({prop, where, detail});
  };

  std::vector<double> s(kGrid + 1), mu(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) {
    s[i] = static_cast<double>(i) / kGrid;
    mu[i] = candidate(s[i]);  // throws EvaluationError with the point
  }

  if (std::fabs(mu.front()) > kTol)
    flag("endpoint mu(0)=0", 0.0, "mu(0) = " + std::to_string(mu.front()));
  if (std::fabs(mu.back() - 1.0) > kTol)
    flag("endpoint mu(1)=1", 1.0, "mu(1) = " + std::to_string(mu.back()));

  for (int i = 0; i < kGrid; ++i) {
    if (!(mu[i + 1] > mu[i])) {
      flag("strictly increasing", s[i + 1], "mu flat or decreasing");
      break;
    }
  }

  for (int i = 0; i <= kGrid; ++i) {
    if (mu[i] < s[i] - kTol) {
      flag("mu(s) >= s", s[i],
           "mu = " + std::to_string(mu[i]) + " < s = " + std::to_string(s[i]));
      break;
    }
  }

  // midpoint concavity on all pairs of the coarse subgrid
  const int stride = kGrid / kSubgrid;
  bool concave_ok = true;
  for (int i = 0; i <= kSubgrid && concave_ok; ++i) {
    for (int j = i; j <= kSubgrid && concave_ok; ++j) {
      const double x = s[i * stride], y = s[j * stride];
      const double mid = candidate(0.5 * (x + y));
      const double avg = 0.5 * (mu[i * stride] + mu[j * stride]);
      if (mid < avg - kTol) {
        flag("midpoint concavity", 0.5 * (x + y),
             "mu(mid) = " + std::to_string(mid) +
                 " < average = " + std::to_string(avg));
        concave_ok = false;
      }
    }
  }

  report.pass = report.violations.empty();
  return report;
}

double osgood_tail(const Modulus& mu, double delta, double rel_tol) {
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("osgood_tail: delta must lie in (0,1), got " +
                      std::to_string(delta));
  // substitute s = e^{-r}: integral_0^{log(1/delta)} e^{-r}/mu(e^{-r}) dr.
  // The integrand is bounded by 1 and smooth, and the quadrature never
  // evaluates mu below delta.
  const double r_max = std::log(1.0 / delta);
  const auto g = [&mu](double r) {
    const double s = std::exp(-r);
    return s / mu(s);
  };
  return adaptive_simpson(g, 0.0, r_max, rel_tol);
}

const char* to_string(OsgoodVerdict v) {
  switch (v) {
    case OsgoodVerdict::diverges:
      return "diverges";
    case OsgoodVerdict::converges:
      return "converges";
    default:
      return "inconclusive";
  }
}

OsgoodResult osgood_verdict(const Modulus& mu,
                            const std::vector<double>& deltas,
                            double rel_tol) {
  if (deltas.size() < 6)
    throw DomainError("osgood_verdict: need at least 6 deltas");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0 && deltas[i] < 1.0))
      throw DomainError("osgood_verdict: deltas must lie in (0,1)");
    if (i > 0 && !(deltas[i] < deltas[i - 1]))
      throw DomainError("osgood_verdict: deltas must strictly decrease");
  }

  OsgoodResult res;
  res.tails.reserve(deltas.size());
  for (double d : deltas) res.tails.push_back(osgood_tail(mu, d, rel_tol));

  std::vector<double> inc(res.tails.size() - 1);
  for (std::size_t i = 0; i + 1 < res.tails.size(); ++i)
    inc[i] = res.tails[i + 1] - res.tails[i];

  res.ratios.resize(inc.size() - 1);
  for (std::size_t i = 0; i + 1 < inc.size(); ++i)
    res.ratios[i] = inc[i + 1] / inc[i];

  // Extrapolate the contraction ratio. A plateau is taken at face value;
  // a monotone trend is accelerated with Aitken's delta-squared (the
  // divergent cases approach ratio 1 from below).
  const std::size_t n = res.ratios.size();
  double r_hat = res.ratios.back();
  const double d1 = res.ratios[n - 1] - res.ratios[n - 2];
  const double d0 = res.ratios[n - 2] - res.ratios[n - 3];
  if (std::fabs(d1) >= 1e-6 && d1 * d0 > 0.0 &&
      std::fabs(d1 - d0) > 1e-12) {
    const double aitken = res.ratios[n - 1] - d1 * d1 / (d1 - d0);
    r_hat = std::min(std::max(aitken, 0.0), 1.05);
  }
  res.ratio_limit = r_hat;

  if (r_hat >= 0.9)
    res.verdict = OsgoodVerdict::diverges;
  else if (r_hat <= 0.5)
    res.verdict = OsgoodVerdict::converges;
  else
    res.verdict = OsgoodVerdict::inconclusive;
  return res;
}

Modulus normalized(Modulus raw) {
  const double scale = raw.eval(1.0);
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw DomainError("normalized: mu(1) must be positive and finite");
  if (scale == 1.0) return raw;
  Modulus out;
  out.name = raw.name + "/normalized";
  out.eval = [inner = raw.eval, scale](double s) { return inner(s) / scale; };
  // the tail scales linearly under mu -> mu/mu(1)
  if (raw.analytic_tail)
    out.analytic_tail = [inner = raw.analytic_tail, scale](double d) {
      return scale * inner(d);
    };
  return out;
}

Modulus modulus_catalogue(const std::string& name) {
  if (name == "lip") {
    return Modulus{
        "lip", [](double s) { return s; },
        [](double d) { return std::log(1.0 / d); }};
  }
  if (name == "sqrt") {
    return Modulus{
        "sqrt", [](double s) { return std::sqrt(s); },
        [](double d) { return 2.0 * (1.0 - std::sqrt(d)); }};
  }
  if (name == "loglip") {
    // s(1 - log s); already 1 at s = 1
    return Modulus{
        "loglip",
        [](double s) { return s > 0.0 ? s * (1.0 - std::log(s)) : 0.0; },
        [](double d) { return std::log(1.0 - std::log(d)); }};
  }
  if (name.rfind("holder:", 0) == 0) {
    const double alpha = std::stod(name.substr(7));
    if (!(alpha > 0.0 && alpha <= 1.0))
      throw DomainError("modulus_catalogue: holder exponent must be in (0,1]");
    return Modulus{
        name, [alpha](double s) { return std::pow(s, alpha); },
        [alpha](double d) {
          if (alpha == 1.0) return std::log(1.0 / d);
          return (1.0 - std::pow(d, 1.0 - alpha)) / (1.0 - alpha);
        }};
  }
  throw DomainError("modulus_catalogue: unknown modulus '" + name + "'");
}

std::vector<std::string> modulus_catalogue_names() {
  return {"lip", "sqrt", "loglip", "holder:<alpha>"};
}

}  // namespace paraweight
