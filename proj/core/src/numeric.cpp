#include "charzero/numeric.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace charzero::numeric {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

cplx lanczos_log_gamma(cplx z) {
  // log Gamma(z) for Re z >= 1/2.
  z -= 1.0;
  cplx series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(kTwoPi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_rule: n must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(n));
  return *slot;
}

cplx log_gamma(cplx z) {
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  if (z.real() > -10.0) {
    // log Gamma(z) = log Gamma(z + k) - sum log(z + j)
    cplx shift = 0.0;
    cplx w = z;
    while (w.real() < 0.5) {
      shift += std::log(w);
      w += 1.0;
    }
    return lanczos_log_gamma(w) - shift;
  }
  // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
  return std::log(kPi) - std::log(std::sin(kPi * z)) - lanczos_log_gamma(1.0 - z);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

double bernoulli(int n) {
  static constexpr std::array<double, 31> kTable = {
      1.0,
      -0.5,
      1.0 / 6.0,
      0.0,
      -1.0 / 30.0,
      0.0,
      1.0 / 42.0,
      0.0,
      -1.0 / 30.0,
      0.0,
      5.0 / 66.0,
      0.0,
      -691.0 / 2730.0,
      0.0,
      7.0 / 6.0,
      0.0,
      -3617.0 / 510.0,
      0.0,
      43867.0 / 798.0,
      0.0,
      -174611.0 / 330.0,
      0.0,
      854513.0 / 138.0,
      0.0,
      -236364091.0 / 2730.0,
      0.0,
      8553103.0 / 6.0,
      0.0,
      -23749461029.0 / 870.0,
      0.0,
      8615841276005.0 / 14322.0};
  if (n < 0 || n > 30) throw std::out_of_range("bernoulli: index outside 0..30");
  return kTable[static_cast<std::size_t>(n)];
}

}  // namespace charzero::numeric
