#include "aetf/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aetf {

namespace {

// Standard adaptive Simpson with Richardson correction. The depth cap bounds
// work near logarithmic singularities; leftover error there is orders of
// magnitude below the 1e-6 contract.
double simpson_step(const std::function<double(double)>& h, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = h(lm);
    const double frm = h(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(h, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(h, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& h, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double fa = h(a);
    const double fb = h(b);
    const double m = 0.5 * (a + b);
    const double fm = h(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(h, a, b, fa, fm, fb, whole, tol, 60);
}

// Integrand in theta over the continuous support. The sin^2/x ratio is taken
// exactly when the lower edge sits at 0, which also tames log singularities
// of g at the origin.
double theta_integrand(const SpectralLaw& law, const std::function<double(double)>& g,
                       double theta) {
    const double delta = law.lambda_plus - law.lambda_minus;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double x = law.lambda_minus + delta * s * s;
    const double ratio = law.lambda_minus == 0.0 ? 1.0 : delta * s * s / x;
    double denom = std::numbers::pi * law.beta;
    if (law.kind == LawKind::wachter_manova) denom *= 1.0 - law.gamma * x;
    return g(x) * delta * c * c * ratio / denom;
}

// Continuous-part integral with an explicit upper limit in theta.
double integral_to_theta(const SpectralLaw& law, const std::function<double(double)>& g,
                         double theta_hi) {
    auto h = [&](double theta) { return theta_integrand(law, g, theta); };
    return integrate(h, 1e-10, theta_hi, 1e-9);
}

}  // namespace

double SpectralLaw::density(double x) const {
    if (x < lambda_minus || x > lambda_plus) return 0.0;
    const double disc = (lambda_plus - x) * (x - lambda_minus);
    if (disc <= 0.0 || x == 0.0) return 0.0;
    double denom = 2.0 * std::numbers::pi * beta * x;
    if (kind == LawKind::wachter_manova) denom *= 1.0 - gamma * x;
    return std::sqrt(disc) / denom;
}

SpectralLaw mp_law(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("mp_law: beta must be positive");
    const double sb = std::sqrt(beta);
    const double atom = beta > 1.0 ? 1.0 - 1.0 / beta : 0.0;
    return SpectralLaw{LawKind::marchenko_pastur, beta, 1.0,
                       (1.0 - sb) * (1.0 - sb), (1.0 + sb) * (1.0 + sb), atom, 0.0};
}

SpectralLaw manova_law(double beta, double gamma) {
    // beta > 1 would add a rank-deficiency point mass at 0 on top of the
    // 1/gamma atom; the law here models a single atom, so the oversubscribed
    // aspect is rejected rather than silently losing mass.
    if (!(beta > 0.0) || beta > 1.0 + 1e-12)
        throw std::invalid_argument("manova_law: beta must lie in (0, 1]");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("manova_law: gamma must lie in (0, 1)");
    if (beta * gamma > 1.0 + 1e-12)
        throw std::invalid_argument("manova_law: beta * gamma must not exceed 1");
    const double a = std::sqrt(beta * (1.0 - gamma));
    const double b = std::sqrt(std::max(0.0, 1.0 - beta * gamma));
    const double atom = std::max(0.0, 1.0 + 1.0 / beta - 1.0 / (beta * gamma));
    return SpectralLaw{LawKind::wachter_manova, beta, gamma,
                       (a - b) * (a - b), (a + b) * (a + b), atom, 1.0 / gamma};
}

double law_integral(const SpectralLaw& law, const std::function<double(double)>& g) {
    if (law.lambda_plus - law.lambda_minus <= 0.0)
        return (1.0 - law.atom_mass) * g(law.lambda_minus);
    return integral_to_theta(law, g, std::numbers::pi / 2.0);
}

double law_total_mass(const SpectralLaw& law) {
    return law_integral(law, [](double) { return 1.0; }) + law.atom_mass;
}

double law_mean(const SpectralLaw& law) {
    return law_integral(law, [](double x) { return x; }) + law.atom_mass * law.atom_location;
}

double law_cdf(const SpectralLaw& law, double x) {
    double mass = 0.0;
    const double delta = law.lambda_plus - law.lambda_minus;
    if (delta <= 0.0) {
        if (x >= law.lambda_minus) mass += 1.0 - law.atom_mass;
    } else if (x >= law.lambda_plus) {
        mass += law_integral(law, [](double) { return 1.0; });
    } else if (x > law.lambda_minus) {
        const double theta = std::asin(std::sqrt((x - law.lambda_minus) / delta));
        mass += integral_to_theta(law, [](double) { return 1.0; }, theta);
    }
    if (law.atom_mass > 0.0 && x >= law.atom_location) mass += law.atom_mass;
    return std::min(mass, 1.0);
}

double law_capacity_per_user(const SpectralLaw& law, double snr) {
    if (!(snr > 0.0)) throw std::invalid_argument("law_capacity_per_user: snr must be positive");
    double bits = law_integral(law, [&](double x) { return std::log2(1.0 + snr * x); });
    if (law.atom_mass > 0.0) bits += law.atom_mass * std::log2(1.0 + snr * law.atom_location);
    return bits;
}

double law_practical_capacity_per_user(const SpectralLaw& law, double snr) {
    if (!(snr > 0.0))
        throw std::invalid_argument("law_practical_capacity_per_user: snr must be positive");
    if (law.atom_mass > 0.0 && law.atom_location == 0.0)
        return -std::numeric_limits<double>::infinity();
    double bits = law_integral(law, [&](double x) { return std::log2(snr * x); });
    if (law.atom_mass > 0.0) bits += law.atom_mass * std::log2(snr * law.atom_location);
    return bits;
}

}  // namespace aetf
