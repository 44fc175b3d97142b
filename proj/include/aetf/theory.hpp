#pragma once

#include <functional>

namespace aetf {

enum class LawKind { marchenko_pastur, wachter_manova };

/// Limiting eigenvalue law of a scaled Gram: a continuous density on
/// [lambda_minus, lambda_plus] plus an optional point mass.
struct SpectralLaw {
    LawKind kind;
    double beta;           // K/M
    double gamma;          // M/N, 1 when irrelevant
    double lambda_minus;
    double lambda_plus;
    double atom_mass;      // >= 0
    double atom_location;

    /// Continuous part only; 0 outside the support.
    double density(double x) const;
};

/// Marchenko-Pastur with ratio beta: edges (1 +- sqrt(beta))^2. For beta > 1
/// the law carries mass 1 - 1/beta at 0.
SpectralLaw mp_law(double beta);

/// Wachter-Manova with beta = K/M in (0, 1], gamma = M/N: edges
/// (sqrt(beta(1-gamma)) +- sqrt(1-beta*gamma))^2, density with the extra
/// 1/(1-gamma*x) factor, and mass (1 + 1/beta - 1/(beta*gamma))+ at 1/gamma.
/// The oversubscribed aspect beta > 1 is rejected: it would need a second
/// point mass at 0 that this single-atom law does not carry.
SpectralLaw manova_law(double beta, double gamma);

/// Integral of g against the continuous part. The substitution
/// x = lambda_minus + (lambda_plus - lambda_minus) sin^2(theta) removes the
/// inverse-square-root edge singularities; absolute error well under 1e-6.
/// A degenerate support (lambda_minus = lambda_plus) is treated as a point
/// mass of weight 1 - atom_mass.
double law_integral(const SpectralLaw& law, const std::function<double(double)>& g);

double law_total_mass(const SpectralLaw& law);
double law_mean(const SpectralLaw& law);

/// P(X <= x), atom included.
double law_cdf(const SpectralLaw& law, double x);

/// E[log2(1 + snr X)] in bits.
double law_capacity_per_user(const SpectralLaw& law, double snr);

/// E[log2(snr X)] in bits; -inf when the law carries mass at 0.
double law_practical_capacity_per_user(const SpectralLaw& law, double snr);

}  // namespace aetf
