#pragma once

// Closed-form power-law traveling waves Psi_j(w) = alpha_j |w|^(2/3) S_j for
// the relative two-body system, the two-body pair and the Newtonian
// collision/ejection orbit.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "twave/core_model.hpp"

namespace twave {

enum class Provenance {
    Relative2Body,  // one block, Psi_12 = r1 - r2
    TwoBodyPair,    // two blocks, Psi_1 = -(theta1/theta2) Psi_2
    NcmeCollision,  // two blocks, w = t
};

const char* to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

/// Open interval (a, b) of the wave argument. Never contains 0.
struct WDomain {
    double a = 0.0;
    double b = std::numeric_limits<double>::infinity();

    bool contains(double w) const { return w > a && w < b; }
};

struct PowerLawBlock {
    double alpha = 1.0;
    Vec3 S;

    Vec3 coefficient() const { return alpha * S; }
};

struct ThetaPair {
    double theta1;
    double theta2;

    double sum() const { return theta1 + theta2; }
    /// theta1 + theta2 > 0, the condition under which the pair exists.
    bool admissible() const { return sum() > 0.0; }
};

class PowerLawSolution {
public:
    static constexpr double exponent = 2.0 / 3.0;

    PowerLawSolution(Provenance provenance, std::vector<PowerLawBlock> blocks, WDomain domain = {},
                     std::optional<ThetaPair> thetas = std::nullopt);

    Provenance provenance() const noexcept { return provenance_; }
    const std::vector<PowerLawBlock>& blocks() const noexcept { return blocks_; }
    std::size_t q() const noexcept { return blocks_.size(); }
    const WDomain& domain() const noexcept { return domain_; }
    const std::optional<ThetaPair>& thetas() const noexcept { return thetas_; }

    /// alpha_j S_j.
    Vec3 coefficient(std::size_t j) const;

    /// Same solution restricted to another admissible interval.
    PowerLawSolution with_domain(WDomain domain) const;

private:
    Provenance provenance_;
    std::vector<PowerLawBlock> blocks_;
    WDomain domain_;
    std::optional<ThetaPair> thetas_;
};

/// Real positive cube root: exp(log(x)/3) followed by one Newton step.
double positive_cube_root(double x);

ThetaPair compute_thetas(const BodyConfig& body, const WaveParams& params);

/// Relative system. Requires mu^2 - lambda_12^2 |v|^2 > 0.
PowerLawSolution relative_2body_solution(const BodyConfig& body, const WaveParams& params, const Vec3& U);

/// Two-body pair. Requires theta1 + theta2 > 0.
PowerLawSolution two_body_pair_solution(const BodyConfig& body, const WaveParams& params, const Vec3& U);

/// r1(t) = -g m2 M^(-2/3) t^(2/3) U, r2(t) = +g m1 M^(-2/3) t^(2/3) U with
/// g = (9G/2)^(1/3). Center of mass stays at the origin.
PowerLawSolution ncme_collision_solution(const BodyConfig& body, const Vec3& U);

/// (9G/2)^(1/3).
double collision_gamma(double G);

StackedVector evaluate(const PowerLawSolution& sol, double w);
StackedVector d1(const PowerLawSolution& sol, double w);
StackedVector d2(const PowerLawSolution& sol, double w);

}  // namespace twave
