#include "twave/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace twave {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

Vec3 require_unit(const Vec3& U) {
    if (!is_finite(U) || std::abs(norm(U) - 1.0) > kUnitTol) {
        throw Error(ErrorKind::RejectedInput, "direction U must be a unit vector");
    }
    return U;
}

// mu^2 - lambda_j^2 |v|^2, with zero detection relative to the two terms.
double speed_factor_checked(const WaveParams& params, std::size_t block) {
    const double mu2 = params.mu() * params.mu();
    const double lv2 = params.block_lambda_sq(block) * params.v_norm_sq();
    const double k = mu2 - lv2;
    if (std::abs(k) <= 8.0 * kEps * std::max(mu2, lv2)) {
        throw Error(ErrorKind::DegenerateWaveSpeed,
                    "degenerate wave speed: mu^2 == lambda_" + std::to_string(block + 1) + "^2 |v|^2");
    }
    return k;
}

void require_3d(const WaveParams& params, std::size_t q) {
    if (params.space_dim() != 3 || params.p() != 3 || params.q() != q) {
        throw Error(ErrorKind::RejectedInput,
                    "expected 3-dimensional v and Psi with " + std::to_string(q) + " block(s)");
    }
}

// |w|^(2/3) and its derivatives, even in w.
double abs_pow_two_thirds(double w) { return std::cbrt(w * w); }

void require_in_domain(const PowerLawSolution& sol, double w) {
    if (w == 0.0 || !std::isfinite(w)) {
        throw Error(ErrorKind::Domain, "w = 0 is the collision singularity");
    }
    if (!sol.domain().contains(w)) {
        throw Error(ErrorKind::Domain, "w = " + std::to_string(w) + " outside the solution domain");
    }
}

StackedVector scaled_blocks(const PowerLawSolution& sol, double factor) {
    std::vector<Vec3> out;
    out.reserve(sol.q());
    for (std::size_t j = 0; j < sol.q(); ++j) out.push_back(factor * sol.coefficient(j));
    return StackedVector::from_blocks(out);
}

}  // namespace

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::Relative2Body: return "rel2body";
        case Provenance::TwoBodyPair: return "twobody";
        case Provenance::NcmeCollision: return "ncme-collision";
    }
    return "unknown";
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "rel2body") return Provenance::Relative2Body;
    if (s == "twobody") return Provenance::TwoBodyPair;
    if (s == "ncme-collision") return Provenance::NcmeCollision;
    throw Error(ErrorKind::RejectedInput, "unknown provenance '" + s + "'");
}

PowerLawSolution::PowerLawSolution(Provenance provenance, std::vector<PowerLawBlock> blocks, WDomain domain,
                                   std::optional<ThetaPair> thetas)
    : provenance_(provenance), blocks_(std::move(blocks)), domain_(domain), thetas_(thetas) {
    const std::size_t expected = provenance == Provenance::Relative2Body ? 1 : 2;
    if (blocks_.size() != expected) {
        throw Error(ErrorKind::RejectedInput, std::string(to_string(provenance)) + " solution needs " +
                                                  std::to_string(expected) + " block(s)");
    }
    for (const auto& b : blocks_) {
        const Vec3 s = b.coefficient();
        if (!is_finite(s) || !std::isfinite(b.alpha) || s == Vec3{}) {
            throw Error(ErrorKind::RejectedInput, "every block coefficient must be finite and nonzero");
        }
    }
    if (blocks_.size() == 2 && blocks_[0].coefficient() == blocks_[1].coefficient()) {
        throw Error(ErrorKind::RejectedInput, "the two block coefficients must be distinct");
    }
    if (std::isnan(domain_.a) || std::isnan(domain_.b) || !(domain_.a < domain_.b)) {
        throw Error(ErrorKind::RejectedInput, "domain must be an interval (a, b) with a < b");
    }
    if (domain_.a < 0.0 && domain_.b > 0.0) {
        throw Error(ErrorKind::RejectedInput, "domain must not contain w = 0");
    }
}

Vec3 PowerLawSolution::coefficient(std::size_t j) const {
    if (j >= blocks_.size()) throw Error(ErrorKind::RejectedInput, "block index out of range");
    return blocks_[j].coefficient();
}

PowerLawSolution PowerLawSolution::with_domain(WDomain domain) const {
    return PowerLawSolution(provenance_, blocks_, domain, thetas_);
}

double positive_cube_root(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(ErrorKind::RejectedInput, "cube root argument must be positive and finite");
    }
    double y = std::exp(std::log(x) / 3.0);
    y -= (y * y * y - x) / (3.0 * y * y);
    return y;
}

double collision_gamma(double G) { return positive_cube_root(4.5 * G); }

ThetaPair compute_thetas(const BodyConfig& body, const WaveParams& params) {
    if (params.q() != 2) throw Error(ErrorKind::RejectedInput, "thetas need a two-block lambda^2");
    const double k1 = speed_factor_checked(params, 0);
    const double k2 = speed_factor_checked(params, 1);
    return {body.G * body.m2 / k1, body.G * body.m1 / k2};
}

PowerLawSolution relative_2body_solution(const BodyConfig& body, const WaveParams& params, const Vec3& U) {
    require_3d(params, 1);
    require_unit(U);
    const double k = speed_factor_checked(params, 0);
    if (k < 0.0) {
        throw Error(ErrorKind::SignInconsistency,
                    "sign inconsistency: mu^2 - lambda_12^2 |v|^2 < 0 admits no power-law solution");
    }
    const double s_norm = positive_cube_root(9.0 * body.G * body.total_mass() / (2.0 * std::abs(k)));
    return PowerLawSolution(Provenance::Relative2Body, {{1.0, s_norm * U}});
}

PowerLawSolution two_body_pair_solution(const BodyConfig& body, const WaveParams& params, const Vec3& U) {
    require_3d(params, 2);
    require_unit(U);
    const ThetaPair th = compute_thetas(body, params);
    if (!th.admissible()) {
        throw Error(ErrorKind::InadmissibleParameters,
                    "theta1+theta2 > 0 required (theta1 = " + std::to_string(th.theta1) +
                        ", theta2 = " + std::to_string(th.theta2) + ")");
    }
    const double ratio = th.theta1 / th.theta2;
    // |S1 - S2| = |1 + theta1/theta2| |S2| = (9 (theta1 + theta2) / 2)^(1/3)
    const double diff_norm = positive_cube_root(4.5 * th.sum());
    const double s2_norm = diff_norm / std::abs(1.0 + ratio);
    const Vec3 S2 = s2_norm * U;
    return PowerLawSolution(Provenance::TwoBodyPair, {{-ratio, S2}, {1.0, S2}}, {}, th);
}

PowerLawSolution ncme_collision_solution(const BodyConfig& body, const Vec3& U) {
    require_unit(U);
    const double scale = collision_gamma(body.G) / positive_cube_root(body.total_mass() * body.total_mass());
    return PowerLawSolution(Provenance::NcmeCollision,
                            {{1.0, -(scale * body.m2) * U}, {1.0, (scale * body.m1) * U}}, {},
                            ThetaPair{body.G * body.m2, body.G * body.m1});
}

StackedVector evaluate(const PowerLawSolution& sol, double w) {
    require_in_domain(sol, w);
    return scaled_blocks(sol, abs_pow_two_thirds(w));
}

StackedVector d1(const PowerLawSolution& sol, double w) {
    require_in_domain(sol, w);
    const double a = abs_pow_two_thirds(w);
    return scaled_blocks(sol, (2.0 / 3.0) * w / (a * a));
}

StackedVector d2(const PowerLawSolution& sol, double w) {
    require_in_domain(sol, w);
    const double a = abs_pow_two_thirds(w);
    return scaled_blocks(sol, -(2.0 / 9.0) / (a * a));
}

}  // namespace twave
