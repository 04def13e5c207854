#include "twave/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace twave {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::RejectedInput: return "rejected-input";
        case ErrorKind::DegenerateWaveSpeed: return "degenerate-wave-speed";
        case ErrorKind::SignInconsistency: return "sign-inconsistency";
        case ErrorKind::InadmissibleParameters: return "inadmissible-parameters";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::SingularLattice: return "singular-lattice";
        case ErrorKind::Inapplicable: return "inapplicable";
        case ErrorKind::CollisionSingularity: return "collision-singularity";
        case ErrorKind::CollisionProximity: return "collision-proximity";
        case ErrorKind::SingularFront: return "singular-front";
        case ErrorKind::NoSpatialFront: return "no-spatial-front";
        case ErrorKind::NotImplemented: return "not-implemented";
        case ErrorKind::Config: return "config";
    }
    return "unknown";
}

namespace {

bool all_finite(std::span<const double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

void require_finite(std::span<const double> xs, const char* what) {
    if (!all_finite(xs)) {
        throw Error(ErrorKind::RejectedInput, std::string(what) + " has non-finite components");
    }
}

}  // namespace

StackedVector::StackedVector(std::size_t p, std::size_t q) : StackedVector(p, q, std::vector<double>(p * q, 0.0)) {}

StackedVector::StackedVector(std::size_t p, std::size_t q, std::vector<double> flat)
    : p_(p), q_(q), data_(std::move(flat)) {
    if (p == 0 || q == 0) {
        throw Error(ErrorKind::RejectedInput, "stacked vector needs p >= 1 and q >= 1");
    }
    if (data_.size() != p * q) {
        throw Error(ErrorKind::RejectedInput, "stacked vector length " + std::to_string(data_.size()) +
                                                  " != p*q = " + std::to_string(p * q));
    }
    require_finite(data_, "stacked vector");
}

StackedVector StackedVector::from_blocks(std::span<const Vec3> blocks) {
    std::vector<double> flat;
    flat.reserve(3 * blocks.size());
    for (const auto& b : blocks) {
        flat.push_back(b.x);
        flat.push_back(b.y);
        flat.push_back(b.z);
    }
    return StackedVector(3, blocks.size(), std::move(flat));
}

StackedVector StackedVector::unflatten(std::span<const double> flat, std::size_t p, std::size_t q) {
    return StackedVector(p, q, std::vector<double>(flat.begin(), flat.end()));
}

std::span<const double> StackedVector::block(std::size_t j) const {
    if (j >= q_) throw Error(ErrorKind::RejectedInput, "block index out of range");
    return std::span<const double>(data_).subspan(j * p_, p_);
}

std::span<double> StackedVector::block(std::size_t j) {
    if (j >= q_) throw Error(ErrorKind::RejectedInput, "block index out of range");
    return std::span<double>(data_).subspan(j * p_, p_);
}

Vec3 StackedVector::block3(std::size_t j) const {
    if (p_ != 3) throw Error(ErrorKind::RejectedInput, "block3 requires p == 3");
    auto b = block(j);
    return {b[0], b[1], b[2]};
}

double StackedVector::norm() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

WaveParams::WaveParams(double mu, double c, std::vector<double> v, std::size_t ell, std::size_t m,
                       std::vector<double> lambda_sq, std::size_t p, std::size_t q)
    : mu_(mu), c_(c), v_(std::move(v)), ell_(ell), m_(m), lambda_sq_(std::move(lambda_sq)), p_(p), q_(q) {
    if (!std::isfinite(mu) || mu == 0.0) throw Error(ErrorKind::RejectedInput, "mu must be finite and nonzero");
    if (!std::isfinite(c)) throw Error(ErrorKind::RejectedInput, "c must be finite");
    if (ell == 0 || m == 0 || v_.size() != ell * m) {
        throw Error(ErrorKind::RejectedInput, "v must have ell*m components");
    }
    require_finite(v_, "v");
    if (p == 0 || q == 0 || lambda_sq_.size() != p * q) {
        throw Error(ErrorKind::RejectedInput, "lambda_sq must have p*q entries");
    }
    for (double l : lambda_sq_) {
        if (!std::isfinite(l) || !(l > 0.0)) {
            throw Error(ErrorKind::RejectedInput, "every lambda^2 entry must be positive");
        }
    }
}

WaveParams WaveParams::block_constant(double mu, double c, std::vector<double> v, std::size_t ell,
                                      std::size_t m, std::span<const double> block_lambda_sq,
                                      std::size_t p) {
    std::vector<double> diag;
    diag.reserve(p * block_lambda_sq.size());
    for (double l : block_lambda_sq) diag.insert(diag.end(), p, l);
    return WaveParams(mu, c, std::move(v), ell, m, std::move(diag), p, block_lambda_sq.size());
}

WaveParams WaveParams::spatial3(double mu, double c, const Vec3& v, std::span<const double> block_lambda_sq) {
    return block_constant(mu, c, {v.x, v.y, v.z}, 3, 1, block_lambda_sq, 3);
}

double WaveParams::block_lambda_sq(std::size_t j) const {
    if (j >= q_) throw Error(ErrorKind::RejectedInput, "block index out of range");
    const double first = lambda_sq_[j * p_];
    for (std::size_t k = 1; k < p_; ++k) {
        if (lambda_sq_[j * p_ + k] != first) {
            throw Error(ErrorKind::RejectedInput, "lambda^2 is not constant on block " + std::to_string(j));
        }
    }
    return first;
}

double WaveParams::v_norm_sq() const {
    double s = 0.0;
    for (double x : v_) s += x * x;
    return s;
}

Vec3 WaveParams::v3() const {
    if (v_.size() != 3) throw Error(ErrorKind::RejectedInput, "expected a 3-dimensional v");
    return {v_[0], v_[1], v_[2]};
}

double WaveParams::wave_speed_factor(std::size_t block) const {
    return mu_ * mu_ - block_lambda_sq(block) * v_norm_sq();
}

BodyConfig::BodyConfig(double G_, double m1_, double m2_) : G(G_), m1(m1_), m2(m2_) {
    if (!(std::isfinite(G) && G > 0.0)) throw Error(ErrorKind::RejectedInput, "G must be positive");
    if (!(std::isfinite(m1) && m1 > 0.0)) throw Error(ErrorKind::RejectedInput, "m1 must be positive");
    if (!(std::isfinite(m2) && m2 > 0.0)) throw Error(ErrorKind::RejectedInput, "m2 must be positive");
}

double compute_wave_argument(const WaveParams& params, std::span<const double> r_tilde, double t) {
    const auto v = params.v();
    if (r_tilde.size() != v.size()) {
        throw Error(ErrorKind::RejectedInput, "r_tilde has " + std::to_string(r_tilde.size()) +
                                                  " components, v has " + std::to_string(v.size()));
    }
    double w = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) w += v[i] * r_tilde[i];
    return w - params.mu() * t + params.c();
}

double compute_wave_argument(const WaveParams& params, const Vec3& r_tilde, double t) {
    const double r[3] = {r_tilde.x, r_tilde.y, r_tilde.z};
    return compute_wave_argument(params, std::span<const double>(r, 3), t);
}

std::pair<std::vector<double>, double> wave_argument_gradient(const WaveParams& params) {
    const auto v = params.v();
    return {std::vector<double>(v.begin(), v.end()), -params.mu()};
}

}  // namespace twave
