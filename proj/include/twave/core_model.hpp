#pragma once

// Shared data model: block-stacked vectors, traveling-wave parameters and the
// two-body configuration, plus the affine wave argument w = v.r - mu t + c.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "twave/error.hpp"
#include "twave/vec3.hpp"

namespace twave {

/// An element of R^(p*q) stored as q consecutive blocks of dimension p.
class StackedVector {
public:
    StackedVector(std::size_t p, std::size_t q);
    StackedVector(std::size_t p, std::size_t q, std::vector<double> flat);

    static StackedVector from_blocks(std::span<const Vec3> blocks);
    static StackedVector unflatten(std::span<const double> flat, std::size_t p, std::size_t q);

    std::size_t p() const noexcept { return p_; }
    std::size_t q() const noexcept { return q_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::span<const double> block(std::size_t j) const;
    std::span<double> block(std::size_t j);
    /// Requires p == 3.
    Vec3 block3(std::size_t j) const;

    const std::vector<double>& flatten() const noexcept { return data_; }

    double operator[](std::size_t i) const { return data_[i]; }
    double& operator[](std::size_t i) { return data_[i]; }

    double norm() const;

    friend bool operator==(const StackedVector&, const StackedVector&) = default;

private:
    std::size_t p_;
    std::size_t q_;
    std::vector<double> data_;
};

/// Traveling-wave data: w = v.r - mu t + c, and the diagonal of lambda^2
/// acting on a Psi with q blocks of dimension p.
class WaveParams {
public:
    /// v is flat with m blocks of dimension ell; lambda_sq has one entry per
    /// component of Psi (p*q entries).
    WaveParams(double mu, double c, std::vector<double> v, std::size_t ell, std::size_t m,
               std::vector<double> lambda_sq, std::size_t p, std::size_t q);

    /// One lambda_j^2 per Psi block, repeated over the p components.
    static WaveParams block_constant(double mu, double c, std::vector<double> v,
                                     std::size_t ell, std::size_t m,
                                     std::span<const double> block_lambda_sq, std::size_t p);

    /// The common case ell = 3, m = 1, p = 3.
    static WaveParams spatial3(double mu, double c, const Vec3& v,
                               std::span<const double> block_lambda_sq);

    double mu() const noexcept { return mu_; }
    double c() const noexcept { return c_; }
    std::span<const double> v() const noexcept { return v_; }
    std::size_t ell() const noexcept { return ell_; }
    std::size_t m() const noexcept { return m_; }
    std::size_t space_dim() const noexcept { return v_.size(); }
    std::size_t p() const noexcept { return p_; }
    std::size_t q() const noexcept { return q_; }
    std::span<const double> lambda_sq() const noexcept { return lambda_sq_; }

    /// lambda^2 of block j; throws if the block is not constant.
    double block_lambda_sq(std::size_t j) const;
    double v_norm_sq() const;
    /// Requires space_dim() == 3.
    Vec3 v3() const;

    /// mu^2 - lambda_j^2 |v|^2, the coefficient of d^2 Psi_j / dw^2.
    double wave_speed_factor(std::size_t block) const;

private:
    double mu_;
    double c_;
    std::vector<double> v_;
    std::size_t ell_;
    std::size_t m_;
    std::vector<double> lambda_sq_;
    std::size_t p_;
    std::size_t q_;
};

struct BodyConfig {
    double G;
    double m1;
    double m2;

    BodyConfig(double G, double m1, double m2);

    double total_mass() const noexcept { return m1 + m2; }
};

double compute_wave_argument(const WaveParams& params, std::span<const double> r_tilde, double t);
double compute_wave_argument(const WaveParams& params, const Vec3& r_tilde, double t);

/// (dw/dr, dw/dt) = (v, -mu). Independent of the evaluation point.
std::pair<std::vector<double>, double> wave_argument_gradient(const WaveParams& params);

}  // namespace twave
