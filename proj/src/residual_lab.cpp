#include "twave/residual_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "twave/nbody_reference.hpp"

namespace twave {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Order is only estimated when the finest residual clears rounding noise by this factor.
constexpr double kRoundoffClearance = 10.0;

double vec_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

struct PointTerms {
    std::vector<double> a;  // left-hand side
    std::vector<double> b;  // right-hand side
};

using Combiner = std::function<PointTerms(const StackedVector& center, const std::vector<double>& tt,
                                          const std::vector<double>& lap)>;

struct PointResult {
    double abs = 0.0;
    double rel = 0.0;
    double psi_norm = 0.0;
};

struct Accum {
    double max_abs = 0.0;
    double max_rel = 0.0;
    double max_psi = 0.0;
};

void validate_lattice(const Lattice& lat, const WaveParams& params) {
    const std::size_t d = params.space_dim();
    if (lat.r_lo.size() != d || lat.r_hi.size() != d) {
        throw Error(ErrorKind::RejectedInput, "lattice box dimension must match v");
    }
    if (lat.points_per_axis == 0) throw Error(ErrorKind::RejectedInput, "lattice needs at least one point per axis");
    for (std::size_t i = 0; i < d; ++i) {
        if (!(lat.r_lo[i] <= lat.r_hi[i])) throw Error(ErrorKind::RejectedInput, "lattice box has lo > hi");
    }
    if (!(lat.t_lo <= lat.t_hi)) throw Error(ErrorKind::RejectedInput, "lattice time range has lo > hi");
}

void validate_spacings(std::span<const double> spacings) {
    if (spacings.empty()) throw Error(ErrorKind::RejectedInput, "at least one spacing is required");
    for (double h : spacings) {
        if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::RejectedInput, "spacings must be positive");
    }
}

// Range of the affine w over the box.
std::pair<double, double> wave_argument_range(const Lattice& lat, const WaveParams& params) {
    const auto v = params.v();
    double lo = params.c();
    double hi = params.c();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = v[i] * lat.r_lo[i];
        const double b = v[i] * lat.r_hi[i];
        lo += std::min(a, b);
        hi += std::max(a, b);
    }
    const double ta = -params.mu() * lat.t_lo;
    const double tb = -params.mu() * lat.t_hi;
    lo += std::min(ta, tb);
    hi += std::max(ta, tb);
    return {lo, hi};
}

void guard_hyperplane(const Lattice& lat, const WaveParams& params, double h_max) {
    if (!lat.guard_singular_hyperplane) return;
    const double margin = 10.0 * h_max * (std::sqrt(params.v_norm_sq()) + std::abs(params.mu()));
    const auto [lo, hi] = wave_argument_range(lat, params);
    if (!(lo >= margin || hi <= -margin)) {
        std::ostringstream os;
        os << "lattice w-range [" << lo << ", " << hi << "] comes within " << margin << " of w = 0";
        throw Error(ErrorKind::SingularLattice, os.str());
    }
}

double axis_coord(double lo, double hi, std::size_t n, std::size_t k) {
    if (n == 1) return 0.5 * (lo + hi);
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

PointResult eval_point(const Field& field, const Combiner& combine, std::vector<double> r, double t, double h) {
    const StackedVector center = field(r, t);
    const auto& c = center.flatten();
    const std::size_t n = c.size();
    const double inv_h2 = 1.0 / (h * h);

    std::vector<double> tt(n);
    {
        const auto fp = field(r, t + h);
        const auto fm = field(r, t - h);
        for (std::size_t k = 0; k < n; ++k) tt[k] = (fp[k] - 2.0 * c[k] + fm[k]) * inv_h2;
    }
    std::vector<double> lap(n, 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double xi = r[i];
        r[i] = xi + h;
        const auto fp = field(r, t);
        r[i] = xi - h;
        const auto fm = field(r, t);
        r[i] = xi;
        for (std::size_t k = 0; k < n; ++k) lap[k] += (fp[k] - 2.0 * c[k] + fm[k]) * inv_h2;
    }

    const PointTerms terms = combine(center, tt, lap);
    std::vector<double> res(n);
    for (std::size_t k = 0; k < n; ++k) res[k] = terms.a[k] - terms.b[k];
    PointResult out;
    out.abs = vec_norm(res);
    out.rel = out.abs / std::max({vec_norm(terms.a), vec_norm(terms.b), kTiny});
    out.psi_norm = center.norm();
    return out;
}

Accum sweep_lattice(const Field& field, const Combiner& combine, const Lattice& lat, double h) {
    const std::size_t d = lat.r_lo.size();
    const std::size_t n = lat.points_per_axis;
    const std::size_t total = lat.point_count();

    auto run_range = [&](std::size_t begin, std::size_t end) {
        Accum acc;
        std::vector<double> r(d);
        for (std::size_t idx = begin; idx < end; ++idx) {
            std::size_t rem = idx;
            for (std::size_t i = 0; i < d; ++i) {
                r[i] = axis_coord(lat.r_lo[i], lat.r_hi[i], n, rem % n);
                rem /= n;
            }
            const double t = axis_coord(lat.t_lo, lat.t_hi, n, rem % n);
            const PointResult p = eval_point(field, combine, r, t, h);
            acc.max_abs = std::max(acc.max_abs, p.abs);
            acc.max_rel = std::max(acc.max_rel, p.rel);
            acc.max_psi = std::max(acc.max_psi, p.psi_norm);
        }
        return acc;
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(lat.threads, static_cast<unsigned>(total)));
    if (threads == 1) return run_range(0, total);

    // Max is order-independent, so the partition does not affect the result.
    std::vector<Accum> parts(threads);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned k = 0; k < threads; ++k) {
        pool.emplace_back([&, k] {
            try {
                const std::size_t b = std::min(total, k * chunk);
                const std::size_t e = std::min(total, b + chunk);
                parts[k] = run_range(b, e);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    Accum acc;
    for (const auto& p : parts) {
        acc.max_abs = std::max(acc.max_abs, p.max_abs);
        acc.max_rel = std::max(acc.max_rel, p.max_rel);
        acc.max_psi = std::max(acc.max_psi, p.max_psi);
    }
    return acc;
}

std::string describe_lattice(const Lattice& lat, std::span<const double> spacings) {
    std::ostringstream os;
    os.precision(17);
    os << "lattice r in [";
    for (std::size_t i = 0; i < lat.r_lo.size(); ++i) {
        os << (i ? ", " : "") << lat.r_lo[i] << ".." << lat.r_hi[i];
    }
    os << "], t in [" << lat.t_lo << ", " << lat.t_hi << "], " << lat.points_per_axis << " points/axis, h = {";
    for (std::size_t i = 0; i < spacings.size(); ++i) os << (i ? ", " : "") << spacings[i];
    os << "}";
    return os.str();
}

// weight: sum of |coefficients| multiplying the [1, -2, 1] stencils.
ResidualReport lattice_report(EquationId id, const Field& field, const Combiner& combine, const Lattice& lat,
                              std::span<const double> spacings, double stencil_weight) {
    ResidualReport rep;
    rep.equation_id = id;
    rep.grid = describe_lattice(lat, spacings);
    rep.sample_count = lat.point_count();
    for (double h : spacings) {
        const Accum acc = sweep_lattice(field, combine, lat, h);
        rep.levels.push_back({h, acc.max_abs, acc.max_rel, 4.0 * kEps * acc.max_psi * stencil_weight / (h * h)});
    }
    const auto& last = rep.levels.back();
    rep.max_abs_residual = last.max_abs;
    rep.max_rel_residual = last.max_rel;
    if (rep.levels.size() >= 2) {
        const auto& prev = rep.levels[rep.levels.size() - 2];
        if (last.max_abs > kRoundoffClearance * last.roundoff_floor && prev.max_abs > 0.0 && prev.h != last.h) {
            rep.estimated_order = std::log(prev.max_abs / last.max_abs) / std::log(prev.h / last.h);
        }
    }
    return rep;
}

}  // namespace

const char* to_string(EquationId id) {
    switch (id) {
        case EquationId::CompanionOde: return "companion-ode";
        case EquationId::CompanionPde: return "companion-pde";
        case EquationId::LinearWave: return "linear-wave";
        case EquationId::NcmeOde: return "ncme-ode";
    }
    return "unknown";
}

bool residual_at_roundoff(const ResidualReport& rep) {
    if (rep.levels.size() < 2) return false;
    const auto& last = rep.levels.back();
    return last.max_abs <= kRoundoffClearance * last.roundoff_floor;
}

std::size_t Lattice::point_count() const {
    std::size_t total = 1;
    for (std::size_t i = 0; i < r_lo.size() + 1; ++i) total *= points_per_axis;
    return total;
}

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {a};
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
    g.back() = b;
    return g;
}

WaveParams newtonian_time_params(std::size_t q) {
    const std::vector<double> ones(q, 1.0);
    return WaveParams::spatial3(-1.0, 0.0, Vec3{}, ones);
}

ForceField gravity_force(Provenance provenance, const BodyConfig& body) {
    if (provenance == Provenance::Relative2Body) {
        return [body](const StackedVector& psi) {
            const Vec3 a = relative_rhs(psi.block3(0), body);
            return StackedVector::from_blocks(std::span<const Vec3>(&a, 1));
        };
    }
    return [body](const StackedVector& psi) {
        const auto a = ncme_rhs(psi.block3(0), psi.block3(1), body);
        return StackedVector::from_blocks(a);
    };
}

Field traveling_field(const PowerLawSolution& sol, const WaveParams& params) {
    return [sol, params](std::span<const double> r, double t) {
        return evaluate(sol, compute_wave_argument(params, r, t));
    };
}

ResidualReport ode_residual(const PowerLawSolution& sol, const BodyConfig& body, const WaveParams& params,
                            std::span<const double> w_grid) {
    if (params.q() != sol.q() || params.p() != 3) {
        throw Error(ErrorKind::RejectedInput, "wave parameters do not match the solution's block layout");
    }
    if (w_grid.empty()) throw Error(ErrorKind::RejectedInput, "empty w grid");
    const ForceField force = gravity_force(sol.provenance(), body);
    std::vector<double> k(sol.q());
    for (std::size_t j = 0; j < sol.q(); ++j) k[j] = params.wave_speed_factor(j);

    ResidualReport rep;
    rep.equation_id = sol.provenance() == Provenance::NcmeCollision ? EquationId::NcmeOde : EquationId::CompanionOde;
    rep.sample_count = w_grid.size();
    rep.block_max_rel.assign(sol.q(), 0.0);
    {
        std::ostringstream os;
        os.precision(17);
        os << "w-grid [" << w_grid.front() << ", " << w_grid.back() << "], " << w_grid.size() << " points";
        rep.grid = os.str();
    }

    for (double w : w_grid) {
        const StackedVector psi = evaluate(sol, w);
        const StackedVector psi2 = d2(sol, w);
        const StackedVector f = force(psi);
        for (std::size_t j = 0; j < sol.q(); ++j) {
            const Vec3 lhs = k[j] * psi2.block3(j);
            const Vec3 rhs = f.block3(j);
            const double abs = norm(lhs - rhs);
            const double rel = abs / std::max({norm(lhs), norm(rhs), kTiny});
            rep.max_abs_residual = std::max(rep.max_abs_residual, abs);
            rep.max_rel_residual = std::max(rep.max_rel_residual, rel);
            rep.block_max_rel[j] = std::max(rep.block_max_rel[j], rel);
        }
    }
    return rep;
}

ResidualReport companion_pde_residual(const Field& field, const WaveParams& params, const Lattice& lattice,
                                      std::span<const double> spacings, const ForceField& force) {
    validate_lattice(lattice, params);
    validate_spacings(spacings);
    guard_hyperplane(lattice, params, *std::max_element(spacings.begin(), spacings.end()));

    const auto lsq = params.lambda_sq();
    const std::vector<double> lambda_sq(lsq.begin(), lsq.end());
    const double lambda_max = *std::max_element(lambda_sq.begin(), lambda_sq.end());
    Combiner combine = [lambda_sq, force](const StackedVector& center, const std::vector<double>& tt,
                                          const std::vector<double>& lap) {
        if (center.size() != lambda_sq.size()) {
            throw Error(ErrorKind::RejectedInput, "field dimension does not match lambda^2");
        }
        PointTerms terms;
        terms.a.resize(tt.size());
        for (std::size_t k = 0; k < tt.size(); ++k) terms.a[k] = tt[k] - lambda_sq[k] * lap[k];
        terms.b = force(center).flatten();
        return terms;
    };
    const double weight = 1.0 + lambda_max * static_cast<double>(params.space_dim());
    return lattice_report(EquationId::CompanionPde, field, combine, lattice, spacings, weight);
}

ResidualReport companion_pde_residual(const PowerLawSolution& sol, const BodyConfig& body,
                                      const WaveParams& params, const Lattice& lattice,
                                      std::span<const double> spacings) {
    return companion_pde_residual(traveling_field(sol, params), params, lattice, spacings,
                                  gravity_force(sol.provenance(), body));
}

ResidualReport linear_wave_residual(const Field& field, const WaveParams& params, const Lattice& lattice,
                                    std::span<const double> spacings) {
    const double v2 = params.v_norm_sq();
    if (v2 == 0.0) {
        throw Error(ErrorKind::Inapplicable, "linear wave check is inapplicable for v = 0");
    }
    validate_lattice(lattice, params);
    validate_spacings(spacings);
    guard_hyperplane(lattice, params, *std::max_element(spacings.begin(), spacings.end()));

    const double mu2 = params.mu() * params.mu();
    Combiner combine = [v2, mu2](const StackedVector&, const std::vector<double>& tt,
                                 const std::vector<double>& lap) {
        PointTerms terms;
        terms.a.resize(tt.size());
        terms.b.resize(tt.size());
        for (std::size_t k = 0; k < tt.size(); ++k) {
            terms.a[k] = v2 * tt[k];
            terms.b[k] = mu2 * lap[k];
        }
        return terms;
    };
    const double weight = v2 + mu2 * static_cast<double>(params.space_dim());
    return lattice_report(EquationId::LinearWave, field, combine, lattice, spacings, weight);
}

}  // namespace twave
