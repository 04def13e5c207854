#include "twave/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace twave::io {

namespace {

nlohmann::json bound_to_json(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double bound_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw Error(ErrorKind::RejectedInput, "bad domain bound '" + s + "'");
    }
    return j.get<double>();
}

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

}  // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::json to_json(const PowerLawSolution& sol) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : sol.blocks()) blocks.push_back({{"alpha", b.alpha}, {"S", vec_json(b.S)}});
    return {{"provenance", to_string(sol.provenance())},
            {"exponent", "2/3"},
            {"blocks", blocks},
            {"domain", nlohmann::json::array({bound_to_json(sol.domain().a), bound_to_json(sol.domain().b)})}};
}

PowerLawSolution solution_from_json(const nlohmann::json& j) {
    try {
        if (j.at("exponent").get<std::string>() != "2/3") {
            throw Error(ErrorKind::RejectedInput, "only the 2/3 power law is supported");
        }
        std::vector<PowerLawBlock> blocks;
        for (const auto& b : j.at("blocks")) {
            const auto& s = b.at("S");
            if (s.size() != 3) throw Error(ErrorKind::RejectedInput, "S must have 3 components");
            blocks.push_back({b.at("alpha").get<double>(), {s[0].get<double>(), s[1].get<double>(), s[2].get<double>()}});
        }
        const auto& d = j.at("domain");
        if (d.size() != 2) throw Error(ErrorKind::RejectedInput, "domain must be [a, b]");
        return PowerLawSolution(provenance_from_string(j.at("provenance").get<std::string>()), std::move(blocks),
                                {bound_from_json(d[0]), bound_from_json(d[1])});
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::RejectedInput, std::string("malformed solution JSON: ") + e.what());
    }
}

nlohmann::json to_json(const ResidualReport& rep) {
    nlohmann::json j = {{"equation_id", to_string(rep.equation_id)},
                        {"grid", rep.grid},
                        {"sample_count", rep.sample_count},
                        {"max_abs_residual", rep.max_abs_residual},
                        {"max_rel_residual", rep.max_rel_residual}};
    if (!rep.block_max_rel.empty()) j["block_max_rel"] = rep.block_max_rel;
    if (!rep.levels.empty()) {
        nlohmann::json levels = nlohmann::json::array();
        for (const auto& l : rep.levels) {
            levels.push_back({{"h", l.h}, {"max_abs", l.max_abs}, {"max_rel", l.max_rel},
                              {"roundoff_floor", l.roundoff_floor}});
        }
        j["levels"] = levels;
    }
    j["estimated_order"] = rep.estimated_order ? nlohmann::json(*rep.estimated_order) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json front_header(const FrontSurface& s, const std::string& vertex_file) {
    const auto labels = s.chart.labels();
    nlohmann::json j = {{"chart", to_string(s.chart.kind)},
                        {"labels", {labels[0], labels[1], labels[2]}},
                        {"mu", s.mu},
                        {"t", s.time},
                        {"shape", to_string(s.shape)},
                        {"radius", s.radius},
                        {"rows", s.rows},
                        {"cols", s.cols},
                        {"vertex_count", s.samples.size()},
                        {"vertex_file", vertex_file}};
    if (!s.planes.empty()) {
        nlohmann::json planes = nlohmann::json::array();
        for (const auto& p : s.planes) {
            planes.push_back({{"normal", vec_json(p.plane.normal)},
                              {"offset", p.plane.offset},
                              {"tangency_point", vec_json(p.tangency_point)}});
        }
        j["planes"] = planes;
    }
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Config, "cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Config, "cannot read " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::RejectedInput, path.string() + ": " + e.what());
    }
}

std::string sweep_csv(const ResidualReport& rep) {
    std::ostringstream os;
    os << "h,max_abs,max_rel,order\n";
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
        const auto& l = rep.levels[i];
        os << format_double(l.h) << ',' << format_double(l.max_abs) << ',' << format_double(l.max_rel) << ',';
        if (i > 0 && l.max_abs > 0.0 && rep.levels[i - 1].max_abs > 0.0) {
            const auto& p = rep.levels[i - 1];
            os << format_double(std::log(p.max_abs / l.max_abs) / std::log(p.h / l.h));
        }
        os << '\n';
    }
    return os.str();
}

std::string trajectory_csv(const std::vector<PhaseState>& traj) {
    std::ostringstream os;
    const bool relative = !traj.empty() && traj.front().q() == 1;
    if (relative) {
        os << "t,dx,dy,dz,dvx,dvy,dvz\n";
    } else {
        os << "t,r1x,r1y,r1z,r2x,r2y,r2z,v1x,v1y,v1z,v2x,v2y,v2z\n";
    }
    for (const auto& s : traj) {
        os << format_double(s.t);
        for (const auto& p : s.positions) os << ',' << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z);
        for (const auto& v : s.velocities) os << ',' << format_double(v.x) << ',' << format_double(v.y) << ',' << format_double(v.z);
        os << '\n';
    }
    return os.str();
}

std::string vertex_csv(const FrontSurface& s) {
    std::ostringstream os;
    os << "x,y,z\n";
    for (const auto& p : s.samples) {
        os << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z) << '\n';
    }
    return os.str();
}

}  // namespace twave::io
