#include "twave/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace twave {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kAllowedKeys = {
    {"body", {"G", "m1", "m2"}},
    {"wave", {"mu", "c", "v", "lambda_sq", "lambda1_sq", "lambda2_sq"}},
    {"solution", {"scenario", "direction", "domain"}},
    {"verify", {"checks", "w_grid", "spacings", "r_lo", "r_hi", "t_range", "lattice_points", "rk4_t0", "rk4_t_end",
                "rk4_h", "solution_file"}},
    {"front", {"chart", "times", "mesh", "directions"}},
    {"run", {"output_dir", "seed"}},
};

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& s) {
    const std::string t = trim(s);
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) fail(key + ": '" + s + "' is not a number");
    return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& s) {
    const std::string t = trim(s);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
        fail(key + ": '" + s + "' is not a non-negative integer");
    }
    errno = 0;
    const auto v = std::strtoull(t.c_str(), nullptr, 10);
    if (errno == ERANGE) fail(key + ": value out of range");
    return v;
}

std::vector<double> to_doubles(const std::string& key, const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split(s, ',')) out.push_back(to_double(key, item));
    return out;
}

Vec3 to_vec3(const std::string& key, const std::string& s) {
    const auto xs = to_doubles(key, s);
    if (xs.size() != 3) fail(key + ": expected three comma-separated components");
    return {xs[0], xs[1], xs[2]};
}

// "key = value ; note": the INI reader keeps inline comments in the value.
std::string strip_inline_comment(const std::string& s) {
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == ';' || s[i] == '#') && (s[i - 1] == ' ' || s[i - 1] == '\t')) return s.substr(0, i);
    }
    return s;
}

class Section {
public:
    Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

    std::optional<std::string> get(const std::string& key) const {
        if (!tree_) return std::nullopt;
        auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '/'));
        if (!v) return std::nullopt;
        return trim(strip_inline_comment(*v));
    }
    std::string qualified(const std::string& key) const { return name_ + "." + key; }

    double number(const std::string& key, double fallback) const {
        auto v = get(key);
        return v ? to_double(qualified(key), *v) : fallback;
    }
    std::optional<double> number(const std::string& key) const {
        auto v = get(key);
        if (!v) return std::nullopt;
        return to_double(qualified(key), *v);
    }

private:
    const pt::ptree* tree_;
    std::string name_;
};

CheckKind check_from_string(const std::string& s) {
    if (s == "ode") return CheckKind::Ode;
    if (s == "pde") return CheckKind::Pde;
    if (s == "linear-wave") return CheckKind::LinearWave;
    if (s == "rk4") return CheckKind::Rk4;
    fail("verify.checks: unknown check '" + s + "'");
}

MeshResolution parse_mesh(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) fail("front.mesh: expected ROWSxCOLS");
    return {static_cast<std::size_t>(to_uint("front.mesh", s.substr(0, x))),
            static_cast<std::size_t>(to_uint("front.mesh", s.substr(x + 1)))};
}

}  // namespace

const char* to_string(CheckKind kind) {
    switch (kind) {
        case CheckKind::Ode: return "ode";
        case CheckKind::Pde: return "pde";
        case CheckKind::LinearWave: return "linear-wave";
        case CheckKind::Rk4: return "rk4";
    }
    return "unknown";
}

RunConfig parse_run_config(const std::string& text) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        fail(std::string("config parse error: ") + e.what());
    }

    for (const auto& [name, sub] : tree) {
        const auto allowed = kAllowedKeys.find(name);
        if (allowed == kAllowedKeys.end()) fail("unknown config section [" + name + "]");
        if (!sub.data().empty()) fail("key '" + name + "' outside of a section");
        for (const auto& [key, _] : sub) {
            if (!allowed->second.count(key)) fail("unknown key '" + key + "' in [" + name + "]");
        }
    }
    auto section = [&](const std::string& name) {
        auto child = tree.get_child_optional(name);
        return Section(child ? &*child : nullptr, name);
    };

    RunConfig cfg;
    try {
        const Section body = section("body");
        cfg.body = BodyConfig(body.number("G", 1.0), body.number("m1", 1.0), body.number("m2", 1.0));

        const Section sol = section("solution");
        if (auto s = sol.get("scenario")) {
            try {
                cfg.scenario = provenance_from_string(*s);
            } catch (const Error&) {
                fail("solution.scenario: unknown scenario '" + *s + "'");
            }
        }
        if (auto d = sol.get("direction")) {
            const Vec3 u = to_vec3("solution.direction", *d);
            const double n = norm(u);
            if (!(n > 0.0) || !std::isfinite(n)) fail("solution.direction must be nonzero");
            cfg.direction = u / n;
        }
        if (auto d = sol.get("domain")) {
            const auto ab = to_doubles("solution.domain", *d);
            if (ab.size() != 2) fail("solution.domain: expected a, b");
            cfg.domain = {ab[0], ab[1]};
        }

        const Section wave = section("wave");
        const double mu = wave.number("mu", 1.0);
        const double c = wave.number("c", 0.0);
        const Vec3 v = wave.get("v") ? to_vec3("wave.v", *wave.get("v")) : Vec3{};
        std::vector<double> lambdas;
        if (cfg.scenario == Provenance::Relative2Body) {
            lambdas = {wave.number("lambda_sq", 1.0)};
        } else {
            const auto l1 = wave.number("lambda1_sq");
            const auto l2 = wave.number("lambda2_sq");
            if (cfg.scenario == Provenance::TwoBodyPair && (!l1 || !l2)) {
                fail("scenario twobody requires wave.lambda1_sq and wave.lambda2_sq");
            }
            lambdas = {l1.value_or(1.0), l2.value_or(1.0)};
        }
        cfg.wave = WaveParams::spatial3(mu, c, v, lambdas);

        const Section ver = section("verify");
        if (auto s = ver.get("checks")) {
            cfg.verify.checks.clear();
            for (const auto& item : split(*s, ',')) cfg.verify.checks.push_back(check_from_string(item));
        }
        if (auto s = ver.get("w_grid")) {
            const auto g = to_doubles("verify.w_grid", *s);
            if (g.size() != 3 || g[2] < 1 || g[2] != std::floor(g[2])) fail("verify.w_grid: expected lo, hi, n");
            cfg.verify.w_lo = g[0];
            cfg.verify.w_hi = g[1];
            cfg.verify.w_points = static_cast<std::size_t>(g[2]);
        }
        if (auto s = ver.get("spacings")) cfg.verify.spacings = to_doubles("verify.spacings", *s);
        const auto r_lo = ver.get("r_lo");
        const auto r_hi = ver.get("r_hi");
        const auto t_range = ver.get("t_range");
        if (r_lo || r_hi || t_range) {
            if (!(r_lo && r_hi && t_range)) fail("verify: r_lo, r_hi and t_range must be given together");
            const Vec3 lo = to_vec3("verify.r_lo", *r_lo);
            const Vec3 hi = to_vec3("verify.r_hi", *r_hi);
            const auto tr = to_doubles("verify.t_range", *t_range);
            if (tr.size() != 2) fail("verify.t_range: expected lo, hi");
            Lattice lat;
            lat.r_lo = {lo.x, lo.y, lo.z};
            lat.r_hi = {hi.x, hi.y, hi.z};
            lat.t_lo = tr[0];
            lat.t_hi = tr[1];
            if (auto n = ver.get("lattice_points")) lat.points_per_axis = to_uint("verify.lattice_points", *n);
            cfg.verify.lattice = lat;
        }
        cfg.verify.rk4_t0 = ver.number("rk4_t0", cfg.verify.rk4_t0);
        cfg.verify.rk4_t_end = ver.number("rk4_t_end", cfg.verify.rk4_t_end);
        cfg.verify.rk4_h = ver.number("rk4_h", cfg.verify.rk4_h);
        if (auto s = ver.get("solution_file")) cfg.verify.solution_file = *s;

        const Section front = section("front");
        if (auto ch = front.get("chart")) {
            FrontOptions fo;
            try {
                fo.chart = {chart_from_string(*ch)};
            } catch (const Error&) {
                fail("front.chart: unknown chart '" + *ch + "'");
            }
            fo.times = front.get("times") ? to_doubles("front.times", *front.get("times")) : std::vector<double>{1.0};
            if (auto m = front.get("mesh")) fo.mesh = parse_mesh(*m);
            if (auto n = front.get("directions")) fo.directions = to_uint("front.directions", *n);
            cfg.front = fo;
        }

        const Section run = section("run");
        if (auto o = run.get("output_dir")) cfg.output_dir = *o;
        if (auto s = run.get("seed")) cfg.seed = to_uint("run.seed", *s);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) throw;
        fail(std::string("invalid configuration: ") + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

}  // namespace twave
