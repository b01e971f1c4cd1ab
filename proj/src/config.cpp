#include "photonloc/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "photonloc/errors.hpp"

namespace photonloc {

void RunConfig::validate() const {
    units.validate();
    lattice.validate();
    if (!(h > 0.0) || !(dr > 0.0) || !(dt > 0.0))
        throw ConfigError("config: FD steps h, dr, dt must be > 0");
    if (tol < 0.0) throw ConfigError("config: tolerance must be > 0");
    if (format != "csv" && format != "json-report")
        throw ConfigError("config: format must be csv or json-report");
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw InputError(path.string() + ": top level must be an object");

    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "units") {
            cfg.units.hbar = value.value("hbar", 1.0);
            cfg.units.c = value.value("c", 1.0);
            cfg.units.eps0 = value.value("eps0", 1.0);
        } else if (key == "lattice") {
            cfg.lattice.L = value.value("L", cfg.lattice.L);
            cfg.lattice.N = value.value("N", cfg.lattice.N);
            cfg.lattice.exclude_z_axis = value.value("exclude_z_axis", cfg.lattice.exclude_z_axis);
        } else if (key == "gauge_m") cfg.gauge_m = value.get<int>();
        else if (key == "alpha") cfg.alpha = value.get<double>();
        else if (key == "h") cfg.h = value.get<double>();
        else if (key == "dr") cfg.dr = value.get<double>();
        else if (key == "dt") cfg.dt = value.get<double>();
        else if (key == "tol") cfg.tol = value.get<double>();
        else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
        else if (key == "out") cfg.out = value.get<std::string>();
        else if (key == "format") cfg.format = value.get<std::string>();
        else throw InputError(path.string() + ": unknown config field \"" + key + "\"");
    }
    cfg.validate();
    return cfg;
}

} // namespace photonloc
