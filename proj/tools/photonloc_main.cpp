// photonloc: verification and export CLI for the photon position-operator
// library. Subcommands: verify, two-mode, project, density, converge.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "photonloc/config.hpp"
#include "photonloc/fock_state.hpp"
#include "photonloc/position_operator.hpp"
#include "photonloc/verify.hpp"
#include "photonloc/wavefunction.hpp"

namespace {

using namespace photonloc;

constexpr int kExitFail = 1;  // a verification check failed
constexpr int kExitUsage = 2; // configuration or input error

struct CommonFlags {
    std::string config_path;
    std::optional<double> alpha;
    std::optional<int> gauge_m;
    std::optional<int> n;
    std::optional<double> box_l;
    std::optional<double> h;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->set_help_flag("--help", "print help"); // frees -h / --h for the FD step
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--alpha", f.alpha, "metric exponent alpha")
        ->check(CLI::IsMember({-0.5, 0.0, 0.5}));
    cmd->add_option("--gauge-m", f.gauge_m, "rotation gauge chi = m phi");
    cmd->add_option("--n", f.n, "modes per axis (even)");
    cmd->add_option("--box-l", f.box_l, "box edge L");
    cmd->add_option("--h", f.h, "FD step in units of 2 pi / L");
    cmd->add_option("--tol", f.tol, "override every check bound");
    cmd->add_option("--seed", f.seed, "seed for randomized sweeps");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--format", f.format, "csv | json-report")
        ->check(CLI::IsMember({"csv", "json-report"}));
}

RunConfig resolve_config(const CommonFlags& f) {
    RunConfig cfg;
    if (!f.config_path.empty()) cfg = load_config(f.config_path);
    if (f.alpha) cfg.alpha = *f.alpha;
    if (f.gauge_m) cfg.gauge_m = *f.gauge_m;
    if (f.n) cfg.lattice.N = *f.n;
    if (f.box_l) cfg.lattice.L = *f.box_l;
    if (f.h) cfg.h = *f.h;
    if (f.tol) cfg.tol = *f.tol;
    if (f.seed) cfg.seed = *f.seed;
    if (!f.out.empty()) cfg.out = f.out;
    if (!f.format.empty()) cfg.format = f.format;
    cfg.validate();
    return cfg;
}

// All numeric export goes through one shortest-round-trip formatter so
// identical runs produce byte-identical files.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    double back;
    std::sscanf(buf, "%lg", &back);
    if (back == v) {
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[32];
            std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
            std::sscanf(shorter, "%lg", &back);
            if (back == v) return shorter;
        }
    }
    return buf;
}

// Writes to cfg.out when set, stdout otherwise.
void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw InputError("cannot open output file: " + cfg.out);
    os << text;
}

Eigen::Vector3i parse_triplet(const std::string& s, const std::string& flag) {
    Eigen::Vector3i n;
    char extra;
    if (std::sscanf(s.c_str(), "%d,%d,%d%c", &n.x(), &n.y(), &n.z(), &extra) != 3)
        throw InputError(flag + ": expected three comma-separated integers, got '" + s + "'");
    return n;
}

int cmd_verify(const RunConfig& cfg) {
    const Report report = run_verify(cfg);
    if (cfg.format == "json-report") {
        emit(cfg, report.to_json());
    } else {
        std::string text;
        for (const CheckResult& c : report.checks)
            text += std::string(c.pass ? "PASS" : "FAIL") + "  " + c.suite + ": " + c.check +
                    "  measured=" + num(c.measured) + " bound=" + num(c.bound) + "\n";
        text += std::string("seed=") + std::to_string(report.seed) + " checks=" +
                std::to_string(report.checks.size()) +
                (report.all_pass() ? " ALL PASS\n" : " FAILURES PRESENT\n");
        emit(cfg, text);
    }
    if (!report.all_pass()) {
        const CheckResult* f = report.first_failure();
        std::cerr << "verify: FAILED at " << f->suite << ": " << f->check
                  << " (measured=" << num(f->measured) << ", bound=" << num(f->bound) << ")\n";
        return kExitFail;
    }
    return 0;
}

int cmd_two_mode(const RunConfig& cfg, const std::string& n1_str, const std::string& n2_str,
                 int lambda, int times) {
    const Eigen::Vector3i n1 = parse_triplet(n1_str, "--n1");
    const Eigen::Vector3i n2 = parse_triplet(n2_str, "--n2");
    const KMode k1 = make_k_mode(cfg.lattice, n1);
    const KMode k2 = make_k_mode(cfg.lattice, n2);
    const PhotonState st = make_two_mode_state(cfg.lattice, n1, n2, lambda, cfg.units);
    const ChiGauge gauge{cfg.gauge_m};
    const double volume = cfg.lattice.volume();

    std::string csv = "t,x,y,z,machinery,closed_form,difference\n";
    double min_density = 1e300, worst = 0.0;
    for (int tt = 0; tt < times; ++tt) {
        const double t = tt * cfg.lattice.r_spacing() / (2.0 * cfg.units.c);
        const DensityProfile d = density_biorthonormal(st, gauge, t);
        for (std::size_t i = 0; i < d.grid.size(); ++i) {
            const double cf = two_mode_closed_form(k1, k2, d.grid[i], t, volume, cfg.units.c);
            min_density = std::min(min_density, d.values[i]);
            worst = std::max(worst, std::abs(d.values[i] - cf));
            csv += num(t) + "," + num(d.grid[i].x()) + "," + num(d.grid[i].y()) + "," +
                   num(d.grid[i].z()) + "," + num(d.values[i]) + "," + num(cf) + "," +
                   num(d.values[i] - cf) + "\n";
        }
    }
    emit(cfg, csv);
    const double amp = std::sqrt(k1.k / k2.k) + std::sqrt(k2.k / k1.k);
    std::cerr << "two-mode: amplitude factor = " << num(amp) << "\n"
              << "two-mode: min density = " << num(min_density) << "\n"
              << "two-mode: max |machinery - closed form| = " << num(worst) << "\n";
    return 0;
}

PhotonState load_state_checked(const RunConfig& cfg, const CommonFlags& flags,
                               const std::string& path) {
    if (path.empty()) throw InputError("--state is required for this subcommand");
    PhotonState st = load_state(path);
    st.validate();
    // The state file pins the lattice; explicit lattice flags must agree.
    if ((flags.n && *flags.n != st.lattice.N) ||
        (flags.box_l && *flags.box_l != st.lattice.L) ||
        (!flags.config_path.empty() && (cfg.lattice.N != st.lattice.N ||
                                        cfg.lattice.L != st.lattice.L)))
        throw InputError("lattice mismatch: state file " + path + " has N=" +
                         std::to_string(st.lattice.N) + ", L=" + num(st.lattice.L) +
                         " but the config requests N=" + std::to_string(cfg.lattice.N) +
                         ", L=" + num(cfg.lattice.L));
    return st;
}

std::string field_csv_header(const std::string& quantity, const RunConfig& cfg, double alpha,
                             double t) {
    return "# quantity=" + quantity + " alpha=" + num(alpha) +
           " gauge_m=" + std::to_string(cfg.gauge_m) + " N=" + std::to_string(cfg.lattice.N) +
           " L=" + num(cfg.lattice.L) + " t=" + num(t) + "\n" +
           "x,y,z,re_x,im_x,re_y,im_y,re_z,im_z\n";
}

std::string field_csv(const VectorFieldSample& f, const std::string& header) {
    std::string csv = header;
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const auto& r = f.grid[i];
        const auto& v = f.values[i];
        csv += num(r.x()) + "," + num(r.y()) + "," + num(r.z());
        for (int j = 0; j < 3; ++j)
            csv += "," + num(v[j].real()) + "," + num(v[j].imag());
        csv += "\n";
    }
    return csv;
}

int cmd_project(const RunConfig& cfg, const CommonFlags& flags, const std::string& state_path,
                const std::string& quantity, double t) {
    const PhotonState st = load_state_checked(cfg, flags, state_path);
    const ChiGauge gauge{cfg.gauge_m};
    VectorFieldSample f;
    double alpha = cfg.alpha;
    if (quantity == "psi") {
        f = one_photon_wavefunction(st, cfg.alpha, gauge, t);
    } else if (quantity == "A") {
        f = field_A_plus(st, gauge, t);
        alpha = -0.5;
    } else if (quantity == "E") {
        f = field_E_plus(st, gauge, t);
        alpha = 0.5;
    } else if (quantity == "B") {
        f = field_B_plus(st, gauge, t);
        alpha = -0.5;
    } else {
        throw InputError("--quantity must be one of psi, A, E, B");
    }
    emit(cfg, field_csv(f, field_csv_header(quantity, cfg, alpha, t)));
    return 0;
}

int cmd_density(const RunConfig& cfg, const CommonFlags& flags, const std::string& state_path,
                const std::string& kind, double t) {
    const PhotonState st = load_state_checked(cfg, flags, state_path);
    const ChiGauge gauge{cfg.gauge_m};
    DensityProfile d;
    if (kind == "lp") d = density_LP(st, gauge, t);
    else if (kind == "biorthonormal") d = density_biorthonormal(st, gauge, t);
    else throw InputError("--kind must be lp or biorthonormal");
    std::string csv = "# quantity=density_" + kind + " gauge_m=" + std::to_string(cfg.gauge_m) +
                      " N=" + std::to_string(cfg.lattice.N) + " L=" + num(cfg.lattice.L) +
                      " t=" + num(t) + "\nx,y,z,n\n";
    for (std::size_t i = 0; i < d.grid.size(); ++i)
        csv += num(d.grid[i].x()) + "," + num(d.grid[i].y()) + "," + num(d.grid[i].z()) + "," +
               num(d.values[i]) + "\n";
    emit(cfg, csv);
    std::cerr << "density: integral = " << num(d.integral()) << "\n";
    return 0;
}

int cmd_converge(const RunConfig& cfg, const std::string& which, int levels) {
    LatticeSpec spec = cfg.lattice;
    spec.exclude_z_axis = true;
    const auto samples = operator_sample_modes(build_k_lattice(spec));
    const ChiGauge gauge{cfg.gauge_m};
    const double volume = spec.volume();

    std::vector<double> hs, res;
    const double h0 = cfg.h * spec.k_unit();
    for (int level = 0; level < levels; ++level) {
        const double h = h0 / (1 << level);
        OperatorParams p{cfg.alpha, gauge, h};
        double r;
        if (which == "eigen") {
            r = eigen_residual(p, Eigen::Vector3d::Zero(), +1, samples, 0.0, cfg.units, volume)
                    .sup_norm;
        } else if (which == "commutator") {
            const TestField f = [&](const Eigen::Vector3d& k) -> Eigen::Vector3cd {
                double theta, phi;
                spherical_angles(k, theta, phi);
                const PolarizationFrame fr = make_frame(theta, phi, ChiGauge{0});
                return std::exp(-k.squaredNorm() / (4.5 * spec.k_unit() * spec.k_unit())) *
                       (fr.e_plus + 0.3 * fr.e_minus);
            };
            p.h = 10.0 * h; // nested stencils need a coarser base step
            auto few = samples;
            if (few.size() > 12) few.resize(12);
            r = commutator_residual(p, 0, 1, f, few).sup_norm;
        } else if (which == "similarity") {
            const TestField f = [&](const Eigen::Vector3d& k) -> Eigen::Vector3cd {
                double theta, phi;
                spherical_angles(k, theta, phi);
                const PolarizationFrame fr = make_frame(theta, phi, ChiGauge{0});
                return std::exp(-k.squaredNorm() / (4.5 * spec.k_unit() * spec.k_unit())) *
                       fr.e_plus;
            };
            r = similarity_residual(p, f, samples).sup_norm;
        } else {
            throw InputError("--which must be one of eigen, commutator, similarity");
        }
        hs.push_back(p.h);
        res.push_back(r);
    }
    std::string csv = "h,residual,observed_order\n";
    for (std::size_t i = 0; i < hs.size(); ++i) {
        csv += num(hs[i]) + "," + num(res[i]) + ",";
        if (i > 0) csv += num(std::log2(res[i - 1] / res[i]));
        csv += "\n";
    }
    emit(cfg, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"photon position operator: verification suites and projection exports"};
    app.require_subcommand(1);

    CommonFlags fv, ft, fp, fd, fc;
    CLI::App* verify = app.add_subcommand("verify", "run every verification suite");
    add_common_flags(verify, fv);

    CLI::App* two_mode = app.add_subcommand("two-mode", "two-mode density vs closed form");
    add_common_flags(two_mode, ft);
    std::string n1 = "-1,0,0", n2 = "-2,0,0";
    int lambda = +1, times = 8;
    two_mode->add_option("--n1", n1, "first mode integers ix,iy,iz");
    two_mode->add_option("--n2", n2, "second mode integers ix,iy,iz (collinear with --n1)");
    two_mode->add_option("--lambda", lambda, "helicity")->check(CLI::IsMember({-1, 1}));
    two_mode->add_option("--times", times, "number of time samples")->check(CLI::PositiveNumber);

    CLI::App* project = app.add_subcommand("project", "real-space wave function / field export");
    add_common_flags(project, fp);
    std::string state_p, quantity = "psi";
    double t_p = 0.0;
    project->add_option("--state", state_p, "state JSON file")->required();
    project->add_option("--quantity", quantity, "psi | A | E | B");
    project->add_option("--t", t_p, "evaluation time");

    CLI::App* density = app.add_subcommand("density", "photon number density export");
    add_common_flags(density, fd);
    std::string state_d, kind = "lp";
    double t_d = 0.0;
    density->add_option("--state", state_d, "state JSON file")->required();
    density->add_option("--kind", kind, "lp | biorthonormal");
    density->add_option("--t", t_d, "evaluation time");

    CLI::App* converge = app.add_subcommand("converge", "FD convergence study CSV");
    add_common_flags(converge, fc);
    std::string which = "eigen";
    int levels = 4;
    converge->add_option("--which", which, "eigen | commutator | similarity");
    converge->add_option("--levels", levels, "refinement levels")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(resolve_config(fv));
        if (two_mode->parsed()) return cmd_two_mode(resolve_config(ft), n1, n2, lambda, times);
        if (project->parsed()) return cmd_project(resolve_config(fp), fp, state_p, quantity, t_p);
        if (density->parsed()) return cmd_density(resolve_config(fd), fd, state_d, kind, t_d);
        if (converge->parsed()) return cmd_converge(resolve_config(fc), which, levels);
    } catch (const std::exception& e) {
        std::cerr << "photonloc: error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
