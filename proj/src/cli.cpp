#include "monopole/cli.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "monopole/verify.hpp"

namespace monopole::cli {

namespace {

using Json = nlohmann::ordered_json;
using geom::VecX;

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

VecX to_eigen(const std::vector<double>& v) { return Eigen::Map<const VecX>(v.data(), static_cast<Eigen::Index>(v.size())); }

void require_size(const std::vector<double>& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw Error(ErrorKind::BadInput, std::string(what) + " needs " + std::to_string(n) + " components, got " +
                                         std::to_string(v.size()));
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorKind::BadInput, std::string(what) + " must be finite");
}

void write_output(const RunConfig& cfg, const io::Table& table, std::ostream& out) {
  if (cfg.out == "-") {
    io::write_table(out, table, cfg.format);
    out.flush();
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw Error(ErrorKind::BadInput, "cannot open " + cfg.out + " for writing");
  io::write_table(file, table, cfg.format);
  file.flush();
  if (!file) throw Error(ErrorKind::BadInput, "failed writing " + cfg.out);
}

// Samples up to the first step that differs from the leading spacing.
std::size_t uniform_count(const std::vector<double>& t) {
  if (t.size() < 2) return t.size();
  const double dt = t[1] - t[0];
  std::size_t n = 2;
  while (n < t.size() && std::abs((t[n] - t[n - 1]) - dt) <= 1e-9 * std::abs(dt)) ++n;
  return n;
}

Json report_json(const dynamics::TheoremReport& r, bool yang) {
  Json j;
  j["samples"] = r.samples;
  j["colliding"] = false;
  j["L"] = to_std(r.l0);
  j["psi"] = r.psi;
  j["fitted_psi"] = r.fitted_psi;
  Json res;
  res["l_drift"] = r.l_drift;
  res["cos_deviation"] = r.cos_deviation;
  res["plane_fit"] = r.fit_residual;
  res["alpha_relation"] = r.alpha_relation;
  res["aperture_mismatch"] = r.aperture_mismatch;
  res["geodesic"] = r.geodesic_residual;
  res["membership"] = r.membership;
  res["orthogonality"] = r.orthogonality;
  res["speed_drift"] = r.speed_drift;
  if (yang) res["charge_drift"] = r.charge_drift;
  j["residuals"] = res;
  return j;
}

Json analyze_cone(const io::Table& table) {
  std::vector<int> xcols;
  for (int i = 1; table.find("x" + std::to_string(i)) >= 0; ++i) xcols.push_back(table.find("x" + std::to_string(i)));
  if (xcols.size() < 3) throw Error(ErrorKind::ParseError, "cone geodesic file needs x1..x3 at least");
  const std::vector<double> t = table.series("t");
  const std::size_t n = uniform_count(t);
  std::vector<VecX> xs;
  for (std::size_t i = 0; i < n; ++i) {
    VecX x(static_cast<Eigen::Index>(xcols.size()));
    for (std::size_t k = 0; k < xcols.size(); ++k) x[static_cast<Eigen::Index>(k)] = table.rows[i][xcols[k]];
    xs.push_back(std::move(x));
  }
  const double psi = table.rows.at(0)[table.require("psi")];
  const std::vector<double> speed = table.series("speed");

  Json j;
  j["samples"] = n;
  j["colliding"] = false;
  j["psi"] = psi;
  const auto fit = cones::fit_two_cone(xs);
  j["fitted_psi"] = fit.cone.aperture();
  VecX axis = VecX::Zero(static_cast<Eigen::Index>(xcols.size()));
  axis[axis.size() - 1] = 1.0;
  const double dt = t[1] - t[0];
  const int stride = std::max(1, static_cast<int>(std::lround(1e-3 / std::abs(dt))));
  double drift = 0.0;
  for (std::size_t i = 0; i < n; ++i) drift = std::max(drift, std::abs(speed[i] - speed[0]) / speed[0]);
  Json res;
  res["plane_fit"] = fit.residual;
  res["aperture_mismatch"] = std::abs(fit.cone.aperture() - psi);
  res["geodesic"] = cones::cone_geodesic_residual(cones::cone_from_direction(axis, psi), xs, dt, stride);
  res["speed_drift"] = drift;
  j["residuals"] = res;
  return j;
}

int analyze(const std::string& path, std::ostream& out, std::ostream& err) {
  Json j;
  try {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::ParseError, "cannot open " + path);
    const io::Table table = io::read_table(file);
    const io::ProblemKind kind = io::detect_kind(table);
    j["kind"] = io::to_string(kind);
    try {
      switch (kind) {
        case io::ProblemKind::dirac: {
          const auto states = io::dirac_states(table);
          j.update(report_json(dynamics::verify_theorem_dirac(table.series("t"), states), false));
          break;
        }
        case io::ProblemKind::yang: {
          const auto states = io::yang_states(table);
          j.update(report_json(dynamics::verify_theorem_yang(table.series("t"), states), true));
          break;
        }
        case io::ProblemKind::cone_geodesic:
          j.update(analyze_cone(table));
          break;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CollidingTrajectory) throw;
      j["samples"] = table.rows.size();
      j["colliding"] = true;
      if (kind == io::ProblemKind::dirac) {
        j["L"] = to_std(dynamics::dirac_conserved_l(io::dirac_states(table).front()));
      } else if (kind == io::ProblemKind::yang) {
        j["L"] = to_std(dynamics::yang_conserved_l(io::yang_states(table).front()));
      }
      j["psi"] = nullptr;
      j["error"] = e.what();
      out << j.dump(2) << '\n';
      err << "monopole: " << e.what() << '\n';
      return kColliding;
    }
  } catch (const Error& e) {
    err << "monopole: " << e.what() << '\n';
    return kBadInput;
  }
  out << j.dump(2) << '\n';
  return kOk;
}

int run_verify(verify::BatteryConfig cfg, bool inject_fault, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.count < 1) throw Error(ErrorKind::BadInput, "--count must be at least 1");
    cfg.tol_scale = verify::tol_scale_from_env();
    if (inject_fault) cfg.model.charge_matrix = &dynamics::corrupted_charge_matrix;
    const auto results = verify::run_battery(cfg);
    int failed = 0;
    for (const auto& r : results) {
      out << verify::format_result(r) << '\n';
      if (r.pass) continue;
      ++failed;
      char seed[32];
      std::snprintf(seed, sizeof seed, "0x%016" PRIx64, r.failing_seed);
      err << "monopole: criterion " << r.id << " (" << r.name << ") failed";
      if (r.failing_case >= 0) err << " at case " << r.failing_case << ", seed " << seed;
      err << '\n';
    }
    out << (results.size() - static_cast<std::size_t>(failed)) << '/' << results.size() << " criteria passed\n";
    return failed == 0 ? kOk : kViolation;
  } catch (const Error& e) {
    err << "monopole: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace

std::vector<double> parse_vector(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::BadInput, "empty vector");
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string_view field = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    double v = 0.0;
    const char* first = field.data();
    if (!field.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw Error(ErrorKind::BadInput, "bad vector component '" + std::string(field) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

void RunConfig::validate() const {
  for (const auto* v : {&position, &velocity, &charge}) {
    for (double x : *v) require_finite(x, "vector component");
  }
  require_finite(lambda, "--lambda");
  require_finite(r, "--r");
  require_finite(r_dot, "--dr");
  require_finite(psi, "--psi");
  require_finite(t_end, "--t-end");
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::BadInput, "--step must be positive");
  switch (kind) {
    case io::ProblemKind::dirac:
      require_size(position, 3, "--r0");
      require_size(velocity, 3, "--v0");
      break;
    case io::ProblemKind::yang:
      require_size(position, 4, "--u0");
      require_size(velocity, 4, "--du0");
      require_size(charge, 3, "--e");
      break;
    case io::ProblemKind::cone_geodesic:
      if (position.empty()) throw Error(ErrorKind::BadInput, "--v needs at least one component");
      require_size(velocity, position.size(), "--dv");
      break;
  }
}

int simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    io::Table table;
    std::optional<Error> halt;
    switch (cfg.kind) {
      case io::ProblemKind::dirac: {
        const dynamics::DiracState s{to_eigen(cfg.position), to_eigen(cfg.velocity), cfg.lambda};
        const auto traj = dynamics::simulate_dirac(s, cfg.t_end, cfg.step);
        table = io::dirac_table(traj, cfg.lambda);
        halt = traj.halt;
        break;
      }
      case io::ProblemKind::yang: {
        dynamics::YangState s;
        s.u = to_eigen(cfg.position);
        s.u_dot = to_eigen(cfg.velocity);
        s.e = to_eigen(cfg.charge);
        s.r = cfg.r;
        s.r_dot = cfg.r_dot;
        const auto traj = dynamics::simulate_yang(s, cfg.t_end, cfg.step);
        table = io::yang_table(traj);
        halt = traj.halt;
        break;
      }
      case io::ProblemKind::cone_geodesic: {
        if (!(cfg.psi > 0.0 && cfg.psi <= std::numbers::pi / 2.0)) {
          throw Error(ErrorKind::BadAperture, "--psi must lie in (0, pi/2]");
        }
        if (!(cfg.r > 0.0)) throw Error(ErrorKind::BadInput, "--r must be positive");
        const double psi = cfg.psi;
        integrate::OdeProblem<VecX> p;
        p.rhs = [psi](double, const VecX& y) { return cones::cone_geodesic_field(y, psi); };
        p.initial = cones::pack({to_eigen(cfg.position), cfg.r, to_eigen(cfg.velocity), cfg.r_dot});
        p.t_end = cfg.t_end;
        p.step = cfg.step;
        const auto traj = integrate::rk4_integrate(p);
        table = io::cone_table(traj, psi);
        halt = traj.halt;
        break;
      }
    }
    write_output(cfg, table, out);
    if (halt) {
      const double t_last = table.rows.empty() ? 0.0 : table.rows.back().front();
      err << "monopole: halted after t=" << t_last << ": " << halt->what() << '\n';
      return kHalted;
    }
    return kOk;
  } catch (const Error& e) {
    err << "monopole: " << e.what() << '\n';
    return kBadInput;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Charged particles in Dirac and Yang monopole fields: simulation, cone analysis, verification.",
               "monopole"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  RunConfig cfg;
  std::string format = "csv";
  std::string r0_vec, v0_vec, u0_vec, du0_vec, e_vec, v_vec, dv_vec;

  auto* sim = app.add_subcommand("simulate", "Integrate one trajectory and write it as a table");
  sim->require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    c->add_option("--t-end", cfg.t_end, "End time (negative integrates backward)")->capture_default_str();
    c->add_option("--step", cfg.step, "RK4 step")->capture_default_str();
    c->add_option("--out", cfg.out, "Output path, - for stdout")->capture_default_str();
    c->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();
  };
  auto* dirac = sim->add_subcommand("dirac", "Particle in the Dirac monopole field on R³");
  dirac->add_option("--r0", r0_vec, "Initial position x,y,z")->required();
  dirac->add_option("--v0", v0_vec, "Initial velocity")->required();
  dirac->add_option("--lambda", cfg.lambda, "Coupling λ")->required();
  add_common(dirac);
  auto* yang = sim->add_subcommand("yang", "Particle with isospin in the Yang monopole field on R⁵");
  yang->add_option("--u0", u0_vec, "Chart position u ∈ R⁴")->required();
  yang->add_option("--r0", cfg.r, "Radius")->required();
  yang->add_option("--du0", du0_vec, "Chart velocity u̇ ∈ R⁴")->required();
  yang->add_option("--dr0", cfg.r_dot, "Radial velocity")->capture_default_str();
  yang->add_option("--e", e_vec, "Isospin e ∈ R³")->required();
  add_common(yang);
  auto* cone = sim->add_subcommand("cone-geodesic", "Geodesic of the standard cone in chart coordinates");
  cone->add_option("--psi", cfg.psi, "Aperture in (0, pi/2]")->required();
  cone->add_option("--v", v_vec, "Chart position v ∈ R^{n-1}")->required();
  cone->add_option("--r", cfg.r, "Radius")->required();
  cone->add_option("--dv", dv_vec, "Chart velocity")->required();
  cone->add_option("--dr", cfg.r_dot, "Radial velocity")->capture_default_str();
  add_common(cone);

  std::string analyze_path;
  auto* ana = app.add_subcommand("analyze", "Report the conserved vector, aperture and residuals of a trajectory file");
  ana->add_option("file", analyze_path, "CSV or JSON-lines trajectory")->required();

  verify::BatteryConfig battery;
  bool serial = false;
  std::string fault;
  auto* ver = app.add_subcommand("verify", "Run the acceptance battery");
  ver->add_option("--seed", battery.seed, "Base seed")->capture_default_str();
  ver->add_option("--count", battery.count, "Random trajectories per monopole")->capture_default_str();
  ver->add_flag("--serial", serial, "Run cases on one thread");
  ver->add_option("--fault", fault)->check(CLI::IsMember({"flip-e-matrix"}))->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  if (*sim) {
    try {
      cfg.format = io::parse_format(format);
      if (*dirac) {
        cfg.kind = io::ProblemKind::dirac;
        cfg.position = parse_vector(r0_vec);
        cfg.velocity = parse_vector(v0_vec);
      } else if (*yang) {
        cfg.kind = io::ProblemKind::yang;
        cfg.position = parse_vector(u0_vec);
        cfg.velocity = parse_vector(du0_vec);
        cfg.charge = parse_vector(e_vec);
      } else {
        cfg.kind = io::ProblemKind::cone_geodesic;
        cfg.position = parse_vector(v_vec);
        cfg.velocity = parse_vector(dv_vec);
      }
    } catch (const Error& e) {
      err << "monopole: " << e.what() << '\n';
      return kBadInput;
    }
    return simulate(cfg, out, err);
  }
  if (*ana) return analyze(analyze_path, out, err);
  battery.parallel = !serial;
  return run_verify(battery, !fault.empty(), out, err);
}

}  // namespace monopole::cli
