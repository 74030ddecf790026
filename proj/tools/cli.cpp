#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "oamq/column.hpp"
#include "oamq/errors.hpp"
#include "oamq/field_io.hpp"
#include "oamq/physics.hpp"
#include "oamq/qubit.hpp"
#include "oamq/render.hpp"
#include "oamq/run.hpp"
#include "oamq/spectral.hpp"

namespace oamq::cli {
namespace {

namespace fs = std::filesystem;

/// Thrown for problems with the invocation itself (missing files, bad
/// option values), mapped to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string entry(Complex c) { return fmt::format("{:.17g} {:+.17g}i", c.real(), c.imag()); }

void print_gate(std::ostream& out, const GateMatrix& g) {
  out << "[ " << entry(g(0, 0)) << " ,  " << entry(g(0, 1)) << " ]\n";
  out << "[ " << entry(g(1, 0)) << " ,  " << entry(g(1, 1)) << " ]\n";
}

double expression(const std::string& text, const char* option) {
  try {
    return parse_number_expression(text);
  } catch (const ParseError& e) {
    throw UsageError(fmt::format("{}: {}", option, e.what()));
  }
}

void print_params(std::ostream& out, const BeamEnvironment& env) {
  const auto row = [&](std::string_view name, const std::string& value) {
    out << fmt::format("{:<34}{}\n", name, value);
  };
  const auto& c = kConstants;
  row("kinetic energy", fmt::format("{:.6g} keV", env.kinetic_energy_ev() / 1e3));
  row("axial field B", fmt::format("{:.6g} T", env.b_field()));
  row("mass model", env.mass_model() == MassModel::relativistic
                        ? fmt::format("relativistic (gamma = {:.6f})", env.gamma())
                        : std::string("rest mass"));
  row("speed v", fmt::format("{:.4e} m/s ({:.4f} c)", env.speed(), env.speed() / c.speed_of_light));
  row("wavenumber k", fmt::format("{:.4e} 1/m", env.wavenumber()));
  if (!env.has_field()) {
    row("Larmor frequency Omega_L", "n/a (zero field)");
    row("magnetic waist w_m", "n/a (zero field)");
    return;
  }
  const double omega = *env.larmor_omega();
  const double period = *env.larmor_period();
  row("Larmor frequency Omega_L", fmt::format("{:.4g} GHz ({:.6e} rad/s)", omega / 1e9, omega));
  row("Larmor period T_L", fmt::format("{:.4g} ns", period * 1e9));
  row("magnetic waist w_m", fmt::format("{:.4g} nm", *env.magnetic_waist() * 1e9));
  row("oscillation length z_L", fmt::format("{:.4g} mm", *env.oscillation_length() * 1e3));
  row("max non-adiabatic switch (T_L/2)", fmt::format("{:.4g} ns", max_nonadiabatic_switch_time(env) * 1e9));
  row("pi-pulse drift (T_L/4)", fmt::format("{:.4g} ns, {:.4g} mm", period / 4 * 1e9,
                                             drift_length(period / 4, env) * 1e3));
  row("sixteenth-period drift (T_L/16)", fmt::format("{:.4g} ns, {:.4g} mm", period / 16 * 1e9,
                                                      drift_length(period / 16, env) * 1e3));
  row("matching field for w_m", fmt::format("{:.6g} T", matching_field(*env.magnetic_waist())));
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string() + ": file not found or unreadable");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_script(std::ostream& out, const fs::path& script, const fs::path& outdir, bool dump_fields) {
  const auto spec = parse_column(read_text(script));
  RunOptions options;
  options.outdir = outdir;
  options.log_name = script.stem().string() + ".runlog.json";
  options.dump_fields = dump_fields;
  const auto log = run_column(spec, options);

  out << fmt::format("{:<4} {:<44} {:>9} {:>9} {:>9} {:>12}\n", "#", "element", "bloch x",
                     "bloch y", "bloch z", "z (mm)");
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const auto& r = log.records[i];
    out << fmt::format("{:<4} {:<44} {:>9.5f} {:>9.5f} {:>9.5f} {:>12.6f}\n", i, r.label,
                       r.bloch_vector.x, r.bloch_vector.y, r.bloch_vector.z, r.cumulative_z * 1e3);
  }
  out << "run log: " << (outdir / options.log_name).string() << "\n";
  return kExitOk;
}

int verify(std::ostream& out, double energy_ev, double b_field, int samples) {
  const auto env = derive_beam({energy_ev}, {b_field});
  const double waist = env.require_magnetic_waist();
  const TransverseGrid grid(samples, kDefaultHalfExtentInWaists * waist);
  const double period = env.require_larmor_period();

  struct Case {
    const char* name;
    QubitState state;
  };
  const Case states[] = {{"|0>", QubitState::zero()}, {"|+>", QubitState::plus()},
                         {"|R>", QubitState::right()}};
  const std::pair<const char*, double> times[] = {
      {"T_L/16", period / 16}, {"T_L/8", period / 8}, {"T_L/4", period / 4}};

  bool ok = true;
  out << fmt::format("{:<6} {:<8} {:>22} {:>14}\n", "state", "drift", "1 - fidelity", "leakage");
  for (const auto& s : states) {
    for (const auto& [label, t] : times) {
      const auto r = compare_drift_with_propagator(s.state, env, t, grid);
      const bool pass = r.fidelity >= 1.0 - 1e-9 && r.leakage < 1e-6;
      ok = ok && pass;
      out << fmt::format("{:<6} {:<8} {:>22.3e} {:>14.3e}  {}\n", s.name, label, 1.0 - r.fidelity,
                         r.leakage, pass ? "ok" : "FAIL");
    }
  }
  out << (ok ? "drift gate agrees with spectral propagation\n"
             : "drift gate DISAGREES with spectral propagation\n");
  return ok ? kExitOk : kExitPhysics;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free-electron OAM qubit simulator", "oamq"};
  app.require_subcommand(1);

  // params
  auto* params = app.add_subcommand("params", "Print beam and field parameters");
  double energy_ev = 0;
  double b_field = 0;
  bool non_relativistic = false;
  params->add_option("--energy-ev", energy_ev, "Kinetic energy (eV)")->required();
  params->add_option("--b-field-t", b_field, "Axial field (T)")->required();
  params->add_flag("--non-relativistic", non_relativistic, "Use the rest mass for Omega_L");

  // run
  auto* run_cmd = app.add_subcommand("run", "Execute a column script");
  std::string script;
  std::string outdir = ".";
  bool dump_fields = false;
  run_cmd->add_option("file", script, "Column script")->required();
  run_cmd->add_option("--outdir", outdir, "Output directory for images and the run log");
  run_cmd->add_flag("--dump-fields", dump_fields, "Write .lgf field dumps next to snapshots");

  // gate
  auto* gate = app.add_subcommand("gate", "Print a gate matrix");
  gate->require_subcommand(1);
  std::string theta_text = "pi/2";
  auto* g_conv = gate->add_subcommand("converter", "Mode converter R_y(theta)");
  g_conv->add_option("--theta", theta_text, "Rotation angle (accepts pi expressions)");
  auto* g_drift = gate->add_subcommand("drift", "Drift tube diag(1, exp(2i Omega_L t))");
  double g_energy = 10000;
  double g_field = 0.1;
  std::optional<std::string> drift_time, drift_fraction, drift_length_m;
  g_drift->add_option("--energy-ev", g_energy, "Kinetic energy (eV)");
  g_drift->add_option("--b-field-t", g_field, "Axial field (T)");
  auto* o_time = g_drift->add_option("--time", drift_time, "Drift time (s)");
  auto* o_frac = g_drift->add_option("--larmor-fraction", drift_fraction, "Fraction of T_L");
  auto* o_len = g_drift->add_option("--length-m", drift_length_m, "Drift length (m)");
  o_time->excludes(o_frac)->excludes(o_len);
  o_frac->excludes(o_len);
  gate->add_subcommand("hadamard", "Hadamard gate");
  gate->add_subcommand("pauli-z", "Pauli-Z gate");
  gate->add_subcommand("basis-change", "T = R_y(pi/4)");
  auto* g_rot = gate->add_subcommand("rot", "Rotation R_axis(theta)");
  std::string axis = "z";
  std::string rot_theta = "pi";
  g_rot->add_option("--axis", axis, "x, y or z")->check(CLI::IsMember({"x", "y", "z"}));
  g_rot->add_option("--theta", rot_theta, "Rotation angle (accepts pi expressions)");

  // render
  auto* render = app.add_subcommand("render", "Render a field dump to a PPM image");
  std::string dump_path;
  std::string image_path;
  ImageSpec image;
  render->add_option("dump", dump_path, "Field dump (.lgf)")->required();
  render->add_option("-o,--out", image_path, "Output image (.ppm)")->required();
  render->add_option("--gamma", image.gamma_display, "Display gamma");
  render->add_option("--scale-bar-m", image.scale_bar_length, "Scale bar length (m)");
  render->add_option("--width", image.width, "Image width (px)");
  render->add_option("--height", image.height, "Image height (px)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check the drift gate against spectral propagation");
  double v_energy = 10000;
  double v_field = 0.1;
  int v_samples = kDefaultSamplesPerSide;
  verify_cmd->add_option("--energy-ev", v_energy, "Kinetic energy (eV)");
  verify_cmd->add_option("--b-field-t", v_field, "Axial field (T)");
  verify_cmd->add_option("--samples", v_samples, "Grid samples per side");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*params) {
      print_params(out, derive_beam({energy_ev}, {b_field},
                                    non_relativistic ? MassModel::rest : MassModel::relativistic));
    } else if (*run_cmd) {
      return run_script(out, script, outdir, dump_fields);
    } else if (*gate) {
      GateMatrix g;
      if (*g_conv) {
        g = converter_gate(expression(theta_text, "--theta"));
      } else if (*g_drift) {
        const auto env = derive_beam({g_energy}, {g_field});
        Drift d;
        if (drift_time) {
          d = {Drift::Kind::time, expression(*drift_time, "--time")};
        } else if (drift_fraction) {
          d = {Drift::Kind::larmor_fraction, expression(*drift_fraction, "--larmor-fraction")};
        } else if (drift_length_m) {
          d = {Drift::Kind::length, expression(*drift_length_m, "--length-m")};
        } else {
          throw UsageError("gate drift needs --time, --larmor-fraction or --length-m");
        }
        g = drift_gate(env, drift_duration(d, env));
      } else if (gate->got_subcommand("hadamard")) {
        g = hadamard();
      } else if (gate->got_subcommand("pauli-z")) {
        g = pauli_z();
      } else if (gate->got_subcommand("basis-change")) {
        g = basis_change();
      } else if (*g_rot) {
        const Axis a = axis == "x" ? Axis::x : axis == "y" ? Axis::y : Axis::z;
        g = rotation_gate(a, expression(rot_theta, "--theta"));
      }
      print_gate(out, g);
    } else if (*render) {
      if (!fs::exists(dump_path)) throw UsageError("cannot open " + dump_path + ": file not found");
      const auto field = read_field_dump(fs::path(dump_path));
      image.scale_bar = image.scale_bar_length > 0;
      write_bytes(image_path, render_field(field, image));
      out << "wrote " << image_path << "\n";
    } else if (*verify_cmd) {
      return verify(out, v_energy, v_field, v_samples);
    }
  } catch (const UsageError& e) {
    err << "oamq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "oamq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "oamq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "oamq: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "oamq: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace oamq::cli
