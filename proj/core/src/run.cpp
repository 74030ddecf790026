#include "oamq/run.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>

#include "oamq/field_io.hpp"
#include "oamq/mode_fields.hpp"
#include "oamq/render.hpp"

namespace oamq {
namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  return fmt::format("{:.17g}", v);
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : "null"; }

std::string complex_pair(Complex c) { return "[" + num(c.real()) + ", " + num(c.imag()) + "]"; }

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<int>(ch));
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

}  // namespace

double drift_duration(const Drift& drift, const BeamEnvironment& env) {
  switch (drift.kind) {
    case Drift::Kind::time:
      return drift.value;
    case Drift::Kind::larmor_fraction:
      return drift.value * env.require_larmor_period();
    case Drift::Kind::length:
      return drift.value / env.speed();
  }
  return 0.0;
}

TransverseGrid resolve_grid(const GridDecl& grid, const BeamEnvironment& env) {
  const double half_extent = grid.unit == GridDecl::Unit::magnetic_waist
                                 ? grid.half_extent * env.require_magnetic_waist()
                                 : grid.half_extent;
  return TransverseGrid(grid.samples, half_extent);
}

RunLog run_column(const ColumnSpec& spec, const RunOptions& options) {
  const auto env = derive_beam({spec.beam.energy_ev}, {spec.beam.b_field_t},
                               spec.beam.relativistic ? MassModel::relativistic : MassModel::rest);
  RunLog log{env, {}};

  QubitState state = spec.initial_state.to_state();
  double t = 0.0;
  log.records.push_back({"initial", 0, GateMatrix::identity(), state, bloch(state), 0.0, 0.0, {}});

  if (!options.outdir.empty()) std::filesystem::create_directories(options.outdir);

  for (const auto& element : spec.elements) {
    RunRecord rec;
    rec.label = describe(element);
    rec.line = element.line;
    try {
      if (const auto* c = std::get_if<Converter>(&element.op)) {
        rec.gate = converter_gate(c->theta);
      } else if (const auto* d = std::get_if<Drift>(&element.op)) {
        const double dt = drift_duration(*d, env);
        rec.gate = drift_gate(env, dt);
        t += dt;
      } else if (const auto* s = std::get_if<Snapshot>(&element.op)) {
        const double waist = env.require_magnetic_waist();
        const auto grid = resolve_grid(spec.grid, env);
        const auto field = synthesize_qubit_field(state, waist, grid);
        ImageSpec image;
        image.scale_bar = true;
        image.scale_bar_length = waist;
        const auto bytes = render_field(field, image);
        if (!options.outdir.empty()) {
          const auto path = options.outdir / s->filename;
          if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
          write_bytes(path, bytes);
          if (options.dump_fields) {
            auto dump = path;
            dump.replace_extension(".lgf");
            write_field_dump(dump, field);
          }
        }
        rec.image = s->filename;
      }
    } catch (const DomainError& e) {
      throw DomainError(fmt::format("line {}: {}: {}", element.line, rec.label, e.what()));
    }
    state = apply(rec.gate, state);
    rec.state = state;
    rec.bloch_vector = bloch(state);
    rec.cumulative_t = t;
    rec.cumulative_z = env.speed() * t;
    log.records.push_back(std::move(rec));
  }

  if (!options.outdir.empty()) {
    std::ofstream out(options.outdir / options.log_name);
    if (!out) throw FormatError("cannot write run log to " + (options.outdir / options.log_name).string());
    out << to_json(log);
  }
  return log;
}

std::string to_json(const RunLog& log) {
  const auto& b = log.beam;
  std::string out = "{\n";
  out += "  \"beam\": {\n";
  out += "    \"kinetic_energy_ev\": " + num(b.kinetic_energy_ev()) + ",\n";
  out += "    \"b_field_t\": " + num(b.b_field()) + ",\n";
  out += std::string("    \"relativistic\": ") +
         (b.mass_model() == MassModel::relativistic ? "true" : "false") + ",\n";
  out += "    \"gamma\": " + num(b.gamma()) + ",\n";
  out += "    \"speed_m_per_s\": " + num(b.speed()) + ",\n";
  out += "    \"wavenumber_per_m\": " + num(b.wavenumber()) + ",\n";
  out += "    \"larmor_omega_rad_per_s\": " + opt_num(b.larmor_omega()) + ",\n";
  out += "    \"larmor_period_s\": " + opt_num(b.larmor_period()) + ",\n";
  out += "    \"magnetic_waist_m\": " + opt_num(b.magnetic_waist()) + ",\n";
  out += "    \"oscillation_length_m\": " + opt_num(b.oscillation_length()) + "\n";
  out += "  },\n";
  out += "  \"records\": [";
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const auto& r = log.records[i];
    const auto& g = r.gate;
    out += i == 0 ? "\n" : ",\n";
    out += "    {\n";
    out += "      \"label\": " + quoted(r.label) + ",\n";
    out += "      \"line\": " + std::to_string(r.line) + ",\n";
    out += "      \"gate\": [" + complex_pair(g(0, 0)) + ", " + complex_pair(g(0, 1)) + ", " +
           complex_pair(g(1, 0)) + ", " + complex_pair(g(1, 1)) + "],\n";
    out += "      \"state\": [" + complex_pair(r.state.c0()) + ", " + complex_pair(r.state.c1()) + "],\n";
    out += "      \"bloch\": [" + num(r.bloch_vector.x) + ", " + num(r.bloch_vector.y) + ", " +
           num(r.bloch_vector.z) + "],\n";
    out += "      \"z_m\": " + num(r.cumulative_z) + ",\n";
    out += "      \"t_s\": " + num(r.cumulative_t) + ",\n";
    out += "      \"image\": " + (r.image ? quoted(*r.image) : std::string("null")) + "\n";
    out += "    }";
  }
  out += "\n  ]\n}\n";
  return out;
}

}  // namespace oamq
