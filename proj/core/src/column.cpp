#include "oamq/column.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <optional>
#include <span>
#include <type_traits>

#include "oamq/physics.hpp"

namespace oamq {
namespace {

constexpr double kStateNormTolerance = 1e-6;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::optional<QubitState> named_state(std::string_view name) {
  if (name == "0") return QubitState::zero();
  if (name == "1") return QubitState::one();
  if (name == "+") return QubitState::plus();
  if (name == "-") return QubitState::minus();
  if (name == "R") return QubitState::right();
  if (name == "L") return QubitState::left();
  return std::nullopt;
}

double parse_factor(std::string_view text) {
  bool negative = false;
  while (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative ^= text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw ParseError(ParseErrorKind::invalid_value, 0, "empty number");
  double value = 0;
  if (text == "pi") {
    value = kPi;
  } else {
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
      throw ParseError(ParseErrorKind::invalid_value, 0,
                       fmt::format("'{}' is not a number", text));
    }
  }
  return negative ? -value : value;
}

// key=value pairs of one line; rejects duplicates and keys not in `allowed`.
using Params = std::map<std::string, std::string_view, std::less<>>;

Params collect_params(std::span<const std::string_view> tokens,
                      std::initializer_list<std::string_view> allowed, int line,
                      std::string_view keyword) {
  Params params;
  for (const auto tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError(ParseErrorKind::invalid_value, line,
                       fmt::format("{}: expected key=value, got '{}'", keyword, tok));
    }
    const auto key = tok.substr(0, eq);
    bool known = false;
    for (const auto a : allowed) known = known || a == key;
    if (!known) {
      throw ParseError(ParseErrorKind::unknown_parameter, line,
                       fmt::format("{}: unknown parameter '{}'", keyword, key));
    }
    if (!params.emplace(std::string(key), tok.substr(eq + 1)).second) {
      throw ParseError(ParseErrorKind::invalid_value, line,
                       fmt::format("{}: parameter '{}' given twice", keyword, key));
    }
  }
  return params;
}

double number_at(std::string_view text, int line, std::string_view what) {
  try {
    return parse_number_expression(text);
  } catch (const ParseError& e) {
    throw ParseError(ParseErrorKind::invalid_value, line, fmt::format("{}: {}", what, e.what()));
  }
}

double required(const Params& p, std::string_view key, int line, std::string_view keyword) {
  const auto it = p.find(key);
  if (it == p.end()) {
    throw ParseError(ParseErrorKind::missing_parameter, line,
                     fmt::format("{}: missing {}=", keyword, key));
  }
  return number_at(it->second, line, key);
}

std::string number(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

QubitState StateDecl::to_state() const {
  if (!name.empty()) {
    if (auto s = named_state(name)) return *s;
    throw ParseError(ParseErrorKind::invalid_value, 0, "unknown named state '" + name + "'");
  }
  return QubitState::from_amplitudes({amplitudes[0], amplitudes[1]},
                                     {amplitudes[2], amplitudes[3]}, 4 * kStateNormTolerance);
}

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::missing_beam: return "missing beam";
    case ParseErrorKind::duplicate_beam: return "duplicate beam";
    case ParseErrorKind::element_before_beam: return "element before beam";
    case ParseErrorKind::unknown_keyword: return "unknown keyword";
    case ParseErrorKind::unknown_parameter: return "unknown parameter";
    case ParseErrorKind::missing_parameter: return "missing parameter";
    case ParseErrorKind::invalid_value: return "invalid value";
    case ParseErrorKind::unnormalized_state: return "unnormalized state";
    case ParseErrorKind::negative_drift: return "negative drift";
    case ParseErrorKind::conflicting_drift: return "conflicting drift parameterizations";
    case ParseErrorKind::duplicate_declaration: return "duplicate declaration";
    case ParseErrorKind::declaration_after_element: return "declaration after element";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& detail)
    : Error(line > 0 ? fmt::format("line {}: {}: {}", line, to_string(kind), detail)
                     : fmt::format("{}: {}", to_string(kind), detail)),
      kind_(kind),
      line_(line) {}

double parse_number_expression(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError(ParseErrorKind::invalid_value, 0, "empty value");

  double result = 1.0;
  char op = '*';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != '*' && text[i] != '/') continue;
    const double factor = parse_factor(trim(text.substr(start, i - start)));
    if (op == '*') {
      result *= factor;
    } else {
      if (factor == 0.0) throw ParseError(ParseErrorKind::invalid_value, 0, "division by zero");
      result /= factor;
    }
    if (i < text.size()) op = text[i];
    start = i + 1;
  }
  if (!std::isfinite(result)) {
    throw ParseError(ParseErrorKind::invalid_value, 0, fmt::format("'{}' is not finite", text));
  }
  return result;
}

ColumnSpec parse_column(std::string_view text) {
  ColumnSpec spec;
  bool have_beam = false;
  bool have_grid = false;
  bool have_state = false;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split_ws(trim(line));
    if (tokens.empty()) continue;
    const auto keyword = tokens[0];
    const std::span<const std::string_view> rest(tokens.data() + 1, tokens.size() - 1);

    const bool is_element = keyword == "converter" || keyword == "drift" || keyword == "snapshot";
    if (is_element && !have_beam) {
      throw ParseError(ParseErrorKind::element_before_beam, line_no,
                       fmt::format("'{}' appears before the beam declaration", keyword));
    }
    const auto setup_guard = [&](bool& seen, std::string_view name) {
      if (!spec.elements.empty()) {
        throw ParseError(ParseErrorKind::declaration_after_element, line_no,
                         fmt::format("'{}' must precede all column elements", name));
      }
      if (seen) {
        throw ParseError(ParseErrorKind::duplicate_declaration, line_no,
                         fmt::format("'{}' declared twice", name));
      }
      seen = true;
    };

    if (keyword == "beam") {
      if (have_beam) {
        throw ParseError(ParseErrorKind::duplicate_beam, line_no, "only one beam line is allowed");
      }
      if (!spec.elements.empty()) {
        throw ParseError(ParseErrorKind::declaration_after_element, line_no,
                         "'beam' must precede all column elements");
      }
      have_beam = true;
      const auto p = collect_params(rest, {"energy_ev", "b_field_t", "relativistic"}, line_no, "beam");
      spec.beam.energy_ev = required(p, "energy_ev", line_no, "beam");
      spec.beam.b_field_t = required(p, "b_field_t", line_no, "beam");
      if (const auto it = p.find("relativistic"); it != p.end()) {
        if (it->second == "true") {
          spec.beam.relativistic = true;
        } else if (it->second == "false") {
          spec.beam.relativistic = false;
        } else {
          throw ParseError(ParseErrorKind::invalid_value, line_no,
                           "beam: relativistic must be true or false");
        }
      }
    } else if (keyword == "grid") {
      setup_guard(have_grid, "grid");
      const auto p = collect_params(rest, {"samples", "half_extent_wm", "half_extent_m"}, line_no, "grid");
      if (const auto it = p.find("samples"); it != p.end()) {
        int samples = 0;
        const auto v = it->second;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), samples);
        if (ec != std::errc{} || ptr != v.data() + v.size() || samples < 1) {
          throw ParseError(ParseErrorKind::invalid_value, line_no,
                           "grid: samples must be a positive integer");
        }
        spec.grid.samples = samples;
      }
      const bool wm = p.contains("half_extent_wm");
      const bool m = p.contains("half_extent_m");
      if (wm && m) {
        throw ParseError(ParseErrorKind::invalid_value, line_no,
                         "grid: give half_extent_wm or half_extent_m, not both");
      }
      if (wm || m) {
        spec.grid.unit = wm ? GridDecl::Unit::magnetic_waist : GridDecl::Unit::metre;
        spec.grid.half_extent =
            number_at(p.find(wm ? "half_extent_wm" : "half_extent_m")->second, line_no, "grid");
        if (!(spec.grid.half_extent > 0)) {
          throw ParseError(ParseErrorKind::invalid_value, line_no, "grid: half-extent must be positive");
        }
      }
    } else if (keyword == "state") {
      setup_guard(have_state, "state");
      if (rest.size() == 1) {
        const auto s = named_state(rest[0]);
        if (!s) {
          throw ParseError(ParseErrorKind::invalid_value, line_no,
                           fmt::format("state: unknown named state '{}'", rest[0]));
        }
        spec.initial_state.name = std::string(rest[0]);
        spec.initial_state.amplitudes = {s->c0().real(), s->c0().imag(), s->c1().real(),
                                         s->c1().imag()};
      } else if (rest.size() == 4) {
        StateDecl decl;
        decl.name.clear();
        for (std::size_t i = 0; i < 4; ++i) decl.amplitudes[i] = number_at(rest[i], line_no, "state");
        const auto& a = decl.amplitudes;
        const double norm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
        if (std::abs(norm - 1.0) > kStateNormTolerance) {
          throw ParseError(ParseErrorKind::unnormalized_state, line_no,
                           fmt::format("state norm is {:.17g}", norm));
        }
        spec.initial_state = decl;
      } else {
        throw ParseError(ParseErrorKind::invalid_value, line_no,
                         "state: expected a name (0 1 + - R L) or four amplitudes");
      }
    } else if (keyword == "converter") {
      const auto p = collect_params(rest, {"theta"}, line_no, "converter");
      Converter c{kPi / 2.0};
      if (const auto it = p.find("theta"); it != p.end()) c.theta = number_at(it->second, line_no, "theta");
      spec.elements.push_back({c, line_no});
    } else if (keyword == "drift") {
      const auto p = collect_params(rest, {"time", "larmor_fraction", "length_m"}, line_no, "drift");
      if (p.size() > 1) {
        throw ParseError(ParseErrorKind::conflicting_drift, line_no,
                         "drift takes exactly one of time=, larmor_fraction=, length_m=");
      }
      if (p.empty()) {
        throw ParseError(ParseErrorKind::missing_parameter, line_no,
                         "drift needs one of time=, larmor_fraction=, length_m=");
      }
      const auto& [key, raw] = *p.begin();
      Drift d;
      d.kind = key == "time" ? Drift::Kind::time
               : key == "larmor_fraction" ? Drift::Kind::larmor_fraction
                                          : Drift::Kind::length;
      d.value = number_at(raw, line_no, key);
      if (d.value < 0) {
        throw ParseError(ParseErrorKind::negative_drift, line_no,
                         fmt::format("drift {} must be non-negative, got {:.17g}", key, d.value));
      }
      spec.elements.push_back({d, line_no});
    } else if (keyword == "snapshot") {
      if (rest.size() != 1) {
        throw ParseError(rest.empty() ? ParseErrorKind::missing_parameter : ParseErrorKind::invalid_value,
                         line_no, "snapshot takes exactly one file name");
      }
      const std::string name(rest[0]);
      if (name.front() == '/' || name.find("..") != std::string::npos) {
        throw ParseError(ParseErrorKind::invalid_value, line_no,
                         "snapshot file must be a relative path inside the output directory");
      }
      spec.elements.push_back({Snapshot{name}, line_no});
    } else {
      throw ParseError(ParseErrorKind::unknown_keyword, line_no,
                       fmt::format("unknown keyword '{}'", keyword));
    }
  }

  if (!have_beam) {
    throw ParseError(ParseErrorKind::missing_beam, 0, "script has no beam declaration");
  }
  return spec;
}

std::string describe(const ColumnElement& element) {
  return std::visit(
      [](const auto& op) -> std::string {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Converter>) {
          return "converter theta=" + number(op.theta);
        } else if constexpr (std::is_same_v<T, Drift>) {
          switch (op.kind) {
            case Drift::Kind::time: return "drift time=" + number(op.value);
            case Drift::Kind::larmor_fraction: return "drift larmor_fraction=" + number(op.value);
            case Drift::Kind::length: return "drift length_m=" + number(op.value);
          }
          return "drift";
        } else {
          return "snapshot " + op.filename;
        }
      },
      element.op);
}

std::string format_column(const ColumnSpec& spec) {
  std::string out;
  out += fmt::format("beam energy_ev={} b_field_t={} relativistic={}\n", number(spec.beam.energy_ev),
                     number(spec.beam.b_field_t), spec.beam.relativistic ? "true" : "false");
  out += fmt::format("grid samples={} {}={}\n", spec.grid.samples,
                     spec.grid.unit == GridDecl::Unit::magnetic_waist ? "half_extent_wm"
                                                                       : "half_extent_m",
                     number(spec.grid.half_extent));
  if (!spec.initial_state.name.empty()) {
    out += "state " + spec.initial_state.name + "\n";
  } else {
    const auto& a = spec.initial_state.amplitudes;
    out += fmt::format("state {} {} {} {}\n", number(a[0]), number(a[1]), number(a[2]), number(a[3]));
  }
  for (const auto& e : spec.elements) out += describe(e) + "\n";
  return out;
}

}  // namespace oamq
