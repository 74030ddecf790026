#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oamq/errors.hpp"
#include "oamq/qubit.hpp"

namespace oamq {

// A column script is line-oriented UTF-8 text; `#` starts a comment.
//
//   beam energy_ev=10000 b_field_t=0.1 [relativistic=true|false]
//   grid samples=512 half_extent_wm=4          (or half_extent_m=<metres>)
//   state 0|1|+|-|R|L                          (or: state re0 im0 re1 im1)
//   converter theta=pi/2
//   drift time=<s> | larmor_fraction=<f> | length_m=<m>
//   snapshot <file.ppm>
//
// Numbers may be written as products and quotients of literals and `pi`,
// e.g. `pi/2`, `3*pi/4`, `1/16`. Exactly one beam line, before any element;
// grid and state are optional and must also precede the elements.

struct BeamDecl {
  double energy_ev = 0;
  double b_field_t = 0;
  bool relativistic = true;

  bool operator==(const BeamDecl&) const = default;
};

struct GridDecl {
  enum class Unit { magnetic_waist, metre };

  int samples = 512;
  double half_extent = 4.0;
  Unit unit = Unit::magnetic_waist;

  bool operator==(const GridDecl&) const = default;
};

struct StateDecl {
  /// One of 0 1 + - R L, or empty for explicit amplitudes.
  std::string name = "0";
  /// re0 im0 re1 im1
  std::array<double, 4> amplitudes{1.0, 0.0, 0.0, 0.0};

  QubitState to_state() const;
  bool operator==(const StateDecl&) const = default;
};

struct Converter {
  double theta = 0;

  bool operator==(const Converter&) const = default;
};

struct Drift {
  enum class Kind { time, larmor_fraction, length };

  Kind kind = Kind::time;
  double value = 0;

  bool operator==(const Drift&) const = default;
};

struct Snapshot {
  std::string filename;

  bool operator==(const Snapshot&) const = default;
};

struct ColumnElement {
  std::variant<Converter, Drift, Snapshot> op;
  /// 1-based source line; 0 for programmatically built elements.
  int line = 0;

  /// Source lines do not take part in comparisons.
  bool operator==(const ColumnElement& other) const { return op == other.op; }
};

struct ColumnSpec {
  BeamDecl beam;
  GridDecl grid;
  StateDecl initial_state;
  std::vector<ColumnElement> elements;

  bool operator==(const ColumnSpec&) const = default;
};

enum class ParseErrorKind {
  missing_beam,
  duplicate_beam,
  element_before_beam,
  unknown_keyword,
  unknown_parameter,
  missing_parameter,
  invalid_value,
  unnormalized_state,
  negative_drift,
  conflicting_drift,
  duplicate_declaration,
  declaration_after_element,
};

std::string_view to_string(ParseErrorKind kind);

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& detail);

  ParseErrorKind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

/// Evaluates `pi`, numeric literals, `*` and `/`. Throws ParseError
/// (invalid_value, line 0) on anything else.
double parse_number_expression(std::string_view text);

ColumnSpec parse_column(std::string_view text);

/// Canonical script text; parse_column(format_column(s)) == s.
std::string format_column(const ColumnSpec& spec);

std::string describe(const ColumnElement& element);

}  // namespace oamq
