#pragma once

// Boundary unit types. Everything past a constructor is SI.

namespace oamq {

struct ElectronVolts {
  double value;
};

struct Tesla {
  double value;
};

namespace literals {

constexpr ElectronVolts operator""_eV(long double v) { return {static_cast<double>(v)}; }
constexpr ElectronVolts operator""_eV(unsigned long long v) { return {static_cast<double>(v)}; }
constexpr ElectronVolts operator""_keV(long double v) { return {static_cast<double>(v) * 1e3}; }
constexpr ElectronVolts operator""_keV(unsigned long long v) { return {static_cast<double>(v) * 1e3}; }
constexpr Tesla operator""_T(long double v) { return {static_cast<double>(v)}; }
constexpr Tesla operator""_T(unsigned long long v) { return {static_cast<double>(v)}; }
// Lengths are plain metres.
constexpr double operator""_nm(long double v) { return static_cast<double>(v) * 1e-9; }
constexpr double operator""_nm(unsigned long long v) { return static_cast<double>(v) * 1e-9; }
constexpr double operator""_mm(long double v) { return static_cast<double>(v) * 1e-3; }
constexpr double operator""_mm(unsigned long long v) { return static_cast<double>(v) * 1e-3; }

}  // namespace literals
}  // namespace oamq
