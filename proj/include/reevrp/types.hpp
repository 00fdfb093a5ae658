#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace reevrp {

// All quantities are integers so cached route statistics and objective values
// compare exactly.
using NodeId = std::int32_t;
using Centimiles = std::int64_t;   // 1/100 mile
using Seconds = std::int64_t;
using Packages = std::int64_t;

// Per-mile rates are stored in micro-USD per mile. Multiplying a rate by a
// distance in centimiles yields Money in units of 1e-8 USD, which keeps every
// route cost an exact integer. Documents report money in micro-USD.
using Rate = std::int64_t;
using Money = std::int64_t;

inline constexpr Money kMoneyPerMicroUsd = 100;
inline constexpr Centimiles kCentimilesPerMile = 100;
inline constexpr Seconds kSecondsPerHour = 3600;

/// Rounds internal money to micro-USD, ties away from zero.
inline std::int64_t to_micro_usd(Money m) {
    if (m >= 0) return (m + kMoneyPerMicroUsd / 2) / kMoneyPerMicroUsd;
    return -((-m + kMoneyPerMicroUsd / 2) / kMoneyPerMicroUsd);
}

inline double to_usd(Money m) { return static_cast<double>(m) * 1e-8; }
inline double to_miles(Centimiles d) { return static_cast<double>(d) / 100.0; }
inline double to_hours(Seconds s) { return static_cast<double>(s) / 3600.0; }

enum class VehicleType : std::uint8_t { Hybrid, Conventional };

// Extended types used by the set-partitioning formulation: a hybrid route is
// either all-electric (E) or engages its range extender (G).
enum class Subtype : std::uint8_t { E, G, C };

inline char type_code(VehicleType t) { return t == VehicleType::Hybrid ? 'H' : 'C'; }
inline char subtype_code(Subtype k) {
    switch (k) {
        case Subtype::E: return 'E';
        case Subtype::G: return 'G';
        case Subtype::C: return 'C';
    }
    return '?';
}

inline VehicleType vehicle_class(Subtype k) {
    return k == Subtype::C ? VehicleType::Conventional : VehicleType::Hybrid;
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed documents, broken instance invariants, bad arguments.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// No solution satisfies the constraints (or none was found).
class Infeasible : public Error {
public:
    using Error::Error;
};

class BevRangeExceeded : public Error {
public:
    using Error::Error;
};

class InstanceTooLarge : public Error {
public:
    using Error::Error;
};

class InvalidColumns : public Error {
public:
    using Error::Error;
};

}  // namespace reevrp
