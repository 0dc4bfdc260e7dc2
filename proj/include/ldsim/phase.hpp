#pragma once

#include <string>

#include "ldsim/fault.hpp"

namespace ldsim {

/// Mission phases in nominal order. A flight may skip phases forward
/// (a hop with no cruise) but never move backward; Abort is reachable
/// from anywhere.
enum class FlightPhase {
  kIdle = 0,
  kVerticalAscent,
  kBallisticAscent,
  kCruise,
  kBallisticDescent,
  kVerticalDescent,
  kTouchdown,
  kAbort,
};

inline const char* to_string(FlightPhase p) {
  switch (p) {
    case FlightPhase::kIdle: return "Idle";
    case FlightPhase::kVerticalAscent: return "VerticalAscent";
    case FlightPhase::kBallisticAscent: return "BallisticAscent";
    case FlightPhase::kCruise: return "Cruise";
    case FlightPhase::kBallisticDescent: return "BallisticDescent";
    case FlightPhase::kVerticalDescent: return "VerticalDescent";
    case FlightPhase::kTouchdown: return "Touchdown";
    case FlightPhase::kAbort: return "Abort";
  }
  return "?";
}

/// Validated transition. Staying put is always legal; moving forward in
/// the nominal order or aborting is legal; anything else is a logic
/// fault in the caller, not a recoverable condition.
inline FlightPhase phase_transition(FlightPhase from, FlightPhase to,
                                    double sim_time) {
  if (to == from || to == FlightPhase::kAbort) return to;
  if (from == FlightPhase::kAbort ||
      static_cast<int>(to) < static_cast<int>(from)) {
    throw SimFault(std::string("illegal phase transition ") + to_string(from) +
                       " -> " + to_string(to),
                   sim_time);
  }
  return to;
}

}  // namespace ldsim
