#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "danse/game/config.hpp"
#include "danse/game/fingers.hpp"
#include "danse/game/target.hpp"
#include "danse/game/trial.hpp"
#include "danse/reactive/machine.hpp"
#include "danse/touch/gateway.hpp"

namespace danse::game {

namespace events {
// Consumed by the UI. Payloads carry names and geometry only.
inline constexpr const char* kShowCrown = "showCrown";            // {finger, hand}
inline constexpr const char* kShowTarget = "showTarget";          // {game, x, y, radius, motion, bounds}
inline constexpr const char* kHideTarget = "hideTarget";          // {reason: hit | timeout | gameEnd}
inline constexpr const char* kProgress = "progress";              // {game, fraction}
inline constexpr const char* kPlayCue = "playCue";                // {cue}
inline constexpr const char* kGamePaused = "gamePaused";          // {}
inline constexpr const char* kGameResumed = "gameResumed";        // {}
inline constexpr const char* kSessionComplete = "sessionComplete";  // {subtheme, games: [{name, picture}]}

// Internal.
inline constexpr const char* kPlayTick = "playTick";      // signs held, game running
inline constexpr const char* kClockTick = "clockTick";    // advances the game clock
inline constexpr const char* kPausedTick = "pausedTick";  // signs released after the start
inline constexpr const char* kCrownTap = "crownTap";      // {t_ms}
inline constexpr const char* kTrialEnd = "trialEnd";      // TrialRecord
inline constexpr const char* kTimeUp = "timeUp";
inline constexpr const char* kGameStart = "gameStart";  // {game}
inline constexpr const char* kGameEnd = "gameEnd";      // {game, active_ticks}

const std::vector<std::string>& ui_events();
const std::vector<std::string>& internal_events();
}  // namespace events

inline constexpr const char* kCueCongratulations = "congratulations";
inline constexpr const char* kCuePlaceSigns = "placeSigns";

enum class PhaseKind { AwaitHold, CrownPrompt, TargetActive, Paused, Finished };

std::string_view to_string(PhaseKind kind);

struct GamePhase {
  PhaseKind kind = PhaseKind::AwaitHold;
  std::optional<Finger> finger;
  std::optional<Target> target;
  /// For Paused: the phase restored when the signs are held again.
  PhaseKind resume = PhaseKind::AwaitHold;
};

/// Host-side state of one running session. Mutated only by the session's
/// own atoms; read it between reactions.
struct SessionState {
  enum class Stage { None, Crown, Target };

  touch::ContactMirror contacts;
  touch::HoldState hold;
  bool started = false;  // signs held at least once
  bool paused = false;
  bool finished = false;
  std::size_t game = 0;
  std::vector<std::int64_t> active_ticks = std::vector<std::int64_t>(4, 0);

  Stage stage = Stage::None;
  Finger finger = Finger::Thumb;
  std::optional<Target> target;
  std::int64_t target_elapsed = 0;  // active ticks since display

  std::vector<TrialRecord> records;

  GamePhase phase() const;
};

struct SessionProgram {
  reactive::Program program;
  std::shared_ptr<const SessionState> state;
};

/// The whole session: gating watcher in parallel with the four games, each
/// game a clock, a trial loop and a touch judge running until its time is
/// up, then the reward summary. A SessionProgram drives one machine only.
SessionProgram build_session_program(const SessionConfig& config);

/// Declares touch and session events so traces can be injected before the
/// first reaction.
void declare_session_events(reactive::Machine& machine);

}  // namespace danse::game
