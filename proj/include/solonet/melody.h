// Melodic data model: events, tracks and canonical node labels.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "solonet/pitch.h"
#include "solonet/rational.h"

namespace solonet {

struct EmptyInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EventKind { Note, Rest, Chord };

/// One melodic unit: a pitched note, a rest or a chord, with an exact
/// duration in whole notes.
struct NoteEvent {
  EventKind kind = EventKind::Rest;
  std::vector<PitchSpec> pitches;  // one entry for Note, >= 2 sorted by MIDI for Chord
  Rational duration{1, 4};

  static NoteEvent note(PitchSpec pitch, Rational duration);
  static NoteEvent rest(Rational duration);
  /// Deduplicates and sorts the pitches ascending by MIDI number.
  static NoteEvent chord(std::vector<PitchSpec> pitches, Rational duration);

  bool operator==(const NoteEvent&) const = default;
};

/// Ordered event sequence for one solo, or for several solos concatenated.
///
/// `boundaries` holds the indices where a concatenation seam precedes the
/// event; network construction adds no link across a seam.
struct MelodyTrack {
  std::vector<NoteEvent> events;
  std::string artist;
  std::string song;
  std::vector<std::size_t> boundaries;
};

enum class ConcatPolicy { Seamed, Fused };

/// Canonical node label. Two events map to the same label iff kind, all
/// pitches and duration are equal; pitch plus duration identify a note, so
/// the same pitch at two durations yields two nodes.
std::string nodeKey(const NoteEvent& event);

/// Number of events (notes, chords and rests) in the track.
std::size_t trackLength(const MelodyTrack& track);

/// Appends tracks in order. Seamed records the seam indices; Fused records
/// none, so a link forms from each solo's last event to the next solo's
/// first. Throws EmptyInput when `tracks` is empty.
MelodyTrack concatenateTracks(const std::vector<MelodyTrack>& tracks,
                              ConcatPolicy policy);

/// Shifts every pitch by `semitones`; rests and durations are untouched.
/// Throws RangeExceeded when any pitch leaves the representable range.
MelodyTrack transpose(const MelodyTrack& track, int semitones);

}  // namespace solonet
