// Pitch spelling, MIDI conversion and chromatic transposition.

#pragma once

#include <stdexcept>
#include <string>

namespace solonet {

/// Thrown when a transposed pitch leaves the representable spelling range.
struct RangeExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A spelled pitch: letter step, accidental offset and octave.
///
/// Enharmonic spellings (C#4 vs Db4) are distinct values and map to distinct
/// node labels; only the MIDI number collapses them.
struct PitchSpec {
  char step = 'C';   // one of C D E F G A B
  int alter = 0;     // semitone offset in [-2, 2]
  int octave = 4;    // [0, 9]

  bool operator==(const PitchSpec&) const = default;
};

/// Index of the letter within the C..B cycle (C=0 .. B=6).
int stepIndex(char step);

/// Semitone offset of the natural letter within an octave (C=0, D=2, ... B=11).
int stepSemitone(char step);

/// MIDI note number; C4 = 60.
int midiNumber(const PitchSpec& pitch);

/// Validates field ranges, throws std::invalid_argument on violation.
void validatePitch(const PitchSpec& pitch);

/// Printable spelling, e.g. "C4", "F#3", "Bbb5".
std::string pitchLabel(const PitchSpec& pitch);

/// Shifts a pitch by a signed number of semitones.
///
/// The letter moves by the conventional interval size for the chromatic
/// distance (minor second moves one letter, augmented fourth three, etc.) and
/// the accidental absorbs the remainder, so the map is injective: distinct
/// spellings stay distinct and the induced node-label map is a bijection.
/// Throws RangeExceeded when octave leaves [0, 9] or alter leaves [-2, 2].
PitchSpec transposePitch(const PitchSpec& pitch, int semitones);

}  // namespace solonet
