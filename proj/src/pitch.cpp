#include "solonet/pitch.h"

#include <array>

namespace solonet {

namespace {

constexpr std::array<char, 7> kSteps = {'C', 'D', 'E', 'F', 'G', 'A', 'B'};
constexpr std::array<int, 7> kStepSemitones = {0, 2, 4, 5, 7, 9, 11};

// Letter steps spanned by a chromatic interval of 0..11 semitones
// (unison, m2, M2, m3, M3, P4, A4, P5, m6, M6, m7, M7).
constexpr std::array<int, 12> kLetterSpan = {0, 1, 1, 2, 2, 3, 3, 4, 5, 5, 6, 6};

}  // namespace

int stepIndex(char step) {
  for (int i = 0; i < 7; ++i) {
    if (kSteps[static_cast<size_t>(i)] == step) return i;
  }
  throw std::invalid_argument(std::string("invalid pitch step: ") + step);
}

int stepSemitone(char step) {
  return kStepSemitones[static_cast<size_t>(stepIndex(step))];
}

int midiNumber(const PitchSpec& pitch) {
  return (pitch.octave + 1) * 12 + stepSemitone(pitch.step) + pitch.alter;
}

void validatePitch(const PitchSpec& pitch) {
  stepIndex(pitch.step);
  if (pitch.alter < -2 || pitch.alter > 2) {
    throw std::invalid_argument("pitch alter outside [-2, 2]");
  }
  if (pitch.octave < 0 || pitch.octave > 9) {
    throw std::invalid_argument("pitch octave outside [0, 9]");
  }
}

std::string pitchLabel(const PitchSpec& pitch) {
  std::string label(1, pitch.step);
  for (int i = 0; i < pitch.alter; ++i) label += '#';
  for (int i = 0; i > pitch.alter; --i) label += 'b';
  label += std::to_string(pitch.octave);
  return label;
}

PitchSpec transposePitch(const PitchSpec& pitch, int semitones) {
  if (semitones == 0) return pitch;

  // Work on a linear letter index (octave * 7 + step) so octave carries fall
  // out of a single division.
  int octaves = semitones >= 0 ? semitones / 12 : -((-semitones + 11) / 12);
  int remainder = semitones - octaves * 12;  // in [0, 11]
  int letterShift = octaves * 7 + kLetterSpan[static_cast<size_t>(remainder)];

  int linear = pitch.octave * 7 + stepIndex(pitch.step) + letterShift;
  if (linear < 0 || linear >= 70) {
    throw RangeExceeded("transposition leaves octave range [0, 9]");
  }
  PitchSpec out;
  out.octave = linear / 7;
  out.step = kSteps[static_cast<size_t>(linear % 7)];
  int naturalMidi = (out.octave + 1) * 12 + stepSemitone(out.step);
  out.alter = midiNumber(pitch) + semitones - naturalMidi;
  if (out.alter < -2 || out.alter > 2) {
    throw RangeExceeded("transposition needs an accidental beyond double sharp/flat");
  }
  return out;
}

}  // namespace solonet
