#include "solonet/melody.h"

#include <algorithm>
#include <utility>

namespace solonet {

NoteEvent NoteEvent::note(PitchSpec pitch, Rational duration) {
  validatePitch(pitch);
  if (!duration.isPositive()) throw std::invalid_argument("duration must be > 0");
  NoteEvent event;
  event.kind = EventKind::Note;
  event.pitches = {pitch};
  event.duration = duration;
  return event;
}

NoteEvent NoteEvent::rest(Rational duration) {
  if (!duration.isPositive()) throw std::invalid_argument("duration must be > 0");
  NoteEvent event;
  event.kind = EventKind::Rest;
  event.duration = duration;
  return event;
}

NoteEvent NoteEvent::chord(std::vector<PitchSpec> pitches, Rational duration) {
  if (!duration.isPositive()) throw std::invalid_argument("duration must be > 0");
  for (const auto& pitch : pitches) validatePitch(pitch);
  std::sort(pitches.begin(), pitches.end(), [](const PitchSpec& a, const PitchSpec& b) {
    int ma = midiNumber(a), mb = midiNumber(b);
    if (ma != mb) return ma < mb;
    if (a.step != b.step) return stepIndex(a.step) < stepIndex(b.step);
    return a.alter < b.alter;
  });
  pitches.erase(std::unique(pitches.begin(), pitches.end()), pitches.end());
  if (pitches.size() < 2) {
    if (pitches.empty()) throw std::invalid_argument("chord needs pitches");
    return note(pitches.front(), duration);  // degenerate chord collapses to a note
  }
  NoteEvent event;
  event.kind = EventKind::Chord;
  event.pitches = std::move(pitches);
  event.duration = duration;
  return event;
}

std::string nodeKey(const NoteEvent& event) {
  std::string key;
  switch (event.kind) {
    case EventKind::Rest:
      key = "rest";
      break;
    case EventKind::Note:
      key = pitchLabel(event.pitches.front());
      break;
    case EventKind::Chord:
      for (std::size_t i = 0; i < event.pitches.size(); ++i) {
        if (i > 0) key += '+';
        key += pitchLabel(event.pitches[i]);
      }
      break;
  }
  key += ':';
  key += event.duration.str();
  return key;
}

std::size_t trackLength(const MelodyTrack& track) { return track.events.size(); }

MelodyTrack concatenateTracks(const std::vector<MelodyTrack>& tracks,
                              ConcatPolicy policy) {
  if (tracks.empty()) throw EmptyInput("concatenateTracks: no tracks");
  MelodyTrack out;
  out.artist = tracks.front().artist;
  out.song = "concatenated";
  for (const auto& track : tracks) {
    if (track.events.empty()) continue;  // contributes neither events nor seams
    if (policy == ConcatPolicy::Seamed && !out.events.empty()) {
      out.boundaries.push_back(out.events.size());
    }
    for (std::size_t seam : track.boundaries) {
      out.boundaries.push_back(out.events.size() + seam);
    }
    out.events.insert(out.events.end(), track.events.begin(), track.events.end());
  }
  return out;
}

MelodyTrack transpose(const MelodyTrack& track, int semitones) {
  MelodyTrack out = track;
  for (auto& event : out.events) {
    for (auto& pitch : event.pitches) {
      pitch = transposePitch(pitch, semitones);
    }
  }
  return out;
}

}  // namespace solonet
