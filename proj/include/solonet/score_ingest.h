// MusicXML ingestion: score-partwise subset to MelodyTrack.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "solonet/melody.h"

namespace solonet {

struct UnsupportedRoot : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingDivisions : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroDuration : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownPart : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SpanOutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptySelection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One note/rest element as read from the file, before tie merging and chord
/// grouping. Durations stay as raw division counts so extraction can build
/// exact rationals.
struct RawNote {
  bool rest = false;
  bool chordFlag = false;  // MusicXML <chord/>: sounds with the previous note
  PitchSpec pitch;
  std::int64_t durationDivisions = 0;
  std::int64_t divisions = 0;  // divisions-per-quarter in effect at this note
  bool tieStart = false;
  bool tieStop = false;
};

struct RawMeasure {
  int number = 0;
  std::vector<RawNote> notes;
};

struct PartData {
  std::string id;
  std::string name;
  std::vector<RawMeasure> measures;
};

/// Parsed score. `skipped` counts every ignored element by tag name so
/// nothing is dropped silently.
struct ScoreDocument {
  std::vector<PartData> parts;
  std::map<std::string, std::int64_t> skipped;
  std::string source;

  const PartData* part(std::string_view id) const;
};

/// Selects the part and optional 1-based inclusive measure span to analyze.
struct TrackSelector {
  std::string partId;
  std::optional<std::pair<int, int>> measureSpan;
};

/// Parses an uncompressed MusicXML document (root must be score-partwise).
///
/// Honored elements: part-list, part, measure, attributes/divisions and
/// note (pitch/step, alter, octave; rest; chord; duration; tie/tied).
/// Grace and cue notes are skipped with a counter; every other element is
/// counted under its tag name.
ScoreDocument parseMusicXml(std::string_view bytes, std::string source = "");

/// Restricts the part to the selector span, groups chords and merges tied
/// notes, yielding the event sequence of the solo.
MelodyTrack extractTrack(const ScoreDocument& doc, const TrackSelector& selector,
                         std::string artist, std::string song);

}  // namespace solonet
