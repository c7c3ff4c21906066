#include "solonet/score_ingest.h"

#include <algorithm>
#include <set>

#include "solonet/xml.h"

namespace solonet {

namespace {

// Note children that duplicate information already carried by <duration> or
// are purely presentational; dropping them loses nothing musical.
const std::set<std::string, std::less<>> kStructuralNoteChildren = {
    "pitch",  "rest", "chord",           "duration", "tie",        "voice",
    "type",   "stem", "beam",            "dot",      "accidental", "staff",
    "instrument",     "time-modification", "notehead", "print",    "notations",
};

std::int64_t parseInteger(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    std::int64_t value = std::stoll(text, &used);
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) {
      ++used;
    }
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw MalformedXml(std::string("invalid integer in <") + what + ">: '" + text + "'");
  }
}

void countNotationKinds(const XmlElement& notations, ScoreDocument& doc) {
  for (const auto& child : notations.children) {
    if (child.name == "tied") continue;
    if (child.name == "technical" || child.name == "articulations" ||
        child.name == "ornaments") {
      for (const auto& inner : child.children) ++doc.skipped[inner.name];
      continue;
    }
    ++doc.skipped[child.name];
  }
}

PitchSpec readPitch(const XmlElement& pitchElement) {
  PitchSpec pitch;
  const XmlElement* step = pitchElement.child("step");
  const XmlElement* octave = pitchElement.child("octave");
  if (step == nullptr || octave == nullptr) {
    throw MalformedXml("pitch element missing step or octave");
  }
  std::string stepText = step->trimmedText();
  if (stepText.size() != 1) throw MalformedXml("invalid pitch step '" + stepText + "'");
  pitch.step = stepText[0];
  pitch.octave = static_cast<int>(parseInteger(octave->trimmedText(), "octave"));
  if (const XmlElement* alter = pitchElement.child("alter")) {
    pitch.alter = static_cast<int>(parseInteger(alter->trimmedText(), "alter"));
  }
  validatePitch(pitch);
  return pitch;
}

void readTieFlags(const XmlElement& note, RawNote& raw) {
  for (const XmlElement* tie : note.childrenNamed("tie")) {
    std::string type = tie->attribute("type");
    if (type == "start") raw.tieStart = true;
    if (type == "stop") raw.tieStop = true;
  }
  if (const XmlElement* notations = note.child("notations")) {
    for (const XmlElement* tied : notations->childrenNamed("tied")) {
      std::string type = tied->attribute("type");
      if (type == "start") raw.tieStart = true;
      if (type == "stop") raw.tieStop = true;
    }
  }
}

// Event under construction: a note, rest or chord with tie flags folded in.
struct ProtoEvent {
  EventKind kind = EventKind::Rest;
  std::vector<PitchSpec> pitches;
  Rational duration{0};
  bool tieStart = false;
  bool tieStop = false;
};

}  // namespace

const PartData* ScoreDocument::part(std::string_view id) const {
  for (const auto& p : parts) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

ScoreDocument parseMusicXml(std::string_view bytes, std::string source) {
  XmlElement root = parseXml(bytes);
  if (root.name != "score-partwise") {
    throw UnsupportedRoot("expected score-partwise root, got <" + root.name + ">");
  }

  ScoreDocument doc;
  doc.source = std::move(source);

  std::map<std::string, std::string> partNames;
  if (const XmlElement* partList = root.child("part-list")) {
    for (const XmlElement* scorePart : partList->childrenNamed("score-part")) {
      std::string id = scorePart->attribute("id");
      if (const XmlElement* name = scorePart->child("part-name")) {
        partNames[id] = name->trimmedText();
      }
    }
  }

  for (const XmlElement* partElement : root.childrenNamed("part")) {
    PartData part;
    part.id = partElement->attribute("id");
    if (doc.part(part.id) != nullptr) {
      throw MalformedXml("duplicate part id '" + part.id + "'");
    }
    auto nameIt = partNames.find(part.id);
    if (nameIt != partNames.end()) part.name = nameIt->second;

    std::int64_t divisions = 0;  // 0 = not declared yet
    int measureNumber = 0;
    for (const XmlElement* measureElement : partElement->childrenNamed("measure")) {
      RawMeasure measure;
      ++measureNumber;
      std::string numberAttr = measureElement->attribute("number");
      measure.number = numberAttr.empty()
                           ? measureNumber
                           : static_cast<int>(parseInteger(numberAttr, "measure number"));

      for (const auto& item : measureElement->children) {
        if (item.name == "attributes") {
          for (const auto& attrChild : item.children) {
            if (attrChild.name == "divisions") {
              std::int64_t value = parseInteger(attrChild.trimmedText(), "divisions");
              if (value <= 0) throw MalformedXml("divisions must be positive");
              divisions = value;
            } else {
              ++doc.skipped[attrChild.name];
            }
          }
          continue;
        }
        if (item.name != "note") {
          ++doc.skipped[item.name];
          continue;
        }

        if (item.hasChild("grace")) {
          ++doc.skipped["grace"];
          continue;
        }
        if (item.hasChild("cue")) {
          ++doc.skipped["cue"];
          continue;
        }

        RawNote raw;
        raw.rest = item.hasChild("rest");
        raw.chordFlag = item.hasChild("chord");
        if (!raw.rest) {
          const XmlElement* pitchElement = item.child("pitch");
          if (pitchElement == nullptr) {
            ++doc.skipped["unpitched"];
            continue;
          }
          raw.pitch = readPitch(*pitchElement);
        }

        const XmlElement* durationElement = item.child("duration");
        std::int64_t durationValue =
            durationElement == nullptr
                ? 0
                : parseInteger(durationElement->trimmedText(), "duration");
        if (durationValue <= 0) {
          throw ZeroDuration("note with duration <= 0 in part '" + part.id +
                             "', measure " + std::to_string(measure.number));
        }
        if (divisions == 0) {
          throw MissingDivisions("part '" + part.id +
                                 "' has notes before a divisions declaration");
        }
        raw.durationDivisions = durationValue;
        raw.divisions = divisions;
        readTieFlags(item, raw);
        if (const XmlElement* notations = item.child("notations")) {
          countNotationKinds(*notations, doc);
        }
        for (const auto& noteChild : item.children) {
          if (!kStructuralNoteChildren.contains(noteChild.name)) {
            ++doc.skipped[noteChild.name];
          }
        }
        measure.notes.push_back(raw);
      }
      part.measures.push_back(std::move(measure));
    }
    doc.parts.push_back(std::move(part));
  }
  return doc;
}

MelodyTrack extractTrack(const ScoreDocument& doc, const TrackSelector& selector,
                         std::string artist, std::string song) {
  const PartData* part = doc.part(selector.partId);
  if (part == nullptr) {
    throw UnknownPart("no part with id '" + selector.partId + "'");
  }

  std::size_t first = 0;
  std::size_t last = part->measures.size();
  if (selector.measureSpan) {
    auto [start, end] = *selector.measureSpan;
    if (start < 1 || end < start || static_cast<std::size_t>(end) > part->measures.size()) {
      throw SpanOutOfRange("measure span (" + std::to_string(start) + ", " +
                           std::to_string(end) + ") outside 1.." +
                           std::to_string(part->measures.size()));
    }
    first = static_cast<std::size_t>(start - 1);
    last = static_cast<std::size_t>(end);
  }

  // Group chord-flagged notes with their predecessor.
  std::vector<ProtoEvent> protos;
  for (std::size_t m = first; m < last; ++m) {
    for (const RawNote& raw : part->measures[m].notes) {
      Rational duration(raw.durationDivisions, 4 * raw.divisions);
      if (raw.chordFlag && !raw.rest && !protos.empty() &&
          protos.back().kind != EventKind::Rest) {
        ProtoEvent& head = protos.back();
        head.pitches.push_back(raw.pitch);
        head.kind = EventKind::Chord;
        head.tieStart = head.tieStart && raw.tieStart;
        head.tieStop = head.tieStop && raw.tieStop;
        continue;
      }
      ProtoEvent proto;
      proto.duration = duration;
      if (raw.rest) {
        proto.kind = EventKind::Rest;
      } else {
        proto.kind = EventKind::Note;
        proto.pitches = {raw.pitch};
        proto.tieStart = raw.tieStart;
        proto.tieStop = raw.tieStop;
      }
      protos.push_back(std::move(proto));
    }
  }

  // Merge tie continuations: stop-flagged event with the same pitches as an
  // open start-flagged predecessor extends it.
  std::vector<ProtoEvent> merged;
  for (ProtoEvent& proto : protos) {
    if (!merged.empty() && merged.back().tieStart && proto.tieStop &&
        merged.back().kind == proto.kind && merged.back().kind != EventKind::Rest) {
      auto samePitches = [](std::vector<PitchSpec> a, std::vector<PitchSpec> b) {
        auto byMidi = [](const PitchSpec& x, const PitchSpec& y) {
          return std::tuple(midiNumber(x), x.step, x.alter) <
                 std::tuple(midiNumber(y), y.step, y.alter);
        };
        std::sort(a.begin(), a.end(), byMidi);
        std::sort(b.begin(), b.end(), byMidi);
        return a == b;
      };
      if (samePitches(merged.back().pitches, proto.pitches)) {
        merged.back().duration = merged.back().duration + proto.duration;
        merged.back().tieStart = proto.tieStart;  // chains keep merging
        continue;
      }
    }
    merged.push_back(std::move(proto));
  }

  if (merged.empty()) {
    throw EmptySelection("no events in selected span of part '" + selector.partId + "'");
  }

  MelodyTrack track;
  track.artist = std::move(artist);
  track.song = std::move(song);
  track.events.reserve(merged.size());
  for (const ProtoEvent& proto : merged) {
    switch (proto.kind) {
      case EventKind::Rest:
        track.events.push_back(NoteEvent::rest(proto.duration));
        break;
      case EventKind::Note:
        track.events.push_back(NoteEvent::note(proto.pitches.front(), proto.duration));
        break;
      case EventKind::Chord:
        track.events.push_back(NoteEvent::chord(proto.pitches, proto.duration));
        break;
    }
  }
  return track;
}

}  // namespace solonet
