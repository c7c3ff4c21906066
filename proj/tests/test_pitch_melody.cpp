#include <doctest.h>

#include <random>
#include <set>

#include "solonet/melody.h"
#include "solonet/network.h"

using namespace solonet;

namespace {

NoteEvent quarterNote(char step, int octave, int alter = 0) {
  return NoteEvent::note({step, alter, octave}, Rational(1, 4));
}

}  // namespace

TEST_CASE("midi numbers and labels") {
  CHECK(midiNumber({'C', 0, 4}) == 60);
  CHECK(midiNumber({'A', 0, 4}) == 69);
  CHECK(midiNumber({'C', 1, 4}) == 61);
  CHECK(midiNumber({'D', -1, 4}) == 61);  // enharmonic midi, distinct spelling
  CHECK(pitchLabel({'C', 1, 4}) == "C#4");
  CHECK(pitchLabel({'D', -1, 4}) == "Db4");
  CHECK(pitchLabel({'B', -2, 2}) == "Bbb2");
}

TEST_CASE("node keys separate pitch, duration and kind") {
  NoteEvent quarter = quarterNote('C', 4);
  NoteEvent eighth = NoteEvent::note({'C', 0, 4}, Rational(1, 8));
  CHECK(nodeKey(quarter) == "C4:1/4");
  CHECK(nodeKey(quarter) != nodeKey(eighth));

  CHECK(nodeKey(NoteEvent::rest(Rational(1, 8))) ==
        nodeKey(NoteEvent::rest(Rational(1, 8))));
  CHECK(nodeKey(NoteEvent::rest(Rational(1, 8))) == "rest:1/8");

  // Chord labels do not depend on input order.
  NoteEvent chordA = NoteEvent::chord({{'E', 0, 4}, {'C', 0, 4}}, Rational(1, 4));
  NoteEvent chordB = NoteEvent::chord({{'C', 0, 4}, {'E', 0, 4}}, Rational(1, 4));
  CHECK(nodeKey(chordA) == nodeKey(chordB));
  CHECK(nodeKey(chordA) == "C4+E4:1/4");

  // Enharmonic spellings stay distinct nodes.
  CHECK(nodeKey(quarterNote('C', 4, 1)) != nodeKey(quarterNote('D', 4, -1)));
}

TEST_CASE("chords deduplicate and need two pitches") {
  NoteEvent chord = NoteEvent::chord({{'C', 0, 4}, {'C', 0, 4}, {'E', 0, 4}}, Rational(1, 4));
  CHECK(chord.pitches.size() == 2);
  NoteEvent collapsed = NoteEvent::chord({{'C', 0, 4}, {'C', 0, 4}}, Rational(1, 4));
  CHECK(collapsed.kind == EventKind::Note);
}

TEST_CASE("track length counts events") {
  MelodyTrack golden;
  golden.events = {quarterNote('C', 4), quarterNote('D', 4), quarterNote('D', 4),
                 quarterNote('C', 4), quarterNote('D', 4),
                 NoteEvent::note({'G', 0, 4}, Rational(1, 8)),
                 NoteEvent::rest(Rational(1, 8)),
                 NoteEvent::note({'G', 0, 4}, Rational(1, 2))};
  CHECK(trackLength(golden) == 8);
  CHECK(trackLength(MelodyTrack{}) == 0);
}

TEST_CASE("concatenation is additive and seam-aware") {
  MelodyTrack a;
  a.artist = "X";
  a.events = {quarterNote('A', 3)};
  MelodyTrack b;
  b.artist = "X";
  b.events = {quarterNote('B', 3)};

  MelodyTrack fused = concatenateTracks({a, b}, ConcatPolicy::Fused);
  CHECK(trackLength(fused) == 2);
  CHECK(fused.boundaries.empty());
  SoloNetwork fusedNet = buildNetwork(fused);
  CHECK(fusedNet.edgeCount() == 1);
  CHECK(fusedNet.weight(0, 1) == 1);

  MelodyTrack seamed = concatenateTracks({a, b}, ConcatPolicy::Seamed);
  CHECK(seamed.boundaries == std::vector<std::size_t>{1});
  SoloNetwork seamedNet = buildNetwork(seamed);
  CHECK(seamedNet.nodeCount() == 2);
  CHECK(seamedNet.edgeCount() == 0);

  CHECK_THROWS_AS(concatenateTracks({}, ConcatPolicy::Seamed), EmptyInput);

  MelodyTrack five, seven;
  for (int i = 0; i < 5; ++i) five.events.push_back(quarterNote('C', 4));
  for (int i = 0; i < 7; ++i) seven.events.push_back(quarterNote('D', 4));
  CHECK(trackLength(concatenateTracks({five, seven}, ConcatPolicy::Seamed)) == 12);

  // Empty tracks contribute neither events nor seams.
  MelodyTrack empty;
  MelodyTrack gapped = concatenateTracks({a, empty, b}, ConcatPolicy::Seamed);
  CHECK(gapped.boundaries == std::vector<std::size_t>{1});
  SoloNetwork gappedNet = buildNetwork(gapped);
  CHECK(gappedNet.totalWeight() +
            static_cast<std::int64_t>(gapped.boundaries.size()) + 1 ==
        static_cast<std::int64_t>(trackLength(gapped)));
}

TEST_CASE("node keys are injective over distinct event classes") {
  std::mt19937 rng(101);
  std::vector<NoteEvent> events;
  for (int i = 0; i < 300; ++i) {
    Rational duration(1 + static_cast<std::int64_t>(rng() % 5),
                      1 + static_cast<std::int64_t>(rng() % 16));
    switch (rng() % 3) {
      case 0:
        events.push_back(NoteEvent::rest(duration));
        break;
      case 1:
        events.push_back(NoteEvent::note({"CDEFGAB"[rng() % 7],
                                          static_cast<int>(rng() % 5) - 2,
                                          static_cast<int>(rng() % 10)},
                                         duration));
        break;
      default: {
        PitchSpec first{"CDEFGAB"[rng() % 7], 0, 3 + static_cast<int>(rng() % 3)};
        PitchSpec second{"CDEFGAB"[rng() % 7], 1, 4 + static_cast<int>(rng() % 3)};
        events.push_back(NoteEvent::chord({first, second}, duration));
        break;
      }
    }
  }
  for (const auto& x : events) {
    for (const auto& y : events) {
      CHECK((nodeKey(x) == nodeKey(y)) == (x == y));
    }
  }
}

TEST_CASE("transposition basics") {
  MelodyTrack track;
  track.events = {quarterNote('C', 4), NoteEvent::rest(Rational(1, 8)),
                  quarterNote('F', 4, 1)};

  MelodyTrack same = transpose(track, 0);
  CHECK(same.events == track.events);

  MelodyTrack octaveUp = transpose(track, 12);
  CHECK(octaveUp.events[0].pitches[0] == PitchSpec{'C', 0, 5});
  CHECK(octaveUp.events[2].pitches[0] == PitchSpec{'F', 1, 5});
  CHECK(octaveUp.events[1] == track.events[1]);  // rest untouched

  CHECK(transposePitch({'C', 0, 4}, 1) == PitchSpec{'D', -1, 4});
  CHECK(transposePitch({'C', 0, 4}, -1) == PitchSpec{'B', 0, 3});
  CHECK(transposePitch({'C', 0, 4}, 7) == PitchSpec{'G', 0, 4});
  CHECK(midiNumber(transposePitch({'C', 1, 4}, 3)) == 64);

  CHECK_THROWS_AS(transposePitch({'B', 0, 9}, 12), RangeExceeded);
  CHECK_THROWS_AS(transposePitch({'C', 0, 0}, -12), RangeExceeded);
}

TEST_CASE("transposition preserves midi distances and injectivity") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    PitchSpec pitch;
    pitch.step = "CDEFGAB"[rng() % 7];
    pitch.alter = static_cast<int>(rng() % 5) - 2;
    pitch.octave = static_cast<int>(rng() % 6) + 2;
    int semitones = static_cast<int>(rng() % 25) - 12;
    PitchSpec moved;
    try {
      moved = transposePitch(pitch, semitones);
    } catch (const RangeExceeded&) {
      continue;
    }
    CHECK(midiNumber(moved) == midiNumber(pitch) + semitones);
  }

  // Distinct spellings of the same midi stay distinct after the shift.
  std::set<std::string> labels;
  for (const PitchSpec& pitch :
       {PitchSpec{'C', 1, 4}, PitchSpec{'D', -1, 4}, PitchSpec{'B', 2, 3}}) {
    labels.insert(pitchLabel(transposePitch(pitch, 5)));
  }
  CHECK(labels.size() == 3);
}

TEST_CASE("transposed track yields an isomorphic network") {
  MelodyTrack track;
  track.events = {quarterNote('C', 4), quarterNote('D', 4), quarterNote('D', 4),
                  quarterNote('C', 4), NoteEvent::rest(Rational(1, 4)),
                  NoteEvent::chord({{'C', 0, 4}, {'E', 0, 4}}, Rational(1, 8)),
                  quarterNote('C', 4)};
  SoloNetwork original = buildNetwork(track);
  SoloNetwork shifted = buildNetwork(transpose(track, 3));

  REQUIRE(original.nodeCount() == shifted.nodeCount());
  REQUIRE(original.edgeCount() == shifted.edgeCount());
  // First-appearance order is preserved, so the node bijection is identity
  // on indices; edge sets must match exactly.
  CHECK(original.edges() == shifted.edges());

  // Same property over random tracks and shifts.
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    MelodyTrack random;
    std::size_t length = 2 + rng() % 30;
    for (std::size_t i = 0; i < length; ++i) {
      if (rng() % 5 == 0) {
        random.events.push_back(NoteEvent::rest(Rational(1, 4)));
      } else {
        random.events.push_back(NoteEvent::note(
            {"CDEFGAB"[rng() % 7], 0, 4 + static_cast<int>(rng() % 2)},
            Rational(1, 1 << (rng() % 3))));
      }
    }
    int semitones = static_cast<int>(rng() % 13) - 6;
    SoloNetwork base = buildNetwork(random);
    SoloNetwork moved = buildNetwork(transpose(random, semitones));
    CHECK(base.edges() == moved.edges());
    CHECK(base.nodeCount() == moved.nodeCount());
  }
}
