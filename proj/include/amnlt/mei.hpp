#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "amnlt/encoding.hpp"

namespace amnlt {

// One note event reduced to its fundamental elements: pitch letter a-g,
// octave digit 0-9, and an optional shape suffix.
struct MeiNote {
  char pitch = 0;
  int octave = 0;
  std::string shape;

  friend bool operator==(const MeiNote&, const MeiNote&) = default;
};

struct MeiSyllable {
  std::string text;  // empty for melisma continuations
  std::vector<MeiNote> notes;

  friend bool operator==(const MeiSyllable&, const MeiSyllable&) = default;
};

struct MeiSubsetDoc {
  std::vector<MeiSyllable> syllables;

  friend bool operator==(const MeiSubsetDoc&, const MeiSubsetDoc&) = default;
};

// Accepted XML shape:
//
//   <music>
//     <body>
//       <syllable>
//         <syl>Ky</syl>
//         <note pname="f" oct="3"/>
//         <note pname="g" oct="3" shape="liquescent"/>
//       </syllable>
//     </body>
//   </music>
//
// Any element, attribute, or nesting outside this subset raises
// Error(UnsupportedElement); notes without pname/oct raise
// Error(MissingPitchOrOctave); syllables without notes raise
// Error(MissingNotes).
MeiSubsetDoc read_mei_subset_xml(std::string_view xml);
MeiSubsetDoc read_mei_subset_file(const std::string& path);

std::string write_mei_subset_xml(const MeiSubsetDoc& doc);

// Each syllable becomes one pgabc pair; each note becomes the token
// <pitch><octave><shape>.
RawScoreText mei_subset_to_pgabc(const MeiSubsetDoc& doc);

// Inverse of mei_subset_to_pgabc. Music tokens that do not match the
// <pitch><octave>[shape] scheme raise Error(MalformedNoteToken).
MeiSubsetDoc pgabc_to_mei_subset(const RawScoreText& raw);

}  // namespace amnlt
