#include <doctest.h>

#include <functional>

#include "amnlt/error.hpp"
#include "amnlt/mei.hpp"
#include "generators.hpp"

using namespace amnlt;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::IoError;
}

MeiSubsetDoc veni() {
  return MeiSubsetDoc{{
      MeiSyllable{"ve", {MeiNote{'c', 4, ""}, MeiNote{'d', 4, ""}}},
  }};
}

}  // namespace

TEST_CASE("mei_subset_to_pgabc renders pitch+octave tokens") {
  CHECK(mei_subset_to_pgabc(veni()).text == "ve(c4 d4)");
  CHECK(mei_subset_to_pgabc(MeiSubsetDoc{}).text == "");

  const MeiSubsetDoc amen{{
      MeiSyllable{"a", {MeiNote{'g', 3, ""}}},
      MeiSyllable{"men", {MeiNote{'f', 3, ""}, MeiNote{'g', 3, ""}}},
  }};
  CHECK(mei_subset_to_pgabc(amen).text == "a(g3)men(f3 g3)");

  const MeiSubsetDoc shaped{{MeiSyllable{"a", {MeiNote{'g', 3, "v"}}}}};
  CHECK(mei_subset_to_pgabc(shaped).text == "a(g3v)");
}

TEST_CASE("pgabc_to_mei_subset parses note tokens") {
  CHECK(pgabc_to_mei_subset(make_raw(EncodingKind::Pgabc, "ve(c4 d4)")) == veni());
  CHECK(pgabc_to_mei_subset(make_raw(EncodingKind::Pgabc, "")) == MeiSubsetDoc{});
  const MeiSubsetDoc a{{MeiSyllable{"a", {MeiNote{'g', 3, ""}}}}};
  CHECK(pgabc_to_mei_subset(make_raw(EncodingKind::Pgabc, "a(g3)")) == a);
}

TEST_CASE("pgabc_to_mei_subset rejects malformed note tokens") {
  auto attempt = [](const char* text) {
    return [raw = make_raw(EncodingKind::Pgabc, text)] { pgabc_to_mei_subset(raw); };
  };
  CHECK(code_of(attempt("a(h3)")) == Errc::MalformedNoteToken);
  CHECK(code_of(attempt("a(3g)")) == Errc::MalformedNoteToken);
  CHECK(code_of(attempt("a(g)")) == Errc::MalformedNoteToken);
  CHECK(code_of(attempt("a(G3)")) == Errc::MalformedNoteToken);
  CHECK(code_of(attempt("a(g3)rie")) == Errc::MissingNotes);
}

TEST_CASE("mei reversibility on random subset documents") {
  testing::Rng rng(20240612);
  for (int trial = 0; trial < 300; ++trial) {
    const MeiSubsetDoc doc = testing::random_mei_doc(rng);
    CHECK(pgabc_to_mei_subset(mei_subset_to_pgabc(doc)) == doc);
  }
}

TEST_CASE("xml read/write round trip") {
  testing::Rng rng(20240613);
  for (int trial = 0; trial < 100; ++trial) {
    const MeiSubsetDoc doc = testing::random_mei_doc(rng);
    CHECK(read_mei_subset_xml(write_mei_subset_xml(doc)) == doc);
  }
}

TEST_CASE("xml reader accepts the documented subset") {
  const char* xml = R"(<?xml version="1.0" encoding="UTF-8"?>
<!-- hand-written fixture -->
<music>
  <body>
    <syllable>
      <syl>Ky</syl>
      <note pname="f" oct="3"/>
      <note pname="g" oct="3" shape="liquescent"/>
    </syllable>
    <syllable>
      <note pname="a" oct="2"/>
    </syllable>
  </body>
</music>
)";
  const MeiSubsetDoc doc = read_mei_subset_xml(xml);
  REQUIRE(doc.syllables.size() == 2);
  CHECK(doc.syllables[0].text == "Ky");
  REQUIRE(doc.syllables[0].notes.size() == 2);
  CHECK(doc.syllables[0].notes[1] == MeiNote{'g', 3, "liquescent"});
  CHECK(doc.syllables[1].text == "");
  CHECK(doc.syllables[1].notes.size() == 1);
}

TEST_CASE("xml reader decodes entities in syl text") {
  const char* xml =
      "<music><body><syllable><syl>a&amp;b</syl>"
      "<note pname=\"c\" oct=\"4\"/></syllable></body></music>";
  CHECK(read_mei_subset_xml(xml).syllables[0].text == "a&b");
}

TEST_CASE("xml reader rejects content outside the subset") {
  auto attempt = [](const char* xml) { return [xml] { read_mei_subset_xml(xml); }; };
  CHECK(code_of(attempt("<mei><body/></mei>")) == Errc::UnsupportedElement);
  CHECK(code_of(attempt("<music><body><clef/></body></music>")) ==
        Errc::UnsupportedElement);
  CHECK(code_of(attempt("<music><body><syllable><note pname=\"c\" oct=\"4\" "
                        "dur=\"4\"/></syllable></body></music>")) ==
        Errc::UnsupportedElement);
  CHECK(code_of(attempt("<music><body><syllable><syl>a</syl><note "
                        "oct=\"4\"/></syllable></body></music>")) ==
        Errc::MissingPitchOrOctave);
  CHECK(code_of(attempt("<music><body><syllable><note pname=\"h\" "
                        "oct=\"4\"/></syllable></body></music>")) ==
        Errc::MissingPitchOrOctave);
  CHECK(code_of(attempt("<music><body><syllable><syl>a</syl></syllable>"
                        "</body></music>")) == Errc::MissingNotes);
  CHECK(code_of(attempt("<music><body><syllable><note pname=\"c\" oct=\"4\">"
                        "</syllable></body></music>")) == Errc::MalformedXml);
  CHECK(code_of(attempt("<music><body>&bad;</body></music>")) ==
        Errc::MalformedXml);
}
