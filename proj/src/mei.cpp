#include "amnlt/mei.hpp"

#include <cctype>

#include "amnlt/error.hpp"
#include "amnlt/io.hpp"
#include "amnlt/text.hpp"

namespace amnlt {

namespace {

struct XmlAttr {
  std::string name;
  std::string value;
};

struct XmlElement {
  std::string name;
  std::vector<XmlAttr> attrs;
  std::vector<XmlElement> children;
  std::string text;
};

// Minimal strict reader for the subset: prolog, comments, elements with
// attributes, character data, the five predefined entities. No namespaces,
// CDATA, or DOCTYPE. Error positions are byte offsets.
class XmlParser {
 public:
  explicit XmlParser(std::string_view src) : src_(src) {}

  XmlElement parse_document() {
    skip_misc();
    if (pos_ >= src_.size() || src_[pos_] != '<') {
      err("expected root element");
    }
    XmlElement root = parse_element();
    skip_misc();
    if (pos_ != src_.size()) {
      err("trailing content after root element");
    }
    return root;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void err(const std::string& what) const {
    fail(Errc::MalformedXml, what, pos_);
  }

  bool looking_at(std::string_view s) const {
    return src_.compare(pos_, s.size(), s) == 0;
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
            src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  void skip_until(std::string_view terminator, const char* what) {
    const std::size_t end = src_.find(terminator, pos_);
    if (end == std::string_view::npos) err(std::string("unterminated ") + what);
    pos_ = end + terminator.size();
  }

  void skip_misc() {
    for (;;) {
      skip_ws();
      if (looking_at("<?")) {
        pos_ += 2;
        skip_until("?>", "processing instruction");
      } else if (looking_at("<!--")) {
        pos_ += 4;
        skip_until("-->", "comment");
      } else {
        break;
      }
    }
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '-' || c == '.' || c == ':';
  }

  std::string parse_name() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && name_char(src_[pos_])) ++pos_;
    if (pos_ == start) err("expected a name");
    return std::string(src_.substr(start, pos_ - start));
  }

  void append_entity(std::string& out) {
    const std::size_t end = src_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 6) {
      err("unterminated entity reference");
    }
    const std::string_view entity = src_.substr(pos_ + 1, end - pos_ - 1);
    if (entity == "amp") out += '&';
    else if (entity == "lt") out += '<';
    else if (entity == "gt") out += '>';
    else if (entity == "quot") out += '"';
    else if (entity == "apos") out += '\'';
    else err("unknown entity &" + std::string(entity) + ";");
    pos_ = end + 1;
  }

  std::string parse_attr_value() {
    if (pos_ >= src_.size() || (src_[pos_] != '"' && src_[pos_] != '\'')) {
      err("expected quoted attribute value");
    }
    const char quote = src_[pos_++];
    std::string out;
    while (pos_ < src_.size() && src_[pos_] != quote) {
      if (src_[pos_] == '&') {
        append_entity(out);
      } else if (src_[pos_] == '<') {
        err("'<' in attribute value");
      } else {
        out += src_[pos_++];
      }
    }
    if (pos_ >= src_.size()) err("unterminated attribute value");
    ++pos_;
    return out;
  }

  XmlElement parse_element() {
    ++pos_;  // '<'
    XmlElement element;
    element.name = parse_name();
    for (;;) {
      skip_ws();
      if (pos_ >= src_.size()) err("unterminated start tag");
      if (src_[pos_] == '/') {
        ++pos_;
        if (pos_ >= src_.size() || src_[pos_] != '>') err("expected '>'");
        ++pos_;
        return element;
      }
      if (src_[pos_] == '>') {
        ++pos_;
        break;
      }
      XmlAttr attr;
      attr.name = parse_name();
      skip_ws();
      if (pos_ >= src_.size() || src_[pos_] != '=') err("expected '='");
      ++pos_;
      skip_ws();
      attr.value = parse_attr_value();
      element.attrs.push_back(std::move(attr));
    }
    for (;;) {
      if (pos_ >= src_.size()) {
        err("unterminated element <" + element.name + ">");
      }
      if (looking_at("</")) {
        pos_ += 2;
        const std::string closing = parse_name();
        if (closing != element.name) {
          err("mismatched closing tag </" + closing + "> for <" +
              element.name + ">");
        }
        skip_ws();
        if (pos_ >= src_.size() || src_[pos_] != '>') err("expected '>'");
        ++pos_;
        return element;
      }
      if (looking_at("<!--")) {
        pos_ += 4;
        skip_until("-->", "comment");
        continue;
      }
      if (looking_at("<!")) {
        err("unsupported markup declaration");
      }
      if (src_[pos_] == '<') {
        element.children.push_back(parse_element());
        continue;
      }
      if (src_[pos_] == '&') {
        append_entity(element.text);
        continue;
      }
      element.text += src_[pos_++];
    }
  }
};

bool whitespace_only(const std::string& text) {
  return text.find_first_not_of(" \t\r\n") == std::string::npos;
}

MeiNote interpret_note(const XmlElement& element, std::size_t syllable_index,
                       std::size_t note_index) {
  const std::string where = "note " + std::to_string(note_index) +
                            " of syllable " + std::to_string(syllable_index);
  if (!element.children.empty() || !whitespace_only(element.text)) {
    fail(Errc::UnsupportedElement, "note elements must be empty (" + where + ")");
  }
  bool have_pitch = false;
  bool have_octave = false;
  MeiNote note;
  for (const XmlAttr& attr : element.attrs) {
    if (attr.name == "pname") {
      if (attr.value.size() != 1 || attr.value[0] < 'a' || attr.value[0] > 'g') {
        fail(Errc::MissingPitchOrOctave,
             "pname must be a letter a-g (" + where + ")");
      }
      note.pitch = attr.value[0];
      have_pitch = true;
    } else if (attr.name == "oct") {
      if (attr.value.size() != 1 || attr.value[0] < '0' || attr.value[0] > '9') {
        fail(Errc::MissingPitchOrOctave,
             "oct must be a digit 0-9 (" + where + ")");
      }
      note.octave = attr.value[0] - '0';
      have_octave = true;
    } else if (attr.name == "shape") {
      note.shape = attr.value;
    } else {
      fail(Errc::UnsupportedElement,
           "attribute \"" + attr.name + "\" on note (" + where + ")");
    }
  }
  if (!have_pitch || !have_octave) {
    fail(Errc::MissingPitchOrOctave, "note lacks pname or oct (" + where + ")");
  }
  return note;
}

MeiSyllable interpret_syllable(const XmlElement& element, std::size_t index) {
  const std::string where = "syllable " + std::to_string(index);
  if (!element.attrs.empty()) {
    fail(Errc::UnsupportedElement, "attributes on syllable (" + where + ")");
  }
  if (!whitespace_only(element.text)) {
    fail(Errc::UnsupportedElement, "text outside <syl> (" + where + ")");
  }
  MeiSyllable syllable;
  bool seen_syl = false;
  for (const XmlElement& child : element.children) {
    if (child.name == "syl") {
      if (seen_syl) {
        fail(Errc::UnsupportedElement, "multiple <syl> (" + where + ")");
      }
      if (!child.attrs.empty() || !child.children.empty()) {
        fail(Errc::UnsupportedElement,
             "<syl> must hold text only (" + where + ")");
      }
      syllable.text = nfc_normalize(child.text);
      seen_syl = true;
    } else if (child.name == "note") {
      syllable.notes.push_back(
          interpret_note(child, index, syllable.notes.size()));
    } else {
      fail(Errc::UnsupportedElement, child.name + " (" + where + ")");
    }
  }
  if (syllable.notes.empty()) {
    fail(Errc::MissingNotes, "syllable has no notes (" + where + ")");
  }
  return syllable;
}

std::string escape_xml(std::string_view text, bool attribute) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': if (attribute) { out += "&quot;"; break; } [[fallthrough]];
      default: out += c;
    }
  }
  return out;
}

}  // namespace

MeiSubsetDoc read_mei_subset_xml(std::string_view xml) {
  XmlParser parser(xml);
  const XmlElement root = parser.parse_document();
  if (root.name != "music") {
    fail(Errc::UnsupportedElement, "root element <" + root.name + ">");
  }
  if (!root.attrs.empty()) {
    fail(Errc::UnsupportedElement, "attributes on <music>");
  }
  if (!whitespace_only(root.text) || root.children.size() != 1 ||
      root.children[0].name != "body") {
    fail(Errc::UnsupportedElement, "<music> must hold exactly one <body>");
  }
  const XmlElement& body = root.children[0];
  if (!body.attrs.empty() || !whitespace_only(body.text)) {
    fail(Errc::UnsupportedElement, "attributes or text on <body>");
  }
  MeiSubsetDoc doc;
  for (const XmlElement& child : body.children) {
    if (child.name != "syllable") {
      fail(Errc::UnsupportedElement, child.name + " inside <body>");
    }
    doc.syllables.push_back(interpret_syllable(child, doc.syllables.size()));
  }
  return doc;
}

MeiSubsetDoc read_mei_subset_file(const std::string& path) {
  return read_mei_subset_xml(read_file(path));
}

std::string write_mei_subset_xml(const MeiSubsetDoc& doc) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<music>\n  <body>\n";
  for (const MeiSyllable& syllable : doc.syllables) {
    out += "    <syllable>\n";
    if (!syllable.text.empty()) {
      out += "      <syl>" + escape_xml(syllable.text, false) + "</syl>\n";
    }
    for (const MeiNote& note : syllable.notes) {
      out += "      <note pname=\"";
      out += note.pitch;
      out += "\" oct=\"";
      out += static_cast<char>('0' + note.octave);
      out += '"';
      if (!note.shape.empty()) {
        out += " shape=\"" + escape_xml(note.shape, true) + "\"";
      }
      out += "/>\n";
    }
    out += "    </syllable>\n";
  }
  out += "  </body>\n</music>\n";
  return out;
}

RawScoreText mei_subset_to_pgabc(const MeiSubsetDoc& doc) {
  AlignedScore score;
  for (std::size_t i = 0; i < doc.syllables.size(); ++i) {
    const MeiSyllable& syllable = doc.syllables[i];
    if (syllable.notes.empty()) {
      fail(Errc::MissingNotes, "syllable " + std::to_string(i) + " has no notes");
    }
    MusicGroup group;
    for (std::size_t j = 0; j < syllable.notes.size(); ++j) {
      const MeiNote& note = syllable.notes[j];
      if (note.pitch < 'a' || note.pitch > 'g') {
        fail(Errc::MissingPitchOrOctave,
             "pitch out of range in syllable " + std::to_string(i) + ", note " +
                 std::to_string(j));
      }
      if (note.octave < 0 || note.octave > 9) {
        fail(Errc::MissingPitchOrOctave,
             "octave out of range in syllable " + std::to_string(i) +
                 ", note " + std::to_string(j));
      }
      std::string token;
      token += note.pitch;
      token += static_cast<char>('0' + note.octave);
      token += note.shape;
      group.tokens.push_back(std::move(token));
    }
    score.pairs.push_back({Syllable{syllable.text}, std::move(group)});
  }
  RawScoreText out = serialize(score, EncodingKind::Pgabc);
  out.text = nfc_normalize(out.text);
  return out;
}

MeiSubsetDoc pgabc_to_mei_subset(const RawScoreText& raw) {
  if (raw.encoding != EncodingKind::Pgabc) {
    fail(Errc::UnsupportedConversion, "pgabc_to_mei_subset expects pgabc input");
  }
  const AlignedScore score = parse(raw);
  MeiSubsetDoc doc;
  for (std::size_t i = 0; i < score.pairs.size(); ++i) {
    const ScorePair& pair = score.pairs[i];
    if (pair.group.tokens.empty()) {
      fail(Errc::MissingNotes,
           "syllable " + std::to_string(i) + " has no music group");
    }
    MeiSyllable syllable;
    syllable.text = pair.syllable.text;
    for (const std::string& token : pair.group.tokens) {
      if (token.size() < 2 || token[0] < 'a' || token[0] > 'g' ||
          token[1] < '0' || token[1] > '9') {
        fail(Errc::MalformedNoteToken,
             "token \"" + token + "\" in syllable " + std::to_string(i) +
                 " does not match <pitch><octave>[shape]");
      }
      MeiNote note;
      note.pitch = token[0];
      note.octave = token[1] - '0';
      note.shape = token.substr(2);
      syllable.notes.push_back(std::move(note));
    }
    doc.syllables.push_back(std::move(syllable));
  }
  return doc;
}

}  // namespace amnlt
