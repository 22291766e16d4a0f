#include "amnlt/encoding.hpp"

#include <algorithm>

#include "amnlt/error.hpp"
#include "amnlt/io.hpp"
#include "amnlt/text.hpp"

namespace amnlt {

const char* encoding_name(EncodingKind kind) {
  switch (kind) {
    case EncodingKind::PlainGabc: return "gabc";
    case EncodingKind::MusicAwareGabc: return "magabc";
    case EncodingKind::Pgabc: return "pgabc";
  }
  return "unknown";
}

const char* encoding_extension(EncodingKind kind) {
  switch (kind) {
    case EncodingKind::PlainGabc: return ".gabc";
    case EncodingKind::MusicAwareGabc: return ".magabc";
    case EncodingKind::Pgabc: return ".pgabc";
  }
  return "";
}

std::optional<EncodingKind> encoding_from_name(std::string_view name) {
  if (name == "gabc" || name == "plain") return EncodingKind::PlainGabc;
  if (name == "magabc" || name == "music-aware" || name == "sgabc") {
    return EncodingKind::MusicAwareGabc;
  }
  if (name == "pgabc") return EncodingKind::Pgabc;
  return std::nullopt;
}

std::optional<EncodingKind> encoding_from_extension(std::string_view path) {
  const std::size_t dot = path.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  return encoding_from_name(path.substr(dot + 1));
}

RawScoreText make_raw(EncodingKind kind, std::string_view text) {
  return RawScoreText{kind, nfc_normalize(text)};
}

RawScoreText read_score_file(const std::filesystem::path& path, EncodingKind kind) {
  std::string text = read_file(path);
  if (!text.empty() && text.back() == '\n') text.pop_back();
  if (!text.empty() && text.back() == '\r') text.pop_back();
  return make_raw(kind, text);
}

std::string_view strip_music_prefix(std::string_view token) {
  if (token.substr(0, kMusicPrefix.size()) == kMusicPrefix) {
    return token.substr(kMusicPrefix.size());
  }
  return token;
}

namespace {

bool prefix_at(const std::vector<char32_t>& s, std::size_t i) {
  return i + 2 < s.size() && s[i] == U'<' && s[i + 1] == U'm' && s[i + 2] == U'>';
}

}  // namespace

std::vector<Token> tokenize(const RawScoreText& raw) {
  const std::vector<char32_t> s = decode_utf8(raw.text);
  const std::size_t n = s.size();
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < n) {
    const char32_t c = s[i];
    if (c == U')') {
      fail(Errc::UnbalancedParentheses, "closing parenthesis without a group", i);
    }
    if (c != U'(') {
      if (raw.encoding == EncodingKind::MusicAwareGabc && prefix_at(s, i)) {
        fail(Errc::StrayMusicPrefix, "music marker outside parentheses", i);
      }
      tokens.push_back({TokenKind::LyricChar, encode_utf8(c)});
      ++i;
      continue;
    }

    const std::size_t open_pos = i;
    tokens.push_back({TokenKind::GroupOpen, "("});
    ++i;
    std::size_t group_size = 0;

    switch (raw.encoding) {
      case EncodingKind::PlainGabc:
        while (i < n && s[i] != U')') {
          if (s[i] == U'(') {
            fail(Errc::UnbalancedParentheses, "nested opening parenthesis", i);
          }
          tokens.push_back({TokenKind::MusicToken, encode_utf8(s[i])});
          ++group_size;
          ++i;
        }
        break;

      case EncodingKind::MusicAwareGabc:
        while (i < n && s[i] != U')') {
          if (s[i] == U'(') {
            fail(Errc::UnbalancedParentheses, "nested opening parenthesis", i);
          }
          if (!prefix_at(s, i)) {
            fail(Errc::MissingMusicPrefix,
                 "in-parenthesis character lacks the music marker", i);
          }
          const std::size_t token_pos = i;
          std::string text(kMusicPrefix);
          i += 3;
          bool any = false;
          while (i < n && s[i] != U')' && s[i] != U'(' && !prefix_at(s, i)) {
            text += encode_utf8(s[i]);
            ++i;
            any = true;
          }
          if (!any) {
            fail(Errc::EmptyMusicToken, "music marker with no character", token_pos);
          }
          tokens.push_back({TokenKind::MusicToken, std::move(text)});
          ++group_size;
        }
        break;

      case EncodingKind::Pgabc:
        while (i < n && s[i] != U')') {
          if (s[i] == U'(') {
            fail(Errc::UnbalancedParentheses, "nested opening parenthesis", i);
          }
          if (s[i] == U' ') {
            fail(Errc::EmptyMusicToken, "empty music token before separator", i);
          }
          std::string text;
          while (i < n && s[i] != U')' && s[i] != U'(' && s[i] != U' ') {
            text += encode_utf8(s[i]);
            ++i;
          }
          tokens.push_back({TokenKind::MusicToken, std::move(text)});
          ++group_size;
          if (i < n && s[i] == U' ') {
            ++i;
            if (i >= n || s[i] == U')') {
              fail(Errc::EmptyMusicToken, "empty music token after separator", i);
            }
          }
        }
        break;
    }

    if (i >= n) {
      fail(Errc::UnbalancedParentheses, "unclosed music group", open_pos);
    }
    if (group_size == 0) {
      fail(Errc::EmptyMusicGroup, "music group is empty", open_pos);
    }
    tokens.push_back({TokenKind::GroupClose, ")"});
    ++i;
    if (i < n) {
      tokens.push_back({TokenKind::SyllableBreak, ""});
    }
  }
  return tokens;
}

std::string detokenize(const std::vector<Token>& tokens, EncodingKind encoding) {
  std::string out;
  TokenKind prev = TokenKind::SyllableBreak;
  bool first = true;
  for (const Token& token : tokens) {
    if (token.kind == TokenKind::SyllableBreak) continue;
    if (encoding == EncodingKind::Pgabc && !first &&
        token.kind == TokenKind::MusicToken && prev == TokenKind::MusicToken) {
      out += ' ';
    }
    out += token.text;
    prev = token.kind;
    first = false;
  }
  return out;
}

RawScoreText to_music_aware(const RawScoreText& plain) {
  if (plain.encoding != EncodingKind::PlainGabc) {
    fail(Errc::UnsupportedConversion, "to_music_aware expects plain gabc input");
  }
  const std::vector<char32_t> s = decode_utf8(plain.text);
  const std::size_t n = s.size();
  std::string out;
  std::size_t i = 0;
  while (i < n) {
    if (s[i] == U')') {
      fail(Errc::UnbalancedParentheses, "closing parenthesis without a group", i);
    }
    if (s[i] != U'(') {
      out += encode_utf8(s[i]);
      ++i;
      continue;
    }
    const std::size_t open_pos = i;
    out += '(';
    ++i;
    std::size_t group_size = 0;
    while (i < n && s[i] != U')') {
      if (s[i] == U'(') {
        fail(Errc::UnbalancedParentheses, "nested opening parenthesis", i);
      }
      out += kMusicPrefix;
      out += encode_utf8(s[i]);
      ++group_size;
      ++i;
    }
    if (i >= n) {
      fail(Errc::UnbalancedParentheses, "unclosed music group", open_pos);
    }
    if (group_size == 0) {
      fail(Errc::EmptyMusicGroup, "music group is empty", open_pos);
    }
    out += ')';
    ++i;
  }
  return RawScoreText{EncodingKind::MusicAwareGabc, std::move(out)};
}

RawScoreText from_music_aware(const RawScoreText& music_aware) {
  if (music_aware.encoding != EncodingKind::MusicAwareGabc) {
    fail(Errc::UnsupportedConversion, "from_music_aware expects music-aware input");
  }
  const std::vector<char32_t> s = decode_utf8(music_aware.text);
  const std::size_t n = s.size();
  std::string out;
  std::size_t i = 0;
  while (i < n) {
    if (s[i] == U')') {
      fail(Errc::UnbalancedParentheses, "closing parenthesis without a group", i);
    }
    if (s[i] != U'(') {
      if (prefix_at(s, i)) {
        fail(Errc::StrayMusicPrefix, "music marker outside parentheses", i);
      }
      out += encode_utf8(s[i]);
      ++i;
      continue;
    }
    const std::size_t open_pos = i;
    out += '(';
    ++i;
    std::size_t group_size = 0;
    while (i < n && s[i] != U')') {
      if (s[i] == U'(') {
        fail(Errc::UnbalancedParentheses, "nested opening parenthesis", i);
      }
      if (!prefix_at(s, i)) {
        fail(Errc::MissingMusicPrefix,
             "in-parenthesis character lacks the music marker", i);
      }
      i += 3;
      if (i >= n || s[i] == U')' || prefix_at(s, i)) {
        fail(Errc::EmptyMusicToken, "music marker with no character", i);
      }
      if (s[i] == U'(') {
        fail(Errc::UnbalancedParentheses, "nested opening parenthesis", i);
      }
      out += encode_utf8(s[i]);
      ++group_size;
      ++i;
    }
    if (i >= n) {
      fail(Errc::UnbalancedParentheses, "unclosed music group", open_pos);
    }
    if (group_size == 0) {
      fail(Errc::EmptyMusicGroup, "music group is empty", open_pos);
    }
    out += ')';
    ++i;
  }
  return RawScoreText{EncodingKind::PlainGabc, std::move(out)};
}

AlignedScore parse(const RawScoreText& raw) {
  const std::vector<Token> tokens = tokenize(raw);
  AlignedScore score;
  std::string syllable;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const Token& token = tokens[i];
    switch (token.kind) {
      case TokenKind::LyricChar:
        syllable += token.text;
        ++i;
        break;
      case TokenKind::SyllableBreak:
        ++i;
        break;
      case TokenKind::GroupOpen: {
        ++i;
        MusicGroup group;
        while (i < tokens.size() && tokens[i].kind == TokenKind::MusicToken) {
          if (raw.encoding == EncodingKind::MusicAwareGabc) {
            group.tokens.emplace_back(strip_music_prefix(tokens[i].text));
          } else {
            group.tokens.push_back(tokens[i].text);
          }
          ++i;
        }
        ++i;  // GroupClose, guaranteed by tokenize
        score.pairs.push_back({Syllable{std::move(syllable)}, std::move(group)});
        syllable.clear();
        break;
      }
      case TokenKind::MusicToken:
      case TokenKind::GroupClose:
        fail(Errc::UnbalancedParentheses, "malformed token stream", i);
    }
  }
  // Dangling lyric text with no following group: keep it as a pair with an
  // empty group so validate_alignment can report it.
  if (!syllable.empty()) {
    score.pairs.push_back({Syllable{std::move(syllable)}, MusicGroup{}});
  }
  return score;
}

namespace {

void check_serializable(const std::string& token, EncodingKind target) {
  const std::string target_name = encoding_name(target);
  if (token.empty()) {
    fail(Errc::UnrepresentableToken,
         "empty music token cannot be serialized to " + target_name);
  }
  if (token.find('(') != std::string::npos ||
      token.find(')') != std::string::npos) {
    fail(Errc::UnrepresentableToken,
         "music token \"" + token + "\" contains a parenthesis");
  }
  switch (target) {
    case EncodingKind::PlainGabc:
      if (scalar_count(token) != 1) {
        fail(Errc::UnrepresentableToken,
             "music token \"" + token + "\" is wider than one character; " +
                 target_name + " tokenizes per character");
      }
      break;
    case EncodingKind::MusicAwareGabc:
      if (token.find(kMusicPrefix) != std::string::npos) {
        fail(Errc::UnrepresentableToken,
             "music token \"" + token + "\" contains the music marker");
      }
      break;
    case EncodingKind::Pgabc:
      if (token.find(' ') != std::string::npos) {
        fail(Errc::UnrepresentableToken,
             "music token \"" + token + "\" contains a space; " + target_name +
                 " separates tokens with spaces");
      }
      break;
  }
}

void check_syllable_serializable(const std::string& text, EncodingKind target) {
  if (text.find('(') != std::string::npos ||
      text.find(')') != std::string::npos) {
    fail(Errc::UnrepresentableToken,
         "syllable \"" + text + "\" contains a parenthesis");
  }
  if (target == EncodingKind::MusicAwareGabc &&
      text.find(kMusicPrefix) != std::string::npos) {
    fail(Errc::UnrepresentableToken,
         "syllable \"" + text + "\" contains the music marker");
  }
}

}  // namespace

RawScoreText serialize(const AlignedScore& score, EncodingKind target) {
  std::string out;
  for (const ScorePair& pair : score.pairs) {
    check_syllable_serializable(pair.syllable.text, target);
    out += pair.syllable.text;
    out += '(';
    bool first = true;
    for (const std::string& token : pair.group.tokens) {
      check_serializable(token, target);
      switch (target) {
        case EncodingKind::PlainGabc:
          out += token;
          break;
        case EncodingKind::MusicAwareGabc:
          out += kMusicPrefix;
          out += token;
          break;
        case EncodingKind::Pgabc:
          if (!first) out += ' ';
          out += token;
          break;
      }
      first = false;
    }
    out += ')';
  }
  return RawScoreText{target, std::move(out)};
}

Vocabulary build_vocabulary(const std::vector<AlignedScore>& corpus) {
  Vocabulary vocab;
  bool any_pair = false;
  for (const AlignedScore& score : corpus) {
    for (const ScorePair& pair : score.pairs) {
      any_pair = true;
      for (const std::string& token : pair.group.tokens) {
        const std::string stripped(strip_music_prefix(token));
        if (stripped.empty() || stripped == kPlaceholderToken) continue;
        vocab.music_tokens.insert(stripped);
      }
      for (char32_t cp : decode_utf8(pair.syllable.text)) {
        vocab.lyric_chars.insert(encode_utf8(cp));
      }
    }
  }
  if (any_pair) {
    vocab.structural_tokens = {"(", ")"};
  }
  std::set<std::string> all = vocab.music_tokens;
  all.insert(vocab.lyric_chars.begin(), vocab.lyric_chars.end());
  all.insert(vocab.structural_tokens.begin(), vocab.structural_tokens.end());
  vocab.unique_total = all.size();
  return vocab;
}

}  // namespace amnlt
