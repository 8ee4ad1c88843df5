#include <cctype>

#include "raccoon/index.hpp"
#include "raccoon/unicode.hpp"

namespace raccoon {

namespace {

// ASCII folds for the Latin-1 Supplement and Latin Extended-A blocks.
// Returns nullptr when no fold exists.
const char* fold_codepoint(char32_t cp) {
  switch (cp) {
    case 0xC0: case 0xC1: case 0xC2: case 0xC3: case 0xC4: case 0xC5:
    case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5:
      return "a";
    case 0xC6: case 0xE6:
      return "ae";
    case 0xC7: case 0xE7:
      return "c";
    case 0xC8: case 0xC9: case 0xCA: case 0xCB:
    case 0xE8: case 0xE9: case 0xEA: case 0xEB:
      return "e";
    case 0xCC: case 0xCD: case 0xCE: case 0xCF:
    case 0xEC: case 0xED: case 0xEE: case 0xEF:
      return "i";
    case 0xD0: case 0xF0:
      return "d";
    case 0xD1: case 0xF1:
      return "n";
    case 0xD2: case 0xD3: case 0xD4: case 0xD5: case 0xD6: case 0xD8:
    case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8:
      return "o";
    case 0xD9: case 0xDA: case 0xDB: case 0xDC:
    case 0xF9: case 0xFA: case 0xFB: case 0xFC:
      return "u";
    case 0xDD: case 0xFD: case 0xFF:
      return "y";
    case 0xDE: case 0xFE:
      return "th";
    case 0xDF:
      return "ss";
    default:
      break;
  }
  if (cp >= 0x100 && cp <= 0x17F) {
    if (cp <= 0x105) return "a";
    if (cp <= 0x10D) return "c";
    if (cp <= 0x111) return "d";
    if (cp <= 0x11B) return "e";
    if (cp <= 0x123) return "g";
    if (cp <= 0x127) return "h";
    if (cp <= 0x131) return "i";
    if (cp <= 0x133) return "ij";
    if (cp <= 0x135) return "j";
    if (cp <= 0x138) return "k";
    if (cp <= 0x142) return "l";
    if (cp <= 0x14B) return "n";
    if (cp <= 0x151) return "o";
    if (cp <= 0x153) return "oe";
    if (cp <= 0x159) return "r";
    if (cp <= 0x161) return "s";
    if (cp <= 0x167) return "t";
    if (cp <= 0x173) return "u";
    if (cp <= 0x175) return "w";
    if (cp <= 0x178) return "y";
    if (cp <= 0x17E) return "z";
    return "s";  // U+017F long s
  }
  return nullptr;
}

bool is_separator_codepoint(char32_t cp) {
  // Latin-1 punctuation/symbols, general punctuation, CJK punctuation,
  // plus the replacement character from invalid input bytes.
  return (cp >= 0xA0 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 ||
         (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x3000 && cp <= 0x303F) || cp == 0xFFFD;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  const auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8_decode(text, pos);
    if (cp < 0x80) {
      const auto c = static_cast<unsigned char>(cp);
      if (std::isalnum(c)) {
        current.push_back(static_cast<char>(std::tolower(c)));
      } else {
        flush();
      }
      continue;
    }
    if (const char* folded = fold_codepoint(cp)) {
      current += folded;
    } else if (is_separator_codepoint(cp)) {
      flush();
    } else {
      utf8_append(current, cp);
    }
  }
  flush();
  return tokens;
}

}  // namespace raccoon
