#include <algorithm>

#include "cinerank/text.hpp"

namespace cinerank {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      len = 1;
      cp = c;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > s.size()) {
      out.push_back(kReplacement);
      break;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;  // Latin-1 capitals
  return cp;
}

// ASCII alphanumerics and Latin-1 / Latin Extended letters.
bool is_word_char(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9')) return true;
  return cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7;
}

bool is_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

TokenStream preprocess(std::string_view text, const PreprocessOptions& options) {
  TokenStream out;
  out.source_hash = fnv1a64(text);

  std::u32string cps = decode_utf8(text);
  if (options.lowercase) {
    for (auto& cp : cps) cp = to_lower(cp);
  }
  if (options.emoji) {
    std::u32string expanded;
    expanded.reserve(cps.size());
    for (char32_t cp : cps) {
      if (const auto name = emoji_name(cp)) {
        expanded.push_back(U' ');
        for (char c : *name) expanded.push_back(static_cast<char32_t>(c));
        expanded.push_back(U' ');
      } else {
        expanded.push_back(cp);
      }
    }
    cps = std::move(expanded);
  }

  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    std::string token = std::move(current);
    current.clear();
    if (options.remove_stopwords && is_stopword(token)) return;
    if (options.stem && is_ascii(token)) token = porter_stem(token);
    if (options.lemmatize) token = lemmatize(token, options.stem);
    if (!token.empty()) out.tokens.push_back(std::move(token));
  };
  for (char32_t cp : cps) {
    if (is_word_char(cp)) {
      append_utf8(current, cp);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

}  // namespace cinerank
