#include "solonet/xml.h"

#include <cctype>

namespace solonet {

namespace {

bool isNameStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool isNameChar(char c) {
  return isNameStart(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
         c == '.';
}

class Parser {
 public:
  explicit Parser(std::string_view input) : input_(input) {}

  XmlElement parseDocument() {
    skipBom();
    skipMisc();
    if (eof() || peek() != '<') fail("expected root element");
    XmlElement root = parseElement();
    skipMisc();
    if (!eof()) fail("trailing content after root element");
    return root;
  }

 private:
  bool eof() const { return pos_ >= input_.size(); }
  char peek() const { return input_[pos_]; }
  bool startsWith(std::string_view s) const {
    return input_.compare(pos_, s.size(), s) == 0;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw MalformedXml("XML error at byte " + std::to_string(pos_) + ": " + what);
  }

  void skipBom() {
    if (startsWith("\xEF\xBB\xBF")) pos_ += 3;
  }

  void skipWhitespace() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  // Whitespace, XML declaration, PIs, comments, DOCTYPE.
  void skipMisc() {
    for (;;) {
      skipWhitespace();
      if (startsWith("<?")) {
        std::size_t end = input_.find("?>", pos_);
        if (end == std::string_view::npos) fail("unterminated processing instruction");
        pos_ = end + 2;
      } else if (startsWith("<!--")) {
        skipComment();
      } else if (startsWith("<!DOCTYPE")) {
        skipDoctype();
      } else {
        return;
      }
    }
  }

  void skipComment() {
    std::size_t end = input_.find("-->", pos_ + 4);
    if (end == std::string_view::npos) fail("unterminated comment");
    pos_ = end + 3;
  }

  void skipDoctype() {
    pos_ += 9;
    int bracketDepth = 0;
    while (!eof()) {
      char c = input_[pos_++];
      if (c == '[') ++bracketDepth;
      if (c == ']') --bracketDepth;
      if (c == '>' && bracketDepth == 0) return;
    }
    fail("unterminated DOCTYPE");
  }

  std::string parseName() {
    if (eof() || !isNameStart(peek())) fail("expected name");
    std::size_t start = pos_;
    while (!eof() && isNameChar(peek())) ++pos_;
    return std::string(input_.substr(start, pos_ - start));
  }

  std::string decodeEntities(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
      if (raw[i] != '&') {
        out += raw[i++];
        continue;
      }
      std::size_t semi = raw.find(';', i);
      if (semi == std::string_view::npos) fail("unterminated entity reference");
      std::string_view entity = raw.substr(i + 1, semi - i - 1);
      if (entity == "lt") {
        out += '<';
      } else if (entity == "gt") {
        out += '>';
      } else if (entity == "amp") {
        out += '&';
      } else if (entity == "apos") {
        out += '\'';
      } else if (entity == "quot") {
        out += '"';
      } else if (!entity.empty() && entity[0] == '#') {
        long code = 0;
        try {
          code = entity[1] == 'x' || entity[1] == 'X'
                     ? std::stol(std::string(entity.substr(2)), nullptr, 16)
                     : std::stol(std::string(entity.substr(1)));
        } catch (const std::exception&) {
          fail("bad character reference");
        }
        // UTF-8 encode.
        if (code < 0x80) {
          out += static_cast<char>(code);
        } else if (code < 0x800) {
          out += static_cast<char>(0xC0 | (code >> 6));
          out += static_cast<char>(0x80 | (code & 0x3F));
        } else if (code < 0x10000) {
          out += static_cast<char>(0xE0 | (code >> 12));
          out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (code & 0x3F));
        } else {
          out += static_cast<char>(0xF0 | (code >> 18));
          out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
          out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (code & 0x3F));
        }
      } else {
        fail("unknown entity &" + std::string(entity) + ";");
      }
      i = semi + 1;
    }
    return out;
  }

  XmlElement parseElement() {
    ++pos_;  // consume '<'
    XmlElement element;
    element.name = parseName();
    for (;;) {
      skipWhitespace();
      if (eof()) fail("unterminated start tag");
      if (startsWith("/>")) {
        pos_ += 2;
        return element;
      }
      if (peek() == '>') {
        ++pos_;
        parseContent(element);
        return element;
      }
      std::string key = parseName();
      skipWhitespace();
      if (eof() || peek() != '=') fail("expected '=' in attribute");
      ++pos_;
      skipWhitespace();
      if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted value");
      char quote = input_[pos_++];
      std::size_t start = pos_;
      while (!eof() && peek() != quote) ++pos_;
      if (eof()) fail("unterminated attribute value");
      element.attributes[key] = decodeEntities(input_.substr(start, pos_ - start));
      ++pos_;
    }
  }

  void parseContent(XmlElement& element) {
    for (;;) {
      std::size_t start = pos_;
      while (!eof() && peek() != '<') ++pos_;
      if (pos_ > start) {
        element.text += decodeEntities(input_.substr(start, pos_ - start));
      }
      if (eof()) fail("unterminated element <" + element.name + ">");
      if (startsWith("</")) {
        pos_ += 2;
        std::string closing = parseName();
        if (closing != element.name) {
          fail("mismatched close tag </" + closing + "> for <" + element.name + ">");
        }
        skipWhitespace();
        if (eof() || peek() != '>') fail("malformed close tag");
        ++pos_;
        return;
      }
      if (startsWith("<!--")) {
        skipComment();
      } else if (startsWith("<![CDATA[")) {
        std::size_t end = input_.find("]]>", pos_ + 9);
        if (end == std::string_view::npos) fail("unterminated CDATA");
        element.text += std::string(input_.substr(pos_ + 9, end - pos_ - 9));
        pos_ = end + 3;
      } else if (startsWith("<?")) {
        std::size_t end = input_.find("?>", pos_);
        if (end == std::string_view::npos) fail("unterminated processing instruction");
        pos_ = end + 2;
      } else {
        element.children.push_back(parseElement());
      }
    }
  }

  std::string_view input_;
  std::size_t pos_ = 0;
};

}  // namespace

const XmlElement* XmlElement::child(std::string_view childName) const {
  for (const auto& c : children) {
    if (c.name == childName) return &c;
  }
  return nullptr;
}

std::vector<const XmlElement*> XmlElement::childrenNamed(std::string_view childName) const {
  std::vector<const XmlElement*> out;
  for (const auto& c : children) {
    if (c.name == childName) out.push_back(&c);
  }
  return out;
}

std::string XmlElement::attribute(std::string_view key, std::string fallback) const {
  auto it = attributes.find(std::string(key));
  return it == attributes.end() ? fallback : it->second;
}

std::string XmlElement::trimmedText() const {
  std::size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

XmlElement parseXml(std::string_view input) {
  return Parser(input).parseDocument();
}

}  // namespace solonet
