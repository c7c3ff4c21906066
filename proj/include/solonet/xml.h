// Minimal non-validating XML reader, enough for uncompressed MusicXML.

#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace solonet {

struct MalformedXml : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Element tree node. Text content of mixed nodes is concatenated into
/// `text`; declarations, comments, processing instructions and DOCTYPE are
/// consumed and dropped.
struct XmlElement {
  std::string name;
  std::map<std::string, std::string> attributes;
  std::vector<XmlElement> children;
  std::string text;

  /// First child with the given name, or nullptr.
  const XmlElement* child(std::string_view childName) const;
  /// All children with the given name.
  std::vector<const XmlElement*> childrenNamed(std::string_view childName) const;
  bool hasChild(std::string_view childName) const { return child(childName) != nullptr; }
  std::string attribute(std::string_view key, std::string fallback = "") const;
  /// Text with surrounding whitespace stripped.
  std::string trimmedText() const;
};

/// Parses a whole document and returns its root element.
/// Throws MalformedXml with a byte offset on any syntax error.
XmlElement parseXml(std::string_view input);

}  // namespace solonet
