// Copyright 2026 The InkAssess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "inkassess/graph/triples.h"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "absl/strings/str_cat.h"
#include "inkassess/graph/vocabulary.h"
#include "inkassess/status.h"

namespace inkassess {
namespace {

bool ForbiddenInIri(unsigned char c) {
  if (c <= 0x20) return true;
  switch (c) {
    case '<':
    case '>':
    case '"':
    case '{':
    case '}':
    case '|':
    case '^':
    case '`':
    case '\\':
      return true;
    default:
      return false;
  }
}

void AppendEscapedLiteral(std::string_view text, std::string& out) {
  for (unsigned char c : text) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (c < 0x20 || c == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04X", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
}

// Appends the UTF-8 encoding of `cp`.
void AppendUtf8(uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Cursor over one line of N-Triples.
class LineParser {
 public:
  LineParser(std::string_view line, int number) : s_(line), line_(number) {}

  absl::StatusOr<Triple> Parse() {
    Triple t;
    SkipSpace();
    INKASSESS_ASSIGN_OR_RETURN(t.subject, Iri("subject"));
    SkipSpace();
    INKASSESS_ASSIGN_OR_RETURN(t.predicate, Iri("predicate"));
    SkipSpace();
    if (Peek() == '<') {
      INKASSESS_ASSIGN_OR_RETURN(std::string iri, Iri("object"));
      t.object = Term::Iri(std::move(iri));
    } else if (Peek() == '"') {
      INKASSESS_ASSIGN_OR_RETURN(t.object, Literal());
    } else {
      return Error("expected IRI or literal object");
    }
    SkipSpace();
    if (Peek() != '.') return Error("expected '.'");
    ++pos_;
    SkipSpace();
    if (pos_ < s_.size() && s_[pos_] != '#') {
      return Error("trailing characters after '.'");
    }
    return t;
  }

 private:
  char Peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void SkipSpace() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  absl::Status Error(std::string_view what) const {
    return MakeError(ErrorKind::kParseError,
                     absl::StrCat("line ", line_, ": ", std::string(what)));
  }

  absl::StatusOr<std::string> Iri(std::string_view role) {
    if (Peek() != '<') return Error(absl::StrCat("expected <", std::string(role), ">"));
    size_t end = s_.find('>', pos_ + 1);
    if (end == std::string_view::npos) return Error("unterminated IRI");
    std::string iri(s_.substr(pos_ + 1, end - pos_ - 1));
    if (!IsValidIri(iri)) return Error(absl::StrCat("invalid IRI <", iri, ">"));
    pos_ = end + 1;
    return iri;
  }

  absl::StatusOr<uint32_t> Hex(int digits) {
    if (pos_ + digits > s_.size()) return Error("truncated \\u escape");
    uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      char c = s_[pos_++];
      cp <<= 4;
      if (c >= '0' && c <= '9') {
        cp |= c - '0';
      } else if (c >= 'A' && c <= 'F') {
        cp |= c - 'A' + 10;
      } else if (c >= 'a' && c <= 'f') {
        cp |= c - 'a' + 10;
      } else {
        return Error("bad hex digit in escape");
      }
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return Error("escape is not a scalar value");
    }
    return cp;
  }

  absl::StatusOr<Term> Literal() {
    ++pos_;  // opening quote
    std::string value;
    while (true) {
      if (pos_ >= s_.size()) return Error("unterminated literal");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        value += c;
        continue;
      }
      if (pos_ >= s_.size()) return Error("dangling backslash");
      char e = s_[pos_++];
      switch (e) {
        case 't':
          value += '\t';
          break;
        case 'b':
          value += '\b';
          break;
        case 'n':
          value += '\n';
          break;
        case 'r':
          value += '\r';
          break;
        case 'f':
          value += '\f';
          break;
        case '"':
          value += '"';
          break;
        case '\'':
          value += '\'';
          break;
        case '\\':
          value += '\\';
          break;
        case 'u': {
          INKASSESS_ASSIGN_OR_RETURN(uint32_t cp, Hex(4));
          AppendUtf8(cp, value);
          break;
        }
        case 'U': {
          INKASSESS_ASSIGN_OR_RETURN(uint32_t cp, Hex(8));
          AppendUtf8(cp, value);
          break;
        }
        default:
          return Error(absl::StrCat("unknown escape \\", std::string(1, e)));
      }
    }
    if (Peek() == '@') return Error("language tags are not supported");
    if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      INKASSESS_ASSIGN_OR_RETURN(std::string dt, Iri("datatype"));
      return Term::Literal(std::move(value), std::move(dt));
    }
    return Term::Literal(std::move(value));
  }

  std::string_view s_;
  int line_;
  size_t pos_ = 0;
};

}  // namespace

bool IsValidIri(std::string_view iri) {
  if (iri.empty()) return false;
  if (iri.find(':') == std::string_view::npos) return false;  // need a scheme
  return std::none_of(iri.begin(), iri.end(), [](char c) {
    return ForbiddenInIri(static_cast<unsigned char>(c));
  });
}

std::string IriSegment(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    bool plain = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                 (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' ||
                 c == '~';
    if (plain) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

InterpretationGraph::InterpretationGraph()
    : prefixes_{{"ia", std::string(vocab::kVocabNs)},
                {"feat", std::string(vocab::kFeatureNs)},
                {"shape", std::string(vocab::kShapeNs)},
                {"unit", std::string(vocab::kUnitNs)},
                {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
                {"xsd", std::string(vocab::kXsdNs)}} {}

absl::Status InterpretationGraph::Add(Triple triple) {
  if (!IsValidIri(triple.subject)) {
    return MakeError(ErrorKind::kInvalidFormat,
                     absl::StrCat("bad subject IRI '", triple.subject, "'"));
  }
  if (!vocab::IsPredicate(triple.predicate)) {
    return MakeError(ErrorKind::kInvalidFormat,
                     absl::StrCat("predicate not in vocabulary: ",
                                  triple.predicate));
  }
  const Term& o = triple.object;
  bool object_ok = o.is_literal
                       ? (o.datatype.empty() || IsValidIri(o.datatype))
                       : IsValidIri(o.value);
  if (!object_ok) {
    return MakeError(ErrorKind::kInvalidFormat,
                     absl::StrCat("bad object in ", TripleLine(triple)));
  }
  triples_.insert(std::move(triple));
  return absl::OkStatus();
}

std::string TripleLine(const Triple& triple) {
  std::string out = absl::StrCat("<", triple.subject, "> <", triple.predicate,
                                 "> ");
  const Term& o = triple.object;
  if (o.is_literal) {
    out += '"';
    AppendEscapedLiteral(o.value, out);
    out += '"';
    if (!o.datatype.empty()) absl::StrAppend(&out, "^^<", o.datatype, ">");
  } else {
    absl::StrAppend(&out, "<", o.value, ">");
  }
  out += " .";
  return out;
}

std::string SerializeNTriples(const InterpretationGraph& graph) {
  std::vector<std::string> lines;
  lines.reserve(graph.size());
  for (const Triple& t : graph.triples()) lines.push_back(TripleLine(t));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

absl::StatusOr<InterpretationGraph> ParseNTriples(std::string_view text) {
  InterpretationGraph graph;
  int number = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    INKASSESS_ASSIGN_OR_RETURN(Triple triple, LineParser(line, number).Parse());
    absl::Status added = graph.Add(std::move(triple));
    if (!added.ok()) {
      return MakeError(ErrorKind::kParseError,
                       absl::StrCat("line ", number, ": ",
                                    std::string(added.message())));
    }
  }
  return graph;
}

}  // namespace inkassess
