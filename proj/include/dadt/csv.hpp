/*
 * Copyright 2026 The DADT Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Minimal RFC-4180 reader/writer. Quoted fields may contain separators,
// doubled quotes and line breaks; both LF and CRLF record ends are accepted.

#ifndef DADT_CSV_HPP_
#define DADT_CSV_HPP_

#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dadt/error.hpp"

namespace dadt::csv {

using Record = std::vector<std::string>;

class Reader {
 public:
  explicit Reader(std::istream& in)
      : text_(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()) {
    // Tolerate a UTF-8 byte order mark.
    if (text_.size() >= 3 && text_.compare(0, 3, "\xEF\xBB\xBF") == 0) pos_ = 3;
  }

  // Reads the next record into `out`. Returns false at end of input.
  bool Next(Record& out) {
    out.clear();
    if (pos_ >= text_.size()) return false;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (quoted) {
        if (c == '"') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
            field.push_back('"');
            pos_ += 2;
            continue;
          }
          quoted = false;
          ++pos_;
          continue;
        }
        field.push_back(c);
        ++pos_;
        continue;
      }
      if (c == '"') {
        if (!field.empty() || field_was_quoted) {
          Fail(ErrorCode::kParseError,
               "unexpected quote inside unquoted field at record " + std::to_string(record_index_ + 1));
        }
        quoted = true;
        field_was_quoted = true;
        ++pos_;
        continue;
      }
      if (c == ',') {
        out.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        ++pos_;
        continue;
      }
      if (c == '\r' || c == '\n') {
        ++pos_;
        if (c == '\r' && pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
        break;
      }
      if (field_was_quoted) {
        Fail(ErrorCode::kParseError,
             "characters after closing quote at record " + std::to_string(record_index_ + 1));
      }
      field.push_back(c);
      ++pos_;
    }
    if (quoted) {
      Fail(ErrorCode::kParseError, "unterminated quoted field at record " + std::to_string(record_index_ + 1));
    }
    out.push_back(std::move(field));
    ++record_index_;
    return true;
  }

  std::size_t records_read() const { return record_index_; }

 private:
  std::string text_;
  std::size_t pos_ = 0;
  std::size_t record_index_ = 0;
};

inline std::string Escape(std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void WriteRecord(std::ostream& out, const Record& record) {
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (i > 0) out << ',';
    out << Escape(record[i]);
  }
  out << '\n';
}

}  // namespace dadt::csv

#endif  // DADT_CSV_HPP_
