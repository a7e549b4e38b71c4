#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hybridlog/session.hpp"
#include "hybridlog/template_engine.hpp"

namespace hybridlog {

struct EventParam {
  std::size_t position = 0;
  std::string value;  // raw token, key prefix included
};

struct TableRow {
  std::size_t row_index = 0;  // body line index
  std::vector<std::string> cells;
  bool ragged = false;  // cell count differs from the header's
};

struct TextLine {
  std::size_t line_index = 0;
  std::string text;  // leading whitespace kept
};

struct ParsedRecord {
  MessageId message_id = 0;
  std::size_t line_start = 0;
  std::size_t line_end = 0;
  LogType log_type = LogType::Event;
  GroupId group_id = 0;
  GroupId template_id = 0;
  std::vector<EventParam> event_params;
  std::vector<TableRow> table_rows;
  std::vector<TextLine> text_lines;
};

/// Splits every message into template and parameters.
///
/// EVENT parameters are the wildcard and key positions of the template.
/// TABLE rows are all body lines but the header. TEXT parameter lines are
/// all body lines but the identifier's head and tail lines. A header, head
/// or tail line counts as constant only while its part of the template is
/// all literals; otherwise it is emitted as a parameter line as well.
std::vector<ParsedRecord> build_records(const Session& session);

/// Writes `content` to a temp file next to `path` and renames it over.
/// Throws IoError on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string meta_jsonl(const std::vector<ParsedRecord>& records);
std::string templates_csv(const std::vector<FinalTemplate>& templates);
std::string event_params_csv(const std::vector<ParsedRecord>& records);
std::string table_params_csv(const std::vector<ParsedRecord>& records);
std::string text_params_csv(const std::vector<ParsedRecord>& records);

/// meta.jsonl and templates.csv; returns the meta path.
std::filesystem::path write_meta(const std::vector<ParsedRecord>& records,
                                 const std::vector<FinalTemplate>& templates,
                                 const std::filesystem::path& out_dir);

/// event_params.csv, table_params.csv, text_params.csv.
std::vector<std::filesystem::path> write_params(const std::vector<ParsedRecord>& records,
                                                const std::filesystem::path& out_dir);

}  // namespace hybridlog
