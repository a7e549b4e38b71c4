#include "hybridlog/output.hpp"

#include <fstream>
#include <system_error>

#include <json.hpp>

#include "hybridlog/csv.hpp"
#include "hybridlog/errors.hpp"

namespace hybridlog {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool all_literal(const std::vector<Token>& toks, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end && i < toks.size(); ++i)
    if (!toks[i].is_literal()) return false;
  return true;
}

std::string escape_newlines(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\n')
      out += "\\n";
    else
      out.push_back(c);
  }
  return out;
}

std::vector<std::string> raw_cells(const TokenSequence& seq) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (const auto& t : seq.tokens) out.push_back(t.text);
  return out;
}

}  // namespace

std::vector<ParsedRecord> build_records(const Session& session) {
  const TemplateEngine& engine = session.engine();
  std::vector<ParsedRecord> out;
  out.reserve(session.records().size());
  for (const MessageRecord& m : session.records()) {
    ParsedRecord r;
    r.message_id = m.message_id;
    r.line_start = m.line_start;
    r.line_end = m.line_end;
    r.log_type = m.log_type;
    r.group_id = r.template_id = m.group_id;
    const TemplateGroup& g = engine.group(m.group_id);
    const auto& tmpl = g.tmpl.tokens;

    switch (m.log_type) {
      case LogType::Event: {
        if (m.body.empty()) break;
        const auto& line = m.body.front();
        for (std::size_t i = 0; i < tmpl.size() && i < line.size(); ++i)
          if (!tmpl[i].is_literal()) r.event_params.push_back({i, line[i].text});
        break;
      }
      case LogType::Table: {
        std::size_t header = m.head_line.value_or(kNone);
        if (!all_literal(tmpl, 0, tmpl.size())) header = kNone;
        for (std::size_t i = 0; i < m.body.size(); ++i) {
          if (i == header) continue;
          TableRow row{i, raw_cells(m.body[i]), m.body[i].size() != tmpl.size()};
          r.table_rows.push_back(std::move(row));
        }
        break;
      }
      case LogType::Text: {
        std::size_t head = m.head_line.value_or(kNone);
        std::size_t tail = m.tail_line.value_or(kNone);
        if (!all_literal(tmpl, 0, g.split)) head = kNone;
        if (!all_literal(tmpl, g.split, tmpl.size())) tail = kNone;
        for (std::size_t i = 0; i < m.body.size(); ++i) {
          if (i == head || i == tail) continue;
          r.text_lines.push_back({i, m.body_text[i]});
        }
        break;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string meta_jsonl(const std::vector<ParsedRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["message_id"] = r.message_id;
    j["line_start"] = r.line_start;
    j["line_end"] = r.line_end;
    j["log_type"] = std::string(to_string(r.log_type));
    j["template_id"] = r.template_id;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::string templates_csv(const std::vector<FinalTemplate>& templates) {
  std::string out = "template_id,log_type,template\n";
  for (const auto& t : templates) {
    out += std::to_string(t.group_id);
    out.push_back(',');
    out += to_string(t.log_type);
    out.push_back(',');
    out += csv::quote(escape_newlines(t.text), true);
    out.push_back('\n');
  }
  return out;
}

std::string event_params_csv(const std::vector<ParsedRecord>& records) {
  std::string out = "message_id,position,value\n";
  for (const auto& r : records)
    for (const auto& p : r.event_params)
      out += csv::row({std::to_string(r.message_id), std::to_string(p.position), p.value});
  return out;
}

std::string table_params_csv(const std::vector<ParsedRecord>& records) {
  std::string out = "message_id,row_index,col_index,value,ragged\n";
  for (const auto& r : records)
    for (const auto& row : r.table_rows)
      for (std::size_t c = 0; c < row.cells.size(); ++c)
        out += csv::row({std::to_string(r.message_id), std::to_string(row.row_index), std::to_string(c),
                         row.cells[c], row.ragged ? "1" : "0"});
  return out;
}

std::string text_params_csv(const std::vector<ParsedRecord>& records) {
  std::string out = "message_id,line_index,text\n";
  for (const auto& r : records)
    for (const auto& line : r.text_lines)
      out += csv::row({std::to_string(r.message_id), std::to_string(line.line_index), line.text});
  return out;
}

fs::path write_meta(const std::vector<ParsedRecord>& records, const std::vector<FinalTemplate>& templates,
                    const fs::path& out_dir) {
  const fs::path meta = out_dir / "meta.jsonl";
  write_file_atomic(meta, meta_jsonl(records));
  write_file_atomic(out_dir / "templates.csv", templates_csv(templates));
  return meta;
}

std::vector<fs::path> write_params(const std::vector<ParsedRecord>& records, const fs::path& out_dir) {
  std::vector<fs::path> paths{out_dir / "event_params.csv", out_dir / "table_params.csv",
                              out_dir / "text_params.csv"};
  write_file_atomic(paths[0], event_params_csv(records));
  write_file_atomic(paths[1], table_params_csv(records));
  write_file_atomic(paths[2], text_params_csv(records));
  return paths;
}

}  // namespace hybridlog
