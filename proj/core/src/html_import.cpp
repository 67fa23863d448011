#include "semtab/errors.hpp"
#include "semtab/table.hpp"
#include "util.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>

namespace semtab {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

struct Tag {
  std::string name; // lowercase, without '/'
  bool closing = false;
  std::map<std::string, std::string> attrs;
};

// Parses the tag starting at html[pos] == '<'; advances pos past '>'.
std::optional<Tag> read_tag(std::string_view html, std::size_t& pos) {
  const auto end = html.find('>', pos);
  if (end == std::string_view::npos) {
    pos = html.size();
    return std::nullopt;
  }
  std::string_view body = html.substr(pos + 1, end - pos - 1);
  pos = end + 1;
  if (body.empty() || body.front() == '!' || body.front() == '?') {
    return std::nullopt;
  }
  Tag tag;
  if (body.front() == '/') {
    tag.closing = true;
    body.remove_prefix(1);
  }
  std::size_t i = 0;
  while (i < body.size() && (std::isalnum(static_cast<unsigned char>(body[i])) != 0)) {
    ++i;
  }
  tag.name = lower(body.substr(0, i));
  while (i < body.size()) {
    while (i < body.size() && (std::isspace(static_cast<unsigned char>(body[i])) || body[i] == '/')) {
      ++i;
    }
    const auto name_start = i;
    while (i < body.size() && body[i] != '=' && !std::isspace(static_cast<unsigned char>(body[i])) &&
           body[i] != '/') {
      ++i;
    }
    if (name_start == i) {
      break;
    }
    auto attr = lower(body.substr(name_start, i - name_start));
    std::string value;
    if (i < body.size() && body[i] == '=') {
      ++i;
      if (i < body.size() && (body[i] == '"' || body[i] == '\'')) {
        const char quote = body[i++];
        const auto close = body.find(quote, i);
        const auto stop = close == std::string_view::npos ? body.size() : close;
        value = std::string(body.substr(i, stop - i));
        i = stop == body.size() ? stop : stop + 1;
      } else {
        const auto start = i;
        while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i]))) {
          ++i;
        }
        value = std::string(body.substr(start, i - start));
      }
    }
    tag.attrs.emplace(std::move(attr), std::move(value));
  }
  return tag;
}

void append_utf8(std::string& out, std::uint32_t cp) {
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

std::string decode_entities(std::string_view s) {
  static const std::map<std::string, std::uint32_t, std::less<>> named = {
      {"amp", '&'}, {"lt", '<'}, {"gt", '>'}, {"quot", '"'}, {"apos", '\''}, {"nbsp", ' '}};
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    const auto semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out += s[i];
      continue;
    }
    const auto name = s.substr(i + 1, semi - i - 1);
    std::optional<std::uint32_t> cp;
    if (!name.empty() && name.front() == '#') {
      try {
        const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
        cp = static_cast<std::uint32_t>(
            std::stoul(std::string(name.substr(hex ? 2 : 1)), nullptr, hex ? 16 : 10));
      } catch (const std::exception&) {
        cp.reset();
      }
    } else if (const auto it = named.find(name); it != named.end()) {
      cp = it->second;
    }
    if (!cp) {
      out += s[i];
      continue;
    }
    append_utf8(out, *cp);
    i = semi;
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (const char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending = !out.empty();
      continue;
    }
    if (pending) {
      out += ' ';
      pending = false;
    }
    out += ch;
  }
  return out;
}

std::size_t span_attr(const Tag& tag, const char* name) {
  const auto it = tag.attrs.find(name);
  if (it == tag.attrs.end()) {
    return 1;
  }
  try {
    return std::clamp<std::size_t>(std::stoul(it->second), 1, 1000);
  } catch (const std::exception&) {
    return 1;
  }
}

struct HtmlCell {
  std::string text;
  std::size_t colspan = 1;
  std::size_t rowspan = 1;
  bool is_th = false;
};

struct HtmlRow {
  std::vector<HtmlCell> cells;
  bool in_thead = false;
};

} // namespace

RawTable parse_html_table(std::string_view html, const std::string& table_id) {
  std::vector<HtmlRow> rows;
  std::string caption;
  bool in_table = false;
  bool in_thead = false;
  bool in_caption = false;
  HtmlCell* cell = nullptr;
  int nested = 0;

  std::size_t pos = 0;
  while (pos < html.size()) {
    const auto lt = html.find('<', pos);
    const auto text = html.substr(pos, (lt == std::string_view::npos ? html.size() : lt) - pos);
    if (cell != nullptr) {
      cell->text += text;
    } else if (in_caption) {
      caption += text;
    }
    if (lt == std::string_view::npos) {
      break;
    }
    pos = lt;
    const auto tag = read_tag(html, pos);
    if (!tag) {
      continue;
    }
    if (tag->name == "table") {
      if (!tag->closing) {
        if (in_table) {
          ++nested;
        }
        in_table = true;
      } else if (nested > 0) {
        --nested;
      } else if (in_table) {
        break;
      }
      continue;
    }
    if (!in_table || nested > 0) {
      continue;
    }
    if (tag->name == "thead") {
      in_thead = !tag->closing;
    } else if (tag->name == "caption") {
      in_caption = !tag->closing;
    } else if (tag->name == "tr") {
      cell = nullptr;
      if (!tag->closing) {
        rows.push_back(HtmlRow{{}, in_thead});
      }
    } else if (tag->name == "td" || tag->name == "th") {
      if (tag->closing) {
        cell = nullptr;
      } else {
        if (rows.empty()) {
          rows.push_back(HtmlRow{{}, in_thead});
        }
        auto& c = rows.back().cells.emplace_back();
        c.colspan = span_attr(*tag, "colspan");
        c.rowspan = span_attr(*tag, "rowspan");
        c.is_th = tag->name == "th";
        cell = &c;
      }
    } else if (tag->name == "br" && cell != nullptr) {
      cell->text += ' ';
    }
  }

  if (!in_table) {
    throw DataError("no <table> element found for '" + table_id + "'");
  }

  std::size_t header_rows = 0;
  while (header_rows < rows.size() && !rows[header_rows].cells.empty() &&
         (rows[header_rows].in_thead ||
          std::all_of(rows[header_rows].cells.begin(), rows[header_rows].cells.end(),
                      [](const HtmlCell& c) { return c.is_th; }))) {
    ++header_rows;
  }

  RawTable out;
  out.table_id = table_id;
  out.caption = collapse_whitespace(decode_entities(caption));
  out.header_row_count = header_rows;

  // Columns still covered by a rowspan from above: column -> rows remaining.
  std::map<std::size_t, std::size_t> pending;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const bool header = r < header_rows;
    std::map<std::size_t, std::size_t> started;
    std::vector<std::string> stored;
    std::size_t grid_col = 0;
    auto fill_pending = [&] {
      for (auto it = pending.find(grid_col); it != pending.end(); it = pending.find(grid_col)) {
        stored.emplace_back();
        if (--it->second == 0) {
          pending.erase(it);
        }
        ++grid_col;
      }
    };
    for (const auto& c : rows[r].cells) {
      fill_pending();
      stored.push_back(collapse_whitespace(decode_entities(c.text)));
      if (header && c.colspan > 1) {
        out.header_spans.push_back({r, stored.size() - 1, c.colspan});
      } else {
        stored.insert(stored.end(), c.colspan - 1, std::string());
      }
      if (c.rowspan > 1) {
        for (std::size_t k = 0; k < c.colspan; ++k) {
          started[grid_col + k] = c.rowspan - 1;
        }
      }
      grid_col += c.colspan;
    }
    // Rowspans reaching past the last explicit cell of this row.
    while (true) {
      const auto next = pending.lower_bound(grid_col);
      if (next == pending.end()) {
        break;
      }
      stored.insert(stored.end(), next->first - grid_col, std::string());
      grid_col = next->first;
      fill_pending();
    }
    pending.merge(started);
    out.rows.push_back(std::move(stored));
  }

  if (out.rows.empty() || out.max_width() == 0) {
    throw DataError("table '" + table_id + "' is empty");
  }
  return out;
}

} // namespace semtab
