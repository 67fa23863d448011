#include "doctest.h"

#include "fixtures.hpp"

#include <semtab/errors.hpp>
#include <semtab/table.hpp>

#include <fstream>
#include <iterator>
#include <random>

using namespace semtab;

namespace {

RawTable appendix_table() {
  return parse_table(fixtures::data_dir() / "appendix" / "multi_header.json");
}

std::vector<std::size_t> widths(const RawTable& t) {
  std::vector<std::size_t> out;
  for (const auto& r : t.rows) {
    out.push_back(r.size());
  }
  return out;
}

} // namespace

TEST_CASE("parse_table keeps rows exactly as stored") {
  const auto t = parse_table_text(R"({"table_id": "t", "header_row_count": 1,
    "rows": [["a"], ["b", "c", "d"], ["e", "f", "g", "h", "i"]]})");
  CHECK(widths(t) == std::vector<std::size_t>{1, 3, 5});
  CHECK(t.caption.empty());
  CHECK(t.header_spans.empty());
}

TEST_CASE("parse_table reads the multi-header appendix table") {
  const auto t = appendix_table();
  CHECK(t.header_row_count == 2);
  CHECK(widths(t) == std::vector<std::size_t>{3, 5, 5, 5});
  REQUIRE(t.header_spans.size() == 2);
  CHECK(t.header_spans[0] == HeaderSpan{0, 1, 2});
}

TEST_CASE("parse_table errors name the field or line") {
  SUBCASE("missing table_id") {
    try {
      parse_table_text(R"({"header_row_count": 1, "rows": [["a"]]})");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("table_id") != std::string::npos);
    }
  }
  SUBCASE("syntax error reports a line") {
    try {
      parse_table_text("{\n\"table_id\": \"t\",\n\"rows\": [[\"a\"],\n}", "bad.json");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() >= 3);
      CHECK(e.source() == "bad.json");
    }
  }
  SUBCASE("empty table") {
    CHECK_THROWS_AS(parse_table_text(R"({"table_id": "t", "header_row_count": 0, "rows": []})"),
                    ParseError);
    CHECK_THROWS_AS(parse_table_text(R"({"table_id": "t", "header_row_count": 0, "rows": [[]]})"),
                    ParseError);
  }
  SUBCASE("non-string cell") {
    CHECK_THROWS_AS(parse_table_text(R"({"table_id": "t", "header_row_count": 1, "rows": [[1]]})"),
                    ParseError);
  }
  SUBCASE("header_row_count beyond rows") {
    CHECK_THROWS_AS(parse_table_text(R"({"table_id": "t", "header_row_count": 3, "rows": [["a"]]})"),
                    ParseError);
  }
  SUBCASE("span outside header rows") {
    CHECK_THROWS_AS(parse_table_text(R"({"table_id": "t", "header_row_count": 1,
      "rows": [["a"], ["b"]], "header_spans": [{"row": 1, "col": 0, "span": 2}]})"),
                    ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(parse_table("/nonexistent/table.json"), DataError);
  }
}

TEST_CASE("intrapolate expands spanning header cells") {
  const auto t = intrapolate(appendix_table());
  REQUIRE(t.rows.size() == 4);
  CHECK(t.rows[0] == std::vector<std::string>{"ExperMatter", "UserB", "UserB", "UserC", "UserC"});
  CHECK(t.rows[1] == std::vector<std::string>{"", "Base1", "Base2", "Base1", "Base2"});
  CHECK(t.rows[2] == std::vector<std::string>{"Gold", "5.6", "", "7", "8"});
  CHECK(t.header_spans.empty());
  CHECK(t.is_rectangular());
}

TEST_CASE("intrapolate right-pads rows without span info") {
  RawTable t;
  t.table_id = "t";
  t.header_row_count = 1;
  t.rows = {{"a", "b"}, {"c", "d", "e", "f"}};
  const auto out = intrapolate(t);
  CHECK(widths(out) == std::vector<std::size_t>{4, 4});
  CHECK(out.rows[0] == std::vector<std::string>{"a", "b", "", ""});
}

TEST_CASE("intrapolate leaves rectangular tables alone") {
  const auto t = parse_table(fixtures::data_dir() / "sample_table.json");
  CHECK(intrapolate(t) == t);
}

TEST_CASE("intrapolate is idempotent on random ragged tables") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    RawTable t;
    t.table_id = "r";
    const auto nrows = 1 + rng() % 5;
    for (std::size_t r = 0; r < nrows; ++r) {
      t.rows.emplace_back(1 + rng() % 5, std::string(1, static_cast<char>('a' + rng() % 26)));
    }
    t.header_row_count = rng() % (nrows + 1);
    for (std::size_t r = 0; r < t.header_row_count; ++r) {
      if (rng() % 2 == 0) {
        t.header_spans.push_back({r, rng() % t.rows[r].size(), 1 + rng() % 3});
      }
    }
    const auto once = intrapolate(t);
    CHECK(intrapolate(once) == once);
    CHECK(once.is_rectangular());
  }
}

TEST_CASE("merge_headers joins header rows column-wise") {
  const auto n = merge_headers(intrapolate(appendix_table()));
  CHECK(n.rows() == 3);
  CHECK(n.cols() == 5);
  CHECK(n.grid()[0] == std::vector<std::string>{"ExperMatter", "UserB Base1", "UserB Base2",
                                                "UserC Base1", "UserC Base2"});
  CHECK(n.effective_caption() ==
        "Scores by user and baseline. Each user was evaluated against two baselines.");
}

TEST_CASE("merge_headers edge cases") {
  RawTable t;
  t.table_id = "t";
  SUBCASE("single header row is unchanged") {
    t.header_row_count = 1;
    t.rows = {{" A ", "B"}, {"1", "2"}};
    const auto n = merge_headers(t);
    CHECK(n.grid() == t.rows);
  }
  SUBCASE("identical stacked cells collapse") {
    t.header_row_count = 2;
    t.rows = {{"X", "Y"}, {"X", "Z"}, {"1", "2"}};
    const auto n = merge_headers(t);
    CHECK(n.at(0, 0) == "X");
    CHECK(n.at(0, 1) == "Y Z");
  }
  SUBCASE("no header row") {
    t.header_row_count = 0;
    t.rows = {{"1", "2"}};
    CHECK_THROWS_WITH_AS(merge_headers(t), doctest::Contains("header"), DataError);
  }
  SUBCASE("ragged input") {
    t.header_row_count = 1;
    t.rows = {{"1", "2"}, {"3"}};
    CHECK_THROWS_AS(merge_headers(t), DataError);
  }
  SUBCASE("caption and surrounding text") {
    t.header_row_count = 1;
    t.rows = {{"a"}};
    t.caption = "";
    t.surrounding_text = " context ";
    CHECK(merge_headers(t).effective_caption() == "context");
  }
}

TEST_CASE("normalize output is rectangular with one header row") {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    RawTable t;
    t.table_id = "r";
    const auto nrows = 1 + rng() % 6;
    for (std::size_t r = 0; r < nrows; ++r) {
      std::vector<std::string> row(1 + rng() % 4);
      for (auto& cell : row) {
        cell = rng() % 3 == 0 ? "" : std::string(1, static_cast<char>('a' + rng() % 4));
      }
      t.rows.push_back(row);
    }
    t.header_row_count = 1 + rng() % nrows;
    const auto n = normalize(t);
    CHECK(n.header_row_count() == 1);
    CHECK(n.rows() == nrows - t.header_row_count + 1);
    CHECK(n.cols() == t.max_width());
    CHECK(n.grid().size() * n.cols() == n.rows() * n.cols());
  }
}

TEST_CASE("canonical encoding round-trips a normalized table") {
  const auto n = normalize(appendix_table());
  const auto text = to_table_text(n);
  CHECK(normalize(parse_table_text(text)) == n);
  CHECK(to_table_text(normalize(parse_table_text(text))) == text);
}

TEST_CASE("NormalizedTable accessors") {
  const auto t = fixtures::sample_table();
  CHECK(t.at(2, 0) == "palpitation");
  CHECK(t.column(1) == std::vector<std::string>{"Agoraphobic", "museum", "shop", "boat"});
  CHECK_THROWS_AS(t.at(4, 0), std::out_of_range);
  const std::vector<std::size_t> keep{2, 0};
  const auto s = t.select_columns(keep);
  CHECK(s.cols() == 2);
  CHECK(s.at(0, 0) == "Pleasant");
  CHECK_THROWS_AS(NormalizedTable("x", "", {{"a"}, {"b", "c"}}), DataError);
  CHECK_THROWS_AS(NormalizedTable("x", "", {}), DataError);
}

TEST_CASE("HTML import maps colspan and rowspan") {
  const auto html = fixtures::data_dir() / "multi_header.html";
  std::ifstream in(html);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto raw = parse_html_table(text, "multi_header");
  CHECK(raw.header_row_count == 2);
  CHECK(widths(raw) == std::vector<std::size_t>{3, 5, 5, 5});
  CHECK(raw.caption == "Scores by user and baseline.");
  const auto n = normalize(raw);
  const auto expected = normalize(appendix_table());
  CHECK(n.grid() == expected.grid());
}

TEST_CASE("HTML import details") {
  SUBCASE("entities, nested markup and data colspan") {
    const auto raw = parse_html_table(
        "<table><tr><th>A &amp; B</th><th>C</th><th>D</th></tr>"
        "<tr><td><b>x</b>&nbsp;y</td><td colspan=2>z&#65;</td></tr></table>",
        "t");
    CHECK(raw.header_row_count == 1);
    CHECK(raw.rows[0][0] == "A & B");
    CHECK(raw.rows[1] == std::vector<std::string>{"x y", "zA", ""});
  }
  SUBCASE("rowspan in a data column") {
    const auto raw = parse_html_table(
        "<table><thead><tr><td>k</td><td>v</td></tr></thead>"
        "<tr><td rowspan=2>a</td><td>1</td></tr><tr><td>2</td></tr></table>",
        "t");
    CHECK(raw.header_row_count == 1);
    CHECK(raw.rows[2] == std::vector<std::string>{"", "2"});
  }
  SUBCASE("rowspan on the last column") {
    const auto raw = parse_html_table(
        "<table><tr><th>k</th><th>v</th></tr>"
        "<tr><td>a</td><td rowspan=2>1</td></tr><tr><td>b</td></tr></table>",
        "t");
    CHECK(raw.rows[2] == std::vector<std::string>{"b", ""});
  }
  SUBCASE("no table") {
    CHECK_THROWS_AS(parse_html_table("<p>nothing</p>", "t"), DataError);
  }
}
