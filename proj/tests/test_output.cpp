#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "emlab/config.hpp"
#include "emlab/csv.hpp"
#include "emlab/errors.hpp"
#include "emlab/svg.hpp"

using namespace emlab;

namespace {

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

ResultTable two_series_table() {
    ResultTable t;
    t.columns = {"x", "f", "g"};
    t.add_row({format_cell(0.0), format_cell(1.0), format_cell(2.0)});
    t.add_row({format_cell(1.0), format_cell(3.0), format_cell(1.5)});
    t.add_row({format_cell(2.0), format_cell(2.0), format_cell(4.0)});
    return t;
}

std::string temp_path(const char* stem) {
    return std::string("emlab_test_") + stem;
}

}  // namespace

TEST_CASE("numeric cells survive a text round trip bit for bit") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 12345.678901234567, 6.02214076e23,
                     -0.0001220703125, 1.7976931348623157e308}) {
        const std::string s = format_cell(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_cell(42) == "42");
    CHECK(format_cell(static_cast<std::int64_t>(-9007199254740993LL)) == "-9007199254740993");
}

TEST_CASE("csv layout: header, comma separators, newline endings") {
    ResultTable t;
    t.columns = {"a", "b"};
    t.add_row({"1", "2"});
    t.add_row({"3", "4"});
    CHECK(to_csv(t) == "a,b\n1,2\n3,4\n");
    CHECK_THROWS_AS(t.add_row({"only-one"}), std::invalid_argument);
}

TEST_CASE("text files are written byte-exact") {
    const std::string path = temp_path("roundtrip.csv");
    const std::string payload = "a,b\n0.5,1\n";
    write_text_file(path, payload);
    std::ifstream in(path, std::ios::binary);
    const std::string got((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(got == payload);
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_text_file("no_such_dir_emlab/x.csv", payload), std::runtime_error);
}

TEST_CASE("svg render: one polyline per series, deterministic bytes") {
    const ResultTable t = two_series_table();
    PlotSpec spec;
    spec.title = "pair <f&g>";
    spec.x_label = "x";
    spec.y_label = "value";
    spec.y_columns = {1, 2};
    spec.caption = "suite=riesz jmax=2";
    const std::string svg = render_svg(t, spec);
    CHECK(count_occurrences(svg, "<polyline") == 2);
    CHECK(svg.find("pair &lt;f&amp;g&gt;") != std::string::npos);
    CHECK(svg.find("pair <f&g>") == std::string::npos);
    CHECK(svg.find("suite=riesz jmax=2") != std::string::npos);
    CHECK(render_svg(t, spec) == svg);

    ResultTable tiny;
    tiny.columns = {"x", "y"};
    tiny.add_row({"0", "1"});
    tiny.add_row({"1", "2"});
    PlotSpec one;
    one.y_columns = {1};
    CHECK(count_occurrences(render_svg(tiny, one), "<polyline") == 1);
}

TEST_CASE("svg render rejects bad input") {
    const ResultTable t = two_series_table();
    PlotSpec log_spec;
    log_spec.y_columns = {1};
    log_spec.log_y = true;
    ResultTable with_zero = t;
    with_zero.add_row({format_cell(3.0), format_cell(0.0), format_cell(1.0)});
    CHECK_THROWS_AS(render_svg(with_zero, log_spec), std::invalid_argument);
    CHECK_NOTHROW(render_svg(t, log_spec));

    ResultTable empty;
    empty.columns = {"x", "y"};
    PlotSpec spec;
    spec.y_columns = {1};
    CHECK_THROWS_AS(render_svg(empty, spec), std::invalid_argument);

    PlotSpec oob;
    oob.y_columns = {7};
    CHECK_THROWS_AS(render_svg(t, oob), std::invalid_argument);
    PlotSpec none;
    none.y_columns = {};
    CHECK_THROWS_AS(render_svg(t, none), std::invalid_argument);

    ResultTable words = two_series_table();
    words.add_row({"3", "fast", "1"});
    PlotSpec spec_f;
    spec_f.y_columns = {1};
    CHECK_THROWS_AS(render_svg(words, spec_f), std::invalid_argument);
}

TEST_CASE("suite defaults and full flag set") {
    const RunConfig base = parse_config({"riesz"});
    CHECK(base.suite == Suite::Riesz);
    CHECK(base.j_max == 12);
    CHECK(base.tol == 1e-10);
    CHECK(base.seed == 1);
    CHECK(!base.svg);
    CHECK(base.stamp() ==
          "suite=riesz jmax=12 schedule=sqrt variant=standard grid=auto tol=1e-10 seed=1");

    CHECK(parse_config({"weights"}).j_max == 8);
    CHECK(parse_config({"kp"}).j_max == 5);
    CHECK(parse_config({"solve"}).j_max == 1);
    CHECK(parse_config({"kernel-compare"}).j_max == 2);

    const RunConfig full = parse_config({"kp", "--jmax", "3", "--schedule", "scaled:0.5",
                                         "--variant", "strong", "--grid", "128,64", "--tol",
                                         "1e-6", "--seed", "9", "--out", "results", "--format",
                                         "csv,svg"});
    CHECK(full.suite == Suite::Kp);
    CHECK(full.j_max == 3);
    CHECK(full.schedule.name() == "scaled:0.5");
    CHECK(full.variant == LacunaryVariant::Strong);
    CHECK(full.nx == 128);
    CHECK(full.ny == 64);
    CHECK(full.tol == 1e-6);
    CHECK(full.seed == 9);
    CHECK(full.out_dir == "results");
    CHECK(full.svg);
}

TEST_CASE("config file feeds values and flags override it") {
    const std::string path = temp_path("conf.cfg");
    write_text_file(path,
                    "# comment line\n"
                    "\n"
                    "jmax = 4\n"
                    "schedule=linear\n"
                    "tol=1e-8\n");
    const RunConfig cfg = parse_config({"riesz", "--config", path, "--jmax", "6"});
    CHECK(cfg.j_max == 6);
    CHECK(cfg.schedule.name() == "linear");
    CHECK(cfg.tol == 1e-8);

    write_text_file(path, "suite=kp\nseed=31\n");
    const RunConfig from_file = parse_config({"--config", path});
    CHECK(from_file.suite == Suite::Kp);
    CHECK(from_file.j_max == 5);
    CHECK(from_file.seed == 31);

    write_text_file(path, "bogus=1\n");
    CHECK_THROWS_AS(parse_config({"riesz", "--config", path}), UsageError);
    write_text_file(path, "no equals sign\n");
    CHECK_THROWS_AS(parse_config({"riesz", "--config", path}), UsageError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(parse_config({"riesz", "--config", path}), UsageError);
}

TEST_CASE("malformed command lines are rejected") {
    CHECK_THROWS_AS(parse_config({}), UsageError);
    CHECK_THROWS_AS(parse_config({"--jmax", "3"}), UsageError);
    CHECK_THROWS_AS(parse_config({"warp"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "weights"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--power", "9"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--jmax"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--jmax", "0"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--jmax", "31"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--jmax", "two"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--tol", "0.1"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--tol", "0"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--schedule", "scaled:1.5"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--schedule", "scaled:0"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--schedule", "cubic"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--variant", "weak"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--grid", "128"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--grid", "0,64"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--seed", "-1"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--seed", "soon"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--format", "png"}), UsageError);
    CHECK_THROWS_AS(parse_config({"riesz", "--out", ""}), UsageError);
}

TEST_CASE("help wins over everything else") {
    CHECK(parse_config({"--help"}).help);
    CHECK(parse_config({"-h"}).help);
    CHECK(parse_config({"riesz", "--jmax", "nonsense", "--help"}).help);
    CHECK(!usage_text().empty());
    CHECK(usage_text().find("kernel-compare") != std::string::npos);
}
