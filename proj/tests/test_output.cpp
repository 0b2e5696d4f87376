#include <gtest/gtest.h>

#include <cmath>
#include <regex>

#include "ptk/app/commands.hpp"
#include "ptk/app/csv.hpp"
#include "ptk/app/svg.hpp"
#include "ptk/constants.hpp"
#include "ptk/errors.hpp"

using namespace ptk::app;

namespace {

// crude well-formedness: every opened element is closed in order
bool balanced_xml(const std::string& s) {
    std::vector<std::string> stack;
    std::regex tag(R"(<(/?)([A-Za-z][A-Za-z0-9]*)[^>]*?(/?)>)");
    for (auto it = std::sregex_iterator(s.begin(), s.end(), tag); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        if (m[3] == "/") continue;
        if (m[1] == "/") {
            if (stack.empty() || stack.back() != m[2]) return false;
            stack.pop_back();
        } else {
            stack.push_back(m[2]);
        }
    }
    return stack.empty();
}

}  // namespace

TEST(Csv, FormatIsTwelveSignificantDigits) {
    EXPECT_EQ(format_value(7.55), "7.55000000000e+00");
    EXPECT_EQ(format_value(-0.0), "0.00000000000e+00");
    EXPECT_EQ(format_value(std::nan("")), "nan");
    EXPECT_EQ(format_value(1.0 / 3.0), "3.33333333333e-01");
}

TEST(Csv, RoundTripToPrintedPrecision) {
    CsvTable t;
    t.meta = {"ptk test", "mode: single"};
    t.columns = {"a", "b"};
    t.rows = {{1.0 / 3.0, -2.5e-17}, {std::nan(""), 6.02214076e23}};
    const auto back = read_csv(write_csv(t));
    EXPECT_EQ(back.meta, t.meta);
    EXPECT_EQ(back.columns, t.columns);
    EXPECT_EQ(back.meta_value("mode"), "single");
    EXPECT_NEAR(back.rows[0][0], 1.0 / 3.0, 1e-12);
    EXPECT_TRUE(std::isnan(back.rows[1][0]));
    EXPECT_EQ(write_csv(back), write_csv(t));
}

TEST(Csv, RaggedRowsRejected) {
    EXPECT_THROW(read_csv("a,b\n1,2\n3\n"), IoError);
    EXPECT_THROW(read_csv("# only meta\n"), IoError);
    EXPECT_THROW(read_csv("a\nxyz\n"), IoError);
}

TEST(Svg, StandaloneAndWellFormed) {
    PlotSpec spec;
    spec.title = "a < b & c";
    spec.log_y = true;
    spec.series = {{"g2", {0, 1, 2, 3, 4}, {0.5, std::nan(""), 1e9, 1.0, 0.0}}};
    const auto svg = render_svg(spec);
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
    EXPECT_EQ(svg.find("href"), std::string::npos);
    EXPECT_EQ(svg.find("url("), std::string::npos);
    EXPECT_NE(svg.find("a &lt; b &amp; c"), std::string::npos);
    EXPECT_TRUE(balanced_xml(svg));
}

TEST(Svg, ClampedPointsGetMarkers) {
    PlotSpec spec;
    spec.y_min = 0.0;
    spec.y_max = 1.0;
    spec.series = {{"s", {0, 1, 2}, {0.5, 5.0, -3.0}}};
    const auto svg = render_svg(spec);
    std::size_t n = 0;
    for (auto pos = svg.find("<polygon"); pos != std::string::npos; pos = svg.find("<polygon", pos + 1)) ++n;
    EXPECT_EQ(n, 2u);
}

TEST(Svg, NanSplitsLines) {
    PlotSpec spec;
    spec.series = {{"s", {0, 1, 2, 3, 4, 5}, {1, 2, std::nan(""), 3, 4, 5}}};
    const auto svg = render_svg(spec);
    std::size_t n = 0;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++n;
    EXPECT_EQ(n, 2u);
}

TEST(Sweep, GoodCavityTransmissionHasTwoPeaks) {
    const auto t = sweep_table(preset_config("good", false), 1);
    const int c = t.column("abs_t_sq");
    ASSERT_GE(c, 0);
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < t.rows.size(); ++i)
        if (t.rows[i][c] > t.rows[i - 1][c] && t.rows[i][c] > t.rows[i + 1][c]) peaks.push_back(t.rows[i][1]);
    ASSERT_EQ(peaks.size(), 2u);
    const double step = t.rows[1][1] - t.rows[0][1];
    EXPECT_NEAR(peaks[1] - peaks[0], 31.8, step);
}

TEST(Sweep, BadCavityTransparencyDip) {
    const auto t = sweep_table(preset_config("bad", false), 1);
    const auto& mid = t.rows[t.rows.size() / 2];
    EXPECT_NEAR(mid[0], 7.55, 1e-12);
    EXPECT_LT(mid[t.column("abs_t_sq")], 1e-12);
    EXPECT_EQ(t.columns[1], "detuning_kHz");
}

TEST(Sweep, G2ColumnsAndDivergenceFlags) {
    auto cfg = preset_config("bad", false);
    cfg.sweep.mode = SweepMode::g2;
    cfg.sweep.points = 11;
    const auto t = sweep_table(cfg, 1);
    ASSERT_EQ(t.columns.size(), 8u);
    const auto& mid = t.rows[5];
    EXPECT_EQ(mid[t.column("div_22")], 1.0);
    EXPECT_TRUE(std::isnan(mid[t.column("g2_22")]));
    for (const auto& row : t.rows)
        for (int k = 0; k < 3; ++k) EXPECT_EQ(std::isnan(row[2 + k]), row[5 + k] == 1.0);
}

TEST(Sweep, AsymmetricG2IsDomainError) {
    RunConfig cfg;
    cfg.params = ptk::SystemParams{ptk::ghz(7), ptk::ghz(7), ptk::mhz(1), ptk::khz(100), ptk::khz(300)};
    cfg.sweep.mode = SweepMode::g2;
    EXPECT_THROW(sweep_table(cfg, 1), ptk::Error);
}

TEST(ParamsReport, DeviationRatiosPrinted) {
    const auto r = resolve(preset_config("good", true));
    const auto text = params_report(r, "csv");
    EXPECT_NE(text.find("name,value,unit,source,reference,ratio"), std::string::npos);
    EXPECT_NE(text.find("\ng,"), std::string::npos);
    const auto jl = params_report(r, "jsonl");
    EXPECT_NE(jl.find("\"ratio\""), std::string::npos);
    EXPECT_THROW(params_report(r, "xml"), ValidationError);
}
