#include "fixtures.hpp"

#include "scatter/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>

using namespace scatter;
using fix::pt;

namespace {

std::size_t count(const std::string& s, const std::string& what)
{
    std::size_t n = 0;
    for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) {
        ++n;
    }
    return n;
}

std::string schema_error(const Json& j)
{
    try {
        diagram_from_json(j);
    } catch (const SchemaError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(Io, RationalFormat)
{
    EXPECT_EQ(to_json(frac(6, -4)), "-3/2");
    EXPECT_EQ(rational_from_json("4/6", "$"), frac(2, 3));
    EXPECT_EQ(rational_from_json(5, "$"), Rational(5));
    EXPECT_THROW(rational_from_json("1/0", "$"), SchemaError);
    EXPECT_THROW(rational_from_json("abc", "$"), SchemaError);
}

TEST(IoProperty, DiagramRoundTrip)
{
    for (const Diagram& d : {complete(fix::two_wall(6), 6), perturb(fix::two_wall(4), 2, 5, 4).diagram,
                             complete(initial_diagram(fix::kronecker(), 5), 5)}) {
        std::string a = dump(to_json(d));
        Diagram back = diagram_from_json(Json::parse(a));
        EXPECT_EQ(dump(to_json(back)), a);
        EXPECT_TRUE(equivalent(d, back, d.order()).equivalent);
    }
}

TEST(IoProperty, CoefficientAndAlgebraRoundTrip)
{
    auto ctx = quiver_context(fix::a2());
    Coefficient c = Coefficient(VFrac(Rational(1, 3)).div_v_difference(2)) * fix::t(1) +
                    Coefficient::monomial(NilpotentMonomial::u(1, 2));
    EXPECT_EQ(coefficient_from_json(to_json(c), "$"), c);
    AlgebraElement a = AlgebraElement::monomial(ctx, 5, {1, 0, 2, -1}, c);
    EXPECT_EQ(algebra_from_json(to_json(a), ctx, "$"), a);
}

TEST(Io, KeysAreSorted)
{
    std::string s = dump(to_json(fix::two_wall(3)));
    EXPECT_LT(s.find("\"context\""), s.find("\"mode\""));
    EXPECT_LT(s.find("\"mode\""), s.find("\"order\""));
    EXPECT_LT(s.find("\"order\""), s.find("\"walls\""));
}

TEST(Io, SchemaErrorsNameTheField)
{
    Json j = to_json(fix::two_wall(3));
    Json bad = j;
    bad["walls"][1]["m"] = "x";
    EXPECT_EQ(schema_error(bad).rfind("$.walls[1].m:", 0), 0u) << schema_error(bad);
    bad = j;
    bad.erase("order");
    EXPECT_EQ(schema_error(bad).rfind("$.order:", 0), 0u);
    bad = j;
    bad["context"]["backend"] = "other";
    EXPECT_EQ(schema_error(bad).rfind("$.context.backend:", 0), 0u);
    bad = j;
    bad["walls"][0]["support"]["direction"] = Json::array({1, 1});
    EXPECT_EQ(schema_error(bad).rfind("$.walls[0]:", 0), 0u);
}

TEST(Io, WallFunctionInput)
{
    Json j = to_json(fix::two_wall(5));
    for (auto& w : j["walls"]) {
        int i = w["m"][0] == 1 ? 1 : 2;
        w.erase("log");
        w["function"] = Json::array({Json{{"k", 1}, {"coeff", to_json(fix::t(i))}}});
    }
    Diagram d = diagram_from_json(j);
    EXPECT_EQ(dump(to_json(d)), dump(to_json(fix::two_wall(5))));
}

TEST(Io, QuiverJson)
{
    QuiverData q = quiver_from_json(Json{{"r", 2}, {"arrows", Json::array({Json::array({1, 2, 2})})}});
    EXPECT_EQ(q.a[0][1], 2);
    EXPECT_EQ(to_json(q), (Json{{"r", 2}, {"arrows", Json::array({Json::array({1, 2, 2})})}}));
    EXPECT_THROW(quiver_from_json(Json{{"r", 2}, {"arrows", Json::array({Json::array({2, 1, 1})})}}), SchemaError);
}

TEST(Io, AtomicWrite)
{
    auto dir = std::filesystem::temp_directory_path() / "scatter_io_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "out.json").string();
    write_file_atomic(path, "first\n");
    write_file_atomic(path, "second\n");
    std::ifstream in(path);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(s, "second\n");
    EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove_all(dir);
}

TEST(Svg, WallStrokes)
{
    auto ctx = LieContext::classical(2);
    std::string empty = render_svg(Diagram(Mode::tropical, ctx, 3));
    EXPECT_EQ(count(empty, "class=\"wall\""), 0u);
    EXPECT_EQ(count(empty, "class=\"axis\""), 2u);
    EXPECT_EQ(count(render_svg(complete(fix::two_wall(6), 6)), "class=\"wall\""), 3u);
    EXPECT_EQ(count(render_svg(complete(initial_diagram(fix::a2(), 6), 6)), "class=\"wall\""), 3u);
}

TEST(Svg, WellFormedAndDeterministic)
{
    auto c = complete(fix::two_wall(5), 5);
    SvgOptions o;
    o.lines = enumerate_broken_lines(c, {1, 1}, pt(-37, -53, 7), 5);
    std::string a = render_svg(c, o), b = render_svg(c, o);
    EXPECT_EQ(a, b);
    EXPECT_EQ(count(a, "<svg"), 1u);
    EXPECT_EQ(count(a, "</svg>"), 1u);
    EXPECT_EQ(count(a, "class=\"broken-line\""), o.lines.size());
    // every element is self-closing or closed
    std::regex open_tag(R"(<(polyline|line|circle|rect)[^>]*[^/]>)");
    EXPECT_FALSE(std::regex_search(a, open_tag));
    EXPECT_THROW(render_svg(Diagram(Mode::tropical, LieContext::classical(3), 3)), std::invalid_argument);
}
