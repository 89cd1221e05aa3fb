#include <gtest/gtest.h>

#include "desing/invariant.hpp"

using namespace desing;

namespace {

const std::vector<std::string> xyz{"x", "y", "z"};

Poly P(const std::string& s) { return parse_poly(s, xyz); }

const Scene* chart(const std::vector<Scene>& cs, const std::string& id) {
    for (const auto& c : cs)
        if (c.chart_id == id) return &c;
    return nullptr;
}

} // namespace

TEST(InvValue, FlattenPrintParseOrder) {
    auto v = parse_inv("(2,0,1,0,3/2,0,inf)");
    EXPECT_EQ(v.str(), "(2,0,1,0,3/2,0,inf)");
    EXPECT_EQ(parse_inv("(0)").str(), "(0)");
    EXPECT_LT(parse_inv("(1,1,1,0,inf)"), parse_inv("(1,1,1,1,1,0,inf)"));
    EXPECT_LT(parse_inv("(1,1,2,0,1,0,inf)"), v);
    EXPECT_LT(parse_inv("(2,0,1,0,0)"), parse_inv("(2,0,1,0,inf)"));
    EXPECT_LT(parse_inv("(0)"), parse_inv("(1,0,inf)"));
    EXPECT_THROW(parse_inv("(1,0)"), InputError);
}

TEST(Inv, CubicYearZero) {
    Scene s = make_root_scene(xyz, {P("z^3 + x*y")}, {});
    auto ch = compute_inv(s, origin(3));
    EXPECT_EQ(ch.value.str(), "(2,0,1,0,3/2,0,inf)");
    ASSERT_EQ(ch.levels.size(), 4u);
    EXPECT_EQ(to_string(*ch.levels[0].companion, xyz), "(z^3 + x*y,2)");
    EXPECT_EQ(ch.levels[0].max_contact, std::optional<std::size_t>(0));
    EXPECT_EQ(to_string(ch.levels[1].ideal, xyz), "((z^3,y^2),2)");
    EXPECT_EQ(to_string(ch.levels[2].ideal, xyz), "(z^3,2)");
    EXPECT_EQ(to_string(*ch.levels[2].companion, xyz), "(z^3,3)");
    EXPECT_EQ(to_string(ch.levels[3].ideal, xyz), "(0)");
    EXPECT_EQ(extract_centre(ch, s).describe(xyz), "{0}");
}

TEST(Inv, CubicYearOneAndTwo) {
    Scene s = make_root_scene(xyz, {P("z^3 + x*y")}, {});
    auto root = compute_inv(s, origin(3));
    auto kids = blowup_charts(s, extract_centre(root, s));
    const Scene* zc = chart(kids, "root.z");
    ASSERT_TRUE(zc);
    EXPECT_EQ(zc->controlled_ideal(), P("z*(z + x*y)"));
    std::vector<InvValue> hist{root.value};
    auto c1 = compute_inv(*zc, origin(3), hist);
    EXPECT_EQ(c1.value.str(), "(1,1,2,0,1,0,inf)");
    EXPECT_EQ(to_string(c1.levels[1].ideal, xyz), "(x*y,1)");
    EXPECT_TRUE(c1.levels[0].shear.has_value());
    auto cen = extract_centre(c1, *zc);
    EXPECT_EQ(cen.codim(), 3u);

    auto kids2 = blowup_charts(*zc, cen);
    const Scene* xc = chart(kids2, "root.z.x");
    ASSERT_TRUE(xc);
    hist.push_back(c1.value);
    auto c2 = compute_inv(*xc, origin(3), hist);
    EXPECT_EQ(c2.value.str(), "(1,1,1,1,1,0,inf)");
    // mu_{H,k+1} is stored on level k.
    EXPECT_EQ(c2.levels[1].mu.at("e2"), Rat(1));
    EXPECT_EQ(to_string(*c2.levels[1].companion, xyz), "(y,1)");
    EXPECT_EQ(to_string(c2.levels[2].ideal, xyz), "(x,1)");
}

TEST(Inv, SecondExampleListPresentation) {
    Scene s = make_root_scene(xyz, {P("x"), P("x + y*z")}, {});
    auto ch = compute_inv(s, origin(3));
    EXPECT_TRUE(ch.list_presentation);
    EXPECT_EQ(ch.value.pairs.front().first, Rat(2));
    EXPECT_EQ(ch.levels[0].max_contact, std::optional<std::size_t>(0));
    EXPECT_FALSE(ch.levels[0].shear.has_value());
    EXPECT_THROW(normal_form(ch, s), UnsupportedError);

    auto product = compute_inv(s, origin(3), {}, InvOptions{false});
    EXPECT_EQ(product.value, ch.value);
}

TEST(Inv, OffXAndTranslatedPoint) {
    Scene s = make_root_scene(xyz, {P("z^3 + x*y")}, {});
    EXPECT_EQ(compute_inv(s, {Rat(1), Rat(1), Rat(0)}).value.str(), "(0)");
    // Smooth points of X; the second needs a unit-scaled coordinate change.
    EXPECT_EQ(compute_inv(s, {Rat(1), Rat(0), Rat(0)}).value.str(), "(1,0,inf)");
    EXPECT_EQ(compute_inv(s, {Rat(-1), Rat(1), Rat(1)}).value.str(), "(1,0,inf)");
    EXPECT_EQ(compute_inv(s, {Rat(2), Rat(-1, 16), Rat(1, 2)}).value.str(), "(1,0,inf)");
}

TEST(Inv, CounterexamplePairOfLines) {
    const std::vector<std::string> xy{"x", "y"};
    Scene s = make_root_scene(xy, {parse_poly("x^2 + y^2", xy)}, {});
    EXPECT_EQ(compute_inv(s, origin(2)).value.str(), "(2,0,1,0,inf)");
}
