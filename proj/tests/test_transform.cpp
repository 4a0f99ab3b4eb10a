#include <doctest.h>

#include <algorithm>
#include <array>

#include "etc/solver.hpp"
#include "etc/transform.hpp"
#include "helpers.hpp"

using namespace etc;

TEST_SUITE_BEGIN("transform");

TEST_CASE("color table is exactly the six channel orders") {
    // oracle: enumerate all 3! permutations and match them off
    std::array<uint8_t, 3> p = {0, 1, 2};
    std::vector<std::array<uint8_t, 3>> all;
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(all.size() == 6);
    for (const auto& perm : all)
        CHECK(std::count(kColorPerm.begin(), kColorPerm.end(), perm) == 1);

    // pinned row order
    CHECK(kColorPerm[0] == std::array<uint8_t, 3>{0, 1, 2}); // RGB
    CHECK(kColorPerm[1] == std::array<uint8_t, 3>{1, 0, 2}); // GRB
    CHECK(kColorPerm[2] == std::array<uint8_t, 3>{0, 2, 1}); // RBG
    CHECK(kColorPerm[3] == std::array<uint8_t, 3>{2, 1, 0}); // BGR
    CHECK(kColorPerm[4] == std::array<uint8_t, 3>{2, 0, 1}); // BRG
    CHECK(kColorPerm[5] == std::array<uint8_t, 3>{1, 2, 0}); // GBR
}

TEST_CASE("shuffle_colors semantics") {
    RasterImage img = test::random_image(4, 4, 20);
    CHECK(shuffle_colors(img, 0) == img);

    RasterImage bgr = shuffle_colors(img, 3);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) {
            CHECK(bgr.at(x, y, 0) == img.at(x, y, 2));
            CHECK(bgr.at(x, y, 1) == img.at(x, y, 1));
            CHECK(bgr.at(x, y, 2) == img.at(x, y, 0));
        }

    CHECK(shuffle_colors(shuffle_colors(img, 1), 1) == img); // transposition squared

    RasterImage gray = RasterImage::create(4, 4, 1);
    CHECK_THROWS_AS(shuffle_colors(gray, 1), DimensionError);
}

TEST_CASE("negpos") {
    RasterImage z = RasterImage::create(3, 3, 3);
    RasterImage n = negpos(z);
    for (uint8_t v : n.pixels) CHECK(v == 255);

    RasterImage img = test::random_image(5, 5, 21);
    img.pixels[0] = 100;
    CHECK(negpos(img).pixels[0] == 155);
    CHECK(negpos(negpos(img)) == img);

    // within-block difference magnitudes survive
    RasterImage inv = negpos(img);
    for (size_t i = 1; i < img.pixels.size(); ++i) {
        int d = int(img.pixels[i]) - int(img.pixels[0]);
        int dn = int(inv.pixels[i]) - int(inv.pixels[0]);
        CHECK(std::abs(d) == std::abs(dn));
    }
}

TEST_CASE("rotation pinned on a 2x2 block") {
    RasterImage img = RasterImage::create(2, 2, 3);
    auto set = [&img](int x, int y, uint8_t v) {
        for (int c = 0; c < 3; ++c) img.at(x, y, c) = v;
    };
    set(0, 0, 1); // a b
    set(1, 0, 2); // c d
    set(0, 1, 3);
    set(1, 1, 4);

    RasterImage r = apply_transform(img, {Rotation::R90, Inversion::None, false, 0});
    CHECK(r.at(0, 0, 0) == 3); // clockwise: c a / d b
    CHECK(r.at(1, 0, 0) == 1);
    CHECK(r.at(0, 1, 0) == 4);
    CHECK(r.at(1, 1, 0) == 2);

    RasterImage h = apply_transform(img, {Rotation::R0, Inversion::H, false, 0});
    CHECK(h.at(0, 0, 0) == 2);
    CHECK(h.at(1, 0, 0) == 1);
}

TEST_CASE("apply_transform basics") {
    RasterImage img = test::random_image(6, 6, 22);
    CHECK(apply_transform(img, BlockTransform{}) == img);

    BlockTransform r90{Rotation::R90, Inversion::None, false, 0};
    RasterImage four = apply_transform(
        apply_transform(apply_transform(apply_transform(img, r90), r90), r90), r90);
    CHECK(four == img);

    RasterImage z = RasterImage::create(4, 4, 3);
    RasterImage n = apply_transform(z, {Rotation::R0, Inversion::None, true, 0});
    for (uint8_t v : n.pixels) CHECK(v == 255);

    RasterImage rect = test::random_image(6, 4, 23);
    CHECK_THROWS_AS(apply_transform(rect, r90), DimensionError);
    CHECK_NOTHROW(apply_transform(rect, {Rotation::R180, Inversion::H, true, 3}));
}

TEST_CASE("matches the naive composite") {
    RasterImage img = test::random_image(5, 5, 24);
    for (const BlockTransform& t : transform_family(PuzzleType::TypeINC))
        CHECK(apply_transform(img, t) == test::naive_apply(img, t));
}

TEST_CASE("group closure and inverses over all 144 elements") {
    RasterImage block = test::random_image(4, 4, 25);
    const auto family = transform_family(PuzzleType::TypeINC);
    CHECK(family.size() == 144);

    for (const BlockTransform& t : family) {
        CHECK(apply_transform(apply_transform(block, t), invert_transform(t)) == block);
        CHECK(same_action(compose_transform(invert_transform(t), t), BlockTransform{}));
    }
    for (const BlockTransform& t1 : family) {
        for (const BlockTransform& t2 : family) {
            RasterImage sequential = apply_transform(apply_transform(block, t1), t2);
            RasterImage composed = apply_transform(block, compose_transform(t2, t1));
            CHECK(sequential == composed);
        }
    }
}

TEST_CASE("canonicalization") {
    BlockTransform a{Rotation::R180, Inversion::H, false, 0};
    BlockTransform b{Rotation::R0, Inversion::V, false, 0};
    CHECK(same_action(a, b));
    CHECK(a.canonical() == b);

    BlockTransform r90{Rotation::R90, Inversion::None, false, 0};
    CHECK(invert_transform(r90) == BlockTransform{Rotation::R270, Inversion::None, false, 0});
    CHECK(invert_transform(BlockTransform{}) == BlockTransform{});

    // a two-channel swap is its own inverse
    BlockTransform grb{Rotation::R0, Inversion::None, false, 1};
    CHECK(invert_transform(grb) == grb);
    // the two 3-cycles invert into each other
    CHECK(invert_color_perm(4) == 5);
    CHECK(invert_color_perm(5) == 4);
}

TEST_CASE("direction mapping agrees with whole-grid movement") {
    // 2x2 grid of distinct blocks; apply each square transform to the whole
    // image and check where blocks land relative to each other
    const int b = 2;
    RasterImage img = RasterImage::create(2 * b, 2 * b, 3);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c)
                img.at(x, y, c) = uint8_t(10 * (2 * (y / b) + x / b) + c);

    auto cell_of = [&](const RasterImage& im, uint8_t marker) {
        for (int cy = 0; cy < 2; ++cy)
            for (int cx = 0; cx < 2; ++cx)
                if (im.at(cx * b, cy * b, 0) == marker) return Cell{cx, cy};
        REQUIRE(false);
        return Cell{-1, -1};
    };

    for (const BlockTransform& t : transform_family(PuzzleType::TypeI)) {
        RasterImage moved = apply_transform(img, t);
        Cell a0 = cell_of(img, 0), a1 = cell_of(img, 10);
        Cell m0 = cell_of(moved, 0), m1 = cell_of(moved, 10);
        auto d = t.geom().map_direction(a1.x - a0.x, a1.y - a0.y);
        CHECK(m1.x - m0.x == d.first);
        CHECK(m1.y - m0.y == d.second);
    }
}

TEST_CASE("puzzle type labels") {
    CHECK(puzzle_type_from_string("INC") == PuzzleType::TypeINC);
    CHECK(std::string(to_string(PuzzleType::TypeIN)) == "IN");
    CHECK_THROWS_AS(puzzle_type_from_string("bogus"), ConfigError);
    StepFlags f = steps_of(PuzzleType::TypeN);
    CHECK(f.rotation);
    CHECK(!f.inversion);
    CHECK(f.negpos);
    CHECK(type_of_steps(f) == PuzzleType::TypeN);
    f.scramble = false;
    CHECK(!type_of_steps(f).has_value());
}

TEST_SUITE_END();
