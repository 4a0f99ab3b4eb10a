#include <doctest.h>

#include <fstream>

#include "etc/cipher.hpp"
#include "etc/metrics.hpp"
#include "etc/solver.hpp"
#include "etc/synth.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace etc;

namespace {

// Encrypt a synthetic image, attack it, and score against the truth.
ScoreTriple attack_scores(const RasterImage& img, PuzzleType type, int block, uint64_t key_seed) {
    SecretKey key = keygen(key_seed);
    CipherConfig cfg = CipherConfig::for_type(type, block, block);
    RasterImage enc = encrypt(img, key, cfg);
    BlockGrid grid = partition(enc, block, block);
    PieceSet ps(grid, type);
    CompatibilityTable table = build_table(ps, 0);
    AssemblyResult res = assemble(table, ps, grid.rows, grid.cols);
    GroundTruth gt = ground_truth_of(expand_key(key, grid.count(), cfg), grid.rows, grid.cols);
    ScoreTriple a = score(res, gt);
    ScoreTriple b = score(res.global_negpos_flipped(), gt);
    return a.sum() >= b.sum() ? a : b;
}

} // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("family sizes per type") {
    CHECK(transform_family(PuzzleType::Type1).size() == 1);
    CHECK(transform_family(PuzzleType::Type2).size() == 4);
    CHECK(transform_family(PuzzleType::TypeI).size() == 12);
    CHECK(transform_family(PuzzleType::TypeN).size() == 8);
    CHECK(transform_family(PuzzleType::TypeIN).size() == 24);
    CHECK(transform_family(PuzzleType::TypeINC).size() == 144);
}

TEST_CASE("two pieces choose the cheaper ordering") {
    RasterImage img = gradient_image(32, 16, 70);
    BlockGrid grid = partition(img, 16, 16);
    PieceSet ps(grid, PuzzleType::Type1);
    CompatibilityTable table = build_table(ps, 1);
    AssemblyResult res = assemble(table, ps, 1, 2);
    // the true order [0 1] has the seam continuing the gradient
    REQUIRE(table.at_lr(0, 1).cost < table.at_lr(1, 0).cost);
    CHECK(res.piece_at(0, 0) == 0);
    CHECK(res.piece_at(1, 0) == 1);
}

TEST_CASE("3x3 gradient reassembles perfectly for type 2") {
    RasterImage img = gradient_image(48, 48, 71);
    ScoreTriple tri = attack_scores(img, PuzzleType::Type2, 16, 7);
    CHECK(tri.nc == 1.0);
    CHECK(tri.lc == 1.0);
}

TEST_CASE("3x3 smooth noise reassembles for harder types") {
    RasterImage img = value_noise_image(96, 96, 72);
    for (PuzzleType type : {PuzzleType::Type1, PuzzleType::TypeI, PuzzleType::TypeINC}) {
        ScoreTriple tri = attack_scores(img, type, 32, 11);
        CHECK(tri.nc == 1.0);
        CHECK(tri.lc == 1.0);
    }
}

TEST_CASE("solver output is always a bijection onto the canvas") {
    // random pieces give the assembly nothing to work with; placement still
    // has to be total and injective
    std::vector<RasterImage> pieces;
    for (uint64_t s = 0; s < 9; ++s) pieces.push_back(test::random_image(8, 8, 700 + s));
    PieceSet ps(pieces, PuzzleType::TypeINC);
    CompatibilityTable table = build_table(ps, 1);
    AssemblyResult res = assemble(table, ps, 3, 3);
    std::vector<char> seen(9, 0);
    for (int p = 0; p < 9; ++p) {
        REQUIRE(res.cell[size_t(p)].x >= 0);
        REQUIRE(res.cell[size_t(p)].x < 3);
        REQUIRE(res.cell[size_t(p)].y >= 0);
        REQUIRE(res.cell[size_t(p)].y < 3);
        int idx = res.cell[size_t(p)].y * 3 + res.cell[size_t(p)].x;
        CHECK(!seen[size_t(idx)]);
        seen[size_t(idx)] = 1;
        CHECK(res.piece_at(res.cell[size_t(p)].x, res.cell[size_t(p)].y) == p);
    }
}

TEST_CASE("more pieces than cells is rejected") {
    std::vector<RasterImage> pieces;
    for (uint64_t s = 0; s < 4; ++s) pieces.push_back(test::random_image(8, 8, 720 + s));
    PieceSet ps(pieces, PuzzleType::Type1);
    CompatibilityTable table = build_table(ps, 1);
    CHECK_THROWS_AS(assemble(table, ps, 1, 3), ConfigError);
}

TEST_CASE("assembly is deterministic") {
    RasterImage img = value_noise_image(64, 64, 73);
    RasterImage enc = encrypt(img, keygen(5), CipherConfig::for_type(PuzzleType::TypeIN, 16, 16));
    BlockGrid grid = partition(enc, 16, 16);
    PieceSet ps(grid, PuzzleType::TypeIN);
    CompatibilityTable table = build_table(ps, 0);
    AssemblyResult a = assemble(table, ps, 4, 4);
    AssemblyResult b = assemble(table, ps, 4, 4);
    CHECK(a.cell == b.cell);
    CHECK(a.pose == b.pose);
    CHECK(a.canvas == b.canvas);
}

TEST_CASE("relabeling pieces relabels the assembly") {
    RasterImage img = gradient_image(64, 32, 74);
    BlockGrid grid = partition(img, 16, 16); // 2x4
    PieceSet ps(grid.blocks, PuzzleType::Type1);
    CompatibilityTable table = build_table(ps, 1);
    AssemblyResult base = assemble(table, ps, 2, 4);

    std::vector<RasterImage> reversed(grid.blocks.rbegin(), grid.blocks.rend());
    PieceSet ps2(reversed, PuzzleType::Type1);
    AssemblyResult flipped = assemble(build_table(ps2, 1), ps2, 2, 4);
    const int n = ps.count();
    for (int p = 0; p < n; ++p) CHECK(base.cell[size_t(p)] == flipped.cell[size_t(n - 1 - p)]);
}

TEST_CASE("small puzzles match the exhaustive search") {
    RasterImage img = gradient_image(48, 32, 75); // 2x3 of 16px blocks
    for (PuzzleType type : {PuzzleType::Type1, PuzzleType::Type2}) {
        SecretKey key = keygen(31);
        CipherConfig cfg = CipherConfig::for_type(type, 16, 16);
        RasterImage enc = encrypt(img, key, cfg);
        BlockGrid grid = partition(enc, 16, 16);
        PieceSet ps(grid, type);
        CompatibilityTable table = build_table(ps, 1);
        AssemblyResult res = assemble(table, ps, 2, 3);

        test::BruteForceResult brute = test::brute_force_assembly(grid.blocks, type, 2, 3);
        double got = assembly_seam_cost(res, ps);
        CHECK(got == doctest::Approx(brute.cost).epsilon(1e-9));

        GroundTruth gt = ground_truth_of(expand_key(key, 6, cfg), 2, 3);
        CHECK(neighbor_comparison(res, gt) == 1.0);
    }
}

TEST_CASE("rendering honours poses and the polarity flip") {
    RasterImage img = value_noise_image(32, 32, 76);
    SecretKey key = keygen(77);
    CipherConfig cfg = CipherConfig::for_type(PuzzleType::TypeN, 16, 16);
    RasterImage enc = encrypt(img, key, cfg);
    BlockGrid grid = partition(enc, 16, 16);
    PieceSet ps(grid, PuzzleType::TypeN);
    CompatibilityTable table = build_table(ps, 1);
    AssemblyResult res = assemble(table, ps, 2, 2);
    RasterImage rendered = render_assembly(res, ps);
    CHECK(rendered.width == 32);
    CHECK(rendered.height == 32);
    RasterImage flipped = render_assembly(res.global_negpos_flipped(), ps);
    CHECK(flipped == negpos(rendered));
}

TEST_CASE("table csv smoke") {
    RasterImage img = value_noise_image(32, 16, 78);
    PieceSet ps(partition(img, 16, 16), PuzzleType::Type2);
    write_table_csv(build_table(ps, 1), "tmp_table.csv");
    std::ifstream in("tmp_table.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "i,j,side,cost,rotation,inversion,negpos,color_perm");
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 8); // 2 ordered pairs x 4 sides
    in.close();
    std::remove("tmp_table.csv");
}

TEST_SUITE_END();
