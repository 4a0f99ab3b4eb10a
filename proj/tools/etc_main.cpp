#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "etc/cipher.hpp"
#include "etc/harness.hpp"
#include "etc/jpeg_channel.hpp"
#include "etc/keystream.hpp"
#include "etc/manifest.hpp"
#include "etc/metrics.hpp"
#include "etc/solver.hpp"
#include "etc/synth.hpp"

namespace fs = std::filesystem;
using namespace etc;

namespace {

std::optional<int> parse_quality(const std::string& s) {
    if (s.empty() || s == "bypass") return std::nullopt;
    return std::stoi(s);
}

void print_scores(const ScoreTriple& tri, bool header) {
    if (header) std::printf("dc,nc,lc\n");
    std::printf("%.3f,%.3f,%.3f\n", tri.dc, tri.nc, tri.lc);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block scrambling image cipher, JPEG channel, and jigsaw puzzle solver attack workbench"};
    app.require_subcommand(1);

    // ---- keygen ----
    auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key file from a seed");
    uint64_t kg_seed = 1;
    std::string kg_type = "INC", kg_out = "key.json";
    int kg_block = 32;
    keygen_cmd->add_option("--seed", kg_seed, "Seed for key derivation");
    keygen_cmd->add_option("--type", kg_type, "Puzzle type: 1, 2, I, N, IN, INC");
    keygen_cmd->add_option("--block", kg_block, "Block size in pixels");
    keygen_cmd->add_option("--out", kg_out, "Output key file");

    // ---- encrypt / decrypt ----
    auto* enc_cmd = app.add_subcommand("encrypt", "Encrypt an image with a key file");
    auto* dec_cmd = app.add_subcommand("decrypt", "Decrypt an image with a key file");
    std::string ed_key, ed_in, ed_out, enc_truth;
    for (auto* cmd : {enc_cmd, dec_cmd}) {
        cmd->add_option("--key", ed_key, "Key file (JSON)")->required();
        cmd->add_option("input", ed_in, "Input image (PPM or PNG)")->required();
        cmd->add_option("output", ed_out, "Output image (PPM)")->required();
    }
    enc_cmd->add_option("--emit-truth", enc_truth, "Write the ground-truth placement manifest");

    // ---- keyspace ----
    auto* ks_cmd = app.add_subcommand("keyspace", "Report the key space for a block count");
    int ks_n = 0, ks_w = 0, ks_h = 0, ks_block = 32;
    std::string ks_type = "INC";
    ks_cmd->add_option("--n", ks_n, "Number of blocks");
    ks_cmd->add_option("--width", ks_w, "Image width (alternative to --n)");
    ks_cmd->add_option("--height", ks_h, "Image height (alternative to --n)");
    ks_cmd->add_option("--block", ks_block, "Block size in pixels");
    ks_cmd->add_option("--type", ks_type, "Puzzle type");

    // ---- channel ----
    auto* ch_cmd = app.add_subcommand("channel", "Send an image through the two-hop JPEG path");
    std::string ch_in, ch_out, ch_quser = "95", ch_qsns = "bypass", ch_sub = "420", ch_keep;
    ch_cmd->add_option("input", ch_in)->required();
    ch_cmd->add_option("output", ch_out)->required();
    ch_cmd->add_option("--quser", ch_quser, "User-hop JPEG quality or 'bypass'");
    ch_cmd->add_option("--qsns", ch_qsns, "Provider-hop JPEG quality or 'bypass'");
    ch_cmd->add_option("--subsampling", ch_sub, "Chroma subsampling: 420 or 444");
    ch_cmd->add_option("--keep-intermediates", ch_keep, "Prefix for per-hop JFIF dumps");

    // ---- attack ----
    auto* at_cmd = app.add_subcommand("attack", "Assemble a scrambled image without the key");
    std::string at_in, at_type = "INC", at_assembled, at_table, at_result;
    int at_block = 32, at_rows = 0, at_cols = 0, at_threads = 0;
    bool at_no_ratio = false, at_flip = false;
    at_cmd->add_option("input", at_in)->required();
    at_cmd->add_option("--type", at_type, "Puzzle type the pieces were scrambled with");
    at_cmd->add_option("--block", at_block, "Block size in pixels");
    at_cmd->add_option("--rows", at_rows, "Target rows (default: inferred)");
    at_cmd->add_option("--cols", at_cols, "Target cols (default: inferred)");
    at_cmd->add_option("--threads", at_threads, "Worker threads (default: ETC_WORKERS or all cores)");
    at_cmd->add_flag("--no-ratio", at_no_ratio, "Order merges by raw cost instead of confidence ratio");
    at_cmd->add_flag("--flip-polarity", at_flip, "Emit the negative-positive mirrored reading");
    at_cmd->add_option("--emit-assembled", at_assembled, "Write the assembled image (PPM)");
    at_cmd->add_option("--emit-table", at_table, "Write the pairwise cost table (CSV)");
    at_cmd->add_option("--emit-result", at_result, "Write the placement manifest (JSON)");

    // ---- score ----
    auto* sc_cmd = app.add_subcommand("score", "Score a placement manifest against ground truth");
    std::string sc_result, sc_truth;
    bool sc_header = false;
    sc_cmd->add_option("--result", sc_result)->required();
    sc_cmd->add_option("--truth", sc_truth)->required();
    sc_cmd->add_flag("--header", sc_header, "Print a CSV header line");

    // ---- experiment ----
    auto* ex_cmd = app.add_subcommand("experiment", "Run a full sweep from a plan file");
    std::string ex_plan, ex_out = "results.csv", ex_timings;
    bool ex_quiet = false;
    ex_cmd->add_option("--plan", ex_plan, "Plan JSON")->required();
    ex_cmd->add_option("--out", ex_out, "Results CSV");
    ex_cmd->add_option("--timings", ex_timings, "Optional wall-time sidecar CSV");
    ex_cmd->add_flag("--quiet", ex_quiet, "Suppress progress lines");

    // ---- synth / fixtures ----
    auto* sy_cmd = app.add_subcommand("synth", "Generate a deterministic test image");
    std::string sy_kind = "noise", sy_out;
    uint64_t sy_seed = 1;
    int sy_w = 672, sy_h = 480;
    sy_cmd->add_option("--kind", sy_kind, "noise or gradient");
    sy_cmd->add_option("--seed", sy_seed);
    sy_cmd->add_option("--width", sy_w);
    sy_cmd->add_option("--height", sy_h);
    sy_cmd->add_option("output", sy_out)->required();

    auto* fx_cmd = app.add_subcommand("fixtures", "Generate the standard fixture image set");
    std::string fx_dir = "fixtures";
    uint64_t fx_seed = 7;
    int fx_count = 5, fx_w = 672, fx_h = 480;
    fx_cmd->add_option("--out-dir", fx_dir);
    fx_cmd->add_option("--seed", fx_seed);
    fx_cmd->add_option("--count", fx_count);
    fx_cmd->add_option("--width", fx_w);
    fx_cmd->add_option("--height", fx_h);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*keygen_cmd) {
            KeyFile kf;
            kf.key = keygen(kg_seed);
            kf.config = CipherConfig::for_type(puzzle_type_from_string(kg_type), kg_block, kg_block);
            write_key_file(kf, kg_out);
            std::printf("wrote %s (type %s, block %d)\n", kg_out.c_str(), kg_type.c_str(), kg_block);
        } else if (*enc_cmd) {
            KeyFile kf = read_key_file(ed_key);
            RasterImage img = read_image(ed_in);
            write_ppm(encrypt(img, kf.key, kf.config), ed_out);
            if (!enc_truth.empty()) {
                BlockGrid grid = partition(img, kf.config.block_w, kf.config.block_h);
                KeyExpansion exp = expand_key(kf.key, grid.count(), kf.config);
                GroundTruth gt = ground_truth_of(exp, grid.rows, grid.cols);
                write_placement_manifest(manifest_of(gt, kf.config.block_w), enc_truth);
            }
        } else if (*dec_cmd) {
            KeyFile kf = read_key_file(ed_key);
            write_ppm(decrypt(read_image(ed_in), kf.key, kf.config), ed_out);
        } else if (*ks_cmd) {
            int n = ks_n;
            if (n <= 0) {
                if (ks_w <= 0 || ks_h <= 0)
                    throw ConfigError("give --n, or --width and --height");
                n = (ks_w / ks_block) * (ks_h / ks_block);
            }
            CipherConfig config = CipherConfig::for_type(puzzle_type_from_string(ks_type));
            KeySpace ks = key_space(n, config);
            std::printf("n=%d type=%s\nkey_space=%s\nlog2=%.2f bits\n", n, ks_type.c_str(),
                        ks.value.to_string().c_str(), ks.log2);
        } else if (*ch_cmd) {
            ChannelConfig config;
            config.user_quality = parse_quality(ch_quser);
            config.sns_quality = parse_quality(ch_qsns);
            config.chroma = subsampling_from_string(ch_sub);
            config.keep_intermediates_prefix = ch_keep;
            write_ppm(transmit(read_image(ch_in), config), ch_out);
        } else if (*at_cmd) {
            RasterImage img = read_image(at_in);
            PuzzleType type = puzzle_type_from_string(at_type);
            BlockGrid grid = partition(img, at_block, at_block);
            int rows = at_rows > 0 ? at_rows : grid.rows;
            int cols = at_cols > 0 ? at_cols : grid.cols;
            PieceSet pieces(grid, type);
            CompatibilityTable table = build_table(pieces, at_threads);
            if (!at_table.empty()) write_table_csv(table, at_table);
            AssemblyOptions opts;
            opts.ratio_ordering = !at_no_ratio;
            AssemblyResult result = assemble(table, pieces, rows, cols, opts);
            if (at_flip) result = result.global_negpos_flipped();
            if (!at_assembled.empty()) write_ppm(render_assembly(result, pieces), at_assembled);
            if (!at_result.empty())
                write_placement_manifest(manifest_of(result, at_block), at_result);
            std::printf("assembled %d pieces onto %dx%d (seam cost %.1f)\n", pieces.count(),
                        rows, cols, assembly_seam_cost(result, pieces));
        } else if (*sc_cmd) {
            PlacementManifest rm = read_placement_manifest(sc_result);
            PlacementManifest tm = read_placement_manifest(sc_truth);
            print_scores(score(assembly_from_manifest(rm), truth_from_manifest(tm)), sc_header);
        } else if (*ex_cmd) {
            ExperimentPlan plan = plan_from_json_file(ex_plan);
            ExperimentResult result = run_experiment(plan, ex_quiet ? nullptr : &std::cerr);
            std::ofstream out(ex_out);
            if (!out) throw IoError("cannot create " + ex_out);
            write_results_csv(result, out);
            if (!ex_timings.empty()) {
                std::ofstream tout(ex_timings);
                if (!tout) throw IoError("cannot create " + ex_timings);
                write_timings_csv(result, tout);
            }
            std::printf("wrote %s (%zu rows)\n", ex_out.c_str(), result.rows.size());
        } else if (*sy_cmd) {
            RasterImage img = sy_kind == "gradient" ? gradient_image(sy_w, sy_h, sy_seed)
                                                    : value_noise_image(sy_w, sy_h, sy_seed);
            write_ppm(img, sy_out);
        } else if (*fx_cmd) {
            fs::create_directories(fx_dir);
            for (const auto& [name, img] : fixture_suite(fx_seed, fx_count, fx_w, fx_h)) {
                std::string path = (fs::path(fx_dir) / (name + ".ppm")).string();
                write_ppm(img, path);
                std::printf("wrote %s\n", path.c_str());
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
