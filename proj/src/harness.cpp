#include "etc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "etc/keystream.hpp"
#include "etc/metrics.hpp"
#include "etc/solver.hpp"

namespace etc {

namespace fs = std::filesystem;
using nlohmann::json;

SecretKey derive_key(uint64_t master_seed, const std::string& image_id, int key_index) {
    uint64_t s1 = mix64(master_seed ^ fnv1a64(image_id));
    uint64_t s2 = mix64(s1 ^ static_cast<uint64_t>(key_index));
    SecretKey k;
    k.k1 = mix64(s2 ^ 1);
    k.k2 = mix64(s2 ^ 2);
    k.k3 = mix64(s2 ^ 3);
    k.k4 = mix64(s2 ^ 4);
    return k;
}

std::pair<int, int> budget_grid(int rows, int cols, int budget) {
    if (budget <= 0 || rows * cols <= budget) return {rows, cols};
    int best_r = 1, best_c = 1;
    long best_count = -1, best_skew = 0;
    for (int r = 1; r <= rows; ++r) {
        int c = std::min(cols, budget / r);
        if (c < 1) continue;
        long count = static_cast<long>(r) * c;
        long skew = std::labs(static_cast<long>(r) * cols - static_cast<long>(c) * rows);
        if (count > best_count || (count == best_count && skew < best_skew)) {
            best_count = count;
            best_skew = skew;
            best_r = r;
            best_c = c;
        }
    }
    return {best_r, best_c};
}

ExperimentPlan plan_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open plan " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("malformed plan " + path + ": " + e.what());
    }

    ExperimentPlan plan;
    try {
        const json& images = j.at("images");
        if (images.is_string()) {
            fs::path dir = images.get<std::string>();
            if (!fs::is_directory(dir)) throw IoError("image directory not found: " + dir.string());
            for (const auto& entry : fs::directory_iterator(dir)) {
                if (!entry.is_regular_file()) continue;
                std::string ext = entry.path().extension().string();
                if (ext == ".ppm" || ext == ".png")
                    plan.images.emplace_back(entry.path().stem().string(), entry.path().string());
            }
        } else {
            for (const json& item : images) {
                fs::path p = item.get<std::string>();
                plan.images.emplace_back(p.stem().string(), p.string());
            }
        }
        std::sort(plan.images.begin(), plan.images.end());

        for (const json& t : j.at("types"))
            plan.types.push_back(puzzle_type_from_string(t.get<std::string>()));
        for (const json& q : j.at("qualities")) {
            if (q.is_string()) {
                if (q.get<std::string>() != "bypass")
                    throw IoError("quality must be an integer or \"bypass\"");
                plan.qualities.push_back(std::nullopt);
            } else {
                plan.qualities.push_back(q.get<int>());
            }
        }
        if (j.contains("keys_per_image")) plan.keys_per_image = j.at("keys_per_image").get<int>();
        if (j.contains("block")) plan.block = j.at("block").get<int>();
        if (j.contains("master_seed")) plan.master_seed = j.at("master_seed").get<uint64_t>();
        if (j.contains("budget_blocks")) plan.budget_blocks = j.at("budget_blocks").get<int>();
        if (j.contains("sns_quality") && !j.at("sns_quality").is_null())
            plan.sns_quality = j.at("sns_quality").get<int>();
        if (j.contains("subsampling"))
            plan.chroma = subsampling_from_string(j.at("subsampling").get<std::string>());
        if (j.contains("ratio_ordering")) plan.ratio_ordering = j.at("ratio_ordering").get<bool>();
    } catch (const json::exception& e) {
        throw IoError("plan " + path + " missing field: " + e.what());
    }
    return plan;
}

namespace {

int resolve_workers() {
    if (const char* env = std::getenv("ETC_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::string quality_label(const std::optional<int>& q) {
    return q ? std::to_string(*q) : "bypass";
}

struct CellJob {
    size_t image_idx, type_idx, quality_idx;
    int key_index;
    size_t row_slot;
};

} // namespace

namespace {

std::string plan_metadata(const ExperimentPlan& plan) {
    std::string meta = "block=" + std::to_string(plan.block);
    meta += ";subsampling=" + std::string(plan.chroma == Subsampling::S444 ? "444" : "420");
    meta += ";sns_quality=" + (plan.sns_quality ? std::to_string(*plan.sns_quality) : "bypass");
    meta += ";keys_per_image=" + std::to_string(plan.keys_per_image);
    meta += ";master_seed=" + std::to_string(plan.master_seed);
    if (plan.budget_blocks) meta += ";budget_blocks=" + std::to_string(*plan.budget_blocks);
    return meta;
}

} // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan, std::ostream* log) {
    if (plan.images.empty()) throw ConfigError("experiment plan has no images");
    if (plan.types.empty() || plan.qualities.empty())
        throw ConfigError("experiment plan needs at least one type and one quality");
    if (plan.keys_per_image < 1) throw ConfigError("keys_per_image must be at least 1");

    // Load and budget-crop every image up front; failures are fatal here
    // (a missing file is a config error, not a per-cell event).
    struct Prepared {
        std::string id;
        RasterImage image;
        int rows = 0, cols = 0;
        std::string error; // too-small images get error rows but do not abort
    };
    std::vector<Prepared> prepared;
    for (const auto& [id, path] : plan.images) {
        Prepared p;
        p.id = id;
        p.image = read_image(path);
        int rows = p.image.height / plan.block;
        int cols = p.image.width / plan.block;
        if (rows * cols < 4) {
            p.error = "image smaller than 4 blocks";
        } else {
            if (plan.budget_blocks) {
                auto [r, c] = budget_grid(rows, cols, *plan.budget_blocks);
                rows = r;
                cols = c;
            }
            p.rows = rows;
            p.cols = cols;
            RasterImage crop = RasterImage::create(cols * plan.block, rows * plan.block, 3);
            for (int y = 0; y < crop.height; ++y)
                std::copy_n(&p.image.pixels[p.image.index(0, y, 0)],
                            static_cast<size_t>(crop.width) * 3,
                            &crop.pixels[crop.index(0, y, 0)]);
            p.image = std::move(crop);
        }
        prepared.push_back(std::move(p));
    }

    // Pipeline self-test: correct-key decryption at bypass quality must be
    // bit-exact for every (image, type) before any attack runs.
    for (const Prepared& p : prepared) {
        if (!p.error.empty()) continue;
        for (PuzzleType type : plan.types) {
            CipherConfig config = CipherConfig::for_type(type, plan.block, plan.block);
            SecretKey key = derive_key(plan.master_seed, p.id, 0);
            RasterImage enc = encrypt(p.image, key, config);
            if (!(decrypt(enc, key, config) == p.image))
                throw Error("pipeline self-test failed: decrypt(encrypt(I)) != I for image " +
                            p.id + " type " + to_string(type));
            KeyExpansion exp = expand_key(key, p.rows * p.cols, config);
            GroundTruth gt = ground_truth_of(exp, p.rows, p.cols);
            AssemblyResult ideal;
            ideal.rows = p.rows;
            ideal.cols = p.cols;
            ideal.cell = gt.cell;
            ideal.pose = gt.orientation;
            ideal.canvas.assign(static_cast<size_t>(p.rows) * p.cols, -1);
            for (size_t q = 0; q < gt.cell.size(); ++q)
                ideal.canvas[static_cast<size_t>(gt.cell[q].y) * p.cols + gt.cell[q].x] =
                    static_cast<int>(q);
            ScoreTriple tri = score(ideal, gt);
            if (tri.dc != 1.0 || tri.nc != 1.0 || tri.lc != 1.0)
                throw Error("pipeline self-test failed: truth assembly does not score 1.0");
        }
    }

    std::vector<CellJob> jobs;
    std::vector<ResultRow> rows;
    for (size_t ii = 0; ii < prepared.size(); ++ii) {
        for (size_t ti = 0; ti < plan.types.size(); ++ti) {
            for (size_t qi = 0; qi < plan.qualities.size(); ++qi) {
                for (int k = 0; k < plan.keys_per_image; ++k) {
                    ResultRow row;
                    row.image = prepared[ii].id;
                    row.type = plan.types[ti];
                    row.quality = plan.qualities[qi];
                    row.key_index = k;
                    row.error = prepared[ii].error;
                    if (row.error.empty())
                        jobs.push_back({ii, ti, qi, k, rows.size()});
                    rows.push_back(std::move(row));
                }
            }
        }
    }

    const int total_workers = resolve_workers();
    const int pool = std::max(1, std::min<int>(total_workers, static_cast<int>(jobs.size())));
    const int table_threads = std::max(1, total_workers / pool);

    std::atomic<size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&]() {
        for (;;) {
            size_t idx = next.fetch_add(1);
            if (idx >= jobs.size()) return;
            const CellJob& job = jobs[idx];
            ResultRow& row = rows[job.row_slot];
            const Prepared& p = prepared[job.image_idx];
            auto t0 = std::chrono::steady_clock::now();
            try {
                CipherConfig config = CipherConfig::for_type(row.type, plan.block, plan.block);
                SecretKey key = derive_key(plan.master_seed, p.id, row.key_index);
                RasterImage enc = encrypt(p.image, key, config);

                ChannelConfig channel;
                channel.chroma = plan.chroma;
                if (row.quality) {
                    channel.user_quality = row.quality;
                    channel.sns_quality = plan.sns_quality;
                }
                RasterImage received = transmit(enc, channel);

                BlockGrid grid = partition(received, plan.block, plan.block);
                PieceSet pieces(grid, row.type);
                CompatibilityTable table = build_table(pieces, table_threads);
                AssemblyOptions opts;
                opts.ratio_ordering = plan.ratio_ordering;
                AssemblyResult result = assemble(table, pieces, p.rows, p.cols, opts);

                KeyExpansion exp = expand_key(key, grid.count(), config);
                GroundTruth truth = ground_truth_of(exp, p.rows, p.cols);
                // both polarity readings scored, better one kept
                ScoreTriple a = score(result, truth);
                ScoreTriple b = score(result.global_negpos_flipped(), truth);
                ScoreTriple tri = a.sum() >= b.sum() ? a : b;
                row.dc = tri.dc;
                row.nc = tri.nc;
                row.lc = tri.lc;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            row.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            if (log) {
                std::lock_guard<std::mutex> guard(log_mutex);
                *log << row.image << " type=" << to_string(row.type)
                     << " q=" << quality_label(row.quality) << " key=" << row.key_index;
                if (row.error.empty()) {
                    char buf[96];
                    std::snprintf(buf, sizeof(buf), " dc=%.3f nc=%.3f lc=%.3f (%.0f ms)",
                                  row.dc, row.nc, row.lc, row.wall_ms);
                    *log << buf << "\n";
                } else {
                    *log << " error: " << row.error << "\n";
                }
                log->flush();
            }
        }
    };
    if (pool <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<size_t>(pool));
        for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    // best-of-k selection per (image, type, quality)
    for (size_t start = 0; start < rows.size(); start += plan.keys_per_image) {
        int best = -1;
        double best_sum = -1.0;
        for (int k = 0; k < plan.keys_per_image; ++k) {
            const ResultRow& r = rows[start + k];
            if (!r.error.empty()) continue;
            double s = r.dc + r.nc + r.lc;
            if (s > best_sum) {
                best_sum = s;
                best = k;
            }
        }
        if (best >= 0) rows[start + best].selected = true;
    }

    ExperimentResult result;
    result.meta = plan_metadata(plan);
    result.rows = std::move(rows);
    result.selected_means = summarize(result.rows, true);
    result.all_means = summarize(result.rows, false);
    return result;
}

std::vector<SummaryCell> summarize(const std::vector<ResultRow>& rows, bool selected_only) {
    if (rows.empty()) throw ConfigError("no rows to summarize");
    // key preserving first-appearance order of (type, quality)
    std::vector<SummaryCell> cells;
    auto find_cell = [&cells](PuzzleType t, const std::optional<int>& q) -> SummaryCell* {
        for (auto& c : cells)
            if (c.type == t && c.quality == q) return &c;
        return nullptr;
    };
    for (const ResultRow& r : rows) {
        if (!r.error.empty()) continue;
        if (selected_only && !r.selected) continue;
        SummaryCell* cell = find_cell(r.type, r.quality);
        if (!cell) {
            cells.push_back({r.type, r.quality, 0, 0, 0, 0});
            cell = &cells.back();
        }
        cell->dc += r.dc;
        cell->nc += r.nc;
        cell->lc += r.lc;
        cell->images += 1;
    }
    for (auto& c : cells) {
        if (c.images == 0) continue;
        c.dc /= c.images;
        c.nc /= c.images;
        c.lc /= c.images;
    }
    return cells;
}

namespace {

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string csv_safe(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace

void write_results_csv(const ExperimentResult& result, std::ostream& out) {
    out << "kind,image,type,quality,key,dc,nc,lc,selected,error\n";
    if (!result.meta.empty()) out << "meta,,,,,,,,," << result.meta << "\n";
    for (const ResultRow& r : result.rows) {
        out << "row," << r.image << ',' << to_string(r.type) << ',' << quality_label(r.quality)
            << ',' << r.key_index << ',';
        if (r.error.empty())
            out << fmt3(r.dc) << ',' << fmt3(r.nc) << ',' << fmt3(r.lc) << ','
                << (r.selected ? 1 : 0) << ",\n";
        else
            out << ",,,," << csv_safe(r.error) << "\n";
    }
    auto dump_summary = [&out](const std::vector<SummaryCell>& cells, const char* kind) {
        for (const SummaryCell& c : cells)
            out << kind << ",," << to_string(c.type) << ',' << quality_label(c.quality) << ",,"
                << fmt3(c.dc) << ',' << fmt3(c.nc) << ',' << fmt3(c.lc) << ',' << c.images << ",\n";
    };
    dump_summary(result.selected_means, "summary_selected");
    dump_summary(result.all_means, "summary_all");
}

void write_timings_csv(const ExperimentResult& result, std::ostream& out) {
    out << "image,type,quality,key,wall_ms\n";
    for (const ResultRow& r : result.rows) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f", r.wall_ms);
        out << r.image << ',' << to_string(r.type) << ',' << quality_label(r.quality) << ','
            << r.key_index << ',' << buf << "\n";
    }
}

} // namespace etc
