#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "etc/cipher.hpp"
#include "etc/jpeg_channel.hpp"
#include "etc/transform.hpp"

namespace etc {

// One full sweep: every (image, type, quality) cell is attacked with
// keys_per_image independently derived keys and the best attempt kept.
struct ExperimentPlan {
    std::vector<std::pair<std::string, std::string>> images; // (id, path), sorted by id
    std::vector<PuzzleType> types;
    std::vector<std::optional<int>> qualities; // nullopt = lossless bypass
    int keys_per_image = 3;
    int block = 32;
    uint64_t master_seed = 1;
    std::optional<int> budget_blocks;  // cap on n for quick runs; crops the plaintext
    std::optional<int> sns_quality;    // optional second hop applied after the user hop
    Subsampling chroma = Subsampling::S420;
    bool ratio_ordering = true;
};

// Plan JSON: {"images": dir-or-list, "types": [...], "qualities": [95, "bypass"],
//             "keys_per_image": 3, "block": 32, "master_seed": 1, ...}
ExperimentPlan plan_from_json_file(const std::string& path);

struct ResultRow {
    std::string image;
    PuzzleType type = PuzzleType::Type1;
    std::optional<int> quality;
    int key_index = 0;
    double dc = 0.0, nc = 0.0, lc = 0.0;
    bool selected = false;
    double wall_ms = 0.0; // excluded from the canonical CSV so reruns stay byte-identical
    std::string error;    // per-item failures recorded here; run continues
};

struct SummaryCell {
    PuzzleType type = PuzzleType::Type1;
    std::optional<int> quality;
    double dc = 0.0, nc = 0.0, lc = 0.0;
    int images = 0;
};

struct ExperimentResult {
    std::string meta; // block size, subsampling, second hop, seed; echoed in the CSV
    std::vector<ResultRow> rows;
    std::vector<SummaryCell> selected_means; // best-of-k rows averaged per (type, quality)
    std::vector<SummaryCell> all_means;      // every valid attempt averaged
};

// Documented derivation (docs/keystream.md): keys depend only on the master
// seed, the image id and the key index, so any cell re-runs identically in
// isolation.
SecretKey derive_key(uint64_t master_seed, const std::string& image_id, int key_index);

ExperimentResult run_experiment(const ExperimentPlan& plan, std::ostream* log = nullptr);
std::vector<SummaryCell> summarize(const std::vector<ResultRow>& rows, bool selected_only);

void write_results_csv(const ExperimentResult& result, std::ostream& out);
void write_timings_csv(const ExperimentResult& result, std::ostream& out);

// Largest (rows, cols) sub-grid with rows*cols <= budget, closest to the
// original aspect; used by --budget to shrink attacks for CI.
std::pair<int, int> budget_grid(int rows, int cols, int budget);

} // namespace etc
